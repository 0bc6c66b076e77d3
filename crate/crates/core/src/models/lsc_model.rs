use super::{
    weak_chain::lsc_weak_chain, Bounds, CheckError, Construction, CuModel, RefinableInstance, Report, WeakChainInstance,
    WeakChainWitness,
};
use crate::geometry::json::open_from_json;
use crate::geometry::{OpenSet, SpaceRef};
use crate::json::JsonError;
use crate::lsc::json::{lsc_from_json, lsc_to_json};
use crate::lsc::{decompose_below_ne, LscElement};
use crate::rational::{int, Q};
use serde_json::Value;

/// `Lsc(X, N̄)` over a fixed space.
#[derive(Clone, Debug)]
pub struct LscModel {
    pub space: SpaceRef,
}

impl LscModel {
    pub fn new(space: SpaceRef) -> LscModel {
        LscModel { space }
    }
}

/// An element strictly between `a ≪ b`: level `n` is the open
/// `δ/2`-neighbourhood of the closure of level `n` of `a`, where `δ` (at
/// most 1) is the least distance from such a closure to the complement of
/// level `n` of `b`. Then `a ≪ ã ≪ b`.
pub fn interpolate(a: &LscElement, b: &LscElement) -> LscElement {
    debug_assert!(a.way_below(b));
    let mut delta = int(1);
    for n in 1..=a.height() {
        if let Some(d) = a.level(n).closure().distance(&b.level(n).complement()) {
            if d < delta {
                delta = d;
            }
        }
    }
    let radius: Q = delta / int(2);
    let levels: Vec<OpenSet> = (1..=a.height()).map(|n| a.level(n).closure().open_neighborhood(&radius)).collect();
    LscElement::new(levels, OpenSet::empty(a.space())).expect("neighbourhoods of decreasing closed sets decrease")
}

impl CuModel for LscModel {
    type Elem = LscElement;

    fn name(&self) -> String {
        "lsc".to_string()
    }

    fn zero(&self) -> LscElement {
        LscElement::zero(&self.space)
    }

    fn leq(&self, a: &LscElement, b: &LscElement) -> bool {
        a.leq(b)
    }

    fn add(&self, a: &LscElement, b: &LscElement) -> LscElement {
        a.add(b)
    }

    fn way_below(&self, a: &LscElement, b: &LscElement) -> bool {
        a.way_below(b)
    }

    fn join(&self, a: &LscElement, b: &LscElement) -> Option<LscElement> {
        Some(a.join(b))
    }

    fn meet(&self, a: &LscElement, b: &LscElement) -> Option<LscElement> {
        Some(a.meet(b))
    }

    fn lattice_ordered(&self) -> bool {
        true
    }

    fn proportional(&self, a: &LscElement, b: &LscElement, _cap: u64) -> Option<u64> {
        a.proportional_certificate(b)
    }

    fn encode(&self, a: &LscElement) -> Value {
        lsc_to_json(a)
    }

    /// A string is read as the indicator of an open set in text notation.
    fn decode(&self, v: &Value, path: &str) -> Result<LscElement, JsonError> {
        match v {
            Value::String(_) => Ok(LscElement::indicator(&open_from_json(&self.space, v, path)?)),
            _ => lsc_from_json(&self.space, v, path),
        }
    }

    fn show(&self, a: &LscElement) -> String {
        a.to_string()
    }

    /// Interpolates `x_i ≪ x̃_i ≪ x_{i+1}`, splits each `x̃_i` into its level
    /// indicators and pads the lists with zeros to a common length.
    fn refinable_construction(&self, inst: &RefinableInstance<LscElement>) -> Option<Construction<LscElement>> {
        let mut log = Vec::new();
        let mut sequences = Vec::new();
        for (k, pair) in inst.xs.windows(2).enumerate() {
            let mid = interpolate(&pair[0], &pair[1]);
            log.push(format!("interpolated x_{} ≪ {} ≪ x_{}", k + 1, mid, k + 2));
            let parts = decompose_below_ne(&mid, mid.height() as u64).ok()?;
            sequences.push(parts);
        }
        let l = sequences.iter().map(Vec::len).max().unwrap_or(0);
        for s in &mut sequences {
            s.resize(l, self.zero());
        }
        log.push(format!("split each interpolant into its level indicators, padded to length {}", l));
        Some((sequences, log))
    }

    fn weak_chain(
        &self,
        inst: &WeakChainInstance<LscElement>,
        bounds: &Bounds,
    ) -> Option<Result<Report<WeakChainWitness<LscElement>>, CheckError>> {
        Some(lsc_weak_chain(self, inst, bounds))
    }
}
