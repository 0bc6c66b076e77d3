use super::CuModel;
use crate::json::JsonError;
use crate::lsc::ExtNat;
use serde_json::{json, Value};

/// The extended naturals `{0, 1, …, ∞}`: totally ordered, every finite
/// element compact, `∞` way-below nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NBar;

const MAX_PARTITION: u64 = 24;

fn partitions(n: u64, largest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<ExtNat>>) {
    if n == 0 {
        out.push(prefix.iter().map(|k| ExtNat::Finite(*k)).collect());
        return;
    }
    for k in (1..=largest.min(n)).rev() {
        prefix.push(k);
        partitions(n - k, k, prefix, out);
        prefix.pop();
    }
}

impl CuModel for NBar {
    type Elem = ExtNat;

    fn name(&self) -> String {
        "nbar".to_string()
    }

    fn zero(&self) -> ExtNat {
        ExtNat::Finite(0)
    }

    fn leq(&self, a: &ExtNat, b: &ExtNat) -> bool {
        a <= b
    }

    fn add(&self, a: &ExtNat, b: &ExtNat) -> ExtNat {
        a.saturating_add(*b)
    }

    fn way_below(&self, a: &ExtNat, b: &ExtNat) -> bool {
        a.is_finite() && a <= b
    }

    fn join(&self, a: &ExtNat, b: &ExtNat) -> Option<ExtNat> {
        Some(*a.max(b))
    }

    fn meet(&self, a: &ExtNat, b: &ExtNat) -> Option<ExtNat> {
        Some(*a.min(b))
    }

    fn lattice_ordered(&self) -> bool {
        true
    }

    fn exact_between(&self, lo: &ExtNat, hi: &ExtNat) -> Option<Vec<ExtNat>> {
        match (lo, hi) {
            (ExtNat::Infinite, _) => Some(vec![]),
            (_, ExtNat::Infinite) => None,
            (ExtNat::Finite(a), ExtNat::Finite(b)) => Some((*a..=*b).map(ExtNat::Finite).collect()),
        }
    }

    fn decompositions(&self, s: &ExtNat) -> Option<Vec<Vec<ExtNat>>> {
        match s {
            ExtNat::Finite(n) if *n <= MAX_PARTITION => {
                let mut out = Vec::new();
                partitions(*n, *n, &mut vec![], &mut out);
                Some(out)
            }
            _ => None,
        }
    }

    fn encode(&self, a: &ExtNat) -> Value {
        match a {
            ExtNat::Finite(n) => json!(n),
            ExtNat::Infinite => json!("inf"),
        }
    }

    fn decode(&self, v: &Value, path: &str) -> Result<ExtNat, JsonError> {
        match v {
            Value::Number(n) => {
                n.as_u64().map(ExtNat::Finite).ok_or_else(|| JsonError::new(path, "expected a natural number"))
            }
            Value::String(s) if s == "inf" || s == "∞" => Ok(ExtNat::Infinite),
            _ => Err(JsonError::new(path, "expected a natural number or \"inf\"")),
        }
    }

    fn show(&self, a: &ExtNat) -> String {
        a.to_string()
    }
}
