//! The semigroup `Lsc(X, N̄)` of lower semicontinuous functions into
//! `{0, 1, …, ∞}`, restricted to finitely presented elements.
//!
//! An element is stored through its level sets: a decreasing list of open
//! sets `U_1 ⊇ … ⊇ U_m` and an open "infinity level" `V ⊆ U_m`. The function
//! it represents is `f(p) = #{i : p ∈ U_i}`, replaced by `∞` on `V`, so that
//! `{f ≥ n}` is `U_n` for `n ≤ m` and `V` beyond. Order, sums and lattice
//! operations act level by level; way-below is compact containment of levels.

mod complement;
pub mod json;
mod ordered;

pub use complement::almost_complement;
pub use ordered::{decompose_below_ne, ofs_normalize, ordered_sum_pairwise};

use crate::geometry::{GeometryError, Location, OpenSet, SpaceRef};
use std::cmp::Ordering;
use std::fmt;

/// An element of `{0, 1, 2, …, ∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn saturating_add(self, o: ExtNat) -> ExtNat {
        match (self, o) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b),
            _ => ExtNat::Infinite,
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinite) => Ordering::Less,
            (ExtNat::Infinite, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinite, ExtNat::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{}", n),
            ExtNat::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LscError {
    #[error("the elements live in different spaces")]
    SpaceMismatch,
    #[error("level {0} is not contained in the level before it")]
    NotDecreasing(usize),
    #[error("the infinity level is not contained in the last finite level")]
    InfinityOutsideLevels,
    #[error("term {0} of the list is not below the unit")]
    NotBelowUnit(usize),
    #[error("the list is not decreasing at position {0}")]
    ListNotDecreasing(usize),
    #[error("the element is not below {0} times the unit")]
    NotBelowMultiple(u64),
    #[error("the first element is not below the second")]
    NotBelow,
    #[error("the element is unbounded (it takes the value infinity)")]
    Unbounded,
    #[error("almost complement did not stabilise at cap {0}")]
    StabilizationFailed(u64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A finitely presented element of `Lsc(X, N̄)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LscElement {
    levels: Vec<OpenSet>,
    infinity: OpenSet,
}

fn same(a: &OpenSet, b: &OpenSet) -> bool {
    **a.space() == **b.space()
}

impl LscElement {
    /// Builds an element from decreasing levels and an infinity level
    /// contained in all of them.
    pub fn new(levels: Vec<OpenSet>, infinity: OpenSet) -> Result<LscElement, LscError> {
        for (i, u) in levels.iter().enumerate() {
            if !same(u, &infinity) {
                return Err(LscError::SpaceMismatch);
            }
            if i > 0 && !u.is_subset(&levels[i - 1]) {
                return Err(LscError::NotDecreasing(i + 1));
            }
        }
        if let Some(last) = levels.last() {
            if !infinity.is_subset(last) {
                return Err(LscError::InfinityOutsideLevels);
            }
        }
        Ok(LscElement { levels, infinity }.canonical())
    }

    /// Drops trailing levels that coincide with the infinity level.
    fn canonical(mut self) -> LscElement {
        while self.levels.last().is_some_and(|u| *u == self.infinity) {
            self.levels.pop();
        }
        self
    }

    pub fn zero(space: &SpaceRef) -> LscElement {
        LscElement { levels: vec![], infinity: OpenSet::empty(space) }
    }

    /// The constant function 1, the least order unit.
    pub fn unit(space: &SpaceRef) -> LscElement {
        LscElement::indicator(&OpenSet::full(space))
    }

    /// The characteristic function of an open set.
    pub fn indicator(u: &OpenSet) -> LscElement {
        LscElement { levels: vec![u.clone()], infinity: OpenSet::empty(u.space()) }.canonical()
    }

    /// `∞ · χ_U`.
    pub fn infinite_on(u: &OpenSet) -> LscElement {
        LscElement { levels: vec![], infinity: u.clone() }
    }

    pub fn space(&self) -> &SpaceRef {
        self.infinity.space()
    }

    pub fn levels(&self) -> &[OpenSet] {
        &self.levels
    }

    pub fn infinity(&self) -> &OpenSet {
        &self.infinity
    }

    /// Number of finite levels.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// `{f ≥ n}`; `n = 0` gives the whole space.
    pub fn level(&self, n: usize) -> OpenSet {
        if n == 0 {
            OpenSet::full(self.space())
        } else if n <= self.levels.len() {
            self.levels[n - 1].clone()
        } else {
            self.infinity.clone()
        }
    }

    /// `{f > 0}`.
    pub fn support(&self) -> OpenSet {
        self.level(1)
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty() && self.infinity.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.infinity.is_empty()
    }

    /// True for characteristic functions of open sets, i.e. elements below
    /// the unit.
    pub fn is_indicator(&self) -> bool {
        self.is_bounded() && self.levels.len() <= 1
    }

    pub fn same_space(&self, o: &LscElement) -> bool {
        same(&self.infinity, &o.infinity)
    }

    pub fn check_same_space(&self, o: &LscElement) -> Result<(), LscError> {
        if self.same_space(o) {
            Ok(())
        } else {
            Err(LscError::SpaceMismatch)
        }
    }

    pub fn eval_at(&self, p: &Location) -> Result<ExtNat, LscError> {
        self.space().check_point(p)?;
        if self.infinity.contains(p) {
            return Ok(ExtNat::Infinite);
        }
        Ok(ExtNat::Finite(self.levels.iter().take_while(|u| u.contains(p)).count() as u64))
    }

    /// Pointwise order: levelwise inclusion.
    pub fn leq(&self, g: &LscElement) -> bool {
        let m = self.height().max(g.height());
        (1..=m).all(|n| self.level(n).is_subset(&g.level(n))) && self.infinity.is_subset(&g.infinity)
    }

    fn levelwise(&self, g: &LscElement, op: impl Fn(&OpenSet, &OpenSet) -> OpenSet) -> LscElement {
        let m = self.height().max(g.height());
        let levels = (1..=m).map(|n| op(&self.level(n), &g.level(n))).collect();
        LscElement { levels, infinity: op(&self.infinity, &g.infinity) }.canonical()
    }

    /// Pointwise maximum.
    pub fn join(&self, g: &LscElement) -> LscElement {
        self.levelwise(g, |a, b| a.union(b))
    }

    /// Pointwise minimum.
    pub fn meet(&self, g: &LscElement) -> LscElement {
        self.levelwise(g, |a, b| a.intersect(b))
    }

    /// Pointwise sum: `{f+g ≥ n} = ⋃_j {f ≥ j} ∩ {g ≥ n−j}`.
    pub fn add(&self, g: &LscElement) -> LscElement {
        let (mf, mg) = (self.height(), g.height());
        let infinity = self.infinity.union(&g.infinity);
        let levels = (1..=mf + mg)
            .map(|n| {
                (0..=n).fold(OpenSet::empty(self.space()), |acc, j| acc.union(&self.level(j).intersect(&g.level(n - j))))
            })
            .collect();
        LscElement { levels, infinity }.canonical()
    }

    pub fn try_add(&self, g: &LscElement) -> Result<LscElement, LscError> {
        self.check_same_space(g)?;
        Ok(self.add(g))
    }

    pub fn try_join(&self, g: &LscElement) -> Result<LscElement, LscError> {
        self.check_same_space(g)?;
        Ok(self.join(g))
    }

    pub fn try_meet(&self, g: &LscElement) -> Result<LscElement, LscError> {
        self.check_same_space(g)?;
        Ok(self.meet(g))
    }

    pub fn try_leq(&self, g: &LscElement) -> Result<bool, LscError> {
        self.check_same_space(g)?;
        Ok(self.leq(g))
    }

    pub fn try_way_below(&self, g: &LscElement) -> Result<bool, LscError> {
        self.check_same_space(g)?;
        Ok(self.way_below(g))
    }

    /// `f ≪ g`: `f` is bounded and each level of `f` is compactly contained
    /// in the corresponding level of `g`.
    pub fn way_below(&self, g: &LscElement) -> bool {
        self.is_bounded() && (1..=self.height()).all(|n| self.level(n).compactly_contained(&g.level(n)))
    }

    pub fn is_compact(&self) -> bool {
        self.way_below(self)
    }

    /// `k · f`, using `{k f ≥ n} = {f ≥ ⌈n / k⌉}`.
    pub fn scalar_mul(&self, k: u64) -> LscElement {
        if k == 0 {
            return LscElement::zero(self.space());
        }
        let k = k as usize;
        let levels = (1..=k * self.height()).map(|n| self.level(n.div_ceil(k))).collect();
        LscElement { levels, infinity: self.infinity.clone() }.canonical()
    }

    /// `∞ f = sup_n n f`: infinite exactly on the support.
    pub fn infinity_of(&self) -> LscElement {
        LscElement::infinite_on(&self.support())
    }

    /// Decides `f ∝ w` (`f ≤ n w` for some `n`), returning such an `n`.
    /// This holds iff `supp f ⊆ supp w` and `V_f ⊆ V_w`, and then
    /// `n = max(1, m_f)` works.
    pub fn proportional_certificate(&self, w: &LscElement) -> Option<u64> {
        if self.support().is_subset(&w.support()) && self.infinity.is_subset(&w.infinity) {
            Some(self.height().max(1) as u64)
        } else {
            None
        }
    }

    /// The smallest `n` with `f ≤ n e`, if `f` is bounded.
    pub fn bound(&self) -> Option<u64> {
        self.is_bounded().then_some(self.height() as u64)
    }
}

/// `0`, or the levels from the bottom up, e.g. `{0:(0,1/2) ⊇ 0:(0,1/4)}`,
/// followed by `∞ on V` when the infinity level is nonempty.
impl fmt::Display for LscElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let levels: Vec<String> = self.levels.iter().map(|u| u.to_string()).collect();
        write!(f, "{{{}}}", levels.join(" ⊇ "))?;
        if !self.infinity.is_empty() {
            write!(f, " ∞ on {}", self.infinity)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
