//! Almost complements: the largest `x` with `x + y ≤ z`.

use super::{LscElement, LscError};
use crate::geometry::{OpenSet, Region};

/// The levels of the largest lower semicontinuous function below `z − y`:
/// `int {z − y ≥ k}` for `k = 1..=m_z`, where
/// `{z − y ≥ k} = ⋃_{j ≤ m_y} {z ≥ j + k} ∩ {y ≤ j}`. Needs `y` and `z`
/// bounded.
fn bounded_levels(y: &LscElement, z: &LscElement) -> Vec<OpenSet> {
    let space = y.space();
    (1..=z.height())
        .map(|k| {
            let mut diff = Region::empty(space);
            for j in 0..=y.height() {
                let at_most_j = y.level(j + 1).complement();
                diff = diff.union(&Region::from_open(&z.level(j + k)).intersect(&Region::from_closed(&at_most_j)));
            }
            diff.interior()
        })
        .collect()
}

/// `z ∧ M e`.
fn cap(z: &LscElement, m: usize) -> LscElement {
    let levels = (1..=m).map(|n| z.level(n)).collect();
    LscElement::new(levels, OpenSet::empty(z.space())).expect("levels of an element decrease")
}

/// The almost complement `y \ z`: the largest `x` with `x + y ≤ z`.
///
/// Requires `y ≤ z` and `y` bounded. Below the unit this is
/// `U_z ∖ closure(U_y)`. For bounded `z` the levels are `int {z − y ≥ k}`.
/// For unbounded `z` it is the supremum of `y \ (z ∧ M e)` over `M`; the
/// caps are computed for `M = m_y + m_z + 1` and `M + 1`, and the function
/// checks that they agree on the finite levels and equal `V_z` on the
/// levels above before returning the limit.
pub fn almost_complement(y: &LscElement, z: &LscElement) -> Result<LscElement, LscError> {
    y.check_same_space(z)?;
    if !y.is_bounded() {
        return Err(LscError::Unbounded);
    }
    if !y.leq(z) {
        return Err(LscError::NotBelow);
    }
    if y.is_indicator() && z.is_indicator() {
        return Ok(LscElement::indicator(&z.support().minus(&y.support().closure())));
    }
    if z.is_bounded() {
        return Ok(LscElement::new(bounded_levels(y, z), OpenSet::empty(y.space())).expect("interiors of decreasing sets decrease"));
    }
    let (my, mz) = (y.height(), z.height());
    let m = my + mz + 1;
    let a = bounded_levels(y, &cap(z, m));
    let b = bounded_levels(y, &cap(z, m + 1));
    let level = |v: &[OpenSet], k: usize| v.get(k - 1).cloned().unwrap_or_else(|| OpenSet::empty(y.space()));
    let stable = (1..=mz).all(|k| level(&a, k) == level(&b, k))
        && (mz + 1..=m - my).all(|k| level(&a, k) == *z.infinity() && level(&b, k) == *z.infinity());
    if !stable {
        return Err(LscError::StabilizationFailed(m as u64));
    }
    let levels = (1..=mz).map(|k| level(&a, k)).collect();
    LscElement::new(levels, z.infinity().clone()).map_err(|_| LscError::StabilizationFailed(m as u64))
}
