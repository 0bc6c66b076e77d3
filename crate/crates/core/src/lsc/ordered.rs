//! Ordered (decreasing) sums of elements below the unit.

use super::{LscElement, LscError};

fn check_decreasing_indicators(xs: &[LscElement]) -> Result<(), LscError> {
    for (i, x) in xs.iter().enumerate() {
        if !x.is_indicator() {
            return Err(LscError::NotBelowUnit(i + 1));
        }
        if i > 0 && !x.leq(&xs[i - 1]) {
            return Err(LscError::ListNotDecreasing(i + 1));
        }
        if i > 0 {
            xs[0].check_same_space(x)?;
        }
    }
    Ok(())
}

/// Rewrites `Σ_i (x_i + y_i)` for two decreasing lists below the unit as a
/// single decreasing list of `2m` terms (`m` the longer length; the shorter
/// list is padded with zeros). Term `i` is `⋁_{j=0..m} x_j ∧ y_{i−j}` where
/// `x_0 ∧ y_k = y_k`, `x_j ∧ y_k = x_j` for `k ≤ 0`, and terms past `m` are 0.
pub fn ordered_sum_pairwise(xs: &[LscElement], ys: &[LscElement]) -> Result<Vec<LscElement>, LscError> {
    check_decreasing_indicators(xs)?;
    check_decreasing_indicators(ys)?;
    let space = match xs.first().or(ys.first()) {
        Some(e) => e.space().clone(),
        None => return Ok(vec![]),
    };
    if let (Some(a), Some(b)) = (xs.first(), ys.first()) {
        a.check_same_space(b)?;
    }
    let m = xs.len().max(ys.len());
    let zero = LscElement::zero(&space);
    let get = |v: &[LscElement], k: usize| -> LscElement { v.get(k - 1).cloned().unwrap_or_else(|| zero.clone()) };
    let term = |j: usize, k: isize| -> LscElement {
        match (j, k) {
            (0, k) if k <= 0 => unreachable!("only reached for i >= 1"),
            (0, k) => {
                if k as usize > m {
                    zero.clone()
                } else {
                    get(ys, k as usize)
                }
            }
            (j, k) if k <= 0 => get(xs, j),
            (j, k) => {
                if k as usize > m {
                    zero.clone()
                } else {
                    get(xs, j).meet(&get(ys, k as usize))
                }
            }
        }
    };
    Ok((1..=2 * m)
        .map(|i| (0..=m).fold(zero.clone(), |acc, j| acc.join(&term(j, i as isize - j as isize))))
        .collect())
}

/// Reorders an arbitrary finite sum of elements below the unit into a
/// decreasing list with the same sum and the same length, folding in one
/// term at a time with [`ordered_sum_pairwise`].
pub fn ofs_normalize(terms: &[LscElement]) -> Result<Vec<LscElement>, LscError> {
    for (i, t) in terms.iter().enumerate() {
        if !t.is_indicator() {
            return Err(LscError::NotBelowUnit(i + 1));
        }
        terms[0].check_same_space(t)?;
    }
    let mut acc: Vec<LscElement> = match terms.first() {
        Some(t) => vec![t.clone()],
        None => return Ok(vec![]),
    };
    for t in &terms[1..] {
        let k = acc.len();
        let mut folded = ordered_sum_pairwise(&acc, std::slice::from_ref(t))?;
        // The sum of k + 1 indicators has at most k + 1 nonzero ordered terms.
        debug_assert!(folded[k + 1..].iter().all(LscElement::is_zero));
        folded.truncate(k + 1);
        acc = folded;
    }
    Ok(acc)
}

/// Splits `y ≤ n e` into its level indicators `χ_{y≥1} ≥ χ_{y≥2} ≥ …`
/// (at most `n` nonzero terms, listed without zero padding).
pub fn decompose_below_ne(y: &LscElement, n: u64) -> Result<Vec<LscElement>, LscError> {
    if !y.is_bounded() || y.height() as u64 > n {
        return Err(LscError::NotBelowMultiple(n));
    }
    Ok(y.levels().iter().map(LscElement::indicator).collect())
}
