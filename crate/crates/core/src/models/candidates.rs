use super::{Bounds, CuModel};
use std::collections::HashSet;

/// A finite pool of elements to try in searches.
#[derive(Clone, Debug)]
pub struct Candidates<E> {
    pub elems: Vec<E>,
    /// The pool is the whole model.
    pub exhaustive: bool,
    /// Generation stopped at [`Bounds::max_candidates`].
    pub truncated: bool,
}

/// Zero, the seeds, and `bounds.depth` rounds of closure under `+`, `∨`,
/// `∧` and midpoints, in a deterministic order. Finite models return their
/// whole universe instead.
pub fn candidates<M: CuModel>(m: &M, seeds: &[M::Elem], bounds: &Bounds) -> Candidates<M::Elem> {
    if let Some(u) = m.universe() {
        return Candidates { elems: u, exhaustive: true, truncated: false };
    }
    let mut elems = Vec::new();
    let mut seen = HashSet::new();
    let mut truncated = false;
    let mut push = |e: M::Elem, elems: &mut Vec<M::Elem>, truncated: &mut bool| {
        if elems.len() >= bounds.max_candidates {
            *truncated = true;
        } else if seen.insert(e.clone()) {
            elems.push(e);
        }
    };
    push(m.zero(), &mut elems, &mut truncated);
    for s in seeds {
        push(s.clone(), &mut elems, &mut truncated);
    }
    for _ in 0..bounds.depth {
        let current = elems.clone();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i..] {
                push(m.add(a, b), &mut elems, &mut truncated);
                for e in [m.join(a, b), m.meet(a, b), m.midpoint(a, b)].into_iter().flatten() {
                    push(e, &mut elems, &mut truncated);
                }
            }
        }
        if truncated {
            break;
        }
    }
    Candidates { elems, exhaustive: false, truncated }
}
