use super::{ChainError, ChainKind, ChainWitness};
use crate::geometry::{Component, Interval, OpenSet, Pieces, Space, SpaceRef};
use crate::rational::{int, Q};
use num_traits::Zero;

/// A connected target, located on component `component`.
enum Span {
    /// The whole of a point component.
    Point,
    /// An interval of an arc, or an arc of a circle in lifted coordinates.
    Run(Interval),
    /// A whole circle.
    Circle,
}

fn locate(target: &OpenSet) -> Result<(usize, Span), ChainError> {
    let comps = target.support_components();
    let i = match comps.as_slice() {
        [] => return Err(ChainError::EmptyTarget),
        [i] => *i,
        _ => return Err(ChainError::Disconnected),
    };
    let space = target.space();
    match (target.pieces(i), space.component(i)) {
        (Pieces::Full, Component::Point) => Ok((i, Span::Point)),
        (Pieces::Full, Component::Circle { .. }) => Ok((i, Span::Circle)),
        (Pieces::Full, Component::Arc { length }) => {
            Ok((i, Span::Run(Interval { lo: Q::zero(), hi: length.clone(), lo_in: true, hi_in: true })))
        }
        (Pieces::List(mut runs), _) if runs.len() == 1 => Ok((i, Span::Run(runs.pop().unwrap()))),
        (Pieces::List(_), _) => Err(ChainError::Disconnected),
        (Pieces::Empty, _) => Err(ChainError::EmptyTarget),
    }
}

fn single(space: &SpaceRef, i: usize, iv: Interval) -> OpenSet {
    let mut per = vec![Vec::new(); space.len()];
    let iv = match space.component(i) {
        // Circle intervals are stored with their left end in [0, L).
        Component::Circle { length } if iv.lo >= *length => {
            Interval { lo: &iv.lo - length, hi: &iv.hi - length, lo_in: false, hi_in: false }
        }
        _ => iv,
    };
    per[i].push(iv);
    OpenSet::normalize(space, &per, &[]).expect("windows lie inside their component")
}

/// The windows of width `run.length() / 2^j` and step half that width
/// across `run`; the outer windows keep the run's closed ends.
fn windows(space: &SpaceRef, i: usize, run: &Interval, j: u32) -> Vec<OpenSet> {
    let parts = 1u64 << j;
    let width = run.length() / Q::from_integer(parts.into());
    let step = &width / int(2);
    let count = 2 * parts - 1;
    (0..count)
        .map(|k| {
            let lo = &run.lo + &step * Q::from_integer(k.into());
            let hi = &lo + &width;
            let iv = Interval { lo, hi, lo_in: k == 0 && run.lo_in, hi_in: k + 1 == count && run.hi_in };
            single(space, i, iv)
        })
        .collect()
}

/// Smallest `j` with `length / 2^j < eps`.
fn dyadic_exponent(length: &Q, eps: &Q) -> u32 {
    let mut j = 0;
    let mut w = length.clone();
    while &w >= eps {
        w /= int(2);
        j += 1;
    }
    j
}

/// An ε-chain covering a connected target (an interval of an arc, an arc of
/// a circle, or a point), with mesh `< ε`.
///
/// The windows have the largest width `ℓ / 2^j` below `ε` (`ℓ` the length of
/// the target) and overlap their neighbours by half, so consecutive windows
/// meet and windows two apart only touch at an excluded endpoint.
pub fn epsilon_chain(target: &OpenSet, eps: &Q) -> Result<ChainWitness, ChainError> {
    if *eps <= Q::zero() {
        return Err(ChainError::NonPositiveEpsilon);
    }
    let space = target.space();
    let pieces = match locate(target)? {
        (_, Span::Point) => vec![target.clone()],
        (i, Span::Circle) => return Err(ChainError::FullCircle(i)),
        (i, Span::Run(run)) => {
            let j = dyadic_exponent(&run.length(), eps);
            windows(space, i, &run, j)
        }
    };
    let refines = vec![0; pieces.len()];
    Ok(ChainWitness::new(ChainKind::Chain, pieces, refines))
}

/// Result of [`refine_to_almost_chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refinement {
    Witness(ChainWitness),
    /// The target contains this whole circle component, which admits no
    /// refining almost chain for covers by small arcs.
    Impossible { component: usize },
}

fn first_container(cover: &[OpenSet], u: &OpenSet) -> Option<usize> {
    cover.iter().position(|c| u.is_subset(c))
}

/// Merges runs of consecutive windows whose union still lies in one cover
/// set. Windows two apart are disjoint, so merged blocks two apart are too,
/// and the result is still a chain.
fn coarsen(cover: &[OpenSet], ws: Vec<OpenSet>, homes: Vec<usize>) -> (Vec<OpenSet>, Vec<usize>) {
    let mut pieces: Vec<OpenSet> = Vec::new();
    let mut refs: Vec<usize> = Vec::new();
    for (w, h) in ws.into_iter().zip(homes) {
        if let Some(last) = pieces.last_mut() {
            let union = last.union(&w);
            if let Some(k) = first_container(cover, &union) {
                *last = union;
                *refs.last_mut().unwrap() = k;
                continue;
            }
        }
        pieces.push(w);
        refs.push(h);
    }
    (pieces, refs)
}

/// An almost chain covering `target` whose pieces each lie in a set of
/// `cover`.
///
/// Each connected piece of the target is chained separately by windows
/// fine enough to fit inside single cover sets (halving the width until
/// they do), and consecutive windows are then merged while they still fit;
/// the chains are concatenated in the order of the pieces. The
/// result is a chain when the target is connected. A whole circle inside
/// the target makes the refinement impossible.
pub fn refine_to_almost_chain(cover: &[OpenSet], target: &OpenSet) -> Result<Refinement, ChainError> {
    let space = target.space();
    if cover.iter().any(|c| **c.space() != **space) {
        return Err(ChainError::SpaceMismatch);
    }
    let union = cover.iter().fold(OpenSet::empty(space), |a, b| a.union(b));
    if !target.is_subset(&union) {
        return Err(ChainError::NotACover("the target"));
    }
    let parts = target.connected_components();
    let mut pieces = Vec::new();
    let mut refines = Vec::new();
    for part in &parts {
        if let Some(k) = first_container(cover, part) {
            pieces.push(part.clone());
            refines.push(k);
            continue;
        }
        let run = match locate(part)? {
            (i, Span::Circle) => return Ok(Refinement::Impossible { component: i }),
            (_, Span::Point) => unreachable!("a point lies in any cover set containing it"),
            (_, Span::Run(run)) => run,
        };
        let i = part.support_components()[0];
        let mut j = 1;
        let chosen = loop {
            let ws = windows(space, i, &run, j);
            let homes: Option<Vec<usize>> = ws.iter().map(|w| first_container(cover, w)).collect();
            if let Some(h) = homes {
                break (ws, h);
            }
            j += 1;
            assert!(j < 64, "an open cover of an interval has a positive Lebesgue number");
        };
        let (merged, homes) = coarsen(cover, chosen.0, chosen.1);
        pieces.extend(merged);
        refines.extend(homes);
    }
    let kind = if parts.len() == 1 { ChainKind::Chain } else { ChainKind::AlmostChain };
    Ok(Refinement::Witness(ChainWitness::new(kind, pieces, refines)))
}

fn in_run(r: &Interval, t: &Q) -> bool {
    (t > &r.lo && t < &r.hi) || (t == &r.lo && r.lo_in) || (t == &r.hi && r.hi_in)
}

/// `None` stands for "unbounded": every set starting at `t` fits.
fn reach(runs: &[Interval], t: &Q, end: Option<&Q>) -> Option<Option<Q>> {
    runs.iter().find(|r| in_run(r, t)).map(|r| match end {
        Some(l) if r.hi == *l && r.hi_in => None,
        _ => Some(&r.hi - t),
    })
}

fn better(a: Option<Option<Q>>, b: Option<Option<Q>>) -> Option<Option<Q>> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(None), _) | (_, Some(None)) => Some(None),
        (Some(Some(x)), Some(Some(y))) => Some(Some(if x > y { x } else { y })),
    }
}

/// A Lebesgue number of an open cover of the whole space: every subset of
/// diameter below it lies inside one cover set.
///
/// On an arc the value is exact: the minimum over breakpoints `t` of the
/// largest `b − t` over cover intervals `[t, b)` starting at `t`. On a circle
/// the same computation runs in lifted coordinates and is capped at `L/3`,
/// below which a subset of the circle sits inside an arc as long as its
/// diameter. The overall value is capped at 2, the distance between
/// components.
pub fn lebesgue_number(cover: &[OpenSet]) -> Result<Q, ChainError> {
    let space = match cover.first() {
        Some(c) => c.space().clone(),
        None => return Err(ChainError::NotACover("the space")),
    };
    if cover.iter().any(|c| **c.space() != *space) {
        return Err(ChainError::SpaceMismatch);
    }
    if !cover.iter().fold(OpenSet::empty(&space), |a, b| a.union(b)).is_full() {
        return Err(ChainError::NotACover("the space"));
    }
    let mut best = int(2);
    for (i, comp) in space.components().iter().enumerate() {
        let (length, circle) = match comp {
            Component::Point => continue,
            Component::Arc { length } => (length, false),
            Component::Circle { length } => (length, true),
        };
        if circle {
            best = best.min(length / int(3));
        }
        let per_set: Vec<Option<Vec<Interval>>> = cover
            .iter()
            .map(|c| match c.pieces(i) {
                Pieces::Full => None,
                Pieces::Empty => Some(vec![]),
                Pieces::List(r) => Some(r),
            })
            .collect();
        if per_set.iter().any(Option::is_none) {
            continue;
        }
        let mut cuts: Vec<Q> = vec![Q::zero()];
        if !circle {
            cuts.push(length.clone());
        }
        for c in cover {
            cuts.extend(c.breakpoints(i));
        }
        cuts.sort();
        cuts.dedup();
        for t in cuts.iter().filter(|t| **t < *length || !circle) {
            let mut r: Option<Option<Q>> = None;
            for runs in per_set.iter().flatten() {
                let here = if circle {
                    better(reach(runs, t, None), reach(runs, &(t + length), None))
                } else {
                    reach(runs, t, Some(length))
                };
                r = better(r, here);
            }
            match r {
                Some(Some(d)) => best = best.min(d),
                Some(None) => {}
                None => unreachable!("the cover covers every point"),
            }
        }
    }
    Ok(best)
}

/// Chainable: nonempty, connected, and not a whole circle.
pub fn decide_chainable(target: &OpenSet) -> bool {
    matches!(locate(target), Ok((_, Span::Point)) | Ok((_, Span::Run(_))))
}

/// Almost chainable: no component of the space is a circle.
pub fn decide_almost_chainable(space: &Space) -> bool {
    !space.has_circle()
}

/// Piecewise chainable (a finite disjoint union of closed chainable
/// pieces); for these spaces the same criterion as almost chainability.
pub fn decide_piecewise_chainable(space: &Space) -> bool {
    !space.has_circle()
}

/// The open set, viewed as a space of its own, is almost chainable: none of
/// its connected pieces is a whole circle.
pub fn set_is_almost_chainable(target: &OpenSet) -> bool {
    target.connected_components().iter().all(|p| !matches!(locate(p), Ok((_, Span::Circle))))
}
