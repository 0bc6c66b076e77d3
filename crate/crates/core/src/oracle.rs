//! Independent reference computations used to cross-check the structural
//! algorithms.
//!
//! Membership is recomputed from the interval listing of a set (not from the
//! cell engine), values of elements are counted pointwise, and way-below is
//! decided through its defining increasing sequences: `f ≪ g` iff `f` is
//! dominated by some member of an increasing sequence with supremum `g`,
//! here the levels of `g` shrunk inward by `1/k` and truncated to `k` levels.

use crate::geometry::{Component, Interval, Location, OpenSet, Pieces, Space, SpaceRef};
use crate::lsc::{ExtNat, LscElement};
use crate::rational::{self, midpoint, Q};
use num_traits::{One, Signed, Zero};

fn in_interval(iv: &Interval, t: &Q) -> bool {
    (t > &iv.lo && t < &iv.hi) || (t == &iv.lo && iv.lo_in) || (t == &iv.hi && iv.hi_in)
}

/// Membership of `p` in a component described by its maximal intervals.
pub fn member_in_pieces(space: &Space, pieces: &Pieces, p: &Location) -> bool {
    match pieces {
        Pieces::Empty => false,
        Pieces::Full => true,
        Pieces::List(runs) => match space.component(p.component) {
            Component::Point => true,
            Component::Arc { .. } => runs.iter().any(|r| in_interval(r, &p.t)),
            Component::Circle { length } => {
                let t = &p.t - (&p.t / length).floor() * length;
                let t2 = &t + length;
                runs.iter().any(|r| in_interval(r, &t) || in_interval(r, &t2))
            }
        },
    }
}

pub fn member(u: &OpenSet, p: &Location) -> bool {
    member_in_pieces(u.space(), &u.pieces(p.component), p)
}

/// Pointwise value of an element, counted from interval listings.
pub fn eval(f: &LscElement, p: &Location) -> ExtNat {
    if member(f.infinity(), p) {
        return ExtNat::Infinite;
    }
    ExtNat::Finite(f.levels().iter().filter(|u| member(u, p)).count() as u64)
}

fn sorted_unique(mut v: Vec<Q>) -> Vec<Q> {
    v.sort();
    v.dedup();
    v
}

/// Breakpoints of the given sets on each component, together with the
/// component's own endpoints (`0` and `L`, or `0` on circles).
pub fn breakpoints(space: &SpaceRef, sets: &[&OpenSet]) -> Vec<Vec<Q>> {
    space
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Component::Point => vec![Q::zero()],
            Component::Arc { length } => {
                let mut v = vec![Q::zero(), length.clone()];
                for s in sets {
                    v.extend(s.breakpoints(i));
                }
                sorted_unique(v)
            }
            Component::Circle { length } => {
                let mut v = vec![Q::zero()];
                for s in sets {
                    v.extend(s.breakpoints(i).into_iter().map(|t| &t - (&t / length).floor() * length));
                }
                sorted_unique(v)
            }
        })
        .collect()
}

/// Every breakpoint of the given sets plus the midpoint of every gap between
/// consecutive breakpoints. Any set built from these sets by finitely many
/// boolean, closure and interior operations is determined by its values here.
pub fn grid(space: &SpaceRef, sets: &[&OpenSet]) -> Vec<Location> {
    let bps = breakpoints(space, sets);
    let mut out = Vec::new();
    for (i, (c, pts)) in space.components().iter().zip(bps.iter()).enumerate() {
        match c {
            Component::Point => out.push(Location::new(i, Q::zero())),
            Component::Arc { .. } => {
                for (k, t) in pts.iter().enumerate() {
                    out.push(Location::new(i, t.clone()));
                    if let Some(n) = pts.get(k + 1) {
                        out.push(Location::new(i, midpoint(t, n)));
                    }
                }
            }
            Component::Circle { length } => {
                for (k, t) in pts.iter().enumerate() {
                    out.push(Location::new(i, t.clone()));
                    let next = pts.get(k + 1).cloned().unwrap_or_else(|| &pts[0] + length);
                    out.push(Location::new(i, midpoint(t, &next)));
                }
            }
        }
    }
    out
}

/// All level sets (and infinity levels) of the given elements.
pub fn element_sets(fs: &[&LscElement]) -> Vec<OpenSet> {
    let mut v = Vec::new();
    for f in fs {
        v.extend(f.levels().iter().cloned());
        v.push(f.infinity().clone());
    }
    v
}

/// The grid for a family of elements.
pub fn element_grid(fs: &[&LscElement]) -> Vec<Location> {
    let space = fs[0].space().clone();
    let sets = element_sets(fs);
    let refs: Vec<&OpenSet> = sets.iter().collect();
    grid(&space, &refs)
}

/// Pointwise comparison on the joint grid of both elements.
pub fn leq_pointwise(f: &LscElement, g: &LscElement) -> bool {
    element_grid(&[f, g]).iter().all(|p| eval(f, p) <= eval(g, p))
}

/// Smallest positive distance between consecutive breakpoints (including
/// the wrap-around gap on circles).
pub fn min_spacing(space: &SpaceRef, sets: &[&OpenSet]) -> Option<Q> {
    let bps = breakpoints(space, sets);
    let mut best: Option<Q> = None;
    for (c, pts) in space.components().iter().zip(bps.iter()) {
        let mut gaps: Vec<Q> = pts.windows(2).map(|w| &w[1] - &w[0]).collect();
        if let Component::Circle { length } = c {
            gaps.push(&pts[0] + length - pts.last().unwrap());
        }
        for g in gaps.into_iter().filter(|g| g.is_positive()) {
            best = Some(match best {
                Some(b) if b <= g => b,
                _ => g,
            });
        }
    }
    best
}

/// `g_k`: the levels of `g` shrunk inward by `1/k`, keeping the first `k`.
/// The sequence is increasing with supremum `g`, and each `g_k ≪ g`.
pub fn shrink_family(g: &LscElement, k: usize) -> LscElement {
    let delta = Q::one() / Q::from_integer((k as i64).into());
    let levels = (1..=k).map(|n| g.level(n).shrink(&delta)).collect();
    LscElement::new(levels, OpenSet::empty(g.space())).expect("shrinking preserves inclusions")
}

/// An index of the shrink family that suffices: if `f ≪ g` then already
/// `f ≤ g_k` for this `k`.
pub fn sufficient_index(f: &LscElement, g: &LscElement) -> usize {
    let sets = element_sets(&[f, g]);
    let refs: Vec<&OpenSet> = sets.iter().collect();
    let spacing = min_spacing(f.space(), &refs).unwrap_or_else(Q::one);
    let k = (Q::from_integer(2.into()) / spacing).ceil().to_integer();
    let k: usize = k.try_into().unwrap_or(usize::MAX / 2);
    (k + 1).max(f.height()).max(1)
}

/// Way-below decided through the shrink family.
pub fn way_below_by_sequence(f: &LscElement, g: &LscElement) -> bool {
    if !f.is_bounded() {
        return false;
    }
    let k = sufficient_index(f, g);
    leq_pointwise(f, &shrink_family(g, k))
}

/// `c + χ_W` for each open cell `W` of the grid of `c` on which `c` is
/// finite: the smallest raises of `c` the representation can express.
pub fn bumps(c: &LscElement) -> Vec<LscElement> {
    let s = c.space().clone();
    let sets = element_sets(&[c]);
    let refs: Vec<&OpenSet> = sets.iter().collect();
    let mut out = Vec::new();
    for (i, pts) in breakpoints(&s, &refs).iter().enumerate() {
        let comp = s.component(i);
        let cells: Vec<String> = match comp.length() {
            None => vec![format!("{}:full", i)],
            Some(len) if comp.is_circle() => {
                let mut v: Vec<String> = pts
                    .windows(2)
                    .map(|w| format!("{}:({},{})", i, rational::format(&w[0]), rational::format(&w[1])))
                    .collect();
                let last = pts.last().unwrap();
                v.push(format!("{}:({},{})", i, rational::format(last), rational::format(&(&pts[0] + len))));
                v
            }
            Some(_) => pts
                .windows(2)
                .map(|w| format!("{}:({},{})", i, rational::format(&w[0]), rational::format(&w[1])))
                .collect(),
        };
        for cell in cells {
            let w = OpenSet::parse(&s, &cell).unwrap();
            if !w.is_subset(c.infinity()) {
                out.push(c.add(&LscElement::indicator(&w)));
            }
        }
    }
    out
}
