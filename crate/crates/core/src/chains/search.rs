//! Bounded exhaustive search for chains made of grid arcs.
//!
//! At depth `d` a component of length `L` is cut into `2^d` cells of width
//! `L / 2^d`. The search space is every chain whose links are open grid
//! arcs (unions of consecutive cells and the grid points between them,
//! optionally with a closed arc end) of diameter `< ε`. Each grid point and
//! each open cell is an atom, so a link is a bitmask over at most
//! `2 · 2^d + 1` atoms.
//!
//! A chain `C_1, …, C_n` is grown one link at a time: the new link must meet
//! the last one, avoid everything before it, and add at least one atom (a
//! link adding nothing would be contained in its predecessor and then meet
//! the link two before its successor). States are memoised on
//! `(atoms covered before the last link, last link)`.
//!
//! A negative answer only says that no chain of *connected grid links*
//! exists at the searched depths; it is evidence for non-chainability, not
//! a proof.

use super::{ChainKind, ChainWitness};
use crate::geometry::{Component, Interval, OpenSet, SpaceRef};
use crate::rational::Q;
use std::collections::HashSet;

/// Deepest grid the atom bitmasks can represent.
pub const MAX_SEARCH_DEPTH: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLog {
    pub depth: u32,
    pub links: usize,
    pub states: usize,
    pub found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub component: usize,
    pub eps: Q,
    pub found: Option<ChainWitness>,
    pub logs: Vec<SearchLog>,
}

struct Link {
    mask: u128,
    set: OpenSet,
}

fn interval_set(space: &SpaceRef, i: usize, iv: Interval) -> OpenSet {
    let mut per = vec![Vec::new(); space.len()];
    per[i].push(iv);
    OpenSet::normalize(space, &per, &[]).expect("grid arcs lie inside their component")
}

fn bits(from: usize, to_inclusive: usize, modulus: usize) -> u128 {
    (from..=to_inclusive).fold(0u128, |m, k| m | (1u128 << (k % modulus)))
}

fn links(space: &SpaceRef, i: usize, depth: u32, eps: &Q) -> (Vec<Link>, u128) {
    let n = 1usize << depth;
    let comp = space.component(i);
    let length = comp.length().expect("searched components have a length").clone();
    let h = &length / Q::from_integer((n as i64).into());
    let at = |k: usize| &h * Q::from_integer((k as i64).into());
    let mut out = Vec::new();
    let all;
    match comp {
        Component::Arc { .. } => {
            let atoms = 2 * n + 1;
            all = bits(0, atoms - 1, 128);
            for a in 0..n {
                for b in a + 1..=n {
                    for lo_in in [false, true] {
                        for hi_in in [false, true] {
                            if (lo_in && a != 0) || (hi_in && b != n) {
                                continue;
                            }
                            let mut mask = bits(2 * a + 1, 2 * b - 1, 128);
                            if lo_in {
                                mask |= 1;
                            }
                            if hi_in {
                                mask |= 1u128 << (2 * n);
                            }
                            let set = interval_set(space, i, Interval { lo: at(a), hi: at(b), lo_in, hi_in });
                            out.push(Link { mask, set });
                        }
                    }
                }
            }
        }
        Component::Circle { .. } => {
            let atoms = 2 * n;
            all = bits(0, atoms - 1, 128);
            for a in 0..n {
                for b in a + 1..=a + n {
                    let mask = bits(2 * a + 1, 2 * b - 1, atoms);
                    let set = interval_set(space, i, Interval { lo: at(a), hi: at(b), lo_in: false, hi_in: false });
                    out.push(Link { mask, set });
                }
            }
            out.push(Link { mask: all, set: OpenSet::component(space, i) });
        }
        Component::Point => unreachable!("points are handled before searching"),
    }
    out.retain(|l| l.set.diameter() < *eps);
    (out, all)
}

struct Dfs<'a> {
    links: &'a [Link],
    adjacent: Vec<Vec<usize>>,
    all: u128,
    seen: HashSet<(u128, usize)>,
    path: Vec<usize>,
}

impl Dfs<'_> {
    fn go(&mut self, before: u128, last: usize) -> bool {
        if !self.seen.insert((before, last)) {
            return false;
        }
        let union = before | self.links[last].mask;
        if union == self.all {
            return true;
        }
        for k in 0..self.adjacent[last].len() {
            let next = self.adjacent[last][k];
            let m = self.links[next].mask;
            if m & before != 0 || m & !union == 0 {
                continue;
            }
            self.path.push(next);
            if self.go(union, next) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Searches for a chain of grid arcs with mesh `< eps` covering component
/// `component`, at depths `1..=max_depth` (capped at [`MAX_SEARCH_DEPTH`]),
/// stopping at the first depth that yields one.
pub fn search_chain(space: &SpaceRef, component: usize, eps: &Q, max_depth: u32) -> SearchReport {
    let mut report = SearchReport { component, eps: eps.clone(), found: None, logs: vec![] };
    if matches!(space.component(component), Component::Point) {
        let w = ChainWitness::new(ChainKind::Chain, vec![OpenSet::component(space, component)], vec![0]);
        report.found = Some(w);
        return report;
    }
    for depth in 1..=max_depth.min(MAX_SEARCH_DEPTH) {
        let (links, all) = links(space, component, depth, eps);
        let adjacent = (0..links.len())
            .map(|a| (0..links.len()).filter(|&b| b != a && links[a].mask & links[b].mask != 0).collect())
            .collect();
        let mut dfs = Dfs { links: &links, adjacent, all, seen: HashSet::new(), path: vec![] };
        let mut found = None;
        for start in 0..links.len() {
            dfs.path = vec![start];
            if dfs.go(0, start) {
                found = Some(dfs.path.clone());
                break;
            }
        }
        report.logs.push(SearchLog { depth, links: links.len(), states: dfs.seen.len(), found: found.is_some() });
        if let Some(path) = found {
            let pieces: Vec<OpenSet> = path.iter().map(|&k| links[k].set.clone()).collect();
            let refines = vec![0; pieces.len()];
            report.found = Some(ChainWitness::new(ChainKind::Chain, pieces, refines));
            break;
        }
    }
    report
}
