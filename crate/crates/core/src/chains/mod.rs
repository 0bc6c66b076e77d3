//! Chains and almost chains of open sets, Lebesgue numbers, and the
//! chainability deciders for finite unions of arcs, circles and points.
//!
//! A *chain* is a finite sequence of open sets `C_1, …, C_n` with
//! `C_i ∩ C_j ≠ ∅` exactly when `|i − j| ≤ 1`; an *almost chain* only asks
//! for `C_i ∩ C_j = ∅` when `|i − j| ≥ 2`. Every construction in this module
//! returns a [`ChainWitness`] that [`verify_witness`] re-checks from scratch.

mod build;
pub mod json;
mod search;

pub use build::{
    decide_almost_chainable, decide_chainable, decide_piecewise_chainable, epsilon_chain, lebesgue_number,
    refine_to_almost_chain, set_is_almost_chainable, Refinement,
};
pub use search::{search_chain, SearchLog, SearchReport, MAX_SEARCH_DEPTH};

use crate::geometry::{GeometryError, OpenSet};
use crate::rational::{Show, Q};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    Chain,
    AlmostChain,
}

impl ChainKind {
    pub fn name(self) -> &'static str {
        match self {
            ChainKind::Chain => "chain",
            ChainKind::AlmostChain => "almost_chain",
        }
    }
}

/// An ordered list of open sets claimed to form a (almost) chain that
/// covers a target and refines a cover; `refines[i]` names the cover set
/// containing `pieces[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub kind: ChainKind,
    pub pieces: Vec<OpenSet>,
    pub mesh: Q,
    pub refines: Vec<usize>,
}

impl ChainWitness {
    /// Assembles a witness, computing the mesh from the pieces.
    pub fn new(kind: ChainKind, pieces: Vec<OpenSet>, refines: Vec<usize>) -> ChainWitness {
        let mesh = mesh(&pieces);
        ChainWitness { kind, pieces, mesh, refines }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// Largest diameter among the pieces (0 for no pieces).
pub fn mesh(pieces: &[OpenSet]) -> Q {
    pieces.iter().map(OpenSet::diameter).max().unwrap_or_else(Q::zero)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("the target set is empty")]
    EmptyTarget,
    #[error("the target set is not connected; use an almost chain instead")]
    Disconnected,
    #[error("component {0} is a full circle, which is not chainable")]
    FullCircle(usize),
    #[error("the cover does not cover {0}")]
    NotACover(&'static str),
    #[error("the sets live in different spaces")]
    SpaceMismatch,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Every way in which `w` fails to be a valid witness for `target` and
/// `cover`; empty when the witness is valid.
pub fn witness_violations(w: &ChainWitness, target: &OpenSet, cover: &[OpenSet]) -> Vec<String> {
    let mut out = Vec::new();
    let space = target.space();
    let foreign = w.pieces.iter().chain(cover.iter()).any(|u| **u.space() != **space);
    if foreign {
        out.push("pieces or cover sets live in a different space".to_string());
        return out;
    }
    for (i, c) in w.pieces.iter().enumerate() {
        if c.is_empty() {
            out.push(format!("piece {} is empty", i));
        }
    }
    let n = w.pieces.len();
    for i in 0..n {
        for j in i + 1..n {
            let meet = !w.pieces[i].intersect(&w.pieces[j]).is_empty();
            let near = j - i <= 1;
            match w.kind {
                ChainKind::Chain if meet != near => out.push(if near {
                    format!("consecutive pieces {} and {} are disjoint", i, j)
                } else {
                    format!("pieces {} and {} intersect although |i-j| = {}", i, j, j - i)
                }),
                ChainKind::AlmostChain if meet && !near => {
                    out.push(format!("pieces {} and {} intersect although |i-j| = {}", i, j, j - i))
                }
                _ => {}
            }
        }
    }
    let actual = mesh(&w.pieces);
    if actual != w.mesh {
        out.push(format!("stated mesh {} differs from the actual mesh {}", Show(&w.mesh), Show(&actual)));
    }
    if w.refines.len() != n {
        out.push(format!("{} refinement indices for {} pieces", w.refines.len(), n));
    } else {
        for (i, (&k, c)) in w.refines.iter().zip(w.pieces.iter()).enumerate() {
            match cover.get(k) {
                None => out.push(format!("piece {} refers to missing cover set {}", i, k)),
                Some(u) if !c.is_subset(u) => out.push(format!("piece {} is not inside cover set {}", i, k)),
                _ => {}
            }
        }
    }
    let union = w.pieces.iter().fold(OpenSet::empty(space), |a, b| a.union(b));
    if !target.is_subset(&union) {
        out.push("the pieces do not cover the target".to_string());
    }
    out
}

/// True iff the witness is an (almost) chain of nonempty sets with the
/// stated mesh, refining `cover` and covering `target`.
pub fn verify_witness(w: &ChainWitness, target: &OpenSet, cover: &[OpenSet]) -> bool {
    witness_violations(w, target, cover).is_empty()
}

impl fmt::Display for ChainWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of {} pieces, mesh {}", self.kind.name(), self.pieces.len(), Show(&self.mesh))
    }
}
