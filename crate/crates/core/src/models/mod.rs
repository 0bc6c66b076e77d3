//! Abstract Cu-semigroup models and the checkers for weak chainability,
//! refinable sums and almost ordered sums.
//!
//! A model implements [`CuModel`]: order, addition, way-below, and optional
//! lattice operations on its element type. The checkers are generic over
//! models and return a [`Report`]: a witness that has been re-validated
//! against the raw clauses of the definition, a counterexample backed by an
//! exhaustive argument recorded in the log, or an honest "inconclusive"
//! when the search bounds run out.
//!
//! Models: [`NBar`] (extended naturals), [`Z`] (the Jiang–Su semigroup
//! `(0, ∞] ⊔ N`), [`ZPrime`] (`Z` with an extra compact `1''`),
//! [`FiniteTable`] (a finite model given by tables), [`LscModel`]
//! (`Lsc(X, N̄)` over a space) and [`DirectSum`].

mod almost_ordered;
mod candidates;
pub mod json;
mod lsc_model;
mod nbar;
mod refinable;
mod sum;
mod table;
mod weak_chain;
mod z;

pub use almost_ordered::{almost_ordered_violations, check_almost_ordered_sums, lattice_witness};
pub use candidates::{candidates, Candidates};
pub use lsc_model::{interpolate, LscModel};
pub use nbar::NBar;
pub use refinable::{check_refinable_sums, refinable_violations};
pub use sum::DirectSum;
pub use table::{check_axioms, AxiomEntry, AxiomReport, AxiomStatus, FiniteTable, TableError};
pub use weak_chain::{check_weak_chainability, weak_chain_violations};
pub use z::{ZElem, ZPrime, ZPrimeElem, Z};

use crate::json::JsonError;
use serde_json::Value;
use std::fmt::Debug;
use std::hash::Hash;

/// A Cu-semigroup presented by decidable operations on an element type.
pub trait CuModel: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn way_below(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn join(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn meet(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Every pair has a join and a meet and `x + y = (x ∨ y) + (x ∧ y)`.
    fn lattice_ordered(&self) -> bool {
        false
    }

    /// An element "between" `a` and `b`, used to enrich candidate sets
    /// (rational midpoints in the soft part of `Z`).
    fn midpoint(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// All elements, for finite models.
    fn universe(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Every `s` with `lo ≪ s ≪ hi`, when there are finitely many and the
    /// model can list them.
    fn exact_between(&self, lo: &Self::Elem, hi: &Self::Elem) -> Option<Vec<Self::Elem>> {
        self.universe()
            .map(|u| u.into_iter().filter(|s| self.way_below(lo, s) && self.way_below(s, hi)).collect())
    }

    /// Every decreasing finite sequence of nonzero elements with sum `s`,
    /// when there are finitely many and the model can list them.
    fn decompositions(&self, _s: &Self::Elem) -> Option<Vec<Vec<Self::Elem>>> {
        None
    }

    /// Some `k ≤ cap` with `a ≤ k b`.
    fn proportional(&self, a: &Self::Elem, b: &Self::Elem, cap: u64) -> Option<u64> {
        let mut multiple = b.clone();
        for k in 1..=cap {
            if self.leq(a, &multiple) {
                return Some(k);
            }
            multiple = self.add(&multiple, b);
        }
        None
    }

    fn encode(&self, a: &Self::Elem) -> Value;
    fn decode(&self, v: &Value, path: &str) -> Result<Self::Elem, JsonError>;
    fn show(&self, a: &Self::Elem) -> String;

    /// A model-specific construction of refinable-sum sequences, if the
    /// model has one; the checker re-validates whatever is returned.
    fn refinable_construction(&self, _inst: &RefinableInstance<Self::Elem>) -> Option<Construction<Self::Elem>> {
        None
    }

    /// A decision procedure for weak chainability, if the model has one.
    fn weak_chain(
        &self,
        _inst: &WeakChainInstance<Self::Elem>,
        _bounds: &Bounds,
    ) -> Option<Result<Report<WeakChainWitness<Self::Elem>>, CheckError>> {
        None
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sum(&self, xs: &[Self::Elem]) -> Self::Elem {
        xs.iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn equivalent(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }
}

/// Decreasing sequences produced by a construction, with its log.
pub type Construction<E> = (Vec<Vec<E>>, Vec<String>);

/// Limits for candidate generation and searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Rounds of closure under `+`, `∨`, `∧` and midpoints.
    pub depth: u32,
    /// Longest decreasing sequence tried in searches.
    pub max_len: usize,
    /// Search nodes visited before giving up.
    pub budget: usize,
    /// Largest multiplier tried when deciding `x ∝ y` by repeated addition.
    pub cap: u64,
    /// Largest candidate set.
    pub max_candidates: usize,
    /// Grid depth for the bounded chain search on circles.
    pub chain_depth: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { depth: 3, max_len: 3, budget: 200_000, cap: 64, max_candidates: 200, chain_depth: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Witness(W),
    Counterexample,
    Inconclusive,
}

impl<W> Verdict<W> {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Witness(_) => "witness",
            Verdict::Counterexample => "counterexample",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// A verdict together with the reasoning that led to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report<W> {
    pub verdict: Verdict<W>,
    pub log: Vec<String>,
}

impl<W> Report<W> {
    pub fn new(verdict: Verdict<W>, log: Vec<String>) -> Self {
        Report { verdict, log }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self.verdict, Verdict::Witness(_))
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self.verdict, Verdict::Counterexample)
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.verdict, Verdict::Inconclusive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("the instance does not satisfy the hypotheses: {0}")]
    Precondition(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// `x_1 ≪ … ≪ x_n` together with `x'_1, …, x'_n`, `x_i ∝ x'_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinableInstance<E> {
    pub xs: Vec<E>,
    pub primes: Vec<E>,
}

/// `n − 1` decreasing sequences of a common length; sequence `k` (from 0)
/// sits between `x_{k+1}` and `x_{k+2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinableWitness<E> {
    pub sequences: Vec<Vec<E>>,
}

/// Stationary sequences `y_1 ≥ … ≥ y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostOrderedWitness<E> {
    pub ys: Vec<E>,
}

/// `x ≪ y ≪ y_1 + … + y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakChainInstance<E> {
    pub x: E,
    pub y: E,
    pub parts: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakChainWitness<E> {
    pub x_prime: E,
    pub zs: Vec<E>,
}

pub(crate) fn show_list<M: CuModel>(m: &M, xs: &[M::Elem]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| m.show(x)).collect();
    format!("({})", parts.join(", "))
}
