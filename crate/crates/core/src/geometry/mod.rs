//! Exact set calculus on compact one-dimensional spaces.
//!
//! A [`Space`] is a finite disjoint union of arcs, circles and points with
//! rational lengths. [`OpenSet`] and [`ClosedSet`] are finite unions of
//! rational intervals in canonical form, so `==` is set equality.

mod cells;
pub mod json;
mod metric;
mod sets;
mod space;
mod text;

pub use cells::{Interval, Pieces};
pub use sets::{ClosedSet, OpenSet, Region};
pub use space::{Component, Location, Space, SpaceRef};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("a space needs at least one component")]
    EmptySpace,
    #[error("component {0}: length must be positive")]
    NonPositiveLength(usize),
    #[error("component {component}: malformed interval: {reason}")]
    MalformedInterval { component: usize, reason: String },
    #[error("expected {expected} per-component entries, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("the sets live in different spaces")]
    SpaceMismatch,
    #[error("point {0} is not in the space")]
    PointOutside(String),
    #[error("set syntax: {0}")]
    Syntax(String),
}
