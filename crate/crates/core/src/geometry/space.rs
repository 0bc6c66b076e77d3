use super::cells::Shape;
use super::GeometryError;
use crate::rational::{Show, Q};
use num_traits::{Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// One connected piece of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// The closed interval `[0, length]`.
    Arc { length: Q },
    /// The circle of circumference `length`, parametrised by `[0, length)`.
    Circle { length: Q },
    /// An isolated point.
    Point,
}

impl Component {
    pub fn length(&self) -> Option<&Q> {
        match self {
            Component::Arc { length } | Component::Circle { length } => Some(length),
            Component::Point => None,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, Component::Circle { .. })
    }

    pub(crate) fn shape(&self) -> Option<Shape> {
        match self {
            Component::Arc { .. } => Some(Shape::Arc),
            Component::Circle { .. } => Some(Shape::Circle),
            Component::Point => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Component::Arc { .. } => "arc",
            Component::Circle { .. } => "circle",
            Component::Point => "point",
        }
    }
}

/// A compact metric space given as a finite disjoint union of arcs, circles
/// and points. Distances inside a component are arc length (geodesic on
/// circles); points of different components are at distance 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    components: Vec<Component>,
}

pub type SpaceRef = Arc<Space>;

impl Space {
    pub fn new(components: Vec<Component>) -> Result<SpaceRef, GeometryError> {
        if components.is_empty() {
            return Err(GeometryError::EmptySpace);
        }
        for (i, c) in components.iter().enumerate() {
            if let Some(l) = c.length() {
                if !l.is_positive() {
                    return Err(GeometryError::NonPositiveLength(i));
                }
            }
        }
        Ok(Arc::new(Space { components }))
    }

    /// The unit interval `[0, 1]`.
    pub fn unit_arc() -> SpaceRef {
        Space::new(vec![Component::Arc { length: Q::from_integer(1.into()) }]).expect("valid")
    }

    /// The circle of circumference 1.
    pub fn unit_circle() -> SpaceRef {
        Space::new(vec![Component::Circle { length: Q::from_integer(1.into()) }]).expect("valid")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn has_circle(&self) -> bool {
        self.components.iter().any(Component::is_circle)
    }

    /// Checks that `p` names a point of this space.
    pub fn check_point(&self, p: &Location) -> Result<(), GeometryError> {
        let bad = || GeometryError::PointOutside(p.to_string());
        let c = self.components.get(p.component).ok_or_else(bad)?;
        match c {
            Component::Arc { length } => {
                if p.t.is_negative() || &p.t > length {
                    return Err(bad());
                }
            }
            Component::Circle { .. } => {}
            Component::Point => {
                if !p.t.is_zero() {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }

    /// Distance between two points of the space.
    pub fn distance(&self, p: &Location, q: &Location) -> Q {
        if p.component != q.component {
            return Q::from_integer(2.into());
        }
        match &self.components[p.component] {
            Component::Arc { .. } => (&p.t - &q.t).abs(),
            Component::Circle { length } => circle_distance(&p.t, &q.t, length),
            Component::Point => Q::zero(),
        }
    }
}

pub(crate) fn circle_distance(s: &Q, t: &Q, len: &Q) -> Q {
    let d = super::cells::wrap(&(s - t), len);
    let e = len - &d;
    if d <= e {
        d
    } else {
        e
    }
}

/// A point of a space: a component index and a coordinate (always 0 on point
/// components; reduced modulo the length on circles).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Location {
    pub component: usize,
    pub t: Q,
}

impl Location {
    pub fn new(component: usize, t: Q) -> Self {
        Location { component, t }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, Show(&self.t))
    }
}
