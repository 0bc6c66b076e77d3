//! Seeded random generation of spaces, sets and elements.
//!
//! Endpoints are drawn from a grid `k L / d` with `d` taken from a small set
//! of denominators, which keeps coincidences (shared endpoints, touching
//! intervals) frequent enough to exercise boundary cases.

use crate::geometry::{Component, Interval, OpenSet, Space, SpaceRef};
use crate::lsc::LscElement;
use crate::rational::{int, ratio, Q};
use rand::seq::SliceRandom;
use rand::Rng;

const DENOMINATORS: [i64; 6] = [2, 3, 4, 6, 8, 12];

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_components: usize,
    pub max_intervals: usize,
    pub allow_circles: bool,
    pub allow_points: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_components: 4, max_intervals: 6, allow_circles: true, allow_points: true }
    }
}

fn length<R: Rng>(rng: &mut R) -> Q {
    [int(1), ratio(1, 2), int(2), ratio(3, 2), ratio(3, 4)].choose(rng).unwrap().clone()
}

pub fn space<R: Rng>(rng: &mut R, shape: &Shape) -> SpaceRef {
    let n = rng.gen_range(1..=shape.max_components);
    let comps = (0..n)
        .map(|_| {
            let roll = rng.gen_range(0..10);
            if shape.allow_points && roll == 0 {
                Component::Point
            } else if shape.allow_circles && roll < 4 {
                Component::Circle { length: length(rng) }
            } else {
                Component::Arc { length: length(rng) }
            }
        })
        .collect();
    Space::new(comps).expect("generated lengths are positive")
}

/// A random open set with at most `shape.max_intervals` intervals per
/// component.
pub fn open_set<R: Rng>(rng: &mut R, space: &SpaceRef, shape: &Shape) -> OpenSet {
    let mut per = Vec::with_capacity(space.len());
    let mut full = Vec::with_capacity(space.len());
    for c in space.components() {
        let whole = rng.gen_ratio(1, 12);
        full.push(whole || (matches!(c, Component::Point) && rng.gen_bool(0.5)));
        let mut ivs = Vec::new();
        if let Some(len) = c.length() {
            let d = *DENOMINATORS.choose(rng).unwrap();
            let at = |k: i64| len * ratio(k, d);
            let count = rng.gen_range(0..=shape.max_intervals);
            for _ in 0..count {
                match c {
                    Component::Arc { .. } => {
                        let a = rng.gen_range(0..d);
                        let b = rng.gen_range(a + 1..=d);
                        let lo_in = a == 0 && rng.gen_bool(0.5);
                        let hi_in = b == d && rng.gen_bool(0.5);
                        ivs.push(Interval { lo: at(a), hi: at(b), lo_in, hi_in });
                    }
                    _ => {
                        let a = rng.gen_range(0..d);
                        let span = rng.gen_range(1..=d);
                        ivs.push(Interval { lo: at(a), hi: at(a + span), lo_in: false, hi_in: false });
                    }
                }
            }
        }
        per.push(ivs);
    }
    OpenSet::normalize(space, &per, &full).expect("generated intervals are well formed")
}

pub fn indicator<R: Rng>(rng: &mut R, space: &SpaceRef, shape: &Shape) -> LscElement {
    LscElement::indicator(&open_set(rng, space, shape))
}

/// A random element with at most `max_height` finite levels; with
/// `allow_infinite` the infinity level is sometimes nonempty.
pub fn element<R: Rng>(rng: &mut R, space: &SpaceRef, shape: &Shape, max_height: usize, allow_infinite: bool) -> LscElement {
    let m = rng.gen_range(0..=max_height);
    let mut levels: Vec<OpenSet> = Vec::with_capacity(m);
    for i in 0..m {
        let u = open_set(rng, space, shape);
        levels.push(if i == 0 { u } else { u.intersect(&levels[i - 1]) });
    }
    let infinity = if allow_infinite && rng.gen_bool(0.3) {
        let v = open_set(rng, space, shape);
        match levels.last() {
            Some(last) => v.intersect(last),
            None => v,
        }
    } else {
        OpenSet::empty(space)
    };
    LscElement::new(levels, infinity).expect("levels were built decreasing")
}

/// A decreasing list of `len` elements below the unit.
pub fn decreasing_indicators<R: Rng>(rng: &mut R, space: &SpaceRef, shape: &Shape, len: usize) -> Vec<LscElement> {
    let mut out: Vec<OpenSet> = Vec::with_capacity(len);
    for i in 0..len {
        let u = open_set(rng, space, shape);
        out.push(if i == 0 { u } else { u.intersect(&out[i - 1]) });
    }
    out.iter().map(LscElement::indicator).collect()
}

/// A point of the space on the generator grid, or at a random breakpoint of
/// the given set.
pub fn location<R: Rng>(rng: &mut R, space: &SpaceRef) -> crate::geometry::Location {
    let i = rng.gen_range(0..space.len());
    let t = match space.component(i).length() {
        Some(len) => {
            let d = *DENOMINATORS.choose(rng).unwrap() * 2;
            len * ratio(rng.gen_range(0..=d), d)
        }
        None => int(0),
    };
    let t = if space.component(i).is_circle() && Some(&t) == space.component(i).length() { int(0) } else { t };
    crate::geometry::Location::new(i, t)
}
