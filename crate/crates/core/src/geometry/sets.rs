use super::cells::{wrap, Cells, Interval, Pieces, Shape};
use super::space::{Component, Location, SpaceRef};
use super::GeometryError;
use crate::rational::Q;
use num_traits::{Signed, Zero};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Part {
    Point(bool),
    Line(Cells),
}

/// A finite union of intervals and points, one part per component.
#[derive(Clone, Debug)]
pub(crate) struct PointSet {
    pub(crate) space: SpaceRef,
    pub(crate) parts: Vec<Part>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.parts == other.parts
    }
}

impl Eq for PointSet {}

impl Hash for PointSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

pub(crate) fn same_space(a: &SpaceRef, b: &SpaceRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Membership in an interval given in lifted circle coordinates.
fn in_circle_interval(iv: &Interval, t: &Q, len: &Q) -> bool {
    // Smallest representative of t that is >= lo.
    let t0 = &iv.lo + wrap(&(t - &iv.lo), len);
    let mut s = t0;
    while s <= iv.hi {
        let inside = (s > iv.lo && s < iv.hi) || (s == iv.lo && iv.lo_in) || (s == iv.hi && iv.hi_in);
        if inside {
            return true;
        }
        s += len;
    }
    false
}

fn in_arc_interval(iv: &Interval, t: &Q) -> bool {
    (t > &iv.lo && t < &iv.hi) || (t == &iv.lo && iv.lo_in) || (t == &iv.hi && iv.hi_in)
}

impl PointSet {
    pub fn constant(space: &SpaceRef, bit: bool) -> PointSet {
        let parts = space
            .components()
            .iter()
            .map(|c| match c.shape() {
                None => Part::Point(bit),
                Some(sh) => Part::Line(Cells::constant(sh, c.length().unwrap(), bit)),
            })
            .collect();
        PointSet { space: space.clone(), parts }
    }

    pub fn whole_component(space: &SpaceRef, i: usize) -> PointSet {
        let mut s = PointSet::constant(space, false);
        s.parts[i] = match space.component(i).shape() {
            None => Part::Point(true),
            Some(sh) => Part::Line(Cells::constant(sh, space.component(i).length().unwrap(), true)),
        };
        s
    }

    /// Unions of intervals, no validation; flags are honoured everywhere so
    /// this also builds closed sets and points.
    pub fn from_intervals(space: &SpaceRef, per_component: &[Vec<Interval>], full: &[bool]) -> PointSet {
        let parts = space
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let is_full = full.get(i).copied().unwrap_or(false);
                let ivs: &[Interval] = per_component.get(i).map(|v| v.as_slice()).unwrap_or(&[]);
                match c {
                    Component::Point => Part::Point(is_full || !ivs.is_empty()),
                    Component::Arc { length } => {
                        if is_full {
                            return Part::Line(Cells::constant(Shape::Arc, length, true));
                        }
                        let cuts = ivs.iter().flat_map(|iv| [iv.lo.clone(), iv.hi.clone()]).collect();
                        Part::Line(Cells::from_predicate(Shape::Arc, length, cuts, |t| ivs.iter().any(|iv| in_arc_interval(iv, t))))
                    }
                    Component::Circle { length } => {
                        if is_full {
                            return Part::Line(Cells::constant(Shape::Circle, length, true));
                        }
                        let cuts = ivs.iter().flat_map(|iv| [iv.lo.clone(), iv.hi.clone()]).collect();
                        Part::Line(Cells::from_predicate(Shape::Circle, length, cuts, |t| {
                            ivs.iter().any(|iv| in_circle_interval(iv, t, length))
                        }))
                    }
                }
            })
            .collect();
        PointSet { space: space.clone(), parts }
    }

    fn zip(&self, other: &PointSet, f: impl Fn(bool, bool) -> bool + Copy) -> PointSet {
        assert!(same_space(&self.space, &other.space), "point sets live in different spaces");
        let parts = self
            .parts
            .iter()
            .zip(other.parts.iter())
            .enumerate()
            .map(|(i, (a, b))| match (a, b) {
                (Part::Point(x), Part::Point(y)) => Part::Point(f(*x, *y)),
                (Part::Line(x), Part::Line(y)) => {
                    let c = self.space.component(i);
                    Part::Line(x.combine(y, c.shape().unwrap(), c.length().unwrap(), f))
                }
                _ => unreachable!("parts follow the component kinds"),
            })
            .collect();
        PointSet { space: self.space.clone(), parts }
    }

    pub fn union(&self, o: &PointSet) -> PointSet {
        self.zip(o, |a, b| a || b)
    }

    pub fn intersect(&self, o: &PointSet) -> PointSet {
        self.zip(o, |a, b| a && b)
    }

    pub fn minus(&self, o: &PointSet) -> PointSet {
        self.zip(o, |a, b| a && !b)
    }

    pub fn complement(&self) -> PointSet {
        self.map_local(|p, _| !p, |g| !g)
    }

    pub fn closure(&self) -> PointSet {
        self.map_local(|p, n| p || n.iter().any(|&g| g), |g| g)
    }

    pub fn interior(&self) -> PointSet {
        self.map_local(|p, n| p && n.iter().all(|&g| g), |g| g)
    }

    fn map_local(&self, fpt: impl Fn(bool, &[bool]) -> bool + Copy, fgap: impl Fn(bool) -> bool + Copy) -> PointSet {
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| match p {
                Part::Point(b) => Part::Point(fpt(*b, &[])),
                Part::Line(c) => Part::Line(c.map_local(self.space.component(i).shape().unwrap(), fpt, fgap)),
            })
            .collect();
        PointSet { space: self.space.clone(), parts }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|p| match p {
            Part::Point(b) => !b,
            Part::Line(c) => c.constant_value() == Some(false),
        })
    }

    pub fn is_full(&self) -> bool {
        self.parts.iter().all(|p| match p {
            Part::Point(b) => *b,
            Part::Line(c) => c.constant_value() == Some(true),
        })
    }

    pub fn is_subset(&self, o: &PointSet) -> bool {
        self.minus(o).is_empty()
    }

    pub fn contains(&self, p: &Location) -> bool {
        match &self.parts[p.component] {
            Part::Point(b) => *b,
            Part::Line(c) => {
                let comp = self.space.component(p.component);
                c.member(comp.shape().unwrap(), comp.length().unwrap(), &p.t)
            }
        }
    }

    pub fn pieces(&self, i: usize) -> Pieces {
        match &self.parts[i] {
            Part::Point(true) => Pieces::Full,
            Part::Point(false) => Pieces::Empty,
            Part::Line(c) => {
                let comp = self.space.component(i);
                c.runs(comp.shape().unwrap(), comp.length().unwrap())
            }
        }
    }

    pub fn breakpoints(&self, i: usize) -> Vec<Q> {
        match &self.parts[i] {
            Part::Point(_) => vec![],
            Part::Line(c) => c.cuts().to_vec(),
        }
    }

    pub fn touches_component(&self, i: usize) -> bool {
        match &self.parts[i] {
            Part::Point(b) => *b,
            Part::Line(c) => c.constant_value() != Some(false),
        }
    }

    pub fn covers_component(&self, i: usize) -> bool {
        match &self.parts[i] {
            Part::Point(b) => *b,
            Part::Line(c) => c.constant_value() == Some(true),
        }
    }

    pub fn restrict(&self, i: usize) -> PointSet {
        self.intersect(&PointSet::whole_component(&self.space, i))
    }

    /// Rotation of a circle component by `shift`; other parts unchanged.
    pub fn rotate_component(&self, i: usize, shift: &Q) -> PointSet {
        let mut out = self.clone();
        if let Part::Line(c) = &self.parts[i] {
            if let Component::Circle { length } = self.space.component(i) {
                out.parts[i] = Part::Line(c.rotated(length, shift));
            }
        }
        out
    }

    /// Connected pieces, component by component.
    pub fn connected_pieces(&self) -> Vec<PointSet> {
        let mut out = Vec::new();
        for i in 0..self.space.len() {
            match self.pieces(i) {
                Pieces::Empty => {}
                Pieces::Full => out.push(PointSet::whole_component(&self.space, i)),
                Pieces::List(runs) => {
                    for r in runs {
                        let mut per = vec![Vec::new(); self.space.len()];
                        per[i].push(r);
                        out.push(PointSet::from_intervals(&self.space, &per, &[]));
                    }
                }
            }
        }
        out
    }
}

/// An open subset of a space, kept in canonical form.
///
/// Structural equality is set equality. The empty set, whole components and
/// the whole space are all ordinary values of this type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenSet(pub(crate) PointSet);

/// A closed subset of a space, kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedSet(pub(crate) PointSet);

fn check_same(a: &PointSet, b: &PointSet) -> Result<(), GeometryError> {
    if same_space(&a.space, &b.space) {
        Ok(())
    } else {
        Err(GeometryError::SpaceMismatch)
    }
}

/// Validates user-supplied open intervals component by component.
fn validate_open_intervals(space: &SpaceRef, per: &[Vec<Interval>], full: &[bool]) -> Result<(), GeometryError> {
    if per.len() != space.len() {
        return Err(GeometryError::ComponentCount { expected: space.len(), found: per.len() });
    }
    if !full.is_empty() && full.len() != space.len() {
        return Err(GeometryError::ComponentCount { expected: space.len(), found: full.len() });
    }
    for (i, (c, ivs)) in space.components().iter().zip(per.iter()).enumerate() {
        let bad = |reason: String| GeometryError::MalformedInterval { component: i, reason };
        for iv in ivs {
            match c {
                Component::Point => return Err(bad("point components take no intervals; use full_flags".into())),
                Component::Arc { length } => {
                    if iv.lo.is_negative() || iv.hi > *length {
                        return Err(bad(format!("interval leaves [0, {}]", crate::rational::Show(length))));
                    }
                    if iv.lo >= iv.hi {
                        return Err(bad("left endpoint must be below right endpoint".into()));
                    }
                    if iv.lo_in && !iv.lo.is_zero() {
                        return Err(bad("a closed left end is only open in the space at 0".into()));
                    }
                    if iv.hi_in && iv.hi != *length {
                        return Err(bad("a closed right end is only open in the space at the arc's end".into()));
                    }
                }
                Component::Circle { length } => {
                    if iv.lo.is_negative() || iv.hi > length * Q::from_integer(2.into()) {
                        return Err(bad("circle intervals must satisfy 0 <= a < b <= 2L".into()));
                    }
                    if iv.lo >= iv.hi {
                        return Err(bad("left endpoint must be below right endpoint".into()));
                    }
                    if &iv.hi - &iv.lo > *length {
                        return Err(bad("circle interval longer than the circle".into()));
                    }
                    if iv.lo_in || iv.hi_in {
                        return Err(bad("circle intervals are open".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

impl OpenSet {
    pub fn empty(space: &SpaceRef) -> OpenSet {
        OpenSet(PointSet::constant(space, false))
    }

    pub fn full(space: &SpaceRef) -> OpenSet {
        OpenSet(PointSet::constant(space, true))
    }

    /// The whole `i`-th component (components are clopen).
    pub fn component(space: &SpaceRef, i: usize) -> OpenSet {
        OpenSet(PointSet::whole_component(space, i))
    }

    /// Normalises an arbitrary finite union of open intervals.
    ///
    /// `per_component[i]` lists the intervals of component `i`; `full[i]`
    /// (optional, may be empty) marks components contained entirely. On a
    /// circle of length `L` an interval `(a, b)` needs `0 <= a < b <= 2L` and
    /// `b - a <= L`; `b > L` encodes wrapping through 0, and `b - a = L` is
    /// the circle with one point removed.
    pub fn normalize(space: &SpaceRef, per_component: &[Vec<Interval>], full: &[bool]) -> Result<OpenSet, GeometryError> {
        validate_open_intervals(space, per_component, full)?;
        Ok(OpenSet(PointSet::from_intervals(space, per_component, full)))
    }

    /// Parses the compact text form, e.g. `"0:[0,1/2) (3/4,1]; 1:full"`.
    pub fn parse(space: &SpaceRef, text: &str) -> Result<OpenSet, GeometryError> {
        let (per, full) = super::text::parse_set_text(space, text)?;
        let raw = PointSet::from_intervals(space, &per, &full);
        if raw.interior() != raw {
            return Err(GeometryError::Syntax(format!("{:?} is not open in the space", text)));
        }
        Ok(OpenSet(raw))
    }

    pub fn space(&self) -> &SpaceRef {
        &self.0.space
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.0.is_full()
    }

    pub fn contains(&self, p: &Location) -> bool {
        self.0.contains(p)
    }

    /// Union; both sets must live in the same space.
    pub fn union(&self, o: &OpenSet) -> OpenSet {
        OpenSet(self.0.union(&o.0))
    }

    pub fn intersect(&self, o: &OpenSet) -> OpenSet {
        OpenSet(self.0.intersect(&o.0))
    }

    pub fn try_union(&self, o: &OpenSet) -> Result<OpenSet, GeometryError> {
        check_same(&self.0, &o.0)?;
        Ok(self.union(o))
    }

    pub fn try_intersect(&self, o: &OpenSet) -> Result<OpenSet, GeometryError> {
        check_same(&self.0, &o.0)?;
        Ok(self.intersect(o))
    }

    /// `self ∖ c`, which is again open.
    pub fn minus(&self, c: &ClosedSet) -> OpenSet {
        OpenSet(self.0.minus(&c.0))
    }

    pub fn complement(&self) -> ClosedSet {
        ClosedSet(self.0.complement())
    }

    pub fn closure(&self) -> ClosedSet {
        ClosedSet(self.0.closure())
    }

    pub fn is_subset(&self, o: &OpenSet) -> bool {
        self.0.is_subset(&o.0)
    }

    /// `closure(self) ⊆ o`.
    pub fn compactly_contained(&self, o: &OpenSet) -> bool {
        self.0.closure().is_subset(&o.0)
    }

    pub fn try_compactly_contained(&self, o: &OpenSet) -> Result<bool, GeometryError> {
        check_same(&self.0, &o.0)?;
        Ok(self.compactly_contained(o))
    }

    /// Maximal connected open pieces, ordered by component and position.
    pub fn connected_components(&self) -> Vec<OpenSet> {
        self.0.connected_pieces().into_iter().map(OpenSet).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The description of component `i` as maximal intervals.
    pub fn pieces(&self, i: usize) -> Pieces {
        self.0.pieces(i)
    }

    /// Cut points used by the canonical form on component `i`.
    pub fn breakpoints(&self, i: usize) -> Vec<Q> {
        self.0.breakpoints(i)
    }

    pub fn meets_component(&self, i: usize) -> bool {
        self.0.touches_component(i)
    }

    pub fn covers_component(&self, i: usize) -> bool {
        self.0.covers_component(i)
    }

    /// The part of this set lying in component `i`.
    pub fn restrict(&self, i: usize) -> OpenSet {
        OpenSet(self.0.restrict(i))
    }

    /// Indices of the components this set meets.
    pub fn support_components(&self) -> Vec<usize> {
        (0..self.space().len()).filter(|&i| self.meets_component(i)).collect()
    }
}

impl ClosedSet {
    pub fn empty(space: &SpaceRef) -> ClosedSet {
        ClosedSet(PointSet::constant(space, false))
    }

    pub fn full(space: &SpaceRef) -> ClosedSet {
        ClosedSet(PointSet::constant(space, true))
    }

    /// Parses the compact text form; closed intervals and singletons `[a,a]`.
    pub fn parse(space: &SpaceRef, text: &str) -> Result<ClosedSet, GeometryError> {
        let (per, full) = super::text::parse_set_text(space, text)?;
        let raw = PointSet::from_intervals(space, &per, &full);
        if raw.closure() != raw {
            return Err(GeometryError::Syntax(format!("{:?} is not closed in the space", text)));
        }
        Ok(ClosedSet(raw))
    }

    pub fn space(&self) -> &SpaceRef {
        &self.0.space
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.0.is_full()
    }

    pub fn contains(&self, p: &Location) -> bool {
        self.0.contains(p)
    }

    pub fn union(&self, o: &ClosedSet) -> ClosedSet {
        ClosedSet(self.0.union(&o.0))
    }

    pub fn intersect(&self, o: &ClosedSet) -> ClosedSet {
        ClosedSet(self.0.intersect(&o.0))
    }

    pub fn complement(&self) -> OpenSet {
        OpenSet(self.0.complement())
    }

    pub fn interior(&self) -> OpenSet {
        OpenSet(self.0.interior())
    }

    pub fn is_subset(&self, o: &ClosedSet) -> bool {
        self.0.is_subset(&o.0)
    }

    pub fn is_subset_of_open(&self, o: &OpenSet) -> bool {
        self.0.is_subset(&o.0)
    }

    pub fn meets_open(&self, o: &OpenSet) -> bool {
        !self.0.intersect(&o.0).is_empty()
    }

    pub fn pieces(&self, i: usize) -> Pieces {
        self.0.pieces(i)
    }

    pub fn breakpoints(&self, i: usize) -> Vec<Q> {
        self.0.breakpoints(i)
    }
}

/// An arbitrary finite union of intervals and points, neither necessarily
/// open nor closed. Used for intermediate results such as `{f - g >= k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region(pub(crate) PointSet);

impl Region {
    pub fn empty(space: &SpaceRef) -> Region {
        Region(PointSet::constant(space, false))
    }

    pub fn from_open(u: &OpenSet) -> Region {
        Region(u.0.clone())
    }

    pub fn from_closed(c: &ClosedSet) -> Region {
        Region(c.0.clone())
    }

    pub fn union(&self, o: &Region) -> Region {
        Region(self.0.union(&o.0))
    }

    pub fn intersect(&self, o: &Region) -> Region {
        Region(self.0.intersect(&o.0))
    }

    pub fn minus(&self, o: &Region) -> Region {
        Region(self.0.minus(&o.0))
    }

    pub fn interior(&self) -> OpenSet {
        OpenSet(self.0.interior())
    }

    pub fn closure(&self) -> ClosedSet {
        ClosedSet(self.0.closure())
    }

    pub fn contains(&self, p: &Location) -> bool {
        self.0.contains(p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Space;
    use crate::rational::ratio;

    fn arc() -> SpaceRef {
        Space::unit_arc()
    }

    fn circ() -> SpaceRef {
        Space::unit_circle()
    }

    fn open(s: &SpaceRef, t: &str) -> OpenSet {
        OpenSet::parse(s, t).unwrap()
    }

    fn iv(a: Q, b: Q) -> Interval {
        Interval { lo: a, hi: b, lo_in: false, hi_in: false }
    }

    #[test]
    fn overlapping_intervals_merge() {
        let s = arc();
        let u = OpenSet::normalize(&s, &[vec![iv(ratio(0, 1), ratio(1, 2)), iv(ratio(1, 4), ratio(3, 4))]], &[]).unwrap();
        assert_eq!(u, open(&s, "(0,3/4)"));
    }

    #[test]
    fn wrapping_intervals_fill_the_circle() {
        let s = circ();
        let u = OpenSet::normalize(&s, &[vec![iv(ratio(0, 1), ratio(3, 5)), iv(ratio(1, 2), ratio(11, 10))]], &[]).unwrap();
        assert!(u.is_full());
        assert_eq!(u, OpenSet::full(&s));
    }

    #[test]
    fn empty_soup_is_empty() {
        let s = arc();
        let u = OpenSet::normalize(&s, &[vec![]], &[]).unwrap();
        assert!(u.is_empty());
    }

    #[test]
    fn malformed_intervals_are_rejected() {
        let s = arc();
        assert!(OpenSet::normalize(&s, &[vec![iv(ratio(1, 2), ratio(1, 4))]], &[]).is_err());
        let mut closed_inside = iv(ratio(1, 4), ratio(1, 2));
        closed_inside.lo_in = true;
        assert!(OpenSet::normalize(&s, &[vec![closed_inside]], &[]).is_err());
        let c = circ();
        assert!(OpenSet::normalize(&c, &[vec![iv(ratio(1, 4), ratio(3, 2))]], &[]).is_err());
        // Exactly one lap is the circle minus a point.
        let punctured = OpenSet::normalize(&c, &[vec![iv(ratio(1, 4), ratio(5, 4))]], &[]).unwrap();
        assert!(!punctured.is_full());
        assert!(!punctured.contains(&Location::new(0, ratio(1, 4))));
        assert!(punctured.contains(&Location::new(0, ratio(0, 1))));
    }

    #[test]
    fn union_and_intersection_examples() {
        let s = arc();
        assert!(open(&s, "(0,1/2)").intersect(&open(&s, "(1/2,1)")).is_empty());
        assert!(open(&s, "[0,1/2)").union(&open(&s, "(1/4,1]")).is_full());
        let c = circ();
        assert_eq!(open(&c, "(3/4,5/4)").intersect(&open(&c, "(0,1/2)")), open(&c, "(0,1/4)"));
    }

    #[test]
    fn mismatched_spaces_are_an_error() {
        let a = OpenSet::full(&arc());
        let b = OpenSet::full(&circ());
        assert_eq!(a.try_union(&b), Err(GeometryError::SpaceMismatch));
    }

    #[test]
    fn closure_and_interior_examples() {
        let s = arc();
        assert_eq!(open(&s, "(0,1/2)").closure(), ClosedSet::parse(&s, "[0,1/2]").unwrap());
        let c = circ();
        assert!(OpenSet::full(&c).closure().is_full());
        let k = ClosedSet::parse(&s, "[0,1/2] [3/4,3/4]").unwrap();
        assert_eq!(k.interior(), open(&s, "[0,1/2)"));
    }

    #[test]
    fn compact_containment_examples() {
        let s = arc();
        assert!(open(&s, "(1/4,1/2)").compactly_contained(&open(&s, "(0,3/4)")));
        assert!(!open(&s, "(0,1/2)").compactly_contained(&open(&s, "(0,3/4)")));
        assert!(OpenSet::full(&s).compactly_contained(&OpenSet::full(&s)));
    }

    #[test]
    fn connected_component_examples() {
        let s = arc();
        let parts = open(&s, "(0,1/4) (1/2,3/4)").connected_components();
        assert_eq!(parts, vec![open(&s, "(0,1/4)"), open(&s, "(1/2,3/4)")]);
        let c = circ();
        assert_eq!(OpenSet::full(&c).connected_components(), vec![OpenSet::full(&c)]);
        let w = open(&c, "(3/4,5/4)");
        assert_eq!(w.connected_components(), vec![w.clone()]);
    }
}

impl std::fmt::Display for OpenSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.space().len();
        f.write_str(&super::text::format_set_text((0..n).map(|i| (i, self.pieces(i)))))
    }
}

impl std::fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.space().len();
        f.write_str(&super::text::format_set_text((0..n).map(|i| (i, self.pieces(i)))))
    }
}
