//! The dual space of `Lsc(X, N̄)`, checked at the level of open and closed sets.
//!
//! An element `y ≤ e` (with `e` the unit) determines the closed set
//! `C_y = {x ≥ y}` of maximal elements and its complement `U_y`. Maximal
//! elements below `e` are the indicators of `X ∖ {p}`, so `C_y` is the set of
//! points where `y` vanishes and `U_y = supp y`. The points themselves are never
//! enumerated. Every statement here is checked as an identity between sets, with
//! one side computed from the order (joins, meets, way-below, almost complements)
//! and the other from the point-set geometry (closures, interiors, inclusions).

use crate::geometry::{ClosedSet, Location, OpenSet, Region, SpaceRef};
use crate::lsc::{almost_complement, LscElement, LscError};
use crate::oracle;
use crate::rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("{0} is not below the unit")]
    NotBelowUnit(&'static str),
    #[error("the elements live in different spaces")]
    SpaceMismatch,
    #[error(transparent)]
    Lsc(#[from] LscError),
}

/// An element below the unit together with its open set `U_y` and closed
/// set `C_y`. Both sets are derived on construction, so they always agree
/// with `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub y: LscElement,
    pub u: OpenSet,
    pub c: ClosedSet,
}

impl DualPair {
    pub fn new(y: &LscElement) -> Result<DualPair, DualityError> {
        if !y.leq(&LscElement::unit(y.space())) {
            return Err(DualityError::NotBelowUnit("y"));
        }
        let u = y.support();
        let c = u.complement();
        Ok(DualPair { y: y.clone(), u, c })
    }

    pub fn from_open(u: &OpenSet) -> DualPair {
        DualPair::new(&LscElement::indicator(u)).expect("indicators lie below the unit")
    }
}

/// The closed singleton `{p}`.
pub fn singleton(space: &SpaceRef, p: &Location) -> ClosedSet {
    let text = match space.component(p.component) {
        crate::geometry::Component::Point => format!("{}:full", p.component),
        _ => {
            let t = rational::format(&p.t);
            format!("{}:[{},{}]", p.component, t, t)
        }
    };
    ClosedSet::parse(space, &text).expect("a location is a valid singleton")
}

/// The maximal element `χ_{X ∖ {p}}` below the unit, i.e. the point `p` of
/// the dual space.
pub fn point_element(space: &SpaceRef, p: &Location) -> LscElement {
    LscElement::indicator(&singleton(space, p).complement())
}

/// The six identities relating the order on elements below the unit to the
/// topology of the dual space. Each field is `true` when the order-theoretic
/// and point-set computations agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicTopReport {
    /// `C_y ⊆ C_z` exactly when `z ≤ y`.
    pub closed_sets_reverse_order: bool,
    /// `U_y` is the set of points `x` with `y ∨ x = e`, and `U_y`, `C_y`
    /// partition the space.
    pub open_set_is_join_to_unit: bool,
    /// `U_y ⊆ C_z` implies `y ∧ z = 0`.
    pub disjoint_supports_meet_to_zero: bool,
    /// `cl(U_y) = C_{y∖e}`.
    pub closure_is_complement_closed_set: bool,
    /// `int(C_y) = U_{y∖e}`.
    pub interior_is_complement_open_set: bool,
    /// `C_y ⊆ U_z` exactly when `y ∨ z = e`.
    pub closed_inside_open_iff_join_is_unit: bool,
}

impl BasicTopReport {
    pub fn items(&self) -> [(&'static str, bool); 6] {
        [
            ("closed sets reverse the order", self.closed_sets_reverse_order),
            ("U_y is the set of points joining y to e", self.open_set_is_join_to_unit),
            ("U_y inside C_z forces y ∧ z = 0", self.disjoint_supports_meet_to_zero),
            ("cl(U_y) = C_(y∖e)", self.closure_is_complement_closed_set),
            ("int(C_y) = U_(y∖e)", self.interior_is_complement_open_set),
            ("C_y inside U_z iff y ∨ z = e", self.closed_inside_open_iff_join_is_unit),
        ]
    }

    pub fn all(&self) -> bool {
        self.items().iter().all(|(_, ok)| *ok)
    }
}

fn checked_pair(y: &LscElement, z: &LscElement) -> Result<(DualPair, DualPair), DualityError> {
    if !y.same_space(z) {
        return Err(DualityError::SpaceMismatch);
    }
    let py = DualPair::new(y).map_err(|_| DualityError::NotBelowUnit("y"))?;
    let pz = DualPair::new(z).map_err(|_| DualityError::NotBelowUnit("z"))?;
    Ok((py, pz))
}

/// Evaluates the six identities for `y, z ≤ e`.
pub fn verify_basictop(y: &LscElement, z: &LscElement) -> Result<BasicTopReport, DualityError> {
    let (py, pz) = checked_pair(y, z)?;
    let space = y.space();
    let e = LscElement::unit(space);
    let zero = LscElement::zero(space);

    let closed_sets_reverse_order = py.c.is_subset(&pz.c) == z.leq(y);

    let grid = oracle::grid(space, &[&py.u, &pz.u]);
    let pointwise = grid.iter().all(|p| py.u.contains(p) == (y.join(&point_element(space, p)) == e));
    let (ru, rc) = (Region::from_open(&py.u), Region::from_closed(&py.c));
    let partition = ru.union(&rc).interior().is_full() && ru.intersect(&rc).is_empty();
    let open_set_is_join_to_unit = pointwise && partition;

    let u_inside_c = ru.minus(&Region::from_closed(&pz.c)).is_empty();
    let disjoint_supports_meet_to_zero = !u_inside_c || y.meet(z) == zero;

    let y_minus_e = DualPair::new(&almost_complement(y, &e)?)?;
    let closure_is_complement_closed_set = py.u.closure() == y_minus_e.c;
    let interior_is_complement_open_set = py.c.interior() == y_minus_e.u;

    let closed_inside_open_iff_join_is_unit = py.c.is_subset_of_open(&pz.u) == (y.join(z) == e);

    Ok(BasicTopReport {
        closed_sets_reverse_order,
        open_set_is_join_to_unit,
        disjoint_supports_meet_to_zero,
        closure_is_complement_closed_set,
        interior_is_complement_open_set,
        closed_inside_open_iff_join_is_unit,
    })
}

/// `cl(U_y) ⊆ U_z` computed on sets agrees with `y ≪ z` computed on
/// elements. Elements from different spaces never agree.
pub fn verify_hausdorff_wayb(y: &LscElement, z: &LscElement) -> bool {
    match y.try_way_below(z) {
        Ok(wb) => y.support().closure().is_subset_of_open(&z.support()) == wb,
        Err(_) => false,
    }
}

/// The closed-set laws of the dual topology for a finite family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    /// `⋂ C_{y_i} = C_{∨ y_i}`.
    pub intersections: bool,
    /// `⋃ C_{y_i} = C_{∧ y_i}`.
    pub unions: bool,
    /// Distinct grid points are separated by closed sets.
    pub t1: bool,
}

impl TopologyReport {
    pub fn all(&self) -> bool {
        self.intersections && self.unions && self.t1
    }
}

/// Checks the intersection and union laws for `family` (elements below the
/// unit on `space`) and the T1 property on the grid the family generates.
pub fn verify_topology_laws(space: &SpaceRef, family: &[LscElement]) -> Result<TopologyReport, DualityError> {
    let mut pairs = Vec::with_capacity(family.len());
    for y in family {
        if **y.space() != **space {
            return Err(DualityError::SpaceMismatch);
        }
        pairs.push(DualPair::new(y)?);
    }
    let join = family.iter().fold(LscElement::zero(space), |a, y| a.join(y));
    let meet = family.iter().fold(LscElement::unit(space), |a, y| a.meet(y));
    let cap = pairs.iter().fold(ClosedSet::full(space), |a, p| a.intersect(&p.c));
    let cup = pairs.iter().fold(ClosedSet::empty(space), |a, p| a.union(&p.c));
    let intersections = cap == DualPair::new(&join)?.c;
    let unions = cup == DualPair::new(&meet)?.c;

    let sets: Vec<&OpenSet> = pairs.iter().map(|p| &p.u).collect();
    let grid = oracle::grid(space, &sets);
    let t1 = grid.iter().all(|p| {
        let c = DualPair::new(&point_element(space, p)).expect("points lie below the unit").c;
        c.contains(p) && grid.iter().filter(|q| *q != p).all(|q| !c.contains(q))
    });
    Ok(TopologyReport { intersections, unions, t1 })
}

/// `U ↦ χ_U ↦ U_{χ_U}` returns `U`, and `C_{χ_U}` is its complement.
pub fn roundtrip(u: &OpenSet) -> bool {
    let pair = DualPair::from_open(u);
    pair.u == *u && pair.c.complement() == *u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{self, Shape};
    use crate::geometry::{Component, Space};
    use crate::rational::{int, ratio};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arc() -> SpaceRef {
        Space::new(vec![Component::Arc { length: int(1) }]).unwrap()
    }

    fn chi(s: &SpaceRef, t: &str) -> LscElement {
        LscElement::indicator(&OpenSet::parse(s, t).unwrap())
    }

    #[test]
    fn half_open_intervals_on_the_arc() {
        let s = arc();
        let (y, z) = (chi(&s, "[0,1/2)"), chi(&s, "(1/4,1]"));
        let r = verify_basictop(&y, &z).unwrap();
        assert!(r.all(), "{:?}", r);
        let e = LscElement::unit(&s);
        let y_minus_e = almost_complement(&y, &e).unwrap();
        assert_eq!(y_minus_e, chi(&s, "(1/2,1]"));
        let cl = OpenSet::parse(&s, "[0,1/2)").unwrap().closure();
        assert_eq!(cl, ClosedSet::parse(&s, "[0,1/2]").unwrap());
        assert_eq!(cl, OpenSet::parse(&s, "(1/2,1]").unwrap().complement());
    }

    #[test]
    fn zero_and_unit() {
        let s = arc();
        let (zero, e) = (LscElement::zero(&s), LscElement::unit(&s));
        let p0 = DualPair::new(&zero).unwrap();
        assert!(p0.c.is_full() && p0.u.is_empty());
        assert_eq!(almost_complement(&zero, &e).unwrap(), e);
        let pe = DualPair::new(&e).unwrap();
        assert!(pe.c.is_empty());
        assert_eq!(almost_complement(&e, &e).unwrap(), zero);
        for (y, z) in [(&zero, &e), (&e, &zero), (&zero, &zero), (&e, &e)] {
            assert!(verify_basictop(y, z).unwrap().all());
        }
    }

    #[test]
    fn elements_above_the_unit_are_rejected() {
        let s = arc();
        let two = LscElement::unit(&s).scalar_mul(2);
        let e = LscElement::unit(&s);
        assert_eq!(verify_basictop(&two, &e), Err(DualityError::NotBelowUnit("y")));
        assert_eq!(verify_basictop(&e, &two), Err(DualityError::NotBelowUnit("z")));
        let other = LscElement::unit(&Space::unit_circle());
        assert_eq!(verify_basictop(&e, &other), Err(DualityError::SpaceMismatch));
    }

    #[test]
    fn compact_containment_matches_way_below() {
        let s = arc();
        let (y, z) = (chi(&s, "(1/4,1/2)"), chi(&s, "(0,3/4)"));
        assert!(y.way_below(&z));
        assert!(verify_hausdorff_wayb(&y, &z));
        let h = chi(&s, "(0,1/2)");
        assert!(!h.way_below(&h));
        assert!(!h.support().closure().is_subset_of_open(&h.support()));
        assert!(verify_hausdorff_wayb(&h, &h));
        let zero = LscElement::zero(&s);
        assert!(zero.way_below(&h) && verify_hausdorff_wayb(&zero, &h));
    }

    #[test]
    fn topology_laws_examples() {
        let s = arc();
        let fam = vec![chi(&s, "(0,1/2)"), chi(&s, "(1/4,3/4)")];
        let r = verify_topology_laws(&s, &fam).unwrap();
        assert!(r.all(), "{:?}", r);
        let join = fam[0].join(&fam[1]);
        assert_eq!(DualPair::new(&join).unwrap().c, ClosedSet::parse(&s, "[0,0] [3/4,1]").unwrap());

        let empty = verify_topology_laws(&s, &[]).unwrap();
        assert!(empty.all());
        let unit = verify_topology_laws(&s, &[LscElement::unit(&s)]).unwrap();
        assert!(unit.all());
        assert!(DualPair::new(&LscElement::unit(&s)).unwrap().c.is_empty());
    }

    #[test]
    fn points_of_the_dual_space() {
        let s = Space::new(vec![Component::Point, Component::Circle { length: int(1) }]).unwrap();
        for p in [Location::new(0, int(0)), Location::new(1, ratio(1, 3)), Location::new(1, int(0))] {
            let c = DualPair::new(&point_element(&s, &p)).unwrap().c;
            assert_eq!(c, singleton(&s, &p));
            assert!(c.contains(&p));
        }
    }

    #[test]
    fn roundtrip_examples() {
        let s = Space::new(vec![Component::Arc { length: int(1) }, Component::Circle { length: int(2) }]).unwrap();
        for t in ["0:(0,1/2) (1/2,1]; 1:(1,3)", "empty", "0:full; 1:full", "1:(0,1)"] {
            assert!(roundtrip(&OpenSet::parse(&s, t).unwrap()), "{}", t);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dual_identities_hold_for_random_indicators(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let shape = Shape { max_components: 3, max_intervals: 3, ..Shape::default() };
            let s = gen::space(&mut rng, &shape);
            let y = gen::indicator(&mut rng, &s, &shape);
            let z = gen::indicator(&mut rng, &s, &shape);
            let r = verify_basictop(&y, &z).unwrap();
            prop_assert!(r.all(), "{:?} for y = {}, z = {}", r, y, z);
            prop_assert!(verify_hausdorff_wayb(&y, &z));
            prop_assert!(verify_hausdorff_wayb(&y.meet(&z), &y));
            prop_assert!(roundtrip(&y.support()));
            prop_assert!(verify_topology_laws(&s, &[y, z]).unwrap().all());
        }
    }
}
