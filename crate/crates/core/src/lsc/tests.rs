use super::*;
use crate::gen::{self, Shape};
use crate::geometry::{Location, Space};
use crate::oracle;
use crate::rational::ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arc() -> SpaceRef {
    Space::unit_arc()
}

fn open(s: &SpaceRef, text: &str) -> OpenSet {
    OpenSet::parse(s, text).unwrap()
}

fn chi(s: &SpaceRef, text: &str) -> LscElement {
    LscElement::indicator(&open(s, text))
}

fn elem(s: &SpaceRef, levels: &[&str], inf: &str) -> LscElement {
    LscElement::new(levels.iter().map(|t| open(s, t)).collect(), open(s, inf)).unwrap()
}

fn at(t: Q) -> Location {
    Location::new(0, t)
}

use crate::rational::Q;

/// Checks `h` against a pointwise formula on the joint grid of the inputs.
fn agrees(inputs: &[&LscElement], h: &LscElement, f: impl Fn(&[ExtNat]) -> ExtNat) -> bool {
    let mut all: Vec<&LscElement> = inputs.to_vec();
    all.push(h);
    oracle::element_grid(&all).iter().all(|p| {
        let vals: Vec<ExtNat> = inputs.iter().map(|x| oracle::eval(x, p)).collect();
        oracle::eval(h, p) == f(&vals)
    })
}

#[test]
fn eval_examples() {
    let s = arc();
    let f = elem(&s, &["(0,1/2)", "(0,1/4)"], "empty");
    assert_eq!(f.eval_at(&at(ratio(1, 8))).unwrap(), ExtNat::Finite(2));
    assert_eq!(f.eval_at(&at(ratio(3, 4))).unwrap(), ExtNat::Finite(0));
    let g = elem(&s, &["(0,1/2)", "(0,1/4)"], "(0,1/4)");
    assert_eq!(g.eval_at(&at(ratio(1, 8))).unwrap(), ExtNat::Infinite);
    assert!(f.eval_at(&at(ratio(3, 2))).is_err());
}

#[test]
fn order_and_lattice_examples() {
    let s = arc();
    assert!(chi(&s, "(0,1/2)").leq(&chi(&s, "(0,3/4)")));
    assert!(!chi(&s, "(0,3/4)").leq(&chi(&s, "(0,1/2)")));
    let j = chi(&s, "(0,1/2)").join(&chi(&s, "(1/4,3/4)"));
    assert_eq!(j, chi(&s, "(0,3/4)"));
    let two = chi(&s, "(0,1/2)").scalar_mul(2);
    let m = two.meet(&chi(&s, "(1/4,1]"));
    assert_eq!(m, chi(&s, "(1/4,1/2)"));
    assert!(agrees(&[&two, &chi(&s, "(1/4,1]")], &m, |v| v[0].min(v[1])));
}

#[test]
fn add_examples() {
    let s = arc();
    let f = elem(&s, &["(0,1/2)", "(0,1/4)"], "empty");
    let g = chi(&s, "(1/8,3/4)");
    let sum = f.add(&g);
    assert_eq!(sum, elem(&s, &["(0,3/4)", "(0,1/2)", "(1/8,1/4)"], "empty"));
    assert!(agrees(&[&f, &g], &sum, |v| v[0].saturating_add(v[1])));
    assert_eq!(f.add(&LscElement::zero(&s)), f);
    let h = chi(&s, "(0,1/2)").add(&chi(&s, "(1/4,3/4)"));
    assert_eq!(h, elem(&s, &["(0,3/4)", "(1/4,1/2)"], "empty"));
}

#[test]
fn space_mismatch_is_reported() {
    let a = LscElement::unit(&arc());
    let c = LscElement::unit(&Space::unit_circle());
    assert_eq!(a.try_add(&c), Err(LscError::SpaceMismatch));
    assert_eq!(a.try_leq(&c), Err(LscError::SpaceMismatch));
}

#[test]
fn way_below_examples() {
    let s = arc();
    assert!(chi(&s, "(1/4,1/2)").way_below(&chi(&s, "(0,3/4)")));
    assert!(oracle::way_below_by_sequence(&chi(&s, "(1/4,1/2)"), &chi(&s, "(0,3/4)")));
    let h = chi(&s, "(0,1/2)");
    assert!(!h.way_below(&h));
    assert!(!oracle::way_below_by_sequence(&h, &h));
    let e = LscElement::unit(&s);
    assert!(e.way_below(&e) && e.is_compact());
    // [0,1/2) is open in the arc and its closure [0,1/2] sits inside [0,3/4).
    assert!(chi(&s, "[0,1/2)").way_below(&chi(&s, "[0,3/4)")));
    let unbounded = LscElement::infinite_on(&open(&s, "(1/4,1/2)"));
    assert!(!unbounded.way_below(&LscElement::infinite_on(&OpenSet::full(&s))));
}

#[test]
fn ordered_sum_examples() {
    let s = arc();
    let out = ordered_sum_pairwise(&[chi(&s, "(0,1/2)")], &[chi(&s, "(1/4,3/4)")]).unwrap();
    assert_eq!(out, vec![chi(&s, "(0,3/4)"), chi(&s, "(1/4,1/2)")]);

    let out = ordered_sum_pairwise(&[LscElement::unit(&s)], &[LscElement::zero(&s)]).unwrap();
    assert_eq!(out, vec![LscElement::unit(&s), LscElement::zero(&s)]);

    let xs = [chi(&s, "(0,1/2)"), chi(&s, "(0,1/4)")];
    let ys = [chi(&s, "(1/8,1]"), chi(&s, "(1/2,3/4)")];
    let out = ordered_sum_pairwise(&xs, &ys).unwrap();
    assert_eq!(out.len(), 4);
    assert!(out.windows(2).all(|w| w[1].leq(&w[0])));
    let total = |v: &[LscElement]| v.iter().fold(LscElement::zero(&s), |a, b| a.add(b));
    assert_eq!(total(&out), total(&xs).add(&total(&ys)));

    let bad = [chi(&s, "(0,1/4)"), chi(&s, "(0,1/2)")];
    assert_eq!(ordered_sum_pairwise(&bad, &[]), Err(LscError::ListNotDecreasing(2)));
    assert_eq!(ordered_sum_pairwise(&[LscElement::unit(&s).scalar_mul(2)], &[]), Err(LscError::NotBelowUnit(1)));
}

#[test]
fn ofs_examples() {
    let s = arc();
    let terms = [chi(&s, "(1/2,1]"), chi(&s, "(0,3/4)"), chi(&s, "(1/4,5/8)")];
    let out = ofs_normalize(&terms).unwrap();
    assert_eq!(out.len(), 3);
    assert!(out.windows(2).all(|w| w[1].leq(&w[0])));
    let sum = terms.iter().fold(LscElement::zero(&s), |a, b| a.add(b));
    let osum = out.iter().fold(LscElement::zero(&s), |a, b| a.add(b));
    assert!(agrees(&[&sum], &osum, |v| v[0]));

    let z = LscElement::zero(&s);
    let e = LscElement::unit(&s);
    assert_eq!(ofs_normalize(&[z.clone(), z.clone(), e.clone()]).unwrap(), vec![e.clone(), z.clone(), z]);

    let ordered = [chi(&s, "(0,1]"), chi(&s, "(0,1/2)"), chi(&s, "(1/8,1/4)")];
    assert_eq!(ofs_normalize(&ordered).unwrap(), ordered.to_vec());
    assert_eq!(ofs_normalize(&[e.scalar_mul(2)]), Err(LscError::NotBelowUnit(1)));
}

#[test]
fn decompose_examples() {
    let s = arc();
    let y = chi(&s, "(0,1/2)").scalar_mul(2);
    assert_eq!(decompose_below_ne(&y, 2).unwrap(), vec![chi(&s, "(0,1/2)"), chi(&s, "(0,1/2)")]);
    let y = LscElement::unit(&s).add(&chi(&s, "(0,1/4)"));
    assert_eq!(decompose_below_ne(&y, 3).unwrap(), vec![LscElement::unit(&s), chi(&s, "(0,1/4)")]);
    let y = elem(&s, &["(0,3/4)", "(1/4,1/2)"], "empty");
    let parts = decompose_below_ne(&y, 2).unwrap();
    assert_eq!(parts, vec![chi(&s, "(0,3/4)"), chi(&s, "(1/4,1/2)")]);
    assert_eq!(decompose_below_ne(&y, 1), Err(LscError::NotBelowMultiple(1)));
}

#[test]
fn almost_complement_examples() {
    let s = arc();
    let e = LscElement::unit(&s);
    assert_eq!(almost_complement(&chi(&s, "[0,1/2)"), &e).unwrap(), chi(&s, "(1/2,1]"));
    assert_eq!(almost_complement(&LscElement::zero(&s), &e).unwrap(), e);
    assert!(almost_complement(&e, &e).unwrap().is_zero());
    assert_eq!(almost_complement(&e, &chi(&s, "(0,1/2)")), Err(LscError::NotBelow));
    let inf = LscElement::infinite_on(&open(&s, "(0,1/2)"));
    assert_eq!(almost_complement(&inf, &inf), Err(LscError::Unbounded));

    // Values of z − y at points where y jumps are not lost: x(0) = 1 is
    // allowed because y vanishes near 0.
    let y = chi(&s, "(0,1/2)");
    let z = e.add(&chi(&s, "(0,1)"));
    let x = almost_complement(&y, &z).unwrap();
    assert_eq!(x.eval_at(&at(ratio(0, 1))).unwrap(), ExtNat::Finite(1));
    assert!(x.add(&y).leq(&z));

    // Unbounded z: the infinity level passes through.
    let z = e.add(&LscElement::infinite_on(&open(&s, "(1/4,3/4)")));
    let x = almost_complement(&chi(&s, "(0,1/2)"), &z).unwrap();
    assert_eq!(x.infinity(), &open(&s, "(1/4,3/4)"));
    assert_eq!(x.eval_at(&at(ratio(1, 8))).unwrap(), ExtNat::Finite(0));
    assert_eq!(x.eval_at(&at(ratio(7, 8))).unwrap(), ExtNat::Finite(1));
}

#[test]
fn infinity_and_multiples() {
    let s = arc();
    let x = chi(&s, "(0,1/2)");
    assert_eq!(x.infinity_of().infinity(), &open(&s, "(0,1/2)"));
    let y = chi(&s, "(0,1/2)").scalar_mul(2).add(&chi(&s, "(1/4,3/4)"));
    let e = LscElement::unit(&s);
    assert_eq!(y.infinity_of(), y.meet(&e).infinity_of());
    assert_eq!(y.infinity_of().infinity(), &open(&s, "(0,3/4)"));
    assert!(LscElement::unit(&Space::unit_circle()).is_compact());
    assert_eq!(x.proportional_certificate(&chi(&s, "(0,1)")), Some(1));
    assert_eq!(chi(&s, "(0,1)").proportional_certificate(&x), None);
}

#[test]
fn canonical_form_drops_levels_equal_to_infinity() {
    let s = arc();
    let f = elem(&s, &["(0,1/2)", "(0,1/4)"], "(0,1/4)");
    assert_eq!(f.height(), 1);
    assert_eq!(LscElement::new(vec![open(&s, "empty")], open(&s, "empty")).unwrap(), LscElement::zero(&s));
    assert_eq!(
        LscElement::new(vec![open(&s, "(0,1/4)"), open(&s, "(0,1/2)")], open(&s, "empty")),
        Err(LscError::NotDecreasing(2))
    );
    assert_eq!(LscElement::new(vec![open(&s, "(0,1/4)")], open(&s, "(0,1/2)")), Err(LscError::InfinityOutsideLevels));
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small() -> Shape {
    Shape { max_components: 3, max_intervals: 4, ..Shape::default() }
}

fn sum(s: &SpaceRef, v: &[LscElement]) -> LscElement {
    v.iter().fold(LscElement::zero(s), |a, b| a.add(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn operations_agree_with_pointwise_values(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let f = gen::element(&mut r, &s, &sh, 3, true);
        let g = gen::element(&mut r, &s, &sh, 3, true);
        prop_assert!(agrees(&[&f, &g], &f.add(&g), |v| v[0].saturating_add(v[1])));
        prop_assert!(agrees(&[&f, &g], &f.join(&g), |v| v[0].max(v[1])));
        prop_assert!(agrees(&[&f, &g], &f.meet(&g), |v| v[0].min(v[1])));
        prop_assert_eq!(f.leq(&g), oracle::leq_pointwise(&f, &g));
        for p in oracle::element_grid(&[&f]) {
            prop_assert_eq!(f.eval_at(&p).unwrap(), oracle::eval(&f, &p));
        }
    }

    #[test]
    fn riesz_and_distributive_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let f = gen::element(&mut r, &s, &sh, 3, true);
        let g = gen::element(&mut r, &s, &sh, 3, true);
        let h = gen::element(&mut r, &s, &sh, 3, true);
        prop_assert_eq!(f.add(&g), f.join(&g).add(&f.meet(&g)));
        prop_assert_eq!(f.meet(&g.join(&h)), f.meet(&g).join(&f.meet(&h)));
        prop_assert_eq!(f.add(&g.join(&h)), f.add(&g).join(&f.add(&h)));
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
    }

    #[test]
    fn scalar_mul_is_repeated_addition(seed in any::<u64>(), k in 0u64..4) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let f = gen::element(&mut r, &s, &sh, 3, true);
        let rep = (0..k).fold(LscElement::zero(&s), |a, _| a.add(&f));
        prop_assert_eq!(f.scalar_mul(k), rep);
        prop_assert_eq!(f.infinity_of(), f.meet(&LscElement::unit(&s)).infinity_of());
    }

    #[test]
    fn way_below_matches_shrink_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let g = gen::element(&mut r, &s, &sh, 3, true);
        // Half the time take f from below g so that positive cases occur.
        let f = if r.gen_bool(0.5) {
            let k = r.gen_range(1..6);
            oracle::shrink_family(&g, k)
        } else {
            gen::element(&mut r, &s, &sh, 3, false)
        };
        prop_assert_eq!(f.way_below(&g), oracle::way_below_by_sequence(&f, &g));
    }

    #[test]
    fn ordered_sum_preserves_sum(seed in any::<u64>(), n in 0usize..4, m in 0usize..4) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let xs = gen::decreasing_indicators(&mut r, &s, &sh, n);
        let ys = gen::decreasing_indicators(&mut r, &s, &sh, m);
        let out = ordered_sum_pairwise(&xs, &ys).unwrap();
        prop_assert_eq!(out.len(), 2 * n.max(m));
        prop_assert!(out.windows(2).all(|w| w[1].leq(&w[0])));
        prop_assert_eq!(sum(&s, &out), sum(&s, &xs).add(&sum(&s, &ys)));

        let mixed: Vec<LscElement> = xs.iter().chain(ys.iter()).cloned().collect();
        let normal = ofs_normalize(&mixed).unwrap();
        prop_assert_eq!(normal.len(), mixed.len());
        prop_assert!(normal.windows(2).all(|w| w[1].leq(&w[0])));
        prop_assert_eq!(sum(&s, &normal), sum(&s, &mixed));
    }

    #[test]
    fn topological_order_of_decreasing_lists(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let xs = gen::decreasing_indicators(&mut r, &s, &sh, n);
        let ys = if r.gen_bool(0.5) {
            xs.iter().map(|x| x.join(&gen::indicator(&mut r, &s, &sh))).collect::<Vec<_>>()
        } else {
            gen::decreasing_indicators(&mut r, &s, &sh, n)
        };
        // Joins of a decreasing list with random sets need not decrease;
        // reorder them first.
        let ys = ofs_normalize(&ys).unwrap();
        let termwise = xs.iter().zip(ys.iter()).all(|(x, y)| x.leq(y));
        prop_assert_eq!(sum(&s, &xs).leq(&sum(&s, &ys)), termwise);
    }

    #[test]
    fn cancellation_below_unit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let x = gen::indicator(&mut r, &s, &sh);
        let y = gen::indicator(&mut r, &s, &sh);
        let z = if r.gen_bool(0.5) { y.join(&gen::indicator(&mut r, &s, &sh)) } else { gen::indicator(&mut r, &s, &sh) };
        if x.add(&y).leq(&x.add(&z)) {
            prop_assert!(y.leq(&z));
        }
    }

    #[test]
    fn sum_dominating_an_indicator_has_join_dominating_it(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let ys: Vec<LscElement> = (0..n).map(|_| gen::element(&mut r, &s, &sh, 2, true)).collect();
        let total = sum(&s, &ys);
        let sdom = LscElement::indicator(&total.support().intersect(&gen::open_set(&mut r, &s, &sh)));
        let join = ys.iter().fold(LscElement::zero(&s), |a, b| a.join(b));
        prop_assert!(sdom.leq(&total));
        prop_assert!(sdom.leq(&join));
    }

    #[test]
    fn heyting_law(seed in any::<u64>(), n in 0usize..5) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let a = gen::indicator(&mut r, &s, &sh);
        let ts: Vec<LscElement> = (0..n).map(|_| gen::indicator(&mut r, &s, &sh)).collect();
        let join = ts.iter().fold(LscElement::zero(&s), |acc, t| acc.join(t));
        let rhs = ts.iter().fold(LscElement::zero(&s), |acc, t| acc.join(&a.meet(t)));
        prop_assert_eq!(a.meet(&join), rhs);
    }

    #[test]
    fn way_below_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let f = gen::element(&mut r, &s, &sh, 2, true);
        let g = gen::element(&mut r, &s, &sh, 2, true);
        let f1 = oracle::shrink_family(&f, r.gen_range(1..8));
        let g1 = oracle::shrink_family(&g, r.gen_range(1..8));
        prop_assert!(f1.way_below(&f) && g1.way_below(&g));
        prop_assert!(f1.add(&g1).way_below(&f.add(&g)));
    }

    #[test]
    fn termwise_way_below_of_ordered_sums(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let ys = gen::decreasing_indicators(&mut r, &s, &sh, n);
        let xs: Vec<LscElement> = if r.gen_bool(0.6) {
            let k = r.gen_range(1..8);
            ys.iter().map(|y| oracle::shrink_family(y, k)).collect()
        } else {
            gen::decreasing_indicators(&mut r, &s, &sh, n)
        };
        let termwise = xs.iter().zip(ys.iter()).all(|(x, y)| x.way_below(y));
        prop_assert_eq!(sum(&s, &xs).way_below(&sum(&s, &ys)), termwise);
    }

    #[test]
    fn comparability_through_supports(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let y = gen::indicator(&mut r, &s, &sh);
        let z = gen::indicator(&mut r, &s, &sh);
        let outside_y_is_outside_z = y.support().complement().is_subset(&z.support().complement());
        prop_assert_eq!(outside_y_is_outside_z, z.leq(&y));
    }

    #[test]
    fn almost_complement_is_the_largest_addable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sh = small();
        let s = gen::space(&mut r, &sh);
        let z = gen::element(&mut r, &s, &sh, 3, true);
        let y = z.meet(&gen::element(&mut r, &s, &sh, 2, false));
        let c = almost_complement(&y, &z).unwrap();
        prop_assert!(c.add(&y).leq(&z));
        for _ in 0..4 {
            let x = gen::element(&mut r, &s, &sh, 3, true);
            prop_assert_eq!(x.add(&y).leq(&z), x.leq(&c));
        }
        // Raising the complement on any grid cell breaks x + y ≤ z.
        for bump in oracle::bumps(&c) {
            prop_assert!(!bump.add(&y).leq(&z));
        }
    }
}
