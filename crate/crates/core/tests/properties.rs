//! Properties of the public API on randomly generated spaces and elements,
//! each checked against the pointwise oracle.

use cuntzkit::gen::{self, Shape};
use cuntzkit::geometry::json::{space_from_json, space_to_json};
use cuntzkit::lsc::json::{lsc_from_json, lsc_to_json};
use cuntzkit::lsc::{almost_complement, ordered_sum_pairwise, ExtNat, LscElement};
use cuntzkit::oracle;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair(seed: u64) -> (LscElement, LscElement) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = Shape::default();
    let s = gen::space(&mut rng, &shape);
    (gen::element(&mut rng, &s, &shape, 3, true), gen::element(&mut rng, &s, &shape, 3, true))
}

fn le(a: ExtNat, b: ExtNat) -> bool {
    match (a, b) {
        (_, ExtNat::Infinite) => true,
        (ExtNat::Infinite, _) => false,
        (ExtNat::Finite(a), ExtNat::Finite(b)) => a <= b,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let (f, _) = pair(seed);
        let s = space_from_json(&space_to_json(f.space()), "").unwrap();
        prop_assert_eq!(&*s, &**f.space());
        prop_assert_eq!(lsc_from_json(f.space(), &lsc_to_json(&f), "").unwrap(), f);
    }

    #[test]
    fn lattice_and_sum_are_pointwise(seed in any::<u64>()) {
        let (f, g) = pair(seed);
        let (sum, join, meet) = (f.add(&g), f.join(&g), f.meet(&g));
        for p in oracle::element_grid(&[&f, &g, &sum, &join, &meet]) {
            let (a, b) = (oracle::eval(&f, &p), oracle::eval(&g, &p));
            prop_assert_eq!(oracle::eval(&sum, &p), a.saturating_add(b));
            prop_assert_eq!(oracle::eval(&join, &p), if le(a, b) { b } else { a });
            prop_assert_eq!(oracle::eval(&meet, &p), if le(a, b) { a } else { b });
        }
        prop_assert_eq!(f.leq(&g), oracle::leq_pointwise(&f, &g));
    }

    #[test]
    fn way_below_implies_below(seed in any::<u64>()) {
        let (f, g) = pair(seed);
        if f.way_below(&g) {
            prop_assert!(f.leq(&g));
        }
        prop_assert!(LscElement::zero(f.space()).way_below(&g));
    }

    #[test]
    fn almost_complement_is_the_residual(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Shape::default();
        let s = gen::space(&mut rng, &shape);
        let y = gen::element(&mut rng, &s, &shape, 2, false);
        let z = y.add(&gen::element(&mut rng, &s, &shape, 2, true));
        let x = gen::element(&mut rng, &s, &shape, 2, false);
        let c = almost_complement(&y, &z).unwrap();
        prop_assert!(c.add(&y).leq(&z));
        prop_assert_eq!(x.add(&y).leq(&z), x.leq(&c));
    }

    #[test]
    fn ordered_sums_keep_the_total(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Shape::default();
        let s = gen::space(&mut rng, &shape);
        let xs = gen::decreasing_indicators(&mut rng, &s, &shape, n);
        let ys = gen::decreasing_indicators(&mut rng, &s, &shape, m);
        let terms = ordered_sum_pairwise(&xs, &ys).unwrap();
        let total = |v: &[LscElement]| v.iter().fold(LscElement::zero(&s), |a, b| a.add(b));
        prop_assert_eq!(total(&terms), total(&xs).add(&total(&ys)));
        for w in terms.windows(2) {
            prop_assert!(w[1].leq(&w[0]), "terms must decrease");
        }
    }
}
