//! The randomized lemma suite behind `verify lemmas`.
//!
//! Every check draws its inputs from a ChaCha generator seeded by the suite
//! seed, the check id and the case index, so a case can be replayed alone and
//! the report does not depend on how cases are spread over threads. Cases run
//! in parallel; the report lists checks by id and failures by case index.
//!
//! A check returns [`Case::Checked`] when the statement was exercised and
//! [`Case::Vacuous`] when the random input missed the hypotheses; vacuous
//! cases are counted separately so a generator that never hits its target is
//! visible in the report.

use crate::chains::{decide_chainable, refine_to_almost_chain, Refinement};
use crate::duality::{roundtrip, verify_basictop, verify_hausdorff_wayb, verify_topology_laws};
use crate::gen::{self, Shape};
use crate::geometry::{OpenSet, SpaceRef};
use crate::lsc::{almost_complement, decompose_below_ne, ofs_normalize, ordered_sum_pairwise, LscElement};
use crate::models::{
    check_almost_ordered_sums, check_refinable_sums, check_weak_chainability, lattice_witness, refinable_violations,
    weak_chain_violations, almost_ordered_violations, Bounds, CuModel, DirectSum, LscModel, RefinableInstance,
    WeakChainInstance, ZElem, ZPrime, ZPrimeElem, Z,
};
use crate::oracle;
use crate::rational::{self, int, ratio, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

/// A deliberate fault injected into the suite's own arithmetic, used to
/// confirm that the suite notices broken addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Addition returns one less than the true sum wherever it is positive.
    AddOffByOne,
}

impl Mutation {
    pub fn name(self) -> &'static str {
        match self {
            Mutation::AddOffByOne => "add-off-by-one",
        }
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "add-off-by-one" => Ok(Mutation::AddOffByOne),
            _ => Err(format!("unknown mutation {:?} (known: add-off-by-one)", s)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42, cases: 1000, mutation: None }
    }
}

/// The outcome of one passing case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    Checked,
    Vacuous,
}

type CaseResult = Result<Case, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Arithmetic shared by the checks, with the optional fault.
struct Ctx {
    mutation: Option<Mutation>,
}

impl Ctx {
    fn add(&self, f: &LscElement, g: &LscElement) -> LscElement {
        let s = f.add(g);
        match self.mutation {
            None => s,
            Some(Mutation::AddOffByOne) => {
                let levels = s.levels().iter().skip(1).cloned().collect();
                LscElement::new(levels, s.infinity().clone()).unwrap_or(s)
            }
        }
    }

    fn sum(&self, space: &SpaceRef, xs: &[LscElement]) -> LscElement {
        xs.iter().fold(LscElement::zero(space), |a, x| self.add(&a, x))
    }
}

struct Check {
    id: &'static str,
    statement: &'static str,
    /// Runs `cases / divisor` cases (at least one).
    divisor: usize,
    run: fn(&mut ChaCha8Rng, &Ctx) -> CaseResult,
}

const FULL: Shape = Shape { max_components: 4, max_intervals: 6, allow_circles: true, allow_points: true };
const SMALL: Shape = Shape { max_components: 3, max_intervals: 4, allow_circles: true, allow_points: true };
const NO_CIRCLES: Shape = Shape { max_components: 3, max_intervals: 3, allow_circles: false, allow_points: true };

fn pad(xs: &mut Vec<LscElement>, n: usize, space: &SpaceRef) {
    while xs.len() < n {
        xs.push(LscElement::zero(space));
    }
}

fn ordered_sum_identity(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &FULL);
    let (n, m) = (r.gen_range(1..=3), r.gen_range(1..=3));
    let mut xs = gen::decreasing_indicators(r, &s, &FULL, n);
    let mut ys = gen::decreasing_indicators(r, &s, &FULL, m);
    let len = n.max(m);
    pad(&mut xs, len, &s);
    pad(&mut ys, len, &s);
    let pairs: Vec<LscElement> = xs.iter().zip(&ys).map(|(x, y)| ctx.add(x, y)).collect();
    let lhs = ctx.sum(&s, &pairs);
    let out = ordered_sum_pairwise(&xs, &ys).map_err(|e| e.to_string())?;
    ensure(out.windows(2).all(|w| w[1].leq(&w[0])), || "the reformulated list is not decreasing".into())?;
    let rhs = out.iter().fold(LscElement::zero(&s), |a, t| a.add(t));
    ensure(lhs == rhs, || format!("Σ(x_i + y_i) = {} but the decreasing list sums to {}", lhs, rhs))?;
    let refs: Vec<&LscElement> = xs.iter().chain(&ys).chain(&out).collect();
    for p in oracle::element_grid(&refs) {
        let want = xs.iter().chain(&ys).fold(crate::lsc::ExtNat::Finite(0), |a, f| a.saturating_add(oracle::eval(f, &p)));
        ensure(oracle::eval(&lhs, &p) == want && oracle::eval(&rhs, &p) == want, || {
            format!("pointwise sum at {} is {:?}, computed {:?} and {:?}", p, want, oracle::eval(&lhs, &p), oracle::eval(&rhs, &p))
        })?;
    }
    Ok(Case::Checked)
}

fn level_decomposition(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let y = gen::element(r, &s, &SMALL, 3, false);
    let n = y.bound().ok_or("a bounded element has a bound")?.max(1);
    let parts = decompose_below_ne(&y, n).map_err(|e| e.to_string())?;
    ensure(parts.len() as u64 <= n, || format!("{} terms for an element below {} e", parts.len(), n))?;
    ensure(parts.iter().all(|p| p.is_indicator() && !p.is_zero()), || "a term is zero or not an indicator".into())?;
    ensure(parts.windows(2).all(|w| w[1].leq(&w[0])), || "the terms do not decrease".into())?;
    for (k, p) in parts.iter().enumerate() {
        ensure(p.support() == y.level(k + 1), || format!("term {} is not the indicator of level {}", k + 1, k + 1))?;
    }
    let total = ctx.sum(&s, &parts);
    ensure(total == y, || format!("the terms sum to {} instead of {}", total, y))?;
    Ok(Case::Checked)
}

fn sum_join(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let n = r.gen_range(1..=4);
    let ys: Vec<LscElement> = (0..n).map(|_| gen::element(r, &s, &SMALL, 2, true)).collect();
    let total = ctx.sum(&s, &ys);
    let sdom = LscElement::indicator(&total.support().intersect(&gen::open_set(r, &s, &SMALL)));
    ensure(sdom.leq(&total), || "the generated s is not below the sum".into())?;
    let join = ys.iter().fold(LscElement::zero(&s), |a, y| a.join(y));
    ensure(sdom.leq(&join), || format!("s = {} is below the sum but not below the join {}", sdom, join))?;
    Ok(Case::Checked)
}

fn infinity_meet_unit(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let x = gen::element(r, &s, &SMALL, 3, true);
    let e = LscElement::unit(&s);
    let a = x.infinity_of();
    let b = x.meet(&e).infinity_of();
    ensure(a == b, || format!("∞x = {} but ∞(x ∧ e) = {}", a, b))?;
    ensure(*a.infinity() == x.support() && a.levels().is_empty(), || "∞x is not ∞ on the support of x".into())?;
    // `2 ∞x = ∞x`: adding it to itself changes nothing.
    ensure(ctx.add(&a, &a) == a, || "∞x + ∞x differs from ∞x".into())?;
    Ok(Case::Checked)
}

fn comparability(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let s = gen::space(r, &FULL);
    let y = gen::indicator(r, &s, &FULL);
    let z = if r.gen_bool(0.5) { y.meet(&gen::indicator(r, &s, &FULL)) } else { gen::indicator(r, &s, &FULL) };
    let outside = y.support().complement().is_subset(&z.support().complement());
    ensure(outside == z.leq(&y), || format!("y = {}, z = {}: support test {} but z ≤ y is {}", y, z, outside, z.leq(&y)))?;
    Ok(Case::Checked)
}

fn heyting_distributivity(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let s = gen::space(r, &FULL);
    let a = gen::indicator(r, &s, &FULL);
    let n = r.gen_range(0..=4);
    let ts: Vec<LscElement> = (0..n).map(|_| gen::indicator(r, &s, &FULL)).collect();
    let join = ts.iter().fold(LscElement::zero(&s), |acc, t| acc.join(t));
    let rhs = ts.iter().fold(LscElement::zero(&s), |acc, t| acc.join(&a.meet(t)));
    let lhs = a.meet(&join);
    ensure(lhs == rhs, || format!("s ∧ ∨t = {} but ∨(s ∧ t) = {}", lhs, rhs))?;
    Ok(Case::Checked)
}

fn almost_complement_adjunction(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let z = gen::element(r, &s, &SMALL, 3, true);
    let y = z.meet(&gen::element(r, &s, &SMALL, 2, false));
    let c = almost_complement(&y, &z).map_err(|e| e.to_string())?;
    ensure(ctx.add(&c, &y).leq(&z), || format!("(y∖z) + y = {} is not below z = {}", ctx.add(&c, &y), z))?;
    for _ in 0..3 {
        let x = gen::element(r, &s, &SMALL, 3, true);
        ensure(ctx.add(&x, &y).leq(&z) == x.leq(&c), || format!("x = {}: x + y ≤ z and x ≤ y∖z disagree", x))?;
    }
    for bump in oracle::bumps(&c) {
        ensure(!bump.add(&y).leq(&z), || format!("y∖z = {} is not maximal: {} also fits", c, bump))?;
    }
    let (a, b) = (gen::element(r, &s, &SMALL, 2, true), gen::element(r, &s, &SMALL, 2, true));
    let lhs = ctx.add(&y, &a.join(&b));
    let rhs = ctx.add(&y, &a).join(&ctx.add(&y, &b));
    ensure(lhs == rhs, || format!("x + (y ∨ z) = {} but (x + y) ∨ (x + z) = {}", lhs, rhs))?;
    Ok(Case::Checked)
}

fn cancellation(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &FULL);
    let x = gen::indicator(r, &s, &FULL);
    let y = gen::indicator(r, &s, &FULL);
    let z = if r.gen_bool(0.5) { y.join(&gen::indicator(r, &s, &FULL)) } else { gen::indicator(r, &s, &FULL) };
    if !ctx.add(&x, &y).leq(&ctx.add(&x, &z)) {
        return Ok(Case::Vacuous);
    }
    ensure(y.leq(&z), || format!("x + y ≤ x + z but y = {} ≰ z = {}", y, z))?;
    Ok(Case::Checked)
}

fn termwise_way_below(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let n = r.gen_range(1..=3);
    let ys = gen::decreasing_indicators(r, &s, &SMALL, n);
    let xs: Vec<LscElement> = if r.gen_bool(0.6) {
        let k = r.gen_range(1..8);
        ys.iter().map(|y| oracle::shrink_family(y, k)).collect()
    } else {
        gen::decreasing_indicators(r, &s, &SMALL, n)
    };
    let termwise = xs.iter().zip(&ys).all(|(x, y)| x.way_below(y));
    let summed = ctx.sum(&s, &xs).way_below(&ctx.sum(&s, &ys));
    ensure(summed == termwise, || format!("Σx ≪ Σy is {} but termwise way-below is {}", summed, termwise))?;
    Ok(Case::Checked)
}

fn way_below_levels(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let g = gen::element(r, &s, &SMALL, 3, true);
    let f = if r.gen_bool(0.5) { oracle::shrink_family(&g, r.gen_range(1..6)) } else { gen::element(r, &s, &SMALL, 3, false) };
    let (fast, slow) = (f.way_below(&g), oracle::way_below_by_sequence(&f, &g));
    ensure(fast == slow, || format!("f = {}, g = {}: level test {} but sequence test {}", f, g, fast, slow))?;
    Ok(Case::Checked)
}

fn closed_set_lattice(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let n = r.gen_range(0..=4);
    let fam: Vec<LscElement> = (0..n).map(|_| gen::indicator(r, &s, &SMALL)).collect();
    let rep = verify_topology_laws(&s, &fam).map_err(|e| e.to_string())?;
    ensure(rep.all(), || format!("{:?}", rep))?;
    Ok(Case::Checked)
}

fn basic_topology(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let s = gen::space(r, &FULL);
    let y = gen::indicator(r, &s, &FULL);
    let z = if r.gen_bool(0.3) { y.join(&gen::indicator(r, &s, &FULL)) } else { gen::indicator(r, &s, &FULL) };
    let rep = verify_basictop(&y, &z).map_err(|e| e.to_string())?;
    let bad: Vec<&str> = rep.items().iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    ensure(bad.is_empty(), || format!("y = {}, z = {}: {}", y, z, bad.join(", ")))?;
    ensure(roundtrip(&y.support()), || format!("{} does not round-trip", y.support()))?;
    Ok(Case::Checked)
}

fn compact_containment(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let s = gen::space(r, &FULL);
    let z = gen::indicator(r, &s, &FULL);
    let y = if r.gen_bool(0.5) {
        LscElement::indicator(&z.support().shrink(&ratio(1, r.gen_range(8..64))))
    } else {
        gen::indicator(r, &s, &FULL)
    };
    ensure(verify_hausdorff_wayb(&y, &z), || format!("y = {}, z = {}: closure containment and ≪ disagree", y, z))?;
    Ok(Case::Checked)
}

/// For `y = χ_U`: when `U` is connected and not a circle, refining a cover
/// of `U` yields `z_1, …, z_m` below the cover with `z_i ∧ z_j ≠ 0` exactly
/// for `|i − j| ≤ 1` and `Σ z_i ≥ y`; when `U` is disconnected, refining
/// its components never yields such a chain.
fn chainable_elements(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let u = gen::open_set(r, &s, &SMALL);
    if u.is_empty() {
        return Ok(Case::Vacuous);
    }
    let y = LscElement::indicator(&u);
    let comps = u.connected_components();
    let connected = comps.len() == 1 && !(0..s.len()).any(|i| s.component(i).is_circle() && u.covers_component(i));
    ensure(decide_chainable(&u) == connected, || format!("decide_chainable({}) is {}", u, !connected))?;
    let cover: Vec<OpenSet> = if connected {
        let v = gen::open_set(r, &s, &SMALL);
        let w = v.complement().open_neighborhood(&ratio(1, 16));
        [v, w].iter().flat_map(|a| a.intersect(&u).connected_components()).collect()
    } else if comps.len() == 1 {
        // A whole circle: two overlapping arcs cover it.
        let i = (0..s.len()).find(|&i| u.covers_component(i)).ok_or("a connected non-chainable set is a circle")?;
        let l = s.component(i).length().cloned().ok_or("circles have a length")?;
        let arc = |a: Q, b: Q| OpenSet::parse(&s, &format!("{}:({},{})", i, rational::format(&a), rational::format(&b)));
        let third = &l / int(3);
        vec![
            arc(int(0), &third * int(2)).map_err(|e| e.to_string())?,
            arc(third.clone(), &l + &third).map_err(|e| e.to_string())?,
        ]
    } else {
        comps
    };
    let refinement = refine_to_almost_chain(&cover, &u).map_err(|e| e.to_string())?;
    let pieces: Vec<OpenSet> = match refinement {
        Refinement::Witness(c) => c.pieces.iter().map(|p| p.intersect(&u)).filter(|p| !p.is_empty()).collect(),
        Refinement::Impossible { component } => {
            return if connected { Err(format!("no almost chain over {} (circle {})", u, component)) } else { Ok(Case::Checked) };
        }
    };
    let zs: Vec<LscElement> = pieces.iter().map(LscElement::indicator).collect();
    let zero = LscElement::zero(&s);
    let parts: Vec<LscElement> = cover.iter().map(LscElement::indicator).collect();
    let below = zs.iter().all(|z| parts.iter().any(|p| z.leq(p)));
    let pattern = (0..zs.len()).all(|i| (0..zs.len()).all(|j| (zs[i].meet(&zs[j]) != zero) == (i.abs_diff(j) <= 1)));
    let covers = y.leq(&zs.iter().fold(zero.clone(), |a, z| a.add(z)));
    if connected {
        ensure(below && pattern && covers, || format!("y = {}: below {}, chain pattern {}, covers {}", y, below, pattern, covers))?;
    } else {
        ensure(!(below && pattern && covers), || format!("y = {} is disconnected but its refinement is a chain", y))?;
    }
    Ok(Case::Checked)
}

fn no_circle_instance(r: &mut ChaCha8Rng) -> Option<(LscModel, WeakChainInstance<LscElement>)> {
    let s = gen::space(r, &NO_CIRCLES);
    let m = LscModel::new(s.clone());
    let parts: Vec<LscElement> = (0..3).map(|_| gen::indicator(r, &s, &NO_CIRCLES)).collect();
    let union = parts.iter().fold(OpenSet::empty(&s), |a, p| a.union(&p.support()));
    let y = LscElement::indicator(&union.shrink(&ratio(1, 48)));
    let x = LscElement::indicator(&union.shrink(&ratio(1, 24)));
    let inst = WeakChainInstance { x, y, parts };
    let ok = !inst.x.is_zero() && inst.x.way_below(&inst.y) && inst.y.way_below(&m.sum(&inst.parts));
    ok.then_some((m, inst))
}

fn weak_chainability(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let Some((m, inst)) = no_circle_instance(r) else { return Ok(Case::Vacuous) };
    let rep = check_weak_chainability(&m, &inst, &Bounds::default()).map_err(|e| e.to_string())?;
    let w = rep.verdict.witness().ok_or_else(|| format!("verdict {} for a space without circles", rep.verdict.name()))?;
    let bad = weak_chain_violations(&m, &inst, w);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(Case::Checked)
}

fn direct_sum_weak_chain(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let (Some((ml, il)), Some((mr, ir))) = (no_circle_instance(r), no_circle_instance(r)) else { return Ok(Case::Vacuous) };
    let sum = DirectSum::new(ml, mr);
    let pair = |a: &LscElement, b: &LscElement| (a.clone(), b.clone());
    let n = il.parts.len().max(ir.parts.len());
    let (zl, zr) = (LscElement::zero(&sum.left.space), LscElement::zero(&sum.right.space));
    let parts = (0..n)
        .map(|k| pair(il.parts.get(k).unwrap_or(&zl), ir.parts.get(k).unwrap_or(&zr)))
        .collect();
    let inst = WeakChainInstance { x: pair(&il.x, &ir.x), y: pair(&il.y, &ir.y), parts };
    let rep = check_weak_chainability(&sum, &inst, &Bounds::default()).map_err(|e| e.to_string())?;
    let w = rep.verdict.witness().ok_or_else(|| format!("verdict {}: {}", rep.verdict.name(), rep.log.join(" | ")))?;
    let bad = weak_chain_violations(&sum, &inst, w);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(Case::Checked)
}

fn refinable_sums(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let shape = Shape { max_components: 2, max_intervals: 3, ..Shape::default() };
    let s = gen::space(r, &shape);
    let m = LscModel::new(s.clone());
    let n = r.gen_range(1..=3);
    let mut xs = vec![gen::element(r, &s, &shape, 2, false)];
    for _ in 1..n {
        let last = xs.last().unwrap().clone();
        let levels = (1..=last.height()).map(|k| last.level(k).closure().open_neighborhood(&ratio(1, 16))).collect();
        let fattened = LscElement::new(levels, OpenSet::empty(&s)).map_err(|e| e.to_string())?;
        xs.push(fattened.add(&gen::indicator(r, &s, &shape)));
    }
    let primes =
        xs.iter().map(|x| LscElement::indicator(&x.support().closure().open_neighborhood(&ratio(1, 32)))).collect();
    let inst = RefinableInstance { xs, primes };
    let rep = check_refinable_sums(&m, &inst, &Bounds::default()).map_err(|e| e.to_string())?;
    let w = rep.verdict.witness().ok_or_else(|| format!("verdict {}", rep.verdict.name()))?;
    let bad = refinable_violations(&m, &inst, w);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(Case::Checked)
}

/// `x_1 = x'_1 = x_2 = x'_2 = 1` (compact), `x_3 = t > 1` and `x'_3 = t' < 1`
/// (soft): the compact 1 is forced as the first term of every refinement and
/// then cannot sit way-below `x'_3`.
fn z_refinable_counterexample(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let t = ratio(r.gen_range(11..20), 10);
    let t_prime = ratio(r.gen_range(1..10), 10);
    let one = ZElem::Compact(1);
    let inst = RefinableInstance {
        xs: vec![one.clone(), one.clone(), ZElem::soft(t)],
        primes: vec![one.clone(), one, ZElem::soft(t_prime)],
    };
    let rep = check_refinable_sums(&Z, &inst, &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(rep.is_counterexample(), || format!("verdict {}: {}", rep.verdict.name(), rep.log.join(" | ")))?;
    ensure(rep.log.iter().any(|l| l.contains("forced: y_1^1 = 1")), || "the log does not record the forced step".into())?;
    Ok(Case::Checked)
}

fn almost_ordered_sums(r: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    if r.gen_bool(0.5) {
        let shape = Shape { max_components: 2, max_intervals: 3, ..Shape::default() };
        let s = gen::space(r, &shape);
        let m = LscModel::new(s.clone());
        let n = r.gen_range(1..=3);
        let xs: Vec<LscElement> = (0..n).map(|_| gen::element(r, &s, &shape, 2, true)).collect();
        let w = lattice_witness(&m, &xs).ok_or("no lattice candidate in a lattice-ordered model")?;
        let bad = almost_ordered_violations(&m, &xs, &w);
        ensure(bad.is_empty(), || bad.join("; "))?;
    } else {
        let n = r.gen_range(1..=3);
        let xs: Vec<ZElem> = (0..n)
            .map(|_| if r.gen_bool(0.5) { ZElem::Compact(r.gen_range(1..6)) } else { ZElem::soft(ratio(r.gen_range(1..12), 2)) })
            .collect();
        let rep = check_almost_ordered_sums(&Z, &xs, &Bounds::default()).map_err(|e| e.to_string())?;
        let w = rep.verdict.witness().ok_or_else(|| format!("verdict {} for a totally ordered model", rep.verdict.name()))?;
        let bad = almost_ordered_violations(&Z, &xs, w);
        ensure(bad.is_empty(), || bad.join("; "))?;
    }
    Ok(Case::Checked)
}

fn zprime_almost_ordered_counterexample(_: &mut ChaCha8Rng, _: &Ctx) -> CaseResult {
    let xs = vec![ZPrimeElem::compact(1), ZPrimeElem::OnePP];
    let rep = check_almost_ordered_sums(&ZPrime, &xs, &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(rep.is_counterexample(), || format!("verdict {}", rep.verdict.name()))?;
    ensure(rep.log.iter().any(|l| l.contains("compact")), || "the log does not mention the compact sum".into())?;
    Ok(Case::Checked)
}

fn additivity_of_way_below(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let f = gen::element(r, &s, &SMALL, 2, true);
    let g = gen::element(r, &s, &SMALL, 2, true);
    let f1 = oracle::shrink_family(&f, r.gen_range(1..8));
    let g1 = oracle::shrink_family(&g, r.gen_range(1..8));
    ensure(f1.way_below(&f) && g1.way_below(&g), || "the shrunk elements are not way-below".into())?;
    ensure(ctx.add(&f1, &g1).way_below(&ctx.add(&f, &g)), || format!("f' + g' is not way-below f + g for f = {}, g = {}", f, g))?;
    Ok(Case::Checked)
}

fn topological_order(r: &mut ChaCha8Rng, ctx: &Ctx) -> CaseResult {
    let s = gen::space(r, &SMALL);
    let n = r.gen_range(1..=3);
    let xs = gen::decreasing_indicators(r, &s, &SMALL, n);
    let ys: Vec<LscElement> = if r.gen_bool(0.5) {
        xs.iter().map(|x| x.join(&gen::indicator(r, &s, &SMALL))).collect()
    } else {
        gen::decreasing_indicators(r, &s, &SMALL, n)
    };
    let ys = ofs_normalize(&ys).map_err(|e| e.to_string())?;
    let termwise = xs.iter().zip(&ys).all(|(x, y)| x.leq(y));
    let summed = ctx.sum(&s, &xs).leq(&ctx.sum(&s, &ys));
    ensure(summed == termwise, || format!("Σx ≤ Σy is {} but termwise ≤ is {}", summed, termwise))?;
    Ok(Case::Checked)
}

const CHECKS: &[Check] = &[
    Check { id: "additivity-of-way-below", statement: "f' ≪ f and g' ≪ g imply f' + g' ≪ f + g", divisor: 1, run: additivity_of_way_below },
    Check { id: "almost-complement-adjunction", statement: "x + y ≤ z iff x ≤ y∖z, y∖z is maximal, and x + (y ∨ z) = (x + y) ∨ (x + z)", divisor: 1, run: almost_complement_adjunction },
    Check { id: "almost-ordered-sums", statement: "Lsc(X) and Z have almost ordered sums", divisor: 2, run: almost_ordered_sums },
    Check { id: "basic-topology", statement: "the six identities between C_y, U_y and the order below the unit", divisor: 1, run: basic_topology },
    Check { id: "cancellation", statement: "x + y ≤ x + z implies y ≤ z below the unit", divisor: 1, run: cancellation },
    Check { id: "chainable-elements", statement: "χ_U is chainable iff U is connected and not a circle", divisor: 2, run: chainable_elements },
    Check { id: "closed-set-lattice", statement: "finite intersections and unions of the sets C_y, and separation of points", divisor: 1, run: closed_set_lattice },
    Check { id: "comparability", statement: "for y, z ≤ e: z ≤ y iff every zero of y is a zero of z", divisor: 1, run: comparability },
    Check { id: "compact-containment", statement: "cl(U_y) ⊆ U_z iff y ≪ z", divisor: 1, run: compact_containment },
    Check { id: "direct-sum-weak-chain", statement: "weak chainability passes to direct sums", divisor: 4, run: direct_sum_weak_chain },
    Check { id: "heyting-distributivity", statement: "s ∧ ∨t = ∨(s ∧ t) for finite families below the unit", divisor: 1, run: heyting_distributivity },
    Check { id: "infinity-meet-unit", statement: "∞x = ∞(x ∧ e)", divisor: 1, run: infinity_meet_unit },
    Check { id: "level-decomposition", statement: "y ≤ n e is the ordered sum of its at most n level indicators", divisor: 1, run: level_decomposition },
    Check { id: "ordered-sum-identity", statement: "Σ(x_i + y_i) equals the decreasing reformulation, pointwise and exactly", divisor: 1, run: ordered_sum_identity },
    Check { id: "refinable-sums", statement: "Lsc(X) has refinable sums", divisor: 4, run: refinable_sums },
    Check { id: "sum-join", statement: "y_1 + … + y_n ≥ s ≤ e implies y_1 ∨ … ∨ y_n ≥ s", divisor: 1, run: sum_join },
    Check { id: "termwise-way-below", statement: "for ordered indicator sums, Σx ≪ Σy iff x_i ≪ y_i for all i", divisor: 1, run: termwise_way_below },
    Check { id: "topological-order", statement: "for decreasing lists below the unit, Σx ≤ Σy iff x_i ≤ y_i for all i", divisor: 1, run: topological_order },
    Check { id: "way-below-levels", statement: "the level-set test for ≪ agrees with increasing sequences", divisor: 1, run: way_below_levels },
    Check { id: "weak-chainability", statement: "Lsc(X) is weakly chainable when X has no circle", divisor: 4, run: weak_chainability },
    Check { id: "z-refinable-counterexample", statement: "Z does not have refinable sums", divisor: 10, run: z_refinable_counterexample },
    Check { id: "zprime-almost-ordered-counterexample", statement: "Z′ does not have almost ordered sums", divisor: 100, run: zprime_almost_ordered_counterexample },
];

/// The ids of all checks, sorted.
pub fn lemma_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
    ids.sort();
    ids
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub case: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaResult {
    pub id: String,
    pub statement: String,
    pub cases: usize,
    pub vacuous: usize,
    pub failures: Vec<CaseFailure>,
}

impl LemmaResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases: usize,
    pub mutation: Option<Mutation>,
    pub lemmas: Vec<LemmaResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lemmas.iter().all(LemmaResult::passed)
    }

    pub fn lemma(&self, id: &str) -> Option<&LemmaResult> {
        self.lemmas.iter().find(|l| l.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "cases": self.cases,
            "mutation": self.mutation.map(Mutation::name),
            "passed": self.passed(),
            "lemmas": self.lemmas.iter().map(|l| json!({
                "id": l.id,
                "statement": l.statement,
                "cases": l.cases,
                "vacuous": l.vacuous,
                "passed": l.passed(),
                "failures": l.failures.iter().map(|f| json!({"case": f.case, "message": f.message})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// FNV-1a, so per-check seeds stay fixed across builds and platforms.
fn stable_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The generator for one case of one check.
pub fn case_rng(seed: u64, id: &str, case: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ stable_hash(id));
    r.set_stream(case as u64);
    r
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".to_string())
}

fn run_case(check: &Check, config: &SuiteConfig, case: usize) -> CaseResult {
    let ctx = Ctx { mutation: config.mutation };
    let mut r = case_rng(config.seed, check.id, case);
    catch_unwind(AssertUnwindSafe(|| (check.run)(&mut r, &ctx))).unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(p))))
}

/// Runs every check. Deterministic in `config`.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    run_selected(config, &lemma_ids())
}

/// Runs the checks whose ids are listed (unknown ids are ignored).
pub fn run_selected(config: &SuiteConfig, ids: &[&str]) -> SuiteReport {
    let mut checks: Vec<&Check> = CHECKS.iter().filter(|c| ids.contains(&c.id)).collect();
    checks.sort_by_key(|c| c.id);
    let jobs: Vec<(usize, usize)> = checks
        .iter()
        .enumerate()
        .flat_map(|(k, c)| (0..(config.cases / c.divisor).max(1)).map(move |i| (k, i)))
        .collect();
    let mut outcomes: Vec<(usize, usize, CaseResult)> =
        jobs.par_iter().map(|&(k, i)| (k, i, run_case(checks[k], config, i))).collect();
    outcomes.sort_by_key(|(k, i, _)| (*k, *i));
    let mut lemmas: Vec<LemmaResult> = checks
        .iter()
        .map(|c| LemmaResult { id: c.id.into(), statement: c.statement.into(), cases: 0, vacuous: 0, failures: Vec::new() })
        .collect();
    for (k, case, out) in outcomes {
        let l = &mut lemmas[k];
        l.cases += 1;
        match out {
            Ok(Case::Checked) => {}
            Ok(Case::Vacuous) => l.vacuous += 1,
            Err(message) => l.failures.push(CaseFailure { case, message }),
        }
    }
    SuiteReport { seed: config.seed, cases: config.cases, mutation: config.mutation, lemmas }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted_in_reports() {
        let ids = lemma_ids();
        let mut dedup = ids.clone();
        dedup.dedup();
        assert_eq!(ids, dedup);
        assert_eq!(ids.len(), 22);
        let r = run_suite(&SuiteConfig { seed: 1, cases: 2, mutation: None });
        let got: Vec<&str> = r.lemmas.iter().map(|l| l.id.as_str()).collect();
        assert_eq!(got, ids);
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let cfg = SuiteConfig { seed: 42, cases: 20, mutation: None };
        let a = run_suite(&cfg);
        assert!(a.passed(), "{}", serde_json::to_string_pretty(&a.to_json()).unwrap());
        let b = run_suite(&cfg);
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    }

    #[test]
    fn broken_addition_is_caught() {
        let cfg = SuiteConfig { seed: 42, cases: 20, mutation: Some(Mutation::AddOffByOne) };
        let r = run_selected(&cfg, &["ordered-sum-identity", "level-decomposition"]);
        assert!(!r.lemma("ordered-sum-identity").unwrap().passed());
        assert!(!r.passed());
    }

    #[test]
    fn cases_replay_individually() {
        let check = CHECKS.iter().find(|c| c.id == "ordered-sum-identity").unwrap();
        let cfg = SuiteConfig::default();
        assert_eq!(run_case(check, &cfg, 7), run_case(check, &cfg, 7));
        let a: u64 = case_rng(42, "x", 0).gen();
        let b: u64 = case_rng(42, "x", 1).gen();
        let c: u64 = case_rng(42, "y", 0).gen();
        assert!(a != b && a != c);
    }

    #[test]
    fn mutation_names_parse() {
        assert_eq!("add-off-by-one".parse::<Mutation>(), Ok(Mutation::AddOffByOne));
        assert!("nope".parse::<Mutation>().is_err());
    }
}
