//! Weak chainability: for `x ≪ y ≪ y_1 + … + y_n` find `x' ≤ y` with
//! `x ∝ x'` and `z_1, …, z_m` such that
//!
//! 1. every `z_i` is below some `y_j`;
//! 2. `z_i + z_j ≤ x'` whenever `|i − j| ≥ 2`;
//! 3. `z_1 + … + z_m ≥ x'`.
//!
//! In `Lsc(X, N̄)` this is decided through almost chains of open sets; other
//! models get a trivial shortcut and a bounded search.

use super::{
    candidates, show_list, Bounds, CheckError, CuModel, LscModel, Report, Verdict, WeakChainInstance, WeakChainWitness,
};
use crate::chains::{lebesgue_number, refine_to_almost_chain, search_chain, Refinement};
use crate::geometry::OpenSet;
use crate::lsc::LscElement;

/// Every clause of the definition that `w` violates for `inst`.
pub fn weak_chain_violations<M: CuModel>(m: &M, inst: &WeakChainInstance<M::Elem>, w: &WeakChainWitness<M::Elem>) -> Vec<String> {
    let mut out = Vec::new();
    let xp = &w.x_prime;
    if !m.leq(xp, &inst.y) {
        out.push(format!("x' = {} is not below y = {}", m.show(xp), m.show(&inst.y)));
    }
    if m.proportional(&inst.x, xp, Bounds::default().cap).is_none() {
        out.push(format!("x = {} is not below a multiple of x' = {}", m.show(&inst.x), m.show(xp)));
    }
    for (i, z) in w.zs.iter().enumerate() {
        if !inst.parts.iter().any(|p| m.leq(z, p)) {
            out.push(format!("z_{} = {} is below none of the y_j", i + 1, m.show(z)));
        }
    }
    for i in 0..w.zs.len() {
        for j in i + 2..w.zs.len() {
            if !m.leq(&m.add(&w.zs[i], &w.zs[j]), xp) {
                out.push(format!("z_{} + z_{} is not below x'", i + 1, j + 1));
            }
        }
    }
    let s = m.sum(&w.zs);
    if !m.leq(xp, &s) {
        out.push(format!("the sum {} of the z_i does not dominate x' = {}", m.show(&s), m.show(xp)));
    }
    out
}

fn check_hypotheses<M: CuModel>(m: &M, inst: &WeakChainInstance<M::Elem>) -> Result<(), CheckError> {
    if !m.way_below(&inst.x, &inst.y) {
        return Err(CheckError::Precondition(format!("x = {} is not way-below y = {}", m.show(&inst.x), m.show(&inst.y))));
    }
    let s = m.sum(&inst.parts);
    if !m.way_below(&inst.y, &s) {
        return Err(CheckError::Precondition(format!(
            "y = {} is not way-below y_1 + … + y_n = {}",
            m.show(&inst.y),
            m.show(&s)
        )));
    }
    Ok(())
}

fn confirmed<M: CuModel>(
    m: &M,
    inst: &WeakChainInstance<M::Elem>,
    w: WeakChainWitness<M::Elem>,
    mut log: Vec<String>,
) -> Report<WeakChainWitness<M::Elem>> {
    let bad = weak_chain_violations(m, inst, &w);
    if bad.is_empty() {
        log.push(format!("x' = {}, z = {} satisfy every clause", m.show(&w.x_prime), show_list(m, &w.zs)));
        Report::new(Verdict::Witness(w), log)
    } else {
        log.push(format!("the construction failed re-validation: {}", bad.join("; ")));
        Report::new(Verdict::Inconclusive, log)
    }
}

/// Extends `zs` depth-first until the sum dominates `xp`.
fn grow<M: CuModel>(m: &M, pool: &[M::Elem], xp: &M::Elem, zs: &mut Vec<M::Elem>, max_len: usize, budget: &mut usize) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if !zs.is_empty() && m.leq(xp, &m.sum(zs)) {
        return true;
    }
    if zs.len() == max_len {
        return false;
    }
    for z in pool {
        let far = zs.len().saturating_sub(1);
        if zs[..far].iter().any(|w| !m.leq(&m.add(w, z), xp)) {
            continue;
        }
        zs.push(z.clone());
        if grow(m, pool, xp, zs, max_len, budget) {
            return true;
        }
        zs.pop();
    }
    false
}

fn search<M: CuModel>(
    m: &M,
    inst: &WeakChainInstance<M::Elem>,
    bounds: &Bounds,
    log: &mut Vec<String>,
) -> Option<WeakChainWitness<M::Elem>> {
    let mut seeds = vec![inst.x.clone(), inst.y.clone()];
    seeds.extend(inst.parts.iter().cloned());
    let pool = candidates(m, &seeds, bounds);
    let below: Vec<M::Elem> =
        pool.elems.iter().filter(|z| !m.is_zero(z) && inst.parts.iter().any(|p| m.leq(z, p))).cloned().collect();
    let mut budget = bounds.budget;
    for xp in &pool.elems {
        if !m.leq(xp, &inst.y) || m.proportional(&inst.x, xp, bounds.cap).is_none() {
            continue;
        }
        let mut zs = Vec::new();
        if grow(m, &below, xp, &mut zs, bounds.max_len, &mut budget) {
            return Some(WeakChainWitness { x_prime: xp.clone(), zs });
        }
    }
    log.push(format!(
        "no witness among {} candidates with at most {} terms{}",
        pool.elems.len(),
        bounds.max_len,
        if budget == 0 { " (search budget exhausted)" } else { "" }
    ));
    None
}

/// Decides weak chainability for one instance.
pub fn check_weak_chainability<M: CuModel>(
    m: &M,
    inst: &WeakChainInstance<M::Elem>,
    bounds: &Bounds,
) -> Result<Report<WeakChainWitness<M::Elem>>, CheckError> {
    check_hypotheses(m, inst)?;
    if let Some(j) = inst.parts.iter().position(|p| m.leq(&inst.y, p)) {
        let log = vec![format!("y ≤ y_{}: a single term z_1 = x' = x suffices", j + 1)];
        let w = WeakChainWitness { x_prime: inst.x.clone(), zs: vec![inst.x.clone()] };
        return Ok(confirmed(m, inst, w, log));
    }
    if let Some(r) = m.weak_chain(inst, bounds) {
        return r;
    }
    let mut log = Vec::new();
    if let Some(w) = search(m, inst, bounds, &mut log) {
        return Ok(confirmed(m, inst, w, log));
    }
    Ok(Report::new(Verdict::Inconclusive, log))
}

fn chi(u: &OpenSet) -> LscElement {
    LscElement::indicator(u)
}

/// The restriction of every cover set to circle `c` is empty or a proper
/// arc, and any two restrictions meet in an arc (or not at all). Such a
/// cover of the circle has the circle as its nerve, up to homotopy.
fn good_arc_cover(cover: &[OpenSet], c: usize) -> Result<(), String> {
    let parts: Vec<OpenSet> = cover.iter().map(|u| u.restrict(c)).filter(|u| !u.is_empty()).collect();
    for u in &parts {
        if u.is_full() || u.covers_component(c) {
            return Err(format!("the set {} contains the whole circle", u));
        }
        if !u.is_connected() {
            return Err(format!("the set {} meets the circle in more than one arc", u));
        }
    }
    for (a, u) in parts.iter().enumerate() {
        for v in &parts[a + 1..] {
            let w = u.intersect(v);
            if !w.is_empty() && !w.is_connected() {
                return Err(format!("{} and {} meet in more than one arc", u, v));
            }
        }
    }
    Ok(())
}

/// The decision procedure for `Lsc(X, N̄)`.
///
/// Without circles: `x' = x ∧ 1`, and an almost chain refining
/// `X ∖ cl(supp x), supp y_1, …, supp y_n` is cut down to `supp x`. With
/// circles the almost chain refines the supports directly over `supp x`;
/// when a circle inside `supp x` defeats that, a counterexample is reported
/// if the circle argument below applies, and "inconclusive" otherwise.
pub(crate) fn lsc_weak_chain(
    m: &LscModel,
    inst: &WeakChainInstance<LscElement>,
    bounds: &Bounds,
) -> Result<Report<WeakChainWitness<LscElement>>, CheckError> {
    let space = &m.space;
    for (what, e) in [("x", &inst.x), ("y", &inst.y)].into_iter().chain(inst.parts.iter().map(|p| ("y_j", p))) {
        if **e.space() != **space {
            return Err(CheckError::Precondition(format!("{} lives in a different space", what)));
        }
    }
    let u = inst.x.support();
    let x_prime = inst.x.meet(&LscElement::unit(space));
    let supports: Vec<OpenSet> = inst.parts.iter().map(LscElement::support).collect();
    let mut log = vec![format!("x' = x ∧ 1 = {}", x_prime)];

    let refinement = if !space.has_circle() {
        let mut cover = vec![u.closure().complement()];
        cover.extend(supports.iter().cloned());
        log.push("the space has no circle: refining X ∖ cl(supp x), supp y_1, …, supp y_n by an almost chain of X".into());
        refine_to_almost_chain(&cover, &OpenSet::full(space)).map_err(|e| CheckError::Precondition(e.to_string()))?
    } else {
        log.push("the space has circles: refining supp y_1, …, supp y_n by an almost chain of supp x".into());
        refine_to_almost_chain(&supports, &u).map_err(|e| CheckError::Precondition(e.to_string()))?
    };

    match refinement {
        Refinement::Witness(chain) => {
            log.push(format!("almost chain with {} pieces, mesh {}", chain.len(), crate::rational::format(&chain.mesh)));
            let zs: Vec<LscElement> =
                chain.pieces.iter().map(|p| p.intersect(&u)).filter(|p| !p.is_empty()).map(|p| chi(&p)).collect();
            Ok(confirmed(m, inst, WeakChainWitness { x_prime, zs }, log))
        }
        Refinement::Impossible { component: c } => {
            log.push(format!("component {} is a circle inside supp x that no cover set contains", c));
            if inst.y.level(2).meets_component(c) {
                log.push(format!("y takes values ≥ 2 on component {}; the circle argument does not apply", c));
                return Ok(Report::new(Verdict::Inconclusive, log));
            }
            if let Err(why) = good_arc_cover(&supports, c) {
                log.push(format!("the supports do not form an arc cover of component {}: {}", c, why));
                return Ok(Report::new(Verdict::Inconclusive, log));
            }
            log.push(format!(
                "on component {c}: x ∝ x' forces x' ≥ 1 on supp x ⊇ C{c}, and x' ≤ y ≤ 1 there, so x' = 1 on C{c}; \
                 then z_i + z_j ≤ x' makes the supports of non-adjacent z_i disjoint on C{c}, the supports cover C{c}, \
                 and each lies in some supp y_j"
            ));
            log.push(format!(
                "the sets supp y_j meet C{c} in proper arcs with connected pairwise intersections, so their nerve is \
                 a circle; a refining cover with non-adjacent members disjoint has a path as nerve, and the circle \
                 would factor through it up to homotopy — impossible"
            ));
            let mut cover = supports.clone();
            let others = (0..space.len()).filter(|&i| i != c).fold(OpenSet::empty(space), |a, i| a.union(&OpenSet::component(space, i)));
            cover.push(others);
            if let Ok(eps) = lebesgue_number(&cover) {
                let report = search_chain(space, c, &eps, bounds.chain_depth);
                for l in &report.logs {
                    log.push(format!(
                        "grid search, depth {}: {} arcs of mesh < {}, {} states, {}",
                        l.depth,
                        l.links,
                        crate::rational::format(&eps),
                        l.states,
                        if l.found { "chain found" } else { "no chain" }
                    ));
                }
                if report.found.is_some() {
                    log.push("the grid search contradicts the circle argument; giving up".into());
                    return Ok(Report::new(Verdict::Inconclusive, log));
                }
            }
            Ok(Report::new(Verdict::Counterexample, log))
        }
    }
}
