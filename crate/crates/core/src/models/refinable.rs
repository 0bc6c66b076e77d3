//! Refinable sums: given `x_1 ≪ … ≪ x_n` and `x'_i` with `x_i ∝ x'_i`,
//! find decreasing sequences `(y^k_j)_j` (one for each `k < n`, all of the
//! same length) with
//!
//! 1. `y^k_1 ≤ x'_{k+1}`,
//! 2. `y^k_j ≪ y^{k+1}_j` for every `j`,
//! 3. `x_k ≪ Σ_j y^k_j ≪ x_{k+1}`.
//!
//! The checker first asks the model for a construction, then tries to refute
//! the instance exactly (when the sums in clause 3 and their decompositions
//! can be listed completely), and finally searches candidate sequences.

use super::{
    candidates, show_list, Bounds, CheckError, CuModel, RefinableInstance, RefinableWitness, Report, Verdict,
};

/// Every clause of the definition that `w` violates for `inst`.
pub fn refinable_violations<M: CuModel>(m: &M, inst: &RefinableInstance<M::Elem>, w: &RefinableWitness<M::Elem>) -> Vec<String> {
    let n = inst.xs.len();
    let mut out = Vec::new();
    if w.sequences.len() != n.saturating_sub(1) {
        out.push(format!("expected {} sequences, found {}", n.saturating_sub(1), w.sequences.len()));
        return out;
    }
    let l = w.sequences.first().map_or(0, Vec::len);
    let zero = m.zero();
    for (k, seq) in w.sequences.iter().enumerate() {
        let sup = k + 1;
        if seq.len() != l {
            out.push(format!("sequence {} has length {} instead of {}", sup, seq.len(), l));
            continue;
        }
        for j in 1..seq.len() {
            if !m.leq(&seq[j], &seq[j - 1]) {
                out.push(format!("sequence {} is not decreasing at position {}", sup, j + 1));
            }
        }
        let first = seq.first().unwrap_or(&zero);
        if !m.leq(first, &inst.primes[k + 1]) {
            out.push(format!("y_1^{} = {} is not below x'_{} = {}", sup, m.show(first), k + 2, m.show(&inst.primes[k + 1])));
        }
        let s = m.sum(seq);
        if !m.way_below(&inst.xs[k], &s) {
            out.push(format!("x_{} = {} is not way-below the sum {} of sequence {}", k + 1, m.show(&inst.xs[k]), m.show(&s), sup));
        }
        if !m.way_below(&s, &inst.xs[k + 1]) {
            out.push(format!("the sum {} of sequence {} is not way-below x_{} = {}", m.show(&s), sup, k + 2, m.show(&inst.xs[k + 1])));
        }
        if let Some(next) = w.sequences.get(k + 1) {
            for j in 0..l.min(next.len()) {
                if !m.way_below(&seq[j], &next[j]) {
                    out.push(format!(
                        "y_{}^{} = {} is not way-below y_{}^{} = {}",
                        j + 1,
                        sup,
                        m.show(&seq[j]),
                        j + 1,
                        sup + 1,
                        m.show(&next[j])
                    ));
                }
            }
        }
    }
    out
}

fn check_hypotheses<M: CuModel>(m: &M, inst: &RefinableInstance<M::Elem>, bounds: &Bounds) -> Result<(), CheckError> {
    let n = inst.xs.len();
    if n == 0 {
        return Err(CheckError::Precondition("the sequence x is empty".into()));
    }
    if inst.primes.len() != n {
        return Err(CheckError::Precondition(format!("{} elements x but {} elements x'", n, inst.primes.len())));
    }
    for k in 1..n {
        if !m.way_below(&inst.xs[k - 1], &inst.xs[k]) {
            return Err(CheckError::Precondition(format!(
                "x_{} = {} is not way-below x_{} = {}",
                k,
                m.show(&inst.xs[k - 1]),
                k + 1,
                m.show(&inst.xs[k])
            )));
        }
    }
    for k in 0..n {
        if m.proportional(&inst.xs[k], &inst.primes[k], bounds.cap).is_none() {
            return Err(CheckError::Precondition(format!(
                "x_{} = {} is not below any multiple (up to {}) of x'_{} = {}",
                k + 1,
                m.show(&inst.xs[k]),
                bounds.cap,
                k + 1,
                m.show(&inst.primes[k])
            )));
        }
    }
    Ok(())
}

/// Tries to refute the instance from complete lists of admissible sums and
/// their decompositions. Returns true when a contradiction was logged.
fn refute_exactly<M: CuModel>(m: &M, inst: &RefinableInstance<M::Elem>, log: &mut Vec<String>) -> bool {
    let n = inst.xs.len();
    let zero = m.zero();
    for k in 0..n - 1 {
        let sup = k + 1;
        let (lo, hi) = (&inst.xs[k], &inst.xs[k + 1]);
        let Some(sums) = m.exact_between(lo, hi) else { continue };
        let mut options: Vec<Vec<M::Elem>> = Vec::new();
        let mut complete = true;
        for s in &sums {
            match m.decompositions(s) {
                Some(ds) => options.extend(ds),
                None => complete = false,
            }
        }
        if !complete {
            continue;
        }
        log.push(format!(
            "{} ≪ y_1^{} + … + y_l^{} ≪ {} leaves the sums {} only",
            m.show(lo),
            sup,
            sup,
            m.show(hi),
            show_list(m, &sums)
        ));
        let bound = &inst.primes[k + 1];
        options.retain(|d| m.leq(d.first().unwrap_or(&zero), bound));
        if options.is_empty() {
            log.push(format!("contradiction: no decreasing sequence with such a sum has y_1^{} ≤ x'_{} = {}", sup, k + 2, m.show(bound)));
            return true;
        }
        let firsts: Vec<M::Elem> = {
            let mut f: Vec<M::Elem> = Vec::new();
            for d in &options {
                let v = d.first().unwrap_or(&zero).clone();
                if !f.contains(&v) {
                    f.push(v);
                }
            }
            f
        };
        if options.len() == 1 {
            let d = &options[0];
            log.push(format!("forced: y_1^{} = {}", sup, m.show(d.first().unwrap_or(&zero))));
            if d.len() <= 1 {
                log.push(format!("forced: y_j^{} = 0 for j ≥ 2", sup));
            }
        } else if firsts.len() == 1 {
            log.push(format!("forced: y_1^{} = {}", sup, m.show(&firsts[0])));
        }
        if k + 2 < n {
            // y_1^{k+1} ≪ y_1^{k+2} ≤ x'_{k+3}, and ≪ implies ≤.
            let next_bound = &inst.primes[k + 2];
            if firsts.iter().all(|f| !m.leq(f, next_bound)) {
                for f in &firsts {
                    log.push(format!("contradiction: {} ≪ y_1^{} ≤ {}", m.show(f), sup + 1, m.show(next_bound)));
                }
                return true;
            }
        }
    }
    false
}

/// Decreasing tuples from `pool` (each term at most `hi`) whose sum `s`
/// satisfies `lo ≪ s ≪ hi` and whose first term is at most `first_bound`.
fn tuples<M: CuModel>(
    m: &M,
    pool: &[M::Elem],
    lo: &M::Elem,
    hi: &M::Elem,
    first_bound: &M::Elem,
    max_len: usize,
    budget: &mut usize,
) -> Vec<Vec<M::Elem>> {
    fn grow<M: CuModel>(
        m: &M,
        pool: &[M::Elem],
        prefix: &mut Vec<M::Elem>,
        sum: M::Elem,
        ctx: (&M::Elem, &M::Elem, usize),
        budget: &mut usize,
        out: &mut Vec<Vec<M::Elem>>,
    ) {
        let (lo, hi, max_len) = ctx;
        if *budget == 0 {
            return;
        }
        *budget -= 1;
        if m.way_below(lo, &sum) && m.way_below(&sum, hi) {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        for e in pool {
            if prefix.last().is_some_and(|p| !m.leq(e, p)) {
                continue;
            }
            let s = m.add(&sum, e);
            if !m.leq(&s, hi) {
                continue;
            }
            prefix.push(e.clone());
            grow(m, pool, prefix, s, ctx, budget, out);
            prefix.pop();
        }
    }
    let first: Vec<M::Elem> =
        pool.iter().filter(|e| !m.is_zero(e) && m.leq(e, first_bound) && m.leq(e, hi)).cloned().collect();
    let rest: Vec<M::Elem> = pool.iter().filter(|e| !m.is_zero(e) && m.leq(e, hi)).cloned().collect();
    let mut out = Vec::new();
    if m.way_below(lo, &m.zero()) && m.way_below(&m.zero(), hi) {
        out.push(vec![]);
    }
    for e in &first {
        let mut prefix = vec![e.clone()];
        grow(m, &rest, &mut prefix, e.clone(), (lo, hi, max_len), budget, &mut out);
    }
    out
}

fn chain_compatible<M: CuModel>(m: &M, a: &[M::Elem], b: &[M::Elem]) -> bool {
    let zero = m.zero();
    (0..a.len().max(b.len())).all(|j| m.way_below(a.get(j).unwrap_or(&zero), b.get(j).unwrap_or(&zero)))
}

fn search<M: CuModel>(
    m: &M,
    options: &[Vec<Vec<M::Elem>>],
    chosen: &mut Vec<usize>,
    budget: &mut usize,
) -> bool {
    let k = chosen.len();
    if k == options.len() {
        return true;
    }
    for (i, t) in options[k].iter().enumerate() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if let Some(&p) = chosen.last() {
            if !chain_compatible(m, &options[k - 1][p], t) {
                continue;
            }
        }
        chosen.push(i);
        if search(m, options, chosen, budget) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn pad<M: CuModel>(m: &M, mut seqs: Vec<Vec<M::Elem>>) -> RefinableWitness<M::Elem> {
    let l = seqs.iter().map(Vec::len).max().unwrap_or(0);
    for s in &mut seqs {
        s.resize(l, m.zero());
    }
    RefinableWitness { sequences: seqs }
}

/// Decides refinable sums for one instance.
pub fn check_refinable_sums<M: CuModel>(
    m: &M,
    inst: &RefinableInstance<M::Elem>,
    bounds: &Bounds,
) -> Result<Report<RefinableWitness<M::Elem>>, CheckError> {
    check_hypotheses(m, inst, bounds)?;
    let n = inst.xs.len();
    let mut log = Vec::new();
    if n == 1 {
        log.push("a single element: no sequences are required".to_string());
        return Ok(Report::new(Verdict::Witness(RefinableWitness { sequences: vec![] }), log));
    }
    if let Some((seqs, mut clog)) = m.refinable_construction(inst) {
        let w = pad(m, seqs);
        let bad = refinable_violations(m, inst, &w);
        log.append(&mut clog);
        if bad.is_empty() {
            log.push("the construction satisfies every clause".to_string());
            return Ok(Report::new(Verdict::Witness(w), log));
        }
        log.push(format!("the construction failed re-validation: {}", bad.join("; ")));
    }
    if refute_exactly(m, inst, &mut log) {
        return Ok(Report::new(Verdict::Counterexample, log));
    }
    let seeds: Vec<M::Elem> = inst.xs.iter().chain(inst.primes.iter()).cloned().collect();
    let pool = candidates(m, &seeds, bounds);
    let mut budget = bounds.budget;
    let options: Vec<Vec<Vec<M::Elem>>> = (0..n - 1)
        .map(|k| tuples(m, &pool.elems, &inst.xs[k], &inst.xs[k + 1], &inst.primes[k + 1], bounds.max_len, &mut budget))
        .collect();
    log.push(format!(
        "searched {} candidates (closure depth {}{}), sequences of length ≤ {}: {} options per sequence",
        pool.elems.len(),
        bounds.depth,
        if pool.truncated { ", truncated" } else { "" },
        bounds.max_len,
        options.iter().map(|o| o.len().to_string()).collect::<Vec<_>>().join("/")
    ));
    let mut chosen = Vec::new();
    if search(m, &options, &mut chosen, &mut budget) {
        let seqs = chosen.iter().enumerate().map(|(k, &i)| options[k][i].clone()).collect();
        let w = pad(m, seqs);
        let bad = refinable_violations(m, inst, &w);
        if bad.is_empty() {
            log.push("found sequences satisfying every clause".to_string());
            return Ok(Report::new(Verdict::Witness(w), log));
        }
        log.push(format!("search result failed re-validation: {}", bad.join("; ")));
    }
    log.push(if budget == 0 {
        "search budget exhausted".to_string()
    } else {
        "no candidate sequences satisfy every clause; the candidate set is not exhaustive".to_string()
    });
    Ok(Report::new(Verdict::Inconclusive, log))
}
