use super::{
    check_weak_chainability, Bounds, CheckError, Construction, CuModel, RefinableInstance, Report, Verdict,
    WeakChainInstance, WeakChainWitness,
};
use crate::json::JsonError;
use serde_json::{json, Value};

/// The direct sum `S ⊕ T`: pairs with componentwise order, addition and
/// way-below.
#[derive(Clone, Debug, Default)]
pub struct DirectSum<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: CuModel, B: CuModel> DirectSum<A, B> {
    pub fn new(left: A, right: B) -> Self {
        DirectSum { left, right }
    }

    /// All decreasing pairs of sequences built from `ls` and `rs` after
    /// padding both with zeros to a common length.
    fn pair_sequences(&self, ls: &[Vec<A::Elem>], rs: &[Vec<B::Elem>]) -> Vec<Vec<(A::Elem, B::Elem)>> {
        let mut out = Vec::new();
        for l in ls {
            for r in rs {
                let n = l.len().max(r.len());
                let seq: Vec<(A::Elem, B::Elem)> = (0..n)
                    .map(|k| {
                        (
                            l.get(k).cloned().unwrap_or_else(|| self.left.zero()),
                            r.get(k).cloned().unwrap_or_else(|| self.right.zero()),
                        )
                    })
                    .collect();
                if seq.windows(2).all(|w| self.leq(&w[1], &w[0])) {
                    out.push(seq);
                }
            }
        }
        out
    }
}

fn with_empty<E>(mut v: Vec<Vec<E>>, zero: bool) -> Vec<Vec<E>> {
    if zero && v.is_empty() {
        v.push(vec![]);
    }
    v
}

fn project<E: Clone, F: Clone>(inst: &WeakChainInstance<(E, F)>) -> (WeakChainInstance<E>, WeakChainInstance<F>) {
    (
        WeakChainInstance {
            x: inst.x.0.clone(),
            y: inst.y.0.clone(),
            parts: inst.parts.iter().map(|p| p.0.clone()).collect(),
        },
        WeakChainInstance {
            x: inst.x.1.clone(),
            y: inst.y.1.clone(),
            parts: inst.parts.iter().map(|p| p.1.clone()).collect(),
        },
    )
}

impl<A: CuModel, B: CuModel> CuModel for DirectSum<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn name(&self) -> String {
        format!("{}+{}", self.left.name(), self.right.name())
    }

    fn zero(&self) -> Self::Elem {
        (self.left.zero(), self.right.zero())
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.leq(&a.0, &b.0) && self.right.leq(&a.1, &b.1)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.left.add(&a.0, &b.0), self.right.add(&a.1, &b.1))
    }

    fn way_below(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.way_below(&a.0, &b.0) && self.right.way_below(&a.1, &b.1)
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some((self.left.join(&a.0, &b.0)?, self.right.join(&a.1, &b.1)?))
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some((self.left.meet(&a.0, &b.0)?, self.right.meet(&a.1, &b.1)?))
    }

    fn lattice_ordered(&self) -> bool {
        self.left.lattice_ordered() && self.right.lattice_ordered()
    }

    fn midpoint(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let l = self.left.midpoint(&a.0, &b.0).unwrap_or_else(|| a.0.clone());
        let r = self.right.midpoint(&a.1, &b.1).unwrap_or_else(|| a.1.clone());
        Some((l, r))
    }

    fn universe(&self) -> Option<Vec<Self::Elem>> {
        let (ls, rs) = (self.left.universe()?, self.right.universe()?);
        Some(ls.iter().flat_map(|l| rs.iter().map(move |r| (l.clone(), r.clone()))).collect())
    }

    fn exact_between(&self, lo: &Self::Elem, hi: &Self::Elem) -> Option<Vec<Self::Elem>> {
        let ls = self.left.exact_between(&lo.0, &hi.0)?;
        let rs = self.right.exact_between(&lo.1, &hi.1)?;
        Some(ls.iter().flat_map(|l| rs.iter().map(move |r| (l.clone(), r.clone()))).collect())
    }

    fn decompositions(&self, s: &Self::Elem) -> Option<Vec<Vec<Self::Elem>>> {
        // A decreasing sequence in the sum projects to decreasing sequences
        // in each summand, so every decomposition arises from a pair.
        let ls = with_empty(self.left.decompositions(&s.0)?, self.left.is_zero(&s.0));
        let rs = with_empty(self.right.decompositions(&s.1)?, self.right.is_zero(&s.1));
        let mut out = self.pair_sequences(&ls, &rs);
        out.retain(|seq| seq.iter().all(|e| !self.is_zero(e)));
        Some(out)
    }

    fn proportional(&self, a: &Self::Elem, b: &Self::Elem, cap: u64) -> Option<u64> {
        Some(self.left.proportional(&a.0, &b.0, cap)?.max(self.right.proportional(&a.1, &b.1, cap)?))
    }

    fn encode(&self, a: &Self::Elem) -> Value {
        json!([self.left.encode(&a.0), self.right.encode(&a.1)])
    }

    fn decode(&self, v: &Value, path: &str) -> Result<Self::Elem, JsonError> {
        match v.as_array().map(Vec::as_slice) {
            Some([l, r]) => {
                Ok((self.left.decode(l, &format!("{}[0]", path))?, self.right.decode(r, &format!("{}[1]", path))?))
            }
            _ => Err(JsonError::new(path, "expected a pair [left, right]")),
        }
    }

    fn show(&self, a: &Self::Elem) -> String {
        format!("({}, {})", self.left.show(&a.0), self.right.show(&a.1))
    }

    fn refinable_construction(&self, inst: &RefinableInstance<Self::Elem>) -> Option<Construction<Self::Elem>> {
        let l = RefinableInstance {
            xs: inst.xs.iter().map(|e| e.0.clone()).collect(),
            primes: inst.primes.iter().map(|e| e.0.clone()).collect(),
        };
        let r = RefinableInstance {
            xs: inst.xs.iter().map(|e| e.1.clone()).collect(),
            primes: inst.primes.iter().map(|e| e.1.clone()).collect(),
        };
        let (ls, mut llog) = self.left.refinable_construction(&l)?;
        let (rs, mut rlog) = self.right.refinable_construction(&r)?;
        let len = ls.iter().map(Vec::len).chain(rs.iter().map(Vec::len)).max().unwrap_or(0);
        let seqs = ls
            .iter()
            .zip(rs.iter())
            .map(|(a, b)| {
                (0..len)
                    .map(|k| {
                        (
                            a.get(k).cloned().unwrap_or_else(|| self.left.zero()),
                            b.get(k).cloned().unwrap_or_else(|| self.right.zero()),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut log: Vec<String> = llog.drain(..).map(|s| format!("left: {}", s)).collect();
        log.extend(rlog.drain(..).map(|s| format!("right: {}", s)));
        log.push("paired the sequences termwise".to_string());
        Some((seqs, log))
    }

    /// Decides each summand separately. A counterexample in either summand
    /// is one for the sum (the sum's clauses hold componentwise); witnesses
    /// combine as `z = (z_1, 0), …, (z_m, 0), (0, z'_1), …, (0, z'_{m'})`.
    fn weak_chain(
        &self,
        inst: &WeakChainInstance<Self::Elem>,
        bounds: &Bounds,
    ) -> Option<Result<Report<WeakChainWitness<Self::Elem>>, CheckError>> {
        let (li, ri) = project(inst);
        let run = || -> Result<Report<WeakChainWitness<Self::Elem>>, CheckError> {
            let lr = check_weak_chainability(&self.left, &li, bounds)?;
            let mut log: Vec<String> = lr.log.iter().map(|s| format!("left: {}", s)).collect();
            if lr.is_counterexample() {
                log.push("the left summand fails, so the sum fails".to_string());
                return Ok(Report::new(Verdict::Counterexample, log));
            }
            let rr = check_weak_chainability(&self.right, &ri, bounds)?;
            log.extend(rr.log.iter().map(|s| format!("right: {}", s)));
            if rr.is_counterexample() {
                log.push("the right summand fails, so the sum fails".to_string());
                return Ok(Report::new(Verdict::Counterexample, log));
            }
            let (Some(lw), Some(rw)) = (lr.verdict.witness(), rr.verdict.witness()) else {
                return Ok(Report::new(Verdict::Inconclusive, log));
            };
            let mut zs: Vec<Self::Elem> = lw.zs.iter().map(|z| (z.clone(), self.right.zero())).collect();
            zs.extend(rw.zs.iter().map(|z| (self.left.zero(), z.clone())));
            let w = WeakChainWitness { x_prime: (lw.x_prime.clone(), rw.x_prime.clone()), zs };
            let bad = super::weak_chain_violations(self, inst, &w);
            if bad.is_empty() {
                log.push(format!("combined {} + {} terms into a witness for the sum", lw.zs.len(), rw.zs.len()));
                Ok(Report::new(Verdict::Witness(w), log))
            } else {
                log.push(format!("the combined witness failed re-validation: {}", bad.join("; ")));
                Ok(Report::new(Verdict::Inconclusive, log))
            }
        };
        Some(run())
    }
}
