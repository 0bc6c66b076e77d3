//! Finite models given by tables, and exhaustive checks of the additional
//! axioms on them.
//!
//! JSON layout (elements are referred to by name everywhere):
//!
//! ```json
//! {
//!   "elements": ["0", "1", "inf"],
//!   "leq": [[true, true, true], [false, true, true], [false, false, true]],
//!   "add": [["0", "1", "inf"], ["1", "inf", "inf"], ["inf", "inf", "inf"]],
//!   "way_below": [[true, true, true], [false, true, true], [false, false, false]],
//!   "join": [...], "meet": [...],
//!   "down_e": ["0", "1"],
//!   "zero": "0"
//! }
//! ```
//!
//! `way_below`, `join`, `meet`, `down_e` and `zero` are optional. Without a
//! way-below table every element is compact (`≪` is `≤`); without join or
//! meet tables they are computed from the order where they exist. `zero`
//! defaults to the first element. `down_e` flags the subset on which the
//! topological-order law is checked.

use super::CuModel;
use crate::json::{decode, join as join_path, JsonError};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("the order is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("the tables are inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
    add: Vec<Vec<String>>,
    #[serde(default)]
    way_below: Option<Vec<Vec<bool>>>,
    #[serde(default)]
    join: Option<Vec<Vec<String>>>,
    #[serde(default)]
    meet: Option<Vec<Vec<String>>>,
    #[serde(default)]
    down_e: Option<Vec<String>>,
    #[serde(default)]
    zero: Option<String>,
}

/// A finite model. Elements are indices into `names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    add: Vec<Vec<usize>>,
    way_below: Option<Vec<Vec<bool>>>,
    join: Option<Vec<Vec<usize>>>,
    meet: Option<Vec<Vec<usize>>>,
    down_e: Option<Vec<usize>>,
    zero: usize,
}

fn square<T>(rows: &[Vec<T>], n: usize, path: &str) -> Result<(), JsonError> {
    if rows.len() != n {
        return Err(JsonError::new(path, format!("expected {} rows, found {}", n, rows.len())));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(JsonError::new(format!("{}[{}]", path, i), format!("expected {} entries, found {}", n, r.len())));
        }
    }
    Ok(())
}

impl FiniteTable {
    /// Builds and validates a table: a partial order, commutative and
    /// associative addition with neutral zero, monotone addition, and a
    /// way-below relation contained in the order and stable under
    /// `a' ≤ a ≪ b ≤ b'`.
    pub fn new(
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        add: Vec<Vec<usize>>,
        way_below: Option<Vec<Vec<bool>>>,
        down_e: Option<Vec<usize>>,
    ) -> Result<FiniteTable, TableError> {
        let t = FiniteTable { names, leq, add, way_below, join: None, meet: None, down_e, zero: 0 };
        t.validate()?;
        Ok(t)
    }

    pub fn from_json(v: &Value, base: &str) -> Result<FiniteTable, TableError> {
        let doc: TableDoc = decode(v, base)?;
        let n = doc.elements.len();
        if n == 0 {
            return Err(JsonError::new(join_path(base, "elements"), "a model needs at least one element").into());
        }
        let index: HashMap<&str, usize> = doc.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != n {
            return Err(JsonError::new(join_path(base, "elements"), "element names must be distinct").into());
        }
        let lookup = |name: &str, path: String| {
            index.get(name).copied().ok_or_else(|| JsonError::new(path, format!("unknown element {:?}", name)))
        };
        let names_table = |rows: &Vec<Vec<String>>, key: &str| -> Result<Vec<Vec<usize>>, JsonError> {
            let path = join_path(base, key);
            square(rows, n, &path)?;
            rows.iter()
                .enumerate()
                .map(|(i, r)| r.iter().enumerate().map(|(j, s)| lookup(s, format!("{}[{}][{}]", path, i, j))).collect())
                .collect()
        };
        square(&doc.leq, n, &join_path(base, "leq"))?;
        let add = names_table(&doc.add, "add")?;
        if let Some(w) = &doc.way_below {
            square(w, n, &join_path(base, "way_below"))?;
        }
        let join = doc.join.as_ref().map(|t| names_table(t, "join")).transpose()?;
        let meet = doc.meet.as_ref().map(|t| names_table(t, "meet")).transpose()?;
        let down_e = doc
            .down_e
            .as_ref()
            .map(|d| {
                d.iter()
                    .enumerate()
                    .map(|(i, s)| lookup(s, format!("{}[{}]", join_path(base, "down_e"), i)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let zero = match &doc.zero {
            Some(z) => lookup(z, join_path(base, "zero"))?,
            None => 0,
        };
        let t = FiniteTable { names: doc.elements, leq: doc.leq, add, way_below: doc.way_below, join, meet, down_e, zero };
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let names = |t: &Vec<Vec<usize>>| -> Vec<Vec<String>> {
            t.iter().map(|r| r.iter().map(|&k| self.names[k].clone()).collect()).collect()
        };
        let mut v = json!({
            "elements": self.names,
            "leq": self.leq,
            "add": names(&self.add),
            "zero": self.names[self.zero],
        });
        if let Some(w) = &self.way_below {
            v["way_below"] = json!(w);
        }
        if let Some(j) = &self.join {
            v["join"] = json!(names(j));
        }
        if let Some(m) = &self.meet {
            v["meet"] = json!(names(m));
        }
        if let Some(d) = &self.down_e {
            v["down_e"] = json!(d.iter().map(|&k| self.names[k].clone()).collect::<Vec<_>>());
        }
        v
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn validate(&self) -> Result<(), TableError> {
        let n = self.len();
        let name = |i: usize| self.names[i].as_str();
        let le = |a: usize, b: usize| self.leq[a][b];
        for a in 0..n {
            if !le(a, a) {
                return Err(TableError::NotAPartialOrder(format!("{} ≤ {} fails", name(a), name(a))));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(TableError::NotAPartialOrder(format!("{} and {} are distinct but equivalent", name(a), name(b))));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(TableError::NotAPartialOrder(format!(
                            "{} ≤ {} ≤ {} but not {} ≤ {}",
                            name(a),
                            name(b),
                            name(c),
                            name(a),
                            name(c)
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if self.add[self.zero][a] != a {
                return Err(TableError::Inconsistent(format!("{} + {} is not {}", name(self.zero), name(a), name(a))));
            }
            if !le(self.zero, a) {
                return Err(TableError::Inconsistent(format!("{} is not below {}", name(self.zero), name(a))));
            }
            for b in 0..n {
                if self.add[a][b] != self.add[b][a] {
                    return Err(TableError::Inconsistent(format!("{} + {} is not commutative", name(a), name(b))));
                }
                for c in 0..n {
                    if self.add[self.add[a][b]][c] != self.add[a][self.add[b][c]] {
                        return Err(TableError::Inconsistent(format!(
                            "({} + {}) + {} differs from {} + ({} + {})",
                            name(a),
                            name(b),
                            name(c),
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                    if le(a, b) && !le(self.add[a][c], self.add[b][c]) {
                        return Err(TableError::Inconsistent(format!(
                            "addition is not monotone: {} ≤ {} but {} + {} ≰ {} + {}",
                            name(a),
                            name(b),
                            name(a),
                            name(c),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        if let Some(w) = &self.way_below {
            for a in 0..n {
                for b in 0..n {
                    if w[a][b] && !le(a, b) {
                        return Err(TableError::Inconsistent(format!("{} ≪ {} but not {} ≤ {}", name(a), name(b), name(a), name(b))));
                    }
                    for a2 in 0..n {
                        for b2 in 0..n {
                            if w[a][b] && le(a2, a) && le(b, b2) && !w[a2][b2] {
                                return Err(TableError::Inconsistent(format!(
                                    "{} ≤ {} ≪ {} ≤ {} but not {} ≪ {}",
                                    name(a2),
                                    name(a),
                                    name(b),
                                    name(b2),
                                    name(a2),
                                    name(b2)
                                )));
                            }
                        }
                    }
                }
            }
        }
        for (key, table) in [("join", &self.join), ("meet", &self.meet)] {
            if let Some(t) = table {
                for a in 0..n {
                    for b in 0..n {
                        let computed = if key == "join" { self.order_join(a, b) } else { self.order_meet(a, b) };
                        if computed != Some(t[a][b]) {
                            return Err(TableError::Inconsistent(format!(
                                "the {} table gives {} for {} and {}, which is not the order's {}",
                                key,
                                name(t[a][b]),
                                name(a),
                                name(b),
                                key
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Least upper bound from the order, if it exists.
    fn order_join(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let ub: Vec<usize> = (0..n).filter(|&c| self.leq[a][c] && self.leq[b][c]).collect();
        ub.iter().copied().find(|&c| ub.iter().all(|&d| self.leq[c][d]))
    }

    fn order_meet(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let lb: Vec<usize> = (0..n).filter(|&c| self.leq[c][a] && self.leq[c][b]).collect();
        lb.iter().copied().find(|&c| lb.iter().all(|&d| self.leq[d][c]))
    }
}

impl CuModel for FiniteTable {
    type Elem = usize;

    fn name(&self) -> String {
        format!("table[{}]", self.names.join(","))
    }

    fn zero(&self) -> usize {
        self.zero
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.leq[*a][*b]
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }

    fn way_below(&self, a: &usize, b: &usize) -> bool {
        match &self.way_below {
            Some(w) => w[*a][*b],
            None => self.leq[*a][*b],
        }
    }

    fn join(&self, a: &usize, b: &usize) -> Option<usize> {
        self.order_join(*a, *b)
    }

    fn meet(&self, a: &usize, b: &usize) -> Option<usize> {
        self.order_meet(*a, *b)
    }

    fn lattice_ordered(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| match (self.order_join(a, b), self.order_meet(a, b)) {
                (Some(j), Some(m)) => self.add[a][b] == self.add[j][m],
                _ => false,
            })
        })
    }

    fn universe(&self) -> Option<Vec<usize>> {
        Some((0..self.len()).collect())
    }

    fn encode(&self, a: &usize) -> Value {
        json!(self.names[*a])
    }

    fn decode(&self, v: &Value, path: &str) -> Result<usize, JsonError> {
        let s = v.as_str().ok_or_else(|| JsonError::new(path, "expected an element name"))?;
        self.index_of(s).ok_or_else(|| JsonError::new(path, format!("unknown element {:?}", s)))
    }

    fn show(&self, a: &usize) -> String {
        self.names[*a].clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    /// The law fails; the text is a concrete violation.
    Fail(String),
    /// The law has nothing to check (for instance no flagged subset).
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomEntry {
    pub name: &'static str,
    pub status: AxiomStatus,
    /// Number of instances examined.
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| !matches!(e.status, AxiomStatus::Fail(_)))
    }

    pub fn status(&self, name: &str) -> Option<&AxiomStatus> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.status)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "all_pass": self.all_pass(),
            "axioms": self.entries.iter().map(|e| {
                let (status, detail) = match &e.status {
                    AxiomStatus::Pass => ("pass", Value::Null),
                    AxiomStatus::Fail(s) => ("fail", json!(s)),
                    AxiomStatus::NotApplicable(s) => ("not_applicable", json!(s)),
                };
                json!({"name": e.name, "status": status, "checked": e.checked, "detail": detail})
            }).collect::<Vec<_>>(),
        })
    }
}

fn first_failure(checked: &mut usize, mut cases: impl Iterator<Item = Option<String>>) -> AxiomStatus {
    for c in cases.by_ref() {
        *checked += 1;
        if let Some(msg) = c {
            return AxiomStatus::Fail(msg);
        }
    }
    AxiomStatus::Pass
}

/// Increasing sequences of length `len` from `d`.
fn increasing(t: &FiniteTable, d: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                d.iter()
                    .filter(|&&c| s.last().is_none_or(|&p| t.leq(&p, &c)))
                    .map(|&c| {
                        let mut s2 = s.clone();
                        s2.push(c);
                        s2
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Longest sequences compared by the topological-order check.
const TOPOLOGICAL_LENGTH: usize = 3;

/// Exhaustive verdicts for additivity of way-below, the decomposition axiom
/// `x' ≪ x ≤ z ⇒ ∃c: x' + c ≤ z ≤ x + c`, weak cancellation, the lattice
/// law `x + y = (x ∨ y) + (x ∧ y)` and, on a flagged subset below the unit,
/// the topological order (`Σ x_i ≤ Σ y_i` iff `x_i ≤ y_i` termwise for
/// increasing sequences).
pub fn check_axioms(t: &FiniteTable) -> AxiomReport {
    let n = t.len();
    let nm = |i: &usize| t.names[*i].clone();
    let triples = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));
    let mut entries = Vec::new();

    let mut checked = 0;
    let status = first_failure(
        &mut checked,
        triples().flat_map(|(a, b, c)| (0..n).map(move |d| (a, b, c, d))).map(|(a, b, c, d)| {
            (t.way_below(&a, &b) && t.way_below(&c, &d) && !t.way_below(&t.add(&a, &c), &t.add(&b, &d))).then(|| {
                format!(
                    "{} ≪ {} and {} ≪ {} but {} + {} is not way-below {} + {}",
                    nm(&a),
                    nm(&b),
                    nm(&c),
                    nm(&d),
                    nm(&a),
                    nm(&c),
                    nm(&b),
                    nm(&d)
                )
            })
        }),
    );
    entries.push(AxiomEntry { name: "additivity of way-below", status, checked });

    let mut checked = 0;
    let status = first_failure(
        &mut checked,
        triples().map(|(xp, x, z)| {
            if !(t.way_below(&xp, &x) && t.leq(&x, &z)) {
                return None;
            }
            let ok = (0..n).any(|c| t.leq(&t.add(&xp, &c), &z) && t.leq(&z, &t.add(&x, &c)));
            (!ok).then(|| format!("{} ≪ {} ≤ {} but no c has {} + c ≤ {} ≤ {} + c", nm(&xp), nm(&x), nm(&z), nm(&xp), nm(&z), nm(&x)))
        }),
    );
    entries.push(AxiomEntry { name: "decomposition", status, checked });

    let mut checked = 0;
    let status = first_failure(
        &mut checked,
        triples().map(|(x, y, z)| {
            (t.way_below(&t.add(&x, &z), &t.add(&y, &z)) && !t.way_below(&x, &y)).then(|| {
                format!("{} + {} ≪ {} + {} but {} is not way-below {}", nm(&x), nm(&z), nm(&y), nm(&z), nm(&x), nm(&y))
            })
        }),
    );
    entries.push(AxiomEntry { name: "weak cancellation", status, checked });

    let mut checked = 0;
    let status = first_failure(
        &mut checked,
        (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).map(|(a, b)| match (t.join(&a, &b), t.meet(&a, &b)) {
            (None, _) => Some(format!("{} and {} have no join", nm(&a), nm(&b))),
            (_, None) => Some(format!("{} and {} have no meet", nm(&a), nm(&b))),
            (Some(j), Some(m)) => (t.add(&a, &b) != t.add(&j, &m)).then(|| {
                format!(
                    "{} + {} = {} but ({} ∨ {}) + ({} ∧ {}) = {} + {} = {}",
                    nm(&a),
                    nm(&b),
                    nm(&t.add(&a, &b)),
                    nm(&a),
                    nm(&b),
                    nm(&a),
                    nm(&b),
                    nm(&j),
                    nm(&m),
                    nm(&t.add(&j, &m))
                )
            }),
        }),
    );
    entries.push(AxiomEntry { name: "lattice law", status, checked });

    let mut checked = 0;
    let status = match &t.down_e {
        None => AxiomStatus::NotApplicable("no subset below the unit is flagged".to_string()),
        Some(d) => {
            let mut status = AxiomStatus::Pass;
            'outer: for len in 1..=TOPOLOGICAL_LENGTH {
                let seqs = increasing(t, d, len);
                for xs in &seqs {
                    for ys in &seqs {
                        checked += 1;
                        let sums = t.leq(&t.sum(xs), &t.sum(ys));
                        let termwise = xs.iter().zip(ys).all(|(a, b)| t.leq(a, b));
                        if sums != termwise {
                            let show = |s: &[usize]| s.iter().map(nm).collect::<Vec<_>>().join(" + ");
                            status = AxiomStatus::Fail(format!(
                                "{} ≤ {} is {} but the termwise comparison is {}",
                                show(xs),
                                show(ys),
                                sums,
                                termwise
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            status
        }
    };
    entries.push(AxiomEntry { name: "topological order", status, checked });

    AxiomReport { entries }
}
