//! Cell decomposition of a single one-dimensional component.
//!
//! A subset of an arc `[0, L]` or a circle `R / LZ` that is a finite union of
//! intervals is described by a sorted list of cut points together with one
//! membership bit per cut point and one per open gap between consecutive
//! cuts.  On an arc the cuts always include `0` and `L`; on a circle the cuts
//! live in `[0, L)` and the last gap wraps around to `cuts[0] + L` (with no
//! cuts at all, the single gap is the whole circle).
//!
//! Every boolean operation refines both operands to the union of their cut
//! points and evaluates bits there; `simplify` then removes cuts that carry no
//! information. After simplification two descriptions are equal iff they
//! describe the same point set, so derived `Eq`/`Hash` are set equality.

use crate::rational::{midpoint, Q};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Shape {
    Arc,
    Circle,
}

/// A maximal connected piece of a set on one component. On circles the
/// piece is given in lifted coordinates: `lo` lies in `[0, L)` and `hi` may
/// exceed `L` (at most `lo + L`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
    pub lo_in: bool,
    pub hi_in: bool,
}

impl Interval {
    pub fn length(&self) -> Q {
        &self.hi - &self.lo
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pieces {
    Empty,
    Full,
    List(Vec<Interval>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Cells {
    cuts: Vec<Q>,
    pts: Vec<bool>,
    gaps: Vec<bool>,
}

enum Loc {
    Cut(usize),
    Gap(usize),
}

/// Reduces `t` into `[0, len)`.
pub(crate) fn wrap(t: &Q, len: &Q) -> Q {
    let k = (t / len).floor();
    t - k * len
}

impl Cells {
    pub fn constant(shape: Shape, len: &Q, bit: bool) -> Cells {
        match shape {
            Shape::Arc => Cells { cuts: vec![Q::zero(), len.clone()], pts: vec![bit, bit], gaps: vec![bit] },
            Shape::Circle => Cells { cuts: vec![], pts: vec![], gaps: vec![bit] },
        }
    }

    pub fn cuts(&self) -> &[Q] {
        &self.cuts
    }

    pub fn constant_value(&self) -> Option<bool> {
        let b = self.gaps[0];
        if self.pts.iter().chain(self.gaps.iter()).all(|&x| x == b) {
            Some(b)
        } else {
            None
        }
    }

    fn locate(&self, shape: Shape, len: &Q, t: &Q) -> Loc {
        let t = match shape {
            Shape::Arc => t.clone(),
            Shape::Circle => wrap(t, len),
        };
        match self.cuts.binary_search(&t) {
            Ok(i) => Loc::Cut(i),
            Err(i) => match shape {
                // i >= 1 because cuts[0] = 0 <= t on arcs.
                Shape::Arc => Loc::Gap(i.saturating_sub(1).min(self.gaps.len() - 1)),
                Shape::Circle => {
                    if i == 0 || i == self.cuts.len() {
                        Loc::Gap(self.gaps.len() - 1)
                    } else {
                        Loc::Gap(i - 1)
                    }
                }
            },
        }
    }

    pub fn member(&self, shape: Shape, len: &Q, t: &Q) -> bool {
        match self.locate(shape, len, t) {
            Loc::Cut(i) => self.pts[i],
            Loc::Gap(i) => self.gaps[i],
        }
    }

    /// Builds cells over the given cut points (any order, duplicates allowed;
    /// circle values are reduced mod `len`) by sampling a predicate at every
    /// cut and at the midpoint of every gap. The predicate must be constant
    /// on each gap.
    pub fn from_predicate(shape: Shape, len: &Q, cuts: Vec<Q>, pred: impl Fn(&Q) -> bool) -> Cells {
        let mut cuts: Vec<Q> = match shape {
            Shape::Arc => {
                let mut v: Vec<Q> = cuts.into_iter().filter(|c| !c.is_zero() && c < len && c > &Q::zero()).collect();
                v.push(Q::zero());
                v.push(len.clone());
                v
            }
            Shape::Circle => cuts.iter().map(|c| wrap(c, len)).collect(),
        };
        cuts.sort();
        cuts.dedup();
        let pts: Vec<bool> = cuts.iter().map(&pred).collect();
        let gaps: Vec<bool> = match shape {
            Shape::Arc => cuts.windows(2).map(|w| pred(&midpoint(&w[0], &w[1]))).collect(),
            Shape::Circle => {
                if cuts.is_empty() {
                    vec![pred(&Q::zero())]
                } else {
                    let n = cuts.len();
                    (0..n)
                        .map(|i| {
                            let m = if i + 1 < n {
                                midpoint(&cuts[i], &cuts[i + 1])
                            } else {
                                wrap(&midpoint(&cuts[i], &(&cuts[0] + len)), len)
                            };
                            pred(&m)
                        })
                        .collect()
                }
            }
        };
        Cells { cuts, pts, gaps }.simplify(shape)
    }

    pub fn combine(&self, other: &Cells, shape: Shape, len: &Q, f: impl Fn(bool, bool) -> bool) -> Cells {
        let mut cuts = self.cuts.clone();
        cuts.extend(other.cuts.iter().cloned());
        Cells::from_predicate(shape, len, cuts, |t| f(self.member(shape, len, t), other.member(shape, len, t)))
    }

    /// Recomputes every cut bit from its own bit and the bits of its adjacent
    /// gaps, and every gap bit from itself.
    pub fn map_local(&self, shape: Shape, fpt: impl Fn(bool, &[bool]) -> bool, fgap: impl Fn(bool) -> bool) -> Cells {
        let n = self.cuts.len();
        let pts = (0..n)
            .map(|i| {
                let nbrs: Vec<bool> = match shape {
                    Shape::Arc => {
                        let mut v = Vec::with_capacity(2);
                        if i > 0 {
                            v.push(self.gaps[i - 1]);
                        }
                        if i + 1 < n {
                            v.push(self.gaps[i]);
                        }
                        v
                    }
                    Shape::Circle => vec![self.gaps[(i + n - 1) % n], self.gaps[i]],
                };
                fpt(self.pts[i], &nbrs)
            })
            .collect();
        let gaps = self.gaps.iter().map(|&g| fgap(g)).collect();
        Cells { cuts: self.cuts.clone(), pts, gaps }.simplify(shape)
    }

    fn simplify(self, shape: Shape) -> Cells {
        let n = self.cuts.len();
        match shape {
            Shape::Arc => {
                let mut cuts = vec![self.cuts[0].clone()];
                let mut pts = vec![self.pts[0]];
                let mut gaps = Vec::new();
                for i in 1..n {
                    let removable = i + 1 < n && self.pts[i] == self.gaps[i - 1] && self.pts[i] == self.gaps[i];
                    if removable {
                        continue;
                    }
                    gaps.push(self.gaps[i - 1]);
                    cuts.push(self.cuts[i].clone());
                    pts.push(self.pts[i]);
                }
                Cells { cuts, pts, gaps }
            }
            Shape::Circle => {
                if n == 0 {
                    return self;
                }
                let keep: Vec<usize> = (0..n)
                    .filter(|&i| !(self.pts[i] == self.gaps[(i + n - 1) % n] && self.pts[i] == self.gaps[i]))
                    .collect();
                if keep.is_empty() {
                    return Cells { cuts: vec![], pts: vec![], gaps: vec![self.gaps[0]] };
                }
                Cells {
                    cuts: keep.iter().map(|&i| self.cuts[i].clone()).collect(),
                    pts: keep.iter().map(|&i| self.pts[i]).collect(),
                    gaps: keep.iter().map(|&i| self.gaps[i]).collect(),
                }
            }
        }
    }

    /// Rotates a circle description by `shift`.
    pub fn rotated(&self, len: &Q, shift: &Q) -> Cells {
        if self.cuts.is_empty() {
            return self.clone();
        }
        let mut items: Vec<(Q, bool, bool)> = (0..self.cuts.len())
            .map(|i| (wrap(&(&self.cuts[i] + shift), len), self.pts[i], self.gaps[i]))
            .collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        Cells {
            cuts: items.iter().map(|x| x.0.clone()).collect(),
            pts: items.iter().map(|x| x.1).collect(),
            gaps: items.iter().map(|x| x.2).collect(),
        }
    }

    pub fn runs(&self, shape: Shape, len: &Q) -> Pieces {
        match self.constant_value() {
            Some(true) => return Pieces::Full,
            Some(false) => return Pieces::Empty,
            None => {}
        }
        let n = self.cuts.len();
        // Atom 2i is the cut i, atom 2i+1 the gap after it.
        let atom_count = match shape {
            Shape::Arc => 2 * n - 1,
            Shape::Circle => 2 * n,
        };
        let bit = |a: usize| if a % 2 == 0 { self.pts[a / 2] } else { self.gaps[a / 2] };
        // Position of the left end of atom `a`, and of its right end.
        let start = |a: usize, lap: usize| -> Q {
            let base = self.cuts[a / 2].clone();
            base + Q::from_integer(lap.into()) * len
        };
        let end = |a: usize, lap: usize| -> Q {
            let base = if a % 2 == 0 {
                self.cuts[a / 2].clone()
            } else if a / 2 + 1 < n {
                self.cuts[a / 2 + 1].clone()
            } else {
                &self.cuts[0] + len
            };
            base + Q::from_integer(lap.into()) * len
        };
        let mut runs = Vec::new();
        let first = match shape {
            Shape::Arc => 0,
            Shape::Circle => (0..atom_count).find(|&a| !bit(a)).expect("non-constant") + 1,
        };
        let mut k = first;
        let stop = first + atom_count;
        while k < stop {
            let a = k % atom_count;
            if !bit(a) {
                k += 1;
                continue;
            }
            let lap_s = k / atom_count;
            let mut j = k;
            while j + 1 < stop && bit((j + 1) % atom_count) {
                j += 1;
            }
            let b = j % atom_count;
            let lap_e = j / atom_count;
            let mut lo = start(a, lap_s);
            let mut hi = end(b, lap_e);
            if shape == Shape::Circle && &lo >= len {
                lo -= len;
                hi -= len;
            }
            runs.push(Interval { lo, hi, lo_in: a % 2 == 0, hi_in: b % 2 == 0 });
            k = j + 1;
        }
        if shape == Shape::Circle {
            runs.sort_by(|x, y| x.lo.cmp(&y.lo));
        }
        Pieces::List(runs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn interval(lo: Q, hi: Q) -> impl Fn(&Q) -> bool {
        move |t: &Q| &lo < t && t < &hi
    }

    #[test]
    fn simplification_is_canonical() {
        let one = int(1);
        let a = Cells::from_predicate(Shape::Arc, &one, vec![ratio(1, 4), ratio(1, 2), ratio(3, 4)], interval(ratio(1, 4), ratio(3, 4)));
        let b = Cells::from_predicate(Shape::Arc, &one, vec![ratio(1, 4), ratio(3, 4)], interval(ratio(1, 4), ratio(3, 4)));
        assert_eq!(a, b);
        assert_eq!(a.cuts().len(), 4);
    }

    #[test]
    fn circle_run_wraps_through_zero() {
        let one = int(1);
        let c = Cells::from_predicate(Shape::Circle, &one, vec![ratio(3, 4), ratio(1, 4)], |t: &Q| t > &ratio(3, 4) || t < &ratio(1, 4));
        match c.runs(Shape::Circle, &one) {
            Pieces::List(r) => {
                assert_eq!(r.len(), 1);
                assert_eq!(r[0].lo, ratio(3, 4));
                assert_eq!(r[0].hi, ratio(5, 4));
                assert!(!r[0].lo_in && !r[0].hi_in);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn circle_minus_point_is_one_run_of_full_length() {
        let one = int(1);
        let c = Cells::from_predicate(Shape::Circle, &one, vec![ratio(1, 3)], |t: &Q| t != &ratio(1, 3));
        match c.runs(Shape::Circle, &one) {
            Pieces::List(r) => {
                assert_eq!(r, vec![Interval { lo: ratio(1, 3), hi: ratio(4, 3), lo_in: false, hi_in: false }]);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn rotation_preserves_membership() {
        let one = int(1);
        let c = Cells::from_predicate(Shape::Circle, &one, vec![ratio(1, 8), ratio(5, 8)], interval(ratio(1, 8), ratio(5, 8)));
        let r = c.rotated(&one, &ratio(1, 2));
        assert!(r.member(Shape::Circle, &one, &ratio(7, 8)));
        assert!(r.member(Shape::Circle, &one, &ratio(0, 1)));
        assert!(!r.member(Shape::Circle, &one, &ratio(5, 8)));
        assert!(!r.member(Shape::Circle, &one, &ratio(1, 8)));
    }
}
