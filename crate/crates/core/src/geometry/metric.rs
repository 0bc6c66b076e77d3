//! Metric notions: diameters, distances between closed sets, and metric
//! neighbourhoods. Points of different components are at distance 2.

use super::cells::{wrap, Interval, Pieces};
use super::sets::{ClosedSet, OpenSet, PointSet};
use super::space::{circle_distance, Component};
use crate::rational::{max, min, two, Q};
use num_traits::{Signed, Zero};

fn endpoints(runs: &[Interval]) -> Vec<Q> {
    runs.iter().flat_map(|r| [r.lo.clone(), r.hi.clone()]).collect()
}

impl ClosedSet {
    /// Diameter of the part lying in component `i` (`None` if that part is
    /// empty).
    fn component_diameter(&self, i: usize) -> Option<Q> {
        let comp = self.space().component(i);
        match (comp, self.pieces(i)) {
            (_, Pieces::Empty) => None,
            (Component::Point, _) => Some(Q::zero()),
            (Component::Arc { length }, Pieces::Full) => Some(length.clone()),
            (Component::Circle { length }, Pieces::Full) => Some(length / two()),
            (Component::Arc { .. }, Pieces::List(runs)) => Some(&runs.last().unwrap().hi - &runs[0].lo),
            (Component::Circle { length }, Pieces::List(runs)) => {
                let part = self.0.restrict(i);
                let turned = part.rotate_component(i, &(length / two()));
                if !part.intersect(&turned).is_empty() {
                    return Some(length / two());
                }
                let ends = endpoints(&runs);
                let mut best = Q::zero();
                for s in &ends {
                    for t in &ends {
                        best = max(&best, &circle_distance(s, t, length));
                    }
                }
                Some(best)
            }
        }
    }

    /// Supremum of pairwise distances; the empty set has diameter 0.
    pub fn diameter(&self) -> Q {
        let per: Vec<Q> = (0..self.space().len()).filter_map(|i| self.component_diameter(i)).collect();
        let mut d = per.iter().fold(Q::zero(), |acc, x| max(&acc, x));
        if per.len() >= 2 {
            d = max(&d, &two());
        }
        d
    }

    /// Distance between two closed sets, `None` if either is empty.
    pub fn distance(&self, o: &ClosedSet) -> Option<Q> {
        let mine: Vec<usize> = (0..self.space().len()).filter(|&i| !matches!(self.pieces(i), Pieces::Empty)).collect();
        let theirs: Vec<usize> = (0..o.space().len()).filter(|&i| !matches!(o.pieces(i), Pieces::Empty)).collect();
        if mine.is_empty() || theirs.is_empty() {
            return None;
        }
        let mut best: Option<Q> = None;
        let mut offer = |d: Q| {
            best = Some(match &best {
                None => d,
                Some(b) => min(b, &d),
            })
        };
        for &i in &mine {
            for &j in &theirs {
                if i != j {
                    offer(two());
                    continue;
                }
                let a = self.0.restrict(i);
                let b = o.0.restrict(i);
                if !a.intersect(&b).is_empty() {
                    offer(Q::zero());
                    continue;
                }
                let comp = self.space().component(i);
                let (ra, rb) = match (a.pieces(i), b.pieces(i)) {
                    (Pieces::List(x), Pieces::List(y)) => (x, y),
                    _ => unreachable!("disjoint nonempty parts are proper"),
                };
                for s in endpoints(&ra) {
                    for t in endpoints(&rb) {
                        let d = match comp {
                            Component::Circle { length } => circle_distance(&s, &t, length),
                            _ => (&s - &t).abs(),
                        };
                        offer(d);
                    }
                }
            }
        }
        best
    }

    fn neighborhood(&self, delta: &Q, strict: bool) -> PointSet {
        let space = self.space().clone();
        if self.is_empty() {
            return PointSet::constant(&space, false);
        }
        let reaches_everything = if strict { delta > &two() } else { delta >= &two() };
        if reaches_everything {
            return PointSet::constant(&space, true);
        }
        let mut per: Vec<Vec<Interval>> = vec![Vec::new(); space.len()];
        let mut full = vec![false; space.len()];
        for (i, comp) in space.components().iter().enumerate() {
            let runs = match self.pieces(i) {
                Pieces::Empty => continue,
                Pieces::Full => {
                    full[i] = true;
                    continue;
                }
                Pieces::List(r) => r,
            };
            match comp {
                Component::Point => full[i] = true,
                Component::Arc { length } => {
                    for r in runs {
                        let lo = &r.lo - delta;
                        let hi = &r.hi + delta;
                        let (lo, lo_in) = if lo.is_negative() || (!strict && lo.is_zero()) { (Q::zero(), true) } else { (lo, !strict) };
                        let (hi, hi_in) = if &hi > length || (!strict && &hi == length) { (length.clone(), true) } else { (hi, !strict) };
                        per[i].push(Interval { lo, hi, lo_in, hi_in });
                    }
                }
                Component::Circle { length } => {
                    for r in runs {
                        let span = r.length() + delta * two();
                        let covers = if strict { &span > length } else { &span >= length };
                        if covers {
                            full[i] = true;
                            break;
                        }
                        let lo = wrap(&(&r.lo - delta), length);
                        let hi = &lo + span;
                        per[i].push(Interval { lo, hi, lo_in: !strict, hi_in: !strict });
                    }
                }
            }
        }
        PointSet::from_intervals(&space, &per, &full)
    }

    /// `{p : d(p, self) < delta}`.
    pub fn open_neighborhood(&self, delta: &Q) -> OpenSet {
        OpenSet(self.neighborhood(delta, true))
    }

    /// `{p : d(p, self) <= delta}`.
    pub fn closed_neighborhood(&self, delta: &Q) -> ClosedSet {
        ClosedSet(self.neighborhood(delta, false))
    }
}

impl OpenSet {
    pub fn diameter(&self) -> Q {
        self.closure().diameter()
    }

    /// `{p : d(p, X ∖ self) > delta}`: the set shrunk inward by `delta`.
    pub fn shrink(&self, delta: &Q) -> OpenSet {
        self.complement().closed_neighborhood(delta).complement()
    }
}

#[cfg(test)]
mod tests {
    use crate::geometry::{ClosedSet, Component, OpenSet, Space};
    use crate::rational::{int, ratio};

    #[test]
    fn diameter_examples() {
        let a = Space::unit_arc();
        assert_eq!(OpenSet::parse(&a, "(0,1/4) (1/2,3/4)").unwrap().diameter(), ratio(3, 4));
        let two_arcs = Space::new(vec![Component::Arc { length: int(1) }, Component::Arc { length: int(1) }]).unwrap();
        assert_eq!(OpenSet::parse(&two_arcs, "0:(0,1/4); 1:(0,1/4)").unwrap().diameter(), int(2));
        let c = Space::unit_circle();
        assert_eq!(OpenSet::parse(&c, "(0,3/4)").unwrap().diameter(), ratio(1, 2));
        assert_eq!(OpenSet::parse(&c, "(0,1/4) (1/2,5/8)").unwrap().diameter(), ratio(1, 2));
        assert_eq!(OpenSet::empty(&a).diameter(), int(0));
    }

    #[test]
    fn circle_diameter_without_antipodes_uses_endpoints() {
        let c = Space::unit_circle();
        // [0,1/8] and [3/8,7/16]: farthest pair is 0 and 7/16.
        let k = ClosedSet::parse(&c, "[0,1/8] [3/8,7/16]").unwrap();
        assert_eq!(k.diameter(), ratio(7, 16));
    }

    #[test]
    fn distances_and_neighborhoods() {
        let a = Space::unit_arc();
        let x = ClosedSet::parse(&a, "[0,1/4]").unwrap();
        let y = ClosedSet::parse(&a, "[1/2,1]").unwrap();
        assert_eq!(x.distance(&y), Some(ratio(1, 4)));
        assert_eq!(x.open_neighborhood(&ratio(1, 8)), OpenSet::parse(&a, "[0,3/8)").unwrap());
        assert_eq!(x.closed_neighborhood(&ratio(1, 8)), ClosedSet::parse(&a, "[0,3/8]").unwrap());
        let u = OpenSet::parse(&a, "(1/4,3/4)").unwrap();
        assert_eq!(u.shrink(&ratio(1, 8)), OpenSet::parse(&a, "(3/8,5/8)").unwrap());
        let c = Space::unit_circle();
        let p = ClosedSet::parse(&c, "[0,0]").unwrap();
        assert_eq!(p.open_neighborhood(&ratio(1, 2)), OpenSet::parse(&c, "(1/2,3/2)").unwrap());
        assert!(p.closed_neighborhood(&ratio(1, 2)).is_full());
    }
}
