//! The Jiang–Su semigroup `Z = (0, ∞] ⊔ N` and its variant `Z′ = Z ∪ {1''}`.
//!
//! `Z` has a compact copy of every natural number `n` and a "soft" copy
//! `n'` inside `(0, ∞]`. Soft and compact elements compare through their
//! values, with the compact `n` sitting just above its soft twin:
//!
//! * soft `x ≤` compact `n` iff `x ≤ n`;
//! * compact `n ≤` soft `x` iff `n < x`;
//! * soft `x +` compact `n` is soft `x + n` (soft absorbs compact).
//!
//! The order is total. An element is compact iff it is in `N`; way-below is
//! `≤` when either side is compact, and `x < y` between soft elements.
//!
//! `Z′` adds a compact `1''` incomparable with `1`, with `1'' + x = 1 + x`
//! for `x ≠ 0` and `k 1'' = k` for `k ≥ 2`. The source example leaves the
//! order between `1''` and the soft part open beyond `1, 1'' ≤ 1.5`; here
//! soft `x < 1''` iff `x < 1`, `1'' < ` soft `x` iff `x > 1`, and soft `1`
//! is incomparable with `1''` (the least completion making `1, 1'' ≤ 1.5`
//! true).

use super::CuModel;
use crate::json::{rational_at, JsonError};
use crate::rational::{format, int, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

/// An element of `Z`. `Soft(None)` is `∞`; soft values are positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ZElem {
    Compact(u64),
    Soft(Option<Q>),
}

impl ZElem {
    pub fn soft(q: Q) -> ZElem {
        assert!(q > Q::zero(), "soft elements of Z are positive");
        ZElem::Soft(Some(q))
    }

    pub fn infinity() -> ZElem {
        ZElem::Soft(None)
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, ZElem::Compact(_))
    }

    /// The position on the half line (`None` for `∞`).
    pub fn value(&self) -> Option<Q> {
        match self {
            ZElem::Compact(n) => Some(Q::from_integer(BigInt::from(*n))),
            ZElem::Soft(v) => v.clone(),
        }
    }
}

/// Text for rationals with a terminating decimal expansion, such as `0.5`
/// and `1.1`; other values print as `p/q`.
pub(crate) fn decimal(q: &Q) -> String {
    let mut d = q.denom().clone();
    let mut digits = 0usize;
    let (two, five, ten) = (BigInt::from(2), BigInt::from(5), BigInt::from(10));
    while d.is_multiple_of(&two) || d.is_multiple_of(&five) {
        if d.is_multiple_of(&ten) {
            d /= &ten;
        } else if d.is_multiple_of(&two) {
            d /= &two;
        } else {
            d /= &five;
        }
        digits += 1;
    }
    if d != BigInt::from(1) {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let digits = digits.max(1);
    let scaled = q * Q::from_integer(num_traits::pow(BigInt::from(10), digits));
    let n = scaled.to_integer();
    let s = n.to_string();
    let s = format!("{:0>width$}", s, width = digits + 1);
    let (whole, frac) = s.split_at(s.len() - digits);
    let frac = frac.trim_end_matches('0');
    format!("{}.{}", whole, if frac.is_empty() { "0" } else { frac })
}

/// The semigroup `Z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Z;

impl Z {
    /// Soft elements strictly between the bounds implied by `lo ≪ t ≪ hi`
    /// exist.
    fn soft_between(&self, lower: Option<Q>, upper: Option<(Q, bool)>) -> bool {
        match (lower, upper) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(l), Some((u, _))) => l < u,
        }
    }

    /// Lower bound for a soft `t` with `lo ≪ t`: `t > value(lo)`, or no
    /// such `t` when `lo = ∞`.
    fn soft_lower(lo: &ZElem) -> Option<Q> {
        lo.value()
    }

    /// Upper bound for a soft `t` with `t ≪ hi`: `t ≤ n` below a compact
    /// `n`, `t < y` below a soft `y`, unbounded below `∞`.
    fn soft_upper(hi: &ZElem) -> Option<(Q, bool)> {
        match hi {
            ZElem::Compact(n) => Some((int(*n as i64), true)),
            ZElem::Soft(Some(y)) => Some((y.clone(), false)),
            ZElem::Soft(None) => None,
        }
    }

    fn partitions(n: u64, largest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<ZElem>>) {
        if n == 0 {
            out.push(prefix.iter().map(|k| ZElem::Compact(*k)).collect());
            return;
        }
        for k in (1..=largest.min(n)).rev() {
            prefix.push(k);
            Z::partitions(n - k, k, prefix, out);
            prefix.pop();
        }
    }
}

/// Partitions are only listed for small totals.
const MAX_PARTITION: u64 = 24;

impl CuModel for Z {
    type Elem = ZElem;

    fn name(&self) -> String {
        "z".to_string()
    }

    fn zero(&self) -> ZElem {
        ZElem::Compact(0)
    }

    fn leq(&self, a: &ZElem, b: &ZElem) -> bool {
        match (a, b) {
            (ZElem::Compact(m), ZElem::Compact(n)) => m <= n,
            (ZElem::Soft(_), ZElem::Soft(None)) => true,
            (ZElem::Soft(None), ZElem::Soft(Some(_))) => false,
            (ZElem::Soft(Some(x)), ZElem::Soft(Some(y))) => x <= y,
            (ZElem::Soft(x), ZElem::Compact(n)) => x.as_ref().is_some_and(|x| *x <= int(*n as i64)),
            (ZElem::Compact(n), ZElem::Soft(x)) => x.as_ref().is_none_or(|x| int(*n as i64) < *x),
        }
    }

    fn add(&self, a: &ZElem, b: &ZElem) -> ZElem {
        match (a, b) {
            (ZElem::Compact(m), ZElem::Compact(n)) => ZElem::Compact(m + n),
            _ => match (a.value(), b.value()) {
                (Some(x), Some(y)) => ZElem::Soft(Some(x + y)),
                _ => ZElem::Soft(None),
            },
        }
    }

    fn way_below(&self, a: &ZElem, b: &ZElem) -> bool {
        match (a, b) {
            (ZElem::Soft(x), ZElem::Soft(y)) => match (x, y) {
                (None, _) => false,
                (Some(_), None) => true,
                (Some(x), Some(y)) => x < y,
            },
            _ => self.leq(a, b),
        }
    }

    fn join(&self, a: &ZElem, b: &ZElem) -> Option<ZElem> {
        Some(if self.leq(a, b) { b.clone() } else { a.clone() })
    }

    fn meet(&self, a: &ZElem, b: &ZElem) -> Option<ZElem> {
        Some(if self.leq(a, b) { a.clone() } else { b.clone() })
    }

    fn lattice_ordered(&self) -> bool {
        true
    }

    fn midpoint(&self, a: &ZElem, b: &ZElem) -> Option<ZElem> {
        let m = (a.value()? + b.value()?) / int(2);
        (m > Q::zero()).then(|| ZElem::soft(m))
    }

    fn exact_between(&self, lo: &ZElem, hi: &ZElem) -> Option<Vec<ZElem>> {
        if self.soft_between(Z::soft_lower(lo), Z::soft_upper(hi)) {
            return None;
        }
        if lo.value().is_none() {
            return Some(vec![]);
        }
        let top = hi.value()?.floor().to_integer().to_u64()?;
        let out = (0..=top)
            .map(ZElem::Compact)
            .filter(|k| self.way_below(lo, k) && self.way_below(k, hi))
            .collect();
        Some(out)
    }

    fn decompositions(&self, s: &ZElem) -> Option<Vec<Vec<ZElem>>> {
        match s {
            ZElem::Compact(n) if *n <= MAX_PARTITION => {
                let mut out = Vec::new();
                Z::partitions(*n, *n, &mut vec![], &mut out);
                Some(out)
            }
            _ => None,
        }
    }

    fn encode(&self, a: &ZElem) -> Value {
        match a {
            ZElem::Compact(n) => json!(n),
            ZElem::Soft(None) => json!("inf"),
            ZElem::Soft(Some(q)) => json!(format(q)),
        }
    }

    fn decode(&self, v: &Value, path: &str) -> Result<ZElem, JsonError> {
        match v {
            Value::Number(n) => n
                .as_u64()
                .map(ZElem::Compact)
                .ok_or_else(|| JsonError::new(path, "compact elements are natural numbers")),
            Value::String(s) if s == "inf" || s == "∞" => Ok(ZElem::infinity()),
            Value::String(s) => {
                let q = rational_at(s, path)?;
                if q > Q::zero() {
                    Ok(ZElem::soft(q))
                } else {
                    Err(JsonError::new(path, "soft elements are positive"))
                }
            }
            _ => Err(JsonError::new(path, "expected a natural number (compact) or a string (soft)")),
        }
    }

    fn show(&self, a: &ZElem) -> String {
        match a {
            ZElem::Compact(n) => n.to_string(),
            ZElem::Soft(None) => "inf".to_string(),
            ZElem::Soft(Some(q)) => decimal(q),
        }
    }
}

/// An element of `Z′`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ZPrimeElem {
    Z(ZElem),
    /// The extra compact element `1''`.
    OnePP,
}

impl ZPrimeElem {
    pub fn compact(n: u64) -> ZPrimeElem {
        ZPrimeElem::Z(ZElem::Compact(n))
    }

    pub fn soft(q: Q) -> ZPrimeElem {
        ZPrimeElem::Z(ZElem::soft(q))
    }

    fn value(&self) -> Option<Q> {
        match self {
            ZPrimeElem::Z(z) => z.value(),
            ZPrimeElem::OnePP => Some(int(1)),
        }
    }
}

/// The semigroup `Z′ = Z ∪ {1''}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZPrime;

impl ZPrime {
    fn extend(&self, prefix: &mut Vec<ZPrimeElem>, left: u64, target: &ZPrimeElem, atoms: &[ZPrimeElem], out: &mut Vec<Vec<ZPrimeElem>>) {
        if left == 0 {
            if self.sum(prefix) == *target {
                out.push(prefix.clone());
            }
            return;
        }
        for a in atoms {
            let v = a.value().and_then(|v| v.to_integer().to_u64()).unwrap_or(u64::MAX);
            if v > left || prefix.last().is_some_and(|p| !self.leq(a, p)) {
                continue;
            }
            prefix.push(a.clone());
            self.extend(prefix, left - v, target, atoms, out);
            prefix.pop();
        }
    }
}

impl CuModel for ZPrime {
    type Elem = ZPrimeElem;

    fn name(&self) -> String {
        "zprime".to_string()
    }

    fn zero(&self) -> ZPrimeElem {
        ZPrimeElem::compact(0)
    }

    fn leq(&self, a: &ZPrimeElem, b: &ZPrimeElem) -> bool {
        use ZPrimeElem::{OnePP, Z as E};
        match (a, b) {
            (E(x), E(y)) => Z.leq(x, y),
            (OnePP, OnePP) => true,
            (OnePP, E(ZElem::Compact(n))) => *n >= 2,
            (OnePP, E(ZElem::Soft(x))) => x.as_ref().is_none_or(|x| *x > int(1)),
            (E(ZElem::Compact(n)), OnePP) => *n == 0,
            (E(ZElem::Soft(x)), OnePP) => x.as_ref().is_some_and(|x| *x < int(1)),
        }
    }

    fn add(&self, a: &ZPrimeElem, b: &ZPrimeElem) -> ZPrimeElem {
        use ZPrimeElem::{OnePP, Z as E};
        match (a, b) {
            (E(x), E(y)) => E(Z.add(x, y)),
            (OnePP, OnePP) => ZPrimeElem::compact(2),
            (OnePP, E(x)) | (E(x), OnePP) => {
                if *x == ZElem::Compact(0) {
                    OnePP
                } else {
                    E(Z.add(&ZElem::Compact(1), x))
                }
            }
        }
    }

    fn way_below(&self, a: &ZPrimeElem, b: &ZPrimeElem) -> bool {
        match (a, b) {
            (ZPrimeElem::Z(x), ZPrimeElem::Z(y)) => Z.way_below(x, y),
            _ => self.leq(a, b),
        }
    }

    fn midpoint(&self, a: &ZPrimeElem, b: &ZPrimeElem) -> Option<ZPrimeElem> {
        let m = (a.value()? + b.value()?) / int(2);
        (m > Q::zero()).then(|| ZPrimeElem::soft(m))
    }

    fn exact_between(&self, lo: &ZPrimeElem, hi: &ZPrimeElem) -> Option<Vec<ZPrimeElem>> {
        // Soft `t` with `lo ≪ t` means `t > value(lo)` in every case, and
        // `t ≪ 1''` means `t < 1`.
        let upper = match hi {
            ZPrimeElem::Z(z) => Z::soft_upper(z),
            ZPrimeElem::OnePP => Some((int(1), false)),
        };
        if Z.soft_between(lo.value(), upper) {
            return None;
        }
        if lo.value().is_none() {
            return Some(vec![]);
        }
        let top = hi.value()?.floor().to_integer().to_u64()?;
        let out = (0..=top)
            .map(ZPrimeElem::compact)
            .chain(std::iter::once(ZPrimeElem::OnePP))
            .filter(|k| self.way_below(lo, k) && self.way_below(k, hi))
            .collect();
        Some(out)
    }

    fn decompositions(&self, s: &ZPrimeElem) -> Option<Vec<Vec<ZPrimeElem>>> {
        let n = match s {
            ZPrimeElem::OnePP => 1,
            ZPrimeElem::Z(ZElem::Compact(n)) if *n <= MAX_PARTITION => *n,
            _ => return None,
        };
        let mut atoms: Vec<ZPrimeElem> = (1..=n).rev().map(ZPrimeElem::compact).collect();
        atoms.push(ZPrimeElem::OnePP);
        let mut out = Vec::new();
        self.extend(&mut vec![], n, s, &atoms, &mut out);
        Some(out)
    }

    fn encode(&self, a: &ZPrimeElem) -> Value {
        match a {
            ZPrimeElem::Z(z) => Z.encode(z),
            ZPrimeElem::OnePP => json!("1''"),
        }
    }

    fn decode(&self, v: &Value, path: &str) -> Result<ZPrimeElem, JsonError> {
        match v {
            Value::String(s) if s == "1''" || s == "1\"" => Ok(ZPrimeElem::OnePP),
            _ => Z.decode(v, path).map(ZPrimeElem::Z),
        }
    }

    fn show(&self, a: &ZPrimeElem) -> String {
        match a {
            ZPrimeElem::Z(z) => Z.show(z),
            ZPrimeElem::OnePP => "1''".to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn decimals() {
        assert_eq!(decimal(&ratio(1, 2)), "0.5");
        assert_eq!(decimal(&ratio(11, 10)), "1.1");
        assert_eq!(decimal(&int(1)), "1.0");
        assert_eq!(decimal(&ratio(3, 2)), "1.5");
        assert_eq!(decimal(&ratio(1, 3)), "1/3");
        assert_eq!(decimal(&ratio(1, 40)), "0.025");
    }

    #[test]
    fn z_order_and_sum() {
        let one = ZElem::Compact(1);
        let soft_one = ZElem::soft(int(1));
        assert!(Z.leq(&soft_one, &one));
        assert!(!Z.leq(&one, &soft_one));
        assert!(Z.leq(&one, &ZElem::soft(ratio(11, 10))));
        assert_eq!(Z.add(&ZElem::soft(ratio(1, 2)), &one), ZElem::soft(ratio(3, 2)));
        assert!(Z.way_below(&one, &one));
        assert!(!Z.way_below(&soft_one, &soft_one));
        assert!(Z.way_below(&soft_one, &one));
        assert!(!Z.way_below(&ZElem::infinity(), &ZElem::infinity()));
        assert_eq!(Z.exact_between(&one, &one), Some(vec![one.clone()]));
        assert_eq!(Z.exact_between(&one, &ZElem::soft(ratio(11, 10))), None);
        assert_eq!(Z.decompositions(&ZElem::Compact(3)).unwrap().len(), 3);
        assert_eq!(Z.decompositions(&one), Some(vec![vec![one.clone()]]));
    }

    #[test]
    fn zprime_atom() {
        let pp = ZPrimeElem::OnePP;
        let one = ZPrimeElem::compact(1);
        assert!(!ZPrime.leq(&pp, &one) && !ZPrime.leq(&one, &pp));
        assert_eq!(ZPrime.add(&one, &pp), ZPrimeElem::compact(2));
        assert_eq!(ZPrime.add(&pp, &pp), ZPrimeElem::compact(2));
        let x = ZPrimeElem::soft(ratio(1, 2));
        assert_eq!(ZPrime.add(&pp, &x), ZPrime.add(&one, &x));
        let mid = ZPrimeElem::soft(ratio(3, 2));
        assert!(ZPrime.leq(&one, &mid) && ZPrime.leq(&pp, &mid));
        assert!(ZPrime.way_below(&pp, &pp));
        let soft_one = ZPrimeElem::soft(int(1));
        assert!(!ZPrime.leq(&soft_one, &pp) && !ZPrime.leq(&pp, &soft_one));
        let two = ZPrimeElem::compact(2);
        let ds = ZPrime.decompositions(&two).unwrap();
        assert_eq!(ds, vec![vec![two.clone()], vec![one.clone(), one.clone()], vec![pp.clone(), pp.clone()]]);
        assert_eq!(ZPrime.decode(&json!("1''"), "").unwrap(), pp);
        assert_eq!(ZPrime.show(&pp), "1''");
    }
}
