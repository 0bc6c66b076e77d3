//! A compact text notation for sets, used by tests, examples and the CLI.
//!
//! `"0:[0,1/2) (3/4,1]; 1:full; 2:empty"` — parts separated by `;`, each
//! optionally prefixed by a component index (otherwise parts are numbered in
//! order). A part is `full`, `empty`, or whitespace-separated intervals with
//! `(`/`[` and `)`/`]` marking open and closed ends.

use super::cells::Interval;
use super::space::{Component, SpaceRef};
use num_traits::Signed;
use super::GeometryError;
use crate::rational;

pub(crate) fn parse_set_text(space: &SpaceRef, text: &str) -> Result<(Vec<Vec<Interval>>, Vec<bool>), GeometryError> {
    let mut per = vec![Vec::new(); space.len()];
    let mut full = vec![false; space.len()];
    let err = |m: String| GeometryError::Syntax(m);
    for (pos, part) in text.split(';').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (idx, body) = match part.split_once(':') {
            Some((k, rest)) if k.trim().chars().all(|c| c.is_ascii_digit()) && !k.trim().is_empty() => {
                (k.trim().parse::<usize>().map_err(|e| err(e.to_string()))?, rest.trim())
            }
            _ => (pos, part),
        };
        if idx >= space.len() {
            return Err(err(format!("component {} does not exist", idx)));
        }
        match body {
            "full" => {
                full[idx] = true;
                continue;
            }
            "empty" | "" => continue,
            _ => {}
        }
        let mut rest = body;
        while !rest.is_empty() {
            let open_ch = rest.chars().next().unwrap();
            let lo_in = match open_ch {
                '[' => true,
                '(' => false,
                c => return Err(err(format!("expected '(' or '[' but found {:?}", c))),
            };
            let close = rest.find([')', ']']).ok_or_else(|| err(format!("unterminated interval in {:?}", body)))?;
            let hi_in = rest[close..].starts_with(']');
            let inner = &rest[1..close];
            let (a, b) = inner.split_once(',').ok_or_else(|| err(format!("interval {:?} needs two endpoints", inner)))?;
            let lo = rational::parse(a).map_err(|e| err(e.to_string()))?;
            let hi = rational::parse(b).map_err(|e| err(e.to_string()))?;
            if lo > hi || (lo == hi && !(lo_in && hi_in)) {
                return Err(err(format!("interval {:?} is empty", inner)));
            }
            match space.component(idx) {
                Component::Point => return Err(err(format!("component {} is a point; use full or empty", idx))),
                Component::Arc { length } => {
                    if lo.is_negative() || &hi > length {
                        return Err(err(format!("interval {:?} leaves the arc", inner)));
                    }
                }
                Component::Circle { length } => {
                    if lo.is_negative() || hi > length * rational::two() || &hi - &lo > *length {
                        return Err(err(format!("interval {:?} is not a circle interval", inner)));
                    }
                }
            }
            per[idx].push(Interval { lo, hi, lo_in, hi_in });
            rest = rest[close + 1..].trim_start();
        }
    }
    Ok((per, full))
}

fn format_interval(iv: &Interval) -> String {
    format!(
        "{}{},{}{}",
        if iv.lo_in { '[' } else { '(' },
        rational::Show(&iv.lo),
        rational::Show(&iv.hi),
        if iv.hi_in { ']' } else { ')' }
    )
}

/// The notation accepted by [`parse_set_text`]; components that do not meet
/// the set are omitted, and the empty set prints as `empty`.
pub(crate) fn format_set_text(parts: impl Iterator<Item = (usize, super::Pieces)>) -> String {
    let mut out = Vec::new();
    for (i, pieces) in parts {
        match pieces {
            super::Pieces::Empty => {}
            super::Pieces::Full => out.push(format!("{}:full", i)),
            super::Pieces::List(ivs) => {
                let body: Vec<String> = ivs.iter().map(format_interval).collect();
                out.push(format!("{}:{}", i, body.join(" ")));
            }
        }
    }
    if out.is_empty() {
        "empty".to_string()
    } else {
        out.join("; ")
    }
}
