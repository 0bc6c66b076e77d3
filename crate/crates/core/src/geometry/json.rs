//! JSON encodings of spaces and sets.
//!
//! ```text
//! space:   {"components":[{"kind":"arc","length":"1/1"},{"kind":"point"}]}
//! open:    {"sets":[[["a","b",incl_l,incl_r],...],...],"full_flags":[bool,...]}
//! closed:  {"sets":[[["a","b"],...],...],"full_flags":[bool,...]}
//! open (text form): "0:(0,1/2) (3/4,1]; 1:full"
//! ```
//!
//! `full_flags[i]` is set exactly when component `i` lies entirely in the
//! set; such components carry no intervals. Encoding then decoding is the
//! identity on canonical sets.

use super::cells::{Interval, Pieces};
use super::sets::{ClosedSet, OpenSet};
use super::space::{Component, Space, SpaceRef};
use crate::json::{decode, join, rational_at, JsonError};
use crate::rational::format;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    kind: String,
    #[serde(default)]
    length: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    components: Vec<ComponentDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OpenDoc {
    sets: Vec<Vec<(String, String, bool, bool)>>,
    #[serde(default)]
    full_flags: Vec<bool>,
}

pub fn space_to_json(space: &Space) -> Value {
    let comps: Vec<Value> = space
        .components()
        .iter()
        .map(|c| match c.length() {
            Some(l) => json!({"kind": c.kind_name(), "length": format(l)}),
            None => json!({"kind": c.kind_name()}),
        })
        .collect();
    json!({ "components": comps })
}

pub fn space_from_json(v: &Value, base: &str) -> Result<SpaceRef, JsonError> {
    let doc: SpaceDoc = decode(v, base)?;
    let mut comps = Vec::with_capacity(doc.components.len());
    for (i, c) in doc.components.iter().enumerate() {
        let here = join(base, &format!("components[{}]", i));
        let length = |c: &ComponentDoc| -> Result<_, JsonError> {
            let text = c.length.as_ref().ok_or_else(|| JsonError::new(join(&here, "length"), "missing length"))?;
            rational_at(text, &join(&here, "length"))
        };
        let comp = match c.kind.as_str() {
            "arc" => Component::Arc { length: length(c)? },
            "circle" => Component::Circle { length: length(c)? },
            "point" => {
                if c.length.is_some() {
                    return Err(JsonError::new(join(&here, "length"), "point components have no length"));
                }
                Component::Point
            }
            other => return Err(JsonError::new(join(&here, "kind"), format!("unknown component kind {:?}", other))),
        };
        comps.push(comp);
    }
    Space::new(comps).map_err(|e| JsonError::new(join(base, "components"), e.to_string()))
}

fn component_entries(pieces: Pieces, closed: bool) -> (Vec<Value>, bool) {
    match pieces {
        Pieces::Empty => (vec![], false),
        Pieces::Full => (vec![], true),
        Pieces::List(runs) => (
            runs.iter()
                .map(|r| {
                    if closed {
                        json!([format(&r.lo), format(&r.hi)])
                    } else {
                        json!([format(&r.lo), format(&r.hi), r.lo_in, r.hi_in])
                    }
                })
                .collect(),
            false,
        ),
    }
}

pub fn open_to_json(u: &OpenSet) -> Value {
    let (sets, flags): (Vec<Value>, Vec<bool>) = (0..u.space().len())
        .map(|i| {
            let (v, f) = component_entries(u.pieces(i), false);
            (Value::Array(v), f)
        })
        .unzip();
    json!({"sets": sets, "full_flags": flags})
}

pub fn closed_to_json(c: &ClosedSet) -> Value {
    let (sets, flags): (Vec<Value>, Vec<bool>) = (0..c.space().len())
        .map(|i| {
            let (v, f) = component_entries(c.pieces(i), true);
            (Value::Array(v), f)
        })
        .unzip();
    json!({"sets": sets, "full_flags": flags})
}

/// Decodes an open set from its object form or from the text notation
/// (`"0:(0,1/2) [3/4,1]; 1:full"`).
pub fn open_from_json(space: &SpaceRef, v: &Value, base: &str) -> Result<OpenSet, JsonError> {
    if let Value::String(text) = v {
        return OpenSet::parse(space, text).map_err(|e| JsonError::new(base, e.to_string()));
    }
    let doc: OpenDoc = decode(v, base)?;
    let mut per: Vec<Vec<Interval>> = Vec::with_capacity(doc.sets.len());
    for (i, comp) in doc.sets.iter().enumerate() {
        let mut ivs = Vec::with_capacity(comp.len());
        for (j, (a, b, l, r)) in comp.iter().enumerate() {
            let here = join(base, &format!("sets[{}][{}]", i, j));
            ivs.push(Interval {
                lo: rational_at(a, &join(&here, "[0]"))?,
                hi: rational_at(b, &join(&here, "[1]"))?,
                lo_in: *l,
                hi_in: *r,
            });
        }
        per.push(ivs);
    }
    OpenSet::normalize(space, &per, &doc.full_flags).map_err(|e| {
        let path = match &e {
            super::GeometryError::MalformedInterval { component, .. } => join(base, &format!("sets[{}]", component)),
            super::GeometryError::ComponentCount { .. } => join(base, "sets"),
            _ => base.to_string(),
        };
        JsonError::new(path, e.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn space_round_trip() {
        let s = Space::new(vec![Component::Arc { length: int(1) }, Component::Circle { length: int(2) }, Component::Point]).unwrap();
        let v = space_to_json(&s);
        assert_eq!(v, json!({"components":[{"kind":"arc","length":"1/1"},{"kind":"circle","length":"2/1"},{"kind":"point"}]}));
        assert_eq!(*space_from_json(&v, "").unwrap(), *s);
    }

    #[test]
    fn open_set_round_trip_and_errors() {
        let s = Space::new(vec![Component::Arc { length: int(1) }, Component::Circle { length: int(1) }, Component::Point]).unwrap();
        let u = OpenSet::parse(&s, "0:[0,1/3) (1/2,1]; 1:(3/4,5/4); 2:full").unwrap();
        let v = open_to_json(&u);
        assert_eq!(
            v,
            json!({"sets":[[["0/1","1/3",true,false],["1/2","1/1",false,true]],[["3/4","5/4",false,false]],[]],"full_flags":[false,false,true]})
        );
        assert_eq!(open_from_json(&s, &v, "").unwrap(), u);
        let bad = json!({"sets":[[["0/1","x",false,false]],[],[]],"full_flags":[false,false,false]});
        assert_eq!(open_from_json(&s, &bad, "f").unwrap_err().path, "f.sets[0][0][1]");
        let bad = json!({"sets":[[["1/2","1/4",false,false]],[],[]]});
        assert_eq!(open_from_json(&s, &bad, "").unwrap_err().path, "sets[0]");
    }
}
