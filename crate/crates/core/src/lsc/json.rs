//! `{"levels":[OpenSet,...],"infinity":OpenSet}`; `infinity` may be omitted
//! on input and then means the empty set.

use super::LscElement;
use crate::geometry::json::{open_from_json, open_to_json};
use crate::geometry::{OpenSet, SpaceRef};
use crate::json::{decode, join, JsonError};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc {
    levels: Vec<Value>,
    #[serde(default)]
    infinity: Option<Value>,
}

pub fn lsc_to_json(f: &LscElement) -> Value {
    json!({
        "levels": f.levels().iter().map(open_to_json).collect::<Vec<_>>(),
        "infinity": open_to_json(f.infinity()),
    })
}

pub fn lsc_from_json(space: &SpaceRef, v: &Value, base: &str) -> Result<LscElement, JsonError> {
    let doc: ElementDoc = decode(v, base)?;
    let mut levels = Vec::with_capacity(doc.levels.len());
    for (i, l) in doc.levels.iter().enumerate() {
        levels.push(open_from_json(space, l, &join(base, &format!("levels[{}]", i)))?);
    }
    let infinity = match &doc.infinity {
        Some(v) => open_from_json(space, v, &join(base, "infinity"))?,
        None => OpenSet::empty(space),
    };
    LscElement::new(levels, infinity).map_err(|e| {
        let path = match e {
            super::LscError::NotDecreasing(i) => join(base, &format!("levels[{}]", i - 1)),
            super::LscError::InfinityOutsideLevels => join(base, "infinity"),
            _ => base.to_string(),
        };
        JsonError::new(path, e.to_string())
    })
}
