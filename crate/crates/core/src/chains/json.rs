//! `{"kind":"chain"|"almost_chain","pieces":[OpenSet,...],"mesh":"p/q","refines":[int,...]}`

use super::{ChainKind, ChainWitness, SearchReport};
use crate::geometry::json::{open_from_json, open_to_json};
use crate::geometry::SpaceRef;
use crate::json::{decode, join, rational_at, JsonError};
use crate::rational::format;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    kind: String,
    pieces: Vec<Value>,
    mesh: String,
    #[serde(default)]
    refines: Option<Vec<usize>>,
}

pub fn witness_to_json(w: &ChainWitness) -> Value {
    json!({
        "kind": w.kind.name(),
        "pieces": w.pieces.iter().map(open_to_json).collect::<Vec<_>>(),
        "mesh": format(&w.mesh),
        "refines": w.refines,
    })
}

/// Decodes a witness; a missing `refines` means every piece refines cover
/// set 0.
pub fn witness_from_json(space: &SpaceRef, v: &Value, base: &str) -> Result<ChainWitness, JsonError> {
    let doc: WitnessDoc = decode(v, base)?;
    let kind = match doc.kind.as_str() {
        "chain" => ChainKind::Chain,
        "almost_chain" => ChainKind::AlmostChain,
        other => return Err(JsonError::new(join(base, "kind"), format!("unknown kind {:?}", other))),
    };
    let mut pieces = Vec::with_capacity(doc.pieces.len());
    for (i, p) in doc.pieces.iter().enumerate() {
        pieces.push(open_from_json(space, p, &join(base, &format!("pieces[{}]", i)))?);
    }
    let mesh = rational_at(&doc.mesh, &join(base, "mesh"))?;
    let refines = doc.refines.unwrap_or_else(|| vec![0; pieces.len()]);
    Ok(ChainWitness { kind, pieces, mesh, refines })
}

pub fn search_to_json(r: &SearchReport) -> Value {
    json!({
        "component": r.component,
        "eps": format(&r.eps),
        "found": r.found.as_ref().map(witness_to_json),
        "depths": r.logs.iter().map(|l| json!({
            "depth": l.depth,
            "links": l.links,
            "states": l.states,
            "found": l.found,
        })).collect::<Vec<_>>(),
    })
}
