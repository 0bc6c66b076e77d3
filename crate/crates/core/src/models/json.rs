//! Instance and report documents for the property checkers.
//!
//! Instances:
//!
//! * refinable sums: `{"x": [E, …], "x_prime": [E, …]}`
//! * almost ordered sums: `{"x": [E, …]}`
//! * weak chainability: `{"x": E, "y": E, "parts": [E, …]}`
//!
//! where `E` is the model's element encoding. Extra keys (such as `space`
//! or `model`) are ignored here; the front end reads them.

use super::{
    AlmostOrderedWitness, Bounds, CuModel, RefinableInstance, RefinableWitness, Report, WeakChainInstance,
    WeakChainWitness,
};
use crate::json::{join, JsonError};
use serde_json::{json, Map, Value};

fn object<'a>(v: &'a Value, base: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object().ok_or_else(|| JsonError::new(base, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, base: &str) -> Result<&'a Value, JsonError> {
    obj.get(key).ok_or_else(|| JsonError::new(join(base, key), "missing field"))
}

pub fn element_at<M: CuModel>(m: &M, v: &Value, path: &str) -> Result<M::Elem, JsonError> {
    m.decode(v, path)
}

pub fn elements_at<M: CuModel>(m: &M, v: &Value, path: &str) -> Result<Vec<M::Elem>, JsonError> {
    let items = v.as_array().ok_or_else(|| JsonError::new(path, "expected an array"))?;
    items.iter().enumerate().map(|(i, e)| m.decode(e, &format!("{}[{}]", path, i))).collect()
}

fn encode_all<M: CuModel>(m: &M, xs: &[M::Elem]) -> Value {
    Value::Array(xs.iter().map(|x| m.encode(x)).collect())
}

pub fn refinable_instance_from_json<M: CuModel>(m: &M, v: &Value, base: &str) -> Result<RefinableInstance<M::Elem>, JsonError> {
    let obj = object(v, base)?;
    let xs = elements_at(m, field(obj, "x", base)?, &join(base, "x"))?;
    let primes = elements_at(m, field(obj, "x_prime", base)?, &join(base, "x_prime"))?;
    if primes.len() != xs.len() {
        return Err(JsonError::new(join(base, "x_prime"), format!("expected {} elements, found {}", xs.len(), primes.len())));
    }
    Ok(RefinableInstance { xs, primes })
}

pub fn refinable_instance_to_json<M: CuModel>(m: &M, inst: &RefinableInstance<M::Elem>) -> Value {
    json!({"x": encode_all(m, &inst.xs), "x_prime": encode_all(m, &inst.primes)})
}

pub fn almost_ordered_instance_from_json<M: CuModel>(m: &M, v: &Value, base: &str) -> Result<Vec<M::Elem>, JsonError> {
    let obj = object(v, base)?;
    elements_at(m, field(obj, "x", base)?, &join(base, "x"))
}

pub fn weak_chain_instance_from_json<M: CuModel>(m: &M, v: &Value, base: &str) -> Result<WeakChainInstance<M::Elem>, JsonError> {
    let obj = object(v, base)?;
    Ok(WeakChainInstance {
        x: m.decode(field(obj, "x", base)?, &join(base, "x"))?,
        y: m.decode(field(obj, "y", base)?, &join(base, "y"))?,
        parts: elements_at(m, field(obj, "parts", base)?, &join(base, "parts"))?,
    })
}

pub fn weak_chain_instance_to_json<M: CuModel>(m: &M, inst: &WeakChainInstance<M::Elem>) -> Value {
    json!({"x": m.encode(&inst.x), "y": m.encode(&inst.y), "parts": encode_all(m, &inst.parts)})
}

pub fn refinable_witness_to_json<M: CuModel>(m: &M, w: &RefinableWitness<M::Elem>) -> Value {
    json!({"sequences": w.sequences.iter().map(|s| encode_all(m, s)).collect::<Vec<_>>()})
}

pub fn refinable_witness_from_json<M: CuModel>(m: &M, v: &Value, base: &str) -> Result<RefinableWitness<M::Elem>, JsonError> {
    let obj = object(v, base)?;
    let path = join(base, "sequences");
    let seqs = field(obj, "sequences", base)?.as_array().ok_or_else(|| JsonError::new(&path, "expected an array"))?;
    let sequences =
        seqs.iter().enumerate().map(|(k, s)| elements_at(m, s, &format!("{}[{}]", path, k))).collect::<Result<_, _>>()?;
    Ok(RefinableWitness { sequences })
}

pub fn almost_ordered_witness_to_json<M: CuModel>(m: &M, w: &AlmostOrderedWitness<M::Elem>) -> Value {
    json!({"y": encode_all(m, &w.ys)})
}

pub fn almost_ordered_witness_from_json<M: CuModel>(m: &M, v: &Value, base: &str) -> Result<AlmostOrderedWitness<M::Elem>, JsonError> {
    let obj = object(v, base)?;
    Ok(AlmostOrderedWitness { ys: elements_at(m, field(obj, "y", base)?, &join(base, "y"))? })
}

pub fn weak_chain_witness_to_json<M: CuModel>(m: &M, w: &WeakChainWitness<M::Elem>) -> Value {
    json!({"x_prime": m.encode(&w.x_prime), "z": encode_all(m, &w.zs)})
}

pub fn weak_chain_witness_from_json<M: CuModel>(m: &M, v: &Value, base: &str) -> Result<WeakChainWitness<M::Elem>, JsonError> {
    let obj = object(v, base)?;
    Ok(WeakChainWitness {
        x_prime: m.decode(field(obj, "x_prime", base)?, &join(base, "x_prime"))?,
        zs: elements_at(m, field(obj, "z", base)?, &join(base, "z"))?,
    })
}

pub fn bounds_to_json(b: &Bounds) -> Value {
    json!({
        "depth": b.depth,
        "max_len": b.max_len,
        "budget": b.budget,
        "cap": b.cap,
        "max_candidates": b.max_candidates,
        "chain_depth": b.chain_depth,
    })
}

/// `{"property", "model", "verdict", "witness", "log", "bounds"}`; the
/// witness is `null` unless the verdict is "witness".
pub fn report_to_json<W>(property: &str, model: &str, report: &Report<W>, bounds: &Bounds, witness: impl Fn(&W) -> Value) -> Value {
    json!({
        "property": property,
        "model": model,
        "verdict": report.verdict.name(),
        "witness": report.verdict.witness().map(witness),
        "log": report.log,
        "bounds": bounds_to_json(bounds),
    })
}
