//! Loading documents named on the command line.
//!
//! An argument is read as a file when one exists at that path, as inline
//! JSON when it starts with `{`, `[` or `"`, and otherwise as a bare string
//! (the text notation for open sets, e.g. `"0:(0,1/2)"`). Where a single
//! element or open set is expected, text notation is tried first, so that
//! `[0,1]` means the closed interval rather than a JSON array.

use crate::CliError;
use cuntzkit::geometry::json::{open_from_json, space_from_json};
use cuntzkit::geometry::{Location, OpenSet, SpaceRef};
use cuntzkit::json::{parse_document, JsonError};
use cuntzkit::lsc::json::lsc_from_json;
use cuntzkit::lsc::LscElement;
use cuntzkit::rational;
use serde_json::Value;
use std::path::Path;

/// A loaded document and a label for error messages.
pub struct Doc {
    pub value: Value,
    pub source: String,
}

impl Doc {
    pub fn err(&self, e: JsonError) -> CliError {
        CliError::Input(format!("{}: {}", self.source, e))
    }
}

pub fn load(arg: &str) -> Result<Doc, CliError> {
    let trimmed = arg.trim_start();
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{}: {}", arg, e)))?;
        let value = parse_document(&text).map_err(|e| CliError::Input(format!("{}: {}", arg, e)))?;
        Ok(Doc { value, source: arg.to_string() })
    } else if trimmed.starts_with(['{', '[', '"']) {
        let value = parse_document(arg).map_err(|e| CliError::Input(format!("<inline>: {}", e)))?;
        Ok(Doc { value, source: "<inline>".into() })
    } else if arg.ends_with(".json") {
        Err(CliError::Input(format!("{}: no such file", arg)))
    } else {
        Ok(Doc { value: Value::String(arg.to_string()), source: "<inline>".into() })
    }
}

pub fn space(arg: Option<&str>) -> Result<SpaceRef, CliError> {
    let arg = arg.ok_or_else(|| CliError::Usage("this command needs a space (-s FILE)".into()))?;
    let doc = load(arg)?;
    space_from_json(&doc.value, "").map_err(|e| doc.err(e))
}

/// An element, or the indicator of an open set given in text notation.
pub fn element_value(space: &SpaceRef, v: &Value, path: &str) -> Result<LscElement, JsonError> {
    match v {
        Value::String(_) => Ok(LscElement::indicator(&open_from_json(space, v, path)?)),
        _ => lsc_from_json(space, v, path),
    }
}

/// The open set `arg` denotes in text notation, unless it names a file.
fn text_open(space: &SpaceRef, arg: &str) -> Option<OpenSet> {
    if Path::new(arg).is_file() {
        return None;
    }
    OpenSet::parse(space, arg).ok()
}

pub fn element(space: &SpaceRef, arg: &str) -> Result<LscElement, CliError> {
    if let Some(u) = text_open(space, arg) {
        return Ok(LscElement::indicator(&u));
    }
    let doc = load(arg)?;
    element_value(space, &doc.value, "").map_err(|e| doc.err(e))
}

pub fn elements(space: &SpaceRef, arg: &str) -> Result<Vec<LscElement>, CliError> {
    let doc = load(arg)?;
    let items = doc.value.as_array().ok_or_else(|| doc.err(JsonError::new("", "expected an array of elements")))?;
    items.iter().enumerate().map(|(i, v)| element_value(space, v, &format!("[{}]", i)).map_err(|e| doc.err(e))).collect()
}

pub fn open(space: &SpaceRef, arg: &str) -> Result<OpenSet, CliError> {
    if let Some(u) = text_open(space, arg) {
        return Ok(u);
    }
    let doc = load(arg)?;
    open_from_json(space, &doc.value, "").map_err(|e| doc.err(e))
}

pub fn target(space: &SpaceRef, arg: Option<&str>) -> Result<OpenSet, CliError> {
    match arg {
        Some(a) => open(space, a),
        None => Ok(OpenSet::full(space)),
    }
}

pub fn opens(space: &SpaceRef, arg: &str) -> Result<Vec<OpenSet>, CliError> {
    let doc = load(arg)?;
    let items = doc.value.as_array().ok_or_else(|| doc.err(JsonError::new("", "expected an array of open sets")))?;
    items.iter().enumerate().map(|(i, v)| open_from_json(space, v, &format!("[{}]", i)).map_err(|e| doc.err(e))).collect()
}

/// `component:t`, or just `t` on component 0.
pub fn location(space: &SpaceRef, text: &str) -> Result<Location, CliError> {
    let bad = |m: String| CliError::Usage(format!("bad point {:?}: {}", text, m));
    let (i, t) = match text.split_once(':') {
        Some((i, t)) => (i.trim().parse::<usize>().map_err(|e| bad(e.to_string()))?, t),
        None => (0, text),
    };
    if i >= space.len() {
        return Err(bad(format!("component {} does not exist", i)));
    }
    let t = rational::parse(t).map_err(|e| bad(e.to_string()))?;
    Ok(Location::new(i, t))
}
