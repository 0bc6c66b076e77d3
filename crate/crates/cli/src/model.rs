//! Model selectors: `lsc`, `z`, `zprime`, `nbar`, `table:<path>`, and the
//! direct sum `a+b` of two of these.
//!
//! Models have different element types, so a command is written once as a
//! [`ModelTask`] and [`dispatch`] instantiates it for the selected model.

use crate::input;
use crate::CliError;
use cuntzkit::geometry::SpaceRef;
use cuntzkit::models::{CuModel, DirectSum, FiniteTable, LscModel, NBar, ZPrime, Z};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Lsc,
    Z,
    ZPrime,
    NBar,
    Table(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Single(Base),
    Sum(Base, Base),
}

fn base(text: &str) -> Result<Base, CliError> {
    match text.trim() {
        "lsc" => Ok(Base::Lsc),
        "z" => Ok(Base::Z),
        "zprime" => Ok(Base::ZPrime),
        "nbar" => Ok(Base::NBar),
        t => match t.strip_prefix("table:") {
            Some(path) if !path.is_empty() => Ok(Base::Table(path.to_string())),
            _ => Err(CliError::Usage(format!(
                "unknown model {:?} (expected lsc, z, zprime, nbar, table:<path>, or a+b)",
                text
            ))),
        },
    }
}

pub fn parse(text: &str) -> Result<Selector, CliError> {
    // Table paths may contain '+': split only when both sides are models.
    if let Some((l, r)) = text.split_once('+') {
        if let (Ok(a), Ok(b)) = (base(l), base(r)) {
            return Ok(Selector::Sum(a, b));
        }
    }
    base(text).map(Selector::Single)
}

/// A computation that works for any model.
pub trait ModelTask {
    type Output;
    fn run<M: CuModel + Clone>(self, m: &M) -> Self::Output;
}

fn load_table(path: &str) -> Result<FiniteTable, CliError> {
    let doc = input::load(path)?;
    FiniteTable::from_json(&doc.value, "").map_err(|e| CliError::Input(format!("{}: {}", doc.source, e)))
}

fn needs_space(space: Option<&SpaceRef>) -> Result<SpaceRef, CliError> {
    space.cloned().ok_or_else(|| CliError::Usage("the lsc model needs a space (-s FILE or a \"space\" key)".into()))
}

fn run_base<T: ModelTask>(b: &Base, space: Option<&SpaceRef>, task: T) -> Result<T::Output, CliError> {
    Ok(match b {
        Base::Lsc => task.run(&LscModel::new(needs_space(space)?)),
        Base::Z => task.run(&Z),
        Base::ZPrime => task.run(&ZPrime),
        Base::NBar => task.run(&NBar),
        Base::Table(p) => task.run(&load_table(p)?),
    })
}

struct Left<'a, T> {
    right: &'a Base,
    space: Option<&'a SpaceRef>,
    task: T,
}

struct Right<A, T> {
    left: A,
    task: T,
}

impl<A: CuModel + Clone, T: ModelTask> ModelTask for Right<A, T> {
    type Output = T::Output;
    fn run<M: CuModel + Clone>(self, m: &M) -> T::Output {
        self.task.run(&DirectSum::new(self.left, m.clone()))
    }
}

impl<'a, T: ModelTask> ModelTask for Left<'a, T> {
    type Output = Result<T::Output, CliError>;
    fn run<M: CuModel + Clone>(self, m: &M) -> Self::Output {
        run_base(self.right, self.space, Right { left: m.clone(), task: self.task })
    }
}

pub fn dispatch<T: ModelTask>(sel: &Selector, space: Option<&SpaceRef>, task: T) -> Result<T::Output, CliError> {
    match sel {
        Selector::Single(b) => run_base(b, space, task),
        Selector::Sum(l, r) => run_base(l, space, Left { right: r, space, task })?,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(parse("z").unwrap(), Selector::Single(Base::Z));
        assert_eq!(parse("z+nbar").unwrap(), Selector::Sum(Base::Z, Base::NBar));
        assert_eq!(parse("table:a+b.json").unwrap(), Selector::Single(Base::Table("a+b.json".into())));
        assert_eq!(parse("lsc+table:t.json").unwrap(), Selector::Sum(Base::Lsc, Base::Table("t.json".into())));
        assert!(parse("q").is_err());
        assert!(parse("table:").is_err());
    }
}
