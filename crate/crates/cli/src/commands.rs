use crate::args::{ChainsCmd, CheckArgs, CheckCmd, Command, LscCmd, Property, SpaceCmd, VerifyCmd};
use crate::input::{self, Doc};
use crate::model::{self, Base, ModelTask, Selector};
use crate::{exit, CliError, Env, Outcome};
use cuntzkit::chains::json::{search_to_json, witness_from_json, witness_to_json};
use cuntzkit::chains::{
    decide_chainable, epsilon_chain, lebesgue_number, refine_to_almost_chain, search_chain, set_is_almost_chainable,
    witness_violations, ChainError, Refinement,
};
use cuntzkit::geometry::json::{open_to_json, space_from_json, space_to_json};
use cuntzkit::geometry::{Component, SpaceRef};
use cuntzkit::lsc::json::lsc_to_json;
use cuntzkit::lsc::{almost_complement, decompose_below_ne, ordered_sum_pairwise, ExtNat, LscElement};
use cuntzkit::models::json::{
    almost_ordered_instance_from_json, almost_ordered_witness_to_json, refinable_instance_from_json,
    refinable_witness_to_json, report_to_json, weak_chain_instance_from_json, weak_chain_witness_to_json,
};
use cuntzkit::models::{
    check_almost_ordered_sums, check_axioms, check_refinable_sums, check_weak_chainability, Bounds, CheckError, CuModel,
    FiniteTable, Verdict,
};
use cuntzkit::oracle;
use cuntzkit::rational::{self, int};
use cuntzkit::suite::{lemma_ids, run_selected, Mutation, SuiteConfig};
use serde_json::{json, Value};

const DEFAULT_CHAIN_DEPTH: u32 = 4;

pub fn execute(cmd: Command, env: &Env) -> Result<Outcome, CliError> {
    match cmd {
        Command::Space(SpaceCmd::Validate { common, file }) => {
            let arg = file.or(common.space).ok_or_else(|| CliError::Usage("space validate needs a file".into()))?;
            let space = input::space(Some(&arg))?;
            Ok(Outcome::json(exit::OK, &json!({"valid": true, "space": space_to_json(&space)})))
        }
        Command::Lsc(c) => lsc(c),
        Command::Chains(c) => chains(c, env),
        Command::Check(c) => check(c, env),
        Command::Verify(VerifyCmd::Lemmas { seed, cases, only, mutate, json: _ }) => {
            let mutation = mutate.map(|m| m.parse::<Mutation>()).transpose().map_err(CliError::Usage)?;
            let all = lemma_ids();
            let ids: Vec<&str> = if only.is_empty() {
                all
            } else {
                for id in &only {
                    if !all.contains(&id.as_str()) {
                        return Err(CliError::Usage(format!("unknown lemma {:?}; known: {}", id, all.join(", "))));
                    }
                }
                only.iter().map(String::as_str).collect()
            };
            let report = run_selected(&SuiteConfig { seed, cases, mutation }, &ids);
            let code = if report.passed() { exit::OK } else { exit::NEGATIVE };
            Ok(Outcome::json(code, &report.to_json()))
        }
    }
}

fn truth(holds: bool) -> i32 {
    if holds {
        exit::OK
    } else {
        exit::NEGATIVE
    }
}

fn value_json(v: ExtNat) -> Value {
    match v {
        ExtNat::Finite(n) => json!(n),
        ExtNat::Infinite => json!("inf"),
    }
}

fn lsc(cmd: LscCmd) -> Result<Outcome, CliError> {
    let lsc_err = |e: cuntzkit::lsc::LscError| CliError::Input(e.to_string());
    match cmd {
        LscCmd::Eval { common, f, at } => {
            let s = input::space(common.space.as_deref())?;
            let f = input::element(&s, &f)?;
            let points = if at.is_empty() {
                oracle::element_grid(&[&f])
            } else {
                at.iter().map(|a| input::location(&s, a)).collect::<Result<_, _>>()?
            };
            let mut values = Vec::new();
            for p in points {
                let v = f.eval_at(&p).map_err(lsc_err)?;
                values.push(json!({"at": p.to_string(), "value": value_json(v)}));
            }
            Ok(Outcome::json(exit::OK, &json!({"values": values})))
        }
        LscCmd::Add(b) => binary(b, |f, g| Ok(lsc_to_json(&f.add(g)))),
        LscCmd::Join(b) => binary(b, |f, g| Ok(lsc_to_json(&f.join(g)))),
        LscCmd::Meet(b) => binary(b, |f, g| Ok(lsc_to_json(&f.meet(g)))),
        LscCmd::Complement(b) => binary(b, |y, z| almost_complement(y, z).map(|c| lsc_to_json(&c)).map_err(lsc_err)),
        LscCmd::Leq(b) => relation(b, "leq", LscElement::leq),
        LscCmd::Wb(b) => relation(b, "way_below", LscElement::way_below),
        LscCmd::OrderedSum { common, xs, ys } => {
            let s = input::space(common.space.as_deref())?;
            let (xs, ys) = (input::elements(&s, &xs)?, input::elements(&s, &ys)?);
            let terms = ordered_sum_pairwise(&xs, &ys).map_err(lsc_err)?;
            Ok(Outcome::json(exit::OK, &json!({"terms": terms.iter().map(lsc_to_json).collect::<Vec<_>>()})))
        }
        LscCmd::Decompose { common, y, n } => {
            let s = input::space(common.space.as_deref())?;
            let y = input::element(&s, &y)?;
            let n = match n.or_else(|| y.bound()) {
                Some(n) => n,
                None => return Err(CliError::Input("the element is unbounded; it has no decomposition below n e".into())),
            };
            let terms = decompose_below_ne(&y, n).map_err(lsc_err)?;
            Ok(Outcome::json(exit::OK, &json!({"n": n, "terms": terms.iter().map(lsc_to_json).collect::<Vec<_>>()})))
        }
    }
}

fn binary(
    b: crate::args::Binary,
    op: impl Fn(&LscElement, &LscElement) -> Result<Value, CliError>,
) -> Result<Outcome, CliError> {
    let s = input::space(b.common.space.as_deref())?;
    let (f, g) = (input::element(&s, &b.f)?, input::element(&s, &b.g)?);
    Ok(Outcome::json(exit::OK, &op(&f, &g)?))
}

fn relation(b: crate::args::Binary, name: &str, rel: fn(&LscElement, &LscElement) -> bool) -> Result<Outcome, CliError> {
    let s = input::space(b.common.space.as_deref())?;
    let (f, g) = (input::element(&s, &b.f)?, input::element(&s, &b.g)?);
    let holds = rel(&f, &g);
    Ok(Outcome::json(truth(holds), &json!({"relation": name, "holds": holds})))
}

fn depth_setting(flag: Option<u32>, env: &Env, default: u32) -> Result<u32, CliError> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match &env.max_depth {
        Some(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("CUNTZKIT_MAX_DEPTH must be a natural number, not {:?}", text))),
        None => Ok(default),
    }
}

fn chain_err(e: ChainError) -> CliError {
    CliError::Input(e.to_string())
}

fn chains(cmd: ChainsCmd, env: &Env) -> Result<Outcome, CliError> {
    match cmd {
        ChainsCmd::EpsilonChain { common, eps, target } => {
            let s = input::space(common.space.as_deref())?;
            let t = input::target(&s, target.as_deref())?;
            let eps = rational::parse(&eps).map_err(|e| CliError::Usage(format!("--eps: {}", e)))?;
            match epsilon_chain(&t, &eps) {
                Ok(w) => Ok(Outcome::json(exit::OK, &witness_to_json(&w))),
                Err(e @ (ChainError::Disconnected | ChainError::FullCircle(_))) => {
                    Ok(Outcome::json(exit::NEGATIVE, &json!({"chainable": false, "reason": e.to_string()})))
                }
                Err(e) => Err(chain_err(e)),
            }
        }
        ChainsCmd::Refine { common, cover, target } => {
            let s = input::space(common.space.as_deref())?;
            let t = input::target(&s, target.as_deref())?;
            let cover = input::opens(&s, &cover)?;
            match refine_to_almost_chain(&cover, &t).map_err(chain_err)? {
                Refinement::Witness(w) => {
                    Ok(Outcome::json(exit::OK, &json!({"verdict": "witness", "witness": witness_to_json(&w)})))
                }
                Refinement::Impossible { component } => Ok(Outcome::json(
                    exit::NEGATIVE,
                    &json!({"verdict": "impossible", "component": component,
                            "reason": format!("the target contains the whole circle {}", component)}),
                )),
            }
        }
        ChainsCmd::Decide { common, target, property, depth } => {
            let s = input::space(common.space.as_deref())?;
            let t = input::target(&s, target.as_deref())?;
            let depth = depth_setting(depth, env, DEFAULT_CHAIN_DEPTH)?;
            let chainable = decide_chainable(&t);
            let almost = set_is_almost_chainable(&t);
            let search: Vec<Value> = (0..s.len())
                .filter(|&i| matches!(s.component(i), Component::Circle { .. }) && t.covers_component(i))
                .map(|i| {
                    let len = s.component(i).length().cloned().unwrap_or_else(|| int(1));
                    search_to_json(&search_chain(&s, i, &(len / int(4)), depth))
                })
                .collect();
            let answer = match property {
                Property::Chainable => chainable,
                Property::AlmostChainable | Property::PiecewiseChainable => almost,
            };
            let out = json!({
                "target": open_to_json(&t),
                "chainable": chainable,
                "almost_chainable": almost,
                "piecewise_chainable": almost,
                "circle_search": search,
            });
            Ok(Outcome::json(truth(answer), &out))
        }
        ChainsCmd::Lebesgue { common, cover } => {
            let s = input::space(common.space.as_deref())?;
            let cover = input::opens(&s, &cover)?;
            let l = lebesgue_number(&cover).map_err(chain_err)?;
            Ok(Outcome::json(exit::OK, &json!({"lebesgue": rational::format(&l)})))
        }
        ChainsCmd::Verify { common, witness, cover, target } => {
            let s = input::space(common.space.as_deref())?;
            let t = input::target(&s, target.as_deref())?;
            let doc = input::load(&witness)?;
            let w = witness_from_json(&s, &doc.value, "").map_err(|e| doc.err(e))?;
            let cover = match cover {
                Some(c) => input::opens(&s, &c)?,
                None => vec![t.clone()],
            };
            let bad = witness_violations(&w, &t, &cover);
            Ok(Outcome::json(truth(bad.is_empty()), &json!({"valid": bad.is_empty(), "violations": bad})))
        }
    }
}

#[derive(Clone, Copy)]
enum Property3 {
    Refinable,
    AlmostOrdered,
    WeakChain,
}

impl Property3 {
    fn name(self) -> &'static str {
        match self {
            Property3::Refinable => "refinable-sums",
            Property3::AlmostOrdered => "almost-ordered-sums",
            Property3::WeakChain => "weak-chainability",
        }
    }
}

struct CheckTask<'a> {
    property: Property3,
    doc: &'a Doc,
    bounds: Bounds,
}

fn verdict_code<W>(v: &Verdict<W>) -> i32 {
    match v {
        Verdict::Witness(_) => exit::OK,
        Verdict::Counterexample => exit::NEGATIVE,
        Verdict::Inconclusive => exit::INCONCLUSIVE,
    }
}

fn check_err(e: CheckError) -> CliError {
    CliError::Input(e.to_string())
}

impl ModelTask for CheckTask<'_> {
    type Output = Result<Outcome, CliError>;

    fn run<M: CuModel + Clone>(self, m: &M) -> Self::Output {
        let (doc, b, name) = (self.doc, &self.bounds, m.name());
        let prop = self.property.name();
        match self.property {
            Property3::Refinable => {
                let inst = refinable_instance_from_json(m, &doc.value, "").map_err(|e| doc.err(e))?;
                let r = check_refinable_sums(m, &inst, b).map_err(check_err)?;
                let v = report_to_json(prop, &name, &r, b, |w| refinable_witness_to_json(m, w));
                Ok(Outcome::json(verdict_code(&r.verdict), &v))
            }
            Property3::AlmostOrdered => {
                let xs = almost_ordered_instance_from_json(m, &doc.value, "").map_err(|e| doc.err(e))?;
                let r = check_almost_ordered_sums(m, &xs, b).map_err(check_err)?;
                let v = report_to_json(prop, &name, &r, b, |w| almost_ordered_witness_to_json(m, w));
                Ok(Outcome::json(verdict_code(&r.verdict), &v))
            }
            Property3::WeakChain => {
                let inst = weak_chain_instance_from_json(m, &doc.value, "").map_err(|e| doc.err(e))?;
                let r = check_weak_chainability(m, &inst, b).map_err(check_err)?;
                let v = report_to_json(prop, &name, &r, b, |w| weak_chain_witness_to_json(m, w));
                Ok(Outcome::json(verdict_code(&r.verdict), &v))
            }
        }
    }
}

fn run_check(property: Property3, a: CheckArgs, env: &Env) -> Result<Outcome, CliError> {
    let doc = input::load(&a.instance)?;
    let selector_text = match (&a.model, doc.value.get("model").and_then(Value::as_str)) {
        (Some(m), _) => m.clone(),
        (None, Some(m)) => m.to_string(),
        (None, None) => return Err(CliError::Usage("no model given (--model or a \"model\" key)".into())),
    };
    let selector = model::parse(&selector_text)?;
    let space: Option<SpaceRef> = match (&a.common.space, doc.value.get("space")) {
        (Some(s), _) => Some(input::space(Some(s))?),
        (None, Some(v)) => Some(space_from_json(v, "space").map_err(|e| doc.err(e))?),
        (None, None) => None,
    };
    let bounds = Bounds { depth: depth_setting(a.depth, env, Bounds::default().depth)?, ..Bounds::default() };
    model::dispatch(&selector, space.as_ref(), CheckTask { property, doc: &doc, bounds })?
}

fn check(cmd: CheckCmd, env: &Env) -> Result<Outcome, CliError> {
    match cmd {
        CheckCmd::RefinableSums(a) => run_check(Property3::Refinable, a, env),
        CheckCmd::AlmostOrdered(a) => run_check(Property3::AlmostOrdered, a, env),
        CheckCmd::WeakChain(a) => run_check(Property3::WeakChain, a, env),
        CheckCmd::Axioms { common: _, model } => {
            let path = match model::parse(&model)? {
                Selector::Single(Base::Table(p)) => p,
                _ => return Err(CliError::Usage("axioms are checked for finite tables: --model table:<path>".into())),
            };
            let doc = input::load(&path)?;
            let t = FiniteTable::from_json(&doc.value, "").map_err(|e| CliError::Input(format!("{}: {}", doc.source, e)))?;
            let report = check_axioms(&t);
            Ok(Outcome::json(truth(report.all_pass()), &report.to_json()))
        }
    }
}
