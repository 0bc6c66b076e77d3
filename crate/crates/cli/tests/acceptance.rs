//! End-to-end acceptance run: one line per criterion with its timing. Runs
//! without the test harness so the lines show even when everything passes;
//! the exit status is nonzero when any criterion fails.

use cuntzkit::chains::{decide_almost_chainable, decide_chainable, decide_piecewise_chainable, epsilon_chain, search_chain, verify_witness};
use cuntzkit::geometry::{Component, OpenSet, Space};
use cuntzkit::rational::ratio;
use cuntzkit::suite::{run_selected, Mutation, SuiteConfig};
use cuntzkit_cli::{exit, run_with, Env};
use serde_json::Value;
use std::path::PathBuf;
use std::time::{Duration, Instant};

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<String, String>,
}

fn instance(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, Value) {
    let o = run_with(std::iter::once("cuntzkit").chain(args.iter().copied()), &Env::default());
    let v = serde_json::from_str(&o.stdout).unwrap_or(Value::Null);
    (o.code, v)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn log_has(report: &Value, needle: &str) -> bool {
    report["log"].as_array().is_some_and(|l| l.iter().any(|s| s.as_str().is_some_and(|s| s.contains(needle))))
}

/// Runs suite checks with `cases` cases each and requires zero failures.
fn suite(ids: &[&str], cases: usize) -> Result<String, String> {
    let report = run_selected(&SuiteConfig { seed: 42, cases, mutation: None }, ids);
    let mut parts = Vec::new();
    for l in &report.lemmas {
        if let Some(f) = l.failures.first() {
            return Err(format!("{}: {} failures, first at case {}: {}", l.id, l.failures.len(), f.case, f.message));
        }
        parts.push(format!("{} {}/{}", l.id, l.cases - l.vacuous, l.cases));
    }
    Ok(parts.join(", "))
}

fn z_refinable() -> Result<String, String> {
    let (code, r) = cli(&["check", "refinable-sums", "--instance", &instance("check/z-refinable.json")]);
    ensure(code == exit::NEGATIVE && r["verdict"] == "counterexample", format!("verdict {}", r["verdict"]))?;
    ensure(log_has(&r, "forced: y_1^1 = 1"), "the forced step is missing from the log")?;
    ensure(log_has(&r, "contradiction: 1 ≪ y_1^2 ≤ 0.5"), "the contradiction is missing from the log")?;
    Ok("counterexample; forced y_1^1 = 1; 1 ≪ y_1^2 ≤ 0.5".into())
}

fn zprime_almost_ordered() -> Result<String, String> {
    let (code, r) = cli(&["check", "almost-ordered", "--instance", &instance("check/zprime-almost-ordered.json")]);
    ensure(code == exit::NEGATIVE && r["verdict"] == "counterexample", format!("verdict {}", r["verdict"]))?;
    ensure(log_has(&r, "the sum 1 + 1'' = 2 is compact"), "the compact sum is missing from the log")?;
    Ok("counterexample at the compact sum 1 + 1'' = 2".into())
}

fn chainability() -> Result<String, String> {
    let arc = Space::unit_arc();
    let full = OpenSet::full(&arc);
    let eps = ratio(1, 100);
    let w = epsilon_chain(&full, &eps).map_err(|e| format!("arc: {}", e))?;
    ensure(verify_witness(&w, &full, std::slice::from_ref(&full)), "the arc witness does not verify")?;
    let mesh = cuntzkit::chains::mesh(&w.pieces);
    ensure(mesh < eps, format!("mesh {} is not below 1/100", mesh))?;

    let circle = Space::unit_circle();
    ensure(!decide_chainable(&OpenSet::full(&circle)), "the circle was declared chainable")?;
    let search = search_chain(&circle, 0, &ratio(1, 4), 4);
    ensure(search.found.is_none(), "the bounded search found a chain on the circle")?;

    let arc_circle = Space::new(vec![Component::Arc { length: ratio(1, 1) }, Component::Circle { length: ratio(1, 1) }])
        .map_err(|e| e.to_string())?;
    ensure(!decide_almost_chainable(&arc_circle), "[arc, circle] was declared almost chainable")?;
    let arcs_point = Space::new(vec![
        Component::Arc { length: ratio(1, 1) },
        Component::Arc { length: ratio(2, 1) },
        Component::Point,
    ])
    .map_err(|e| e.to_string())?;
    ensure(decide_piecewise_chainable(&arcs_point), "[arc, arc, point] is not piecewise chainable")?;
    Ok(format!("arc chain of {} pieces, mesh {}; circle search depth 4 empty", w.pieces.len(), mesh))
}

fn weak_chainability() -> Result<String, String> {
    let cases = [
        ("check/two-arcs-weak-chain.json", exit::OK, "witness"),
        ("check/circle-weak-chain.json", exit::NEGATIVE, "counterexample"),
        ("check/direct-sum-weak-chain.json", exit::OK, "witness"),
    ];
    for (file, code, verdict) in cases {
        let (c, r) = cli(&["check", "weak-chain", "--instance", &instance(file)]);
        ensure(c == code && r["verdict"] == verdict, format!("{}: exit {} verdict {}", file, c, r["verdict"]))?;
    }
    // Witnesses are revalidated by the checker before being reported; the
    // suite also exercises random disjoint-arc spaces and direct sums.
    suite(&["weak-chainability", "direct-sum-weak-chain"], 100)
}

fn full_suite() -> Result<String, String> {
    let (code, r) = cli(&["verify", "lemmas", "--seed", "42", "--cases", "1000"]);
    if code != exit::OK {
        let failing: Vec<String> = r["lemmas"]
            .as_array()
            .map(|ls| ls.iter().filter(|l| l["passed"] == false).map(|l| l["id"].to_string()).collect())
            .unwrap_or_default();
        return Err(format!("exit {}; failing: {}", code, failing.join(", ")));
    }
    let canary = run_selected(
        &SuiteConfig { seed: 42, cases: 100, mutation: Some(Mutation::AddOffByOne) },
        &["ordered-sum-identity"],
    );
    let caught = canary.lemma("ordered-sum-identity").map_or(0, |l| l.failures.len());
    ensure(caught > 0, "the mutation canary went unnoticed")?;
    let n = r["lemmas"].as_array().map_or(0, Vec::len);
    Ok(format!("{} checks clean; canary caught in {}/100 cases", n, caught))
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "Z refinable-sums counterexample", limit: Duration::from_secs(1), run: z_refinable },
    Criterion { number: 2, title: "Z′ almost-ordered-sums counterexample", limit: Duration::from_secs(1), run: zprime_almost_ordered },
    Criterion {
        number: 3,
        title: "ordered sum identity, 1000 cases",
        limit: Duration::from_secs(30),
        run: || suite(&["ordered-sum-identity"], 1000),
    },
    Criterion {
        number: 4,
        title: "way-below against increasing sequences, 500 cases",
        limit: Duration::from_secs(30),
        run: || suite(&["way-below-levels"], 500),
    },
    Criterion {
        number: 5,
        title: "almost complement adjunction and maximality, 500 cases",
        limit: Duration::from_secs(60),
        run: || suite(&["almost-complement-adjunction"], 500),
    },
    Criterion {
        number: 6,
        title: "duality identities and compact containment, 1000 cases",
        limit: Duration::from_secs(120),
        run: || suite(&["basic-topology", "compact-containment"], 1000),
    },
    Criterion {
        number: 7,
        title: "cancellation, sum-join, termwise ≪, Heyting, closed sets, topological order",
        limit: Duration::from_secs(120),
        run: || {
            suite(
                &[
                    "cancellation",
                    "closed-set-lattice",
                    "heyting-distributivity",
                    "sum-join",
                    "termwise-way-below",
                    "topological-order",
                ],
                500,
            )
        },
    },
    Criterion { number: 8, title: "chainability deciders", limit: Duration::from_secs(60), run: chainability },
    Criterion { number: 9, title: "weak chainability", limit: Duration::from_secs(60), run: weak_chainability },
    Criterion {
        number: 10,
        title: "full lemma suite, seed 42, 1000 cases, plus canary",
        limit: Duration::from_secs(300),
        run: full_suite,
    },
];

fn main() {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.limit => Err(format!("too slow (limit {:?}); {}", c.limit, detail)),
            o => o,
        };
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(e) => ("FAIL", e.as_str()),
        };
        println!("[{}] criterion {:>2} {:<75} {:>9.3}s  {}", mark, c.number, c.title, took.as_secs_f64(), detail);
        if outcome.is_err() {
            failed.push(c.number);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
    } else {
        println!("acceptance: failed criteria {:?}", failed);
        std::process::exit(1);
    }
}
