use cuntzkit_cli::{exit, run_with, Env, Outcome};
use serde_json::Value;
use std::path::PathBuf;

fn instance(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Outcome {
    cli_env(args, &Env::default())
}

fn cli_env(args: &[&str], env: &Env) -> Outcome {
    run_with(std::iter::once("cuntzkit").chain(args.iter().copied()), env)
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({}): {}{}", e, o.stdout, o.stderr))
}

#[test]
fn space_validate_prints_the_canonical_form() {
    let o = cli(&["space", "validate", &instance("spaces/arcs-point.json")]);
    assert_eq!(o.code, exit::OK, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["space"]["components"][1]["length"], "2/1");
    assert_eq!(v["space"]["components"][2]["kind"], "point");
}

#[test]
fn malformed_documents_report_the_json_path() {
    let o = cli(&["space", "validate", r#"{"components":[{"kind":"arc"}]}"#]);
    assert_eq!(o.code, exit::USAGE);
    assert!(o.stderr.contains("components[0].length"), "{}", o.stderr);

    let arc = instance("spaces/arc.json");
    let o = cli(&["lsc", "eval", "-s", &arc, r#"{"levels":["(0,1/2)","(0,x)"]}"#]);
    assert_eq!(o.code, exit::USAGE);
    assert!(o.stderr.contains("levels[1]"), "{}", o.stderr);

    let o = cli(&["lsc", "eval", "-s", &arc, r#"{"levels":["(0,1/2)","(0,3/4)"]}"#]);
    assert_eq!(o.code, exit::USAGE);
    assert!(o.stderr.contains("levels[1]: level 2 is not contained"), "{}", o.stderr);
}

#[test]
fn missing_files_and_unknown_commands_are_usage_errors() {
    let arc = instance("spaces/arc.json");
    assert_eq!(cli(&["lsc", "eval", "-s", &arc, "nope.json"]).code, exit::USAGE);
    assert_eq!(cli(&["frobnicate"]).code, exit::USAGE);
    assert_eq!(cli(&["lsc", "eval", "(0,1)"]).code, exit::USAGE, "no space given");
    let o = cli(&["check", "weak-chain", "--model", "q", "--instance", &instance("check/circle-weak-chain.json")]);
    assert_eq!(o.code, exit::USAGE);
    assert!(o.stderr.contains("unknown model"));
}

#[test]
fn help_goes_to_stdout_with_success() {
    let o = cli(&["--help"]);
    assert_eq!(o.code, exit::OK);
    assert!(o.stdout.contains("check"));
    assert!(o.stderr.is_empty());
}

#[test]
fn order_relations_set_the_exit_status() {
    let arc = instance("spaces/arc.json");
    let (f, g) = (instance("elements/f.json"), instance("elements/g.json"));
    let o = cli(&["lsc", "leq", "-s", &arc, &f, &g]);
    assert_eq!((o.code, json(&o)["holds"].clone()), (exit::OK, Value::Bool(true)));
    let o = cli(&["lsc", "leq", "-s", &arc, &g, &f]);
    assert_eq!((o.code, json(&o)["holds"].clone()), (exit::NEGATIVE, Value::Bool(false)));
    assert_eq!(cli(&["lsc", "wb", "-s", &arc, "(1/4,1/2)", &g]).code, exit::OK);
    assert_eq!(cli(&["lsc", "wb", "-s", &arc, "[0,1]", "[0,1]"]).code, exit::OK, "the unit of a compact space is compact");
    assert_eq!(cli(&["lsc", "wb", "-s", &arc, "(0,1/2)", "(0,1/2)"]).code, exit::NEGATIVE);
}

#[test]
fn evaluation_and_arithmetic() {
    let arc = instance("spaces/arc.json");
    let o = cli(&["lsc", "eval", "-s", &arc, &instance("elements/g.json"), "--at", "0.3", "--at", "0:1/2", "--at", "1"]);
    assert_eq!(o.code, exit::OK, "{}", o.stderr);
    let vals: Vec<Value> = json(&o)["values"].as_array().unwrap().iter().map(|v| v["value"].clone()).collect();
    assert_eq!(vals, vec![Value::from("inf"), Value::from(2), Value::from(0)]);

    let sum = cli(&["lsc", "add", "-s", &arc, "(0,1/2)", "(1/4,3/4)"]);
    let ordered = cli(&["lsc", "ordered-sum", "-s", &arc, r#"["(0,1/2)"]"#, r#"["(1/4,3/4)"]"#]);
    assert_eq!(sum.code, exit::OK);
    assert_eq!(ordered.code, exit::OK, "{}", ordered.stderr);
    let terms = json(&ordered)["terms"].clone();
    assert_eq!(terms.as_array().unwrap().len(), 2);
    let back = cli(&["lsc", "add", "-s", &arc, &terms[0].to_string(), &terms[1].to_string()]);
    assert_eq!(json(&back), json(&sum));

    let o = cli(&["lsc", "decompose", "-s", &arc, &instance("elements/f.json"), "--n", "2"]);
    assert_eq!(o.code, exit::OK, "{}", o.stderr);
    assert_eq!(json(&o)["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn chain_commands() {
    let arc = instance("spaces/arc.json");
    let circle = instance("spaces/circle.json");
    let o = cli(&["chains", "epsilon-chain", "-s", &arc, "--eps", "1/10"]);
    assert_eq!(o.code, exit::OK);
    let w = o.stdout.clone();
    let o = cli(&["chains", "verify", "-s", &arc, "--witness", &w]);
    assert_eq!((o.code, json(&o)["valid"].clone()), (exit::OK, Value::Bool(true)));

    let o = cli(&["chains", "epsilon-chain", "-s", &circle, "--eps", "1/10"]);
    assert_eq!(o.code, exit::NEGATIVE);
    assert_eq!(json(&o)["chainable"], false);

    let o = cli(&["chains", "lebesgue", "-s", &arc, "--cover", &instance("covers/arc-three.json")]);
    assert_eq!(json(&o)["lebesgue"], "1/6");

    let o = cli(&["chains", "refine", "-s", &circle, "--cover", &instance("covers/circle-three-arcs.json")]);
    assert_eq!((o.code, json(&o)["verdict"].clone()), (exit::NEGATIVE, Value::from("impossible")));
    let o = cli(&["chains", "refine", "-s", &circle, "--cover", &instance("covers/circle-three-arcs.json"), "--target", "(0,3/4)"]);
    assert_eq!((o.code, json(&o)["verdict"].clone()), (exit::OK, Value::from("witness")), "{}", o.stdout);
}

#[test]
fn chain_decisions_by_space() {
    let decide = |space: &str, property: &str| cli(&["chains", "decide", "-s", &instance(space), "--property", property]).code;
    assert_eq!(decide("spaces/arc.json", "chainable"), exit::OK);
    assert_eq!(decide("spaces/circle.json", "chainable"), exit::NEGATIVE);
    assert_eq!(decide("spaces/arc-circle.json", "almost-chainable"), exit::NEGATIVE);
    assert_eq!(decide("spaces/arcs-point.json", "chainable"), exit::NEGATIVE);
    assert_eq!(decide("spaces/arcs-point.json", "piecewise-chainable"), exit::OK);
}

#[test]
fn model_checks_set_the_exit_status_from_the_verdict() {
    let check = |cmd: &str, file: &str| {
        let o = cli(&["check", cmd, "--instance", &instance(file)]);
        (o.code, json(&o)["verdict"].as_str().unwrap().to_string())
    };
    assert_eq!(check("refinable-sums", "check/z-refinable.json"), (exit::NEGATIVE, "counterexample".into()));
    assert_eq!(check("refinable-sums", "check/lsc-refinable.json"), (exit::OK, "witness".into()));
    assert_eq!(check("almost-ordered", "check/zprime-almost-ordered.json"), (exit::NEGATIVE, "counterexample".into()));
    assert_eq!(check("almost-ordered", "check/lsc-almost-ordered.json"), (exit::OK, "witness".into()));
    assert_eq!(check("weak-chain", "check/two-arcs-weak-chain.json"), (exit::OK, "witness".into()));
    assert_eq!(check("weak-chain", "check/circle-weak-chain.json"), (exit::NEGATIVE, "counterexample".into()));
    assert_eq!(check("weak-chain", "check/direct-sum-weak-chain.json"), (exit::OK, "witness".into()));
}

#[test]
fn the_model_flag_overrides_the_instance() {
    // The Z instance read in N̄: refinable sums hold there.
    let o = cli(&["check", "refinable-sums", "--model", "nbar", "--instance", r#"{"x":[1,1,2],"x_prime":[1,1,1]}"#]);
    assert_eq!(o.code, exit::OK, "{}{}", o.stdout, o.stderr);
    assert_eq!(json(&o)["model"], "nbar");
}

#[test]
fn depth_comes_from_the_flag_then_the_environment() {
    let inst = instance("check/z-refinable.json");
    let depth = |args: &[&str], env: &Env| {
        let mut all = vec!["check", "refinable-sums", "--instance", &inst];
        all.extend_from_slice(args);
        let o = cli_env(&all, env);
        (o.code, json(&o)["bounds"]["depth"].clone())
    };
    let five = Env { max_depth: Some("5".into()) };
    assert_eq!(depth(&[], &Env::default()).1, 3);
    assert_eq!(depth(&[], &five).1, 5);
    assert_eq!(depth(&["--depth", "2"], &five).1, 2);
    let bad = cli_env(&["check", "refinable-sums", "--instance", &inst], &Env { max_depth: Some("lots".into()) });
    assert_eq!(bad.code, exit::USAGE);
    assert!(bad.stderr.contains("CUNTZKIT_MAX_DEPTH"));
}

#[test]
fn table_axioms() {
    let o = cli(&["check", "axioms", "--model", &format!("table:{}", instance("tables/nbar-zero-inf.json"))]);
    assert_eq!((o.code, json(&o)["all_pass"].clone()), (exit::OK, Value::Bool(true)));
    let o = cli(&["check", "axioms", "--model", &format!("table:{}", instance("tables/nbar-truncated.json"))]);
    assert_eq!(o.code, exit::NEGATIVE);
    assert!(o.stdout.contains("1 + 2 is not way-below 1 + 2"), "{}", o.stdout);
    assert_eq!(cli(&["check", "axioms", "--model", "z"]).code, exit::USAGE);
}

#[test]
fn lemma_runs_are_deterministic() {
    let args = ["verify", "lemmas", "--seed", "7", "--cases", "20", "--only", "ordered-sum-identity", "--only", "cancellation"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, exit::OK, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let ids: Vec<Value> = json(&a)["lemmas"].as_array().unwrap().iter().map(|l| l["id"].clone()).collect();
    assert_eq!(ids, vec![Value::from("cancellation"), Value::from("ordered-sum-identity")]);
}

#[test]
fn the_mutation_canary_is_caught() {
    let o = cli(&["verify", "lemmas", "--cases", "20", "--only", "ordered-sum-identity", "--mutate", "add-off-by-one"]);
    assert_eq!(o.code, exit::NEGATIVE);
    let v = json(&o);
    assert_eq!(v["mutation"], "add-off-by-one");
    assert_eq!(v["lemmas"][0]["passed"], false);
}

#[test]
fn unknown_lemma_ids_are_rejected() {
    let o = cli(&["verify", "lemmas", "--only", "no-such-check"]);
    assert_eq!(o.code, exit::USAGE);
    assert!(o.stderr.contains("ordered-sum-identity"), "lists the known ids: {}", o.stderr);
    assert_eq!(cli(&["verify", "lemmas", "--mutate", "flip"]).code, exit::USAGE);
}
