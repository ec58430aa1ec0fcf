//! Worked examples with their golden values.

use ritt_core::engine::{linear_reduce, parse_script, scripted_divide};
use ritt_core::pencil::build_pencil;
use ritt_core::reduction::DivisionMode;
use ritt_core::text::{parse_system, System};
use ritt_core::tropical::{detect_second_form, jacobi_number, OrderMatrix};
use ritt_core::{Convention, ExtInt, Ranking, Result};
use serde_json::{json, Value};

pub struct Example {
    pub name: &'static str,
    pub source: &'static str,
    checks: fn(&System) -> Result<Vec<(&'static str, &'static str, String)>>,
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "j_increasing",
        source: include_str!("../systems/j_increasing.sys"),
        checks: j_increasing,
    },
    Example {
        name: "j_increasing_second_form",
        source: include_str!("../systems/j_increasing_second_form.sys"),
        checks: j_increasing_second_form,
    },
    Example {
        name: "weak_strong",
        source: include_str!("../systems/weak_strong.sys"),
        checks: weak_strong,
    },
    Example {
        name: "linear",
        source: include_str!("../systems/linear.sys"),
        checks: linear,
    },
    Example {
        name: "pencil",
        source: include_str!("../systems/pencil.sys"),
        checks: pencil,
    },
];

fn grid(m: &OrderMatrix) -> String {
    let rows: Vec<String> = m
        .entries()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn seq(v: &[ExtInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn jacobi(s: &System, conv: Convention) -> Result<(OrderMatrix, ExtInt)> {
    let m = OrderMatrix::of_system(&s.equations, &s.ring, conv)?;
    let j = jacobi_number(&m)?;
    Ok((m, j))
}

type Checks = Result<Vec<(&'static str, &'static str, String)>>;

fn j_increasing(s: &System) -> Checks {
    let (ms, js) = jacobi(s, Convention::Strong)?;
    let (_, jw) = jacobi(s, Convention::Weak)?;
    let script = parse_script("0/2@x;1/2@x", &s.ring)?;
    let trace = scripted_divide(&s.equations, &script, &Ranking::Orderly, DivisionMode::Proper)?;
    Ok(vec![
        ("strong matrix", "[[100,1,1],[50,0,0],[1,1,-inf]]", grid(&ms)),
        ("J(strong)", "101", js.to_string()),
        ("J(weak)", "101", jw.to_string()),
        ("weak J sequence of 0/2@x;1/2@x", "101,150,101", seq(&trace.j_sequence_weak)),
        ("strong J sequence of 0/2@x;1/2@x", "101,101,101", seq(&trace.j_sequence)),
    ])
}

fn j_increasing_second_form(s: &System) -> Checks {
    let (m, j) = jacobi(s, Convention::Strong)?;
    let script = parse_script("2/0@x", &s.ring)?;
    let trace = scripted_divide(&s.equations, &script, &Ranking::Orderly, DivisionMode::Proper)?;
    Ok(vec![
        ("strong matrix", "[[1,2,3],[1,1,1],[2,1,1]]", grid(&m)),
        ("J(strong)", "6", j.to_string()),
        ("in second form", "false", detect_second_form(&m).to_string()),
        ("matrix after 2/0@x", "[[1,2,3],[1,1,1],[1,3,4]]", grid(&trace.steps[0].matrix_after)),
        ("J after 2/0@x", "7", trace.j_sequence[1].to_string()),
    ])
}

fn weak_strong(s: &System) -> Checks {
    let (mw, jw) = jacobi(s, Convention::Weak)?;
    let (ms, js) = jacobi(s, Convention::Strong)?;
    Ok(vec![
        ("weak matrix", "[[1,18],[0,1]]", grid(&mw)),
        ("J(weak)", "18", jw.to_string()),
        ("strong matrix", "[[1,18],[-inf,1]]", grid(&ms)),
        ("J(strong)", "2", js.to_string()),
    ])
}

fn linear(s: &System) -> Checks {
    let (_, j) = jacobi(s, Convention::Strong)?;
    let out = linear_reduce(&s.equations, None)?;
    Ok(vec![
        ("J(strong)", "2", j.to_string()),
        ("dims", "(0, 2)", format!("({}, {})", out.dims.0, out.dims.1)),
    ])
}

fn pencil(s: &System) -> Checks {
    let p = build_pencil(&s.equations, 0, 0)?;
    Ok(vec![
        ("separant", "2*x'", p.separant.to_string()),
        ("coseparant", "-2*x", p.coseparant.to_string()),
        ("generator", "2*x'*w - 2*x", p.generator.to_string()),
    ])
}

/// Outcome of running the corpus.
pub struct CorpusRun {
    pub lines: Vec<String>,
    pub json: Value,
    pub all_match: bool,
}

pub fn run() -> CorpusRun {
    let mut lines = Vec::new();
    let mut records = Vec::new();
    let mut all_match = true;
    for ex in EXAMPLES {
        let outcome = parse_system(ex.source, None).and_then(|s| (ex.checks)(&s));
        match outcome {
            Ok(checks) => {
                for (what, expected, actual) in checks {
                    let ok = expected == actual;
                    all_match &= ok;
                    lines.push(if ok {
                        format!("ok       {}: {what} = {actual}", ex.name)
                    } else {
                        format!("MISMATCH {}: {what}: expected {expected}, got {actual}", ex.name)
                    });
                    records.push(json!({
                        "example": ex.name, "check": what, "expected": expected, "actual": actual, "ok": ok,
                    }));
                }
            }
            Err(e) => {
                all_match = false;
                lines.push(format!("ERROR    {}: {e}", ex.name));
                records.push(json!({ "example": ex.name, "error": e.to_string(), "ok": false }));
            }
        }
    }
    CorpusRun {
        lines,
        json: json!({ "checks": records, "all_match": all_match }),
        all_match,
    }
}
