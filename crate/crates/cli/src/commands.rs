use std::path::Path;

use ritt_core::engine::{linear_reduce, parse_script, scripted_divide, Trace};
use ritt_core::pencil::build_pencil;
use ritt_core::reduction::{autoreduce_loop, dimensions, ritt_divide, DivisionMode};
use ritt_core::text::{parse_system, parse_var_list, System};
use ritt_core::tropical::{
    detect_first_form, detect_second_form, detect_third_form, tdet, to_first_form, to_second_form, OrderMatrix,
    Perm, Tdet,
};
use ritt_core::{Convention, Ranking, Rational};
use serde_json::{json, Value};

use crate::{CliError, Options};

/// Text and JSON renderings of a command's result.
pub struct Report {
    pub text: String,
    pub json: Value,
}

pub fn load(path: &Path, opts: &Options) -> Result<System, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::User(format!("cannot read {}: {e}", path.display())))?;
    let vars = opts.vars.as_deref().map(parse_var_list);
    let system = parse_system(&text, vars.as_deref())?;
    if system.equations.is_empty() {
        return Err(CliError::User(format!("{}: no equations", path.display())));
    }
    Ok(system)
}

pub fn ranking(opts: &Options, system: &System) -> Result<Ranking, CliError> {
    match &opts.ranking {
        Some(text) => Ok(Ranking::parse(text, &system.ring)?),
        None => Ok(Ranking::Orderly),
    }
}

fn var_index(system: &System, name: &str) -> Result<usize, CliError> {
    Ok(system.ring.index_of(name)?)
}

fn equation(system: &System, i: usize) -> Result<&ritt_core::DiffPoly, CliError> {
    system.equations.get(i).ok_or_else(|| {
        CliError::User(format!(
            "equation index {i} out of range (the system has {} equations, numbered from 0)",
            system.equations.len()
        ))
    })
}

pub fn order_matrix(system: &System, convention: Convention) -> Result<OrderMatrix, CliError> {
    Ok(OrderMatrix::of_system(&system.equations, &system.ring, convention)?)
}

fn witness_text(m: &OrderMatrix, rho: &Perm) -> String {
    (0..rho.len())
        .map(|i| format!("{}:{}", m.row_labels()[i], m.col_labels()[rho.apply(i)]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn tdet_json(t: &Tdet) -> Value {
    json!({
        "J": t.value.to_json(),
        "witnesses": t.witnesses.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
    })
}

pub fn jacobi(system: &System) -> Result<Report, CliError> {
    let weak = order_matrix(system, Convention::Weak)?;
    let strong = order_matrix(system, Convention::Strong)?;
    let (tw, ts) = (tdet(&weak)?, tdet(&strong)?);
    let mut text = format!("J(weak)={} J(strong)={}", tw.value, ts.value);
    for (name, m, t) in [("weak", &weak, &tw), ("strong", &strong, &ts)] {
        for rho in &t.witnesses {
            text.push_str(&format!("\n{name} witness: {}", witness_text(m, rho)));
        }
    }
    Ok(Report {
        text,
        json: json!({ "weak": tdet_json(&tw), "strong": tdet_json(&ts) }),
    })
}

pub fn matrix(system: &System, convention: Convention) -> Result<Report, CliError> {
    let m = order_matrix(system, convention)?;
    Ok(Report {
        text: m.to_string(),
        json: json!({ "convention": convention.name(), "matrix": m.to_json() }),
    })
}

pub struct DivideArgs<'a> {
    pub dividend: usize,
    pub divisors: &'a [usize],
    pub var: Option<&'a str>,
    pub mode: Option<&'a str>,
}

pub fn divide(system: &System, ranking: &Ranking, args: DivideArgs<'_>) -> Result<Report, CliError> {
    let f = equation(system, args.dividend)?;
    let divisors = args
        .divisors
        .iter()
        .map(|&j| equation(system, j).cloned())
        .collect::<Result<Vec<_>, _>>()?;
    let var = args.var.map(|v| var_index(system, v)).transpose()?;
    let mode: DivisionMode = match args.mode {
        Some(m) => m.parse()?,
        None if var.is_some() => DivisionMode::Proper,
        None => DivisionMode::Full,
    };
    let cert = ritt_divide(f, &divisors, mode, ranking, var)?;
    Ok(Report {
        text: cert.to_string(),
        json: cert.to_json(),
    })
}

fn charset(system: &System, ranking: &Ranking, max_rounds: usize) -> Result<ritt_core::reduction::CharSetResult, CliError> {
    Ok(autoreduce_loop(&system.equations, ranking, max_rounds)?)
}

pub fn autoreduce(system: &System, ranking: &Ranking, max_rounds: usize) -> Result<Report, CliError> {
    let out = charset(system, ranking, max_rounds)?;
    let elements: Vec<String> = out.charset.elements().iter().map(ToString::to_string).collect();
    let multipliers: Vec<String> = out.multipliers.iter().map(ToString::to_string).collect();
    let mut text = format!("ranking: {}\n", ranking.render(&system.ring));
    for (i, e) in elements.iter().enumerate() {
        text.push_str(&format!("A{}: {e}\n", i + 1));
    }
    if !multipliers.is_empty() {
        text.push_str(&format!("saturated by: {}\n", multipliers.join(", ")));
    }
    text.push_str(&format!(
        "{} after {} rounds",
        if out.converged { "converged" } else { "NOT converged" },
        out.rounds
    ));
    Ok(Report {
        text,
        json: json!({
            "ranking": ranking.render(&system.ring),
            "charset": elements,
            "multipliers": multipliers,
            "converged": out.converged,
            "rounds": out.rounds,
        }),
    })
}

pub fn dims(system: &System, ranking: &Ranking, max_rounds: usize) -> Result<Report, CliError> {
    let out = charset(system, ranking, max_rounds)?;
    if !out.converged {
        return Err(ritt_core::Error::NoConvergence(max_rounds).into());
    }
    let (diff_dim, bound) = dimensions(&out.charset, system.ring.len())?;
    Ok(Report {
        text: format!("diffDim={diff_dim} absDimBound={bound}"),
        json: json!({ "diffDim": diff_dim, "absDimBound": bound.to_json() }),
    })
}

/// Rows separated by `;`, entries by `,`; `-inf` or `-` for −∞.
pub fn parse_matrix(text: &str) -> Result<OrderMatrix, CliError> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| match e.trim() {
                    "-inf" | "-" => Ok(ritt_core::ExtInt::NegInf),
                    s => s
                        .parse::<i64>()
                        .map(ritt_core::ExtInt::Fin)
                        .map_err(|_| CliError::User(format!("bad matrix entry `{s}`"))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrderMatrix::new(rows, Convention::Strong)?)
}

pub fn forms(m: &OrderMatrix) -> Result<Report, CliError> {
    let detected = json!({
        "first": detect_first_form(m),
        "second": detect_second_form(m),
        "third": detect_third_form(m),
    });
    let mut text = format!(
        "{m}\nfirst form: {}  second form: {}  third form: {}",
        detect_first_form(m),
        detect_second_form(m),
        detect_third_form(m)
    );
    let mut certs = serde_json::Map::new();
    for (key, result) in [("to_first_form", to_first_form(m)), ("to_second_form", to_second_form(m))] {
        match result {
            Ok(cert) => {
                text.push_str(&format!("\n{key}: {cert}\n{}", cert.apply(m)?));
                certs.insert(key.into(), cert.to_json());
            }
            Err(e) if e.is_internal() => return Err(e.into()),
            Err(e) => {
                text.push_str(&format!("\n{key}: {e}"));
                certs.insert(key.into(), json!({ "error": e.to_string() }));
            }
        }
    }
    Ok(Report {
        text,
        json: json!({ "matrix": m.to_json(), "detected": detected, "certificates": certs }),
    })
}

fn trace_report(trace: &Trace) -> Report {
    Report {
        text: trace.to_string(),
        json: trace.to_json(),
    }
}

pub fn reduce_linear(system: &System, ranking: Option<&Ranking>) -> Result<Report, CliError> {
    let out = linear_reduce(&system.equations, ranking)?;
    let mut report = trace_report(&out.trace);
    let elements: Vec<String> = out.charset.elements().iter().map(ToString::to_string).collect();
    report.text.push_str(&format!(
        "\nfinal ranking: {}\ncharacteristic set: {}\ndiffDim={} absDimBound={}",
        out.ranking.render(&system.ring),
        out.charset,
        out.dims.0,
        out.dims.1
    ));
    report.json["charset"] = json!(elements);
    report.json["ranking"] = json!(out.ranking.render(&system.ring));
    report.json["dims"] = json!({ "diffDim": out.dims.0, "absDimBound": out.dims.1.to_json() });
    Ok(report)
}

pub fn trace(system: &System, ranking: &Ranking, script: &str, mode: Option<&str>) -> Result<Report, CliError> {
    let entries = parse_script(script, &system.ring)?;
    let mode: DivisionMode = mode.map(str::parse).transpose()?.unwrap_or(DivisionMode::Proper);
    Ok(trace_report(&scripted_divide(&system.equations, &entries, ranking, mode)?))
}

pub fn pencil(system: &System, pivot: usize, var: Option<&str>, at: &[String], ranking: &Ranking) -> Result<Report, CliError> {
    let u = equation(system, pivot)?;
    let var = match var {
        Some(v) => var_index(system, v)?,
        None => u.leader(ranking)?.var,
    };
    let p = build_pencil(&system.equations, pivot, var)?;
    let mut json = p.to_json();
    let mut text = format!(
        "leader: {} (degree {})\nseparant: {}\ncoseparant: {}\ngenerator: {}",
        p.base_ring.render_derivative(p.leader),
        p.degree,
        p.separant,
        p.coseparant,
        p.generator
    );
    let mut fibers = Vec::new();
    for mu in at {
        let value: Rational = mu
            .trim()
            .parse()
            .map_err(|_| CliError::User(format!("bad rational `{mu}`")))?;
        let fiber = p.fiber_at(&value)?;
        let rendered: Vec<String> = fiber.iter().map(ToString::to_string).collect();
        text.push_str(&format!("\nfiber {}={mu}: {}", p.ring.name(p.fresh), rendered.join(", ")));
        fibers.push(json!({ "at": mu, "system": rendered }));
    }
    json["fibers"] = json!(fibers);
    Ok(Report { text, json })
}
