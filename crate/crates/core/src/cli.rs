//! Command dispatch for the `linform` binary.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict
//! (including unsatisfiable windows and inconsistent seeds), 2 for usage and
//! data errors. Reports are JSON objects or `key<TAB>value` lines.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::forms::{diameter_report, image_repfn, modular_repfn, AugmentedCounter};
use crate::periodic::{check_t_complementing, ComplementCertificate};
use crate::problem::{parse_problem, ProblemFile};
use crate::recursion::{build_context, detect_period, extend, Window, DEFAULT_MAX_D};
use crate::solver::{
    solve_window, stabilize, SearchLimits, SolveStatus, StepOutcome, TargetFunction, WindowProblem,
    DEFAULT_MAX_NODES,
};
use crate::cyclotomy::check_condition;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

const DEFAULT_STABILIZE_N: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Image,
    Repfn,
    Modrep,
    Cyclotomy,
    Check,
    Extend,
    Period,
    Solve,
    Stabilize,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Image => "image",
            Command::Repfn => "repfn",
            Command::Modrep => "modrep",
            Command::Cyclotomy => "cyclotomy",
            Command::Check => "check",
            Command::Extend => "extend",
            Command::Period => "period",
            Command::Solve => "solve",
            Command::Stabilize => "stabilize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "linform",
    version,
    about = "Representation functions of integer linear forms",
    allow_negative_numbers = true
)]
pub struct Args {
    pub command: Command,
    /// Problem file (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Modulus for modrep and cyclotomy.
    #[arg(short = 'm')]
    pub m: Option<i64>,
    /// Target count; overrides `t` from the file.
    #[arg(short = 't')]
    pub t: Option<u64>,
    /// Window radius for solve, largest radius for stabilize.
    #[arg(short = 'N')]
    pub n: Option<u64>,
    /// Seed window as START:BITS, e.g. 0:101.
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub from: Option<i64>,
    #[arg(long)]
    pub to: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_D)]
    pub max_d: u32,
}

/// The outcome of one command: an exit code and the report body.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit: i32,
    pub report: Value,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<crate::problem::ProblemError> for UsageError {
    fn from(e: crate::problem::ProblemError) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn missing(what: &str, command: Command) -> UsageError {
    UsageError(format!("{} requires {what}", command.name()))
}

pub fn parse_seed(text: &str) -> Result<Window, UsageError> {
    let bad = || UsageError(format!("invalid seed {text:?}: expected START:BITS"));
    let (start, bits) = text.split_once(':').ok_or_else(bad)?;
    let start: i64 = start.trim().parse().map_err(|_| bad())?;
    if bits.is_empty() {
        return Err(bad());
    }
    let bits = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Window::new(start, bits))
}

/// Reads the problem file and runs the command.
pub fn run(args: &Args) -> CmdResult {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", args.input.display())))?;
    let problem = parse_problem(&text)?;
    dispatch(args, &problem)
}

fn with_command(command: Command, mut report: Value) -> Value {
    report["command"] = json!(command.name());
    report
}

fn ok(exit_true: bool, report: Value) -> CmdResult {
    Ok(Outcome {
        exit: if exit_true { EXIT_OK } else { EXIT_FALSE },
        report,
    })
}

pub fn dispatch(args: &Args, p: &ProblemFile) -> CmdResult {
    let cmd = args.command;
    let t = args.t.or(p.t);
    let limits = SearchLimits {
        max_nodes: args.max_nodes,
        max_d: args.max_d,
    };
    let outcome = match cmd {
        Command::Image => {
            let r = image_repfn(&p.form, &p.sets)?;
            let d = diameter_report(&p.form, &p.sets)?;
            let image: Vec<i64> = r.iter().map(|(n, _)| n).collect();
            ok(
                true,
                json!({
                    "image": image,
                    "g_min": d.g_min,
                    "g_max": d.g_max,
                    "diameter": d.diameter,
                    "count_min": d.count_min,
                    "count_max": d.count_max,
                }),
            )
        }
        Command::Repfn => repfn(args, p),
        Command::Modrep => {
            let m = args.m.ok_or_else(|| missing("-m", cmd))?;
            let counts = modular_repfn(&p.form, &p.sets, m)?;
            ok(true, json!({"m": m, "counts": counts}))
        }
        Command::Cyclotomy => {
            let m = args.m.ok_or_else(|| missing("-m", cmd))?;
            let t = t.ok_or_else(|| missing("t", cmd))?;
            let r = check_condition(&p.form, &p.sets, m, t)?;
            ok(
                r.verdict,
                json!({
                    "m": m,
                    "t": t,
                    "verdict": r.verdict,
                    "L": r.shift,
                    "coefficients": r.reduced.coeffs(),
                }),
            )
        }
        Command::Check => {
            let form = p.augmented()?;
            let b = p.b.as_ref().ok_or_else(|| missing("B", cmd))?;
            let t = t.ok_or_else(|| missing("t", cmd))?;
            let cert = check_t_complementing(&form, &p.sets, b, t)?;
            let summary = if cert.verdict {
                format!("t-complementing over period {}", cert.period_checked)
            } else {
                "not t-complementing".to_string()
            };
            let mut report = certificate_json(&cert);
            report["t"] = json!(t);
            report["summary"] = json!(summary);
            ok(cert.verdict, report)
        }
        Command::Extend => {
            let form = p.augmented()?;
            let t = t.ok_or_else(|| missing("t", cmd))?;
            let seed = parse_seed(args.seed.as_deref().ok_or_else(|| missing("--seed", cmd))?)?;
            let from = args.from.ok_or_else(|| missing("--from", cmd))?;
            let to = args.to.ok_or_else(|| missing("--to", cmd))?;
            let ctx = build_context(&form, &p.sets, t)?;
            match extend(&ctx, &seed, from, to) {
                Ok(w) => ok(
                    true,
                    json!({
                        "verdict": true,
                        "start": w.start,
                        "bits": w.bit_string(),
                        "d": ctx.d,
                        "reflected": ctx.reflected(),
                    }),
                ),
                Err(Error::Inconsistent { index }) => ok(
                    false,
                    json!({"verdict": false, "inconsistent_at": index, "d": ctx.d}),
                ),
                Err(e) => Err(e.into()),
            }
        }
        Command::Period => {
            let form = p.augmented()?;
            let t = t.ok_or_else(|| missing("t", cmd))?;
            let seed = parse_seed(args.seed.as_deref().ok_or_else(|| missing("--seed", cmd))?)?;
            let ctx = build_context(&form, &p.sets, t)?;
            match detect_period(&ctx, &seed, args.max_d) {
                Ok(r) => {
                    let cert = check_t_complementing(&form, &p.sets, &r.periodic_set, t)?;
                    let mut report = certificate_json(&cert);
                    report["period"] = json!(r.period);
                    report["bound"] = json!(r.bound);
                    report["modulus"] = json!(r.periodic_set.modulus());
                    report["residues"] = json!(r.periodic_set.residues());
                    report["preperiod_checked"] = json!(r.preperiod_checked);
                    report["d"] = json!(ctx.d);
                    ok(cert.verdict, report)
                }
                Err(Error::Inconsistent { index }) => ok(
                    false,
                    json!({"verdict": false, "inconsistent_at": index, "d": ctx.d}),
                ),
                Err(e) => Err(e.into()),
            }
        }
        Command::Solve => {
            let form = p.augmented()?;
            let n = args.n.ok_or_else(|| missing("-N", cmd))?;
            let target = match (&p.f, args.t) {
                (_, Some(t)) => TargetFunction::constant(t),
                (Some(f), None) => f.clone(),
                (None, None) => TargetFunction::constant(t.ok_or_else(|| missing("f or t", cmd))?),
            };
            let problem = WindowProblem::new(&form, &p.sets, &target, n)?.with_max_nodes(limits.max_nodes);
            let r = solve_window(&problem)?;
            let mut report = json!({
                "status": r.status.as_str(),
                "nodes": r.nodes_explored,
                "N": n,
                "candidates": [problem.bound.lo, problem.bound.hi],
            });
            if let Some(w) = &r.witness {
                report["witness"] = json!(w);
            }
            let exit = match r.status {
                SolveStatus::Solved => EXIT_OK,
                SolveStatus::Unsat => EXIT_FALSE,
                SolveStatus::ResourceLimit => EXIT_ERROR,
            };
            Ok(Outcome { exit, report })
        }
        Command::Stabilize => {
            let form = p.augmented()?;
            let t = t.ok_or_else(|| missing("t", cmd))?;
            let max_n = args.n.unwrap_or(DEFAULT_STABILIZE_N);
            let s = stabilize(&form, &p.sets, t, max_n, limits)?;
            let steps: Vec<Value> = s
                .log
                .iter()
                .map(|step| {
                    let (outcome, set) = match &step.outcome {
                        StepOutcome::Unsat => ("unsat", None),
                        StepOutcome::NoPeriod(_) => ("no_period", None),
                        StepOutcome::Rejected(b) => ("rejected", Some(b)),
                        StepOutcome::Accepted(b) => ("accepted", Some(b)),
                    };
                    let mut v = json!({"N": step.n, "nodes": step.nodes, "outcome": outcome});
                    if let Some(w) = &step.witness {
                        v["witness"] = json!(w);
                    }
                    if let Some(seed) = &step.seed {
                        v["seed"] = json!(format!("{}:{}", seed.start, seed.bit_string()));
                    }
                    if let Some(b) = set {
                        v["modulus"] = json!(b.modulus());
                        v["residues"] = json!(b.residues());
                    }
                    v
                })
                .collect();
            let nodes: u64 = s.log.iter().map(|step| step.nodes).sum();
            let mut report = json!({
                "verdict": s.complement.is_some(),
                "bound": s.bound,
                "d": s.d,
                "nodes": nodes,
                "steps": steps,
            });
            if let Some(b) = &s.complement {
                report["period"] = json!(b.modulus());
                report["modulus"] = json!(b.modulus());
                report["residues"] = json!(b.residues());
            }
            ok(s.complement.is_some(), report)
        }
    }?;
    Ok(Outcome {
        exit: outcome.exit,
        report: with_command(cmd, outcome.report),
    })
}

fn repfn(args: &Args, p: &ProblemFile) -> CmdResult {
    match (&p.b, p.v) {
        (Some(b), Some(_)) => {
            let form = p.augmented()?;
            let period = form.v().abs() * b.modulus();
            let from = args.from.unwrap_or(0);
            let to = args.to.unwrap_or(from + period - 1);
            if to < from {
                return Err(UsageError(format!("empty range [{from}, {to}]")));
            }
            let counter = AugmentedCounter::new(&form, &p.sets)?;
            let counts = (from..=to)
                .map(|n| counter.count_periodic(b, n).map(|c| json!([n, c])))
                .collect::<Result<Vec<_>, _>>()?;
            ok(true, json!({"from": from, "to": to, "counts": counts}))
        }
        _ => {
            let r = image_repfn(&p.form, &p.sets)?;
            let support: Vec<Value> = r.iter().map(|(n, c)| json!([n, c])).collect();
            ok(true, json!({"support": support, "mass": r.total_mass()}))
        }
    }
}

fn certificate_json(cert: &ComplementCertificate) -> Value {
    let violations: Vec<Value> = cert
        .first_violation
        .iter()
        .map(|v| json!({"n": v.n, "observed": v.observed, "expected": v.expected}))
        .collect();
    json!({
        "verdict": cert.verdict,
        "period": cert.period_checked,
        "violations": violations,
    })
}

/// Renders a report in the requested format, newline-terminated.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(report).expect("serializable report")),
        Format::Tsv => {
            let mut out = String::new();
            if let Value::Object(map) = report {
                for (k, v) in map {
                    out.push_str(k);
                    out.push('\t');
                    out.push_str(&tsv_cell(v));
                    out.push('\n');
                }
            }
            out
        }
    }
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            items.iter().map(tsv_cell).collect::<Vec<_>>().join(",")
        }
        other => other.to_string(),
    }
}
