//! The JSON problem file read by the command-line tool.
//!
//! ```json
//! {"u": [1], "v": 1, "A": [[0, 1]],
//!  "B": {"modulus": 2, "residues": [0]}, "t": 1,
//!  "f": {"default": 1, "overrides": {"0": 2}}}
//! ```
//!
//! `v`, `B`, `t` and `f` are optional; `f.default` may be the string `"inf"`.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::Error;
use crate::forms::{AugmentedForm, LinearForm, SetTuple};
use crate::periodic::PeriodicSet;
use crate::solver::{TargetFunction, TargetValue};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Invalid(String),
}

impl From<Error> for ProblemError {
    fn from(e: Error) -> Self {
        ProblemError::Invalid(e.to_string())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPeriodic {
    modulus: i64,
    residues: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawTargetValue {
    Finite(u64),
    Word(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    default: RawTargetValue,
    #[serde(default)]
    overrides: BTreeMap<String, u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    u: Vec<i64>,
    v: Option<i64>,
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    b: Option<RawPeriodic>,
    t: Option<u64>,
    f: Option<RawTarget>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub form: LinearForm,
    pub v: Option<i64>,
    pub sets: SetTuple,
    pub b: Option<PeriodicSet>,
    pub t: Option<u64>,
    pub f: Option<TargetFunction>,
}

fn invalid(msg: impl Into<String>) -> ProblemError {
    ProblemError::Invalid(msg.into())
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let raw: RawProblem = serde_json::from_str(text)?;
    let form = LinearForm::new(raw.u)?;
    if raw.a.len() != form.arity() {
        return Err(invalid(format!(
            "A has {} sets but u has {} coefficients",
            raw.a.len(),
            form.arity()
        )));
    }
    let sets = SetTuple::new(raw.a)?;
    if raw.v == Some(0) {
        return Err(invalid("zero coefficient v"));
    }
    let b = raw
        .b
        .map(|p| PeriodicSet::new(p.modulus, p.residues))
        .transpose()
        .map_err(|e| invalid(format!("B: {e}")))?;
    let f = raw.f.map(parse_target).transpose()?;
    Ok(ProblemFile {
        form,
        v: raw.v,
        sets,
        b,
        t: raw.t,
        f,
    })
}

fn parse_target(raw: RawTarget) -> Result<TargetFunction, ProblemError> {
    let default = match raw.default {
        RawTargetValue::Finite(c) => TargetValue::Finite(c),
        RawTargetValue::Word(w) if w == "inf" => TargetValue::Unbounded,
        RawTargetValue::Word(w) => {
            return Err(invalid(format!("f.default: expected integer or \"inf\", got {w:?}")))
        }
    };
    let overrides = raw
        .overrides
        .into_iter()
        .map(|(k, c)| {
            k.trim()
                .parse::<i64>()
                .map(|n| (n, c))
                .map_err(|_| invalid(format!("f.overrides: key {k:?} is not an integer")))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    TargetFunction::new(default, overrides).map_err(|e| invalid(format!("f: {e}")))
}

impl ProblemFile {
    pub fn augmented(&self) -> Result<AugmentedForm, ProblemError> {
        let v = self.v.ok_or_else(|| invalid("missing field v"))?;
        Ok(AugmentedForm::new(self.form.clone(), v)?)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("u".into(), json!(self.form.coeffs()));
        if let Some(v) = self.v {
            obj.insert("v".into(), json!(v));
        }
        obj.insert("A".into(), json!(self.sets.sets()));
        if let Some(b) = &self.b {
            obj.insert(
                "B".into(),
                json!({"modulus": b.modulus(), "residues": b.residues()}),
            );
        }
        if let Some(t) = self.t {
            obj.insert("t".into(), json!(t));
        }
        if let Some(f) = &self.f {
            let default = match f.default_value() {
                TargetValue::Finite(c) => json!(c),
                TargetValue::Unbounded => json!("inf"),
            };
            let overrides: serde_json::Map<String, Value> = f
                .overrides()
                .iter()
                .map(|(n, c)| (n.to_string(), json!(c)))
                .collect();
            obj.insert("f".into(), json!({"default": default, "overrides": overrides}));
        }
        Value::Object(obj)
    }
}
