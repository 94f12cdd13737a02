//! Finite-window inverse problems: find a finite `B` with
//! `R_{A,B}(n) = f(n)` for `|n| <= N`, and a driver that turns window
//! solutions for growing `N` into a verified periodic complement.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{AugmentedCounter, AugmentedForm, SetTuple};
use crate::periodic::{check_t_complementing, PeriodicSet};
use crate::recursion::{build_context, detect_period, Window, DEFAULT_MAX_D};

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetValue {
    Finite(u64),
    /// No upper constraint.
    Unbounded,
}

/// The prescribed representation counts `f(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetFunction {
    default: TargetValue,
    overrides: BTreeMap<i64, u64>,
}

impl TargetFunction {
    pub fn new(default: TargetValue, overrides: BTreeMap<i64, u64>) -> Result<Self> {
        if default == TargetValue::Unbounded && overrides.is_empty() {
            return Err(Error::InvalidTarget(
                "constant unbounded target is not searchable".into(),
            ));
        }
        Ok(Self { default, overrides })
    }

    pub fn constant(t: u64) -> Self {
        Self {
            default: TargetValue::Finite(t),
            overrides: BTreeMap::new(),
        }
    }

    pub fn default_value(&self) -> TargetValue {
        self.default
    }

    pub fn overrides(&self) -> &BTreeMap<i64, u64> {
        &self.overrides
    }

    pub fn value(&self, n: i64) -> TargetValue {
        self.overrides
            .get(&n)
            .map_or(self.default, |&c| TargetValue::Finite(c))
    }

    /// `g(n) = f(-n)`.
    fn reflected(&self) -> Self {
        Self {
            default: self.default,
            overrides: self.overrides.iter().map(|(&n, &c)| (-n, c)).collect(),
        }
    }
}

/// `g*` and the integer candidates `b` with `v|b| <= N + g*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateBound {
    pub g_star: u64,
    pub lo: i64,
    pub hi: i64,
}

pub fn candidate_bound(form: &AugmentedForm, a: &SetTuple, n: u64) -> Result<CandidateBound> {
    let (form, _) = form.normalized()?;
    let counter = AugmentedCounter::new(&form, a)?;
    let (g_min, _) = counter.image().min().expect("nonempty image");
    let (g_max, _) = counter.image().max().expect("nonempty image");
    let g_star = g_min.unsigned_abs().max(g_max.unsigned_abs());
    let reach = n
        .checked_add(g_star)
        .map(|r| r / form.v() as u64)
        .and_then(|r| i64::try_from(r).ok())
        .ok_or(Error::Overflow("candidate interval"))?;
    Ok(CandidateBound {
        g_star,
        lo: -reach,
        hi: reach,
    })
}

#[derive(Debug, Clone)]
pub struct WindowProblem {
    form: AugmentedForm,
    reflected: bool,
    tuple: SetTuple,
    /// Target in the coordinates of the normalized form.
    target: TargetFunction,
    pub n: u64,
    pub bound: CandidateBound,
    pub max_nodes: u64,
}

impl WindowProblem {
    pub fn new(form: &AugmentedForm, a: &SetTuple, target: &TargetFunction, n: u64) -> Result<Self> {
        if i64::try_from(n).is_err() {
            return Err(Error::Overflow("window radius"));
        }
        let (normal, reflected) = form.normalized()?;
        let bound = candidate_bound(&normal, a, n)?;
        Ok(Self {
            form: normal,
            reflected,
            tuple: a.clone(),
            target: if reflected { target.reflected() } else { target.clone() },
            n,
            bound,
            max_nodes: DEFAULT_MAX_NODES,
        })
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn reflected(&self) -> bool {
        self.reflected
    }

    pub fn candidate_count(&self) -> u64 {
        (self.bound.hi - self.bound.lo + 1) as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Solved,
    Unsat,
    ResourceLimit,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Solved => "solved",
            SolveStatus::Unsat => "unsat",
            SolveStatus::ResourceLimit => "resource_limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub witness: Option<Vec<i64>>,
    pub nodes_explored: u64,
}

struct Search<'a> {
    /// window index -> f(n), `None` when unbounded
    target: Vec<Option<u64>>,
    count: Vec<u64>,
    /// contributions still available from undecided candidates
    remaining: Vec<u64>,
    /// per candidate: (window index, multiplicity)
    contrib: &'a [Vec<(usize, u64)>],
    chosen: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
}

enum Outcome {
    Found,
    Exhausted,
    Budget,
}

impl Search<'_> {
    fn consistent_at(&self, i: usize) -> bool {
        match self.target[i] {
            Some(f) => self.count[i] <= f && self.count[i] + self.remaining[i] >= f,
            None => true,
        }
    }

    fn run(&mut self, k: usize) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Outcome::Budget;
        }
        if k == self.contrib.len() {
            return Outcome::Found;
        }
        let contrib = self.contrib;
        for &(i, c) in &contrib[k] {
            self.remaining[i] -= c;
        }

        // include
        for &(i, c) in &contrib[k] {
            self.count[i] += c;
        }
        if contrib[k].iter().all(|&(i, _)| self.consistent_at(i)) {
            self.chosen[k] = true;
            match self.run(k + 1) {
                Outcome::Exhausted => self.chosen[k] = false,
                other => return other,
            }
        }
        for &(i, c) in &contrib[k] {
            self.count[i] -= c;
        }

        // exclude
        if contrib[k].iter().all(|&(i, _)| self.consistent_at(i)) {
            match self.run(k + 1) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        for &(i, c) in &contrib[k] {
            self.remaining[i] += c;
        }
        Outcome::Exhausted
    }
}

/// Depth-first search over candidate membership, ascending, include before
/// exclude. Candidates that reach no `n` in `[-N, N]` are never included,
/// so the first witness is canonical.
pub fn solve_window(problem: &WindowProblem) -> Result<SolveResult> {
    let counter = AugmentedCounter::new(&problem.form, &problem.tuple)?;
    let image: Vec<(i64, u64)> = counter.image().iter().collect();
    let radius = problem.n as i64;
    let width = 2 * problem.n as usize + 1;
    let v = problem.form.v();
    let index = |n: i64| -> Option<usize> { (n.abs() <= radius).then(|| (n + radius) as usize) };

    let mut candidates = Vec::new();
    let mut contrib = Vec::new();
    for b in problem.bound.lo..=problem.bound.hi {
        let vb = v.checked_mul(b).ok_or(Error::Overflow("candidate image"))?;
        let hits: Vec<(usize, u64)> = image
            .iter()
            .filter_map(|&(g, c)| g.checked_add(vb).and_then(index).map(|i| (i, c)))
            .collect();
        if !hits.is_empty() {
            candidates.push(b);
            contrib.push(hits);
        }
    }

    let target: Vec<Option<u64>> = (-radius..=radius)
        .map(|n| match problem.target.value(n) {
            TargetValue::Finite(f) => Some(f),
            TargetValue::Unbounded => None,
        })
        .collect();
    let mut remaining = vec![0u64; width];
    for hits in &contrib {
        for &(i, c) in hits {
            remaining[i] += c;
        }
    }

    let mut search = Search {
        target,
        count: vec![0; width],
        remaining,
        contrib: &contrib,
        chosen: vec![false; candidates.len()],
        nodes: 0,
        max_nodes: problem.max_nodes,
    };
    let root_ok = (0..width).all(|i| search.consistent_at(i));
    let outcome = if root_ok {
        search.run(0)
    } else {
        search.nodes = 1;
        Outcome::Exhausted
    };

    let (status, witness) = match outcome {
        Outcome::Found => {
            let witness: Vec<i64> = candidates
                .iter()
                .zip(&search.chosen)
                .filter_map(|(&b, &on)| on.then_some(b))
                .collect();
            verify_witness(problem, &counter, &witness)?;
            (SolveStatus::Solved, Some(witness))
        }
        Outcome::Exhausted => (SolveStatus::Unsat, None),
        Outcome::Budget => (SolveStatus::ResourceLimit, None),
    };
    Ok(SolveResult {
        status,
        witness,
        nodes_explored: search.nodes,
    })
}

fn verify_witness(problem: &WindowProblem, counter: &AugmentedCounter, witness: &[i64]) -> Result<()> {
    let radius = problem.n as i64;
    for n in -radius..=radius {
        if let TargetValue::Finite(f) = problem.target.value(n) {
            let got = counter.count_finite(witness, n)?;
            assert_eq!(got, f, "solver witness fails at n = {n}");
        }
    }
    Ok(())
}

/// `B - c`; only defined for `v = 1`.
pub fn recenter(form: &AugmentedForm, b: &[i64], c: i64) -> Result<Vec<i64>> {
    if form.v() != 1 {
        return Err(Error::RecenterNeedsUnitV(form.v()));
    }
    b.iter()
        .map(|x| x.checked_sub(c).ok_or(Error::Overflow("recenter")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Unsat,
    /// The central window did not extend to a period.
    NoPeriod(Error),
    /// A period was found but the set is not t-complementing.
    Rejected(PeriodicSet),
    Accepted(PeriodicSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizeStep {
    pub n: u64,
    pub nodes: u64,
    pub witness: Option<Vec<i64>>,
    pub seed: Option<Window>,
    pub outcome: StepOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizeOutcome {
    pub complement: Option<PeriodicSet>,
    /// `2^d`.
    pub bound: u64,
    pub d: u64,
    pub log: Vec<StabilizeStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub max_d: u32,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_MAX_NODES,
            max_d: DEFAULT_MAX_D,
        }
    }
}

/// Solves the constant-`t` window problem for `N = 1, 2, ...` and seeds the
/// period detector with the central `d` bits of each witness, stopping at
/// the first candidate that verifies.
pub fn stabilize(
    form: &AugmentedForm,
    a: &SetTuple,
    t: u64,
    max_n: u64,
    limits: SearchLimits,
) -> Result<StabilizeOutcome> {
    let ctx = build_context(form, a, t)?;
    let mut outcome = StabilizeOutcome {
        complement: None,
        bound: ctx.period_bound(),
        d: ctx.d,
        log: Vec::new(),
    };
    if ctx.d == 0 {
        outcome.complement = ctx
            .degenerate_complement()?
            .filter(|b| check_t_complementing(form, a, b, t).is_ok_and(|c| c.verdict));
        return Ok(outcome);
    }

    let target = TargetFunction::constant(t);
    let d = ctx.d as usize;
    for n in 1..=max_n {
        let problem = WindowProblem::new(form, a, &target, n)?.with_max_nodes(limits.max_nodes);
        let result = solve_window(&problem)?;
        let mut step = StabilizeStep {
            n,
            nodes: result.nodes_explored,
            witness: result.witness.clone(),
            seed: None,
            outcome: StepOutcome::Unsat,
        };
        match result.status {
            SolveStatus::ResourceLimit => {
                return Err(Error::ResourceLimit {
                    nodes: result.nodes_explored,
                })
            }
            SolveStatus::Unsat => {
                // larger windows only add constraints
                outcome.log.push(step);
                return Ok(outcome);
            }
            SolveStatus::Solved => {}
        }
        let witness = result.witness.expect("solved result carries a witness");
        let start = -(ctx.d as i64 / 2);
        let seed = Window::new(
            start,
            (start..start + d as i64).map(|i| witness.contains(&i)).collect(),
        );
        step.outcome = match detect_period(&ctx, &seed, limits.max_d) {
            Ok(report) => {
                let set = report.periodic_set;
                if check_t_complementing(form, a, &set, t)?.verdict {
                    StepOutcome::Accepted(set)
                } else {
                    StepOutcome::Rejected(set)
                }
            }
            Err(e @ Error::Inconsistent { .. }) => StepOutcome::NoPeriod(e),
            Err(e) => return Err(e),
        };
        step.seed = Some(seed);
        let accepted = match &step.outcome {
            StepOutcome::Accepted(set) => Some(set.clone()),
            _ => None,
        };
        outcome.log.push(step);
        if accepted.is_some() {
            outcome.complement = accepted;
            return Ok(outcome);
        }
    }
    Ok(outcome)
}
