//! Window recursion for the characteristic function of a t-complement.
//!
//! With `g_min`, `g_max` the extremes of `psi(A)` and `v >= 1`, every
//! t-complement `B` satisfies
//!
//! ```text
//! |G_min| chi(n) = t - sum_{k in F} chi(n - k)     (from R(v n + g_min) = t)
//! |G_max| chi(n) = t - sum_{k in K} chi(n + k)     (from R(v n + g_max) = t)
//! ```
//!
//! where the offset multisets `F` and `K` lie in `[1, d]`, `d = floor((g_max -
//! g_min) / v)`. Any `d` consecutive values of `chi` therefore determine `B`,
//! and the `d`-bit states must repeat within `2^d` steps.
//!
//! For `v > 1` these relations only pin the counts at `n = g_min` and
//! `n = g_max (mod v)`; candidates found here still need
//! [`check_t_complementing`](crate::periodic::check_t_complementing).

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::forms::{fold_mod, image_repfn, report_from_repfn, AugmentedForm, RepFunction, SetTuple};
use crate::periodic::PeriodicSet;

pub const DEFAULT_MAX_D: u32 = 24;
/// States are packed into a `u64`.
pub const HARD_MAX_D: u32 = 63;

#[derive(Debug, Clone)]
pub struct RecursionContext {
    form: AugmentedForm,
    reflected: bool,
    t: u64,
    image: RepFunction,
    pub g_min: i64,
    pub g_max: i64,
    pub count_min: u64,
    pub count_max: u64,
    pub d: u64,
    /// offset -> multiplicity
    pub forward_offsets: BTreeMap<u64, u64>,
    pub backward_offsets: BTreeMap<u64, u64>,
}

impl RecursionContext {
    /// The normalized form (`v >= 1`) the context was built on.
    pub fn form(&self) -> &AugmentedForm {
        &self.form
    }

    /// Whether the input form had `v < 0` and was negated.
    pub fn reflected(&self) -> bool {
        self.reflected
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// `2^d`, saturating.
    pub fn period_bound(&self) -> u64 {
        if self.d >= 64 {
            u64::MAX
        } else {
            1u64 << self.d
        }
    }

    fn solve(&self, n: i64, rhs: i128, fiber: u64) -> Result<bool> {
        if rhs == 0 {
            Ok(false)
        } else if rhs == fiber as i128 {
            Ok(true)
        } else {
            Err(Error::Inconsistent { index: n })
        }
    }

    fn forward_value(&self, n: i64, chi: impl Fn(i64) -> bool) -> Result<bool> {
        let mut rhs = self.t as i128;
        for (&k, &mult) in &self.forward_offsets {
            if chi(n - k as i64) {
                rhs -= mult as i128;
            }
        }
        self.solve(n, rhs, self.count_min)
    }

    fn backward_value(&self, n: i64, chi: impl Fn(i64) -> bool) -> Result<bool> {
        let mut rhs = self.t as i128;
        for (&k, &mult) in &self.backward_offsets {
            if chi(n + k as i64) {
                rhs -= mult as i128;
            }
        }
        self.solve(n, rhs, self.count_max)
    }

    fn require_gap(&self) -> Result<usize> {
        if self.d == 0 {
            return Err(Error::DegenerateGap);
        }
        usize::try_from(self.d).map_err(|_| Error::GapTooLarge {
            d: self.d,
            max: HARD_MAX_D,
        })
    }

    /// Direct analysis for `d = 0`, where the recursion has no offsets.
    ///
    /// Every image value is then alone in its class mod `v`, so each `n`
    /// sees at most one `b`. For `t >= 1` the only candidate is `B = Z`,
    /// which works iff every class mod `v` carries exactly `t` tuples.
    /// For `t = 0` only the empty set works.
    pub fn degenerate_complement(&self) -> Result<Option<PeriodicSet>> {
        if self.d != 0 {
            return Err(Error::InvalidTarget(format!(
                "degenerate analysis needs d = 0, got d = {}",
                self.d
            )));
        }
        if self.t == 0 {
            return Ok(Some(PeriodicSet::new(1, vec![])?));
        }
        let classes = fold_mod(&self.image, self.form.v());
        Ok(classes
            .iter()
            .all(|&c| c == self.t)
            .then(PeriodicSet::integers))
    }
}

pub fn build_context(form: &AugmentedForm, a: &SetTuple, t: u64) -> Result<RecursionContext> {
    let (form, reflected) = form.normalized()?;
    let v = form.v();
    let image = image_repfn(form.base(), a)?;
    let report = report_from_repfn(&image);
    let d = report.diameter / v as u64;

    let mut forward_offsets = BTreeMap::new();
    let mut backward_offsets = BTreeMap::new();
    for (g, c) in image.iter() {
        let up = g.abs_diff(report.g_min);
        if up > 0 && up % v as u64 == 0 {
            *forward_offsets.entry(up / v as u64).or_insert(0) += c;
        }
        let down = report.g_max.abs_diff(g);
        if down > 0 && down % v as u64 == 0 {
            *backward_offsets.entry(down / v as u64).or_insert(0) += c;
        }
    }

    Ok(RecursionContext {
        form,
        reflected,
        t,
        image,
        g_min: report.g_min,
        g_max: report.g_max,
        count_min: report.count_min,
        count_max: report.count_max,
        d,
        forward_offsets,
        backward_offsets,
    })
}

/// Consecutive values `chi(start), chi(start + 1), ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    pub start: i64,
    pub bits: Vec<bool>,
}

impl Window {
    pub fn new(start: i64, bits: Vec<bool>) -> Self {
        Self { start, bits }
    }

    /// Samples `B` on `[start, start + len)`.
    pub fn from_set(b: &PeriodicSet, start: i64, len: usize) -> Self {
        Self {
            start,
            bits: (0..len as i64).map(|i| b.contains(start + i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Last covered index.
    pub fn end(&self) -> i64 {
        self.start + self.bits.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<bool> {
        let i = n.checked_sub(self.start)?;
        usize::try_from(i).ok().and_then(|i| self.bits.get(i).copied())
    }

    /// Sub-window `[lo, lo + len)`; panics if not covered.
    pub fn slice(&self, lo: i64, len: usize) -> Window {
        let i = (lo - self.start) as usize;
        Window::new(lo, self.bits[i..i + len].to_vec())
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Computes `chi(n)` for `n = window.end() + 1`.
pub fn forward_step(ctx: &RecursionContext, window: &Window) -> Result<bool> {
    let d = ctx.require_gap()?;
    if window.len() < d {
        return Err(Error::WindowTooShort {
            len: window.len(),
            d: ctx.d,
        });
    }
    let n = window.end() + 1;
    ctx.forward_value(n, |i| window.get(i).unwrap_or(false))
}

/// Computes `chi(n)` for `n = window.start - 1`.
pub fn backward_step(ctx: &RecursionContext, window: &Window) -> Result<bool> {
    let d = ctx.require_gap()?;
    if window.len() < d {
        return Err(Error::WindowTooShort {
            len: window.len(),
            d: ctx.d,
        });
    }
    let n = window.start - 1;
    ctx.backward_value(n, |i| window.get(i).unwrap_or(false))
}

/// Growable window used during extension.
struct Tape {
    start: i64,
    bits: VecDeque<bool>,
}

impl Tape {
    fn from_window(w: &Window) -> Self {
        Self {
            start: w.start,
            bits: w.bits.iter().copied().collect(),
        }
    }

    fn end(&self) -> i64 {
        self.start + self.bits.len() as i64 - 1
    }

    fn get(&self, n: i64) -> bool {
        self.bits[(n - self.start) as usize]
    }

    fn push_forward(&mut self, ctx: &RecursionContext) -> Result<bool> {
        let n = self.end() + 1;
        let bit = ctx.forward_value(n, |i| self.get(i))?;
        self.bits.push_back(bit);
        Ok(bit)
    }

    fn push_backward(&mut self, ctx: &RecursionContext) -> Result<bool> {
        let n = self.start - 1;
        let bit = ctx.backward_value(n, |i| self.get(i))?;
        self.bits.push_front(bit);
        self.start = n;
        Ok(bit)
    }

    fn into_window(self) -> Window {
        Window::new(self.start, self.bits.into())
    }
}

/// Seeds longer than `d` must already obey the forward relation.
fn check_seed(ctx: &RecursionContext, seed: &Window, d: usize) -> Result<()> {
    if seed.len() < d {
        return Err(Error::WindowTooShort {
            len: seed.len(),
            d: ctx.d,
        });
    }
    for n in seed.start + d as i64..=seed.end() {
        let want = ctx.forward_value(n, |i| seed.get(i).unwrap_or(false))?;
        if Some(want) != seed.get(n) {
            return Err(Error::Inconsistent { index: n });
        }
    }
    Ok(())
}

/// Extends `seed` to cover `[lo, hi]`, forward first, then backward.
pub fn extend(ctx: &RecursionContext, seed: &Window, lo: i64, hi: i64) -> Result<Window> {
    let d = ctx.require_gap()?;
    check_seed(ctx, seed, d)?;
    if lo > seed.start || hi < seed.end() {
        return Err(Error::RangeExcludesSeed { lo, hi });
    }
    let mut tape = Tape::from_window(seed);
    while tape.end() < hi {
        tape.push_forward(ctx)?;
    }
    while tape.start > lo {
        tape.push_backward(ctx)?;
    }
    Ok(tape.into_window())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    /// Minimal period of `periodic_set`.
    pub period: i64,
    /// `2^d`.
    pub bound: u64,
    pub periodic_set: PeriodicSet,
    /// The seed and a backward extension of one full period before it agree
    /// with `periodic_set`.
    pub preperiod_checked: bool,
    /// First repeated state: `B(j1) = B(j2)`.
    pub first_repeat: (i64, i64),
}

/// Steps forward from `seed` until a `d`-bit state repeats, then reads the
/// periodic set off the cycle.
pub fn detect_period(ctx: &RecursionContext, seed: &Window, max_d: u32) -> Result<PeriodReport> {
    let d = ctx.require_gap()?;
    let limit = max_d.min(HARD_MAX_D);
    if ctx.d > limit as u64 {
        return Err(Error::GapTooLarge {
            d: ctx.d,
            max: limit,
        });
    }
    check_seed(ctx, seed, d)?;

    let j0 = seed.start;
    let mut tape = Tape::from_window(&seed.slice(j0, d));
    let mut state = (0..d).fold(0u64, |s, i| s | (u64::from(tape.get(j0 + i as i64)) << i));
    let mut seen: HashMap<u64, i64> = HashMap::new();
    let mut j = j0;
    let (j1, j2) = loop {
        if let Some(&first) = seen.get(&state) {
            break (first, j);
        }
        seen.insert(state, j);
        let bit = tape.push_forward(ctx)?;
        state = (state >> 1) | (u64::from(bit) << (d - 1));
        j += 1;
    };

    let p = j2 - j1;
    let residues = (j1..j2)
        .filter(|&n| tape.get(n))
        .map(|n| n.rem_euclid(p))
        .collect();
    let raw = PeriodicSet::new(p, residues)?;

    let mut preperiod_checked = (j0..=tape.end()).all(|n| tape.get(n) == raw.contains(n));
    if preperiod_checked {
        for _ in 0..p {
            match tape.push_backward(ctx) {
                Ok(bit) if bit == raw.contains(tape.start) => {}
                _ => {
                    preperiod_checked = false;
                    break;
                }
            }
        }
    }

    let periodic_set = raw.normalize();
    Ok(PeriodReport {
        period: periodic_set.modulus(),
        bound: ctx.period_bound(),
        periodic_set,
        preperiod_checked,
        first_repeat: (j1, j2),
    })
}
