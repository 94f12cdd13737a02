//! Linear forms, set tuples and their representation functions.
//!
//! Everything here is computed by exact enumeration of the product
//! `A_1 x ... x A_h`, with checked 64-bit arithmetic throughout.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::periodic::PeriodicSet;

/// `u_1 x_1 + ... + u_h x_h` with nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyForm);
        }
        if let Some(i) = coeffs.iter().position(|&u| u == 0) {
            return Err(Error::ZeroCoefficient(i));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Number of variables `h`.
    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn negated(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|u| u.checked_neg().ok_or(Error::Overflow("form negation")))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }
}

/// `psi(x) + v*y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AugmentedForm {
    base: LinearForm,
    v: i64,
}

impl AugmentedForm {
    pub fn new(base: LinearForm, v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::ZeroV);
        }
        Ok(Self { base, v })
    }

    pub fn base(&self) -> &LinearForm {
        &self.base
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn is_normalized(&self) -> bool {
        self.v >= 1
    }

    /// Returns the form with `v >= 1` and whether it had to be negated.
    ///
    /// Negating the form reflects its representation function,
    /// `R_{-phi}(n) = R_phi(-n)`, while leaving `B` untouched.
    pub fn normalized(&self) -> Result<(Self, bool)> {
        if self.is_normalized() {
            return Ok((self.clone(), false));
        }
        let v = self.v.checked_neg().ok_or(Error::Overflow("form negation"))?;
        Ok((
            Self {
                base: self.base.negated()?,
                v,
            },
            true,
        ))
    }
}

/// An h-tuple of finite, nonempty, duplicate-free integer sets.
///
/// Each set is stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetTuple {
    sets: Vec<Vec<i64>>,
}

impl SetTuple {
    pub fn new(sets: Vec<Vec<i64>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptySet(i));
            }
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateElement(i));
            }
            sorted.push(set);
        }
        Ok(Self { sets: sorted })
    }

    pub fn sets(&self) -> &[Vec<i64>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `prod |A_i|`, the number of tuples.
    pub fn tuple_count(&self) -> Result<u64> {
        self.sets.iter().try_fold(1u64, |acc, s| {
            acc.checked_mul(s.len() as u64)
                .ok_or(Error::Overflow("tuple count"))
        })
    }

    /// Shifts `A_i` by `c`.
    pub fn translated(&self, i: usize, c: i64) -> Result<Self> {
        let mut sets = self.sets.clone();
        for a in &mut sets[i] {
            *a = a.checked_add(c).ok_or(Error::Overflow("translation"))?;
        }
        Ok(Self { sets })
    }

    fn check_arity(&self, form: &LinearForm) -> Result<()> {
        if self.sets.len() != form.arity() {
            return Err(Error::LengthMismatch {
                expected: form.arity(),
                found: self.sets.len(),
            });
        }
        Ok(())
    }
}

/// A finitely supported map `n -> R(n)`; zero counts are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepFunction {
    support: BTreeMap<i64, u64>,
}

impl RepFunction {
    pub fn get(&self, n: i64) -> u64 {
        self.support.get(&n).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.support.iter().map(|(&n, &c)| (n, c))
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn total_mass(&self) -> u64 {
        self.support.values().sum()
    }

    pub fn min(&self) -> Option<(i64, u64)> {
        self.support.first_key_value().map(|(&n, &c)| (n, c))
    }

    pub fn max(&self) -> Option<(i64, u64)> {
        self.support.last_key_value().map(|(&n, &c)| (n, c))
    }

    fn bump(&mut self, n: i64, by: u64) {
        if by > 0 {
            *self.support.entry(n).or_insert(0) += by;
        }
    }
}

impl FromIterator<(i64, u64)> for RepFunction {
    fn from_iter<I: IntoIterator<Item = (i64, u64)>>(iter: I) -> Self {
        let mut r = RepFunction::default();
        for (n, c) in iter {
            r.bump(n, c);
        }
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiameterReport {
    pub g_min: i64,
    pub g_max: i64,
    pub diameter: u64,
    /// `|G_min|`, the number of tuples attaining `g_min`.
    pub count_min: u64,
    /// `|G_max|`.
    pub count_max: u64,
}

/// `sum u_i * x_i` with overflow detection.
pub fn eval_form(form: &LinearForm, tuple: &[i64]) -> Result<i64> {
    if tuple.len() != form.arity() {
        return Err(Error::LengthMismatch {
            expected: form.arity(),
            found: tuple.len(),
        });
    }
    form.coeffs
        .iter()
        .zip(tuple)
        .try_fold(0i64, |acc, (&u, &x)| {
            u.checked_mul(x)
                .and_then(|ux| acc.checked_add(ux))
                .ok_or(Error::Overflow("form evaluation"))
        })
}

/// Counts, for every `n`, the tuples of `A_1 x ... x A_h` with `psi(a) = n`.
pub fn image_repfn(form: &LinearForm, a: &SetTuple) -> Result<RepFunction> {
    a.check_arity(form)?;
    a.tuple_count()?;
    let sets = a.sets();
    let mut idx = vec![0usize; sets.len()];
    let mut tuple: Vec<i64> = sets.iter().map(|s| s[0]).collect();
    let mut r = RepFunction::default();
    loop {
        r.bump(eval_form(form, &tuple)?, 1);
        // odometer over the index vector, last position fastest
        let mut pos = sets.len();
        loop {
            if pos == 0 {
                return Ok(r);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sets[pos].len() {
                tuple[pos] = sets[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = sets[pos][0];
        }
    }
}

pub fn diameter_report(form: &LinearForm, a: &SetTuple) -> Result<DiameterReport> {
    let r = image_repfn(form, a)?;
    Ok(report_from_repfn(&r))
}

pub(crate) fn report_from_repfn(r: &RepFunction) -> DiameterReport {
    // a nonempty tuple always has a nonempty image
    let (g_min, count_min) = r.min().expect("image of a nonempty tuple");
    let (g_max, count_max) = r.max().expect("image of a nonempty tuple");
    DiameterReport {
        g_min,
        g_max,
        diameter: g_max.abs_diff(g_min),
        count_min,
        count_max,
    }
}

/// Entry `l` is the number of tuples with `psi(a) = l (mod m)`.
pub fn modular_repfn(form: &LinearForm, a: &SetTuple, m: i64) -> Result<Vec<u64>> {
    if m <= 0 {
        return Err(Error::InvalidModulus(m));
    }
    let r = image_repfn(form, a)?;
    Ok(fold_mod(&r, m))
}

pub(crate) fn fold_mod(r: &RepFunction, m: i64) -> Vec<u64> {
    let mut out = vec![0u64; m as usize];
    for (n, c) in r.iter() {
        out[n.rem_euclid(m) as usize] += c;
    }
    out
}

/// Counts `(a, b)` with `psi(a) + v*b = n` and `b in B`.
pub fn augmented_repfn(form: &AugmentedForm, a: &SetTuple, b: &PeriodicSet, n: i64) -> Result<u64> {
    let counter = AugmentedCounter::new(form, a)?;
    counter.count_periodic(b, n)
}

/// As [`augmented_repfn`] with `B` a finite set.
pub fn augmented_repfn_finite(
    form: &AugmentedForm,
    a: &SetTuple,
    b: &[i64],
    n: i64,
) -> Result<u64> {
    let counter = AugmentedCounter::new(form, a)?;
    counter.count_finite(b, n)
}

/// Precomputed image of `psi` for repeated evaluation of `R_{A,B}(n)`.
#[derive(Debug, Clone)]
pub struct AugmentedCounter {
    v: i64,
    image: RepFunction,
}

impl AugmentedCounter {
    pub fn new(form: &AugmentedForm, a: &SetTuple) -> Result<Self> {
        Ok(Self {
            v: form.v(),
            image: image_repfn(form.base(), a)?,
        })
    }

    pub fn image(&self) -> &RepFunction {
        &self.image
    }

    /// Sum of `R_psi(g)` over image values `g` for which `(n - g)/v` is an
    /// integer accepted by `contains`.
    fn count_with(&self, n: i64, mut contains: impl FnMut(i64) -> bool) -> Result<u64> {
        let mut total = 0u64;
        for (g, c) in self.image.iter() {
            let diff = n.checked_sub(g).ok_or(Error::Overflow("representation count"))?;
            if diff % self.v != 0 {
                continue;
            }
            if contains(diff / self.v) {
                total += c;
            }
        }
        Ok(total)
    }

    pub fn count_periodic(&self, b: &PeriodicSet, n: i64) -> Result<u64> {
        self.count_with(n, |y| b.contains(y))
    }

    pub fn count_finite(&self, b: &[i64], n: i64) -> Result<u64> {
        self.count_with(n, |y| b.contains(&y))
    }
}
