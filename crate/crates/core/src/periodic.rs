//! Infinite periodic sets of integers and verification of t-complementing
//! pairs against them.

use crate::error::{Error, Result};
use crate::forms::{AugmentedCounter, AugmentedForm, SetTuple};

/// A union of residue classes modulo `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSet {
    modulus: i64,
    residues: Vec<i64>,
}

impl PeriodicSet {
    pub fn new(modulus: i64, mut residues: Vec<i64>) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::InvalidModulus(modulus));
        }
        if let Some(&r) = residues.iter().find(|&&r| r < 0 || r >= modulus) {
            return Err(Error::ResidueOutOfRange {
                residue: r,
                modulus,
            });
        }
        residues.sort_unstable();
        if let Some(w) = residues.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateResidue(w[0]));
        }
        Ok(Self { modulus, residues })
    }

    /// The set of all integers.
    pub fn integers() -> Self {
        Self {
            modulus: 1,
            residues: vec![0],
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    pub fn contains(&self, n: i64) -> bool {
        self.residues
            .binary_search(&n.rem_euclid(self.modulus))
            .is_ok()
    }

    /// The same set written modulo `k * m`.
    pub fn expanded(&self, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidModulus(k));
        }
        let modulus = self
            .modulus
            .checked_mul(k)
            .ok_or(Error::Overflow("expanded modulus"))?;
        let residues = (0..k)
            .flat_map(|j| self.residues.iter().map(move |&r| r + j * self.modulus))
            .collect();
        Self::new(modulus, residues)
    }

    /// Rewrites the set with its minimal modulus.
    pub fn normalize(&self) -> Self {
        let m = self.modulus;
        let p = (1..=m)
            .filter(|p| m % p == 0)
            .find(|&p| (0..m).all(|r| self.contains(r) == self.contains(r % p)))
            .unwrap_or(m);
        Self {
            modulus: p,
            residues: (0..p).filter(|&r| self.contains(r)).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize().modulus == self.modulus
    }

    /// `B - c`.
    pub fn shifted(&self, c: i64) -> Self {
        let mut residues: Vec<i64> = self
            .residues
            .iter()
            .map(|&r| (r - c.rem_euclid(self.modulus)).rem_euclid(self.modulus))
            .collect();
        residues.sort_unstable();
        Self {
            modulus: self.modulus,
            residues,
        }
    }
}

pub fn member(b: &PeriodicSet, n: i64) -> bool {
    b.contains(n)
}

pub fn normalize(b: &PeriodicSet) -> PeriodicSet {
    b.normalize()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub n: i64,
    pub observed: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementCertificate {
    pub verdict: bool,
    /// Length of the window of `n` that was checked, `|v| * m`.
    pub period_checked: i64,
    pub first_violation: Option<Violation>,
}

/// Decides whether `R_{A,B}(n) = t` for every integer `n`.
///
/// The count is periodic in `n` with period `|v| * m`, so one full period
/// suffices. The window is scanned in the order `0, 1, -1, 2, -2, ...`,
/// so a reported violation has the least `|n|` (positive `n` first on ties).
pub fn check_t_complementing(
    form: &AugmentedForm,
    a: &SetTuple,
    b: &PeriodicSet,
    t: u64,
) -> Result<ComplementCertificate> {
    let b = b.normalize();
    let counter = AugmentedCounter::new(form, a)?;
    let period = form
        .v()
        .checked_abs()
        .and_then(|v| v.checked_mul(b.modulus()))
        .ok_or(Error::Overflow("check period"))?;
    let reach = period / 2;
    for k in 0..=reach {
        let points: &[i64] = if k == 0 { &[0] } else { &[k, -k] };
        for &n in points {
            let observed = counter.count_periodic(&b, n)?;
            if observed != t {
                return Ok(ComplementCertificate {
                    verdict: false,
                    period_checked: period,
                    first_violation: Some(Violation {
                        n,
                        observed,
                        expected: t,
                    }),
                });
            }
        }
    }
    Ok(ComplementCertificate {
        verdict: true,
        period_checked: period,
        first_violation: None,
    })
}
