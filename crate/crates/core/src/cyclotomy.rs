//! Generating polynomials and the congruence
//! `z^L F_{A_1}(z^{u_1}) ... F_{A_h}(z^{u_h}) = t (1 + z + ... + z^{m-1}) (mod z^m - 1)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{LinearForm, SetTuple};

/// A Laurent polynomial with integer coefficients; zero terms are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff).expect("single term cannot overflow");
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot
            .checked_add(coeff)
            .ok_or(Error::Overflow("polynomial coefficient"))?;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).ok_or(Error::Overflow("polynomial exponent"))?;
                let c = c1.checked_mul(c2).ok_or(Error::Overflow("polynomial coefficient"))?;
                out.add_term(e, c)?;
            }
        }
        Ok(out)
    }

    /// Multiplies by `z^shift`.
    pub fn shifted(&self, shift: i64) -> Result<Self> {
        let terms = self
            .terms()
            .map(|(e, c)| {
                e.checked_add(shift)
                    .map(|e| (e, c))
                    .ok_or(Error::Overflow("polynomial exponent"))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { terms })
    }
}

/// A residue modulo `z^m - 1`; `coeffs[l]` is the coefficient of `z^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPoly {
    modulus: i64,
    coeffs: Vec<i64>,
}

impl CyclicPoly {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidModulus(0));
        }
        Ok(Self {
            modulus: coeffs.len() as i64,
            coeffs,
        })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).ok_or(Error::Overflow("cyclic coefficient")))
            .collect::<Result<_>>()?;
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Product in `Z[z]/(z^m - 1)`.
    pub fn cyclic_mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::LengthMismatch {
                expected: self.coeffs.len(),
                found: other.coeffs.len(),
            });
        }
        let m = self.coeffs.len();
        let mut coeffs = vec![0i64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % m;
                coeffs[k] = a
                    .checked_mul(b)
                    .and_then(|ab| coeffs[k].checked_add(ab))
                    .ok_or(Error::Overflow("cyclic coefficient"))?;
            }
        }
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Multiplies by `z^k`, i.e. rotates the coefficient vector.
    pub fn rotated(&self, k: i64) -> Self {
        let m = self.coeffs.len();
        let k = k.rem_euclid(self.modulus) as usize;
        let mut coeffs = vec![0; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % m] = c;
        }
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }
}

/// `F_A(z) = sum_{a in A} z^a`.
pub fn gen_poly(set: &[i64]) -> LaurentPoly {
    LaurentPoly {
        terms: set.iter().map(|&a| (a, 1)).collect(),
    }
}

/// `F(z) -> F(z^u)`.
pub fn substitute_power(f: &LaurentPoly, u: i64) -> Result<LaurentPoly> {
    if u == 0 {
        return Err(Error::ZeroCoefficient(0));
    }
    // u != 0 keeps exponents distinct
    let terms = f
        .terms()
        .map(|(e, c)| {
            e.checked_mul(u)
                .map(|e| (e, c))
                .ok_or(Error::Overflow("substituted exponent"))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(LaurentPoly { terms })
}

pub fn product(factors: &[LaurentPoly]) -> Result<LaurentPoly> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.mul(f))
}

/// Least `L >= 0` making `z^L F(z)` a polynomial.
pub fn min_shift(f: &LaurentPoly) -> Result<i64> {
    let low = f.min_exponent().ok_or(Error::ZeroPolynomial)?;
    Ok(if low < 0 {
        low.checked_neg().ok_or(Error::Overflow("shift"))?
    } else {
        0
    })
}

pub fn reduce_cyclic(f: &LaurentPoly, m: i64) -> Result<CyclicPoly> {
    if m < 1 {
        return Err(Error::InvalidModulus(m));
    }
    let mut coeffs = vec![0i64; m as usize];
    for (e, c) in f.terms() {
        let slot = &mut coeffs[e.rem_euclid(m) as usize];
        *slot = slot.checked_add(c).ok_or(Error::Overflow("cyclic coefficient"))?;
    }
    Ok(CyclicPoly { modulus: m, coeffs })
}

/// `1 + z + ... + z^{m-1}`.
pub fn lambda_poly(m: i64) -> Result<CyclicPoly> {
    if m < 1 {
        return Err(Error::InvalidModulus(m));
    }
    Ok(CyclicPoly {
        modulus: m,
        coeffs: vec![1; m as usize],
    })
}

/// `F(z) = prod_i F_{A_i}(z^{u_i})`.
pub fn form_generating_poly(form: &LinearForm, a: &SetTuple) -> Result<LaurentPoly> {
    if form.arity() != a.len() {
        return Err(Error::LengthMismatch {
            expected: form.arity(),
            found: a.len(),
        });
    }
    let factors = form
        .coeffs()
        .iter()
        .zip(a.sets())
        .map(|(&u, set)| substitute_power(&gen_poly(set), u))
        .collect::<Result<Vec<_>>>()?;
    product(&factors)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomyReport {
    pub verdict: bool,
    /// The minimal shift.
    pub shift: i64,
    /// `z^L F(z) mod (z^m - 1)`.
    pub reduced: CyclicPoly,
}

pub fn check_condition(form: &LinearForm, a: &SetTuple, m: i64, t: u64) -> Result<CyclotomyReport> {
    let f = form_generating_poly(form, a)?;
    let shift = min_shift(&f)?;
    let reduced = reduce_cyclic(&f.shifted(shift)?, m)?;
    let t = i64::try_from(t).map_err(|_| Error::Overflow("t"))?;
    let target = lambda_poly(m)?.scaled(t)?;
    Ok(CyclotomyReport {
        verdict: reduced == target,
        shift,
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied()).unwrap()
    }

    fn form(c: &[i64]) -> LinearForm {
        LinearForm::new(c.to_vec()).unwrap()
    }

    fn tuple(sets: &[&[i64]]) -> SetTuple {
        SetTuple::new(sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn gen_poly_examples() {
        assert_eq!(gen_poly(&[0, 1, 3]), lp(&[(0, 1), (1, 1), (3, 1)]));
        assert_eq!(gen_poly(&[-2, 0]), lp(&[(-2, 1), (0, 1)]));
        assert_eq!(gen_poly(&[5]), lp(&[(5, 1)]));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(substitute_power(&lp(&[(0, 1), (1, 1)]), -2), Ok(lp(&[(0, 1), (-2, 1)])));
        assert_eq!(substitute_power(&lp(&[(3, 1)]), 3), Ok(lp(&[(9, 1)])));
        let f = lp(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(substitute_power(&f, 1), Ok(f.clone()));
        assert!(matches!(substitute_power(&lp(&[(i64::MAX, 1)]), 2), Err(Error::Overflow(_))));
    }

    #[test]
    fn product_examples() {
        let one_z = lp(&[(0, 1), (1, 1)]);
        assert_eq!(
            product(&[one_z.clone(), lp(&[(0, 1), (2, 1)])]),
            Ok(lp(&[(0, 1), (1, 1), (2, 1), (3, 1)]))
        );
        assert_eq!(product(&[one_z.clone(), one_z.clone()]), Ok(lp(&[(0, 1), (1, 2), (2, 1)])));
        assert_eq!(product(std::slice::from_ref(&one_z)), Ok(one_z));
        assert_eq!(product(&[]), Err(Error::EmptyProduct));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = lp(&[(0, 1), (1, -1)]).mul(&lp(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(p, lp(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(min_shift(&lp(&[(-2, 1), (0, 1)])), Ok(2));
        assert_eq!(min_shift(&lp(&[(0, 1), (1, 1)])), Ok(0));
        assert_eq!(min_shift(&lp(&[(5, 1)])), Ok(0));
        assert_eq!(min_shift(&LaurentPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_cyclic(&lp(&[(5, 1), (2, 1)]), 3).unwrap().coeffs(), &[0, 0, 2]);
        assert_eq!(reduce_cyclic(&lp(&[(-1, 1)]), 2).unwrap().coeffs(), &[0, 1]);
        assert_eq!(
            reduce_cyclic(&lp(&[(0, 1), (1, 1), (2, 1), (3, 1)]), 4).unwrap().coeffs(),
            &[1, 1, 1, 1]
        );
        assert_eq!(reduce_cyclic(&lp(&[(0, 1)]), 0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_poly(3).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(lambda_poly(1).unwrap().coeffs(), &[1]);
        assert_eq!(lambda_poly(5).unwrap().coeffs(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn condition_examples() {
        let r = check_condition(&form(&[1, 1]), &tuple(&[&[0, 1], &[0, 2]]), 4, 1).unwrap();
        assert!(r.verdict);
        assert_eq!(r.shift, 0);
        assert_eq!(r.reduced.coeffs(), &[1, 1, 1, 1]);

        let r = check_condition(&form(&[-1]), &tuple(&[&[0, 1]]), 2, 1).unwrap();
        assert!(r.verdict);
        assert_eq!(r.shift, 1);
        assert_eq!(r.reduced.coeffs(), &[1, 1]);

        let r = check_condition(&form(&[1]), &tuple(&[&[0, 2]]), 2, 1).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.shift, 0);
        assert_eq!(r.reduced.coeffs(), &[2, 0]);
    }

    #[test]
    fn modulus_one_compares_total_mass() {
        let a = tuple(&[&[0, 3], &[1, 2, 9]]);
        assert!(check_condition(&form(&[2, -1]), &a, 1, 6).unwrap().verdict);
        assert!(!check_condition(&form(&[2, -1]), &a, 1, 5).unwrap().verdict);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-12i64..12, -3i64..4), 0..6)
            .prop_map(|t| LaurentPoly::from_terms(t).unwrap())
    }

    proptest! {
        #[test]
        fn reduction_is_ring_hom(f in arb_poly(), g in arb_poly(), m in 1i64..10) {
            let lhs = reduce_cyclic(&f.mul(&g).unwrap(), m).unwrap();
            let rhs = reduce_cyclic(&f, m).unwrap()
                .cyclic_mul(&reduce_cyclic(&g, m).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn shift_rotates_reduction(f in arb_poly(), m in 1i64..10, k in -20i64..20) {
            prop_assert_eq!(
                reduce_cyclic(&f.shifted(k).unwrap(), m).unwrap(),
                reduce_cyclic(&f, m).unwrap().rotated(k)
            );
        }

        #[test]
        fn verdict_unchanged_by_extra_period(
            sets in proptest::collection::vec(proptest::collection::btree_set(-6i64..7, 1..4), 1..3),
            m in 1i64..9,
            t in 0u64..4,
        ) {
            let u: Vec<i64> = (0..sets.len() as i64).map(|i| i + 1).collect();
            let a = SetTuple::new(sets.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap();
            let r = check_condition(&form(&u), &a, m, t).unwrap();
            let f = form_generating_poly(&form(&u), &a).unwrap();
            let later = reduce_cyclic(&f.shifted(r.shift + m).unwrap(), m).unwrap();
            let target = lambda_poly(m).unwrap().scaled(t as i64).unwrap();
            prop_assert_eq!(r.verdict, later == target);
        }
    }
}
