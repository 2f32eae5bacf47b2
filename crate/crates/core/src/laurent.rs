//! Laurent polynomials in `q^(1/2)` with exact rational coefficients.
//!
//! Exponents are stored as integers counting half-units, so the term
//! `c * q^(e/2)` is kept under the key `e`. Zero coefficients are never
//! stored, which makes structural equality the same as polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaurentError {
    #[error("evaluation point q = {0} must be positive")]
    NonPositiveQ(f64),
}

/// Sparse Laurent polynomial in `q^(1/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// `coeff * q^(half_exp / 2)`.
    pub fn monomial(coeff: Rational, half_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(half_exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(half_exp, coeff)` pairs, merging repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order as `(half_exp, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, half_exp: i64) -> Rational {
        self.terms.get(&half_exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, half_exp: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(half_exp).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&half_exp);
        }
    }

    /// Scales every coefficient by `c` and shifts every exponent by `shift` half-units.
    pub fn mul_monomial(&self, c: &Rational, shift: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + shift, v * c)).collect(),
        }
    }

    /// Closed form of `(q^v - 1) / (q^(1/2) - q^(-1/2))` for integer `v`.
    pub fn geom_div(v: i64) -> Self {
        let mut p = Self::zero();
        if v > 0 {
            for k in 0..v {
                p.add_term(2 * k + 1, Rational::one());
            }
        } else {
            for k in 0..(-v) {
                p.add_term(-2 * k - 1, -Rational::one());
            }
        }
        p
    }

    /// `q^(1/2) - q^(-1/2)`.
    pub fn half_difference() -> Self {
        Self::from_terms([(1, Rational::one()), (-1, -Rational::one())])
    }

    /// Value at `q = 1`: the sum of the coefficients.
    pub fn value_at_1(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Derivative with respect to `q` at `q = 1`.
    pub fn derivative_at_1(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            acc + c * Rational::new((*e).into(), 2.into())
        })
    }

    /// Numeric value at `q > 0`, summed in ascending exponent order.
    pub fn eval_real(&self, q: f64) -> Result<f64, LaurentError> {
        if !(q > 0.0) {
            return Err(LaurentError::NonPositiveQ(q));
        }
        let root = q.sqrt();
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * root.powi(*e as i32))
            .sum())
    }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;

    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;

    fn add(self, rhs: HalfLaurent) -> HalfLaurent {
        &self + &rhs
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;

    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;

    fn neg(self) -> HalfLaurent {
        -&self
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;

    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        self + &(-rhs)
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;

    fn sub(self, rhs: HalfLaurent) -> HalfLaurent {
        &self - &rhs
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;

    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (e, c) in &rhs.terms {
            out = &out + &self.mul_monomial(c, *e);
        }
        out
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;

    fn mul(self, rhs: HalfLaurent) -> HalfLaurent {
        &self * &rhs
    }
}

/// Renders `2*e`-scaled exponents as reduced fractions.
fn fmt_exponent(half_exp: i64) -> String {
    if half_exp % 2 == 0 {
        let k = half_exp / 2;
        if k < 0 {
            format!("q^({k})")
        } else if k == 1 {
            "q".to_string()
        } else {
            format!("q^{k}")
        }
    } else {
        format!("q^({half_exp}/2)")
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_exponent(*e))?;
            } else {
                write!(f, "{mag}*{}", fmt_exponent(*e))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn figure8() -> HalfLaurent {
        HalfLaurent::from_terms([(1, r(1, 2)), (-1, r(-1, 2))])
    }

    #[test]
    fn add_examples() {
        let a = HalfLaurent::monomial(r(1, 1), 1);
        assert!((&a + &(-&a)).is_zero());
        assert_eq!(&a + &a, HalfLaurent::monomial(r(2, 1), 1));
        let b = HalfLaurent::half_difference() + HalfLaurent::monomial(r(1, 1), -1);
        assert_eq!(b, a);
    }

    #[test]
    fn mul_monomial_examples() {
        let a = HalfLaurent::monomial(r(1, 1), 1);
        assert_eq!(a.mul_monomial(&r(1, 1), -2), HalfLaurent::monomial(r(1, 1), -1));
        assert_eq!(HalfLaurent::half_difference().mul_monomial(&r(1, 2), 0), figure8());
        assert_eq!(
            figure8().mul_monomial(&r(1, 1), -2),
            HalfLaurent::from_terms([(-1, r(1, 2)), (-3, r(-1, 2))])
        );
    }

    #[test]
    fn geom_div_small_cases() {
        assert!(HalfLaurent::geom_div(0).is_zero());
        assert_eq!(HalfLaurent::geom_div(1), HalfLaurent::monomial(r(1, 1), 1));
        assert_eq!(HalfLaurent::geom_div(-1), HalfLaurent::monomial(r(-1, 1), -1));
    }

    #[test]
    fn geom_div_multiplies_back() {
        for v in -8..=8 {
            let back = &HalfLaurent::geom_div(v) * &HalfLaurent::half_difference();
            let expected = &HalfLaurent::monomial(r(1, 1), 2 * v) - &HalfLaurent::one();
            assert_eq!(back, expected, "v = {v}");
        }
    }

    #[test]
    fn evaluations() {
        assert_eq!(HalfLaurent::monomial(r(1, 1), 1).value_at_1(), r(1, 1));
        assert_eq!(figure8().value_at_1(), r(0, 1));
        let p = HalfLaurent::from_terms([(4, r(3, 1)), (-2, r(1, 1))]);
        assert_eq!(p.value_at_1(), r(4, 1));

        assert_eq!(HalfLaurent::monomial(r(1, 1), 1).derivative_at_1(), r(1, 2));
        assert_eq!(figure8().derivative_at_1(), r(1, 2));
        assert_eq!(HalfLaurent::monomial(r(5, 1), 0).derivative_at_1(), r(0, 1));

        assert_eq!(HalfLaurent::monomial(r(1, 1), 1).eval_real(4.0).unwrap(), 2.0);
        assert!((figure8().eval_real(4.0).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(p.eval_real(1.0).unwrap(), 4.0);
        assert!(matches!(p.eval_real(0.0), Err(LaurentError::NonPositiveQ(_))));
        assert!(matches!(p.eval_real(-1.0), Err(LaurentError::NonPositiveQ(_))));
    }

    #[test]
    fn rendering() {
        assert_eq!(figure8().to_string(), "-1/2*q^(-1/2) + 1/2*q^(1/2)");
        assert_eq!(HalfLaurent::zero().to_string(), "0");
        let p = HalfLaurent::from_terms([(4, r(3, 1)), (-2, r(1, 1)), (0, r(-2, 3)), (1, r(-1, 1))]);
        assert_eq!(p.to_string(), "q^(-1) - 2/3 - q^(1/2) + 3*q^2");
        assert_eq!(HalfLaurent::monomial(r(1, 1), 2).to_string(), "q");
    }
}
