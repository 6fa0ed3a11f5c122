use super::{rational_is_square, squarefree_part, Rational};
use crate::error::{Error, Result};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)),
/// d squarefree and > 1. Arithmetic stays inside one field; purely rational
/// values (b = 0) coerce freely across fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    d: u64,
    a: Rational,
    b: Rational,
}

impl QuadExt {
    pub fn new(d: u64, a: Rational, b: Rational) -> Self {
        debug_assert!(d > 1, "d must exceed 1");
        QuadExt { d, a, b }
    }

    pub fn rational_in(d: u64, a: Rational) -> Self {
        QuadExt { d, a, b: Rational::zero() }
    }

    /// sqrt(r) for positive rational r, as an element of Q(sqrt(d)) with the
    /// squarefree kernel d of r. Fails when sqrt(r) is rational.
    pub fn sqrt_of_rational(r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::Domain(format!("sqrt of nonpositive rational {r}")));
        }
        if rational_is_square(r)? {
            return Err(Error::RationalSquareRoot(r.to_string()));
        }
        let p: u64 = r
            .numer()
            .try_into()
            .map_err(|_| Error::FactorLimit { value: r.to_string(), limit: super::FACTOR_LIMIT })?;
        let q: u64 = r
            .denom()
            .try_into()
            .map_err(|_| Error::FactorLimit { value: r.to_string(), limit: super::FACTOR_LIMIT })?;
        let pq = p.checked_mul(q).ok_or(Error::FactorLimit { value: r.to_string(), limit: super::FACTOR_LIMIT })?;
        let (s, d) = squarefree_part(pq)?;
        // sqrt(p/q) = sqrt(pq)/q = (s/q) sqrt(d)
        Ok(QuadExt {
            d,
            a: Rational::zero(),
            b: Rational::new(s.into(), q.into()),
        })
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_coefficient(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    /// N(a + b sqrt(d)) = a^2 - d b^2.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - (&self.b * &self.b) * Rational::from_integer(self.d.into())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = n.recip();
        Ok(QuadExt { d: self.d, a: &self.a * &inv, b: -&self.b * &inv })
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = QuadExt::rational_in(self.d, Rational::one());
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn join(&self, other: &QuadExt) -> u64 {
        if self.d == other.d || other.b.is_zero() {
            self.d
        } else if self.b.is_zero() {
            other.d
        } else {
            panic!("{}", Error::FieldMismatch(self.d, other.d))
        }
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { d: self.join(rhs), a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { d: self.join(rhs), a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let d = self.join(rhs);
        let dd = Rational::from_integer(d.into());
        QuadExt {
            d,
            a: &self.a * &rhs.a + (&self.b * &rhs.b) * dd,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for &QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        let inv = rhs.inverse().expect("division by zero quadratic element");
        self * &inv
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { d: self.d, a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, self.b.abs(), self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn sqrt_extraction() {
        // sqrt(8/9) = (2/3) sqrt(2)
        let x = QuadExt::sqrt_of_rational(&rat_frac(8, 9)).unwrap();
        assert_eq!(x.field(), 2);
        assert_eq!(x.sqrt_coefficient(), &rat_frac(2, 3));
        assert!(QuadExt::sqrt_of_rational(&rat_frac(9, 4)).is_err());
        assert!(QuadExt::sqrt_of_rational(&rat(-2)).is_err());
    }

    #[test]
    fn inverse_and_norm() {
        let x = QuadExt::new(2, rat(3), rat(2)); // 3 + 2 sqrt 2
        assert_eq!(x.norm(), rat(1));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, QuadExt::rational_in(2, rat(1)));
        assert_eq!(inv, x.conjugate()); // unit of norm 1
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let x = QuadExt::new(5, rat_frac(1, 2), rat(3));
        let y = QuadExt::new(5, rat(-2), rat_frac(7, 3));
        assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn negative_powers() {
        let x = QuadExt::new(2, rat(1), rat(1)); // 1 + sqrt2, norm -1
        let y = x.powi(-2).unwrap();
        assert_eq!(&(&x * &x) * &y, QuadExt::rational_in(2, rat(1)));
    }
}
