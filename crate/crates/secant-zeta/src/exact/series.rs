use super::{factorial, Polynomial, Rational};
use crate::error::{Error, Result};
use num::One;
use std::ops::{Add, Mul};

/// Power series in z truncated at a fixed order, with coefficients in the
/// polynomial ring Q[t]. Constant coefficients embed as constant polynomials,
/// so the same type serves plain rational series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Polynomial>, // index = power of z; len = order + 1
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![Polynomial::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Polynomial::one();
        s
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Polynomial) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, j: usize) -> &Polynomial {
        &self.coeffs[j]
    }

    /// Series of sin(p z)/(p z): sum (-1)^j p^(2j) z^(2j)/(2j+1)!.
    pub fn sin_over_arg(p: &Polynomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        let p2 = p * p;
        let mut pw = Polynomial::one();
        let mut j = 0usize;
        while 2 * j <= order {
            let c = Rational::new(
                if j % 2 == 0 { num::BigInt::one() } else { -num::BigInt::one() },
                factorial(2 * j as u32 + 1),
            );
            s.coeffs[2 * j] = pw.scale(&c);
            pw = &pw * &p2;
            j += 1;
        }
        s
    }

    /// Series of cos(p z): sum (-1)^j p^(2j) z^(2j)/(2j)!.
    pub fn cos_of(p: &Polynomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        let p2 = p * p;
        let mut pw = Polynomial::one();
        let mut j = 0usize;
        while 2 * j <= order {
            let c = Rational::new(
                if j % 2 == 0 { num::BigInt::one() } else { -num::BigInt::one() },
                factorial(2 * j as u32),
            );
            s.coeffs[2 * j] = pw.scale(&c);
            pw = &pw * &p2;
            j += 1;
        }
        s
    }

    /// Multiplicative inverse; requires the constant term to be a nonzero
    /// constant polynomial (a unit of Q[t][[z]] that keeps coefficients in Q[t]).
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || c0.degree() != Some(0) {
            return Err(Error::Domain("series constant term is not a nonzero constant".into()));
        }
        let inv0 = c0.coeff(0).recip();
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = Polynomial::constant(inv0.clone());
        for k in 1..=n {
            let mut acc = Polynomial::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out.coeffs[k - j]);
            }
            out.coeffs[k] = acc.scale(&-&inv0);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |j| &self.coeffs[j] + &rhs.coeffs[j])
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn sine_kernel_times_inverse_is_one() {
        let p = Polynomial::new(vec![rat(1), rat(2)]); // 2t + 1
        let s = TruncatedSeries::sin_over_arg(&p, 8);
        let inv = s.invert().unwrap();
        assert_eq!(&s * &inv, TruncatedSeries::one(8));
    }

    #[test]
    fn product_matches_hand_convolution() {
        // sin(z)/z * cos(z): z^2 coefficient = -1/2 - 1/6 = -2/3
        let one = Polynomial::one();
        let s = &TruncatedSeries::sin_over_arg(&one, 4) * &TruncatedSeries::cos_of(&one, 4);
        assert_eq!(s.coefficient(2), &Polynomial::constant(rat_frac(-2, 3)));
        assert_eq!(s.coefficient(1), &Polynomial::zero());
    }

    #[test]
    fn inverse_requires_unit() {
        let p = Polynomial::var();
        let s = TruncatedSeries::from_fn(3, |j| if j == 0 { p.clone() } else { Polynomial::zero() });
        assert!(s.invert().is_err());
    }
}
