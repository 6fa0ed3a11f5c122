use super::{Polynomial, Rational};
use num::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in X allowing negative exponents (X^-1 and below). Stored
/// densely from the lowest exponent; both ends are kept trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPolynomial {
    pub fn new(low: i64, mut coeffs: Vec<Rational>) -> Self {
        let mut low = low;
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            low += lead_zeros as i64;
        }
        if coeffs.is_empty() {
            low = 0;
        }
        LaurentPolynomial { low, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPolynomial { low: 0, coeffs: Vec::new() }
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        LaurentPolynomial::new(e, vec![c])
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        LaurentPolynomial::new(0, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lowest_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.low {
            return Rational::zero();
        }
        self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.low + i as i64, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul_xpow(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// X^w * p(1/X): exponent e becomes w - e.
    pub fn reflect(&self, w: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        let new_low = w - self.degree().unwrap();
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        LaurentPolynomial::new(new_low, coeffs)
    }

    /// Shifts away the lowest exponent, yielding an ordinary polynomial with
    /// a nonzero constant term (the roots away from the origin are unchanged).
    pub fn clear_lowest(&self) -> (Polynomial, i64) {
        (Polynomial::new(self.coeffs.clone()), self.low)
    }

    /// Embeds into the rational function field (X^-1 becomes 1/X).
    pub fn to_rational_function(&self) -> super::RationalFunction {
        if self.is_zero() {
            return super::RationalFunction::zero();
        }
        let (p, low) = self.clear_lowest();
        if low >= 0 {
            super::RationalFunction::new(&p * &Polynomial::monomial(num::One::one(), low as usize), Polynomial::one())
        } else {
            super::RationalFunction::new(p, Polynomial::monomial(num::One::one(), (-low) as usize))
        }
    }

    pub fn eval(&self, x: &Rational) -> crate::error::Result<Rational> {
        if self.low < 0 && x.is_zero() {
            return Err(crate::error::Error::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Ok(acc * super::rational_pow(x, self.low))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let mut coeffs = Vec::with_capacity((high - low + 1) as usize);
        for e in low..=high {
            coeffs.push(self.coeff(e) + rhs.coeff(e));
        }
        LaurentPolynomial::new(low, coeffs)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        &self.clone() + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.low + rhs.low, coeffs)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev().map(|(i, c)| (self.low + i as i64, c)) {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 => {
                    if !num::One::is_one(&a) {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "X")?;
                }
                _ => {
                    if !num::One::is_one(&a) {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "X^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn trimming_and_exponents() {
        let p = LaurentPolynomial::new(-2, vec![rat(0), rat(3), rat(0), rat(1), rat(0)]);
        assert_eq!(p.lowest_exponent(), Some(-1));
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.coeff(-1), rat(3));
        assert_eq!(p.coeff(1), rat(1));
    }

    #[test]
    fn reflect_mirrors_exponents() {
        // p = X^-1 + 2X, reflect with w = 2: X^3 p(1/X)/X = ... e -> 2 - e
        let p = &LaurentPolynomial::monomial(rat(1), -1) + &LaurentPolynomial::monomial(rat(2), 1);
        let r = p.reflect(2);
        assert_eq!(r.coeff(3), rat(1));
        assert_eq!(r.coeff(1), rat(2));
    }

    #[test]
    fn eval_with_negative_powers() {
        let p = LaurentPolynomial::new(-1, vec![rat(1), rat(0), rat(1)]); // X^-1 + X
        assert_eq!(p.eval(&rat(2)).unwrap(), rat_frac(5, 2));
        assert!(p.eval(&rat(0)).is_err());
    }
}
