use super::{Int, Polynomial, QuadExt, Rational};
use crate::error::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Quotient of polynomials, kept reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RationalFunction { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        let g = Polynomial::gcd(&self.num, &self.den);
        if g.degree().is_some_and(|d| d > 0) {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn var() -> Self {
        RationalFunction { num: Polynomial::var(), den: Polynomial::one() }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        let base = if n < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Substitutes X -> (aX + b)/(cX + d).
    pub fn compose_mobius(&self, a: &Int, b: &Int, c: &Int, d: &Int) -> Self {
        let lin_num = Polynomial::new(vec![Rational::from_integer(b.clone()), Rational::from_integer(a.clone())]);
        let lin_den = Polynomial::new(vec![Rational::from_integer(d.clone()), Rational::from_integer(c.clone())]);
        let deg = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        let sub = |p: &Polynomial| -> Polynomial {
            // sum p_i (aX+b)^i (cX+d)^(deg-i)
            let mut acc = Polynomial::zero();
            let mut up = Polynomial::one();
            let mut downs = Vec::with_capacity(deg + 1);
            let mut cur = Polynomial::one();
            for _ in 0..=deg {
                downs.push(cur.clone());
                cur = &cur * &lin_den;
            }
            for i in 0..=deg {
                let ci = p.coeff(i);
                if !ci.is_zero() {
                    acc = &acc + &(&up * &downs[deg - i]).scale(&ci);
                }
                up = &up * &lin_num;
            }
            acc
        };
        RationalFunction::new(sub(&self.num), sub(&self.den))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / den)
    }

    pub fn eval_quadext(&self, x: &QuadExt) -> Result<QuadExt> {
        let horner = |p: &Polynomial| -> QuadExt {
            let mut acc = QuadExt::rational_in(x.field(), Rational::zero());
            for i in (0..=p.degree().unwrap_or(0)).rev() {
                acc = &(&acc * x) + &QuadExt::rational_in(x.field(), p.coeff(i));
            }
            acc
        };
        let den = horner(&self.den);
        if den.is_zero() {
            return Err(Error::MobiusPole);
        }
        Ok(&horner(&self.num) / &den)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        if self.den == Polynomial::one() {
            return write!(f, "{}", self.num);
        }
        // integer presentation: num/den = (p N0)/(q D0) with N0, D0 the
        // primitive integer forms and p/q the leftover rational scale
        let n0 = self.num.primitive_integer_form();
        let d0 = self.den.primitive_integer_form();
        let alpha = self.num.leading().unwrap() / n0.leading().unwrap();
        let beta = self.den.leading().unwrap() / d0.leading().unwrap();
        let ratio = alpha / beta;
        let shown_num = n0.scale(&Rational::from_integer(ratio.numer().clone()));
        let shown_den = d0.scale(&Rational::from_integer(ratio.denom().clone()));
        write!(f, "({shown_num})/({shown_den})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn reduction_is_canonical() {
        // (t^2 - 1)/(2t - 2) = (t + 1)/2
        let r = RationalFunction::new(poly(&[-1, 0, 1]), poly(&[-2, 2]));
        assert_eq!(r.numerator(), &Polynomial::new(vec![crate::exact::rat_frac(1, 2), crate::exact::rat_frac(1, 2)]));
        assert_eq!(r.denominator(), &Polynomial::one());
    }

    #[test]
    fn mobius_composition() {
        // f = 1/t at t -> (t+1)/(t-1) gives (t-1)/(t+1)
        let f = RationalFunction::new(poly(&[1]), poly(&[0, 1]));
        let g = f.compose_mobius(&Int::from(1), &Int::from(1), &Int::from(1), &Int::from(-1));
        assert_eq!(g, RationalFunction::new(poly(&[-1, 1]), poly(&[1, 1])));
    }

    #[test]
    fn arithmetic_matches_eval() {
        let f = RationalFunction::new(poly(&[1, 2]), poly(&[3, 0, 1]));
        let g = RationalFunction::new(poly(&[0, 5]), poly(&[1, 1]));
        let h = &(&f + &g) * &(&f - &g);
        let x = rat(7);
        let lhs = h.eval(&x).unwrap();
        let f_x = f.eval(&x).unwrap();
        let g_x = g.eval(&x).unwrap();
        assert_eq!(lhs, &f_x * &f_x - &g_x * &g_x);
    }

    #[test]
    fn negative_powers() {
        let f = RationalFunction::new(poly(&[1, 2]), poly(&[1])); // 2t + 1
        let inv3 = f.powi(-3);
        assert_eq!(inv3.eval(&rat(1)).unwrap(), crate::exact::rat_frac(1, 27));
    }
}
