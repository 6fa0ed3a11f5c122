//! Exact arithmetic foundation: big rationals, quadratic field elements,
//! polynomials, truncated power series, Bernoulli and Euler numbers.

mod bernoulli;
mod laurent;
mod poly;
mod quadext;
mod ratfun;
mod series;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, euler_number, zeta_even};
pub use laurent::LaurentPolynomial;
pub use poly::Polynomial;
pub use quadext::QuadExt;
pub use ratfun::RationalFunction;
pub use series::TruncatedSeries;

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;
pub type Rational = BigRational;

/// Shorthand for small integer rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// n/d as a reduced rational. Panics if d = 0.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn factorial(n: u32) -> Int {
    let mut acc = Int::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Parses "p", "-p" or "p/q" into a reduced rational; q = 0 rejected.
pub fn parse_rational(s: &str) -> crate::error::Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| crate::error::Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Integer power with negative exponents allowed (returns a rational).
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let positive = base.pow(exp.unsigned_abs().min(i32::MAX as u64) as i32);
    if exp > 0 {
        positive
    } else {
        positive.recip()
    }
}

/// A formal value q * pi^k with exact rational q. No floating evaluation
/// happens here; the numerics layer owns approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: Rational,
    pub pi_power: u32,
}

impl PiMultiple {
    pub fn new(coefficient: Rational, pi_power: u32) -> Self {
        PiMultiple { coefficient, pi_power }
    }

    pub fn mul(&self, other: &PiMultiple) -> PiMultiple {
        PiMultiple {
            coefficient: &self.coefficient * &other.coefficient,
            pi_power: self.pi_power + other.pi_power,
        }
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coefficient),
            1 => write!(f, "{}*pi", self.coefficient),
            k => write!(f, "{}*pi^{}", self.coefficient, k),
        }
    }
}

/// Largest input accepted by [`squarefree_part`]; trial division by primes
/// up to 10^6 plus a perfect-square check on the cofactor is exact below it.
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

/// Writes n = s^2 * d with d squarefree and returns (s, d).
pub fn squarefree_part(n: u64) -> crate::error::Result<(u64, u64)> {
    if n == 0 {
        return Err(crate::error::Error::Domain("squarefree_part(0)".into()));
    }
    if n > FACTOR_LIMIT {
        return Err(crate::error::Error::FactorLimit { value: n.to_string(), limit: FACTOR_LIMIT });
    }
    let mut rest = n;
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p <= 1_000_000 && p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            for _ in 0..e / 2 {
                s *= p;
            }
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // below FACTOR_LIMIT the cofactor has no two factors above 10^6,
    // so what remains is 1 or a prime
    if rest > 1 {
        d *= rest;
    }
    Ok((s, d))
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

/// Signed helper: true when |q| reduces to a square of a rational.
pub fn rational_is_square(q: &Rational) -> crate::error::Result<bool> {
    if q.is_negative() {
        return Ok(false);
    }
    if q.is_zero() {
        return Ok(true);
    }
    let n: u64 = q
        .numer()
        .try_into()
        .map_err(|_| crate::error::Error::FactorLimit { value: q.to_string(), limit: FACTOR_LIMIT })?;
    let d: u64 = q
        .denom()
        .try_into()
        .map_err(|_| crate::error::Error::FactorLimit { value: q.to_string(), limit: FACTOR_LIMIT })?;
    Ok(is_perfect_square(n) && is_perfect_square(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_binomial() {
        assert_eq!(factorial(5), Int::from(120));
        assert_eq!(binomial(10, 3), Int::from(120));
        assert_eq!(binomial(3, 5), Int::zero());
    }

    #[test]
    fn squarefree_decomposition() {
        assert_eq!(squarefree_part(1).unwrap(), (1, 1));
        assert_eq!(squarefree_part(12).unwrap(), (2, 3));
        assert_eq!(squarefree_part(36).unwrap(), (6, 1));
        assert_eq!(squarefree_part(2).unwrap(), (1, 2));
        // cofactor after trial division: a single prime above 10^6
        let p = 1_000_003u64;
        assert_eq!(squarefree_part(2 * p).unwrap(), (1, 2 * p));
        assert_eq!(squarefree_part(4 * p).unwrap(), (2, p));
        assert!(squarefree_part(FACTOR_LIMIT + 1).is_err());
    }

    #[test]
    fn pi_multiple_display() {
        let z2 = PiMultiple::new(rat_frac(1, 6), 2);
        assert_eq!(z2.to_string(), "1/6*pi^2");
        let prod = z2.mul(&PiMultiple::new(rat(3), 1));
        assert_eq!(prod, PiMultiple::new(rat_frac(1, 2), 3));
    }
}
