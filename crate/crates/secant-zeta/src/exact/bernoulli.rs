use super::{binomial, factorial, rat, Int, PiMultiple, Polynomial, Rational};
use num::{One, Zero};
use std::sync::Mutex;

// Bernoulli convention: z e^{xz}/(e^z - 1), so B_1 = -1/2. Some of the
// scan literature uses B_1 = +1/2; everything here sticks to the former.

static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());
static EULER_CACHE: Mutex<Vec<Int>> = Mutex::new(Vec::new());

/// B_n with B_1 = -1/2.
pub fn bernoulli_number(n: u32) -> Rational {
    let n = n as usize;
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n {
        let m = cache.len(); // computing B_m from sum_{j<m} C(m+1, j) B_j = -B_m (m+1 choose m)... rearranged below
        if m > 1 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(binomial(m as u32 + 1, j as u32));
            }
        }
        let value = -acc / Rational::from_integer(Int::from(m as u64 + 1));
        cache.push(value);
    }
    cache[n].clone()
}

/// Bernoulli polynomial B_n(x) = sum C(n,k) B_k x^{n-k}.
pub fn bernoulli_polynomial(n: u32) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for k in 0..=n {
        let c = Rational::from_integer(binomial(n, k)) * bernoulli_number(k);
        coeffs[(n - k) as usize] = c;
    }
    Polynomial::new(coeffs)
}

/// Euler number E_n from sech x = sum E_n x^n / n!; zero for odd n.
pub fn euler_number(n: u32) -> Int {
    let n = n as usize;
    let mut cache = EULER_CACHE.lock().unwrap();
    if cache.len() <= n {
        let upto = n.max(15);
        // invert cosh as a power series: c_k with sum_{j} c_{2j}/(2(k-j))!... done directly
        let mut coeffs: Vec<Rational> = vec![Rational::zero(); upto + 1];
        coeffs[0] = Rational::one();
        for k in 1..=upto {
            if k % 2 == 1 {
                continue;
            }
            // cosh * sech = 1: sum_{j=0..k step 2} coeffs[k-j]/j! = 0 for k > 0
            let mut acc = Rational::zero();
            for j in (2..=k).step_by(2) {
                acc += &coeffs[k - j] * Rational::new(Int::one(), factorial(j as u32));
            }
            coeffs[k] = -acc;
        }
        *cache = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = c * Rational::from_integer(factorial(k as u32));
                debug_assert!(e.denom().is_one(), "Euler numbers are integers");
                e.to_integer()
            })
            .collect();
    }
    cache[n].clone()
}

/// zeta(2m) = (-1)^{m+1} B_{2m}/(2 (2m)!) * (2 pi)^{2m}, as an exact pi-multiple.
pub fn zeta_even(m: u32) -> PiMultiple {
    assert!(m >= 1, "zeta_even needs m >= 1");
    let sign = if m % 2 == 1 { rat(1) } else { rat(-1) };
    let two_pow = Rational::from_integer(Int::from(2).pow(2 * m));
    let coeff = sign * bernoulli_number(2 * m) * two_pow
        / (Rational::from_integer(Int::from(2)) * Rational::from_integer(factorial(2 * m)));
    PiMultiple::new(coeff, 2 * m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_frac, TruncatedSeries};

    #[test]
    fn bernoulli_pinned_values() {
        assert_eq!(bernoulli_number(0), rat(1));
        assert_eq!(bernoulli_number(1), rat_frac(-1, 2));
        assert_eq!(bernoulli_number(3), rat(0));
        assert_eq!(bernoulli_number(12), rat_frac(-691, 2730));
    }

    #[test]
    fn bernoulli_polynomial_matches_generating_function() {
        // z e^{xz}/(e^z - 1) as a series in z over Q[x]: e^{xz} has coefficient
        // x^j/j!, (e^z - 1)/z is a unit with constant coefficients.
        let order = 12usize;
        let exz = TruncatedSeries::from_fn(order, |j| {
            Polynomial::monomial(Rational::new(Int::one(), factorial(j as u32)), j)
        });
        let expm1_over_z =
            TruncatedSeries::from_fn(order, |j| Polynomial::constant(Rational::new(Int::one(), factorial(j as u32 + 1))));
        let series = &exz * &expm1_over_z.invert().unwrap();
        for n in 0..=order {
            let expect = series.coefficient(n).scale(&Rational::from_integer(factorial(n as u32)));
            assert_eq!(bernoulli_polynomial(n as u32), expect, "B_{n}(x)");
        }
    }

    #[test]
    fn bernoulli_polynomial_anchors() {
        assert_eq!(bernoulli_polynomial(0), Polynomial::one());
        assert_eq!(bernoulli_polynomial(1), Polynomial::new(vec![rat_frac(-1, 2), rat(1)]));
        assert_eq!(bernoulli_polynomial(2).eval(&rat_frac(1, 2)), rat_frac(-1, 12));
        // B_n(0) = B_n and the half-value relation B_n(1/2) = -(1 - 2^{1-n}) B_n
        for n in 0..=20u32 {
            assert_eq!(bernoulli_polynomial(n).eval(&rat(0)), bernoulli_number(n));
            let lhs = bernoulli_polynomial(n).eval(&rat_frac(1, 2));
            let rhs = -(rat(1) - rat_frac(2, 1).pow(1 - n as i32)) * bernoulli_number(n);
            assert_eq!(lhs, rhs, "half-value at n = {n}");
        }
    }

    #[test]
    fn bernoulli_difference_identity() {
        // B_n(x+1) - B_n(x) = n x^{n-1}
        for n in 1..=20u32 {
            let b = bernoulli_polynomial(n);
            let shifted = b.compose(&Polynomial::new(vec![rat(1), rat(1)]));
            let diff = &shifted - &b;
            assert_eq!(diff, Polynomial::monomial(rat(n as i64), n as usize - 1), "n = {n}");
        }
    }

    #[test]
    fn euler_pinned_values_and_parity() {
        assert_eq!(euler_number(0), Int::from(1));
        assert_eq!(euler_number(1), Int::from(0));
        assert_eq!(euler_number(2), Int::from(-1));
        assert_eq!(euler_number(4), Int::from(5));
        assert_eq!(euler_number(6), Int::from(-61));
        assert_eq!(euler_number(10), Int::from(-50521));
        for k in 0..=12 {
            assert_eq!(euler_number(2 * k + 1), Int::zero());
        }
    }

    #[test]
    fn zeta_even_anchors() {
        assert_eq!(zeta_even(1), PiMultiple::new(rat_frac(1, 6), 2));
        assert_eq!(zeta_even(2), PiMultiple::new(rat_frac(1, 90), 4));
        assert_eq!(zeta_even(3), PiMultiple::new(rat_frac(1, 945), 6));
    }
}
