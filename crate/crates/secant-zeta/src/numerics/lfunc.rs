//! Dirichlet L-values by Euler-Maclaurin evaluation of the Hurwitz zeta
//! function at integer arguments s >= 2:
//! L(s, chi) = sum_{a=1}^{M} chi(a) M^{-s} zeta_H(s, a/M).

use super::{char_value_complex, log2_abs, rational_to_float, ComplexHP, NumCtx, RM};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, factorial, Int, Rational};
use astro_float::BigFloat;
use num::{One, Zero};

fn powi_f(x: &BigFloat, n: i64, p: usize) -> BigFloat {
    if n == 0 {
        return BigFloat::from_i8(1, p);
    }
    let pos = x.powi(n.unsigned_abs() as usize, p, RM);
    if n >= 0 {
        pos
    } else {
        BigFloat::from_i8(1, p).div(&pos, p, RM)
    }
}

/// zeta_H(s, x) for integer s >= 2 and rational x in (0, 1], to roughly
/// 2^-(prec) relative accuracy. Direct terms plus Bernoulli corrections;
/// the correction order adapts until the terms fall below the target, and
/// the direct range doubles when they start diverging first.
pub fn hurwitz_zeta(s: u32, x: &Rational, prec: usize) -> Result<BigFloat> {
    if s < 2 {
        return Err(Error::NumericDomain(format!("Hurwitz evaluation needs integer s >= 2, got {s}")));
    }
    if !(x > &Rational::zero() && x <= &Rational::one()) {
        return Err(Error::NumericDomain(format!("need 0 < x <= 1, got {x}")));
    }
    let w = prec + 64;
    let target = -((w - 16) as f64);
    let mut n_terms = (w / 3).max(s as usize).max(16);
    'restart: loop {
        // direct part sum_{j<N} (j + x)^{-s}
        let mut acc = BigFloat::from_i8(0, w);
        for j in 0..n_terms {
            let base = rational_to_float(&(x + Rational::from_integer(Int::from(j as u64))), w);
            acc = acc.add(&powi_f(&base, -(s as i64), w), w, RM);
        }
        let nx = rational_to_float(&(x + Rational::from_integer(Int::from(n_terms as u64))), w);
        // (N + x)^{1-s}/(s - 1) + (N + x)^{-s}/2
        acc = acc.add(
            &powi_f(&nx, 1 - s as i64, w).div(&BigFloat::from_u64(s as u64 - 1, w), w, RM),
            w,
            RM,
        );
        acc = acc.add(&powi_f(&nx, -(s as i64), w).div(&BigFloat::from_i8(2, w), w, RM), w, RM);
        // Bernoulli corrections: B_{2r}/(2r)! * (s)_{2r-1} * (N+x)^{-s-2r+1}
        let mut pochhammer = Int::from(s); // (s)_1
        let mut prev_mag = f64::INFINITY;
        let mut r = 1u32;
        loop {
            let coeff = bernoulli_number(2 * r) / Rational::from_integer(factorial(2 * r))
                * Rational::from_integer(pochhammer.clone());
            let term = rational_to_float(&coeff, w).mul(&powi_f(&nx, 1 - s as i64 - 2 * r as i64, w), w, RM);
            let mag = log2_abs(&term);
            if mag >= prev_mag {
                // diverging before reaching the target: lengthen the sum
                n_terms *= 2;
                continue 'restart;
            }
            acc = acc.add(&term, w, RM);
            if mag < target {
                break;
            }
            prev_mag = mag;
            // (s)_{2r+1} = (s)_{2r-1} (s + 2r - 1)(s + 2r)
            pochhammer *= Int::from(s as u64 + 2 * r as u64 - 1) * Int::from(s as u64 + 2 * r as u64);
            r += 1;
            if r > 4 * w as u32 {
                return Err(Error::NonConvergence(w));
            }
        }
        acc.set_precision(prec, RM).ok();
        return Ok(acc);
    }
}

/// Riemann zeta at integer s >= 2.
pub fn zeta(s: u32, prec: usize) -> Result<BigFloat> {
    hurwitz_zeta(s, &Rational::one(), prec)
}

/// L(s, chi) for integer s >= 2 by Hurwitz decomposition. Complex
/// characters combine numerically; s <= 1 is rejected (s = 1 with the
/// principal character is a pole, and smaller arguments have exact forms
/// on the symbolic side).
pub fn l_numeric(s: i64, chi: &DirichletCharacter, ctx: &mut NumCtx) -> Result<ComplexHP> {
    if s == 1 && chi.is_principal() {
        return Err(Error::NumericDomain("L(1, principal) diverges".into()));
    }
    if s < 2 {
        return Err(Error::NumericDomain(format!("numeric L needs integer s >= 2, got {s}")));
    }
    let p = ctx.prec();
    let m = chi.modulus().max(1);
    if m == 1 {
        return Ok(ComplexHP::from_real(zeta(s as u32, p)?, p));
    }
    let w = p + 32;
    let mut acc = ComplexHP::zero(w);
    for a in 1..=m {
        let v = chi.value(a as i64);
        if v.is_zero() {
            continue;
        }
        let h = hurwitz_zeta(s as u32, &Rational::new(Int::from(a), Int::from(m)), w)?;
        let mut vc = char_value_complex(&v, ctx);
        vc.prec = w;
        acc = acc.add(&vc.scale(&h));
    }
    let scale = powi_f(&BigFloat::from_u64(m, w), -s, w);
    let mut out = acc.scale(&scale);
    out.re.set_precision(p, RM).ok();
    out.im.set_precision(p, RM).ok();
    out.prec = p;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::kronecker_character;
    use crate::exact::{rat, rat_frac, zeta_even};
    use crate::numerics::to_f64;

    fn check_digits(lhs: &BigFloat, rhs: &BigFloat, bits: f64) {
        let diff = lhs.sub(rhs, 512, RM);
        assert!(
            log2_abs(&diff) < -bits,
            "difference 2^{} exceeds 2^-{bits}",
            log2_abs(&diff)
        );
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let mut ctx = NumCtx::new(256);
        let z = zeta(2, 256).unwrap();
        let pi = ctx.pi();
        let expect = pi.mul(&pi, 256, RM).div(&BigFloat::from_i8(6, 256), 256, RM);
        check_digits(&z, &expect, 170.0); // 50+ digits
    }

    #[test]
    fn zeta_even_values_match_exact_forms() {
        let mut ctx = NumCtx::new(320);
        for m in 1..=6u32 {
            let exact = zeta_even(m);
            let pi = ctx.pi();
            let mut expect = rational_to_float(&exact.coefficient, 320);
            for _ in 0..exact.pi_power {
                expect = expect.mul(&pi, 320, RM);
            }
            let z = zeta(2 * m, 320).unwrap();
            check_digits(&z, &expect, 250.0);
        }
    }

    #[test]
    fn beta_function_value() {
        // L(3, chi_-4) = pi^3/32
        let chi = kronecker_character(-4).unwrap();
        let mut ctx = NumCtx::new(256);
        let l = l_numeric(3, &chi, &mut ctx).unwrap();
        let pi = ctx.pi();
        let expect = pi.powi(3, 256, RM).div(&BigFloat::from_i8(32, 256), 256, RM);
        check_digits(&l.re, &expect, 170.0);
        assert!(l.im.is_zero() || log2_abs(&l.im) < -240.0);
    }

    #[test]
    fn hurwitz_consistency_and_monotonic_precision() {
        // zeta(s) = zeta_H(s, 1); halved-x split: zeta_H(s, 1/2) = (2^s - 1) zeta(s) ... actually
        // zeta_H(s, 1/2) = (2^s - 1) zeta(s) holds: check it
        for s in [2u32, 3, 5] {
            let lhs = hurwitz_zeta(s, &rat_frac(1, 2), 192).unwrap();
            let z = zeta(s, 192).unwrap();
            let factor = BigFloat::from_u64(2u64.pow(s) - 1, 192);
            check_digits(&lhs, &z.mul(&factor, 192, RM), 150.0);
        }
        // doubling precision refines, never degrades
        let lo = hurwitz_zeta(4, &rat_frac(2, 7), 128).unwrap();
        let hi = hurwitz_zeta(4, &rat_frac(2, 7), 256).unwrap();
        check_digits(&lo, &hi, 100.0);
    }

    #[test]
    fn catalan_constant_two_routes() {
        // L(2, chi_-4): Hurwitz route vs direct alternating odd sum
        let chi = kronecker_character(-4).unwrap();
        let mut ctx = NumCtx::new(192);
        let l = l_numeric(2, &chi, &mut ctx).unwrap();
        assert!((to_f64(&l.re) - 0.915_965_594_177_219).abs() < 1e-14);
        // direct summation with Euler-style acceleration is overkill; a
        // partial sum with the tail estimated by pairing gives ~1e-8
        let mut direct = BigFloat::from_i8(0, 192);
        for n in 0..200_000u64 {
            let term = BigFloat::from_i8(if n % 2 == 0 { 1 } else { -1 }, 192)
                .div(&BigFloat::from_u64((2 * n + 1) * (2 * n + 1), 192), 192, RM);
            direct = direct.add(&term, 192, RM);
        }
        assert!((to_f64(&l.re) - to_f64(&direct)).abs() < 1e-8);
    }

    #[test]
    fn rejects_poles_and_small_arguments() {
        let one = DirichletCharacter::trivial();
        let mut ctx = NumCtx::new(64);
        assert!(l_numeric(1, &one, &mut ctx).is_err());
        let chi = kronecker_character(-4).unwrap();
        assert!(l_numeric(1, &chi, &mut ctx).is_err());
        assert!(l_numeric(0, &chi, &mut ctx).is_err());
        assert!(hurwitz_zeta(2, &rat(0), 64).is_err());
        assert!(hurwitz_zeta(2, &rat(2), 64).is_err());
    }
}
