//! Simultaneous (Aberth-style) root finding for exact Laurent polynomials
//! at arbitrary precision. Deterministic: fixed initial guesses on a
//! radius-1.05 circle with golden-angle spacing, fixed iteration order.

use crate::error::{Error, Result};
use crate::exact::LaurentPolynomial;
use crate::numerics::{log2_abs, ComplexHP, NumCtx, RM};
use num::Zero as _;
use astro_float::BigFloat;

#[derive(Clone, Debug)]
pub struct PolynomialRoots {
    pub roots: Vec<ComplexHP>,
    /// Roots at the origin produced by clearing a positive lowest exponent;
    /// reported separately, never classified.
    pub zero_roots: usize,
    pub precision: usize,
}

/// All complex roots of p (X^-1 terms cleared by multiplying with X first)
/// to the requested precision, certified by |p(z)| < 2^{-precision/2} ||p||.
/// Escalates the working precision on non-convergence, then fails.
pub fn polynomial_roots(p: &LaurentPolynomial, precision: usize) -> Result<PolynomialRoots> {
    if p.is_zero() {
        return Err(Error::Domain("root finding needs a nonzero polynomial".into()));
    }
    let (dense, low) = p.clear_lowest();
    let zero_roots = low.max(0) as usize;
    let degree = dense.degree().unwrap_or(0);
    if degree == 0 {
        return Ok(PolynomialRoots { roots: Vec::new(), zero_roots, precision });
    }
    let cap = 8 * precision + 512;
    let mut work = precision + 64 + 2 * degree;
    loop {
        match aberth_at(&dense, degree, precision, work) {
            Some(mut roots) => {
                for z in &mut roots {
                    z.re.set_precision(precision, RM).ok();
                    z.im.set_precision(precision, RM).ok();
                    z.prec = precision;
                }
                // deterministic order: by real part, then imaginary part
                roots.sort_by(|a, b| cmp_floats(&a.re, &b.re).then(cmp_floats(&a.im, &b.im)));
                return Ok(PolynomialRoots { roots, zero_roots, precision });
            }
            None => {
                work *= 2;
                if work > cap {
                    return Err(Error::NonConvergence(cap));
                }
            }
        }
    }
}

fn cmp_floats(a: &BigFloat, b: &BigFloat) -> std::cmp::Ordering {
    match a.cmp(b) {
        Some(v) if v < 0 => std::cmp::Ordering::Less,
        Some(v) if v > 0 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

fn aberth_at(dense: &crate::exact::Polynomial, degree: usize, precision: usize, work: usize) -> Option<Vec<ComplexHP>> {
    let mut ctx = NumCtx::new(work);
    // scale coefficients by a power of two so the largest is about 1;
    // power-of-two scaling is exact and leaves the roots untouched
    let mut max_log2 = f64::NEG_INFINITY;
    for c in dense.coeffs() {
        if !c.is_zero() {
            let f = crate::numerics::rational_to_float(c, 64);
            max_log2 = max_log2.max(log2_abs(&f));
        }
    }
    let shift = ctx.pow2(-(max_log2.ceil() as i64));
    let coeffs: Vec<BigFloat> = dense
        .coeffs()
        .iter()
        .map(|c| crate::numerics::rational_to_float(c, work).mul(&shift, work, RM))
        .collect();
    let deriv: Vec<BigFloat> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&BigFloat::from_u64(i as u64, work), work, RM))
        .collect();

    // initial guesses: radius 1.05, golden-angle spacing
    let two_pi = ctx.pi().mul(&BigFloat::from_i8(2, work), work, RM);
    let golden = BigFloat::from_u64(5, work)
        .sqrt(work, RM)
        .sub(&BigFloat::from_i8(1, work), work, RM)
        .div(&BigFloat::from_i8(2, work), work, RM);
    let radius = BigFloat::from_f64(1.05, work);
    let mut z: Vec<ComplexHP> = (0..degree)
        .map(|j| {
            let frac = BigFloat::from_u64(j as u64 + 1, work).mul(&golden, work, RM).rem(&BigFloat::from_i8(1, work));
            let theta = frac.mul(&two_pi, work, RM);
            ComplexHP::new(
                theta.cos(work, RM, ctx.consts()).mul(&radius, work, RM),
                theta.sin(work, RM, ctx.consts()).mul(&radius, work, RM),
                work,
            )
        })
        .collect();

    let eval = |cs: &[BigFloat], x: &ComplexHP| -> ComplexHP {
        let mut acc = ComplexHP::zero(work);
        for c in cs.iter().rev() {
            acc = acc.mul(x);
            acc.re = acc.re.add(c, work, RM);
        }
        acc
    };

    let step_goal = -((precision + 16) as f64);
    let max_iter = 100 + 10 * degree;
    let mut converged = false;
    for _ in 0..max_iter {
        let mut max_step = f64::NEG_INFINITY;
        for i in 0..degree {
            let pz = eval(&coeffs, &z[i]);
            let dz = eval(&deriv, &z[i]);
            let newton = if dz.is_zero() {
                // nudge away from a critical point, deterministically
                ComplexHP::from_f64(1e-3, 1e-3, work)
            } else {
                pz.div(&dz)
            };
            let mut corr = ComplexHP::zero(work);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = z[i].sub(zj);
                    if !diff.is_zero() {
                        corr = corr.add(&diff.recip());
                    }
                }
            }
            let denom = ComplexHP::one(work).sub(&newton.mul(&corr));
            let w = if denom.is_zero() { newton.clone() } else { newton.div(&denom) };
            let scale = z[i].abs().max(&BigFloat::from_i8(1, work));
            max_step = max_step.max(log2_abs(&w.abs()) - log2_abs(&scale));
            z[i] = z[i].sub(&w);
        }
        if max_step < step_goal {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    // residual certification against the scaled sup-norm (== 1 here)
    let bound = -(precision as f64) / 2.0;
    for zi in &z {
        let r = eval(&coeffs, zi).abs();
        if log2_abs(&r) >= bound {
            return None;
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Polynomial};
    use crate::numerics::to_f64;

    fn laurent(low: i64, cs: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::new(low, cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn quadratic_roots() {
        // X^2 + 1 -> +-i
        let p = laurent(0, &[1, 0, 1]);
        let out = polynomial_roots(&p, 128).unwrap();
        assert_eq!(out.roots.len(), 2);
        let mut ims: Vec<f64> = out.roots.iter().map(|z| to_f64(&z.im)).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-30 && (ims[1] - 1.0).abs() < 1e-30);
        for z in &out.roots {
            assert!(to_f64(&z.re).abs() < 1e-30);
        }
    }

    #[test]
    fn zero_roots_reported_separately() {
        // X^3 (X - 2) has three roots at the origin
        let p = laurent(3, &[-2, 1]);
        let out = polynomial_roots(&p, 96).unwrap();
        assert_eq!(out.zero_roots, 3);
        assert_eq!(out.roots.len(), 1);
        assert!((to_f64(&out.roots[0].re) - 2.0).abs() < 1e-25);
    }

    #[test]
    fn laurent_negative_exponent_cleared() {
        // X^-1 - X = X^-1 (1 - X^2): roots +-1, none at zero
        let p = laurent(-1, &[1, 0, -1]);
        let out = polynomial_roots(&p, 96).unwrap();
        assert_eq!(out.zero_roots, 0);
        assert_eq!(out.roots.len(), 2);
    }

    #[test]
    fn residuals_certify_and_double_precision_agrees() {
        // wilkinson-ish small case with clustered magnitudes
        let mut p = Polynomial::one();
        for r in 1..=8i64 {
            p = &p * &Polynomial::new(vec![rat(-r), rat(1)]);
        }
        let p = LaurentPolynomial::from_polynomial(&p);
        let lo = polynomial_roots(&p, 64).unwrap();
        let hi = polynomial_roots(&p, 128).unwrap();
        assert_eq!(lo.roots.len(), 8);
        for z in &hi.roots {
            let re = to_f64(&z.re).round();
            assert!((1.0..=8.0).contains(&re));
            let mut best = f64::INFINITY;
            for w in &lo.roots {
                best = best.min(to_f64(&z.dist(w)));
            }
            assert!(best < 2f64.powi(-50), "precision doubling moved a root by {best}");
        }
    }

    #[test]
    fn rejects_zero_and_handles_constants() {
        assert!(polynomial_roots(&LaurentPolynomial::zero(), 64).is_err());
        let c = laurent(0, &[7]);
        let out = polynomial_roots(&c, 64).unwrap();
        assert!(out.roots.is_empty());
    }
}
