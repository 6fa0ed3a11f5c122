//! Series evaluation: the secant and cotangent Dirichlet series and the
//! Eichler integrals of character Eisenstein series, with rigorous
//! geometric tail bounds in the Fourier/Lambert modes.

use super::{int_to_float, rational_to_float, to_f64, ComplexHP, NumCtx, RM};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::{Int, QuadExt, Rational};
use astro_float::BigFloat;
use num::{Integer, One, Zero};

/// Number of terms for a geometric tail: coeff_bound * rho^{N+1}/(1-rho)
/// below 2^-(bits). rho passed as its negated log2 (bits decayed per term).
pub(crate) fn geometric_terms(bits_per_term: f64, coeff_bound_log2: f64, bits: usize) -> usize {
    assert!(bits_per_term > 0.0, "point not in the open upper half-plane");
    let slack = coeff_bound_log2 + (1.0 / (1.0 - 2f64.powf(-bits_per_term))).log2();
    (((bits as f64 + slack) / bits_per_term).ceil() as usize + 4).max(4)
}

fn im_positive_bits(tau: &ComplexHP, period_scale: f64) -> Result<f64> {
    let im = to_f64(&tau.im);
    if !(im > 0.0) {
        return Err(Error::NumericDomain("point must lie in the open upper half-plane".into()));
    }
    // |q| = e^{-2 pi Im tau / M}: bits decayed per term
    Ok(2.0 * std::f64::consts::PI * im / period_scale / std::f64::consts::LN_2)
}

/// chi_-4-weighted power divisor sums a_n = sum_{d|n} chi_-4(d) d^{s},
/// exactly, for n = 1..=n_max (index 0 unused).
pub(crate) fn secant_divisor_sums(s: u32, n_max: usize) -> Vec<Int> {
    let mut sums = vec![Int::zero(); n_max + 1];
    for d in (1..=n_max).step_by(2) {
        let v: i64 = if d % 4 == 1 { 1 } else { -1 };
        let dp = Int::from(d).pow(s) * v;
        for multiple in (d..=n_max).step_by(d) {
            sums[multiple] += &dp;
        }
    }
    sums
}

/// sigma_s(n)/n^s = sum_{d|n} d^{-s} numerators: sigma_{-s}(n) as exact
/// rationals would be wasteful; return sigma_s(n) and divide later.
fn power_divisor_sums(s: u32, n_max: usize) -> Vec<Int> {
    let mut sums = vec![Int::zero(); n_max + 1];
    for d in 1..=n_max {
        let dp = Int::from(d).pow(s);
        for multiple in (d..=n_max).step_by(d) {
            sums[multiple] += &dp;
        }
    }
    sums
}

/// Evaluation mode for the secant series.
#[derive(Clone, Debug)]
pub enum PsiMode {
    /// Fourier expansion with a rigorous geometric tail bound; requires an
    /// even index and a point in the open upper half-plane.
    QSeries,
    /// Plain partial sums of sec(pi n tau)/n^s; the reported error estimate
    /// is a heuristic, not a bound.
    Direct { n_terms: usize },
}

/// Evaluation point for the direct mode.
#[derive(Clone, Debug)]
pub enum PsiPoint {
    Complex(ComplexHP),
    /// Real quadratic irrational (irrational by construction).
    RealQuadratic(QuadExt),
    /// Real rational point: the series converges only for odd denominators.
    RealRational(Rational),
}

/// The secant Dirichlet series psi_s(tau) = sum sec(pi n tau)/n^s.
///
/// QSeries mode: psi_{2m}(tau) = 2 sum_n (sum_{d|n} chi_-4(d) d^{2m})
/// e^{i pi n tau} / n^{2m}, geometric tail bound.
/// Direct mode: partial sums, heuristic error (second return value).
pub fn psi_numeric(s: u32, point: &PsiPoint, mode: &PsiMode, ctx: &mut NumCtx) -> Result<(ComplexHP, Option<BigFloat>)> {
    match mode {
        PsiMode::QSeries => {
            let PsiPoint::Complex(tau) = point else {
                return Err(Error::NumericDomain("Fourier mode needs a non-real point".into()));
            };
            if s < 2 || s % 2 != 0 {
                return Err(Error::NumericDomain(format!("Fourier mode needs even s >= 2, got {s}")));
            }
            Ok((psi_q_series(s, tau, ctx)?, None))
        }
        PsiMode::Direct { n_terms } => {
            let (value, estimate) = psi_direct(s, point, *n_terms, ctx)?;
            Ok((value, Some(estimate)))
        }
    }
}

fn psi_q_series(s: u32, tau: &ComplexHP, ctx: &mut NumCtx) -> Result<ComplexHP> {
    let p = ctx.prec();
    let w = p + 48;
    // e^{i pi tau}; |.| = e^{-pi Im tau}
    let bits_per_term = im_positive_bits(tau, 2.0)?;
    // |a_n / n^s| <= sigma_s(n)/n^s <= zeta(2) < 2; factor 2 in front
    let n_terms = geometric_terms(bits_per_term, 3.0, p + 16);
    let sums = secant_divisor_sums(s, n_terms);
    let mut wctx = ctx.with_prec(w);
    let pi = wctx.pi();
    let q = ComplexHP::new(tau.re.clone(), tau.im.clone(), w).scale(&pi).mul_i().exp(&mut wctx);
    let mut qn = ComplexHP::one(w);
    let mut acc = ComplexHP::zero(w);
    for n in 1..=n_terms {
        qn = qn.mul(&q);
        if sums[n].is_zero() {
            continue;
        }
        let coeff = rational_to_float(&Rational::new(sums[n].clone() * 2, Int::from(n).pow(s)), w);
        acc = acc.add(&qn.scale(&coeff));
    }
    acc.re.set_precision(p, RM).ok();
    acc.im.set_precision(p, RM).ok();
    acc.prec = p;
    Ok(acc)
}

fn psi_direct(s: u32, point: &PsiPoint, n_terms: usize, ctx: &mut NumCtx) -> Result<(ComplexHP, BigFloat)> {
    if s < 2 {
        return Err(Error::NumericDomain(format!("need s >= 2, got {s}")));
    }
    let p = ctx.prec();
    match point {
        PsiPoint::Complex(tau) => {
            im_positive_bits(tau, 2.0)?;
            let w = p + 48;
            let mut wctx = ctx.with_prec(w);
            let pi = wctx.pi();
            let u = ComplexHP::new(tau.re.clone(), tau.im.clone(), w).scale(&pi).mul_i().exp(&mut wctx);
            let u_inv = u.recip();
            let (mut un, mut un_inv) = (ComplexHP::one(w), ComplexHP::one(w));
            let mut acc = ComplexHP::zero(w);
            let mut last = BigFloat::from_i8(0, w);
            for n in 1..=n_terms {
                un = un.mul(&u);
                un_inv = un_inv.mul(&u_inv);
                let sec = ComplexHP::from_real(BigFloat::from_i8(2, w), w).div(&un.add(&un_inv));
                let term = sec.scale(&rational_to_float(&Rational::new(Int::one(), Int::from(n).pow(s)), w));
                last = term.abs();
                acc = acc.add(&term);
            }
            let estimate = tail_estimate(&last, n_terms, s);
            acc.re.set_precision(p, RM).ok();
            acc.im.set_precision(p, RM).ok();
            acc.prec = p;
            Ok((acc, estimate))
        }
        PsiPoint::RealQuadratic(x) => {
            let w = p + (n_terms as f64).log2() as usize + 48;
            let mut wctx = ctx.with_prec(w);
            let tau = wctx.quadext_to_float(x);
            Ok(real_secant_partial_sums(s, &tau, n_terms, p, &mut wctx))
        }
        PsiPoint::RealRational(r) => {
            if r.denom().is_even() {
                return Err(Error::NumericDomain(format!(
                    "sec(pi n {r}) hits a pole: rational points need an odd denominator"
                )));
            }
            let w = p + (n_terms as f64).log2() as usize + 48;
            let mut wctx = ctx.with_prec(w);
            let tau = rational_to_float(r, w);
            Ok(real_secant_partial_sums(s, &tau, n_terms, p, &mut wctx))
        }
    }
}

/// Heuristic: the tail behaves like the last |sec| level times the
/// integral of n^-s. Unproven; reported, never asserted.
fn tail_estimate(last_term_abs: &BigFloat, n_terms: usize, s: u32) -> BigFloat {
    let w = last_term_abs.precision().unwrap_or(64);
    last_term_abs
        .mul(&BigFloat::from_u64(n_terms as u64, w), w, RM)
        .div(&BigFloat::from_u64(s as u64 - 1, w), w, RM)
}

fn real_secant_partial_sums(
    s: u32,
    tau: &BigFloat,
    n_terms: usize,
    out_prec: usize,
    wctx: &mut NumCtx,
) -> (ComplexHP, BigFloat) {
    let w = wctx.prec();
    let pi = wctx.pi();
    let two = BigFloat::from_i8(2, w);
    // frac_n = n tau mod 2, tracked additively to keep cos arguments small
    let mut frac = BigFloat::from_i8(0, w);
    let mut acc = BigFloat::from_i8(0, w);
    let mut max_sec_tail = BigFloat::from_i8(0, w);
    for n in 1..=n_terms {
        frac = frac.add(tau, w, RM);
        let over = frac.div(&two, w, RM).floor().mul(&two, w, RM);
        frac = frac.sub(&over, w, RM);
        let c = frac.mul(&pi, w, RM).cos(w, RM, wctx.consts());
        let sec = BigFloat::from_i8(1, w).div(&c, w, RM);
        let term = sec.div(&int_to_float(&Int::from(n).pow(s), w), w, RM);
        acc = acc.add(&term, w, RM);
        if n + 10 >= n_terms {
            let a = sec.abs();
            max_sec_tail = max_sec_tail.max(&a);
        }
    }
    let estimate = max_sec_tail
        .mul(&powi_neg(&BigFloat::from_u64(n_terms as u64, w), 1 - s as i64, w), w, RM)
        .div(&BigFloat::from_u64(s as u64 - 1, w), w, RM);
    acc.set_precision(out_prec, RM).ok();
    (ComplexHP::from_real(acc, out_prec), estimate)
}

fn powi_neg(x: &BigFloat, n: i64, p: usize) -> BigFloat {
    let pos = x.powi(n.unsigned_abs() as usize, p, RM);
    if n >= 0 {
        pos
    } else {
        BigFloat::from_i8(1, p).div(&pos, p, RM)
    }
}

/// The cotangent Dirichlet series xi_s(tau) = sum cot(pi n tau)/n^s via the
/// Lambert form: (i/2) xi_s = zeta(s)/2 + sum sigma_s(n)/n^s q^n.
pub fn xi_numeric(s: u32, tau: &ComplexHP, ctx: &mut NumCtx) -> Result<ComplexHP> {
    if s < 2 {
        return Err(Error::NumericDomain(format!("need s >= 2, got {s}")));
    }
    let p = ctx.prec();
    let w = p + 48;
    let bits_per_term = im_positive_bits(tau, 1.0)?;
    let n_terms = geometric_terms(bits_per_term, 3.0, p + 16);
    let sums = power_divisor_sums(s, n_terms);
    let mut wctx = ctx.with_prec(w);
    let two_pi = wctx.pi().mul(&BigFloat::from_i8(2, w), w, RM);
    let q = ComplexHP::new(tau.re.clone(), tau.im.clone(), w).scale(&two_pi).mul_i().exp(&mut wctx);
    let mut qn = ComplexHP::one(w);
    let mut acc = ComplexHP::from_real(super::lfunc::zeta(s, w)?, w);
    for n in 1..=n_terms {
        qn = qn.mul(&q);
        let coeff = rational_to_float(&Rational::new(sums[n].clone() * 2, Int::from(n).pow(s)), w);
        acc = acc.add(&qn.scale(&coeff));
    }
    // xi = -i [zeta(s) + 2 sum ...]
    let mut out = acc.mul_i().neg();
    out.re.set_precision(p, RM).ok();
    out.im.set_precision(p, RM).ok();
    out.prec = p;
    Ok(out)
}

/// Direct cot summation, cross-check route for the Lambert form. The terms
/// tend to -i/n^s, so the constant tail is resummed exactly through zeta:
/// xi_s = sum_n [cot(pi n tau) + i]/n^s - i zeta(s); the bracketed terms
/// decay geometrically and each cot is evaluated from e^{2 i pi n tau}.
pub fn xi_direct(s: u32, tau: &ComplexHP, n_terms: usize, ctx: &mut NumCtx) -> Result<ComplexHP> {
    let p = ctx.prec();
    let w = p + 48;
    im_positive_bits(tau, 1.0)?;
    let mut wctx = ctx.with_prec(w);
    let two_pi = wctx.pi().mul(&BigFloat::from_i8(2, w), w, RM);
    let q = ComplexHP::new(tau.re.clone(), tau.im.clone(), w).scale(&two_pi).mul_i().exp(&mut wctx);
    let mut qn = ComplexHP::one(w);
    let mut acc = ComplexHP::from_real(super::lfunc::zeta(s, w)?, w).mul_i().neg();
    let one = ComplexHP::one(w);
    let i_c = ComplexHP::i(w);
    for n in 1..=n_terms {
        qn = qn.mul(&q);
        // cot(pi n tau) = i (q^n + 1)/(q^n - 1)
        let cot = qn.add(&one).div(&qn.sub(&one)).mul_i();
        let term = cot.add(&i_c);
        acc = acc.add(&term.scale(&rational_to_float(&Rational::new(Int::one(), Int::from(n).pow(s)), w)));
    }
    acc.re.set_precision(p, RM).ok();
    acc.im.set_precision(p, RM).ok();
    acc.prec = p;
    Ok(acc)
}

/// chi_-4-twisted cotangent sum psi-hat_{2m}(tau)
///   = sum_n chi_-4(n) cot(pi n tau / 2) / (n/2)^{2m}
///   = -i 2^{2m} [ L(chi_-4, 2m) + 2 sum_N (sum_{n|N} chi_-4(n) n^{-2m}) qt^N ],
/// qt = e^{i pi tau}; the L-value is evaluated on the Hurwitz route.
pub fn psi_hat_numeric(m: u32, tau: &ComplexHP, ctx: &mut NumCtx) -> Result<ComplexHP> {
    let p = ctx.prec();
    let w = p + 48;
    let bits_per_term = im_positive_bits(tau, 2.0)?;
    let n_terms = geometric_terms(bits_per_term, 4.0, p + 16);
    let chi4 = crate::dirichlet::kronecker_character(-4)?;
    let mut wctx = ctx.with_prec(w);
    let pi = wctx.pi();
    let qt = ComplexHP::new(tau.re.clone(), tau.im.clone(), w).scale(&pi).mul_i().exp(&mut wctx);
    // L(chi_-4, 2m) + 2 sum divisor terms
    let mut acc = super::lfunc::l_numeric(2 * m as i64, &chi4, &mut wctx)?;
    // divisor sums sum_{n|N, n odd} chi_-4(n)/n^{2m}: exact rationals
    let mut coeffs = vec![Rational::zero(); n_terms + 1];
    for d in (1..=n_terms).step_by(2) {
        let v: i64 = if d % 4 == 1 { 1 } else { -1 };
        let c = Rational::new(Int::from(v), Int::from(d).pow(2 * m));
        for multiple in (d..=n_terms).step_by(d) {
            coeffs[multiple] += &c;
        }
    }
    let mut qn = ComplexHP::one(w);
    for n in 1..=n_terms {
        qn = qn.mul(&qt);
        if coeffs[n].is_zero() {
            continue;
        }
        acc = acc.add(&qn.scale(&rational_to_float(&(&coeffs[n] * Rational::from_integer(Int::from(2))), w)));
    }
    let scale = BigFloat::from_u64(2u64.pow(2 * m), w);
    let mut out = acc.scale(&scale).mul_i().neg();
    out.re.set_precision(p, RM).ok();
    out.im.set_precision(p, RM).ok();
    out.prec = p;
    Ok(out)
}

/// Eichler integral of the Eisenstein series attached to (chi, psi):
/// Etilde_k(tau; chi, psi) = -4 pi i/(k-1) G(psi)/M
///     sum_n (sum_{d|n} conj(psi)(n/d) chi(d) d^{1-k}) e^{2 pi i n tau / M},
/// psi primitive, Im tau > 0.
pub fn eichler_numeric(
    k: u32,
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    tau: &ComplexHP,
    ctx: &mut NumCtx,
) -> Result<ComplexHP> {
    if k < 3 {
        return Err(Error::NumericDomain(format!("need k >= 3, got {k}")));
    }
    if !psi.is_primitive() {
        return Err(Error::ImprimitiveCharacter { modulus: psi.modulus(), conductor: psi.conductor() });
    }
    let p = ctx.prec();
    let w = p + 48;
    let m_mod = psi.modulus().max(1);
    let bits_per_term = im_positive_bits(tau, m_mod as f64)?;
    let n_terms = geometric_terms(bits_per_term, 3.0, p + 16);
    let mut wctx = ctx.with_prec(w);

    // Fourier coefficients with complex character values
    let chi_vals: Vec<ComplexHP> = (0..chi.modulus().max(1))
        .map(|r| super::char_value_complex(&chi.value(r as i64), &mut wctx))
        .collect();
    let psi_conj_vals: Vec<ComplexHP> = (0..m_mod)
        .map(|r| super::char_value_complex(&psi.value(r as i64).conjugate(), &mut wctx))
        .collect();
    let lm = chi.modulus().max(1) as usize;
    let mut coeffs = vec![ComplexHP::zero(w); n_terms + 1];
    for d in 1..=n_terms {
        let chi_d = &chi_vals[d % lm];
        if chi_d.is_zero() {
            continue;
        }
        let dpow = powi_neg(&BigFloat::from_u64(d as u64, w), 1 - k as i64, w);
        let x = chi_d.scale(&dpow);
        for n in (d..=n_terms).step_by(d) {
            let psi_v = &psi_conj_vals[(n / d) % m_mod as usize];
            if psi_v.is_zero() {
                continue;
            }
            coeffs[n] = coeffs[n].add(&psi_v.mul(&x));
        }
    }

    let two_pi = wctx.pi().mul(&BigFloat::from_i8(2, w), w, RM);
    let qstep = ComplexHP::new(tau.re.clone(), tau.im.clone(), w)
        .scale(&two_pi)
        .mul_i()
        .scale(&BigFloat::from_i8(1, w).div(&BigFloat::from_u64(m_mod, w), w, RM))
        .exp(&mut wctx);
    let mut qn = ComplexHP::one(w);
    let mut acc = ComplexHP::zero(w);
    for n in 1..=n_terms {
        qn = qn.mul(&qstep);
        if coeffs[n].is_zero() {
            continue;
        }
        acc = acc.add(&qn.mul(&coeffs[n]));
    }
    // prefactor -4 pi i / (k-1) * G(psi)/M
    let g = crate::dirichlet::gauss_sum(psi, w).numeric;
    let pi = wctx.pi();
    let front = ComplexHP::from_real(
        pi.mul(&BigFloat::from_i8(-4, w), w, RM)
            .div(&BigFloat::from_u64(k as u64 - 1, w), w, RM)
            .div(&BigFloat::from_u64(m_mod, w), w, RM),
        w,
    )
    .mul_i()
    .mul(&g);
    let mut out = acc.mul(&front);
    out.re.set_precision(p, RM).ok();
    out.im.set_precision(p, RM).ok();
    out.prec = p;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::kronecker_character;
    use crate::exact::{rat, rat_frac};
    use crate::numerics::log2_abs;

    fn c(re: f64, im: f64, p: usize) -> ComplexHP {
        ComplexHP::from_f64(re, im, p)
    }

    fn residual_log2(a: &ComplexHP, b: &ComplexHP) -> f64 {
        log2_abs(&a.dist(b))
    }

    #[test]
    fn psi_periodicity() {
        // psi_s(tau + 2) = psi_s(tau) at 2^-200
        let mut ctx = NumCtx::new(256);
        let tau = ComplexHP::from_rationals(&rat_frac(1, 3), &rat_frac(5, 3), 256);
        let shifted = tau.add(&ComplexHP::from_rationals(&rat(2), &rat(0), 256));
        let a = psi_numeric(4, &PsiPoint::Complex(tau), &PsiMode::QSeries, &mut ctx).unwrap().0;
        let b = psi_numeric(4, &PsiPoint::Complex(shifted), &PsiMode::QSeries, &mut ctx).unwrap().0;
        assert!(residual_log2(&a, &b) < -200.0, "2^{}", residual_log2(&a, &b));
    }

    #[test]
    fn psi_two_modes_agree() {
        // q-series vs direct at tau = i/2, s = 2, to 50 digits
        let mut ctx = NumCtx::new(256);
        let tau = ComplexHP::from_rationals(&rat(0), &rat_frac(1, 2), 256);
        let a = psi_numeric(2, &PsiPoint::Complex(tau.clone()), &PsiMode::QSeries, &mut ctx).unwrap().0;
        let (b, est) =
            psi_numeric(2, &PsiPoint::Complex(tau), &PsiMode::Direct { n_terms: 400 }, &mut ctx).unwrap();
        assert!(residual_log2(&a, &b) < -170.0, "2^{}", residual_log2(&a, &b));
        assert!(est.is_some());
    }

    #[test]
    fn psi_rejects_bad_domains() {
        let mut ctx = NumCtx::new(128);
        // lower half-plane rejected
        let tau = c(0.3, -1.0, 128);
        assert!(psi_numeric(4, &PsiPoint::Complex(tau), &PsiMode::QSeries, &mut ctx).is_err());
        // odd index rejected in Fourier mode
        let tau = c(0.3, 1.0, 128);
        assert!(psi_numeric(3, &PsiPoint::Complex(tau), &PsiMode::QSeries, &mut ctx).is_err());
        // rational with even denominator rejected in direct mode
        let point = PsiPoint::RealRational(rat_frac(3, 2));
        assert!(psi_numeric(2, &point, &PsiMode::Direct { n_terms: 10 }, &mut ctx).is_err());
        // odd denominator accepted
        let point = PsiPoint::RealRational(rat_frac(1, 3));
        assert!(psi_numeric(2, &point, &PsiMode::Direct { n_terms: 100 }, &mut ctx).is_ok());
    }

    #[test]
    fn xi_period_one() {
        let mut ctx = NumCtx::new(224);
        let tau = ComplexHP::from_rationals(&rat_frac(1, 5), &rat_frac(3, 5), 224);
        let shifted = tau.add(&ComplexHP::one(224));
        let a = xi_numeric(3, &tau, &mut ctx).unwrap();
        let b = xi_numeric(3, &shifted, &mut ctx).unwrap();
        assert!(residual_log2(&a, &b) < -170.0);
    }

    #[test]
    fn xi_lambert_vs_direct() {
        let mut ctx = NumCtx::new(224);
        let tau = ComplexHP::from_rationals(&rat(0), &rat(1), 224);
        let a = xi_numeric(3, &tau, &mut ctx).unwrap();
        let b = xi_direct(3, &tau, 80, &mut ctx).unwrap();
        assert!(residual_log2(&a, &b) < -140.0, "2^{}", residual_log2(&a, &b)); // 40+ digits
    }

    #[test]
    fn eichler_relation_to_psi() {
        // psi_{2m}(tau/2) = (2m/pi) Etilde_{2m+1}(tau; 1, chi_-4) at tau = i
        let mut ctx = NumCtx::new(224);
        let chi4 = kronecker_character(-4).unwrap();
        let one = DirichletCharacter::trivial();
        for m in [1u32, 2] {
            let tau = ComplexHP::from_rationals(&rat(0), &rat(1), 224);
            let half_tau = ComplexHP::from_rationals(&rat(0), &rat_frac(1, 2), 224);
            let lhs = psi_numeric(2 * m, &PsiPoint::Complex(half_tau), &PsiMode::QSeries, &mut ctx).unwrap().0;
            let e = eichler_numeric(2 * m + 1, &one, &chi4, &tau, &mut ctx).unwrap();
            let pi = ctx.pi();
            let rhs = e.scale(&BigFloat::from_u64(2 * m as u64, 224).div(&pi, 224, RM));
            assert!(residual_log2(&lhs, &rhs) < -130.0, "m = {m}: 2^{}", residual_log2(&lhs, &rhs));
        }
    }

    #[test]
    fn eichler_period_m() {
        // Etilde_k(tau + M) = Etilde_k(tau)
        let mut ctx = NumCtx::new(192);
        let chi5 = kronecker_character(5).unwrap();
        let one = DirichletCharacter::trivial();
        let tau = ComplexHP::from_rationals(&rat_frac(1, 7), &rat_frac(4, 5), 192);
        let shifted = tau.add(&ComplexHP::from_rationals(&rat(5), &rat(0), 192));
        let a = eichler_numeric(4, &one, &chi5, &tau, &mut ctx).unwrap();
        let b = eichler_numeric(4, &one, &chi5, &shifted, &mut ctx).unwrap();
        assert!(residual_log2(&a, &b) < -150.0);
        // imprimitive psi rejected
        let p6 = DirichletCharacter::principal(6).unwrap();
        assert!(eichler_numeric(4, &one, &p6, &tau, &mut ctx).is_err());
    }

    #[test]
    fn psi_hat_matches_defining_sum() {
        // per-term cot evaluation of chi_-4(n) cot(pi n tau/2)/(n/2)^{2m}
        // at tau = i; cot tends to -i, so the constant tail is resummed as
        // -i 2^{2m} L(chi_-4, 2m) exactly
        let mut ctx = NumCtx::new(192);
        let tau = ComplexHP::from_rationals(&rat(0), &rat(1), 192);
        let fast = psi_hat_numeric(1, &tau, &mut ctx).unwrap();
        let w = 192;
        let mut wctx = ctx.with_prec(w);
        let pi = wctx.pi();
        let chi4 = kronecker_character(-4).unwrap();
        let l = crate::numerics::l_numeric(2, &chi4, &mut wctx).unwrap();
        let half = ComplexHP::from_rationals(&rat(0), &rat_frac(1, 2), w);
        let q = half.scale(&pi).mul_i().exp(&mut wctx); // e^{i pi tau / 2} at tau = i
        let mut direct = l.scale(&BigFloat::from_i8(4, w)).mul_i().neg();
        let one = ComplexHP::one(w);
        let i_c = ComplexHP::i(w);
        let mut qn = ComplexHP::one(w);
        for n in 1..=600usize {
            qn = qn.mul(&q).mul(&q); // e^{i pi n tau}
            if n % 2 == 0 {
                continue;
            }
            let v: i64 = if n % 4 == 1 { 1 } else { -1 };
            let cot = qn.add(&one).div(&qn.sub(&one)).mul_i();
            let coeff = rational_to_float(&Rational::new(Int::from(v * 4), Int::from(n).pow(2)), w);
            direct = direct.add(&cot.add(&i_c).scale(&coeff));
        }
        assert!(residual_log2(&fast, &direct) < -150.0, "2^{}", residual_log2(&fast, &direct));
    }

    #[test]
    fn real_quadratic_smoke() {
        // psi_2(sqrt 2) ~ -pi^2/3 with modest partial sums
        let mut ctx = NumCtx::new(96);
        let x = QuadExt::sqrt_of_rational(&rat(2)).unwrap();
        let (v, est) = psi_numeric(2, &PsiPoint::RealQuadratic(x), &PsiMode::Direct { n_terms: 40_000 }, &mut ctx)
            .unwrap();
        let (value, _) = v.to_f64_pair();
        let expect = -(std::f64::consts::PI * std::f64::consts::PI) / 3.0;
        assert!((value - expect).abs() < 2e-3, "{value} vs {expect}");
        assert!(est.is_some());
    }
}
