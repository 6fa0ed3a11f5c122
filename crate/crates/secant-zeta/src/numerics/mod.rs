//! Arbitrary-precision numerical engine: complex arithmetic with tracked
//! precision, series evaluation of the secant/cotangent Dirichlet series and
//! Eichler integrals, Dirichlet L-values via Euler-Maclaurin, and the
//! identity-verification catalog.

mod lfunc;
mod series;
mod verify;

pub use lfunc::{hurwitz_zeta, l_numeric};
pub use series::{eichler_numeric, psi_hat_numeric, psi_numeric, xi_direct, xi_numeric, PsiMode, PsiPoint};
pub use verify::{default_suites, verify_identity, IdentityId, ResidualReport, VerifyParams};

use crate::exact::{Int, QuadExt, Rational};
use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num::Zero as _;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Evaluation context: working precision in bits plus the shared cache of
/// computed constants. Not shared across threads; workers build their own.
pub struct NumCtx {
    prec: usize,
    cc: Consts,
}

impl NumCtx {
    pub fn new(prec: usize) -> Self {
        NumCtx { prec, cc: Consts::new().expect("constants cache") }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// A child context at a different working precision, sharing no state.
    pub fn with_prec(&self, prec: usize) -> NumCtx {
        NumCtx::new(prec)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    pub fn consts(&mut self) -> &mut Consts {
        &mut self.cc
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i8(0, self.prec)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn from_int(&self, v: &Int) -> BigFloat {
        int_to_float(v, self.prec)
    }

    pub fn from_rational(&self, q: &Rational) -> BigFloat {
        rational_to_float(q, self.prec)
    }

    /// 2^-k as an exact float.
    pub fn pow2(&self, k: i64) -> BigFloat {
        let mut one = BigFloat::from_i8(1, self.prec);
        if let Some(e) = one.exponent() {
            one.set_exponent(e + k as astro_float::Exponent);
        }
        one
    }

    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.prec, RM, &mut self.cc)
    }

    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.prec, RM, &mut self.cc)
    }

    pub fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.prec, RM, &mut self.cc)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.prec, RM)
    }

    /// sqrt(d) for the field parameter of a quadratic element.
    pub fn quadext_to_float(&self, x: &QuadExt) -> BigFloat {
        let rd = BigFloat::from_u64(x.field(), self.prec + 8).sqrt(self.prec + 8, RM);
        let a = rational_to_float_p(x.rational_part(), self.prec + 8);
        let b = rational_to_float_p(x.sqrt_coefficient(), self.prec + 8);
        a.add(&b.mul(&rd, self.prec + 8, RM), self.prec, RM)
    }
}

/// Exact conversion of a big integer (value = words * 2^0).
pub fn int_to_float(v: &Int, prec: usize) -> BigFloat {
    let (sign, digits) = v.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_i8(0, prec);
    }
    let s = if sign == num::bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
    let e = (64 * digits.len()) as astro_float::Exponent;
    let mut f = BigFloat::from_words(&digits, s, e);
    if f.precision().unwrap_or(0) < prec {
        // keep at least the requested precision for downstream ops
        f.set_precision(prec.max(f.precision().unwrap_or(0)), RM).expect("set precision");
    }
    f
}

fn rational_to_float_p(q: &Rational, prec: usize) -> BigFloat {
    let n = int_to_float(q.numer(), prec + 64);
    let d = int_to_float(q.denom(), prec + 64);
    n.div(&d, prec, RM)
}

pub fn rational_to_float(q: &Rational, prec: usize) -> BigFloat {
    rational_to_float_p(q, prec)
}

/// Crude magnitude as f64, good enough for tail-length planning.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((digits, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *digits.last().unwrap() as f64; // MSB-aligned word
    let mag = top / 2f64.powi(64) * 2f64.powi(e);
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// log2 |x|, -inf for zero; coarse (top word only).
pub fn log2_abs(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let Some((digits, _, _, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *digits.last().unwrap() as f64;
    top.log2() - 64.0 + e as f64
}

/// Complex number with explicit precision; operations never claim more
/// precision than their least precise input.
#[derive(Clone, Debug)]
pub struct ComplexHP {
    pub re: BigFloat,
    pub im: BigFloat,
    pub prec: usize,
}

impl ComplexHP {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        ComplexHP { re, im, prec }
    }

    pub fn zero(prec: usize) -> Self {
        ComplexHP { re: BigFloat::from_i8(0, prec), im: BigFloat::from_i8(0, prec), prec }
    }

    pub fn one(prec: usize) -> Self {
        ComplexHP { re: BigFloat::from_i8(1, prec), im: BigFloat::from_i8(0, prec), prec }
    }

    pub fn i(prec: usize) -> Self {
        ComplexHP { re: BigFloat::from_i8(0, prec), im: BigFloat::from_i8(1, prec), prec }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        ComplexHP { re: BigFloat::from_f64(re, prec), im: BigFloat::from_f64(im, prec), prec }
    }

    pub fn from_real(re: BigFloat, prec: usize) -> Self {
        ComplexHP { re, im: BigFloat::from_i8(0, prec), prec }
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: usize) -> Self {
        ComplexHP { re: rational_to_float_p(re, prec), im: rational_to_float_p(im, prec), prec }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn join(&self, rhs: &ComplexHP) -> usize {
        self.prec.min(rhs.prec)
    }

    pub fn add(&self, rhs: &ComplexHP) -> ComplexHP {
        let p = self.join(rhs);
        ComplexHP { re: self.re.add(&rhs.re, p, RM), im: self.im.add(&rhs.im, p, RM), prec: p }
    }

    pub fn sub(&self, rhs: &ComplexHP) -> ComplexHP {
        let p = self.join(rhs);
        ComplexHP { re: self.re.sub(&rhs.re, p, RM), im: self.im.sub(&rhs.im, p, RM), prec: p }
    }

    pub fn neg(&self) -> ComplexHP {
        ComplexHP { re: self.re.neg(), im: self.im.neg(), prec: self.prec }
    }

    pub fn conj(&self) -> ComplexHP {
        ComplexHP { re: self.re.clone(), im: self.im.neg(), prec: self.prec }
    }

    pub fn mul(&self, rhs: &ComplexHP) -> ComplexHP {
        let p = self.join(rhs);
        let re = self.re.mul(&rhs.re, p, RM).sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.re.mul(&rhs.im, p, RM).add(&self.im.mul(&rhs.re, p, RM), p, RM);
        ComplexHP { re, im, prec: p }
    }

    pub fn scale(&self, c: &BigFloat) -> ComplexHP {
        let p = self.prec;
        ComplexHP { re: self.re.mul(c, p, RM), im: self.im.mul(c, p, RM), prec: p }
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> ComplexHP {
        ComplexHP { re: self.im.neg(), im: self.re.clone(), prec: self.prec }
    }

    pub fn abs_sq(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.abs_sq().sqrt(self.prec, RM)
    }

    pub fn recip(&self) -> ComplexHP {
        let p = self.prec;
        let n = self.abs_sq();
        ComplexHP { re: self.re.div(&n, p, RM), im: self.im.neg().div(&n, p, RM), prec: p }
    }

    pub fn div(&self, rhs: &ComplexHP) -> ComplexHP {
        self.mul(&rhs.recip())
    }

    pub fn powi(&self, n: i64) -> ComplexHP {
        if n == 0 {
            return ComplexHP::one(self.prec);
        }
        let base = if n < 0 { self.recip() } else { self.clone() };
        let mut acc = ComplexHP::one(self.prec);
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// e^z = e^re (cos im + i sin im).
    pub fn exp(&self, ctx: &mut NumCtx) -> ComplexHP {
        let p = self.prec.min(ctx.prec);
        let r = self.re.exp(p, RM, ctx.consts());
        let c = self.im.cos(p, RM, ctx.consts());
        let s = self.im.sin(p, RM, ctx.consts());
        ComplexHP { re: r.mul(&c, p, RM), im: r.mul(&s, p, RM), prec: p }
    }

    /// Distance |self - rhs|.
    pub fn dist(&self, rhs: &ComplexHP) -> BigFloat {
        self.sub(rhs).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    /// Full-precision decimal strings (re, im).
    pub fn to_decimal_strings(&self, ctx: &mut NumCtx) -> (String, String) {
        let fmt = |x: &BigFloat, ctx: &mut NumCtx| -> String {
            x.format(astro_float::Radix::Dec, RM, ctx.consts()).unwrap_or_else(|_| "nan".into())
        };
        (fmt(&self.re, ctx), fmt(&self.im, ctx))
    }
}

/// Evaluates an exact polynomial at a complex point (Horner).
pub fn eval_polynomial(p: &crate::exact::Polynomial, z: &ComplexHP, prec: usize) -> ComplexHP {
    let mut acc = ComplexHP::zero(prec);
    let deg = match p.degree() {
        None => return acc,
        Some(d) => d,
    };
    for k in (0..=deg).rev() {
        acc = acc.mul(z);
        let c = p.coeff(k);
        if !c.is_zero() {
            acc = acc.add(&ComplexHP::from_real(rational_to_float_p(&c, prec), prec));
        }
    }
    acc
}

/// Evaluates an exact rational function at a complex point. Returns None on
/// a (numerical) pole.
pub fn eval_rational_function(
    f: &crate::exact::RationalFunction,
    z: &ComplexHP,
    prec: usize,
) -> Option<ComplexHP> {
    let den = eval_polynomial(f.denominator(), z, prec);
    if den.is_zero() {
        return None;
    }
    Some(eval_polynomial(f.numerator(), z, prec).div(&den))
}

/// Evaluates an exact Laurent polynomial at a complex point (z nonzero when
/// negative exponents are present).
pub fn eval_laurent(p: &crate::exact::LaurentPolynomial, z: &ComplexHP, prec: usize) -> ComplexHP {
    let mut acc = ComplexHP::zero(prec);
    for (e, c) in p.terms() {
        let term = z.powi(e).scale(&rational_to_float_p(c, prec));
        acc = acc.add(&term);
    }
    acc
}

/// Complex value of a character entry (root of unity) at the given precision.
pub fn char_value_complex(v: &crate::dirichlet::CharValue, ctx: &mut NumCtx) -> ComplexHP {
    match v.root_exponent() {
        None => ComplexHP::zero(ctx.prec),
        Some((0, 1)) => ComplexHP::one(ctx.prec),
        Some((1, 2)) => ComplexHP::one(ctx.prec).neg(),
        Some((num, den)) => {
            let p = ctx.prec;
            let two_pi = ctx.pi().mul(&BigFloat::from_i8(2, p), p, RM);
            let theta =
                two_pi.mul(&BigFloat::from_u64(num as u64, p), p, RM).div(&BigFloat::from_u64(den as u64, p), p, RM);
            ComplexHP { re: theta.cos(p, RM, ctx.consts()), im: theta.sin(p, RM, ctx.consts()), prec: p }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    #[test]
    fn int_conversion_round_trips() {
        let v = Int::from(123456789012345678i64);
        let f = int_to_float(&v, 128);
        assert_eq!(to_f64(&f), 123456789012345678f64);
        let neg = int_to_float(&Int::from(-5), 64);
        assert_eq!(to_f64(&neg), -5.0);
        assert!(int_to_float(&Int::from(0), 64).is_zero());
        // huge value: 2^200 + 1 survives exactly at enough precision
        let big = (Int::from(1) << 200) + 1;
        let f = int_to_float(&big, 256);
        let back = f.sub(&int_to_float(&(Int::from(1) << 200), 256), 256, RM);
        assert_eq!(to_f64(&back), 1.0);
    }

    #[test]
    fn complex_basics() {
        let mut ctx = NumCtx::new(192);
        let z = ComplexHP::from_rationals(&rat(0), &rat(1), 192);
        // e^{i pi} = -1 via exp of i*pi
        let pi = ctx.pi();
        let ipi = z.scale(&pi);
        let e = ipi.exp(&mut ctx);
        let err = e.add(&ComplexHP::one(192)).abs();
        assert!(log2_abs(&err) < -180.0, "residual 2^{}", log2_abs(&err));
    }

    #[test]
    fn division_and_powers() {
        let z = ComplexHP::from_f64(1.5, -2.0, 128);
        let w = z.mul(&z.recip());
        assert!(log2_abs(&w.sub(&ComplexHP::one(128)).abs()) < -120.0);
        let z4 = z.powi(4);
        let z4b = z.mul(&z).mul(&z).mul(&z);
        assert!(log2_abs(&z4.dist(&z4b)) < -110.0);
        // negative powers
        let zm2 = z.powi(-2);
        let id = zm2.mul(&z).mul(&z);
        assert!(log2_abs(&id.sub(&ComplexHP::one(128)).abs()) < -110.0);
    }

    #[test]
    fn polynomial_eval_matches_rational_eval() {
        let p = crate::exact::Polynomial::new(vec![rat_frac(1, 3), rat(-2), rat_frac(7, 5)]);
        let x = rat_frac(9, 7);
        let exact = p.eval(&x);
        let z = ComplexHP::from_rationals(&x, &rat(0), 192);
        let approx = eval_polynomial(&p, &z, 192);
        let diff = approx.re.sub(&rational_to_float(&exact, 192), 192, RM);
        assert!(log2_abs(&diff) < -180.0);
        assert!(approx.im.is_zero());
    }

    #[test]
    fn precision_is_min_of_inputs() {
        let a = ComplexHP::one(256);
        let b = ComplexHP::one(128);
        assert_eq!(a.add(&b).prec, 128);
        assert_eq!(a.mul(&b).prec, 128);
    }
}
