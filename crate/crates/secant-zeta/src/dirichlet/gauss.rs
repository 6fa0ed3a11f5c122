use super::DirichletCharacter;
use crate::numerics::{char_value_complex, log2_abs, ComplexHP, NumCtx, RM};
use astro_float::BigFloat;

/// Closed form of a Gauss sum for a real primitive character:
/// coefficient * sqrt(M) (even) or coefficient * i * sqrt(M) (odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaussExact {
    SqrtM(crate::exact::Rational),
    ISqrtM(crate::exact::Rational),
}

#[derive(Clone, Debug)]
pub struct GaussSumValue {
    pub exact: Option<GaussExact>,
    pub numeric: ComplexHP,
}

impl GaussExact {
    pub fn to_complex(&self, modulus: u64, ctx: &mut NumCtx) -> ComplexHP {
        let p = ctx.prec();
        let root = BigFloat::from_u64(modulus, p + 8).sqrt(p, RM);
        match self {
            GaussExact::SqrtM(c) => {
                ComplexHP::from_real(root.mul(&crate::numerics::rational_to_float(c, p), p, RM), p)
            }
            GaussExact::ISqrtM(c) => {
                ComplexHP::from_real(root.mul(&crate::numerics::rational_to_float(c, p), p, RM), p).mul_i()
            }
        }
    }
}

/// Direct summation sum chi(a) e^{2 pi i a / M}.
fn gauss_numeric(chi: &DirichletCharacter, ctx: &mut NumCtx) -> ComplexHP {
    let m = chi.modulus();
    if m <= 1 {
        return ComplexHP::one(ctx.prec());
    }
    let p = ctx.prec();
    let two_pi = ctx.pi().mul(&BigFloat::from_i8(2, p), p, RM);
    let mut acc = ComplexHP::zero(p);
    for a in 1..=m {
        let v = chi.value(a as i64);
        if v.is_zero() {
            continue;
        }
        let theta = two_pi.mul(&BigFloat::from_u64(a, p), p, RM).div(&BigFloat::from_u64(m, p), p, RM);
        let e = ComplexHP::new(theta.cos(p, RM, ctx.consts()), theta.sin(p, RM, ctx.consts()), p);
        acc = acc.add(&char_value_complex(&v, ctx).mul(&e));
    }
    acc
}

/// G(chi) = sum chi(a) e^{2 pi i a / M}: closed form for real primitive
/// characters (sqrt(M), resp. i sqrt(M), by parity), direct summation
/// always. The closed form is cross-checked against the direct sum.
pub fn gauss_sum(chi: &DirichletCharacter, precision: usize) -> GaussSumValue {
    let mut ctx = NumCtx::new(precision + 64);
    let numeric_hi = gauss_numeric(chi, &mut ctx);
    let exact = if chi.is_real() && chi.is_primitive() {
        let form = if chi.is_odd() {
            GaussExact::ISqrtM(crate::exact::rat(1))
        } else {
            GaussExact::SqrtM(crate::exact::rat(1))
        };
        let closed = form.to_complex(chi.modulus(), &mut ctx);
        let err = closed.dist(&numeric_hi);
        assert!(
            log2_abs(&err) < -(precision as f64 / 2.0).min(64.0),
            "gauss sum closed form disagrees with direct summation for {chi}: 2^{}",
            log2_abs(&err)
        );
        Some(form)
    } else {
        None
    };
    let mut numeric = numeric_hi;
    numeric.re.set_precision(precision, RM).ok();
    numeric.im.set_precision(precision, RM).ok();
    numeric.prec = precision;
    GaussSumValue { exact, numeric }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{characters_mod, kronecker_character, DirichletCharacter};
    use crate::exact::rat;
    use crate::numerics::to_f64;

    #[test]
    fn chi_minus4_gauss_sum_is_2i() {
        let chi = kronecker_character(-4).unwrap();
        let g = gauss_sum(&chi, 128);
        assert_eq!(g.exact, Some(GaussExact::ISqrtM(rat(1))));
        let (re, im) = g.numeric.to_f64_pair();
        assert!(re.abs() < 1e-30 && (im - 2.0).abs() < 1e-30);
    }

    #[test]
    fn trivial_character() {
        let g = gauss_sum(&DirichletCharacter::trivial(), 64);
        assert_eq!(g.exact, Some(GaussExact::SqrtM(rat(1))));
        let (re, im) = g.numeric.to_f64_pair();
        assert_eq!((re, im), (1.0, 0.0));
    }

    #[test]
    fn kronecker5_gauss_sum_is_sqrt5() {
        let chi = kronecker_character(5).unwrap();
        let g = gauss_sum(&chi, 192);
        assert_eq!(g.exact, Some(GaussExact::SqrtM(rat(1))));
        let (re, im) = g.numeric.to_f64_pair();
        assert!((re - 5f64.sqrt()).abs() < 1e-45_f64.max(f64::EPSILON * 4.0));
        assert!(im.abs() < 1e-40);
    }

    #[test]
    fn modulus_is_m_for_primitive() {
        for m in [3u64, 5, 7, 8, 12, 13, 35] {
            for chi in characters_mod(m, false).unwrap() {
                if !chi.is_primitive() {
                    continue;
                }
                let g = gauss_sum(&chi, 128);
                let abs2 = to_f64(&g.numeric.abs_sq());
                assert!((abs2 - m as f64).abs() < 1e-25, "m = {m}: |G|^2 = {abs2}");
            }
        }
    }
}
