//! Generalized Ramanujan polynomials, period polynomials of Eisenstein
//! series attached to character pairs, self-inversivity, root finding and
//! the unimodularity conjecture scans.

mod report;
mod roots;
mod scan;

pub use report::{unimodularity_report, ClassCounts, ClassifiedRoot, RootClass, RootReport};
pub use roots::{polynomial_roots, PolynomialRoots};
pub use scan::{scan_conjecture, ExceptionalItem, ScanConfig, ScanFamily, ScanSummary};

use crate::dirichlet::{generalized_bernoulli, l_value_exact, DirichletCharacter, SymbolicLValue};
use crate::error::{Error, Result};
use crate::exact::{factorial, rat, rational_pow, Int, LaurentPolynomial, Polynomial, Rational, RationalFunction};
use crate::modgroup::Mat2Z;
use crate::numerics::{ComplexHP, NumCtx, RM};
use astro_float::BigFloat;
use num::{One, Zero};

/// Classical Ramanujan polynomial
/// R_k(X) = sum_{s=0}^{k} B_s/s! B_{k-s}/(k-s)! X^{s-1}, k even >= 4.
pub fn ramanujan_classic(k: u32) -> Result<LaurentPolynomial> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::Domain(format!("classical polynomial needs even k >= 4, got {k}")));
    }
    let mut acc = LaurentPolynomial::zero();
    for s in 0..=k {
        let c = crate::exact::bernoulli_number(s) * crate::exact::bernoulli_number(k - s)
            / Rational::from_integer(factorial(s) * factorial(k - s));
        if c.is_zero() {
            continue;
        }
        acc = &acc + &LaurentPolynomial::monomial(c, s as i64 - 1);
    }
    Ok(acc)
}

/// B_{n,chi}/n! with a cache-free direct call; helper for the polynomial
/// constructors below.
fn b_over_fact(n: u32, chi: &DirichletCharacter) -> Result<Rational> {
    Ok(generalized_bernoulli(n, chi)? / Rational::from_integer(factorial(n)))
}

/// Generalized Ramanujan polynomial
/// R_k(X; chi, psi) = sum_s B_{s,chi}/s! B_{k-s,psi}/(k-s)!
///                    ((X-1)/M)^{k-s-1} (1 - X^{s-1}).
/// A Laurent polynomial in general (X^-1 appears when chi is principal);
/// the s = k term is the polynomial M (1 - X^{k-1})/(X - 1).
pub fn r_gen(k: u32, chi: &DirichletCharacter, psi: &DirichletCharacter) -> Result<LaurentPolynomial> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let m_mod = Rational::from_integer(Int::from(psi.modulus().max(1)));
    let x_minus_1 = LaurentPolynomial::new(0, vec![rat(-1), rat(1)]);
    let mut acc = LaurentPolynomial::zero();
    for s in 0..=k {
        let c = b_over_fact(s, chi)? * b_over_fact(k - s, psi)?;
        if c.is_zero() {
            continue;
        }
        let scale = c * rational_pow(&m_mod, -((k - s) as i64 - 1));
        let term = if s < k {
            // (X-1)^{k-s-1} (1 - X^{s-1}); for s = 0 the second factor is
            // 1 - X^{-1} = (X-1)/X, a genuine Laurent object
            let mut pw = LaurentPolynomial::monomial(Rational::one(), 0);
            for _ in 0..(k - s - 1) {
                pw = &pw * &x_minus_1;
            }
            let bracket = &LaurentPolynomial::monomial(Rational::one(), 0)
                - &LaurentPolynomial::monomial(Rational::one(), s as i64 - 1);
            &pw * &bracket
        } else {
            // (1 - X^{k-1})/(X-1) = -(1 + X + ... + X^{k-2})
            LaurentPolynomial::new(0, vec![-Rational::one(); (k - 1) as usize])
        };
        acc = &acc + &term.scale(&scale);
    }
    Ok(acc)
}

/// S_k(X; chi, psi) = sum_s B_{s,chi}/s! B_{k-s,psi}/(k-s)! (L X/M)^{k-s-1}.
pub fn s_gen(k: u32, chi: &DirichletCharacter, psi: &DirichletCharacter) -> Result<LaurentPolynomial> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let ratio = Rational::new(Int::from(chi.modulus().max(1)), Int::from(psi.modulus().max(1)));
    let mut acc = LaurentPolynomial::zero();
    for s in 0..=k {
        let c = b_over_fact(s, chi)? * b_over_fact(k - s, psi)?;
        if c.is_zero() {
            continue;
        }
        let e = k as i64 - s as i64 - 1;
        acc = &acc + &LaurentPolynomial::monomial(c * rational_pow(&ratio, e), e);
    }
    Ok(acc)
}

/// X^j |_{-w} (1 - R^n) = X^j (1 - (n X + 1)^{w-j}), extended linearly.
/// Exponents must satisfy -1 <= j <= w or the image leaves the ring.
pub fn unipotent_slash_difference(p: &LaurentPolynomial, w: i64, n: i64) -> Result<LaurentPolynomial> {
    if let (Some(low), Some(high)) = (p.lowest_exponent(), p.degree()) {
        if low < -1 || high > w {
            return Err(Error::Domain(format!(
                "exponent range [{low}, {high}] outside [-1, {w}] for the weight-{} action",
                -w
            )));
        }
    }
    let mut acc = LaurentPolynomial::zero();
    for (j, c) in p.terms() {
        // (nX + 1)^{w-j}
        let mut pw = LaurentPolynomial::monomial(Rational::one(), 0);
        let lin = LaurentPolynomial::new(0, vec![Rational::one(), rat(n)]);
        for _ in 0..(w - j) {
            pw = &pw * &lin;
        }
        let bracket = &LaurentPolynomial::monomial(Rational::one(), 0) - &pw;
        acc = &acc + &(&LaurentPolynomial::monomial(c.clone(), j) * &bracket);
    }
    Ok(acc)
}

/// Weight-w slash action on rational functions:
/// (f |_w gamma)(X) = (c X + d)^{-w} f((aX + b)/(cX + d)).
pub fn slash(f: &RationalFunction, weight: i64, gamma: &Mat2Z) -> RationalFunction {
    let composed = f.compose_mobius(&gamma.a, &gamma.b, &gamma.c, &gamma.d);
    let lin = RationalFunction::from_polynomial(Polynomial::new(vec![
        Rational::from_integer(gamma.d.clone()),
        Rational::from_integer(gamma.c.clone()),
    ]));
    &lin.powi(-weight) * &composed
}

/// p(X) = epsilon X^{k-2} p(1/X), exactly.
pub fn self_inversive_check(p: &LaurentPolynomial, k: i64, epsilon: i8) -> bool {
    let reflected = p.reflect(k - 2);
    match epsilon {
        1 => p == &reflected,
        -1 => p == &(-&reflected),
        _ => false,
    }
}

/// Root report for a labeled family member (the CLI surface).
pub fn family_root_report(
    family: &str,
    k: u32,
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    p: &LaurentPolynomial,
    tolerance: f64,
    precision: usize,
) -> Result<RootReport> {
    report::report_with_id(
        report::PolynomialId {
            family: family.into(),
            k,
            chi: chi.label().into(),
            psi: psi.label().into(),
            chi_conductor: chi.signed_conductor(),
            psi_conductor: psi.signed_conductor(),
        },
        p,
        tolerance,
        precision,
    )
}

/// Formal prefactor -chi(-1) G(chi) G(psi) (2 pi i)^k/(k-1) of the
/// Bernoulli form of the period polynomial.
#[derive(Clone, Debug)]
pub struct PeriodPrefactor {
    pub rational: Rational,
    pub two_pi_i_power: u32,
    pub gauss_factors: Vec<DirichletCharacter>,
    pub sign_char_values: (i8, i8),
}

impl PeriodPrefactor {
    pub fn to_complex(&self, ctx: &mut NumCtx) -> ComplexHP {
        let p = ctx.prec();
        let mut acc = ComplexHP::from_real(crate::numerics::rational_to_float(&self.rational, p), p);
        let two_pi = ctx.pi().mul(&BigFloat::from_i8(2, p), p, RM);
        let two_pi_i = ComplexHP::from_real(two_pi, p).mul_i();
        acc = acc.mul(&two_pi_i.powi(self.two_pi_i_power as i64));
        for chi in &self.gauss_factors {
            acc = acc.mul(&crate::dirichlet::gauss_sum(chi, p).numeric);
        }
        acc
    }
}

/// One exact coefficient of the L-sum form:
/// rational * pi^pi_power * i^i_power * G(chi)^{g_chi} * G(psi)^{g_psi}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCoeff {
    pub rational: Rational,
    pub pi_power: u32,
    pub i_power: u8,
    pub g_chi: bool,
    pub g_psi: bool,
}

impl ExactCoeff {
    fn normalized(mut self) -> Self {
        self.i_power %= 4;
        if self.i_power >= 2 {
            self.rational = -self.rational;
            self.i_power -= 2;
        }
        if self.rational.is_zero() {
            self.i_power = 0;
            self.pi_power = 0;
            self.g_chi = false;
            self.g_psi = false;
        }
        self
    }

    pub fn to_complex(&self, chi: &DirichletCharacter, psi: &DirichletCharacter, ctx: &mut NumCtx) -> ComplexHP {
        let p = ctx.prec();
        let mut acc = ComplexHP::from_real(crate::numerics::rational_to_float(&self.rational, p), p);
        if self.pi_power > 0 {
            let pi = ctx.pi();
            let pi_c = ComplexHP::from_real(pi, p);
            acc = acc.mul(&pi_c.powi(self.pi_power as i64));
        }
        for _ in 0..self.i_power {
            acc = acc.mul_i();
        }
        if self.g_chi {
            acc = acc.mul(&crate::dirichlet::gauss_sum(chi, p).numeric);
        }
        if self.g_psi {
            acc = acc.mul(&crate::dirichlet::gauss_sum(psi, p).numeric);
        }
        acc
    }
}

/// Wrong-parity tail term rational * pi * i * L(argument, character) X^exponent,
/// left symbolic with a numeric evaluation hook.
#[derive(Clone, Debug)]
pub struct EpsTerm {
    pub exponent: i64,
    pub rational: Rational,
    pub character: DirichletCharacter,
    pub argument: u32,
}

impl EpsTerm {
    pub fn coefficient_complex(&self, ctx: &mut NumCtx) -> Result<ComplexHP> {
        let p = ctx.prec();
        let l = crate::numerics::l_numeric(self.argument as i64, &self.character, ctx)?;
        let pi = ctx.pi();
        Ok(l.scale(&crate::numerics::rational_to_float(&self.rational, p)).scale(&pi).mul_i())
    }
}

/// Period polynomial of the Eisenstein series attached to (chi, psi).
#[derive(Clone, Debug)]
pub enum RhoHat {
    /// Both characters nonprincipal: prefactor times an exact Laurent
    /// polynomial in X.
    Bernoulli { prefactor: PeriodPrefactor, polynomial: LaurentPolynomial },
    /// A principal character present: exact L-sum coefficients plus the
    /// wrong-parity terms flagged symbolically.
    LSum {
        k: u32,
        chi: DirichletCharacter,
        psi: DirichletCharacter,
        exact: Vec<(i64, ExactCoeff)>,
        eps: Vec<EpsTerm>,
    },
}

impl RhoHat {
    /// Numeric evaluation at a complex point (for cross-checks against the
    /// Eichler-integral route).
    pub fn eval_complex(&self, x: &ComplexHP, ctx: &mut NumCtx) -> Result<ComplexHP> {
        match self {
            RhoHat::Bernoulli { prefactor, polynomial } => {
                let scale = prefactor.to_complex(ctx);
                Ok(crate::numerics::eval_laurent(polynomial, x, ctx.prec()).mul(&scale))
            }
            RhoHat::LSum { chi, psi, exact, eps, .. } => {
                let mut acc = ComplexHP::zero(ctx.prec());
                for (e, c) in exact {
                    let coeff = c.to_complex(chi, psi, ctx);
                    acc = acc.add(&x.powi(*e).mul(&coeff));
                }
                for term in eps {
                    let coeff = term.coefficient_complex(ctx)?;
                    acc = acc.add(&x.powi(term.exponent).mul(&coeff));
                }
                Ok(acc)
            }
        }
    }
}

fn lvalue_product(a: &SymbolicLValue, b: &SymbolicLValue) -> ExactCoeff {
    ExactCoeff {
        rational: &a.rational_part * &b.rational_part,
        pi_power: a.pi_power + b.pi_power,
        i_power: (a.i_power + b.i_power) % 4,
        g_chi: a.gauss_factor.is_some(),
        g_psi: b.gauss_factor.is_some(),
    }
    .normalized()
}

/// Period polynomial of E_k(tau; chi, psi) for primitive real characters of
/// matching parity (chi(-1) psi(-1) = (-1)^k, k >= 3).
///
/// Nonprincipal pairs give the exact Bernoulli form
///   -chi(-1) G(chi) G(psi) (2 pi i)^k/(k-1)
///       sum_s B_{k-s,chi}/((k-s)! L^{k-s}) B_{s,psi}/(s! M^s) X^{s-1};
/// pairs involving a principal character go through the L-sum form, whose
/// wrong-parity terms stay symbolic.
pub fn rho_hat(k: u32, chi: &DirichletCharacter, psi: &DirichletCharacter) -> Result<RhoHat> {
    if k < 3 {
        return Err(Error::Domain(format!("need k >= 3, got {k}")));
    }
    if !chi.is_real() || !psi.is_real() {
        return Err(Error::ComplexCharacter(if chi.is_real() { psi.modulus() } else { chi.modulus() }));
    }
    for c in [chi, psi] {
        if !c.is_primitive() {
            return Err(Error::ImprimitiveCharacter { modulus: c.modulus(), conductor: c.conductor() });
        }
    }
    let parity = chi.parity() as i64 * psi.parity() as i64;
    if parity != if k % 2 == 0 { 1 } else { -1 } {
        return Err(Error::ParityMismatch(k as i64));
    }
    if !chi.is_principal() && !psi.is_principal() {
        let ell = Rational::from_integer(Int::from(chi.modulus()));
        let m_mod = Rational::from_integer(Int::from(psi.modulus()));
        let mut acc = LaurentPolynomial::zero();
        for s in 0..=k {
            let c = b_over_fact(k - s, chi)? * b_over_fact(s, psi)?
                * rational_pow(&ell, -((k - s) as i64))
                * rational_pow(&m_mod, -(s as i64));
            if c.is_zero() {
                continue;
            }
            acc = &acc + &LaurentPolynomial::monomial(c, s as i64 - 1);
        }
        let prefactor = PeriodPrefactor {
            rational: Rational::new(Int::from(-(chi.parity() as i64)), Int::from(k as i64 - 1)),
            two_pi_i_power: k,
            gauss_factors: vec![chi.clone(), psi.clone()],
            sign_char_values: (chi.parity(), psi.parity()),
        };
        return Ok(RhoHat::Bernoulli { prefactor, polynomial: acc });
    }
    // L-sum route: -4 psi(-1)/(k-1) sum_{s: chi(-1)=(-1)^s} L(s,chi) L(k-s,psi) X^{k-s-1}
    // - 2 psi(-1) pi i/(k-1) [eps_chi L(k-1,psi) X^{k-2} - eps_psi L(k-1,chi)]
    let front = Rational::new(Int::from(-4 * psi.parity() as i64), Int::from(k as i64 - 1));
    let mut exact = Vec::new();
    for s in 0..=k {
        let s_parity_ok = (s % 2 == 0) == (chi.parity() == 1);
        if !s_parity_ok {
            continue;
        }
        let l1 = l_value_exact(s as i64, chi)?;
        let l2 = l_value_exact((k - s) as i64, psi)?;
        let mut coeff = lvalue_product(&l1, &l2);
        coeff.rational = &coeff.rational * &front;
        let coeff = coeff.normalized();
        if coeff.rational.is_zero() {
            continue;
        }
        exact.push((k as i64 - s as i64 - 1, coeff));
    }
    let mut eps = Vec::new();
    let eps_rational = Rational::new(Int::from(-2 * psi.parity() as i64), Int::from(k as i64 - 1));
    if chi.is_principal() {
        eps.push(EpsTerm {
            exponent: k as i64 - 2,
            rational: eps_rational.clone(),
            character: psi.clone(),
            argument: k - 1,
        });
    }
    if psi.is_principal() {
        eps.push(EpsTerm { exponent: 0, rational: -eps_rational, character: chi.clone(), argument: k - 1 });
    }
    Ok(RhoHat::LSum { k, chi: chi.clone(), psi: psi.clone(), exact, eps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{characters_mod, kronecker_character};
    use crate::exact::{bernoulli_number, rat_frac};

    #[test]
    fn classic_anchor_k4() {
        let r4 = ramanujan_classic(4).unwrap();
        assert_eq!(r4.coeff(-1), rat_frac(-1, 720));
        assert_eq!(r4.coeff(1), rat_frac(1, 144));
        assert_eq!(r4.coeff(3), rat_frac(-1, 720));
        assert_eq!(r4.terms().count(), 3);
        assert!(ramanujan_classic(2).is_err());
        assert!(ramanujan_classic(7).is_err());
    }

    #[test]
    fn classic_symmetry() {
        // X^{k-2} R_k(1/X) = R_k(X)
        for k in [4u32, 8, 10, 20] {
            let r = ramanujan_classic(k).unwrap();
            assert!(self_inversive_check(&r, k as i64, 1), "k = {k}");
        }
    }

    #[test]
    fn r_gen_reduces_to_classic() {
        let one = DirichletCharacter::trivial();
        for k in (4..=40u32).step_by(2) {
            assert_eq!(r_gen(k, &one, &one).unwrap(), ramanujan_classic(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn s_gen_reduces_to_classic() {
        let one = DirichletCharacter::trivial();
        for k in (4..=20u32).step_by(2) {
            assert_eq!(s_gen(k, &one, &one).unwrap(), ramanujan_classic(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn parity_mismatch_vanishing() {
        // chi(-1) psi(-1) != (-1)^k and psi != 1: identically zero
        let chi4 = kronecker_character(-4).unwrap();
        let chi5 = kronecker_character(5).unwrap();
        let r = r_gen(4, &chi4, &chi5).unwrap(); // odd*even = odd != (+1)^4
        assert!(r.is_zero());
        // psi = 1: residual term (1/2) B_{k-1,chi}/(k-1)! (1 - X^{k-2})
        let one = DirichletCharacter::trivial();
        for k in [4u32, 6, 8] {
            // chi odd, k even: mismatch with psi = 1
            let r = r_gen(k, &chi4, &one).unwrap();
            let b = generalized_bernoulli(k - 1, &chi4).unwrap()
                / Rational::from_integer(factorial(k - 1));
            let expect = &LaurentPolynomial::monomial(&b * rat_frac(1, 2), 0)
                - &LaurentPolynomial::monomial(&b * rat_frac(1, 2), k as i64 - 2);
            assert_eq!(r, expect, "k = {k}");
        }
    }

    #[test]
    fn self_inversive_scan() {
        // epsilon = psi(-1) across real pairs of matching parity
        for m1 in 1..=12u64 {
            for chi in characters_mod(m1, true).unwrap() {
                for m2 in 1..=12u64 {
                    for psi in characters_mod(m2, true).unwrap() {
                        for k in 2..=12u32 {
                            let parity_ok = (chi.parity() * psi.parity() == 1) == (k % 2 == 0);
                            if !parity_ok {
                                continue;
                            }
                            let r = r_gen(k, &chi, &psi).unwrap();
                            if r.is_zero() {
                                continue;
                            }
                            assert!(
                                self_inversive_check(&r, k as i64, psi.parity()),
                                "k={k} chi={chi} psi={psi}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn self_inversive_negative_case() {
        let p = LaurentPolynomial::new(0, vec![rat(-2), rat(1)]); // X - 2
        assert!(!self_inversive_check(&p, 3, 1));
        assert!(self_inversive_check(&ramanujan_classic(8).unwrap(), 8, 1));
    }

    #[test]
    fn slash_relation_s_to_r() {
        // S_k |_{2-k} (1 - R^L) = R_k(L X + 1) as rational functions
        for m1 in 1..=8u64 {
            for chi in characters_mod(m1, true).unwrap() {
                for m2 in 1..=8u64 {
                    for psi in characters_mod(m2, true).unwrap() {
                        for k in 3..=10u32 {
                            let s = s_gen(k, &chi, &psi).unwrap();
                            let r = r_gen(k, &chi, &psi).unwrap();
                            let ell = chi.modulus().max(1) as i64;
                            let gamma = Mat2Z::from_bigints(
                                Int::one(),
                                Int::zero(),
                                Int::from(ell),
                                Int::one(),
                            );
                            let lhs = &s.to_rational_function()
                                - &slash(&s.to_rational_function(), 2 - k as i64, &gamma);
                            let rhs = r
                                .to_rational_function()
                                .compose_mobius(&Int::from(ell), &Int::one(), &Int::zero(), &Int::one());
                            assert_eq!(lhs, rhs, "k={k} chi={chi} psi={psi}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unipotent_slash_difference_anchors() {
        // X^w is annihilated
        let w = 5i64;
        let p = LaurentPolynomial::monomial(Rational::one(), w);
        assert!(unipotent_slash_difference(&p, w, 3).unwrap().is_zero());
        // p = 1, w = 2, n = 2 -> 1 - (2X+1)^2 = -4X^2 - 4X
        let p = LaurentPolynomial::monomial(Rational::one(), 0);
        let out = unipotent_slash_difference(&p, 2, 2).unwrap();
        assert_eq!(out, LaurentPolynomial::new(1, vec![rat(-4), rat(-4)]));
        // n = 0 is the identity
        let p = LaurentPolynomial::new(-1, vec![rat(3), rat(0), rat(7)]);
        assert!(unipotent_slash_difference(&p, 4, 0).unwrap().is_zero());
        // out-of-range exponents rejected
        let p = LaurentPolynomial::monomial(Rational::one(), 6);
        assert!(unipotent_slash_difference(&p, 5, 1).is_err());
        let p = LaurentPolynomial::monomial(Rational::one(), -2);
        assert!(unipotent_slash_difference(&p, 5, 1).is_err());
    }

    #[test]
    fn unipotent_slash_matches_mobius_slash() {
        // the Laurent-level action agrees with the rational-function slash
        let p = LaurentPolynomial::new(-1, vec![rat(2), rat(-1), rat(0), rat(5)]);
        let w = 4i64;
        for n in [-2i64, 1, 3] {
            let lhs = unipotent_slash_difference(&p, w, n).unwrap().to_rational_function();
            let gamma = Mat2Z::from_bigints(Int::one(), Int::zero(), Int::from(n), Int::one());
            let rhs = &p.to_rational_function() - &slash(&p.to_rational_function(), -w, &gamma);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn rho_hat_bernoulli_vs_lsum_routes() {
        // the L-sum route collapses to the Bernoulli form coefficients for
        // nonprincipal pairs; compare numerically at a point
        let chi4 = kronecker_character(-4).unwrap();
        let chi5 = kronecker_character(5).unwrap();
        let mut ctx = NumCtx::new(192);
        for (k, chi, psi) in [(6u32, &chi4, &chi4), (5, &chi4, &chi5), (5, &chi5, &chi4), (4, &chi5, &chi5)] {
            let rh = rho_hat(k, chi, psi).unwrap();
            let RhoHat::Bernoulli { prefactor, polynomial } = &rh else {
                panic!("nonprincipal pair must take the Bernoulli route");
            };
            // hand-build the L-sum form and compare at X = (1+3i)/2
            let x = ComplexHP::from_rationals(&rat_frac(1, 2), &rat_frac(3, 2), 192);
            let direct = rh.eval_complex(&x, &mut ctx).unwrap();
            let mut lsum = ComplexHP::zero(192);
            let front = Rational::new(Int::from(-4 * psi.parity() as i64), Int::from(k as i64 - 1));
            for s in 0..=k {
                if ((s % 2 == 0) == (chi.parity() == 1)) && s >= 1 && s < k {
                    let l1 = l_value_exact(s as i64, chi).unwrap();
                    let l2 = l_value_exact((k - s) as i64, psi).unwrap();
                    let mut c = lvalue_product(&l1, &l2);
                    c.rational = &c.rational * &front;
                    let c = c.normalized();
                    let coeff = c.to_complex(chi, psi, &mut ctx);
                    lsum = lsum.add(&x.powi(k as i64 - s as i64 - 1).mul(&coeff));
                }
            }
            let err = direct.dist(&lsum);
            assert!(
                crate::numerics::log2_abs(&err) < -150.0,
                "k={k} chi={chi} psi={psi}: 2^{}",
                crate::numerics::log2_abs(&err)
            );
            // prefactor sign bookkeeping
            assert_eq!(prefactor.two_pi_i_power, k);
            assert_eq!(polynomial.degree().unwrap() <= k as i64 - 1, true);
        }
    }

    #[test]
    fn rho_hat_rejects_parity_violations() {
        let chi4 = kronecker_character(-4).unwrap();
        assert!(matches!(rho_hat(5, &chi4, &chi4), Err(Error::ParityMismatch(_))));
        let chi5 = kronecker_character(5).unwrap();
        assert!(matches!(rho_hat(4, &chi4, &chi5), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn rho_hat_level_one_matches_bernoulli_sum() {
        // chi = psi = 1, k = 2k': exact part equals
        // -(2 pi i)^{2k'}/(2k'-1) sum_s B_{2s}/(2s)! B_{2k'-2s}/(2k'-2s)! X^{2k'-2s-1},
        // plus the zeta(2k'-1)-flagged terms on X^{2k'-2} and X^0.
        let one = DirichletCharacter::trivial();
        for k in [4u32, 6, 8] {
            let RhoHat::LSum { exact, eps, .. } = rho_hat(k, &one, &one).unwrap() else {
                panic!("principal pair must take the L-sum route");
            };
            // expected exact coefficients
            for (e, c) in &exact {
                let s = k as i64 - 1 - e; // X^{k-s-1}
                assert!(s % 2 == 0 && (0..=k as i64).contains(&s), "stray exponent {e}");
                let s = s as u32;
                let expect = -(bernoulli_number(s) * bernoulli_number(k - s))
                    / Rational::from_integer(factorial(s) * factorial(k - s))
                    / Rational::from_integer(Int::from(k as i64 - 1))
                    * rational_pow(&rat(2), k as i64);
                // i^k folded: k even, i^k = (-1)^{k/2}
                let expect = if (k / 2) % 2 == 1 { -expect } else { expect };
                assert_eq!(c.rational, expect, "k={k} s={s}");
                assert_eq!(c.pi_power, k);
                assert_eq!(c.i_power, 0);
                assert!(!c.g_chi && !c.g_psi, "Gauss factors of the trivial character collapse");
            }
            // zeta eps-terms at X^{k-2} and X^0 with opposite signs
            assert_eq!(eps.len(), 2);
            assert_eq!(eps[0].exponent, k as i64 - 2);
            assert_eq!(eps[1].exponent, 0);
            assert_eq!(eps[0].rational, -eps[1].rational.clone());
            assert_eq!(eps[0].argument, k - 1);
            assert!(eps[0].character.is_principal());
        }
    }
}
