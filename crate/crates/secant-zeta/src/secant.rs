//! Exact rational-function cocycles for the even secant Dirichlet series
//! psi_{2m} and closed-form evaluation of psi_{2m}(sqrt(r))/pi^{2m} in Q.
//!
//! Convention: Phi_C is the rational function with
//!     psi_{2m}(C tau) = (c tau + d)^{1-2m} psi_{2m}(tau) + pi^{2m} Phi_C(tau),
//! so Phi_A = 0 and Phi_B is the f_{2m} of the B-generator functional
//! equation (automorphy factor folded in). The (pi i)^{2m} vs pi^{2m}
//! bookkeeping is reconciled by folding (-1)^m into the rational function.

use crate::error::{Error, Result};
use crate::exact::{
    bernoulli_number, euler_number, factorial, rat, rational_pow, Int, Polynomial, QuadExt, Rational,
    RationalFunction, TruncatedSeries,
};
use crate::modgroup::{stabilizer_in_gamma2, word_decompose, Gen, GroupWord, Mat2Z};
use num::{One, Signed, Zero};

/// Cocycle attached to one matrix: the pair (Phi_C, C).
#[derive(Clone, Debug)]
pub struct CocycleData {
    pub m: u32,
    pub phi: RationalFunction,
    pub matrix: Mat2Z,
}

/// Exact evaluation result: psi_{2m}(sqrt(r)) = value * pi^{2m}.
#[derive(Clone, Debug)]
pub struct ExactSecantValue {
    pub r: Rational,
    pub m: u32,
    pub value: Rational,
    pub witness: GroupWord,
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        Err(Error::Domain("half-weight index m must be positive".into()))
    } else {
        Ok(())
    }
}

/// c_n = 2^{2n-1} B_{2n} E_{2m-2n} / ((2n)! (2m-2n)!).
fn weighted_coefficient(m: u32, n: u32) -> Rational {
    let two_pow = rational_pow(&rat(2), 2 * n as i64 - 1);
    two_pow * bernoulli_number(2 * n) * Rational::from_integer(euler_number(2 * m - 2 * n))
        / Rational::from_integer(factorial(2 * n) * factorial(2 * m - 2 * n))
}

/// Phi for B^mu in closed form, any integer mu:
/// (2 mu tau + 1)^{1-2m} * (-1)^m *
///     sum_{n=0}^{m} c_n tau^{2m-2n} (1 - (2 mu tau + 1)^{2n-1}).
pub fn generator_cocycle_pow(m: u32, mu: &Int) -> Result<RationalFunction> {
    check_m(m)?;
    if mu.is_zero() {
        return Ok(RationalFunction::zero());
    }
    // 2 mu tau + 1
    let lin = RationalFunction::from_polynomial(Polynomial::new(vec![
        Rational::one(),
        Rational::from_integer(mu * 2),
    ]));
    let mut sum = RationalFunction::zero();
    for n in 0..=m {
        let c = weighted_coefficient(m, n);
        if c.is_zero() {
            continue;
        }
        let tau_pow = RationalFunction::from_polynomial(Polynomial::monomial(c, (2 * m - 2 * n) as usize));
        let bracket = &RationalFunction::one() - &lin.powi(2 * n as i64 - 1);
        sum = &sum + &(&tau_pow * &bracket);
    }
    if m % 2 == 1 {
        sum = -&sum;
    }
    Ok(&sum * &lin.powi(1 - 2 * m as i64))
}

/// Phi_B, the cocycle of the lower-triangular generator.
pub fn generator_cocycle_b(m: u32) -> Result<RationalFunction> {
    generator_cocycle_pow(m, &Int::one())
}

/// [z^{2m-1}] sin(tau z) / (sin(z) sin((2 tau + 1) z)) by exact truncated
/// series division over Q[tau]; has the shape q_{2m}(tau)/(2 tau + 1).
pub fn trig_bracket_series(m: u32) -> Result<RationalFunction> {
    check_m(m)?;
    let order = 2 * m as usize;
    let tau = Polynomial::var();
    let two_tau_one = Polynomial::new(vec![rat(1), rat(2)]);
    // sin(tau z)/z = tau * [sin(tau z)/(tau z)]
    let numer = TruncatedSeries::sin_over_arg(&tau, order);
    let unit = &TruncatedSeries::sin_over_arg(&Polynomial::one(), order)
        * &TruncatedSeries::sin_over_arg(&two_tau_one, order);
    let quotient = &(&numer * &unit.invert()?) * &TruncatedSeries::from_fn(order, |j| {
        if j == 0 {
            tau.clone()
        } else {
            Polynomial::zero()
        }
    });
    // sin(tau z)/(sin z sin((2tau+1)z)) = quotient / (z (2tau+1)); take [z^{2m-1}]
    let p = quotient.coefficient(order).clone();
    Ok(RationalFunction::new(p, two_tau_one))
}

/// The bracket normalized to the cocycle convention: Phi_B again, via the
/// residue-theorem series route instead of the Bernoulli-Euler closed sum.
pub fn trig_rhs_series(m: u32) -> Result<RationalFunction> {
    let bracket = trig_bracket_series(m)?;
    let lin = RationalFunction::from_polynomial(Polynomial::new(vec![rat(1), rat(2)]));
    Ok(&bracket * &lin.powi(1 - 2 * m as i64))
}

/// Symmetric form: [z^{2m-1}] sin(tau z)/(sin((1-tau) z) sin((1+tau) z)),
/// of the shape p_{2m}(tau)/(1 - tau^2).
pub fn trig_rhs_series_symmetric(m: u32) -> Result<RationalFunction> {
    check_m(m)?;
    let order = 2 * m as usize;
    let tau = Polynomial::var();
    let a = Polynomial::new(vec![rat(1), rat(-1)]); // 1 - tau
    let b = Polynomial::new(vec![rat(1), rat(1)]); // 1 + tau
    let numer = TruncatedSeries::sin_over_arg(&tau, order);
    let unit = &TruncatedSeries::sin_over_arg(&a, order) * &TruncatedSeries::sin_over_arg(&b, order);
    let quotient = &(&numer * &unit.invert()?) * &TruncatedSeries::from_fn(order, |j| {
        if j == 0 {
            tau.clone()
        } else {
            Polynomial::zero()
        }
    });
    let p = quotient.coefficient(order).clone();
    Ok(RationalFunction::new(p, &a * &b))
}

/// h_{2m}(tau) = sum_{n=0}^{m} B_{2n} E_{2m-2n}/((2n)! (2m-2n)!) (2 tau)^{2n-1},
/// the (pi i)^{2m} prefactor being the caller's. Odd in tau; equals
/// (-1)^m (1/2) [z^{2m-1}] cot(tau z) sec(z).
pub fn h_function(m: u32) -> Result<RationalFunction> {
    check_m(m)?;
    let mut sum = RationalFunction::zero();
    let two_tau = RationalFunction::from_polynomial(Polynomial::new(vec![rat(0), rat(2)]));
    for n in 0..=m {
        let c = bernoulli_number(2 * n) * Rational::from_integer(euler_number(2 * m - 2 * n))
            / Rational::from_integer(factorial(2 * n) * factorial(2 * m - 2 * n));
        if c.is_zero() {
            continue;
        }
        sum = &sum + &two_tau.powi(2 * n as i64 - 1).scale(&c);
    }
    Ok(sum)
}

/// Cocycle of a product from the cocycles of the factors:
/// Phi_{C1 C2}(tau) = Phi_{C1}(C2 tau)
///                  + ((c12 tau + d12)/(c2 tau + d2))^{1-2m} Phi_{C2}(tau).
pub fn compose_cocycles(left: &CocycleData, right: &CocycleData) -> CocycleData {
    assert_eq!(left.m, right.m);
    let m = left.m;
    let prod = left.matrix.mul(&right.matrix);
    let phi1_at = left.phi.compose_mobius(&right.matrix.a, &right.matrix.b, &right.matrix.c, &right.matrix.d);
    let num = Polynomial::new(vec![
        Rational::from_integer(prod.d.clone()),
        Rational::from_integer(prod.c.clone()),
    ]);
    let den = Polynomial::new(vec![
        Rational::from_integer(right.matrix.d.clone()),
        Rational::from_integer(right.matrix.c.clone()),
    ]);
    let j = RationalFunction::new(num, den).powi(1 - 2 * m as i64);
    CocycleData { m, phi: &phi1_at + &(&j * &right.phi), matrix: prod }
}

/// Phi_{C^{-1}}(tau) = -(c' tau + d')^{1-2m} Phi_C(C^{-1} tau),
/// with (c', d') the bottom row of C^{-1}.
pub fn inverse_cocycle(data: &CocycleData) -> Result<CocycleData> {
    let inv = data.matrix.inverse()?;
    let phi_at = data.phi.compose_mobius(&inv.a, &inv.b, &inv.c, &inv.d);
    let lin = RationalFunction::from_polynomial(Polynomial::new(vec![
        Rational::from_integer(inv.d.clone()),
        Rational::from_integer(inv.c.clone()),
    ]));
    let phi = -&(&lin.powi(1 - 2 * data.m as i64) * &phi_at);
    Ok(CocycleData { m: data.m, phi, matrix: inv })
}

/// Cocycle for a reduced word over {A, B}. The word's sign is the caller's
/// business (slashing by -I in odd weight 1-2m flips a sign the evaluator
/// below sidesteps by using the sign-free matrix).
pub fn cocycle_for_word(m: u32, word: &GroupWord) -> Result<CocycleData> {
    check_m(m)?;
    let mut acc = CocycleData { m, phi: RationalFunction::zero(), matrix: Mat2Z::identity() };
    for (g, e) in word.letters.iter().rev() {
        let letter = match g {
            Gen::A => CocycleData { m, phi: RationalFunction::zero(), matrix: Mat2Z::gen_a_pow(e) },
            Gen::B => CocycleData { m, phi: generator_cocycle_pow(m, e)?, matrix: Mat2Z::gen_b_pow(e) },
        };
        acc = compose_cocycles(&letter, &acc);
    }
    Ok(acc)
}

/// psi_{2m}(sqrt(r)) = q pi^{2m} for positive rational r with irrational
/// square root: fix sqrt(r) by the squared Pell matrix, decompose it as a
/// word (flipping to -C when the sign is -1; both act identically), and
/// solve psi = j psi + pi^{2m} Phi at tau = sqrt(r) in the quadratic field.
pub fn eval_sqrt(m: u32, r: &Rational) -> Result<ExactSecantValue> {
    check_m(m)?;
    let tau = QuadExt::sqrt_of_rational(r)?;
    let c = stabilizer_in_gamma2(r)?;
    let word = word_decompose(&c)?;
    let data = cocycle_for_word(m, &word)?;
    // data.matrix = sign * c; both fix sqrt(r)
    debug_assert!(!data.matrix.c.is_zero());
    let field = tau.field();
    let lift = |n: &Int| QuadExt::rational_in(field, Rational::from_integer(n.clone()));
    let base = &(&lift(&data.matrix.c) * &tau) + &lift(&data.matrix.d);
    let j = base.powi(1 - 2 * m as i64)?;
    let one = QuadExt::rational_in(field, Rational::one());
    let denom = &one - &j;
    // c != 0 makes j irrational, so 1 - j cannot vanish
    assert!(!denom.is_zero(), "degenerate automorphy factor");
    let phi_val = data.phi.eval_quadext(&tau)?;
    let q = &phi_val / &denom;
    if !q.sqrt_coefficient().is_zero() {
        return Err(Error::IrrationalResidue);
    }
    Ok(ExactSecantValue { r: r.clone(), m, value: q.rational_part().clone(), witness: word })
}

/// Closed-form family value: q with psi_{2m}(tau_0) = q pi^{2m} at
/// tau_0 = kappa + sqrt(kappa (1/mu + kappa)), via
/// q = -(-1)^m sum_n [2^{2n-1}/mu^{2m-2n}] c_n r_n/r_m with
/// r_0 = 1/(1-alpha), r_n = sum_j C(2n-1, 2j) alpha^j, alpha = 1/(mu kappa) + 1.
pub fn fixed_point_value(m: u32, kappa: i64, mu: i64) -> Result<Rational> {
    check_m(m)?;
    if kappa == 0 || mu == 0 {
        return Err(Error::Domain("kappa and mu must be nonzero".into()));
    }
    // degenerate tau_0 (rational or complex) rejected
    let s = rat(kappa) / rat(mu) + rat(kappa) * rat(kappa);
    if !s.is_positive() {
        return Err(Error::Domain(format!("kappa(1/mu + kappa) = {s} is not positive")));
    }
    if crate::exact::rational_is_square(&s)? {
        return Err(Error::RationalSquareRoot(s.to_string()));
    }
    let alpha = rat(1) / (rat(mu) * rat(kappa)) + rat(1);
    let r_n = |n: u32| -> Rational {
        if n == 0 {
            (rat(1) - &alpha).recip()
        } else {
            let mut acc = Rational::zero();
            for j in 0..n {
                acc += Rational::from_integer(crate::exact::binomial(2 * n - 1, 2 * j)) * rational_pow(&alpha, j as i64);
            }
            acc
        }
    };
    let rm = r_n(m);
    assert!(!rm.is_zero(), "r_m vanishes only at non-integer mu*kappa");
    let mut sum = Rational::zero();
    for n in 0..=m {
        let c = weighted_coefficient(m, n);
        if c.is_zero() {
            continue;
        }
        let mu_pow = rational_pow(&rat(mu), 2 * (m - n) as i64);
        sum += c / mu_pow * r_n(n) / &rm;
    }
    if m % 2 == 0 {
        sum = -sum;
    }
    Ok(sum)
}
