use super::{gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::{factorial, rat, Int, PiMultiple, Rational, TruncatedSeries};
use crate::exact::{is_perfect_square, Polynomial};
use crate::numerics::{ComplexHP, NumCtx, RM};
use astro_float::BigFloat;
use num::{One, Zero};

/// Generalized Bernoulli number B_{n,chi} for a real character, exactly:
/// sum_n B_{n,chi} x^n/n! = sum_{a=1}^{L} chi(a) x e^{ax}/(e^{Lx} - 1).
pub fn generalized_bernoulli(n: u32, chi: &DirichletCharacter) -> Result<Rational> {
    if !chi.is_real() {
        return Err(Error::ComplexCharacter(chi.modulus()));
    }
    let ell = chi.modulus().max(1);
    let order = n as usize;
    // x e^{ax}/(e^{Lx} - 1) = e^{ax} / (L u(Lx)), u(y) = (e^y - 1)/y
    let mut numer = TruncatedSeries::zero(order);
    for a in 1..=ell {
        let v = chi.value_i8(a as i64)?;
        if v == 0 {
            continue;
        }
        let sign = rat(v as i64);
        let eax = TruncatedSeries::from_fn(order, |j| {
            let aj = Rational::from_integer(Int::from(a).pow(j as u32));
            Polynomial::constant(&sign * aj / Rational::from_integer(factorial(j as u32)))
        });
        numer = &numer + &eax;
    }
    let u = TruncatedSeries::from_fn(order, |j| {
        Polynomial::constant(Rational::new(Int::from(ell).pow(j as u32), factorial(j as u32 + 1)))
    });
    let series = &numer * &u.invert()?;
    let coeff = series.coefficient(order).coeff(0);
    Ok(coeff * Rational::from_integer(factorial(n)) / Rational::from_integer(Int::from(ell)))
}

/// Numeric variant of the same generating function for complex characters.
/// Flagged non-exact by construction: the result is a complex float.
pub fn generalized_bernoulli_numeric(n: u32, chi: &DirichletCharacter, ctx: &mut NumCtx) -> ComplexHP {
    let ell = chi.modulus().max(1);
    let order = n as usize;
    let u = TruncatedSeries::from_fn(order, |j| {
        Polynomial::constant(Rational::new(Int::from(ell).pow(j as u32), factorial(j as u32 + 1)))
    });
    let inv_u = u.invert().expect("unit series");
    let mut acc = ComplexHP::zero(ctx.prec());
    for a in 1..=ell {
        let v = chi.value(a as i64);
        if v.is_zero() {
            continue;
        }
        // coefficient of x^n in e^{ax} * u^{-1}
        let mut coeff = Rational::zero();
        for j in 0..=order {
            let aj = Rational::new(Int::from(a).pow(j as u32), factorial(j as u32));
            coeff += aj * inv_u.coefficient(order - j).coeff(0);
        }
        let scale = crate::numerics::rational_to_float(&coeff, ctx.prec());
        acc = acc.add(&crate::numerics::char_value_complex(&v, ctx).scale(&scale));
    }
    let norm = crate::numerics::rational_to_float(
        &(Rational::from_integer(factorial(n)) / Rational::from_integer(Int::from(ell))),
        ctx.prec(),
    );
    acc.scale(&norm)
}

/// L(n, chi) held symbolically as
/// rational_part * pi^pi_power * i^i_power * G(gauss_factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicLValue {
    pub rational_part: Rational,
    pub pi_power: u32,
    pub i_power: u8,
    pub gauss_factor: Option<DirichletCharacter>,
    /// provenance: this value is L(argument, character)
    pub character: DirichletCharacter,
    pub argument: i64,
}

impl SymbolicLValue {
    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero()
    }

    /// Normalizes i^k: folds i^2 = -1 into the rational part, leaving
    /// i_power in {0, 1}.
    fn reduce(mut self) -> Self {
        self.i_power %= 4;
        if self.i_power >= 2 {
            self.rational_part = -self.rational_part;
            self.i_power -= 2;
        }
        if self.rational_part.is_zero() {
            self.i_power = 0;
            self.gauss_factor = None;
            self.pi_power = 0;
        }
        self
    }

    /// Collapses to an exact pi-multiple when the Gauss factor reduces to a
    /// rational (conductor a perfect square) and no stray i survives.
    pub fn as_pi_multiple(&self) -> Option<PiMultiple> {
        let mut coeff = self.rational_part.clone();
        let mut ipow = self.i_power as u32;
        if let Some(chi) = &self.gauss_factor {
            let m = chi.modulus();
            if !is_perfect_square(m) {
                return None;
            }
            let root = Rational::from_integer(Int::from(m.isqrt()));
            coeff *= root;
            if chi.is_odd() {
                ipow += 1;
            }
        }
        match ipow % 4 {
            0 => Some(PiMultiple::new(coeff, self.pi_power)),
            2 => Some(PiMultiple::new(-coeff, self.pi_power)),
            _ if coeff.is_zero() => Some(PiMultiple::new(coeff, self.pi_power)),
            _ => None,
        }
    }

    pub fn to_complex(&self, ctx: &mut NumCtx) -> ComplexHP {
        let p = ctx.prec();
        let mut acc = ComplexHP::from_real(crate::numerics::rational_to_float(&self.rational_part, p), p);
        if self.pi_power > 0 {
            let pi = ctx.pi();
            let mut pw = BigFloat::from_i8(1, p);
            for _ in 0..self.pi_power {
                pw = pw.mul(&pi, p, RM);
            }
            acc = acc.scale(&pw);
        }
        for _ in 0..self.i_power % 4 {
            acc = acc.mul_i();
        }
        if let Some(chi) = &self.gauss_factor {
            let g = gauss_sum(chi, p);
            acc = acc.mul(&g.numeric);
        }
        acc
    }
}

/// Exact Dirichlet L-values at integers.
///
/// Positive n (with chi primitive and chi(-1) = (-1)^n):
///   L(n, chi) = (-1)^{n-1} (G(chi)/2) (2 pi i / L)^n B_{n,chi}/n!.
/// Nonpositive n = 1 - m: L(1-m, chi) = -B_{m,chi}/m, pure rational; this is
/// zero at mismatched parity except L(0, 1) = -1/2.
pub fn l_value_exact(n: i64, chi: &DirichletCharacter) -> Result<SymbolicLValue> {
    if !chi.is_real() {
        return Err(Error::ComplexCharacter(chi.modulus()));
    }
    if n >= 1 {
        if !chi.is_primitive() {
            return Err(Error::ImprimitiveCharacter { modulus: chi.modulus(), conductor: chi.conductor() });
        }
        let parity_ok = (n % 2 == 0) == (chi.parity() == 1);
        if !parity_ok {
            return Err(Error::WrongParityLValue { argument: n });
        }
        let ell = chi.modulus().max(1);
        let b = generalized_bernoulli(n as u32, chi)?;
        let sign = if n % 2 == 1 { Rational::one() } else { -Rational::one() };
        let rational_part = sign * Rational::new(Int::from(2).pow(n as u32 - 1), Int::one()) * b
            / Rational::from_integer(Int::from(ell).pow(n as u32) * factorial(n as u32));
        // G of the trivial character is exactly 1; fold it away
        let gauss_factor = if chi.modulus() <= 1 { None } else { Some(chi.clone()) };
        Ok(SymbolicLValue {
            rational_part,
            pi_power: n as u32,
            i_power: (n % 4) as u8,
            gauss_factor,
            character: chi.clone(),
            argument: n,
        }
        .reduce())
    } else {
        let m = (1 - n) as u32;
        let b = generalized_bernoulli(m, chi)?;
        let value = -b / Rational::from_integer(Int::from(m));
        Ok(SymbolicLValue {
            rational_part: value,
            pi_power: 0,
            i_power: 0,
            gauss_factor: None,
            character: chi.clone(),
            argument: n,
        }
        .reduce())
    }
}
