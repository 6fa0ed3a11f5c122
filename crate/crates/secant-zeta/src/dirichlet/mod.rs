//! Dirichlet characters with exact values, Gauss sums, generalized Bernoulli
//! numbers and exact L-values at integers of matching parity.
//!
//! Real characters carry exact values in {-1, 0, +1}; complex characters
//! store root-of-unity exponents and are evaluated numerically downstream.

mod gauss;
mod lvalues;

pub use gauss::{gauss_sum, GaussExact, GaussSumValue};
pub use lvalues::{generalized_bernoulli, generalized_bernoulli_numeric, l_value_exact, SymbolicLValue};

use crate::error::{Error, Result};
use num::Integer;
use std::fmt;

/// Hard cap for single-character construction; keeps value tables bounded.
pub const MAX_MODULUS: u64 = 100_000;
/// Cap for full enumeration of all characters of one modulus.
pub const MAX_ENUM_MODULUS: u64 = 4096;

/// One character value: zero, or the root of unity e^{2 pi i num/den}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharValue {
    Zero,
    Root { num: u32, den: u32 },
}

impl CharValue {
    pub fn one() -> Self {
        CharValue::Root { num: 0, den: 1 }
    }

    fn root(num: u64, den: u64) -> Self {
        let num = num % den;
        let g = num.gcd(&den);
        if num == 0 {
            return CharValue::Root { num: 0, den: 1 };
        }
        CharValue::Root { num: (num / g) as u32, den: (den / g) as u32 }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    /// Exact value for real entries: 0, +1, -1.
    pub fn as_real(&self) -> Option<i8> {
        match self {
            CharValue::Zero => Some(0),
            CharValue::Root { num: 0, den: 1 } => Some(1),
            CharValue::Root { num: 1, den: 2 } => Some(-1),
            _ => None,
        }
    }

    /// Exponent of the root of unity as (num, den), None for zero.
    pub fn root_exponent(&self) -> Option<(u32, u32)> {
        match self {
            CharValue::Zero => None,
            CharValue::Root { num, den } => Some((*num, *den)),
        }
    }

    pub fn conjugate(&self) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => CharValue::root((*den - *num) as u64, *den as u64),
        }
    }

    pub fn mul(&self, other: &CharValue) -> CharValue {
        match (self, other) {
            (CharValue::Zero, _) | (_, CharValue::Zero) => CharValue::Zero,
            (CharValue::Root { num: n1, den: d1 }, CharValue::Root { num: n2, den: d2 }) => {
                let den = (*d1 as u64).lcm(&(*d2 as u64));
                let num = (*n1 as u64 * (den / *d1 as u64) + *n2 as u64 * (den / *d2 as u64)) % den;
                CharValue::root(num, den)
            }
        }
    }
}

/// A Dirichlet character mod M with its full value table and derived flags.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<CharValue>,
    conductor: u64,
    parity: i8,
    is_principal: bool,
    is_real: bool,
    is_primitive: bool,
    /// Canonical spec string this character answers to, e.g. "k:-4" or "m:8:3".
    label: String,
}

/// A character is its value table; labels are presentation only.
impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.values == other.values
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    fn from_table(modulus: u64, values: Vec<CharValue>, label: String) -> Self {
        debug_assert_eq!(values.len(), modulus.max(1) as usize);
        let conductor = conductor_of(modulus, &values);
        let parity = if modulus <= 2 {
            1
        } else {
            // chi(-1)^2 = chi(1) = 1, so the entry at -1 is a sign
            values[(modulus - 1) as usize].as_real().filter(|v| *v != 0).expect("value at -1 must be a sign")
        };
        let is_real = values.iter().all(|v| v.as_real().is_some());
        DirichletCharacter {
            modulus,
            is_principal: conductor == 1,
            is_primitive: conductor == modulus,
            conductor,
            parity,
            is_real,
            values,
            label,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// chi(-1).
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_principal(&self) -> bool {
        self.is_principal
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn is_primitive(&self) -> bool {
        self.is_primitive
    }

    pub fn is_odd(&self) -> bool {
        self.parity == -1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The value chi(n) as a table entry (n arbitrary, reduced mod M).
    pub fn value(&self, n: i64) -> CharValue {
        if self.modulus <= 1 {
            return CharValue::one();
        }
        let m = self.modulus as i64;
        let idx = n.rem_euclid(m) as usize;
        self.values[idx]
    }

    /// Exact value of a real character: 0 or +-1.
    pub fn value_i8(&self, n: i64) -> Result<i8> {
        self.value(n).as_real().ok_or(Error::ComplexCharacter(self.modulus))
    }

    /// Conductor-and-sign display used by the scan reports, e.g. "35-".
    pub fn signed_conductor(&self) -> String {
        format!("{}{}", self.conductor, if self.parity > 0 { "+" } else { "-" })
    }

    /// Principal character mod 1.
    pub fn trivial() -> Self {
        DirichletCharacter::from_table(1, vec![CharValue::one()], "1".to_string())
    }

    /// Principal character mod m.
    pub fn principal(m: u64) -> Result<Self> {
        if m == 0 || m > MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(m, MAX_MODULUS));
        }
        if m == 1 {
            return Ok(Self::trivial());
        }
        let values = (0..m)
            .map(|n| if n.gcd(&m) == 1 { CharValue::one() } else { CharValue::Zero })
            .collect();
        Ok(DirichletCharacter::from_table(m, values, format!("p:{m}")))
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// Smallest f | M such that the character is trivial on residues = 1 mod f.
fn conductor_of(modulus: u64, values: &[CharValue]) -> u64 {
    if modulus <= 1 {
        return 1;
    }
    let mut divisors: Vec<u64> = (1..=modulus).filter(|f| modulus % f == 0).collect();
    divisors.sort_unstable();
    'outer: for f in divisors {
        let mut a = 1 + f;
        while a < modulus {
            if a.gcd(&modulus) == 1 && values[a as usize] != CharValue::one() {
                continue 'outer;
            }
            a += f;
        }
        return f;
    }
    modulus
}

/// Kronecker symbol (a|n), fully general.
pub fn kronecker_symbol(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out twos of n
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            // (a|2) = +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    // now n odd positive: Jacobi symbol with reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn is_squarefree_small(n: u64) -> Result<bool> {
    let (s, _) = crate::exact::squarefree_part(n)?;
    Ok(s == 1)
}

/// The real primitive character mod |d| attached to a fundamental
/// discriminant d (d = 1 gives the principal character mod 1).
pub fn kronecker_character(d: i64) -> Result<DirichletCharacter> {
    if d == 0 {
        return Err(Error::NotFundamental(0, "zero discriminant".into()));
    }
    if d == 1 {
        return Ok(DirichletCharacter::trivial());
    }
    let abs = d.unsigned_abs();
    if abs > MAX_MODULUS {
        return Err(Error::ModulusOutOfRange(abs, MAX_MODULUS));
    }
    let fundamental = if d.rem_euclid(4) == 1 {
        is_squarefree_small(abs)?
    } else if d % 4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        (r == 2 || r == 3) && is_squarefree_small(m.unsigned_abs())?
    } else {
        false
    };
    if !fundamental {
        let reason = if d.rem_euclid(4) == 1 {
            format!("{d} = 1 mod 4 but not squarefree")
        } else if d % 4 != 0 {
            format!("{} mod 4 is {}, need 0 or 1", d, d.rem_euclid(4))
        } else {
            format!("{d}/4 = {} mod 4 is not 2 or 3, or not squarefree", (d / 4).rem_euclid(4))
        };
        return Err(Error::NotFundamental(d, reason));
    }
    let m = abs;
    let values: Vec<CharValue> = (0..m)
        .map(|n| match kronecker_symbol(d, n as i64) {
            0 => CharValue::Zero,
            1 => CharValue::one(),
            -1 => CharValue::Root { num: 1, den: 2 },
            _ => unreachable!(),
        })
        .collect();
    let chi = DirichletCharacter::from_table(m, values, format!("k:{d}"));
    debug_assert!(chi.is_primitive, "kronecker character of fundamental d is primitive");
    debug_assert_eq!(chi.parity, d.signum() as i8);
    Ok(chi)
}

/// One cyclic component of the unit group mod M. `dlog[r]` is the exponent
/// of this component in the decomposition of the unit r mod prime_power.
struct UnitComponent {
    prime_power: u64,
    order: u64,
    dlog: Vec<u32>,
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn primitive_root_mod_pk(p: u64, k: u32) -> u64 {
    let phi_factors = factor_small(p - 1);
    let mut g = 2u64;
    // smallest primitive root mod p, then fix the lift to p^k if needed
    loop {
        let ok = phi_factors.iter().all(|(q, _)| pow_mod(g, (p - 1) / q, p) != 1);
        if ok {
            break;
        }
        g += 1;
    }
    if k > 1 && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    g
}

fn cyclic_component(prime_power: u64, generator: u64, order: u64) -> UnitComponent {
    let mut dlog = vec![u32::MAX; prime_power as usize];
    let mut x = 1u64;
    for i in 0..order {
        dlog[x as usize] = i as u32;
        x = x * generator % prime_power;
    }
    debug_assert_eq!(x, 1, "generator order mismatch");
    UnitComponent { prime_power, order, dlog }
}

/// Cyclic decomposition of (Z/M)^* with canonical generator choices:
/// factors in ascending prime order; odd p^e uses the smallest primitive
/// root; 2^e (e >= 3) uses -1 (order 2) then 5 (order 2^{e-2}).
fn unit_group(m: u64) -> Vec<UnitComponent> {
    let mut comps = Vec::new();
    for (p, e) in factor_small(m) {
        if p == 2 {
            match e {
                1 => {}
                2 => comps.push(cyclic_component(4, 3, 2)),
                _ => {
                    let pk = 2u64.pow(e);
                    let half = 2u64.pow(e - 2);
                    let mut sign_log = vec![u32::MAX; pk as usize];
                    let mut five_log = vec![u32::MAX; pk as usize];
                    for s in 0..2u64 {
                        let mut x = if s == 0 { 1 } else { pk - 1 };
                        for t in 0..half {
                            sign_log[x as usize] = s as u32;
                            five_log[x as usize] = t as u32;
                            x = x * 5 % pk;
                        }
                    }
                    comps.push(UnitComponent { prime_power: pk, order: 2, dlog: sign_log });
                    comps.push(UnitComponent { prime_power: pk, order: half, dlog: five_log });
                }
            }
        } else {
            let pk = p.pow(e);
            let g = primitive_root_mod_pk(p, e);
            comps.push(cyclic_component(pk, g, pk / p * (p - 1)));
        }
    }
    comps
}

fn phi(m: u64) -> u64 {
    factor_small(m).iter().map(|(p, e)| p.pow(e - 1) * (p - 1)).product::<u64>().max(1)
}

/// The j-th character mod M, indexing exponent vectors lexicographically
/// (most significant component first); j = 0 is the principal character.
pub fn character_mod_index(m: u64, j: u64) -> Result<DirichletCharacter> {
    if m == 0 || m > MAX_MODULUS {
        return Err(Error::ModulusOutOfRange(m, MAX_MODULUS));
    }
    let ph = phi(m);
    if j >= ph {
        return Err(Error::CharacterIndex { modulus: m, index: j, phi: ph });
    }
    if m == 1 {
        return Ok(DirichletCharacter::trivial());
    }
    let comps = unit_group(m);
    // decode j into the exponent vector, most significant component first
    let mut exps = vec![0u64; comps.len()];
    let mut rest = j;
    for (i, comp) in comps.iter().enumerate().rev() {
        exps[i] = rest % comp.order;
        rest /= comp.order;
    }
    let den_total: u64 = comps.iter().fold(1u64, |acc, c| acc.lcm(&c.order));
    let mut values = vec![CharValue::Zero; m as usize];
    for n in 0..m {
        if n.gcd(&m) != 1 {
            continue;
        }
        let mut num = 0u64;
        for (comp, t) in comps.iter().zip(&exps) {
            let x = comp.dlog[(n % comp.prime_power) as usize] as u64;
            debug_assert_ne!(x, u32::MAX as u64);
            num = (num + t * x % comp.order * (den_total / comp.order)) % den_total;
        }
        values[n as usize] = CharValue::root(num, den_total);
    }
    Ok(DirichletCharacter::from_table(m, values, format!("m:{m}:{j}")))
}

/// All phi(M) characters mod M in canonical order (principal first);
/// `real_only` keeps those with values in {-1, 0, +1}.
pub fn characters_mod(m: u64, real_only: bool) -> Result<Vec<DirichletCharacter>> {
    if m == 0 || m > MAX_ENUM_MODULUS {
        return Err(Error::ModulusOutOfRange(m, MAX_ENUM_MODULUS));
    }
    let ph = phi(m);
    let mut out = Vec::new();
    for j in 0..ph {
        let chi = character_mod_index(m, j)?;
        if !real_only || chi.is_real {
            out.push(chi);
        }
    }
    Ok(out)
}

/// Parses the character spec grammar: "1" (principal mod 1), "k:D"
/// (Kronecker character of fundamental discriminant D), "m:M:j" (j-th
/// character mod M in canonical order), "p:M" (principal mod M).
pub fn parse_character_spec(s: &str) -> Result<DirichletCharacter> {
    let s = s.trim();
    if s == "1" {
        return Ok(DirichletCharacter::trivial());
    }
    let mut parts = s.split(':');
    let head = parts.next().unwrap_or("");
    match head {
        "k" => {
            let d: i64 = parts
                .next()
                .ok_or_else(|| Error::Parse("k: needs a discriminant".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad discriminant: {e}")))?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!("trailing fields in {s:?}")));
            }
            kronecker_character(d)
        }
        "m" => {
            let m: u64 = parts
                .next()
                .ok_or_else(|| Error::Parse("m: needs a modulus".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad modulus: {e}")))?;
            let j: u64 = parts
                .next()
                .ok_or_else(|| Error::Parse("m:M: needs an index".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad index: {e}")))?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!("trailing fields in {s:?}")));
            }
            character_mod_index(m, j)
        }
        "p" => {
            let m: u64 = parts
                .next()
                .ok_or_else(|| Error::Parse("p: needs a modulus".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad modulus: {e}")))?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!("trailing fields in {s:?}")));
            }
            DirichletCharacter::principal(m)
        }
        _ => Err(Error::Parse(format!("unknown character spec {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};

    #[test]
    fn kronecker_symbol_tables() {
        // chi_-4: 1, 0, -1, 0 cyclically
        let expect = [0, 1, 0, -1];
        for n in 0..40i64 {
            assert_eq!(kronecker_symbol(-4, n), expect[(n % 4) as usize], "n = {n}");
        }
        // (5|.) is the Legendre symbol mod 5
        let expect5 = [0, 1, -1, -1, 1];
        for n in 0..40i64 {
            assert_eq!(kronecker_symbol(5, n), expect5[(n % 5) as usize], "n = {n}");
        }
    }

    #[test]
    fn kronecker_character_anchors() {
        let chi = kronecker_character(-4).unwrap();
        assert_eq!(chi.modulus(), 4);
        assert!(chi.is_primitive() && chi.is_real() && chi.is_odd());
        assert_eq!(
            (1..=4).map(|n| chi.value_i8(n).unwrap()).collect::<Vec<_>>(),
            vec![1, 0, -1, 0]
        );
        let one = kronecker_character(1).unwrap();
        assert!(one.is_principal() && one.modulus() == 1);
        let chi5 = kronecker_character(5).unwrap();
        assert_eq!(chi5.parity(), 1);
        assert_eq!(chi5.value_i8(2).unwrap(), -1);
        // non-fundamental inputs rejected with the failing congruence named
        for bad in [16, -27, 32, 25, 10] {
            assert!(kronecker_character(bad).is_err(), "d = {bad}");
        }
        for good in [-3, -8, 8, 12, -35, 13] {
            assert!(kronecker_character(good).is_ok(), "d = {good}");
        }
    }

    #[test]
    fn enumeration_anchors() {
        let all = characters_mod(1, false).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_principal());

        let mod4 = characters_mod(4, false).unwrap();
        assert_eq!(mod4.len(), 2);
        assert!(mod4[0].is_principal());
        assert_eq!(mod4[1], kronecker_character(-4).unwrap());

        let real8 = characters_mod(8, true).unwrap();
        assert_eq!(real8.len(), 4);
        assert!(real8.iter().all(|c| c.is_real()));

        // mod 5 is cyclic of order 4: two real characters, two complex
        let real5 = characters_mod(5, true).unwrap();
        assert_eq!(real5.len(), 2);
        let all5 = characters_mod(5, false).unwrap();
        assert_eq!(all5.len(), 4);

        // 2-adic structure: mod 16 has 8 characters, 4 of them real
        let all16 = characters_mod(16, false).unwrap();
        assert_eq!(all16.len(), 8);
        assert_eq!(all16.iter().filter(|c| c.is_real()).count(), 4);
    }

    #[test]
    fn multiplicativity_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for m in [1u64, 4, 5, 8, 12, 16, 35, 40, 72] {
            for chi in characters_mod(m, false).unwrap() {
                for _ in 0..1250 {
                    let a = rng.random_range(0..10_000i64);
                    let b = rng.random_range(0..10_000i64);
                    assert_eq!(chi.value(a * b), chi.value(a).mul(&chi.value(b)), "m={m} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn zero_exactly_off_units() {
        for m in [4u64, 12, 35] {
            for chi in characters_mod(m, false).unwrap() {
                for n in 0..(2 * m as i64) {
                    let expect_zero = (n.rem_euclid(m as i64) as u64).gcd(&m) != 1;
                    assert_eq!(chi.value(n).is_zero(), expect_zero);
                }
            }
        }
    }

    #[test]
    fn conductor_and_primitivity() {
        // principal mod 12 has conductor 1
        let p12 = DirichletCharacter::principal(12).unwrap();
        assert_eq!(p12.conductor(), 1);
        assert!(!p12.is_primitive());
        // chi_-4 induced to mod 12 appears among the mod-12 characters
        let mod12 = characters_mod(12, true).unwrap();
        let induced: Vec<_> = mod12.iter().filter(|c| c.conductor() == 4).collect();
        assert_eq!(induced.len(), 1);
        assert!(!induced[0].is_primitive());
        // conductor-35 odd real character exists mod 35
        let mod35 = characters_mod(35, true).unwrap();
        let c35: Vec<_> = mod35.iter().filter(|c| c.conductor() == 35 && c.is_odd()).collect();
        assert_eq!(c35.len(), 1);
        assert_eq!(c35[0].signed_conductor(), "35-");
        // and it is the Kronecker character of -35
        let k35 = kronecker_character(-35).unwrap();
        assert_eq!(c35[0], &k35.clone());
    }

    #[test]
    fn parity_flag_matches_table() {
        for m in [3u64, 4, 5, 7, 8, 9, 16, 21, 35, 40] {
            for chi in characters_mod(m, false).unwrap() {
                assert_eq!(chi.value(-1).as_real(), Some(chi.parity()), "m = {m}");
            }
        }
    }

    #[test]
    fn spec_grammar() {
        assert!(parse_character_spec("1").unwrap().is_principal());
        assert_eq!(parse_character_spec("k:-4").unwrap(), kronecker_character(-4).unwrap());
        assert_eq!(parse_character_spec("p:6").unwrap(), DirichletCharacter::principal(6).unwrap());
        let c = parse_character_spec("m:8:3").unwrap();
        assert_eq!(c.modulus(), 8);
        for bad in ["", "q:4", "k:", "m:8", "m:8:99", "k:7", "p:0", "m:0:0", "k:x", "m:8:3:1"] {
            assert!(parse_character_spec(bad).is_err(), "{bad:?}");
        }
    }
}
