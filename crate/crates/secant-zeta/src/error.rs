use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant: {1}")]
    NotFundamental(i64, String),

    #[error("modulus {0} out of supported range (1..={1})")]
    ModulusOutOfRange(u64, u64),

    #[error("character index {index} out of range for modulus {modulus} (phi = {phi})")]
    CharacterIndex { modulus: u64, index: u64, phi: u64 },

    #[error("operation requires a real character, got a complex one mod {0}")]
    ComplexCharacter(u64),

    #[error("operation requires a primitive character, got conductor {conductor} < modulus {modulus}")]
    ImprimitiveCharacter { modulus: u64, conductor: u64 },

    #[error("parity mismatch: chi(-1)*psi(-1) != (-1)^k for k = {0}")]
    ParityMismatch(i64),

    #[error("L({argument}, chi) has no exact closed form here: chi(-1) != (-1)^{argument}")]
    WrongParityLValue { argument: i64 },

    #[error("{0} is a perfect square")]
    PerfectSquare(u64),

    #[error("Pell parameter must be a nonsquare integer >= 2, got {0}")]
    PellDomain(u64),

    #[error("matrix has determinant {0}, expected 1")]
    DeterminantNotOne(num::BigInt),

    #[error("matrix is not congruent to the identity mod 2")]
    NotInGamma2,

    #[error("Moebius image has a pole: c*x + d = 0")]
    MobiusPole,

    #[error("sqrt({0}) is rational; the exact evaluator applies only to quadratic irrationals")]
    RationalSquareRoot(String),

    #[error("cannot mix quadratic field elements with d = {0} and d = {1}")]
    FieldMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("integer too large to factor here (limit {limit}): {value}")]
    FactorLimit { value: String, limit: u64 },

    #[error("index out of domain: {0}")]
    Domain(String),

    #[error("irrational component failed to cancel in an exact evaluation; this is a bug")]
    IrrationalResidue,

    #[error("root finding did not converge within the precision cap ({0} bits)")]
    NonConvergence(usize),

    #[error("series point out of domain: {0}")]
    NumericDomain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
