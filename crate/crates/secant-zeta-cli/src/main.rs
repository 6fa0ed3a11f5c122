//! Command-line front end: exact secant-series evaluation, cocycles,
//! period polynomials, root reports, conjecture scans, verification suites
//! and exact constants, all as machine-readable JSON.
//!
//! Exit codes: 0 success, 1 verification failure or numeric
//! non-convergence, 2 usage error.

use clap::{Parser, Subcommand};
use secant_zeta_cli::config::RunConfig;
use secant_zeta::dirichlet::{parse_character_spec, DirichletCharacter};
use secant_zeta::exact::{LaurentPolynomial, PiMultiple, Rational};
use secant_zeta::modgroup::GroupWord;
use secant_zeta::numerics::{default_suites, verify_identity, IdentityId};
use secant_zeta::period::{scan_conjecture, ScanConfig, ScanFamily};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

#[derive(Parser)]
#[command(name = "secant-zeta", version, about = "Secant Dirichlet series, period polynomials and unimodularity scans")]
struct Cli {
    /// Seed for generated test data (verify-suite sample points only; every
    /// core algorithm is deterministic)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print the resolved run configuration as JSON and exit
    #[arg(long, global = true, default_value_t = false)]
    dump_config: bool,

    #[command(subcommand)]
    command: Command,
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    if let Some(exp) = s.strip_prefix("2^") {
        let e: i32 = exp.parse().map_err(|e| format!("bad exponent in {s:?}: {e}"))?;
        return Ok(2f64.powi(e));
    }
    s.parse::<f64>().map_err(|e| format!("bad tolerance {s:?}: {e}"))
}

#[derive(Subcommand)]
enum Command {
    /// Exact psi_{2m}(sqrt(r)) = q pi^{2m} with q rational
    EvalSqrt {
        #[arg(long)]
        m: u32,
        /// positive rational, e.g. 2 or 5/3
        #[arg(long)]
        r: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form family value psi_{2m}(kappa + sqrt(kappa(1/mu + kappa)))
    Family {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        kappa: i64,
        #[arg(long)]
        mu: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rational-function cocycle of a word in the generators A, B
    Cocycle {
        #[arg(long)]
        m: u32,
        /// e.g. "A^1 B^-1 A^1"
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact coefficients of a period polynomial family member
    Polynomial {
        /// R, S or classic
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Root report of a period polynomial family member
    Roots {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        psi: Option<String>,
        #[arg(long, default_value_t = 128)]
        precision: usize,
        /// on-circle tolerance, e.g. 2^-32 or 1e-9
        #[arg(long, default_value = "2^-32", value_parser = parse_tolerance)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjecture scan over real characters and valid-parity k
    Scan {
        /// R-both-nonprincipal, R-chi-1, R-1-psi or S-diagonal
        #[arg(long)]
        family: String,
        #[arg(long)]
        kmax: u32,
        #[arg(long)]
        modmax: u64,
        #[arg(long, default_value = "2^-32", value_parser = parse_tolerance)]
        tolerance: f64,
        #[arg(long, default_value_t = 128)]
        precision: usize,
        /// worker threads (0 = available parallelism)
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric identity-verification suites
    Verify {
        /// "all" or one identity id (e.g. functional_equation)
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 128)]
        precision: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact constants: Bernoulli, Euler, generalized Bernoulli numbers
    Constants {
        /// bernoulli, euler or genbernoulli
        #[arg(long)]
        what: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn writer(out: &Option<PathBuf>) -> std::io::Result<Box<dyn Write + Send>> {
    match out {
        None => Ok(Box::new(std::io::stdout())),
        Some(path) => Ok(Box::new(std::fs::File::create(path)?)),
    }
}

fn emit<T: Serialize>(out: &Option<PathBuf>, value: &T) -> std::io::Result<()> {
    let mut w = writer(out)?;
    writeln!(w, "{}", serde_json::to_string(value).expect("serializable"))
}

#[derive(Serialize)]
struct EvalSqrtOutput {
    m: u32,
    r: String,
    rational: String,
    pretty: String,
    witness_word: String,
}

#[derive(Serialize)]
struct FamilyOutput {
    m: u32,
    kappa: i64,
    mu: i64,
    rational: String,
    pretty: String,
    tau0: String,
}

#[derive(Serialize)]
struct CocycleOutput {
    m: u32,
    word: String,
    matrix: [[String; 2]; 2],
    phi: String,
}

#[derive(Serialize)]
struct CoefficientEntry {
    exponent: i64,
    value: String,
}

#[derive(Serialize)]
struct PolynomialOutput {
    family: String,
    k: u32,
    chi: String,
    psi: String,
    coefficients: Vec<CoefficientEntry>,
}

#[derive(Serialize)]
struct ConstantOutput {
    what: String,
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    chi: Option<String>,
    value: String,
}

fn parse_rational(s: &str) -> Result<Rational, secant_zeta::Error> {
    s.trim().parse::<Rational>().map_err(|e| secant_zeta::Error::Parse(format!("bad rational {s:?}: {e}")))
}

fn character_or_trivial(spec: &Option<String>) -> Result<DirichletCharacter, secant_zeta::Error> {
    match spec {
        None => Ok(DirichletCharacter::trivial()),
        Some(s) => parse_character_spec(s),
    }
}

fn polynomial_for(
    family: &str,
    k: u32,
    chi: &Option<String>,
    psi: &Option<String>,
) -> Result<(LaurentPolynomial, DirichletCharacter, DirichletCharacter), secant_zeta::Error> {
    let chi = character_or_trivial(chi)?;
    let psi = character_or_trivial(psi)?;
    let p = match family {
        "R" => secant_zeta::period::r_gen(k, &chi, &psi)?,
        "S" => secant_zeta::period::s_gen(k, &chi, &psi)?,
        "classic" => secant_zeta::period::ramanujan_classic(k)?,
        other => return Err(secant_zeta::Error::Parse(format!("unknown polynomial family {other:?} (use R, S or classic)"))),
    };
    Ok((p, chi, psi))
}

fn pretty_pi(q: &Rational, power: u32) -> String {
    PiMultiple::new(q.clone(), power).to_string()
}

fn run(cli: &Cli) -> Result<u8, Box<dyn std::error::Error>> {
    match &cli.command {
        Command::EvalSqrt { m, r, out } => {
            let r_parsed = parse_rational(r)?;
            let value = secant_zeta::secant::eval_sqrt(*m, &r_parsed)?;
            emit(
                out,
                &EvalSqrtOutput {
                    m: *m,
                    r: r_parsed.to_string(),
                    rational: value.value.to_string(),
                    pretty: pretty_pi(&value.value, 2 * m),
                    witness_word: value.witness.to_string(),
                },
            )?;
            Ok(0)
        }
        Command::Family { m, kappa, mu, out } => {
            let q = secant_zeta::secant::fixed_point_value(*m, *kappa, *mu)?;
            let s = Rational::new((*kappa).into(), (*mu).into())
                + Rational::from_integer((*kappa).into()) * Rational::from_integer((*kappa).into());
            emit(
                out,
                &FamilyOutput {
                    m: *m,
                    kappa: *kappa,
                    mu: *mu,
                    rational: q.to_string(),
                    pretty: pretty_pi(&q, 2 * m),
                    tau0: format!("{kappa} + sqrt({s})"),
                },
            )?;
            Ok(0)
        }
        Command::Cocycle { m, word, out } => {
            let w: GroupWord = word.parse()?;
            let data = secant_zeta::secant::cocycle_for_word(*m, &w)?;
            emit(
                out,
                &CocycleOutput {
                    m: *m,
                    word: w.to_string(),
                    matrix: [
                        [data.matrix.a.to_string(), data.matrix.b.to_string()],
                        [data.matrix.c.to_string(), data.matrix.d.to_string()],
                    ],
                    phi: data.phi.to_string(),
                },
            )?;
            Ok(0)
        }
        Command::Polynomial { family, k, chi, psi, out } => {
            let (p, chi, psi) = polynomial_for(family, *k, chi, psi)?;
            let coefficients = p
                .terms()
                .map(|(e, c)| CoefficientEntry { exponent: e, value: c.to_string() })
                .collect();
            emit(
                out,
                &PolynomialOutput {
                    family: family.clone(),
                    k: *k,
                    chi: chi.label().to_string(),
                    psi: psi.label().to_string(),
                    coefficients,
                },
            )?;
            Ok(0)
        }
        Command::Roots { family, k, chi, psi, precision, tolerance, out } => {
            let (p, chi, psi) = polynomial_for(family, *k, chi, psi)?;
            if p.is_zero() {
                return Err(Box::new(secant_zeta::Error::Domain(
                    "polynomial is identically zero (parity mismatch)".into(),
                )));
            }
            let report =
                secant_zeta::period::family_root_report(family, *k, &chi, &psi, &p, *tolerance, *precision)?;
            emit(out, &report)?;
            Ok(0)
        }
        Command::Scan { family, kmax, modmax, tolerance, precision, workers, out } => {
            let cfg = ScanConfig {
                family: ScanFamily::parse(family)?,
                k_max: *kmax,
                modulus_max: *modmax,
                tolerance: *tolerance,
                precision: *precision,
                workers: if *workers == 0 {
                    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
                } else {
                    *workers
                },
            };
            let sink_writer = Mutex::new(writer(out)?);
            let summary = scan_conjecture(&cfg, &|report| {
                let mut w = sink_writer.lock().unwrap();
                writeln!(w, "{}", serde_json::to_string(report).expect("serializable")).expect("sink write");
            })?;
            // summary goes to stdout even when the report stream is a file
            println!("{}", serde_json::to_string(&summary)?);
            Ok(0)
        }
        Command::Verify { suite, precision, out } => {
            let id = if suite == "all" { None } else { Some(IdentityId::parse(suite)?) };
            let params = default_suites(id, cli.seed);
            if params.is_empty() {
                return Err(Box::new(secant_zeta::Error::UnknownIdentity(suite.clone())));
            }
            let mut w = writer(out)?;
            let mut all_pass = true;
            for p in &params {
                let report = verify_identity(p, *precision)?;
                all_pass &= report.pass;
                writeln!(w, "{}", serde_json::to_string(&report)?)?;
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Constants { what, n, chi, out } => {
            let value = match what.as_str() {
                "bernoulli" => secant_zeta::exact::bernoulli_number(*n).to_string(),
                "euler" => secant_zeta::exact::euler_number(*n).to_string(),
                "genbernoulli" => {
                    let chi = character_or_trivial(chi)?;
                    secant_zeta::dirichlet::generalized_bernoulli(*n, &chi)?.to_string()
                }
                other => {
                    return Err(Box::new(secant_zeta::Error::Parse(format!(
                        "unknown constant kind {other:?} (use bernoulli, euler or genbernoulli)"
                    ))))
                }
            };
            emit(out, &ConstantOutput { what: what.clone(), n: *n, chi: chi.clone(), value })?;
            Ok(0)
        }
    }
}

/// Resolves parsed arguments into the recordable run configuration.
fn resolve_config(cli: &Cli) -> RunConfig {
    let base = |command: &str| RunConfig {
        command: command.to_string(),
        m: None,
        k: None,
        kmax: None,
        modmax: None,
        r: None,
        kappa: None,
        mu: None,
        word: None,
        family: None,
        chi: None,
        psi: None,
        suite: None,
        what: None,
        n: None,
        precision: 128,
        tolerance: 2f64.powi(-32),
        workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        seed: cli.seed,
        out: None,
    };
    let out_str = |o: &Option<PathBuf>| o.as_ref().map(|p| p.display().to_string());
    match &cli.command {
        Command::EvalSqrt { m, r, out } => {
            let mut c = base("eval-sqrt");
            c.m = Some(*m);
            c.r = Some(r.clone());
            c.out = out_str(out);
            c
        }
        Command::Family { m, kappa, mu, out } => {
            let mut c = base("family");
            c.m = Some(*m);
            c.kappa = Some(*kappa);
            c.mu = Some(*mu);
            c.out = out_str(out);
            c
        }
        Command::Cocycle { m, word, out } => {
            let mut c = base("cocycle");
            c.m = Some(*m);
            c.word = Some(word.clone());
            c.out = out_str(out);
            c
        }
        Command::Polynomial { family, k, chi, psi, out } => {
            let mut c = base("polynomial");
            c.family = Some(family.clone());
            c.k = Some(*k);
            c.chi = chi.clone();
            c.psi = psi.clone();
            c.out = out_str(out);
            c
        }
        Command::Roots { family, k, chi, psi, precision, tolerance, out } => {
            let mut c = base("roots");
            c.family = Some(family.clone());
            c.k = Some(*k);
            c.chi = chi.clone();
            c.psi = psi.clone();
            c.precision = *precision;
            c.tolerance = *tolerance;
            c.out = out_str(out);
            c
        }
        Command::Scan { family, kmax, modmax, tolerance, precision, workers, out } => {
            let mut c = base("scan");
            c.family = Some(family.clone());
            c.kmax = Some(*kmax);
            c.modmax = Some(*modmax);
            c.tolerance = *tolerance;
            c.precision = *precision;
            if *workers > 0 {
                c.workers = *workers;
            }
            c.out = out_str(out);
            c
        }
        Command::Verify { suite, precision, out } => {
            let mut c = base("verify");
            c.suite = Some(suite.clone());
            c.precision = *precision;
            c.out = out_str(out);
            c
        }
        Command::Constants { what, n, chi, out } => {
            let mut c = base("constants");
            c.what = Some(what.clone());
            c.n = Some(*n);
            c.chi = chi.clone();
            c.out = out_str(out);
            c
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.dump_config {
        let cfg = resolve_config(&cli);
        println!("{}", serde_json::to_string(&cfg).expect("serializable"));
        return ExitCode::SUCCESS;
    }
    match run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_grammar() {
        assert_eq!(parse_tolerance("2^-32").unwrap(), 2f64.powi(-32));
        assert_eq!(parse_tolerance("1e-9").unwrap(), 1e-9);
        assert!(parse_tolerance("2^x").is_err());
    }

    #[test]
    fn cli_parses_spec_examples() {
        for argv in [
            vec!["secant-zeta", "eval-sqrt", "--m", "1", "--r", "2"],
            vec!["secant-zeta", "family", "--m", "1", "--kappa", "2", "--mu", "1"],
            vec!["secant-zeta", "cocycle", "--m", "1", "--word", "A^1 B^-1 A^1"],
            vec!["secant-zeta", "polynomial", "--family", "R", "--k", "7", "--chi", "1", "--psi", "k:-35"],
            vec!["secant-zeta", "roots", "--family", "classic", "--k", "10", "--precision", "96"],
            vec!["secant-zeta", "scan", "--family", "S-diagonal", "--kmax", "8", "--modmax", "8"],
            vec!["secant-zeta", "verify", "--suite", "functional_equation", "--precision", "192"],
            vec!["secant-zeta", "constants", "--what", "euler", "--n", "0"],
        ] {
            Cli::try_parse_from(&argv).unwrap_or_else(|e| panic!("{argv:?}: {e}"));
        }
        assert!(Cli::try_parse_from(["secant-zeta", "no-such-command"]).is_err());
    }
}
