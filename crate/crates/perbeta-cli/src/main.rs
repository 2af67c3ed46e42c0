//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input parse/validation error, 2 verification
//! mismatch, 3 witness search failure, 4 internal verification failure
//! (a bug), 5 size budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;

use perbeta::{
    densify, eval_rep, find_witness_with, rep_of_unit_fraction, Base, BaseSpec, Budgets, DotScope,
    Error, FieldElement, IntPoly, LaurentIntPoly, Method, PeriodicRep,
};

const EXIT_PARSE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_SEARCH: u8 = 3;
const EXIT_INTERNAL: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(
    name = "perbeta",
    about = "Periodic digit representations in algebraic bases",
    long_about = "Finds certified identities β^i − β^j = n·p(β) for an algebraic base β \
                  given by its minimal polynomial, and turns them into eventually periodic \
                  digit strings for 1/n and arbitrary elements of Q(β).\n\n\
                  Coefficient lists are comma-separated integers in ASCENDING order of \
                  exponent: \"3,2,3\" means 3 + 2x + 3x². Pass --descending to flip.\n\n\
                  The PERBETA_BUDGET environment variable (a positive integer) overrides \
                  every internal search cap."
)]
struct Cli {
    /// Interpret coefficient lists in descending order of exponent.
    #[arg(long, global = true)]
    descending: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    Reachable,
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Find a certified witness β^i − β^j ∈ nZ[β].
    Witness {
        /// Minimal polynomial coefficients, ascending ("3,2,3" = 3+2x+3x²).
        #[arg(long)]
        minpoly: String,
        /// Modulus n ≥ 2.
        #[arg(long)]
        n: String,
        /// Search strategy.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Output format.
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Compute an eventually periodic digit string for a field element.
    Represent {
        #[arg(long)]
        minpoly: String,
        /// Rational "p/q" or comma-separated rational coordinates of
        /// q₀ + q₁β + … + q_(d−1)β^(d−1).
        #[arg(long)]
        target: String,
        /// Densification factor (> 1): forces deg p < factor·(i−j).
        #[arg(long, default_value_t = 2.0)]
        factor: f64,
        /// Run the best-effort digit reduction toward this magnitude bound.
        #[arg(long)]
        normalize_bound: Option<String>,
    },
    /// Evaluate a stored digit string exactly and compare.
    Verify {
        #[arg(long)]
        minpoly: String,
        /// JSON file holding {"L", "preperiod", "period"}.
        #[arg(long)]
        rep_file: PathBuf,
        /// Expected value: rational or comma-separated rational coordinates.
        #[arg(long)]
        expected: String,
    },
    /// Export the witness graph G(m, n) as DOT.
    Graph {
        #[arg(long)]
        minpoly: String,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "reachable")]
        scope: ScopeArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report root moduli and the eligibility class of a base.
    CheckBase {
        #[arg(long)]
        minpoly: String,
        /// Tolerance for the numeric unit-circle test.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let budgets = budgets_from_env()?;
    match cli.cmd {
        Cmd::Witness {
            minpoly,
            n,
            method,
            format,
        } => cmd_witness(&minpoly, cli.descending, &n, &method, format, &budgets),
        Cmd::Represent {
            minpoly,
            target,
            factor,
            normalize_bound,
        } => cmd_represent(
            &minpoly,
            cli.descending,
            &target,
            factor,
            normalize_bound.as_deref(),
            &budgets,
        ),
        Cmd::Verify {
            minpoly,
            rep_file,
            expected,
        } => cmd_verify(&minpoly, cli.descending, &rep_file, &expected),
        Cmd::Graph {
            minpoly,
            n,
            scope,
            out,
        } => cmd_graph(&minpoly, cli.descending, &n, scope, out.as_deref()),
        Cmd::CheckBase { minpoly, tolerance } => {
            cmd_check_base(&minpoly, cli.descending, tolerance)
        }
    }
}

fn budgets_from_env() -> std::result::Result<Budgets, Failure> {
    match std::env::var("PERBETA_BUDGET") {
        Ok(s) => {
            let v: u64 = s.trim().parse().map_err(|_| {
                Failure::new(EXIT_PARSE, format!("PERBETA_BUDGET must be an integer, got '{s}'"))
            })?;
            if v == 0 {
                return Err(Failure::new(EXIT_PARSE, "PERBETA_BUDGET must be positive"));
            }
            Ok(Budgets::with_scalar_override(v))
        }
        Err(_) => Ok(Budgets::default()),
    }
}

fn parse_minpoly(s: &str, descending: bool) -> std::result::Result<Base, Failure> {
    let mut poly = IntPoly::from_str(s)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("--minpoly: {e}")))?;
    if descending {
        poly = poly.reverse_input_order(s)?;
    }
    let base =
        BaseSpec::new(poly).map_err(|e| Failure::new(EXIT_PARSE, format!("--minpoly: {e}")))?;
    Ok(Arc::new(base))
}

trait ReverseInput {
    fn reverse_input_order(self, raw: &str) -> std::result::Result<IntPoly, Failure>;
}

impl ReverseInput for IntPoly {
    /// Re-parses the raw list reversed; plain `.reverse()` would drop
    /// explicit leading zeros differently from what the user wrote.
    fn reverse_input_order(self, raw: &str) -> std::result::Result<IntPoly, Failure> {
        let parts: Vec<&str> = raw.split(',').map(|p| p.trim()).collect();
        let flipped = parts
            .into_iter()
            .rev()
            .collect::<Vec<_>>()
            .join(",");
        IntPoly::from_str(&flipped).map_err(|e| Failure::new(EXIT_PARSE, format!("--minpoly: {e}")))
    }
}

fn parse_modulus(s: &str) -> std::result::Result<BigInt, Failure> {
    let n = BigInt::from_str(s.trim())
        .map_err(|_| Failure::new(EXIT_PARSE, format!("--n: bad integer '{s}'")))?;
    if n < BigInt::from(2) {
        return Err(Failure::new(EXIT_PARSE, format!("--n: modulus must be at least 2, got {n}")));
    }
    Ok(n)
}

fn parse_target(s: &str, base: &Base) -> std::result::Result<FieldElement, Failure> {
    let mut coeffs = Vec::new();
    for part in s.split(',') {
        let q = perbeta::parse_rational(part)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("--target: {e}")))?;
        coeffs.push(q);
    }
    if coeffs.len() > base.degree() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!(
                "--target: {} coordinates exceed the field degree {}",
                coeffs.len(),
                base.degree()
            ),
        ));
    }
    Ok(FieldElement::from_coeffs(base.clone(), coeffs))
}

fn search_failure(e: Error) -> Failure {
    let code = match e {
        Error::ParseError(_) => EXIT_PARSE,
        Error::SizeBudgetExceeded(_) => EXIT_BUDGET,
        Error::ValidationFailed(_) => EXIT_INTERNAL,
        _ => EXIT_SEARCH,
    };
    Failure::new(code, e.to_string())
}

fn cmd_witness(
    minpoly: &str,
    descending: bool,
    n: &str,
    method: &str,
    format: OutputFormat,
    budgets: &Budgets,
) -> CmdResult {
    let base = parse_minpoly(minpoly, descending)?;
    let n = parse_modulus(n)?;
    let method = Method::from_str(method)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let w = find_witness_with(&base, &n, method, budgets).map_err(search_failure)?;
    match format {
        OutputFormat::Text => println!("{}", w.display_identity()),
        OutputFormat::Json => println!("{}", w.to_json()),
    }
    Ok(())
}

fn cmd_represent(
    minpoly: &str,
    descending: bool,
    target: &str,
    factor: f64,
    normalize_bound: Option<&str>,
    budgets: &Budgets,
) -> CmdResult {
    let base = parse_minpoly(minpoly, descending)?;
    if !(factor > 1.0) {
        return Err(Failure::new(EXIT_PARSE, "--factor must exceed 1"));
    }
    let x = parse_target(target, &base)?;

    let rep = represent_with_factor(&base, &x, factor, budgets).map_err(search_failure)?;
    let rep = match normalize_bound {
        Some(b) => {
            let bound = BigInt::from_str(b.trim()).map_err(|_| {
                Failure::new(EXIT_PARSE, format!("--normalize-bound: bad integer '{b}'"))
            })?;
            if bound < BigInt::from(1) {
                return Err(Failure::new(EXIT_PARSE, "--normalize-bound must be positive"));
            }
            perbeta::normalize_digits(&rep, &bound)
        }
        None => rep,
    };

    // Exit 4 is the contract for a representation that fails re-evaluation;
    // unreachable in a correct build.
    let value = eval_rep(&rep).map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
    if value != x {
        return Err(Failure::new(
            EXIT_INTERNAL,
            format!("internal verification failed: digits evaluate to {value}, expected {x}"),
        ));
    }

    println!("{}", rep.to_json());
    println!("digits: {rep}");
    println!("max |digit|: {}", rep.max_abs_digit());
    Ok(())
}

/// Like `rep_of_field_element`, with the densification factor and search
/// budgets exposed.
fn represent_with_factor(
    base: &Base,
    x: &FieldElement,
    factor: f64,
    budgets: &Budgets,
) -> perbeta::Result<PeriodicRep> {
    if x.is_zero() {
        return Ok(PeriodicRep::zero(base.clone()));
    }
    let mut n = BigInt::from(1);
    for c in x.coeffs() {
        n = n.lcm(c.denom());
    }
    let z = IntPoly::new(
        x.coeffs()
            .iter()
            .map(|c| c.numer() * (&n / c.denom()))
            .collect(),
    );
    let rep = if n == BigInt::from(1) {
        let digits: Vec<BigInt> = (0..=z.degree()).rev().map(|t| z.coeff(t)).collect();
        PeriodicRep::finite(base.clone(), -(z.degree() as i64), digits)
    } else {
        let w = find_witness_with(base, &n, Method::Auto, budgets)?;
        let dense = densify(&w, factor)?;
        let unit = rep_of_unit_fraction(base, &n, &dense)?;
        perbeta::multiply_finite(&unit, &LaurentIntPoly::from_int_poly(&z))
    };
    Ok(rep)
}

fn cmd_verify(
    minpoly: &str,
    descending: bool,
    rep_file: &std::path::Path,
    expected: &str,
) -> CmdResult {
    let base = parse_minpoly(minpoly, descending)?;
    let raw = std::fs::read_to_string(rep_file)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", rep_file.display())))?;
    let json: serde_json::Value = serde_json::from_str(&raw)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", rep_file.display())))?;
    let rep = PeriodicRep::from_json(base.clone(), &json)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let expected = parse_target(expected, &base)?;
    let value = eval_rep(&rep).map_err(|e| Failure::new(EXIT_SEARCH, e.to_string()))?;
    println!("evaluated: {value}");
    println!("expected:  {expected}");
    if value == expected {
        println!("exact match");
        Ok(())
    } else {
        Err(Failure::new(EXIT_MISMATCH, "values differ"))
    }
}

fn cmd_graph(
    minpoly: &str,
    descending: bool,
    n: &str,
    scope: ScopeArg,
    out: Option<&std::path::Path>,
) -> CmdResult {
    let base = parse_minpoly(minpoly, descending)?;
    let n = parse_modulus(n)?;
    let scope = match scope {
        ScopeArg::Reachable => DotScope::Reachable,
        ScopeArg::Full => DotScope::Full,
    };
    let dot = perbeta::export_dot(&base, &n, scope).map_err(search_failure)?;
    match out {
        Some(path) => std::fs::write(path, dot)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?,
        None => print!("{dot}"),
    }
    Ok(())
}

fn cmd_check_base(minpoly: &str, descending: bool, tolerance: f64) -> CmdResult {
    let mut poly = IntPoly::from_str(minpoly)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("--minpoly: {e}")))?;
    if descending {
        poly = poly.reverse_input_order(minpoly)?;
    }
    let base = perbeta::check_base(poly, tolerance)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    println!("minpoly: {}", base.minpoly());
    println!("degree: {}", base.degree());
    let moduli: Vec<String> = base.root_moduli().iter().map(|r| format!("{r:.12}")).collect();
    println!("root moduli: {}", moduli.join(", "));
    println!(
        "designated root: index {} (modulus {:.6})",
        base.designated_root_index(),
        base.designated_modulus()
    );
    println!("unit-circle conjugate: {}", base.has_unit_circle_conjugate());
    println!(
        "dominant modulus: {}",
        if base.dominant_modulus() { "yes" } else { "no" }
    );
    println!("eligibility: {}", base.eligibility());
    if base.eligibility() == perbeta::Eligibility::UnitFractionsOnly {
        println!(
            "note: unit fractions 1/n still admit periodic digit strings, but a \
             single finite alphabet for all of Q(β) is not guaranteed"
        );
    }
    Ok(())
}
