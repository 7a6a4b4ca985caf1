//! Command-line interface for the `qhom` library.
//!
//! Every subcommand runs one or more exact checks and writes one JSON
//! report per line, either to standard output or to the path given with
//! `--out`. Reports for identical configurations are byte-identical
//! except for their `millis` timing fields.
//!
//! Exit codes:
//!
//! * 0: every check passed and no witnesses were serialized.
//! * 1: at least one check failed; the failing reports carry witnesses.
//! * 2: invalid input or configuration, including malformed field or
//!   family shorthand, inconsistent parameters, and classification
//!   searches refused for exceeding the size ceiling. A diagnostic is
//!   printed to standard error.

use std::fs::File;
use std::io::{self, BufWriter, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qhom::classify::{enumerate_profiles, match_families, BigUint, SearchSpace};
use qhom::families::{
    induced_closed_form_crosscheck, induced_multiplicativity_verdict, make_w22_family_verified_at,
    make_witt_family_verified_at, FamilyOperator, W22Case, W22FamilyParams, WittFamilyParams,
    W22_VERIFY_WINDOW, WITT_VERIFY_WINDOW,
};
use qhom::graded::{AlgebraKind, HomAlgebra};
use qhom::laws::{
    check_hom_jacobi, check_hom_leibniz, check_multiplicative, check_skew, check_subalgebra_ideal,
    Report, Verdict, Window, Witness,
};
use qhom::scalars::{Scalar, ScalarField};

/// Upper bound on witnesses retained by the identity suite, matching the
/// cap used by the law checkers. Failures beyond the cap still count
/// toward the verdict.
const WITNESS_CAP: usize = 16;

#[derive(Parser)]
#[command(
    name = "qhom",
    version,
    about = "Exact checks for q-deformed Witt and W(2,2) Hom-algebras"
)]
struct Cli {
    /// Write reports to this file, one JSON object per line, instead of
    /// standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check skew symmetry, the twisted Jacobi identity and twist
    /// multiplicativity for a built-in algebra on a degree window.
    VerifyAlgebra(VerifyAlgebraArgs),
    /// Build a classified family operator, then check the averaging law
    /// and the subalgebra and ideal properties of its image and kernel.
    CheckOp(FamilyArgs),
    /// Build a classified family operator, induce its bracket and check
    /// the twisted Leibniz law, the closed-form crosscheck and the
    /// multiplicativity verdict.
    Induce(FamilyArgs),
    /// Enumerate every averaging operator profile over a finite value set
    /// on a degree window and match the result against the families.
    Classify(ClassifyArgs),
    /// Run the exact q-number identity suite for one field.
    Identities(IdentitiesArgs),
}

#[derive(Args)]
struct VerifyAlgebraArgs {
    /// Algebra name: "witt" or "w22".
    #[arg(long)]
    algebra: String,
    /// Field shorthand: "rational:<num>[/<den>]", "cyclotomic:<N>" or
    /// "qfunc" for the rational function field.
    #[arg(long, value_parser = parse_field)]
    field: ScalarField,
    /// Twist degree k of the defining endomorphism.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    k: i64,
    /// Window radius: checks run over basis degrees in [-M, M].
    #[arg(long = "M", default_value_t = 5)]
    window: i64,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family shorthand: "witt:<variant>" with variant 1..3, or
    /// "w22:<case>:<variant>" with case "root-of-unity" or "degree-zero"
    /// and variant 1..5.
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    /// Field shorthand: "rational:<num>[/<den>]", "cyclotomic:<N>" or
    /// "qfunc" for the rational function field.
    #[arg(long, value_parser = parse_field)]
    field: ScalarField,
    /// Degree of the operator: it maps degree n to degree n + d.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    d: i64,
    /// Constant coefficient beta, as a scalar literal in the field.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    beta: String,
    /// Point-mass coefficient nu for Witt families.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    nu: String,
    /// Numerator coefficient gamma for the Witt fraction family.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    gamma: String,
    /// Fraction shift mu for the Witt fraction family, 0 or 1.
    #[arg(long, default_value_t = 0)]
    mu: u8,
    /// Point-mass coefficient nu1 for W(2,2) families.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    nu1: String,
    /// Point-mass coefficient nu2 for W(2,2) families.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    nu2: String,
    /// Point-mass coefficient nu3 for W(2,2) families.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    nu3: String,
    /// Point-mass coefficient nu4 for W(2,2) families.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    nu4: String,
    /// Mixing coefficient theta for W(2,2) variant 5.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    theta: String,
    /// Window radius; defaults to the family's own verification radius.
    #[arg(long = "M")]
    window: Option<i64>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Algebra name: "witt" or "w22".
    #[arg(long)]
    algebra: String,
    /// Field shorthand: "rational:<num>[/<den>]", "cyclotomic:<N>" or
    /// "qfunc" for the rational function field.
    #[arg(long, value_parser = parse_field)]
    field: ScalarField,
    /// Degree of the operators being classified.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    d: i64,
    /// Window radius: the averaging law is imposed on degrees in [-M, M].
    #[arg(long = "M", default_value_t = 3)]
    window: i64,
    /// Comma-separated coefficient value set; must contain 0.
    #[arg(long, default_value = "0,1,2", allow_hyphen_values = true)]
    values: String,
    /// Refuse searches whose raw assignment count exceeds this decimal
    /// bound; overrides the QHOM_CLASSIFY_CEILING environment variable.
    #[arg(long)]
    ceiling: Option<String>,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Field shorthand: "rational:<num>[/<den>]", "cyclotomic:<N>" or
    /// "qfunc" for the rational function field.
    #[arg(long, value_parser = parse_field)]
    field: ScalarField,
    /// Indices m and n range over [-range, range].
    #[arg(long, default_value_t = 8)]
    range: i64,
}

/// Parsed form of the `--family` shorthand.
#[derive(Clone)]
struct FamilySpec {
    algebra: AlgebraKind,
    case: Option<W22Case>,
    variant: u8,
}

/// Parses the `--field` shorthand into a scalar field.
fn parse_field(text: &str) -> Result<ScalarField, String> {
    if text == "qfunc" {
        return Ok(ScalarField::rational_function());
    }
    if let Some(rest) = text.strip_prefix("rational:") {
        let (num, den) = match rest.split_once('/') {
            Some((num, den)) => (num, den),
            None => (rest, "1"),
        };
        let num: i64 = num.trim().parse().map_err(|_| bad_field(text))?;
        let den: i64 = den.trim().parse().map_err(|_| bad_field(text))?;
        return ScalarField::rational_ratio(num, den).map_err(|e| e.to_string());
    }
    if let Some(rest) = text.strip_prefix("cyclotomic:") {
        let order: u32 = rest.trim().parse().map_err(|_| bad_field(text))?;
        return ScalarField::cyclotomic(order).map_err(|e| e.to_string());
    }
    Err(bad_field(text))
}

fn bad_field(text: &str) -> String {
    format!(
        "invalid field {text:?}; expected \"rational:<num>[/<den>]\", \"cyclotomic:<N>\" or \"qfunc\""
    )
}

/// Parses the `--family` shorthand into an algebra, an optional case and
/// a variant number.
fn parse_family(text: &str) -> Result<FamilySpec, String> {
    let mut parts = text.split(':');
    let algebra = AlgebraKind::parse(parts.next().unwrap_or("")).map_err(|e| e.to_string())?;
    let (case, variant_text) = match algebra {
        AlgebraKind::Witt => (None, parts.next()),
        AlgebraKind::W22 => {
            let case = W22Case::parse(parts.next().unwrap_or("")).map_err(|e| e.to_string())?;
            (Some(case), parts.next())
        }
    };
    let variant_text = variant_text.ok_or_else(|| bad_family(text))?;
    if parts.next().is_some() {
        return Err(bad_family(text));
    }
    let variant: u8 = variant_text.trim().parse().map_err(|_| bad_family(text))?;
    Ok(FamilySpec {
        algebra,
        case,
        variant,
    })
}

fn bad_family(text: &str) -> String {
    format!(
        "invalid family {text:?}; expected \"witt:<variant>\" or \"w22:<case>:<variant>\" \
         with case \"root-of-unity\" or \"degree-zero\""
    )
}

/// Destination for serialized reports: standard output or a file.
struct Emitter {
    sink: Box<dyn io::Write>,
    any_failed: bool,
}

impl Emitter {
    fn new(out: Option<&PathBuf>) -> io::Result<Self> {
        let sink: Box<dyn io::Write> = match out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Emitter {
            sink,
            any_failed: false,
        })
    }

    /// Writes a law report as one JSON line and records its verdict.
    fn report(&mut self, report: &Report) -> Result<(), CliError> {
        if !report.passed() {
            self.any_failed = true;
        }
        self.line(&serde_json::to_string(report)?)
    }

    /// Writes one already-serialized JSON line.
    fn line(&mut self, line: &str) -> Result<(), CliError> {
        writeln!(self.sink, "{line}")?;
        Ok(())
    }

    fn finish(mut self) -> Result<bool, CliError> {
        self.sink.flush()?;
        Ok(self.any_failed)
    }
}

/// Any error that should abort the run with exit code 2.
enum CliError {
    Lib(qhom::Error),
    Io(io::Error),
    Json(serde_json::Error),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "{e}"),
            CliError::Input(message) => write!(f, "{message}"),
        }
    }
}

impl From<qhom::Error> for CliError {
    fn from(e: qhom::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut emitter = Emitter::new(cli.out.as_ref())?;
    match &cli.command {
        Command::VerifyAlgebra(args) => run_verify_algebra(args, &mut emitter)?,
        Command::CheckOp(args) => run_check_op(args, &mut emitter)?,
        Command::Induce(args) => run_induce(args, &mut emitter)?,
        Command::Classify(args) => run_classify(args, &mut emitter)?,
        Command::Identities(args) => run_identities(args, &mut emitter)?,
    }
    emitter.finish()
}

fn run_verify_algebra(args: &VerifyAlgebraArgs, emitter: &mut Emitter) -> Result<(), CliError> {
    let algebra = HomAlgebra::by_name(&args.algebra, args.field.clone(), args.k)?;
    let window = Window::new(args.window)?;
    emitter.report(&check_skew(&algebra, &window)?)?;
    emitter.report(&check_hom_jacobi(&algebra, &window)?)?;
    emitter.report(&check_multiplicative(&algebra, &window)?)?;
    Ok(())
}

/// Builds the family operator described by the shared family flags,
/// verifying the averaging law at the requested window.
fn build_family(args: &FamilyArgs) -> Result<(FamilyOperator, Window), CliError> {
    let field = &args.field;
    let default_radius = match args.family.algebra {
        AlgebraKind::Witt => WITT_VERIFY_WINDOW,
        AlgebraKind::W22 => W22_VERIFY_WINDOW,
    };
    let window = Window::new(args.window.unwrap_or(default_radius))?;
    let family = match args.family.algebra {
        AlgebraKind::Witt => {
            let params = WittFamilyParams {
                variant: args.family.variant,
                d: args.d,
                beta: field.parse(&args.beta)?,
                nu: field.parse(&args.nu)?,
                gamma: field.parse(&args.gamma)?,
                mu: args.mu,
            };
            make_witt_family_verified_at(field, params, &window)?
        }
        AlgebraKind::W22 => {
            let case = args
                .family
                .case
                .ok_or_else(|| CliError::Input("W(2,2) family shorthand needs a case".into()))?;
            let params = W22FamilyParams {
                variant: args.family.variant,
                case,
                d: args.d,
                nu1: field.parse(&args.nu1)?,
                nu2: field.parse(&args.nu2)?,
                nu3: field.parse(&args.nu3)?,
                nu4: field.parse(&args.nu4)?,
                gamma: field.parse(&args.gamma)?,
                theta: field.parse(&args.theta)?,
                beta: field.parse(&args.beta)?,
            };
            make_w22_family_verified_at(field, params, &window)?
        }
    };
    Ok((family, window))
}

fn run_check_op(args: &FamilyArgs, emitter: &mut Emitter) -> Result<(), CliError> {
    let (family, window) = build_family(args)?;
    emitter.report(family.verification())?;
    let base = family.base_algebra();
    emitter.report(&check_subalgebra_ideal(&base, family.operator(), &window)?)?;
    Ok(())
}

fn run_induce(args: &FamilyArgs, emitter: &mut Emitter) -> Result<(), CliError> {
    let (family, window) = build_family(args)?;
    let induced = family.induced()?;
    emitter.report(&check_hom_leibniz(&induced, &window)?)?;
    emitter.report(&induced_closed_form_crosscheck(&family, &window)?)?;
    emitter.report(&induced_multiplicativity_verdict(&family, &window)?)?;
    Ok(())
}

fn run_classify(args: &ClassifyArgs, emitter: &mut Emitter) -> Result<(), CliError> {
    let algebra = AlgebraKind::parse(&args.algebra)?;
    let mut values = Vec::new();
    for literal in args.values.split(',') {
        values.push(args.field.parse(literal.trim())?);
    }
    let mut space = SearchSpace::new(algebra, args.field.clone(), args.d, args.window, values)?;
    if let Some(text) = &args.ceiling {
        let ceiling: BigUint = text
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("invalid ceiling {text:?}; expected a decimal integer")))?;
        space.set_ceiling(ceiling);
    }
    let profiles = enumerate_profiles(&space)?;
    let matches = match_families(&space, &profiles)?;
    emitter.line(&serde_json::to_string(&profiles)?)?;
    emitter.line(&serde_json::to_string(&matches)?)?;
    Ok(())
}

fn run_identities(args: &IdentitiesArgs, emitter: &mut Emitter) -> Result<(), CliError> {
    let report = identity_report(&args.field, args.range)?;
    emitter.report(&report)?;
    Ok(())
}

/// Accumulates pass/fail evidence for the identity suite.
struct IdentityLog {
    instances: u64,
    failures: u64,
    witnesses: Vec<Witness>,
}

impl IdentityLog {
    fn new() -> Self {
        IdentityLog {
            instances: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    /// Records one identity instance, storing a witness on mismatch.
    fn check(&mut self, identity: &str, point: String, lhs: &Scalar, rhs: &Scalar) {
        self.instances += 1;
        if lhs == rhs {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(Witness {
                m: identity.to_string(),
                n: Some(point),
                p: None,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    /// Records one boolean claim, storing a witness when it is false.
    fn claim(&mut self, identity: &str, point: String, holds: bool, lhs: String, rhs: String) {
        self.instances += 1;
        if holds {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(Witness {
                m: identity.to_string(),
                n: Some(point),
                p: None,
                lhs,
                rhs,
            });
        }
    }
}

/// Runs the q-number identity suite over `[-range, range]` and returns a
/// single report.
///
/// The suite covers the addition, negation and successor identities for
/// the one-parameter q-numbers, the negation, subtraction and addition
/// identities for the symmetric q-numbers, and the vanishing loci of both
/// kinds, with the degenerate branches at q = 1 and q = -1 checked
/// against their closed forms.
fn identity_report(field: &ScalarField, range: i64) -> Result<Report, CliError> {
    if range < 1 {
        return Err(CliError::Input(format!(
            "identity range must be at least 1, got {range}"
        )));
    }
    let start = Instant::now();
    let mut log = IdentityLog::new();
    let one = field.one();

    for m in -range..=range {
        let brace_m = field.brace_num(m);
        let bracket_m = field.bracket_num(m);

        let lhs = field.q_pow(m).mul(&field.brace_num(-m));
        log.check("brace-negation", format!("m={m}"), &lhs, &brace_m.neg());

        let lhs = field.brace_num(m + 1);
        let rhs = one.add(&field.q_pow(1).mul(&brace_m));
        log.check("brace-successor", format!("m={m}"), &lhs, &rhs);

        let lhs = field.bracket_num(-m);
        log.check("bracket-negation", format!("m={m}"), &lhs, &bracket_m.neg());

        for n in -range..=range {
            let brace_n = field.brace_num(n);
            let bracket_n = field.bracket_num(n);

            let lhs = field.brace_num(m + n);
            let rhs = brace_m.add(&field.q_pow(m).mul(&brace_n));
            log.check("brace-addition", format!("m={m}, n={n}"), &lhs, &rhs);

            let lhs = field
                .q_pow(n)
                .mul(&bracket_m)
                .sub(&field.q_pow(m).mul(&bracket_n));
            let rhs = field.bracket_num(m - n);
            log.check("bracket-subtraction", format!("m={m}, n={n}"), &lhs, &rhs);

            let lhs = field
                .q_pow(-n)
                .mul(&bracket_m)
                .add(&field.q_pow(m).mul(&bracket_n));
            let rhs = field.bracket_num(m + n);
            log.check("bracket-addition", format!("m={m}, n={n}"), &lhs, &rhs);
        }
    }

    for n in -range..=range {
        let brace_n = field.brace_num(n);
        let bracket_n = field.bracket_num(n);

        if field.q_is_one() {
            log.check("brace-limit-branch", format!("n={n}"), &brace_n, &field.from_i64(n));
        } else {
            log.claim(
                "brace-vanishing-locus",
                format!("n={n}"),
                brace_n.is_zero() == field.q_pow_is_one(n),
                format!("brace({n}) = {brace_n}"),
                format!("q^{n} = 1: {}", field.q_pow_is_one(n)),
            );
        }

        if field.q_is_one() {
            log.check("bracket-limit-branch", format!("n={n}"), &bracket_n, &field.from_i64(n));
        } else if field.q_is_neg_one() {
            let sign = if n.rem_euclid(2) == 0 { -1 } else { 1 };
            let rhs = field.from_i64(sign * n);
            log.check("bracket-limit-branch", format!("n={n}"), &bracket_n, &rhs);
        } else {
            log.claim(
                "bracket-vanishing-locus",
                format!("n={n}"),
                bracket_n.is_zero() == field.q_pow_is_one(2 * n),
                format!("bracket({n}) = {bracket_n}"),
                format!("q^{} = 1: {}", 2 * n, field.q_pow_is_one(2 * n)),
            );
        }
    }

    let verdict = if log.failures == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Report {
        check: "q_number_identities".to_string(),
        algebra: "scalars".to_string(),
        field: field.descriptor(),
        window: range,
        verdict,
        instances_checked: log.instances,
        witnesses: log.witnesses,
        millis: start.elapsed().as_millis(),
    })
}
