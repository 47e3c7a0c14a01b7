//! Command-line front end: argument parsing, the theorem pipeline, text and
//! JSON reports, and the sequence cache.

pub mod cache;
pub mod report;
pub mod theorem;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use dyck_core::catalan::catalan_form;
use dyck_core::elimination::{eliminate_peak_valley, eliminate_run_length};
use dyck_core::guess::{guess_algebraic_equation, guess_linear_recurrence};
use dyck_core::oracle::{count_restricted, MAX_ENUMERATION};
use dyck_core::symbolic::{build_peak_valley_system, build_run_length_system};
use dyck_core::{dp, Error, FitConfig, IntSet, RestrictionSpec, Sequence};

use cache::SequenceCache;
use report::{CatalanJson, EquationJson, Provenance, RecurrenceJson, ReportJson, SystemJson, TheoremReport};
use theorem::{theorem, TheoremFailure, MIN_TERMS};

/// Parse a set expression such as `1,4` or `2r+3`; `-` is the empty set.
pub fn parse_set_expr(text: &str) -> Result<IntSet, String> {
    text.parse().map_err(|e: dyck_core::ParseSetError| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "dyck", version, about = "Count restricted Dyck paths and find their equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a(0), ..., a(N) from the dynamic program
    Seq(SeqArgs),
    /// Count by brute-force enumeration
    Oracle(OracleArgs),
    /// Guess the algebraic equation of the generating function
    GuessAlgeq(GuessArgs),
    /// Guess a linear recurrence with polynomial coefficients
    GuessRec(GuessArgs),
    /// Full report: sequence, equation, recurrence, initial conditions
    Theorem(TheoremArgs),
    /// Print the peak/valley equation system
    SysAb(AbArgs),
    /// Print the run-length equation system
    SysCd(CdArgs),
    /// Eliminate the peak/valley system to one equation
    EliminateAb(EliminateAbArgs),
    /// Eliminate the run-length system to one equation
    EliminateCd(EliminateCdArgs),
    /// Peak/valley generating function in terms of the Catalan series C
    CatalanForm(AbArgs),
    /// Re-check a JSON theorem report
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Forbidden peak heights
    #[arg(short = 'A', value_parser = parse_set_expr, default_value = "-")]
    a: IntSet,
    /// Forbidden valley heights
    #[arg(short = 'B', value_parser = parse_set_expr, default_value = "-")]
    b: IntSet,
    /// Forbidden ascending run lengths
    #[arg(short = 'C', value_parser = parse_set_expr, default_value = "-")]
    c: IntSet,
    /// Forbidden descending run lengths
    #[arg(short = 'D', value_parser = parse_set_expr, default_value = "-")]
    d: IntSet,
}

impl SpecArgs {
    fn spec(&self) -> RestrictionSpec {
        RestrictionSpec::new(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }
}

#[derive(Args, Debug, Clone)]
struct AbArgs {
    /// Forbidden peak heights
    #[arg(short = 'A', value_parser = parse_set_expr, default_value = "-")]
    a: IntSet,
    /// Forbidden valley heights
    #[arg(short = 'B', value_parser = parse_set_expr, default_value = "-")]
    b: IntSet,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct CdArgs {
    /// Forbidden ascending run lengths
    #[arg(short = 'C', value_parser = parse_set_expr, default_value = "-")]
    c: IntSet,
    /// Forbidden descending run lengths
    #[arg(short = 'D', value_parser = parse_set_expr, default_value = "-")]
    d: IntSet,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Largest semi-length; terms a(0) through a(N) are used
    #[arg(short = 'N', default_value_t = 60)]
    n: usize,
    /// Directory for cached sequences
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Recompute cache hits and fail if they differ
    #[arg(long, requires = "cache")]
    verify_cache: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct FitArgs {
    #[arg(long, default_value_t = 12)]
    max_deg_x: usize,
    #[arg(long, default_value_t = 12)]
    max_deg_y: usize,
    #[arg(long, default_value_t = 12)]
    max_order: usize,
    #[arg(long, default_value_t = 6)]
    max_coeff_deg: usize,
    /// Extra equations each fit must satisfy
    #[arg(long, default_value_t = 10)]
    guard: usize,
}

impl FitArgs {
    fn config(&self) -> FitConfig {
        FitConfig {
            max_x_degree: self.max_deg_x,
            max_y_degree: self.max_deg_y,
            max_order: self.max_order,
            max_coeff_degree: self.max_coeff_deg,
            guard: self.guard,
        }
    }
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Largest semi-length to enumerate
    #[arg(short = 'N', default_value_t = 10, value_parser = clap::value_parser!(u64).range(0..=MAX_ENUMERATION as u64))]
    n: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GuessArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    fit: FitArgs,
}

#[derive(Args, Debug)]
struct TheoremArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    fit: FitArgs,
}

#[derive(Args, Debug)]
struct EliminateAbArgs {
    #[command(flatten)]
    sets: AbArgs,
    /// Least number of terms to check the result against
    #[arg(short = 'N', default_value_t = 60)]
    n: usize,
}

#[derive(Args, Debug)]
struct EliminateCdArgs {
    #[command(flatten)]
    sets: CdArgs,
    /// Least number of terms to check the result against
    #[arg(short = 'N', default_value_t = 60)]
    n: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// JSON report written by `theorem --json`
    report: PathBuf,
}

enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// The computation ran but produced no result; exit code 1.
    Reported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonPositiveSet { .. } => Failure::Usage(e.to_string()),
            e => Failure::Reported(e.to_string()),
        }
    }
}

impl From<TheoremFailure> for Failure {
    fn from(e: TheoremFailure) -> Self {
        match e {
            TheoremFailure::Core(e) => e.into(),
            TheoremFailure::TooFewTerms(_) => Failure::Usage(e.to_string()),
            e => Failure::Reported(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Parse `args` (program name first), run the command, and return the exit
/// code. Output is written only on success, errors only on failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Reported(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Seq(a) => seq_cmd(&a),
        Command::Oracle(a) => oracle_cmd(&a),
        Command::GuessAlgeq(a) => guess_algeq_cmd(&a),
        Command::GuessRec(a) => guess_rec_cmd(&a),
        Command::Theorem(a) => theorem_cmd(&a),
        Command::SysAb(a) => {
            let sys = build_peak_valley_system(&a.a, &a.b)?;
            system_out(&sys, &RestrictionSpec::peaks_valleys(a.a.clone(), a.b.clone()), a.json)
        }
        Command::SysCd(a) => {
            let sys = build_run_length_system(&a.c, &a.d)?;
            system_out(&sys, &RestrictionSpec::runs(a.c.clone(), a.d.clone()), a.json)
        }
        Command::EliminateAb(a) => {
            let spec = RestrictionSpec::peaks_valleys(a.sets.a.clone(), a.sets.b.clone());
            spec.validate()?;
            let r = eliminate_peak_valley(&a.sets.a, &a.sets.b, a.n + 1)?;
            eliminate_out(&spec, r, a.sets.json)
        }
        Command::EliminateCd(a) => {
            let spec = RestrictionSpec::runs(a.sets.c.clone(), a.sets.d.clone());
            spec.validate()?;
            let r = eliminate_run_length(&a.sets.c, &a.sets.d, a.n + 1)?;
            eliminate_out(&spec, r, a.sets.json)
        }
        Command::CatalanForm(a) => catalan_cmd(&a),
        Command::Verify(a) => verify_cmd(&a),
    }
}

fn load_sequence(spec: &RestrictionSpec, src: &SourceArgs) -> Result<Sequence, Failure> {
    spec.validate()?;
    match &src.cache {
        Some(dir) => {
            let cache = SequenceCache::new(dir).map_err(|e| Failure::Reported(format!("cache directory: {e}")))?;
            cache.sequence(spec, src.n, src.verify_cache).map_err(Failure::Reported)
        }
        None => Ok(dp::sequence(spec, src.n)?),
    }
}

fn seq_cmd(a: &SeqArgs) -> Outcome {
    let spec = a.spec.spec();
    let seq = load_sequence(&spec, &a.source)?;
    if a.source.json {
        return Ok(ReportJson::new(&spec).with_sequence(&seq).to_json());
    }
    Ok(seq.to_string())
}

fn oracle_cmd(a: &OracleArgs) -> Outcome {
    let spec = a.spec.spec();
    spec.validate()?;
    let terms = (0..=a.n as usize).map(|n| count_restricted(&spec, n)).collect::<Result<Vec<_>, _>>()?;
    let seq = Sequence::new(terms);
    if a.json {
        return Ok(ReportJson::new(&spec).with_sequence(&seq).to_json());
    }
    Ok(seq.to_string())
}

fn guess_algeq_cmd(a: &GuessArgs) -> Outcome {
    let spec = a.spec.spec();
    let seq = load_sequence(&spec, &a.source)?;
    let eq = guess_algebraic_equation(&seq, &a.fit.config())?
        .ok_or_else(|| Failure::Reported("no equation found at configured degrees".into()))?;
    if a.source.json {
        let mut r = ReportJson::new(&spec).with_sequence(&seq);
        r.equation = Some(EquationJson::from_poly(&eq));
        r.verified_to = Some(seq.len() - 1);
        r.provenance = Some(Provenance::Guessed);
        return Ok(r.to_json());
    }
    Ok(format!("{eq} = 0"))
}

fn guess_rec_cmd(a: &GuessArgs) -> Outcome {
    let spec = a.spec.spec();
    let seq = load_sequence(&spec, &a.source)?;
    let rec = guess_linear_recurrence(&seq, &a.fit.config())?
        .ok_or_else(|| Failure::Reported("no recurrence found at configured degrees".into()))?;
    if a.source.json {
        let mut r = ReportJson::new(&spec).with_sequence(&seq);
        r.recurrence = Some(RecurrenceJson::from_op(&rec));
        r.initial_conditions =
            Some((1..=rec.order()).map(|i| (i, seq.terms[i].to_string())).collect());
        r.verified_to = Some(seq.len() - 1);
        return Ok(r.to_json());
    }
    let mut text = rec.to_string();
    if let Some(solved) = rec.solved_form() {
        text.push('\n');
        text.push_str(&solved);
    }
    Ok(text)
}

fn theorem_cmd(a: &TheoremArgs) -> Outcome {
    if a.source.n < MIN_TERMS {
        return Err(TheoremFailure::TooFewTerms(a.source.n).into());
    }
    let spec = a.spec.spec();
    let seq = load_sequence(&spec, &a.source)?;
    let report = theorem(&spec, &seq, &a.fit.config())?;
    if a.source.json {
        return Ok(report.to_json().to_json());
    }
    Ok(report.render())
}

fn system_out(sys: &dyck_core::EquationSystem, spec: &RestrictionSpec, json: bool) -> Outcome {
    if json {
        let mut r = ReportJson::new(spec);
        r.system = Some(SystemJson::from_system(sys));
        return Ok(r.to_json());
    }
    Ok(sys.render())
}

fn eliminate_out(spec: &RestrictionSpec, r: dyck_core::EliminationResult, json: bool) -> Outcome {
    if json {
        let mut j = ReportJson::new(spec);
        j.equation = Some(EquationJson::from_poly(&r.poly));
        j.verified_to = Some(r.certificate);
        j.provenance = Some(Provenance::Eliminated);
        j.eliminated_count = Some(r.eliminated_count);
        return Ok(j.to_json());
    }
    Ok(format!(
        "{} = 0\nunknowns eliminated: {}\nverified through x^{}",
        r.poly.format_with("f"),
        r.eliminated_count,
        r.certificate
    ))
}

/// Order of the series check on catalan-form output.
const CATALAN_CHECK_ORDER: usize = 30;

fn catalan_cmd(a: &AbArgs) -> Outcome {
    let spec = RestrictionSpec::peaks_valleys(a.a.clone(), a.b.clone());
    spec.validate()?;
    let form = catalan_form(&a.a, &a.b)?;
    let expected = dp::sequence(&spec, CATALAN_CHECK_ORDER)?;
    let ok = form
        .series(CATALAN_CHECK_ORDER + 1)
        .is_some_and(|s| s.coeffs() == &expected.terms[..]);
    if !ok {
        return Err(Failure::Reported("catalan form disagrees with the counting sequence".into()));
    }
    if a.json {
        let mut r = ReportJson::new(&spec);
        r.catalan_form = Some(CatalanJson::from_form(&form));
        r.verified_to = Some(CATALAN_CHECK_ORDER);
        return Ok(r.to_json());
    }
    Ok(format!("f = {form}\nwhere x*C^2 = C - 1; verified through x^{CATALAN_CHECK_ORDER}"))
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let text = std::fs::read_to_string(&a.report)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", a.report.display())))?;
    let json: ReportJson =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("not a report: {e}")))?;
    let report = TheoremReport::from_json(&json).map_err(Failure::Reported)?;
    report.spec.validate()?;
    let fresh = dp::sequence(&report.spec, report.n_terms() - 1)?;
    if fresh != report.sequence {
        return Err(Failure::Reported("sequence differs from recomputation".into()));
    }
    report.verify().map_err(Failure::Reported)?;
    Ok(format!(
        "ok: {} terms, equation and recurrence verified through x^{}",
        report.n_terms(),
        report.verified_to
    ))
}
