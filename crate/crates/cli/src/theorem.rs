//! The end-to-end pipeline: count, guess, cross-check, verify.

use std::fmt;

use dyck_core::elimination::{eliminate_peak_valley, eliminate_run_length};
use dyck_core::guess::{guess_algebraic_equation, guess_linear_recurrence};
use dyck_core::{EliminationResult, Error, FitConfig, RestrictionSpec, Sequence};

use crate::report::{Provenance, TheoremReport};

/// Fewest terms the pipeline accepts.
pub const MIN_TERMS: usize = 40;

#[derive(Clone, Debug, PartialEq)]
pub enum TheoremFailure {
    TooFewTerms(usize),
    NoEquation,
    NoRecurrence,
    Core(Error),
    Unverified(String),
}

impl fmt::Display for TheoremFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremFailure::TooFewTerms(n) => write!(f, "need N >= {MIN_TERMS}, got {n}"),
            TheoremFailure::NoEquation => f.write_str("no equation found at configured degrees"),
            TheoremFailure::NoRecurrence => f.write_str("no recurrence found at configured degrees"),
            TheoremFailure::Core(e) => write!(f, "{e}"),
            TheoremFailure::Unverified(why) => write!(f, "report failed re-verification: {why}"),
        }
    }
}

impl From<Error> for TheoremFailure {
    fn from(e: Error) -> Self {
        TheoremFailure::Core(e)
    }
}

/// Run the symbolic route when the spec restricts only one statistic pair.
pub fn symbolic_route(spec: &RestrictionSpec, min_terms: usize) -> Option<dyck_core::Result<EliminationResult>> {
    if spec.up_runs.is_empty() && spec.down_runs.is_empty() {
        Some(eliminate_peak_valley(&spec.peaks, &spec.valleys, min_terms))
    } else if spec.peaks.is_empty() && spec.valleys.is_empty() {
        Some(eliminate_run_length(&spec.up_runs, &spec.down_runs, min_terms))
    } else {
        None
    }
}

/// `seq` holds `a(0..=N)`.
pub fn theorem(spec: &RestrictionSpec, seq: &Sequence, cfg: &FitConfig) -> Result<TheoremReport, TheoremFailure> {
    spec.validate()?;
    let n = seq.len().saturating_sub(1);
    if n < MIN_TERMS {
        return Err(TheoremFailure::TooFewTerms(n));
    }
    let guessed = match guess_algebraic_equation(seq, cfg) {
        Ok(g) => g,
        Err(Error::InsufficientTerms { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let eliminated = match symbolic_route(spec, seq.len()) {
        Some(Ok(r)) => Some(r.poly),
        _ => None,
    };
    let (equation, provenance) = match (guessed, eliminated) {
        (Some(g), Some(e)) if g == e => (g, Provenance::BothAgree),
        (_, Some(e)) => (e, Provenance::Eliminated),
        (Some(g), None) => (g, Provenance::Guessed),
        (None, None) => return Err(TheoremFailure::NoEquation),
    };
    let recurrence = match guess_linear_recurrence(seq, cfg) {
        Ok(Some(r)) => r,
        Ok(None) | Err(Error::InsufficientTerms { .. }) => return Err(TheoremFailure::NoRecurrence),
        Err(e) => return Err(e.into()),
    };
    let initial_conditions = (1..=recurrence.order()).map(|i| (i, seq.terms[i].clone())).collect();
    let report = TheoremReport {
        spec: spec.clone(),
        sequence: seq.clone(),
        equation,
        recurrence,
        initial_conditions,
        verified_to: n,
        provenance,
    };
    report.verify().map_err(TheoremFailure::Unverified)?;
    Ok(report)
}
