//! Reports and their JSON form.

use std::fmt::Write as _;

use dyck_core::guess::{verify_equation, verify_recurrence};
use dyck_core::{
    BivariatePoly, EquationSystem, IntPoly, IntSet, RationalInCatalan, RecurrenceOperator, RestrictionSpec, Sequence,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Guessed,
    Eliminated,
    BothAgree,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Guessed => "guessed",
            Provenance::Eliminated => "eliminated",
            Provenance::BothAgree => "both-agree",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "D")]
    pub d: String,
}

impl SpecJson {
    pub fn from_spec(spec: &RestrictionSpec) -> Self {
        SpecJson {
            a: spec.peaks.to_string(),
            b: spec.valleys.to_string(),
            c: spec.up_runs.to_string(),
            d: spec.down_runs.to_string(),
        }
    }

    pub fn to_spec(&self) -> Result<RestrictionSpec, String> {
        let p = |s: &str| s.parse::<IntSet>().map_err(|e| e.to_string());
        Ok(RestrictionSpec::new(p(&self.a)?, p(&self.b)?, p(&self.c)?, p(&self.d)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    /// `[x-degree, y-degree, coefficient]`.
    pub monomials: Vec<(u32, u32, String)>,
}

impl EquationJson {
    pub fn from_poly(p: &BivariatePoly) -> Self {
        EquationJson {
            monomials: p.terms().map(|(i, j, c)| (i, j, c.to_string())).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<BivariatePoly, String> {
        let terms = self
            .monomials
            .iter()
            .map(|(i, j, c)| Ok(((*i, *j), parse_int(c)?)))
            .collect::<Result<Vec<_>, String>>()?;
        Ok(BivariatePoly::from_terms(terms).canonical())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceJson {
    pub order: usize,
    /// `coeffs[i][k]` is the coefficient of `n^k` in `p_i(n)`.
    pub coeffs: Vec<Vec<String>>,
}

impl RecurrenceJson {
    pub fn from_op(op: &RecurrenceOperator) -> Self {
        RecurrenceJson {
            order: op.order(),
            coeffs: op
                .coeffs()
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_op(&self) -> Result<RecurrenceOperator, String> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| Ok(IntPoly::new(p.iter().map(|c| parse_int(c)).collect::<Result<_, String>>()?)))
            .collect::<Result<Vec<_>, String>>()?;
        let op = RecurrenceOperator::new(coeffs).ok_or("degenerate recurrence")?;
        if op.order() != self.order {
            return Err(format!("recurrence order {} does not match its {} coefficients", self.order, op.order() + 1));
        }
        Ok(op)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownJson {
    pub name: String,
    pub kind: String,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemEquationJson {
    pub unknown: String,
    /// `[exponents over variables, coefficient]` of `unknown - rhs`.
    pub monomials: Vec<(Vec<u32>, String)>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub root: String,
    pub variables: Vec<String>,
    pub unknowns: Vec<UnknownJson>,
    pub equations: Vec<SystemEquationJson>,
}

impl SystemJson {
    pub fn from_system(sys: &EquationSystem) -> Self {
        let names = sys.var_names();
        SystemJson {
            root: sys.root().var_name(),
            variables: names.clone(),
            unknowns: sys
                .unknowns()
                .iter()
                .map(|u| UnknownJson { name: u.var_name(), kind: u.kind().to_string(), state: u.to_string() })
                .collect(),
            equations: (0..sys.len())
                .map(|i| SystemEquationJson {
                    unknown: names[i + 1].clone(),
                    monomials: sys.equation(i).terms().map(|(e, c)| (e.clone(), c.to_string())).collect(),
                    text: format!("{} = {}", names[i + 1], sys.rhs(i).display_with(&names)),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalanLinearJson {
    /// Coefficients of the `C`-free part, low degree first.
    pub constant: Vec<String>,
    /// Coefficients of the multiplier of `C`.
    pub c: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalanJson {
    pub numerator: CatalanLinearJson,
    pub denominator: CatalanLinearJson,
    pub text: String,
}

impl CatalanJson {
    pub fn from_form(r: &RationalInCatalan) -> Self {
        let v = |p: &IntPoly| p.coeffs().iter().map(|c| c.to_string()).collect();
        CatalanJson {
            numerator: CatalanLinearJson { constant: v(&r.num.a), c: v(&r.num.b) },
            denominator: CatalanLinearJson { constant: v(&r.den.a), c: v(&r.den.b) },
            text: r.to_string(),
        }
    }
}

/// Every command's JSON output; fields a command does not produce are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub spec: SpecJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<EquationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_conditions: Option<Vec<(usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified_to: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eliminated_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalan_form: Option<CatalanJson>,
}

impl ReportJson {
    pub fn new(spec: &RestrictionSpec) -> Self {
        ReportJson {
            spec: SpecJson::from_spec(spec),
            n_terms: None,
            sequence: None,
            equation: None,
            recurrence: None,
            initial_conditions: None,
            verified_to: None,
            provenance: None,
            eliminated_count: None,
            system: None,
            catalan_form: None,
        }
    }

    pub fn with_sequence(mut self, seq: &Sequence) -> Self {
        self.n_terms = Some(seq.len());
        self.sequence = Some(seq.terms.iter().map(|t| t.to_string()).collect());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("not an integer: {s:?}"))
}

/// Result of the end-to-end pipeline for one restriction spec.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub spec: RestrictionSpec,
    pub sequence: Sequence,
    pub equation: BivariatePoly,
    pub recurrence: RecurrenceOperator,
    /// `(n, a(n))` for `n = 1..=order`.
    pub initial_conditions: Vec<(usize, BigInt)>,
    pub verified_to: usize,
    pub provenance: Provenance,
}

impl TheoremReport {
    pub fn n_terms(&self) -> usize {
        self.sequence.len()
    }

    /// Re-run every check on the data as it will be emitted.
    pub fn verify(&self) -> Result<(), String> {
        if !verify_equation(&self.equation, &self.sequence) {
            return Err("equation does not annihilate the sequence".into());
        }
        if !verify_recurrence(&self.recurrence, &self.sequence) {
            return Err("recurrence does not annihilate the sequence".into());
        }
        if self.initial_conditions.len() != self.recurrence.order() {
            return Err("initial conditions do not cover the recurrence order".into());
        }
        for (n, v) in &self.initial_conditions {
            if self.sequence.terms.get(*n) != Some(v) {
                return Err(format!("initial condition a({n}) disagrees with the sequence"));
            }
        }
        if self.verified_to + 1 > self.sequence.len() {
            return Err("verification order exceeds the available terms".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> ReportJson {
        let mut r = ReportJson::new(&self.spec).with_sequence(&self.sequence);
        r.equation = Some(EquationJson::from_poly(&self.equation));
        r.recurrence = Some(RecurrenceJson::from_op(&self.recurrence));
        r.initial_conditions = Some(self.initial_conditions.iter().map(|(n, v)| (*n, v.to_string())).collect());
        r.verified_to = Some(self.verified_to);
        r.provenance = Some(self.provenance);
        r
    }

    pub fn from_json(r: &ReportJson) -> Result<Self, String> {
        let missing = |f: &str| format!("report has no {f}");
        let terms = r
            .sequence
            .as_ref()
            .ok_or_else(|| missing("sequence"))?
            .iter()
            .map(|t| parse_int(t))
            .collect::<Result<Vec<_>, String>>()?;
        if r.n_terms != Some(terms.len()) {
            return Err("n_terms does not match the sequence length".into());
        }
        Ok(TheoremReport {
            spec: r.spec.to_spec()?,
            sequence: Sequence::new(terms),
            equation: r.equation.as_ref().ok_or_else(|| missing("equation"))?.to_poly()?,
            recurrence: r.recurrence.as_ref().ok_or_else(|| missing("recurrence"))?.to_op()?,
            initial_conditions: r
                .initial_conditions
                .as_ref()
                .ok_or_else(|| missing("initial_conditions"))?
                .iter()
                .map(|(n, v)| Ok((*n, parse_int(v)?)))
                .collect::<Result<_, String>>()?,
            verified_to: r.verified_to.ok_or_else(|| missing("verified_to"))?,
            provenance: r.provenance.ok_or_else(|| missing("provenance"))?,
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Dyck paths of semi-length n avoiding");
        let _ = writeln!(s, "  peak heights in A = {}", self.spec.peaks);
        let _ = writeln!(s, "  valley heights in B = {}", self.spec.valleys);
        let _ = writeln!(s, "  ascending run lengths in C = {}", self.spec.up_runs);
        let _ = writeln!(s, "  descending run lengths in D = {}", self.spec.down_runs);
        let _ = writeln!(s);
        let _ = writeln!(s, "f(x) = sum a(n) x^n satisfies");
        let _ = writeln!(s, "  {} = 0", self.equation.format_with("f"));
        let _ = writeln!(s, "a(n) satisfies, for n >= {},", self.recurrence.order());
        let _ = writeln!(s, "  {}", self.recurrence);
        if let Some(solved) = self.recurrence.solved_form() {
            let _ = writeln!(s, "  {solved}");
        }
        let ics: Vec<String> = self.initial_conditions.iter().map(|(n, v)| format!("a({n}) = {v}")).collect();
        let _ = writeln!(s, "with a(0) = {} and {}", self.sequence.terms[0], ics.join(", "));
        let _ = writeln!(s);
        let _ = writeln!(s, "terms: {}", self.sequence);
        let _ = writeln!(
            s,
            "verified through x^{}; equation {}",
            self.verified_to,
            self.provenance.as_str()
        );
        s
    }
}
