//! Machine-checked replays of the two monotonicity proofs for `theta_n`.
//!
//! Each verification target produces an ordered list of [`ProofStep`]s. A
//! step stores a [`Witness`] from which its status can be recomputed without
//! touching any other step, except for [`Witness::Dependency`] steps which
//! are resolved against the statuses of earlier steps in the same report.

mod difference;
mod envelope;
mod exp_ratio;
mod log_ratio;
mod staircase;
mod weak_lower;
pub mod witness;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::ball::PrecisionPolicy;
use crate::exact::{serde_rational, Interval, Polynomial, RationalFunction, Strategy};

pub use difference::verify_difference_proof;
pub use envelope::verify_envelope_proof;
pub use exp_ratio::{exp_ratio_series, verify_exp_ratio};
pub use log_ratio::{verify_a_lower_bound, verify_log_ratio};
pub use staircase::verify_staircase;
pub use weak_lower::{composition_step, expected_expansion, verify_weak_lower_bound};
pub use witness::{Factor, Quantity, Witness};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactPolynomial,
    ExactRatfun,
    SignCertificate,
    BallComparison,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed,
    Undecided,
}

impl Status {
    /// Conjunction: any failure fails, otherwise any undecided is undecided.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Failed, _) | (_, Status::Failed) => Status::Failed,
            (Status::Undecided, _) | (_, Status::Undecided) => Status::Undecided,
            _ => Status::Verified,
        }
    }
}

/// Hard steps gate the overall verdict. Soft steps compare against quoted
/// decimals; informational steps record side facts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    Hard,
    Soft,
    Informational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    Verified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub id: String,
    pub claim: String,
    pub method: Method,
    pub severity: Severity,
    pub status: Status,
    pub witness: Witness,
    /// The formula this step checks.
    pub reference: String,
}

impl ProofStep {
    pub fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        method: Method,
        reference: impl Into<String>,
        witness: Witness,
    ) -> Self {
        let status = witness.check();
        ProofStep {
            id: id.into(),
            claim: claim.into(),
            method,
            severity: Severity::Hard,
            status,
            witness,
            reference: reference.into(),
        }
    }

    pub fn with_severity(mut self, severity: Severity) -> Self {
        self.severity = severity;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub tool_version: String,
    pub policy: PrecisionPolicy,
    pub steps: Vec<ProofStep>,
    #[serde(with = "serde_rational::map")]
    pub derived_constants: BTreeMap<String, BigRational>,
    pub overall: Overall,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
}

fn resolve(steps: &mut [ProofStep]) {
    let mut seen: HashMap<String, Status> = HashMap::new();
    for step in steps.iter_mut() {
        if let Witness::Dependency { requires } = &step.witness {
            step.status = requires
                .iter()
                .map(|id| seen.get(id).copied().unwrap_or(Status::Failed))
                .fold(Status::Verified, Status::and);
        }
        seen.insert(step.id.clone(), step.status);
    }
}

fn overall(steps: &[ProofStep]) -> Overall {
    if steps.iter().filter(|s| s.severity == Severity::Hard).all(|s| s.status == Status::Verified) {
        Overall::Verified
    } else {
        Overall::Failed
    }
}

impl ProofReport {
    pub fn new(
        policy: PrecisionPolicy,
        mut steps: Vec<ProofStep>,
        derived_constants: BTreeMap<String, BigRational>,
    ) -> Self {
        resolve(&mut steps);
        let overall = overall(&steps);
        ProofReport { tool_version: TOOL_VERSION.to_string(), policy, steps, derived_constants, overall }
    }

    pub fn step(&self, id: &str) -> Option<&ProofStep> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn is_verified(&self) -> bool {
        self.overall == Overall::Verified
    }

    /// Recompute every status from the stored witnesses.
    pub fn replay(&self) -> ProofReport {
        let mut steps = self.steps.clone();
        for s in &mut steps {
            s.status = s.witness.check();
        }
        resolve(&mut steps);
        let overall = overall(&steps);
        ProofReport { steps, overall, ..self.clone() }
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// What a run should cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// `beta_n <= alpha_{n+1}` for `n >= 3`.
    Staircase,
    /// `ln(a_n/a_{n+1})` lower bound.
    LogRatio,
    /// `a_n^6 >= 8 pi^3 exp(1/(2n) - 1/(60n^3))`.
    ALowerBound,
    /// `theta_n >= 1 - 3/(2n)`.
    WeakLowerBound,
    /// `e (n-1)^(n-1)/n^(n-1) >= 1 + 1/(2n) + ...`.
    ExpRatio,
    /// Monotonicity through the rational envelopes.
    EnvelopeProof,
    /// Monotonicity through `theta_n - theta_{n-1} > 0`.
    DifferenceProof,
    All,
}

impl Target {
    pub const NAMES: [&'static str; 8] = [
        "staircase",
        "log-ratio",
        "a-lower-bound",
        "weak-lower-bound",
        "exp-ratio",
        "envelope-proof",
        "difference-proof",
        "all",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Staircase => "staircase",
            Target::LogRatio => "log-ratio",
            Target::ALowerBound => "a-lower-bound",
            Target::WeakLowerBound => "weak-lower-bound",
            Target::ExpRatio => "exp-ratio",
            Target::EnvelopeProof => "envelope-proof",
            Target::DifferenceProof => "difference-proof",
            Target::All => "all",
        }
    }

    /// The target itself preceded by everything it builds on.
    fn parts(self) -> Vec<Target> {
        use Target::*;
        match self {
            Staircase | LogRatio | ExpRatio => vec![self],
            ALowerBound => vec![LogRatio, ALowerBound],
            WeakLowerBound => vec![LogRatio, ALowerBound, WeakLowerBound],
            EnvelopeProof => vec![Staircase, EnvelopeProof],
            DifferenceProof => vec![LogRatio, ALowerBound, WeakLowerBound, ExpRatio, DifferenceProof],
            All => vec![Staircase, LogRatio, ALowerBound, WeakLowerBound, ExpRatio, EnvelopeProof, DifferenceProof],
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        use Target::*;
        [Staircase, LogRatio, ALowerBound, WeakLowerBound, ExpRatio, EnvelopeProof, DifferenceProof, All]
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown target {s:?}; expected one of {}", Target::NAMES.join(", ")))
    }
}

/// Knobs for a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProofConfig {
    pub policy: PrecisionPolicy,
    /// Last `n` of the envelope check `alpha_n < theta_n < beta_n`.
    pub sandwich_to: u64,
    /// Base cases of the difference proof run over `2..=difference_base_to`.
    pub difference_base_to: u64,
}

impl Default for ProofConfig {
    fn default() -> Self {
        ProofConfig { policy: PrecisionPolicy::default(), sandwich_to: 1000, difference_base_to: 105 }
    }
}

/// Steps and exact constants produced by one part.
#[derive(Default)]
pub(crate) struct Part {
    pub steps: Vec<ProofStep>,
    pub constants: BTreeMap<String, BigRational>,
}

impl Part {
    pub fn push(&mut self, step: ProofStep) {
        self.steps.push(step);
    }
}

fn run_part(t: Target, cfg: &ProofConfig) -> Part {
    match t {
        Target::Staircase => Part { steps: verify_staircase(), ..Part::default() },
        Target::LogRatio => Part { steps: verify_log_ratio(&cfg.policy), ..Part::default() },
        Target::ALowerBound => Part { steps: verify_a_lower_bound(&cfg.policy), ..Part::default() },
        Target::WeakLowerBound => Part { steps: verify_weak_lower_bound(&cfg.policy), ..Part::default() },
        Target::ExpRatio => exp_ratio::run(&cfg.policy),
        Target::EnvelopeProof => Part { steps: verify_envelope_proof(cfg), ..Part::default() },
        Target::DifferenceProof => difference::run(cfg),
        Target::All => unreachable!("expanded by parts()"),
    }
}

/// `numer / denom`; both are nonzero by construction at every call site.
pub(crate) fn ratfun(numer: Polynomial, denom: Polynomial) -> RationalFunction {
    RationalFunction::new(numer, denom).expect("nonzero denominator")
}

pub(crate) fn sign_step(
    id: &str,
    claim: &str,
    reference: &str,
    p: &Polynomial,
    interval: Interval,
    strategy: Strategy,
) -> ProofStep {
    ProofStep::new(id, claim, Method::SignCertificate, reference, witness::sign(p, &interval, strategy))
}

/// A step that holds when every listed step holds.
pub(crate) fn depends(id: &str, claim: &str, reference: &str, requires: &[&str]) -> ProofStep {
    let requires = requires.iter().map(|s| s.to_string()).collect();
    ProofStep::new(id, claim, Method::ExactRatfun, reference, Witness::Dependency { requires })
}

pub(crate) fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
    Polynomial::from_ratios(coeffs)
}

/// Run `target` together with its prerequisites.
pub fn verify(target: Target, cfg: &ProofConfig) -> ProofReport {
    let mut steps = Vec::new();
    let mut constants = BTreeMap::new();
    for t in target.parts() {
        let part = run_part(t, cfg);
        steps.extend(part.steps);
        constants.extend(part.constants);
    }
    ProofReport::new(cfg.policy, steps, constants)
}
