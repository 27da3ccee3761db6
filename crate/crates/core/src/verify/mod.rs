//! Named property suites. Each suite draws seeded random instances, runs
//! one module's invariants on them, and aggregates residuals per check.

mod classify;
mod halfplane;
mod linalg;
mod monotone;
mod order;
mod phimap;

use crate::error::{Error, Result};
use crate::linalg::{loewner_compare, singular_extremes, CMatrix, Hermitian, Tolerances};
use crate::par::{map_trials, Exec};
use crate::sample::Sampler;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub exec: Exec,
    pub tol: Tolerances,
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        SuiteConfig { seed, trials, exec: Exec::default(), tol: Tolerances::default() }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_tol(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }
}

/// One failed check in one trial, with the matrices needed to reproduce it.
#[derive(Clone, Debug)]
pub struct Failure {
    pub trial: u64,
    pub check: String,
    pub message: String,
    pub witness: Vec<(String, CMatrix)>,
}

/// Aggregate of one named check over all trials.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckSummary {
    pub name: String,
    /// Residual bound; `None` for pass/fail checks.
    pub bound: Option<f64>,
    pub max: f64,
    pub evaluated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter(|c| c.bound.is_some()).fold(0.0, |m, c| m.max(c.max))
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The named check ran at least once and never failed.
    pub fn check_passed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.evaluated > 0 && c.failed == 0)
    }
}

/// Per-trial recorder.
pub(crate) struct Rec {
    trial: u64,
    entries: Vec<(&'static str, Option<f64>, f64, bool)>,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Rec {
    fn new(trial: u64) -> Self {
        Rec { trial, entries: Vec::new(), failures: Vec::new(), notes: Vec::new() }
    }

    fn fail(&mut self, check: &str, message: String, witness: &[(&str, &CMatrix)]) {
        self.failures.push(Failure {
            trial: self.trial,
            check: check.to_string(),
            message,
            witness: witness.iter().map(|(k, m)| (k.to_string(), (*m).clone())).collect(),
        });
    }

    /// Records a residual; fails when it exceeds `bound` or is not finite.
    pub(crate) fn residual(&mut self, check: &'static str, value: f64, bound: f64, witness: &[(&str, &CMatrix)]) {
        let ok = value.is_finite() && value <= bound;
        self.entries.push((check, Some(bound), value, ok));
        if !ok {
            self.fail(check, format!("residual {value:.3e} exceeds {bound:.1e}"), witness);
        }
    }

    pub(crate) fn expect(&mut self, check: &'static str, ok: bool, message: impl FnOnce() -> String, witness: &[(&str, &CMatrix)]) {
        self.entries.push((check, None, 0.0, ok));
        if !ok {
            let msg = message();
            self.fail(check, msg, witness);
        }
    }

    pub(crate) fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

/// Runs `body` once per trial with that trial's random stream.
pub(crate) fn run_trials<F>(name: &str, cfg: &SuiteConfig, trials: usize, body: F) -> SuiteOutcome
where
    F: Fn(&mut Sampler, &mut Rec) -> Result<()> + Sync + Send,
{
    let recs = map_trials(cfg.exec, trials, |trial| {
        let mut rng = Sampler::for_trial(cfg.seed, trial);
        let mut rec = Rec::new(trial);
        if let Err(e) = body(&mut rng, &mut rec) {
            rec.expect("no-error", false, || e.to_string(), &[]);
        }
        rec
    });
    let mut checks: Vec<CheckSummary> = Vec::new();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for rec in recs {
        for (name, bound, value, ok) in rec.entries {
            let idx = match checks.iter().position(|c| c.name == name) {
                Some(i) => i,
                None => {
                    checks.push(CheckSummary { name: name.to_string(), bound, max: 0.0, evaluated: 0, failed: 0 });
                    checks.len() - 1
                }
            };
            let c = &mut checks[idx];
            c.evaluated += 1;
            if !ok {
                c.failed += 1;
            }
            if bound.is_some() {
                c.max = if value.is_nan() { f64::NAN } else { c.max.max(value) };
            }
        }
        failures.extend(rec.failures);
        notes.extend(rec.notes);
    }
    SuiteOutcome { suite: name.to_string(), seed: cfg.seed, trials, checks, failures, notes }
}

type SuiteFn = fn(&SuiteConfig) -> SuiteOutcome;

const SUITES: &[(&str, &str, SuiteFn)] = &[
    ("eigen", "Jacobi eigendecomposition residual, unitarity and ordering", linalg::eigen),
    ("sylvester", "inertia is invariant under congruence", linalg::sylvester),
    ("loewner-negation", "X ≤ Y exactly when −Y ≤ −X", linalg::negation),
    ("spectral-composition", "(f∘g)(X) = f(g(X)) and √X·√X = X", linalg::composition),
    ("invertibility-margin", "σ_min agrees with the eigenvalues of X*X", linalg::margin),
    ("rank-one-order", "trace test for rank-one R ≤ A agrees with the Loewner order", order::rank_one),
    ("interval-iso", "affine isomorphism [A, B] → E_r round trip and order", order::interval_iso),
    ("bloch-bound", "dE ≤ P + cQ exactly when ‖P − E‖ is below the threshold", order::bloch),
    ("halfplane-primitives", "Cayley round trip, −Z⁻¹ involution, f_r inverse law", halfplane::primitives),
    ("mobius-membership", "Möbius automorphisms preserve Π_n and Hermitian matrices", halfplane::membership),
    ("mobius-fit", "canonical-form recovery of planted automorphisms", halfplane::fit),
    ("mobius-group", "compositions re-fit to a single automorphism", halfplane::group),
    ("theta-inversion", "Θ_{−A}∘Θ_A = id and (XA+I)⁻¹X = X(AX+I)⁻¹", phimap::theta),
    ("phi-order", "Φ_A is an order embedding on gated pairs", phimap::order),
    ("interval-criterion", "[0, X] ⊂ U_A exactly when X^{1/2}AX^{1/2} > −I", phimap::interval),
    ("translation", "translation identity for Φ̂_A", phimap::translation),
    ("conjugation", "Φ_{TAT*} = ψ⁻¹∘Φ_A∘ψ", phimap::conjugation),
    ("congruence-orbit", "Φ̂_X(A) = TAT* with inertia preserved", phimap::orbit),
    ("ua-oracle", "U_A inertia criterion against randomized path search", phimap::ua_oracle),
    ("identify", "parameter recovery of planted local order isomorphisms", phimap::identify),
    ("block-3by3", "−embed(X)⁻¹ carries φ_{m,p}(X); embedding inertia", classify::block),
    ("phi-mp-inverse", "φ_{m,m−p}∘φ_{m,p} = id", classify::phi_mp_inverse),
    ("phi-mp-order", "φ_{m,p} preserves order on gated pairs", classify::phi_mp_order),
    ("class-count", "(n+2)(n+1)/2 signature classes", classify::class_count),
    ("rank-witness", "extremal PSD ray ranks separate the classes", classify::rank_witness),
    ("effect-auto", "T·Φ_{T*T−I}·T* is an order automorphism of [0, I]", classify::effect),
    ("fpq-auto", "f_q/f_p automorphism, endpoints, order, four-factor form", classify::fpq),
    ("pomjan2", "order embeddings of E_n with free endpoint values", classify::pomjan2),
    ("loewner-matrix", "Loewner-matrix verdicts for √, x², f_p", monotone::loewner),
    ("pick", "discrete Pick functions on Π_n and on Hermitian matrices", monotone::pick),
];

/// Names of all suites, in run order.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

pub fn suite_description(name: &str) -> Option<&'static str> {
    SUITES.iter().find(|s| s.0 == name).map(|s| s.1)
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let (_, _, f) = SUITES.iter().find(|s| s.0 == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(f(cfg))
}

// shared helpers for the suite bodies

/// ‖a − b‖_F / (1 + ‖b‖_F)
pub(crate) fn rel_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).frobenius() / (1.0 + b.frobenius())
}

/// σ_min(M) ≥ rel·(1 + σ_max(M))
pub(crate) fn well_conditioned(m: &CMatrix, rel: f64) -> bool {
    singular_extremes(m).map(|(lo, hi)| lo >= rel * (1.0 + hi)).unwrap_or(false)
}

pub(crate) fn dim(rng: &mut Sampler, lo: usize, hi: usize) -> usize {
    lo + rng.index(hi - lo + 1)
}

/// Repeats `draw` until it yields a value, at most `attempts` times.
pub(crate) fn draw<T>(rng: &mut Sampler, attempts: usize, mut f: impl FnMut(&mut Sampler) -> Option<T>) -> Result<T> {
    for _ in 0..attempts {
        if let Some(v) = f(rng) {
            return Ok(v);
        }
    }
    Err(Error::InvalidArgument(format!("no admissible instance in {attempts} draws")))
}

/// Y − X has an eigenvalue ≤ −gap and one ≥ gap (relative to ‖Y − X‖).
pub(crate) fn clearly_incomparable(x: &Hermitian, y: &Hermitian, gap: f64) -> bool {
    let e = y.minus(x).eigen();
    let s = e.norm();
    e.values[0] < -gap * s && e.values[e.dim() - 1] > gap * s
}

/// Relative violation of X ≤ Y: max(0, −λ_min(Y − X)) / (1 + max(‖X‖, ‖Y‖)).
pub(crate) fn order_violation(x: &Hermitian, y: &Hermitian) -> f64 {
    let scale = 1.0 + x.spectral_norm().max(y.spectral_norm());
    (-y.minus(x).min_eigenvalue()).max(0.0) / scale
}

/// Whether `phi` reflects and preserves the order of (X, Y):
/// X ≤ Y ⟺ φ(X) ≤ φ(Y) and Y ≤ X ⟺ φ(Y) ≤ φ(X).
pub fn embedding_pair_agrees(
    phi: impl Fn(&Hermitian) -> Result<Hermitian>,
    x: &Hermitian,
    y: &Hermitian,
    tol: &Tolerances,
) -> Result<bool> {
    let (fx, fy) = (phi(x)?, phi(y)?);
    let before = loewner_compare(x, y, tol)?;
    let after = loewner_compare(&fx, &fy, tol)?;
    Ok(before.is_leq() == after.is_leq() && before.is_geq() == after.is_geq())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", &SuiteConfig::new(0, 1)), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn names_are_unique() {
        let mut names = suite_names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), SUITES.len());
    }
}
