//! Test integrands, derivative norms, convergence studies and
//! error-representation checks.

mod convergence;
mod corpus;
mod norms;
mod residual;

use std::fmt;

pub use convergence::{
    convergence_table, convergence_table_with_norm, doubling, ConvergenceRow, ConvergenceTable,
    CSV_HEADER,
};
pub use corpus::{builtin_corpus, find_entry, CorpusEntry, Smoothness};
pub use norms::{
    derivative_norm_with_constants, derivative_sup_norm, sup_norm, NormSource, BASE_SAMPLES,
    DOUBLINGS, GROWTH_THRESHOLD,
};
pub use residual::{representation_integral, residual_check, DEFAULT_RESOLUTION};

use crate::composite::{composite_rule, UniformPartition};
use crate::error::{Error, Result};
use crate::kernels::RuleKind;

/// Slack allowed when comparing an error to its bound.
pub const BOUND_SLACK: f64 = 1e-10;
/// Residuals must be at most this times `1 + |exact|`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum CheckKind {
    /// `|exact - value| ≤ bound` at the given `n`.
    Bound { n: usize },
    /// Error representation with the kernel.
    Residual,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub entry: String,
    pub rule: RuleKind,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

/// A rule that could not be checked on an entry, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub entry: String,
    pub rule: RuleKind,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusReport {
    pub checks: Vec<CheckOutcome>,
    pub skipped: Vec<Skipped>,
}

impl CorpusReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.failures() {
            let what = match c.kind {
                CheckKind::Bound { n } => format!("bound n={n}"),
                CheckKind::Residual => "residual".to_string(),
            };
            writeln!(f, "FAIL {} {} {}: {}", c.entry, c.rule, what, c.detail)?;
        }
        for s in &self.skipped {
            writeln!(f, "skip {} {}: {}", s.entry, s.rule, s.reason)?;
        }
        write!(
            f,
            "{} checks, {} passed, {} failed, {} skipped",
            self.checks.len(),
            self.passed(),
            self.checks.len() - self.passed(),
            self.skipped.len()
        )
    }
}

/// Panel counts swept for bound validity: `1, 2, 4, …, 1024`.
pub fn sweep_sizes(rule: RuleKind) -> Vec<usize> {
    let start = if rule == RuleKind::Simpson { 2 } else { 1 };
    doubling(start, 1024)
}

/// `‖f^(m)‖∞` if it is finite and the entry is smooth enough, otherwise
/// the reason the rule's bound does not apply.
pub fn applicable_norm(rule: RuleKind, entry: &CorpusEntry) -> Result<std::result::Result<f64, String>> {
    let m = rule.derivative_order();
    match derivative_sup_norm(&entry.expression()?, m, entry.interval) {
        Ok(_) if !entry.smoothness.supports(m) => Ok(Err(format!("entry is only {}", entry.smoothness))),
        Ok(norm) => Ok(Ok(norm)),
        Err(Error::DivergentNorm { max_seen, .. }) => {
            Ok(Err(format!("sup of f^({m}) diverges (largest sample {max_seen:e})")))
        }
        Err(e) => Err(e),
    }
}

/// Runs bound validity over [`sweep_sizes`] and the residual check for every
/// rule on every corpus entry. Rules whose derivative is unbounded on an
/// entry are reported as skipped.
pub fn run_corpus(corpus: &[CorpusEntry], resolution: usize) -> Result<CorpusReport> {
    let mut report = CorpusReport::default();
    for entry in corpus {
        let f = entry.expression()?;
        for rule in RuleKind::ALL {
            let norm = match applicable_norm(rule, entry)? {
                Ok(norm) => norm,
                Err(reason) => {
                    report.skipped.push(Skipped { entry: entry.name.clone(), rule, reason });
                    continue;
                }
            };
            for n in sweep_sizes(rule) {
                let grid = UniformPartition::new(entry.interval, n)?;
                let est = composite_rule(rule, &f, &grid, norm)?;
                let err = entry.abs_error(est.value);
                report.checks.push(CheckOutcome {
                    entry: entry.name.clone(),
                    rule,
                    kind: CheckKind::Bound { n },
                    passed: err <= est.error_bound * (1.0 + BOUND_SLACK),
                    detail: format!("error {err:e}, bound {:e}", est.error_bound),
                });
            }
            let residual = residual_check(rule, entry, resolution)?;
            let limit = RESIDUAL_TOLERANCE * (1.0 + entry.exact.abs());
            report.checks.push(CheckOutcome {
                entry: entry.name.clone(),
                rule,
                kind: CheckKind::Residual,
                passed: residual <= limit,
                detail: format!("residual {residual:e}, limit {limit:e}"),
            });
        }
    }
    Ok(report)
}
