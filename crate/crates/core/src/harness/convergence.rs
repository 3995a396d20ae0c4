use std::fmt::Write as _;

use super::corpus::CorpusEntry;
use super::norms::derivative_sup_norm;
use crate::composite::{composite_rule, UniformPartition};
use crate::error::{Error, Result};
use crate::kernels::RuleKind;

/// One line of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub value: f64,
    pub abs_error: f64,
    /// Absent when no applicable bound exists for the entry.
    pub bound: Option<f64>,
    /// `bound / abs_error`; absent when either is missing or the error is zero.
    pub ratio: Option<f64>,
    /// `log(e_prev / e) / log(n / n_prev)`; absent on the first row or when
    /// an error is zero.
    pub observed_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    /// Rule whose values were computed.
    pub rule: RuleKind,
    /// Rule whose bound is reported; differs from `rule` when the entry is
    /// not smooth enough and a first-order bound is used instead.
    pub bound_rule: Option<RuleKind>,
    pub derivative_norm: Option<f64>,
    pub rows: Vec<ConvergenceRow>,
    pub warning: Option<String>,
}

pub const CSV_HEADER: &str = "n,value,abs_error,bound,ratio,observed_order";

fn field(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{},{},{}",
                r.n,
                r.value,
                r.abs_error,
                field(r.bound),
                field(r.ratio),
                field(r.observed_order)
            );
        }
        out
    }

    pub fn observed_orders(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.observed_order).collect()
    }
}

/// Chooses the bound for `rule` on `entry`: the rule's own if the entry is
/// smooth enough and the derivative norm is finite, else the first-order
/// bound where one exists, else none.
fn bound_plan(
    rule: RuleKind,
    entry: &CorpusEntry,
    norm_override: Option<f64>,
) -> Result<(Option<RuleKind>, Option<f64>, Option<String>)> {
    let f = entry.expression()?;
    let m = rule.derivative_order();
    if let Some(norm) = norm_override {
        return Ok((Some(rule), Some(norm), None));
    }
    let own = if entry.smoothness.supports(m) {
        match derivative_sup_norm(&f, m, entry.interval) {
            Ok(norm) => Ok(norm),
            Err(Error::DivergentNorm { .. }) => Err(format!("sup of f^({m}) diverges")),
            Err(e) => return Err(e),
        }
    } else {
        Err(format!("{} is only {}", entry.function, entry.smoothness))
    };
    match own {
        Ok(norm) => Ok((Some(rule), Some(norm), None)),
        Err(reason) => {
            let fallback = rule.first_order_variant().filter(|fo| *fo != rule);
            let warning = match fallback {
                Some(fo) => format!("{reason}; {rule} bound replaced by the {fo} bound"),
                None => format!("{reason}; no {rule} bound reported"),
            };
            match fallback {
                Some(fo) => {
                    let norm = derivative_sup_norm(&f, 1, entry.interval)?;
                    Ok((Some(fo), Some(norm), Some(warning)))
                }
                None => Ok((None, None, Some(warning))),
            }
        }
    }
}

/// Runs the composite rule at every `n` and records errors, bounds and
/// observed orders. Norms come from [`super::sup_norm`].
pub fn convergence_table(rule: RuleKind, entry: &CorpusEntry, ns: &[usize]) -> Result<ConvergenceTable> {
    convergence_table_with_norm(rule, entry, ns, None)
}

/// As [`convergence_table`], with an optional caller-supplied `‖f^(m)‖∞`.
pub fn convergence_table_with_norm(
    rule: RuleKind,
    entry: &CorpusEntry,
    ns: &[usize],
    norm: Option<f64>,
) -> Result<ConvergenceTable> {
    let f = entry.expression()?;
    let (bound_rule, derivative_norm, warning) = bound_plan(rule, entry, norm)?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let grid = UniformPartition::new(entry.interval, n)?;
        let est = composite_rule(rule, &f, &grid, 0.0)?;
        let bound = match (bound_rule, derivative_norm) {
            (Some(br), Some(norm)) => Some(composite_rule(br, &f, &grid, norm)?.error_bound),
            _ => None,
        };
        let abs_error = entry.abs_error(est.value);
        let ratio = bound.filter(|_| abs_error > 0.0).map(|b| b / abs_error);
        let observed_order = rows.last().and_then(|prev| {
            (prev.abs_error > 0.0 && abs_error > 0.0 && n != prev.n)
                .then(|| (prev.abs_error / abs_error).ln() / (n as f64 / prev.n as f64).ln())
        });
        rows.push(ConvergenceRow { n, value: est.value, abs_error, bound, ratio, observed_order });
    }
    Ok(ConvergenceTable { rule, bound_rule, derivative_norm, rows, warning })
}

/// `[start, 2·start, 4·start, …]` up to and including `end`.
pub fn doubling(start: usize, end: usize) -> Vec<usize> {
    std::iter::successors(Some(start.max(1)), |&n| Some(n * 2)).take_while(|&n| n <= end).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::corpus::{builtin_corpus, Smoothness};
    use crate::kernels::Interval;

    fn entry(function: &str) -> CorpusEntry {
        builtin_corpus().into_iter().find(|e| e.function == function).unwrap()
    }

    #[test]
    fn exp_orders() {
        let exp = entry("exp(x)");
        let ns = [4, 8, 16, 32];
        let t = convergence_table(RuleKind::Trapezoid, &exp, &ns).unwrap();
        assert!(t.observed_orders().iter().all(|o| (1.9..=2.1).contains(o)));
        assert_eq!(t.observed_orders().len(), 3);
        let s = convergence_table(RuleKind::Simpson, &exp, &ns).unwrap();
        assert!(s.observed_orders().iter().all(|o| (3.9..=4.1).contains(o)), "{s:?}");
        for r in t.rows.iter().chain(&s.rows) {
            assert!(r.bound.unwrap() >= r.abs_error * (1.0 - 1e-10));
        }
    }

    #[test]
    fn linear_has_no_orders() {
        let lin = CorpusEntry::new("x", Interval::new(0.0, 1.0).unwrap(), 0.5, Smoothness::Analytic, "x^2/2");
        let t = convergence_table(RuleKind::Trapezoid, &lin, &[1, 2, 4]).unwrap();
        assert!(t.rows.iter().all(|r| r.abs_error == 0.0 && r.observed_order.is_none()));
        assert!(t.rows.iter().all(|r| r.ratio.is_none()));
    }

    #[test]
    fn csv_layout() {
        let t = convergence_table(RuleKind::Midpoint, &entry("x^2"), &[1, 2]).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].ends_with(','));
        assert_eq!(lines[2].split(',').count(), 6);
        assert_eq!(csv, convergence_table(RuleKind::Midpoint, &entry("x^2"), &[1, 2]).unwrap().to_csv());
    }

    #[test]
    fn rough_entries_fall_back() {
        let rough = entry("x^1.5");
        let t = convergence_table(RuleKind::Trapezoid, &rough, &doubling(1, 64)).unwrap();
        assert_eq!(t.bound_rule, Some(RuleKind::FirstOrderTrapezoid));
        assert!(t.warning.is_some());
        assert!(t.rows.iter().all(|r| r.bound.unwrap() >= r.abs_error));
        let s = convergence_table(RuleKind::Simpson, &rough, &[2, 4]).unwrap();
        assert_eq!(s.bound_rule, None);
        assert!(s.rows.iter().all(|r| r.bound.is_none()));
        assert!(s.to_csv().lines().nth(1).unwrap().contains(",,,"));
    }

    #[test]
    fn doubling_sequence() {
        assert_eq!(doubling(4, 32), vec![4, 8, 16, 32]);
        assert_eq!(doubling(1, 1024).len(), 11);
    }
}
