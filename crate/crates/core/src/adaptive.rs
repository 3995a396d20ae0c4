//! Non-uniform partitions and greedy bisection driven by local bounds.
//!
//! Each subinterval carries its own sampled `‖f^(m)‖∞`, so the bound
//! `w^(m+1) N_j / D` shrinks fastest where the derivative is small. The driver
//! repeatedly bisects the subinterval with the largest bound (leftmost on
//! ties) until the bounds sum to at most the tolerance.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::kernels::{Exponent, Interval, RuleKind};
use crate::numeric::{pairwise_sum, polish_and_inflate, sample_abs_max};
use crate::rules::QuadratureEstimate;

/// Ordered breakpoints `a = t_0 < t_1 < … < t_k = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    breakpoints: Vec<f64>,
}

impl Partition {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        let ok = breakpoints.len() >= 2
            && breakpoints.iter().all(|t| t.is_finite())
            && breakpoints.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Partition { breakpoints })
        } else {
            Err(Error::InvalidPartition)
        }
    }

    /// `{a, b}`.
    pub fn trivial(interval: Interval) -> Self {
        Partition { breakpoints: vec![interval.a(), interval.b()] }
    }

    pub fn uniform(interval: Interval, n: usize) -> Result<Self> {
        let grid = crate::composite::UniformPartition::new(interval, n)?;
        Ok(Partition { breakpoints: grid.nodes() })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.breakpoints[0], *self.breakpoints.last().unwrap()).unwrap()
    }

    /// Number of subintervals.
    pub fn len(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subintervals(&self) -> impl Iterator<Item = Interval> + '_ {
        self.breakpoints.windows(2).map(|w| Interval::new(w[0], w[1]).unwrap())
    }

    /// Largest subinterval width among those inside `[lo, hi]`.
    pub fn max_width_within(&self, lo: f64, hi: f64) -> Option<f64> {
        self.subintervals()
            .filter(|iv| iv.a() >= lo && iv.b() <= hi)
            .map(|iv| iv.length())
            .reduce(f64::max)
    }

    /// One breakpoint per line.
    pub fn to_csv(&self) -> String {
        self.breakpoints.iter().map(|t| format!("{t:.16e}\n")).collect()
    }
}

/// A rule applied to one subinterval with its own derivative norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalEstimate {
    pub interval: Interval,
    pub value: f64,
    pub local_norm: f64,
    pub bound: f64,
}

/// Sample points used by [`local_norm`].
pub const LOCAL_SAMPLES: usize = 129;

/// Sampled `sup |fm|` over `sub` (129 points plus golden-section polish),
/// inflated by `1e-6` relative.
pub fn local_norm(fm: &Expression, sub: Interval) -> Result<f64> {
    let found = sample_abs_max(fm, sub.a(), sub.b(), LOCAL_SAMPLES)?;
    Ok(polish_and_inflate(fm, sub.a(), sub.b(), LOCAL_SAMPLES, found))
}

fn check_rule(rule: RuleKind) -> Result<()> {
    if RuleKind::CLASSICAL.contains(&rule) {
        Ok(())
    } else {
        Err(Error::UnsupportedRule { rule: rule.name(), context: "adaptive refinement" })
    }
}

/// Memoised integrand (and slope) evaluation, counting distinct abscissae.
struct Evaluator<'a> {
    f: &'a Expression,
    df: Option<Expression>,
    values: HashMap<u64, f64>,
    slopes: HashMap<u64, f64>,
}

impl<'a> Evaluator<'a> {
    fn new(rule: RuleKind, f: &'a Expression) -> Result<Self> {
        let df = match rule {
            RuleKind::CorrectedTrapezoid => Some(f.differentiate(1)?),
            _ => None,
        };
        Ok(Evaluator { f, df, values: HashMap::new(), slopes: HashMap::new() })
    }

    fn f(&mut self, x: f64) -> Result<f64> {
        if let Some(&v) = self.values.get(&x.to_bits()) {
            return Ok(v);
        }
        let v = self.f.eval(x)?;
        self.values.insert(x.to_bits(), v);
        Ok(v)
    }

    fn df(&mut self, x: f64) -> Result<f64> {
        if let Some(&v) = self.slopes.get(&x.to_bits()) {
            return Ok(v);
        }
        let v = self.df.as_ref().expect("slope requested for corrected trapezoid only").eval(x)?;
        self.slopes.insert(x.to_bits(), v);
        Ok(v)
    }

    fn evaluations(&self) -> usize {
        self.values.len()
    }

    fn derivative_evaluations(&self) -> usize {
        self.slopes.len()
    }

    /// Abscissae `rule` needs on `[lo, hi]`.
    fn nodes(rule: RuleKind, lo: f64, hi: f64) -> Vec<f64> {
        let mid = 0.5 * (lo + hi);
        match rule {
            RuleKind::Midpoint => vec![mid],
            RuleKind::Simpson => vec![lo, mid, hi],
            _ => vec![lo, hi],
        }
    }

    /// How many new integrand evaluations applying `rule` on these pieces costs.
    fn cost(&self, rule: RuleKind, pieces: &[(f64, f64)]) -> usize {
        let mut fresh: Vec<u64> = pieces
            .iter()
            .flat_map(|&(lo, hi)| Self::nodes(rule, lo, hi))
            .map(f64::to_bits)
            .filter(|b| !self.values.contains_key(b))
            .collect();
        fresh.sort_unstable();
        fresh.dedup();
        fresh.len()
    }

    fn rule_value(&mut self, rule: RuleKind, lo: f64, hi: f64) -> Result<f64> {
        let w = hi - lo;
        let mid = 0.5 * (lo + hi);
        Ok(match rule {
            RuleKind::Midpoint => w * self.f(mid)?,
            RuleKind::Trapezoid => w * (self.f(lo)? + self.f(hi)?) / 2.0,
            RuleKind::CorrectedTrapezoid => {
                let t = w * (self.f(lo)? + self.f(hi)?) / 2.0;
                t + 3.0 * w * w * (self.df(lo)? - self.df(hi)?) / 32.0
            }
            RuleKind::Simpson => w * (self.f(lo)? + 4.0 * self.f(mid)? + self.f(hi)?) / 6.0,
            _ => unreachable!("checked by check_rule"),
        })
    }
}

fn local_estimate(
    rule: RuleKind,
    fm: &Expression,
    eval: &mut Evaluator<'_>,
    lo: f64,
    hi: f64,
) -> Result<LocalEstimate> {
    let interval = Interval::new(lo, hi)?;
    let value = eval.rule_value(rule, lo, hi)?;
    let norm = local_norm(fm, interval)?;
    let m = rule.derivative_order() as i32;
    let bound = interval.length().powi(m + 1) * norm / rule.bound_divisor();
    Ok(LocalEstimate { interval, value, local_norm: norm, bound })
}

fn summarise(
    rule: RuleKind,
    locals: &[LocalEstimate],
    eval: &Evaluator<'_>,
) -> QuadratureEstimate {
    let values: Vec<f64> = locals.iter().map(|l| l.value).collect();
    let bounds: Vec<f64> = locals.iter().map(|l| l.bound).collect();
    QuadratureEstimate {
        value: pairwise_sum(&values),
        error_bound: pairwise_sum(&bounds),
        rule,
        derivative_order: rule.derivative_order(),
        derivative_norm: locals.iter().map(|l| l.local_norm).fold(0.0, f64::max),
        norm_exponent: Exponent::Infinity,
        panels: locals.len(),
        evaluations: eval.evaluations(),
        derivative_evaluations: eval.derivative_evaluations(),
    }
}

/// Applies `rule` on every subinterval of `partition` with per-subinterval norms.
pub fn evaluate_on_partition(
    rule: RuleKind,
    f: &Expression,
    partition: &Partition,
) -> Result<(QuadratureEstimate, Vec<LocalEstimate>)> {
    check_rule(rule)?;
    let fm = f.differentiate(rule.derivative_order())?;
    let mut eval = Evaluator::new(rule, f)?;
    let locals = partition
        .subintervals()
        .map(|iv| local_estimate(rule, &fm, &mut eval, iv.a(), iv.b()))
        .collect::<Result<Vec<_>>>()?;
    Ok((summarise(rule, &locals, &eval), locals))
}

/// Default cap on distinct integrand evaluations.
pub const DEFAULT_MAX_EVALS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub tol: f64,
    /// Cap on distinct integrand evaluations; a bisection that would exceed
    /// it is not performed.
    pub max_evals: usize,
    /// Keep an [`IterationRecord`] per refinement step. Each record reduces
    /// over all current leaves, so this makes a run quadratic in its length.
    pub record_history: bool,
}

impl AdaptiveOptions {
    pub fn new(tol: f64) -> Self {
        AdaptiveOptions { tol, max_evals: DEFAULT_MAX_EVALS, record_history: false }
    }
}

/// State of the refinement after one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub subintervals: usize,
    pub value: f64,
    pub bound_sum: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveResult {
    pub estimate: QuadratureEstimate,
    pub partition: Partition,
    pub locals: Vec<LocalEstimate>,
    /// Empty unless [`AdaptiveOptions::record_history`] was set; the first
    /// record is the trivial partition.
    pub history: Vec<IterationRecord>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum AdaptiveError {
    /// The evaluation budget ran out first; carries the partial result.
    #[error(
        "tolerance not reached within the evaluation budget (bound {:e} after {} evaluations)",
        .0.estimate.error_bound,
        .0.estimate.evaluations
    )]
    Budget(Box<AdaptiveResult>),
    #[error(transparent)]
    Failed(#[from] Error),
}

impl AdaptiveError {
    /// The partial result, if the failure was the budget.
    pub fn partial(&self) -> Option<&AdaptiveResult> {
        match self {
            AdaptiveError::Budget(r) => Some(r),
            AdaptiveError::Failed(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    bound: f64,
    lo: f64,
    slot: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // max-heap: larger bound first, then smaller left endpoint
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound).then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// Adaptive refinement with the default options and the given budget.
pub fn adaptive_integrate(
    rule: RuleKind,
    f: &Expression,
    interval: Interval,
    tol: f64,
    max_evals: usize,
) -> std::result::Result<AdaptiveResult, AdaptiveError> {
    let options = AdaptiveOptions { tol, max_evals, record_history: false };
    adaptive_integrate_with(rule, f, interval, &options)
}

/// Bisects the subinterval with the largest local bound until the bounds sum
/// to at most `tol`.
pub fn adaptive_integrate_with(
    rule: RuleKind,
    f: &Expression,
    interval: Interval,
    options: &AdaptiveOptions,
) -> std::result::Result<AdaptiveResult, AdaptiveError> {
    let tol = options.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance(tol).into());
    }
    check_rule(rule)?;
    let fm = f.differentiate(rule.derivative_order()).map_err(Error::from)?;
    let mut eval = Evaluator::new(rule, f)?;

    let mut leaves: Vec<Option<LocalEstimate>> = Vec::new();
    let mut heap = BinaryHeap::new();
    let push = |leaf: LocalEstimate, leaves: &mut Vec<Option<LocalEstimate>>, heap: &mut BinaryHeap<Candidate>| {
        heap.push(Candidate { bound: leaf.bound, lo: leaf.interval.a(), slot: leaves.len() });
        leaves.push(Some(leaf));
    };

    let root = local_estimate(rule, &fm, &mut eval, interval.a(), interval.b())?;
    let mut running = root.bound;
    push(root, &mut leaves, &mut heap);

    let collect = |leaves: &[Option<LocalEstimate>]| {
        let mut live: Vec<LocalEstimate> = leaves.iter().flatten().copied().collect();
        live.sort_by(|x, y| x.interval.a().total_cmp(&y.interval.a()));
        live
    };
    let mut history = Vec::new();
    let mut record = |leaves: &[Option<LocalEstimate>], eval: &Evaluator<'_>| {
        if options.record_history {
            let est = summarise(rule, &collect(leaves), eval);
            history.push(IterationRecord {
                subintervals: est.panels,
                value: est.value,
                bound_sum: est.error_bound,
                evaluations: est.evaluations,
            });
        }
    };
    record(&leaves, &eval);

    let converged = loop {
        if running <= tol {
            // the running sum drifts; confirm with an exact reduction
            let exact = pairwise_sum(&collect(&leaves).iter().map(|l| l.bound).collect::<Vec<_>>());
            if exact <= tol {
                break true;
            }
            running = exact;
        }
        let top = *heap.peek().expect("at least one leaf");
        let parent = leaves[top.slot].expect("heap entries are live");
        let (lo, hi) = (parent.interval.a(), parent.interval.b());
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            // cannot bisect further in floating point
            break false;
        }
        if eval.evaluations() + eval.cost(rule, &[(lo, mid), (mid, hi)]) > options.max_evals {
            break false;
        }
        heap.pop();
        leaves[top.slot] = None;
        let left = local_estimate(rule, &fm, &mut eval, lo, mid)?;
        let right = local_estimate(rule, &fm, &mut eval, mid, hi)?;
        running += left.bound + right.bound - parent.bound;
        push(left, &mut leaves, &mut heap);
        push(right, &mut leaves, &mut heap);
        record(&leaves, &eval);
    };

    let locals = collect(&leaves);
    let mut breakpoints: Vec<f64> = locals.iter().map(|l| l.interval.a()).collect();
    breakpoints.push(interval.b());
    let result = AdaptiveResult {
        estimate: summarise(rule, &locals, &eval),
        partition: Partition::new(breakpoints)?,
        locals,
        history,
        converged,
    };
    if converged {
        Ok(result)
    } else {
        Err(AdaptiveError::Budget(Box::new(result)))
    }
}
