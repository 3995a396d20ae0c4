//! Single-interval rules and their a-priori bounds.
//!
//! Every function takes the relevant derivative norm `‖f^(m)‖∞` from the
//! caller; [`crate::harness::sup_norm`] computes one from the symbolic
//! derivative when no analytic value is at hand.

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::kernels::{kernel_for, Exponent, HolderPair, Interval, RuleKind};

/// A rule value together with its error bound and bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub rule: RuleKind,
    pub derivative_order: u32,
    pub derivative_norm: f64,
    /// Exponent `r` of the norm `‖f^(m)‖_r` in `derivative_norm`.
    pub norm_exponent: Exponent,
    /// Number of subintervals the value was assembled from.
    pub panels: usize,
    pub evaluations: usize,
    pub derivative_evaluations: usize,
}

impl QuadratureEstimate {
    /// `|exact - value|`.
    pub fn true_error(&self, exact: f64) -> f64 {
        (exact - self.value).abs()
    }

    /// Whether the bound covers the error against `exact`, up to `rel_slack`.
    pub fn covers(&self, exact: f64, rel_slack: f64) -> bool {
        self.true_error(exact) <= self.error_bound * (1.0 + rel_slack)
    }
}

pub(crate) fn check_norm(norm: f64) -> Result<f64> {
    if norm.is_finite() && norm >= 0.0 {
        Ok(norm)
    } else {
        Err(Error::InvalidNorm(norm))
    }
}

/// `(b-a)^(m+1) · norm / D`, the uniform-norm bound of a simple rule.
pub fn simple_bound(rule: RuleKind, interval: Interval, norm: f64) -> f64 {
    let m = rule.derivative_order() as i32;
    interval.length().powi(m + 1) * norm / rule.bound_divisor()
}

fn estimate(
    rule: RuleKind,
    interval: Interval,
    value: f64,
    norm: f64,
    evaluations: usize,
    derivative_evaluations: usize,
) -> QuadratureEstimate {
    QuadratureEstimate {
        value,
        error_bound: simple_bound(rule, interval, norm),
        rule,
        derivative_order: rule.derivative_order(),
        derivative_norm: norm,
        norm_exponent: Exponent::Infinity,
        panels: 1,
        evaluations,
        derivative_evaluations,
    }
}

fn midpoint_value(f: &Expression, iv: Interval) -> Result<f64> {
    Ok(iv.length() * f.eval(iv.midpoint())?)
}

fn trapezoid_value(f: &Expression, iv: Interval) -> Result<f64> {
    Ok(iv.length() * (f.eval(iv.a())? + f.eval(iv.b())?) / 2.0)
}

/// `(b-a) f((a+b)/2)`, bound `(b-a)^3 ‖f''‖∞ / 24`.
pub fn midpoint(f: &Expression, interval: Interval, f2_norm: f64) -> Result<QuadratureEstimate> {
    let norm = check_norm(f2_norm)?;
    Ok(estimate(RuleKind::Midpoint, interval, midpoint_value(f, interval)?, norm, 1, 0))
}

/// `(b-a)[f(a)+f(b)]/2`, bound `(b-a)^3 ‖f''‖∞ / 12`.
pub fn trapezoid(f: &Expression, interval: Interval, f2_norm: f64) -> Result<QuadratureEstimate> {
    let norm = check_norm(f2_norm)?;
    Ok(estimate(RuleKind::Trapezoid, interval, trapezoid_value(f, interval)?, norm, 2, 0))
}

/// Trapezoid plus `3(b-a)^2 [f'(a) - f'(b)] / 32`, bound `(b-a)^3 ‖f''‖∞ / 32`.
///
/// `f'` comes from symbolic differentiation.
pub fn corrected_trapezoid(
    f: &Expression,
    interval: Interval,
    f2_norm: f64,
) -> Result<QuadratureEstimate> {
    let norm = check_norm(f2_norm)?;
    let df = f.differentiate(1)?;
    let len = interval.length();
    let correction = 3.0 * len * len * (df.eval(interval.a())? - df.eval(interval.b())?) / 32.0;
    let value = trapezoid_value(f, interval)? + correction;
    Ok(estimate(RuleKind::CorrectedTrapezoid, interval, value, norm, 2, 2))
}

/// `(b-a)[f(a) + 4f(c) + f(b)]/6`, bound `(b-a)^5 ‖f''''‖∞ / 2880`.
pub fn simpson(f: &Expression, interval: Interval, f4_norm: f64) -> Result<QuadratureEstimate> {
    let norm = check_norm(f4_norm)?;
    let (fa, fc, fb) = (f.eval(interval.a())?, f.eval(interval.midpoint())?, f.eval(interval.b())?);
    let value = interval.length() * (fa + 4.0 * fc + fb) / 6.0;
    Ok(estimate(RuleKind::Simpson, interval, value, norm, 3, 0))
}

/// Trapezoid value with the bound `(b-a)^2 ‖f'‖∞ / 4`, usable when `f` is only C¹.
pub fn first_order_trapezoid_bound(
    f: &Expression,
    interval: Interval,
    f1_norm: f64,
) -> Result<QuadratureEstimate> {
    let norm = check_norm(f1_norm)?;
    let value = trapezoid_value(f, interval)?;
    Ok(estimate(RuleKind::FirstOrderTrapezoid, interval, value, norm, 2, 0))
}

/// Midpoint value with the bound `(b-a)^2 ‖f'‖∞ / 4`.
pub fn first_order_midpoint_bound(
    f: &Expression,
    interval: Interval,
    f1_norm: f64,
) -> Result<QuadratureEstimate> {
    let norm = check_norm(f1_norm)?;
    let value = midpoint_value(f, interval)?;
    Ok(estimate(RuleKind::FirstOrderMidpoint, interval, value, norm, 1, 0))
}

/// Dispatches to the rule named by `rule`; `norm` is `‖f^(m)‖∞` for its `m`.
pub fn simple_rule(
    rule: RuleKind,
    f: &Expression,
    interval: Interval,
    norm: f64,
) -> Result<QuadratureEstimate> {
    match rule {
        RuleKind::Midpoint => midpoint(f, interval, norm),
        RuleKind::Trapezoid => trapezoid(f, interval, norm),
        RuleKind::CorrectedTrapezoid => corrected_trapezoid(f, interval, norm),
        RuleKind::Simpson => simpson(f, interval, norm),
        RuleKind::FirstOrderTrapezoid => first_order_trapezoid_bound(f, interval, norm),
        RuleKind::FirstOrderMidpoint => first_order_midpoint_bound(f, interval, norm),
    }
}

/// Like [`simple_rule`] but with `‖f^(m)‖_r · ‖p‖_s / m!` as the bound.
pub fn simple_rule_holder(
    rule: RuleKind,
    f: &Expression,
    interval: Interval,
    norm_r: f64,
    exponents: HolderPair,
) -> Result<QuadratureEstimate> {
    let mut est = simple_rule(rule, f, interval, check_norm(norm_r)?)?;
    est.error_bound = kernel_for(rule, interval).error_bound(norm_r, exponents)?;
    est.norm_exponent = exponents.r;
    Ok(est)
}
