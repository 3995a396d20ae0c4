//! Uniform composite rules.
//!
//! Sums are taken pairwise over the weighted node values in a fixed order
//! and scaled once at the end, so results are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::kernels::{Exponent, Interval, RuleKind};
use crate::numeric::pairwise_sum;
use crate::rules::{check_norm, QuadratureEstimate};

/// `x_i = a + (b-a) i / n` for `0 ≤ i ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformPartition {
    interval: Interval,
    n: usize,
}

impl UniformPartition {
    pub fn new(interval: Interval, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPanelCount(n));
        }
        Ok(UniformPartition { interval, n })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Δx = (b-a)/n`.
    pub fn step(&self) -> f64 {
        self.interval.length() / self.n as f64
    }

    /// Breakpoint `x_i`; `x_0 = a` and `x_n = b` exactly.
    pub fn node(&self, i: usize) -> f64 {
        let iv = self.interval;
        match i {
            0 => iv.a(),
            i if i >= self.n => iv.b(),
            i => iv.a() + iv.length() * i as f64 / self.n as f64,
        }
    }

    /// Midpoint `y_i = a + (b-a)(2i-1)/(2n)` of the `i`-th subinterval, `1 ≤ i ≤ n`.
    pub fn midpoint(&self, i: usize) -> f64 {
        let iv = self.interval;
        iv.a() + iv.length() * (2 * i - 1) as f64 / (2 * self.n) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.node(i)).collect()
    }

    pub fn midpoints(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.midpoint(i)).collect()
    }

    /// The `i`-th subinterval `[x_{i-1}, x_i]`, `1 ≤ i ≤ n`.
    pub fn subinterval(&self, i: usize) -> Interval {
        Interval::new(self.node(i - 1), self.node(i)).expect("nodes strictly increase")
    }
}

fn weighted_sum(f: &Expression, points: impl Iterator<Item = (f64, f64)>) -> Result<f64> {
    let terms = points.map(|(w, x)| Ok(w * f.eval(x)?)).collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&terms))
}

fn trapezoid_sum(f: &Expression, p: &UniformPartition) -> Result<f64> {
    let n = p.n();
    weighted_sum(f, (0..=n).map(|i| (if i == 0 || i == n { 1.0 } else { 2.0 }, p.node(i))))
}

fn composite_estimate(
    rule: RuleKind,
    p: &UniformPartition,
    value: f64,
    error_bound: f64,
    norm: f64,
    evaluations: usize,
    derivative_evaluations: usize,
) -> QuadratureEstimate {
    QuadratureEstimate {
        value,
        error_bound,
        rule,
        derivative_order: rule.derivative_order(),
        derivative_norm: norm,
        norm_exponent: Exponent::Infinity,
        panels: p.n(),
        evaluations,
        derivative_evaluations,
    }
}

/// Composite form of `rule` on the partition; `norm` is `‖f^(m)‖∞` on `[a,b]`.
///
/// Bounds are `(b-a)^3 N/(24n^2)` (midpoint), `/(12n^2)` (trapezoid),
/// `/(32n^2)` (corrected trapezoid), `(b-a)^5 N/(180n^4)` (Simpson) and
/// `(b-a)^2 N/(4n)` for the first-order variants. Simpson needs even `n`
/// and pairs the subintervals `[x_{2i-2}, x_{2i}]`.
pub fn composite_rule(
    rule: RuleKind,
    f: &Expression,
    partition: &UniformPartition,
    norm: f64,
) -> Result<QuadratureEstimate> {
    let norm = check_norm(norm)?;
    let p = partition;
    let n = p.n();
    let nf = n as f64;
    let len = p.interval().length();
    let est = match rule {
        RuleKind::CorrectedTrapezoid => return composite_corrected_trapezoid(f, p, norm),
        RuleKind::Midpoint | RuleKind::FirstOrderMidpoint => {
            let s = weighted_sum(f, (1..=n).map(|i| (1.0, p.midpoint(i))))?;
            let bound = if rule == RuleKind::Midpoint {
                len.powi(3) * norm / (24.0 * nf * nf)
            } else {
                len * len * norm / (4.0 * nf)
            };
            composite_estimate(rule, p, len * s / nf, bound, norm, n, 0)
        }
        RuleKind::Trapezoid | RuleKind::FirstOrderTrapezoid => {
            let s = trapezoid_sum(f, p)?;
            let bound = if rule == RuleKind::Trapezoid {
                len.powi(3) * norm / (12.0 * nf * nf)
            } else {
                len * len * norm / (4.0 * nf)
            };
            composite_estimate(rule, p, len * s / (2.0 * nf), bound, norm, n + 1, 0)
        }
        RuleKind::Simpson => {
            if !n.is_multiple_of(2) {
                return Err(Error::OddSimpsonPanels(n));
            }
            let weight = |i: usize| match i {
                0 => 1.0,
                i if i == n => 1.0,
                i if i % 2 == 1 => 4.0,
                _ => 2.0,
            };
            let s = weighted_sum(f, (0..=n).map(|i| (weight(i), p.node(i))))?;
            let bound = len.powi(5) * norm / (180.0 * nf.powi(4));
            composite_estimate(rule, p, len * s / (3.0 * nf), bound, norm, n + 1, 0)
        }
    };
    Ok(est)
}

/// `3(b-a)^2 [d_a - d_b] / (32 n^2)`: the endpoint correction left after the
/// interior derivative terms cancel.
pub fn endpoint_correction(interval: Interval, n: usize, da: f64, db: f64) -> f64 {
    let len = interval.length();
    let nf = n as f64;
    3.0 * len * len * (da - db) / (32.0 * nf * nf)
}

/// Composite corrected trapezoid: composite trapezoid plus the endpoint
/// correction. Only `f'(a)` and `f'(b)` are evaluated.
pub fn composite_corrected_trapezoid(
    f: &Expression,
    partition: &UniformPartition,
    norm: f64,
) -> Result<QuadratureEstimate> {
    let norm = check_norm(norm)?;
    let df = f.differentiate(1)?;
    let iv = partition.interval();
    let (da, db) = (df.eval(iv.a())?, df.eval(iv.b())?);
    corrected_from_slopes(f, partition, norm, da, db, 0, 2)
}

fn corrected_from_slopes(
    f: &Expression,
    p: &UniformPartition,
    norm: f64,
    da: f64,
    db: f64,
    extra_evaluations: usize,
    derivative_evaluations: usize,
) -> Result<QuadratureEstimate> {
    let n = p.n();
    let nf = n as f64;
    let len = p.interval().length();
    let trapezoid = len * trapezoid_sum(f, p)? / (2.0 * nf);
    let value = trapezoid + endpoint_correction(p.interval(), n, da, db);
    let bound = len.powi(3) * norm / (32.0 * nf * nf);
    Ok(composite_estimate(
        RuleKind::CorrectedTrapezoid,
        p,
        value,
        bound,
        norm,
        n + 1 + extra_evaluations,
        derivative_evaluations,
    ))
}

/// Composite corrected trapezoid with one-sided difference quotients
/// `[f(a+h) - f(a)]/h` and `[f(b) - f(b-h)]/h` in place of `f'(a)`, `f'(b)`.
///
/// Each quotient is within `‖f''‖∞ h/2` of the true slope, so the bound
/// grows by `3(b-a)^2/(32n^2) · ‖f''‖∞ h`.
pub fn composite_corrected_trapezoid_fd(
    f: &Expression,
    partition: &UniformPartition,
    norm: f64,
    h: f64,
) -> Result<QuadratureEstimate> {
    let norm = check_norm(norm)?;
    let iv = partition.interval();
    let (a, b) = (iv.a(), iv.b());
    if !(h.is_finite() && h > 0.0 && a + h < b) {
        return Err(Error::InvalidStep { h, a, b });
    }
    let da = (f.eval(a + h)? - f.eval(a)?) / h;
    let db = (f.eval(b)? - f.eval(b - h)?) / h;
    let mut est = corrected_from_slopes(f, partition, norm, da, db, 2, 0)?;
    let nf = partition.n() as f64;
    est.error_bound += 3.0 * iv.length().powi(2) / (32.0 * nf * nf) * (norm * h);
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::simple_rule;

    fn f(text: &str) -> Expression {
        text.parse().unwrap()
    }

    fn grid(a: f64, b: f64, n: usize) -> UniformPartition {
        UniformPartition::new(Interval::new(a, b).unwrap(), n).unwrap()
    }

    #[test]
    fn partition_geometry() {
        let p = grid(0.1, 0.7, 7);
        let nodes = p.nodes();
        assert_eq!(nodes[0], 0.1);
        assert_eq!(nodes[7], 0.7);
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        for i in 1..=7 {
            let y = p.midpoint(i);
            let mid = 0.5 * (nodes[i - 1] + nodes[i]);
            assert!((y - mid).abs() <= 1e-15 * y.abs());
        }
        assert!(UniformPartition::new(Interval::new(0.0, 1.0).unwrap(), 0).is_err());
    }

    #[test]
    fn composite_examples() {
        let sq = f("x^2");
        let t = composite_rule(RuleKind::Trapezoid, &sq, &grid(0.0, 1.0, 2), 2.0).unwrap();
        assert_eq!((t.value, t.error_bound), (0.375, 1.0 / 24.0));
        assert!((t.true_error(1.0 / 3.0) - 1.0 / 24.0).abs() < 1e-16);

        let m = composite_rule(RuleKind::Midpoint, &sq, &grid(0.0, 1.0, 2), 2.0).unwrap();
        assert_eq!(m.value, 0.3125);
        assert!((m.true_error(1.0 / 3.0) - m.error_bound).abs() < 1e-16);
        assert_eq!(m.error_bound, 1.0 / 48.0);

        let s = composite_rule(RuleKind::Simpson, &f("x^4"), &grid(0.0, 1.0, 2), 24.0).unwrap();
        assert!((s.value - 5.0 / 24.0).abs() < 1e-16);
        assert_eq!(s.error_bound, 1.0 / 120.0);
        assert!(matches!(
            composite_rule(RuleKind::Simpson, &sq, &grid(0.0, 1.0, 3), 0.0),
            Err(Error::OddSimpsonPanels(3))
        ));
    }

    #[test]
    fn single_panel_equals_simple_rule() {
        let g = f("exp(x)*sin(3*x)");
        let iv = Interval::new(-0.4, 1.3).unwrap();
        for rule in RuleKind::ALL {
            if rule == RuleKind::Simpson {
                continue;
            }
            let c = composite_rule(rule, &g, &UniformPartition::new(iv, 1).unwrap(), 5.0).unwrap();
            let s = simple_rule(rule, &g, iv, 5.0).unwrap();
            assert!((c.value - s.value).abs() <= 1e-15 * s.value.abs(), "{rule}");
            assert!((c.error_bound - s.error_bound).abs() <= 1e-15 * s.error_bound, "{rule}");
        }
        let two = composite_rule(RuleKind::Simpson, &g, &UniformPartition::new(iv, 2).unwrap(), 5.0)
            .unwrap();
        let simple = simple_rule(RuleKind::Simpson, &g, iv, 5.0).unwrap();
        assert!((two.value - simple.value).abs() <= 1e-15 * simple.value.abs());
    }

    #[test]
    fn additivity() {
        let g = f("1/(1+x^2)");
        let p = grid(-1.0, 2.0, 12);
        for rule in [RuleKind::Midpoint, RuleKind::Trapezoid] {
            let whole = composite_rule(rule, &g, &p, 1.0).unwrap().value;
            let parts: f64 =
                (1..=12).map(|i| simple_rule(rule, &g, p.subinterval(i), 1.0).unwrap().value).sum();
            assert!((whole - parts).abs() <= 1e-13 * whole.abs(), "{rule}");
        }
        let whole = composite_rule(RuleKind::Simpson, &g, &p, 1.0).unwrap().value;
        let parts: f64 = (1..=6)
            .map(|i| {
                let iv = Interval::new(p.node(2 * i - 2), p.node(2 * i)).unwrap();
                simple_rule(RuleKind::Simpson, &g, iv, 1.0).unwrap().value
            })
            .sum();
        assert!((whole - parts).abs() <= 1e-12 * whole.abs());
    }

    #[test]
    fn corrected_trapezoid_examples() {
        let e = composite_corrected_trapezoid(&f("x^2"), &grid(0.0, 1.0, 2), 2.0).unwrap();
        assert_eq!(e.value, 0.328125);
        assert_eq!(e.error_bound, 1.0 / 64.0);
        assert!((e.true_error(1.0 / 3.0) - 1.0 / 192.0).abs() < 1e-16);
        assert_eq!(e.derivative_evaluations, 2);
        let big = composite_corrected_trapezoid(&f("x^2"), &grid(0.0, 1.0, 500), 2.0).unwrap();
        assert_eq!(big.derivative_evaluations, 2);
        let lin = composite_corrected_trapezoid(&f("3*x-1"), &grid(0.0, 2.0, 5), 0.0).unwrap();
        assert!((lin.value - 4.0).abs() < 1e-15);
        for n in [1, 2, 3, 10, 64] {
            let p = grid(0.0, 2.0, n);
            let t = composite_rule(RuleKind::Trapezoid, &f("exp(x)"), &p, 7.5).unwrap();
            let c = composite_corrected_trapezoid(&f("exp(x)"), &p, 7.5).unwrap();
            assert!((c.error_bound / t.error_bound - 0.375).abs() < 1e-15);
        }
    }

    #[test]
    fn telescoping_against_sum_of_simple_corrections() {
        let g = f("sin(2*x)+x^3");
        let dg = g.differentiate(1).unwrap();
        let p = grid(0.3, 1.9, 9);
        let interior: f64 = (1..=9)
            .map(|i| {
                let iv = p.subinterval(i);
                let len = iv.length();
                3.0 * len * len * (dg.eval(iv.a()).unwrap() - dg.eval(iv.b()).unwrap()) / 32.0
            })
            .sum();
        let closed = endpoint_correction(p.interval(), 9, dg.eval(0.3).unwrap(), dg.eval(1.9).unwrap());
        assert!((interior - closed).abs() <= 1e-14 * closed.abs().max(1e-300));
    }

    #[test]
    fn finite_difference_variant() {
        let sq = f("x^2");
        let p = grid(0.0, 1.0, 2);
        let exact = composite_corrected_trapezoid(&sq, &p, 2.0).unwrap();
        let fd = composite_corrected_trapezoid_fd(&sq, &p, 2.0, 1e-4).unwrap();
        assert!((fd.value - exact.value).abs() <= 2e-5);
        assert!(fd.error_bound > exact.error_bound);
        assert!(fd.covers(1.0 / 3.0, 0.0));

        let lin = f("2*x+1");
        let a = composite_corrected_trapezoid(&lin, &p, 0.0).unwrap();
        let b = composite_corrected_trapezoid_fd(&lin, &p, 0.0, 1e-3).unwrap();
        // difference quotients of a linear function are exact up to rounding
        assert!((a.value - b.value).abs() < 1e-12);

        let g = f("exp(x)");
        let target = composite_corrected_trapezoid(&g, &p, 3.0).unwrap().value;
        let mut last = f64::INFINITY;
        for h in [1e-2, 1e-3, 1e-4, 1e-5] {
            let gap = (composite_corrected_trapezoid_fd(&g, &p, 3.0, h).unwrap().value - target).abs();
            assert!(gap < last);
            last = gap;
        }

        for h in [0.0, -1e-3, 1.0, 2.0, f64::NAN] {
            assert!(matches!(
                composite_corrected_trapezoid_fd(&sq, &p, 2.0, h),
                Err(Error::InvalidStep { .. })
            ));
        }
    }

    #[test]
    fn deterministic() {
        let g = f("cos(x)*exp(-x)");
        let p = grid(0.0, 3.0, 999);
        let a = composite_rule(RuleKind::Midpoint, &g, &p, 1.0).unwrap();
        let b = composite_rule(RuleKind::Midpoint, &g, &p, 1.0).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
