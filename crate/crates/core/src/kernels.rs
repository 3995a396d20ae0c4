//! Integration-by-parts error kernels.
//!
//! For each rule there is a monic piecewise polynomial `p` of degree `m`
//! (the order of the derivative the error depends on) such that
//!
//! ```text
//! ∫_a^b f(x) dx = rule(f) + (-1)^m / m! · ∫_a^b f^(m)(x) p(x) dx.
//! ```
//!
//! The kernels are
//!
//! | rule                  | m | pieces                                                     |
//! |-----------------------|---|------------------------------------------------------------|
//! | trapezoid             | 2 | `(x-c)^2 - (b-a)^2/4`                                      |
//! | corrected trapezoid   | 2 | `(x-c)^2 - (b-a)^2/16`                                     |
//! | midpoint              | 2 | `(x-a)^2` on `[a,c]`, `(x-b)^2` on `[c,b]`                 |
//! | simpson               | 4 | `(x-a)^3 (x-a/3-2b/3)` on `[a,c]`, `(x-b)^3 (x-2a/3-b/3)` on `[c,b]` |
//! | first-order trapezoid | 1 | `x - c`                                                    |
//! | first-order midpoint  | 1 | `x - a` on `[a,c]`, `x - b` on `[c,b]`                     |
//!
//! with `c = (a+b)/2`. Hölder's inequality then bounds the error by
//! `‖f^(m)‖_r ‖p‖_s / m!` for conjugate `r`, `s`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::integrate_relative;
use crate::poly::Polynomial;

/// A compact interval `[a, b]` with finite `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(Error::DegenerateInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Midpoint,
    Trapezoid,
    CorrectedTrapezoid,
    Simpson,
    /// Trapezoid values with the `‖f'‖∞` bound, for integrands that are only C¹.
    FirstOrderTrapezoid,
    /// Midpoint values with the `‖f'‖∞` bound.
    FirstOrderMidpoint,
}

impl RuleKind {
    /// The four rules whose bounds use `f''` or `f''''`.
    pub const CLASSICAL: [RuleKind; 4] = [
        RuleKind::Midpoint,
        RuleKind::Trapezoid,
        RuleKind::CorrectedTrapezoid,
        RuleKind::Simpson,
    ];

    pub const ALL: [RuleKind; 6] = [
        RuleKind::Midpoint,
        RuleKind::Trapezoid,
        RuleKind::CorrectedTrapezoid,
        RuleKind::Simpson,
        RuleKind::FirstOrderTrapezoid,
        RuleKind::FirstOrderMidpoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Midpoint => "midpoint",
            RuleKind::Trapezoid => "trapezoid",
            RuleKind::CorrectedTrapezoid => "corrected-trapezoid",
            RuleKind::Simpson => "simpson",
            RuleKind::FirstOrderTrapezoid => "first-order-trapezoid",
            RuleKind::FirstOrderMidpoint => "first-order-midpoint",
        }
    }

    /// Order `m` of the derivative in the error representation.
    pub fn derivative_order(self) -> u32 {
        match self {
            RuleKind::FirstOrderTrapezoid | RuleKind::FirstOrderMidpoint => 1,
            RuleKind::Simpson => 4,
            _ => 2,
        }
    }

    /// `m!`.
    pub fn factorial(self) -> f64 {
        match self.derivative_order() {
            1 => 1.0,
            2 => 2.0,
            _ => 24.0,
        }
    }

    /// `D` in `‖p‖₁ = (b-a)^(m+1) / D`.
    pub fn l1_denominator(self) -> f64 {
        match self {
            RuleKind::Midpoint => 12.0,
            RuleKind::Trapezoid => 6.0,
            RuleKind::CorrectedTrapezoid => 16.0,
            RuleKind::Simpson => 120.0,
            RuleKind::FirstOrderTrapezoid | RuleKind::FirstOrderMidpoint => 4.0,
        }
    }

    /// Simple-rule bound is `(b-a)^(m+1) ‖f^(m)‖∞ / bound_divisor`:
    /// 24, 12, 32, 2880 and 4.
    pub fn bound_divisor(self) -> f64 {
        self.factorial() * self.l1_denominator()
    }

    /// The rule whose values this one shares, with the `f'`-based bound.
    pub fn first_order_variant(self) -> Option<RuleKind> {
        match self {
            RuleKind::Trapezoid | RuleKind::FirstOrderTrapezoid => Some(RuleKind::FirstOrderTrapezoid),
            RuleKind::Midpoint | RuleKind::FirstOrderMidpoint => Some(RuleKind::FirstOrderMidpoint),
            _ => None,
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownRule(pub String);

impl fmt::Display for UnknownRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown rule `{}` (expected midpoint, trapezoid, corrected-trapezoid, simpson, \
             first-order-trapezoid or first-order-midpoint)",
            self.0
        )
    }
}

impl std::error::Error for UnknownRule {}

impl FromStr for RuleKind {
    type Err = UnknownRule;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        RuleKind::ALL
            .into_iter()
            .find(|r| r.name() == norm)
            .or(match norm.as_str() {
                "trapezoidal" => Some(RuleKind::Trapezoid),
                "ct" | "corrected-trapezoidal" => Some(RuleKind::CorrectedTrapezoid),
                _ => None,
            })
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// A Lebesgue exponent in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(s: f64) -> Result<Self> {
        if s.is_finite() && s >= 1.0 {
            Ok(Exponent::Finite(s))
        } else if s == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else {
            Err(Error::InvalidExponent(s))
        }
    }

    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(s) => 1.0 / s,
            Exponent::Infinity => 0.0,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(s) => s,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// The exponent `r` with `1/r + 1/s = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(s) => Exponent::Finite(s / (s - 1.0)),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(s) => write!(f, "{s}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::InvalidExponent(f64::NAN))
                .and_then(Exponent::finite),
        }
    }
}

/// Conjugate exponents: the derivative is measured in `L^r`, the kernel in `L^s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderPair {
    pub r: Exponent,
    pub s: Exponent,
}

impl HolderPair {
    pub fn new(r: Exponent, s: Exponent) -> Result<Self> {
        if ((r.reciprocal() + s.reciprocal()) - 1.0).abs() > 1e-12 {
            return Err(Error::ConjugateMismatch { r: r.value(), s: s.value() });
        }
        Ok(HolderPair { r, s })
    }

    /// `r = ∞`, `s = 1`: the uniform-norm bounds.
    pub fn uniform() -> Self {
        HolderPair { r: Exponent::Infinity, s: Exponent::Finite(1.0) }
    }

    pub fn for_kernel_exponent(s: Exponent) -> Self {
        HolderPair { r: s.conjugate(), s }
    }
}

/// Which one-sided limit to take at a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One polynomial piece `∏ (x - r_i)` of a kernel, valid on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPiece {
    pub lo: f64,
    pub hi: f64,
    /// Roots with multiplicity.
    pub roots: Vec<f64>,
    /// The same polynomial in the monomial basis.
    pub poly: Polynomial,
}

impl KernelPiece {
    pub fn new(lo: f64, hi: f64, roots: Vec<f64>) -> Self {
        let poly = Polynomial::from_roots(&roots);
        KernelPiece { lo, hi, roots, poly }
    }

    /// `p(x)` from the factored form, which stays accurate away from the origin.
    pub fn eval(&self, x: f64) -> f64 {
        self.roots.iter().map(|r| x - r).product()
    }
}

/// Error kernel of a rule on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    rule: RuleKind,
    interval: Interval,
    pieces: Vec<KernelPiece>,
}

/// Builds the kernel of `rule` on `interval`.
pub fn kernel_for(rule: RuleKind, interval: Interval) -> KernelSpec {
    let (a, b) = (interval.a(), interval.b());
    let c = interval.midpoint();
    let len = interval.length();
    let whole = |roots: Vec<f64>| vec![KernelPiece::new(a, b, roots)];
    let split = |left: Vec<f64>, right: Vec<f64>| {
        vec![KernelPiece::new(a, c, left), KernelPiece::new(c, b, right)]
    };
    let pieces = match rule {
        RuleKind::Trapezoid => whole(vec![a, b]),
        // (x - c)^2 - (b-a)^2/16
        RuleKind::CorrectedTrapezoid => whole(vec![c - 0.25 * len, c + 0.25 * len]),
        RuleKind::Midpoint => split(vec![a, a], vec![b, b]),
        RuleKind::Simpson => split(
            vec![a, a, a, a / 3.0 + 2.0 * b / 3.0],
            vec![b, b, b, 2.0 * a / 3.0 + b / 3.0],
        ),
        RuleKind::FirstOrderTrapezoid => whole(vec![c]),
        RuleKind::FirstOrderMidpoint => split(vec![a], vec![b]),
    };
    KernelSpec { rule, interval, pieces }
}

impl KernelSpec {
    pub fn rule(&self) -> RuleKind {
        self.rule
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn pieces(&self) -> &[KernelPiece] {
        &self.pieces
    }

    pub fn derivative_order(&self) -> u32 {
        self.rule.derivative_order()
    }

    pub fn factorial(&self) -> f64 {
        self.rule.factorial()
    }

    /// `(-1)^m`: sign in front of `∫ f^(m) p / m!` in the error identity.
    pub fn representation_sign(&self) -> f64 {
        if self.derivative_order().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Breakpoints `a = t_0 < … < t_k = b` of the pieces.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.pieces.iter().map(|p| p.lo).collect();
        pts.push(self.interval.b());
        pts
    }

    fn piece_at(&self, x: f64, side: Side) -> &KernelPiece {
        let found = match side {
            Side::Left => self.pieces.iter().find(|p| p.lo < x && x <= p.hi),
            Side::Right => self.pieces.iter().find(|p| p.lo <= x && x < p.hi),
        };
        found.unwrap_or_else(|| {
            if x <= self.interval.a() {
                &self.pieces[0]
            } else {
                self.pieces.last().expect("at least one piece")
            }
        })
    }

    /// `p(x)`; at an interior breakpoint the left piece is used.
    pub fn eval(&self, x: f64) -> f64 {
        self.piece_at(x, Side::Left).eval(x)
    }

    /// One-sided value of `p^(order)(x)`.
    pub fn eval_derivative(&self, order: usize, x: f64, side: Side) -> f64 {
        let piece = self.piece_at(x, side);
        if order == 0 {
            return piece.eval(x);
        }
        piece.poly.nth_derivative(order).eval(x)
    }

    /// `∫_a^b |p|`, from the closed forms `(b-a)^(m+1) / D`.
    pub fn l1_norm(&self) -> f64 {
        let len = self.interval.length();
        len.powi(self.derivative_order() as i32 + 1) / self.rule.l1_denominator()
    }

    /// `‖p‖_s`. `s = 1`, `2` and `∞` use closed forms; other `s` integrate
    /// `|p|^s` adaptively between the roots of each piece.
    pub fn s_norm(&self, s: Exponent) -> Result<f64> {
        let len = self.interval.length();
        match s {
            Exponent::Finite(v) if !(v.is_finite() && v >= 1.0) => Err(Error::InvalidExponent(v)),
            Exponent::Finite(1.0) => Ok(self.l1_norm()),
            Exponent::Finite(2.0) => {
                let squared = match self.rule {
                    RuleKind::Trapezoid => len.powi(5) / 30.0,
                    RuleKind::CorrectedTrapezoid => 23.0 * len.powi(5) / 3840.0,
                    RuleKind::Midpoint => len.powi(5) / 80.0,
                    RuleKind::Simpson => len.powi(9) / 8064.0,
                    RuleKind::FirstOrderTrapezoid | RuleKind::FirstOrderMidpoint => len.powi(3) / 12.0,
                };
                Ok(squared.sqrt())
            }
            Exponent::Finite(v) => {
                let mut total = 0.0;
                for piece in &self.pieces {
                    let mut cuts = vec![piece.lo];
                    cuts.extend(
                        piece.poly.real_roots_in(piece.lo, piece.hi).into_iter().filter(|r| {
                            *r > piece.lo && *r < piece.hi
                        }),
                    );
                    cuts.push(piece.hi);
                    for w in cuts.windows(2) {
                        let g = |x: f64| piece.eval(x).abs().powf(v);
                        total += integrate_relative(&g, w[0], w[1], 1e-13);
                    }
                }
                Ok(total.powf(1.0 / v))
            }
            Exponent::Infinity => Ok(match self.rule {
                RuleKind::Trapezoid | RuleKind::Midpoint => len * len / 4.0,
                RuleKind::CorrectedTrapezoid => 3.0 * len * len / 16.0,
                RuleKind::Simpson => len.powi(4) / 48.0,
                RuleKind::FirstOrderTrapezoid | RuleKind::FirstOrderMidpoint => len / 2.0,
            }),
        }
    }

    /// `‖f^(m)‖_r · ‖p‖_s / m!` where `derivative_norm = ‖f^(m)‖_r`.
    pub fn error_bound(&self, derivative_norm: f64, exponents: HolderPair) -> Result<f64> {
        if !(derivative_norm.is_finite() && derivative_norm >= 0.0) {
            return Err(Error::InvalidNorm(derivative_norm));
        }
        let pair = HolderPair::new(exponents.r, exponents.s)?;
        Ok(derivative_norm * self.s_norm(pair.s)? / self.factorial())
    }
}

/// A named scalar condition on a kernel: `actual` should equal `expected`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCheck {
    pub label: &'static str,
    pub actual: f64,
    pub expected: f64,
    /// Natural magnitude of the quantity, used to scale the tolerance.
    pub scale: f64,
}

impl BoundaryCheck {
    pub fn holds(&self, rel_tol: f64) -> bool {
        (self.actual - self.expected).abs() <= rel_tol * self.scale.max(f64::MIN_POSITIVE)
    }
}

impl KernelSpec {
    /// Endpoint and jump conditions that characterise the kernel.
    ///
    /// Trapezoid: `p(a) = p(b) = 0`, `-p'(a) = p'(b) = b-a`.
    /// Midpoint: `p`, `p'` vanish at both ends, `p'(c-) - p'(c+) = 2(b-a)`.
    /// Simpson: `p`, `p'`, `p''` vanish at both ends and are continuous at `c`,
    /// `p'''(a) = -4(b-a)`, `p'''(b) = 4(b-a)`, `p'''(c-) - p'''(c+) = 16(b-a)`.
    /// Other rules have no conditions listed.
    pub fn boundary_conditions(&self) -> Vec<BoundaryCheck> {
        let (a, b) = (self.interval.a(), self.interval.b());
        let c = self.interval.midpoint();
        let len = self.interval.length();
        let m = self.derivative_order() as i32;
        let at = |order: usize, x: f64, side: Side| self.eval_derivative(order, x, side);
        let jump = |order: usize| at(order, c, Side::Left) - at(order, c, Side::Right);
        // a k-th derivative has natural size len^(m-k)
        let check = |label, actual, expected, order: i32| BoundaryCheck {
            label,
            actual,
            expected,
            scale: len.powi(m - order),
        };
        match self.rule {
            RuleKind::Trapezoid => vec![
                check("p(a)", at(0, a, Side::Right), 0.0, 0),
                check("p(b)", at(0, b, Side::Left), 0.0, 0),
                check("-p'(a)", -at(1, a, Side::Right), len, 1),
                check("p'(b)", at(1, b, Side::Left), len, 1),
            ],
            RuleKind::Midpoint => vec![
                check("p(a)", at(0, a, Side::Right), 0.0, 0),
                check("p'(a)", at(1, a, Side::Right), 0.0, 1),
                check("p(b)", at(0, b, Side::Left), 0.0, 0),
                check("p'(b)", at(1, b, Side::Left), 0.0, 1),
                check("p'(c-) - p'(c+)", jump(1), 2.0 * len, 1),
            ],
            RuleKind::Simpson => vec![
                check("p(a)", at(0, a, Side::Right), 0.0, 0),
                check("p'(a)", at(1, a, Side::Right), 0.0, 1),
                check("p''(a)", at(2, a, Side::Right), 0.0, 2),
                check("p(b)", at(0, b, Side::Left), 0.0, 0),
                check("p'(b)", at(1, b, Side::Left), 0.0, 1),
                check("p''(b)", at(2, b, Side::Left), 0.0, 2),
                check("p'''(a)", at(3, a, Side::Right), -4.0 * len, 3),
                check("p'''(b)", at(3, b, Side::Left), 4.0 * len, 3),
                check("p'''(c-) - p'''(c+)", jump(3), 16.0 * len, 3),
                check("p(c-) - p(c+)", jump(0), 0.0, 0),
                check("p'(c-) - p'(c+)", jump(1), 0.0, 1),
                check("p''(c-) - p''(c+)", jump(2), 0.0, 2),
            ],
            _ => Vec::new(),
        }
    }
}

/// Free-function form of [`KernelSpec::l1_norm`].
pub fn kernel_l1_norm(kernel: &KernelSpec) -> f64 {
    kernel.l1_norm()
}

/// Free-function form of [`KernelSpec::s_norm`].
pub fn kernel_s_norm(kernel: &KernelSpec, s: Exponent) -> Result<f64> {
    kernel.s_norm(s)
}

/// Free-function form of [`KernelSpec::error_bound`].
pub fn error_bound(kernel: &KernelSpec, derivative_norm: f64, exponents: HolderPair) -> Result<f64> {
    kernel.error_bound(derivative_norm, exponents)
}

/// `q(α, γ) = ∫_a^b |(x-α)^2 - γ^2| dx`, evaluated exactly.
pub fn monic_quadratic_l1(interval: Interval, alpha: f64, gamma: f64) -> f64 {
    let (lo, hi) = (interval.a() - alpha, interval.b() - alpha);
    let g2 = gamma * gamma;
    let anti = |t: f64| t * t * t / 3.0 - g2 * t;
    let mut cuts = vec![lo];
    for r in [-gamma.abs(), gamma.abs()] {
        if r > lo && r < hi && cuts.last() != Some(&r) {
            cuts.push(r);
        }
    }
    cuts.push(hi);
    cuts.windows(2).map(|w| (anti(w[1]) - anti(w[0])).abs()).sum()
}

/// Smallest grid value found over the admissible triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCertificate {
    pub resolution: usize,
    pub points_checked: usize,
    pub grid_min: f64,
    pub grid_argmin: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticOptimum {
    pub alpha: f64,
    pub gamma: f64,
    pub min_value: f64,
    pub certificate: GridCertificate,
}

impl QuadraticOptimum {
    /// No grid point undercuts the analytic minimum by more than `slack`.
    pub fn is_certified(&self, slack: f64) -> bool {
        self.certificate.grid_min >= self.min_value - slack
    }

    /// Roots `α ± γ` of the minimising quadratic.
    pub fn roots(&self) -> (f64, f64) {
        (self.alpha - self.gamma, self.alpha + self.gamma)
    }
}

/// Default grid size per axis for [`optimize_monic_quadratic`].
pub const DEFAULT_GRID: usize = 400;

/// Minimiser of `∫|p|` over monic quadratics `p = (x-α)^2 - γ^2` with both
/// roots in `[a, b]`.
///
/// Returns `α = (a+b)/2`, `γ = (b-a)/4`, value `(b-a)^3/16`, and a grid
/// search over `Q = {a ≤ α ≤ b, 0 ≤ γ ≤ min(α-a, b-α)}` as a check.
pub fn optimize_monic_quadratic(interval: Interval, resolution: usize) -> QuadraticOptimum {
    let n = resolution.max(1);
    let (a, b) = (interval.a(), interval.b());
    let alpha = interval.midpoint();
    let gamma = interval.length() / 4.0;
    let min_value = interval.length().powi(3) / 16.0;

    let mut best = (f64::INFINITY, (alpha, gamma));
    let mut checked = 0;
    for i in 0..=n {
        let al = if i == n { b } else { a + (b - a) * i as f64 / n as f64 };
        let gmax = (al - a).min(b - al).max(0.0);
        for j in 0..=n {
            let g = gmax * j as f64 / n as f64;
            let q = monic_quadratic_l1(interval, al, g);
            checked += 1;
            if q < best.0 {
                best = (q, (al, g));
            }
        }
    }
    QuadraticOptimum {
        alpha,
        gamma,
        min_value,
        certificate: GridCertificate {
            resolution: n,
            points_checked: checked,
            grid_min: best.0,
            grid_argmin: best.1,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearOptimum {
    pub center: f64,
    pub min_value: f64,
}

/// Minimiser of `∫_a^b |x - c| dx` over `c`: `c = (a+b)/2`, value `(b-a)^2/4`.
pub fn optimize_monic_linear(interval: Interval) -> LinearOptimum {
    let center = interval.midpoint();
    LinearOptimum { center, min_value: monic_linear_l1(interval, center) }
}

/// `∫_a^b |x - c| dx`, exact.
pub fn monic_linear_l1(interval: Interval, c: f64) -> f64 {
    let (a, b) = (interval.a(), interval.b());
    if c <= a {
        0.5 * ((b - c).powi(2) - (a - c).powi(2))
    } else if c >= b {
        0.5 * ((a - c).powi(2) - (b - c).powi(2))
    } else {
        0.5 * ((c - a).powi(2) + (b - c).powi(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    /// Exact `∫|p|` from the root structure of each piece.
    fn l1_by_roots(k: &KernelSpec) -> f64 {
        k.pieces()
            .iter()
            .map(|piece| {
                let mut cuts = vec![piece.lo];
                cuts.extend(piece.poly.real_roots_in(piece.lo, piece.hi));
                cuts.push(piece.hi);
                cuts.windows(2).map(|w| piece.poly.integrate(w[0], w[1]).abs()).sum::<f64>()
            })
            .sum()
    }

    /// `∫|p|` by fine composite Simpson between the roots of each piece.
    fn l1_numeric(k: &KernelSpec) -> f64 {
        k.pieces()
            .iter()
            .map(|p| {
                let mut cuts = vec![p.lo];
                cuts.extend(p.roots.iter().copied().filter(|r| *r > p.lo && *r < p.hi));
                cuts.push(p.hi);
                cuts.windows(2)
                    .map(|w| crate::numeric::simpson_reference(|x| p.eval(x).abs(), w[0], w[1], 4096))
                    .sum::<f64>()
            })
            .sum()
    }

    /// `∫ p^2` by fine composite Simpson, piece by piece.
    fn l2_squared_numeric(k: &KernelSpec) -> f64 {
        k.pieces()
            .iter()
            .map(|p| crate::numeric::simpson_reference(|x| p.eval(x).powi(2), p.lo, p.hi, 4096))
            .sum()
    }

    fn sup_by_sampling(k: &KernelSpec) -> f64 {
        let iv = k.interval();
        (0..=100_000)
            .map(|i| iv.a() + iv.length() * i as f64 / 100_000.0)
            .map(|x| k.eval(x).abs().max(k.eval_derivative(0, x, Side::Right).abs()))
            .fold(0.0, f64::max)
    }

    #[test]
    fn degenerate_intervals_rejected() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
    }

    #[test]
    fn boundary_and_jump_conditions() {
        for iv in [unit(), Interval::new(-2.0, 3.5).unwrap(), Interval::new(2.0, 2.5).unwrap()] {
            let mut count = 0;
            for rule in [RuleKind::Trapezoid, RuleKind::Midpoint, RuleKind::Simpson] {
                for c in kernel_for(rule, iv).boundary_conditions() {
                    assert!(c.holds(1e-9), "{rule} on {iv}: {c:?}");
                    count += 1;
                }
            }
            assert_eq!(count, 21);
        }
    }

    #[test]
    fn l1_norm_scales_with_interval() {
        let small = Interval::new(0.3, 1.1).unwrap();
        let big = Interval::new(0.6, 2.2).unwrap();
        for rule in RuleKind::ALL {
            let ratio = kernel_for(rule, big).l1_norm() / kernel_for(rule, small).l1_norm();
            let expected = 2f64.powi(rule.derivative_order() as i32 + 1);
            assert!((ratio - expected).abs() < 1e-12 * expected, "{rule}");
        }
    }

    #[test]
    fn kernel_values_at_endpoints() {
        assert_eq!(kernel_for(RuleKind::Trapezoid, unit()).eval(0.0), 0.0);
        let ct = kernel_for(RuleKind::CorrectedTrapezoid, unit());
        assert!((ct.eval(0.0) - 3.0 / 16.0).abs() < 1e-16);
        let s = kernel_for(RuleKind::Simpson, unit());
        assert!((s.eval_derivative(2, 0.5, Side::Left) - 1.0).abs() < 1e-14);
        assert!((s.eval_derivative(2, 0.5, Side::Right) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pieces_are_monic_of_degree_m_and_tile() {
        let iv = Interval::new(-0.3, 2.2).unwrap();
        for rule in RuleKind::ALL {
            let k = kernel_for(rule, iv);
            for piece in k.pieces() {
                assert_eq!(piece.poly.degree() as u32, rule.derivative_order(), "{rule}");
                assert_eq!(piece.poly.leading(), 1.0);
            }
            let bp = k.breakpoints();
            assert_eq!(bp[0], iv.a());
            assert_eq!(*bp.last().unwrap(), iv.b());
            assert!(bp.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn l1_norms_on_unit_interval() {
        let cases = [
            (RuleKind::Trapezoid, 1.0 / 6.0),
            (RuleKind::CorrectedTrapezoid, 1.0 / 16.0),
            (RuleKind::Simpson, 1.0 / 120.0),
            (RuleKind::Midpoint, 1.0 / 12.0),
            (RuleKind::FirstOrderTrapezoid, 0.25),
            (RuleKind::FirstOrderMidpoint, 0.25),
        ];
        for (rule, expected) in cases {
            let k = kernel_for(rule, unit());
            assert_eq!(k.l1_norm(), expected, "{rule}");
            assert!((l1_by_roots(&k) - expected).abs() < 1e-15, "{rule}");
        }
    }

    #[test]
    fn closed_forms_agree_with_quadrature() {
        for iv in [unit(), Interval::new(-1.5, 0.7).unwrap(), Interval::new(3.0, 3.25).unwrap()] {
            for rule in RuleKind::ALL {
                let k = kernel_for(rule, iv);
                let l1 = l1_numeric(&k);
                assert!((k.l1_norm() - l1).abs() <= 1e-12 * l1, "{rule} on {iv}");
                let l2 = k.s_norm(Exponent::Finite(2.0)).unwrap();
                let l2_exact = l2_squared_numeric(&k).sqrt();
                assert!((l2 - l2_exact).abs() <= 1e-12 * l2_exact, "{rule} on {iv}");
                let sup = k.s_norm(Exponent::Infinity).unwrap();
                let sampled = sup_by_sampling(&k);
                assert!(sampled <= sup * (1.0 + 1e-9), "{rule} on {iv}");
                assert!((sup - sampled).abs() <= 1e-8 * sup, "{rule} on {iv}");
            }
        }
    }

    #[test]
    fn s_norm_examples() {
        let k = kernel_for(RuleKind::Trapezoid, unit());
        let h: f64 = 0.5;
        let expected = (16.0 * h.powi(5) / 15.0).sqrt();
        assert!((k.s_norm(Exponent::Finite(2.0)).unwrap() - expected).abs() < 1e-16);
        assert!((expected - 0.1825741858).abs() < 1e-10);
        assert_eq!(k.s_norm(Exponent::Infinity).unwrap(), 0.25);
        assert_eq!(k.s_norm(Exponent::Finite(1.0)).unwrap(), k.l1_norm());
        assert!(k.s_norm(Exponent::Finite(0.5)).is_err());
    }

    #[test]
    fn numeric_s_norm_matches_polynomial_powers() {
        // for s = 3, |p|^3 is a polynomial between roots
        for rule in RuleKind::ALL {
            let k = kernel_for(rule, Interval::new(-0.4, 1.1).unwrap());
            let exact: f64 = k
                .pieces()
                .iter()
                .map(|piece| {
                    let mut cuts = vec![piece.lo];
                    cuts.extend(piece.poly.real_roots_in(piece.lo, piece.hi));
                    cuts.push(piece.hi);
                    let cube = piece.poly.powi(3);
                    cuts.windows(2).map(|w| cube.integrate(w[0], w[1]).abs()).sum::<f64>()
                })
                .sum::<f64>()
                .cbrt();
            let numeric = k.s_norm(Exponent::Finite(3.0)).unwrap();
            assert!((numeric - exact).abs() <= 1e-12 * exact, "{rule}: {numeric} vs {exact}");
        }
    }

    #[test]
    fn s_norms_are_monotone_on_unit_interval() {
        // on an interval of length 1: ‖p‖₁ ≤ ‖p‖_s ≤ ‖p‖_t ≤ ‖p‖∞ for s ≤ t
        for rule in RuleKind::ALL {
            let k = kernel_for(rule, unit());
            let norms: Vec<f64> = [1.0, 1.5, 2.0, 3.0, 7.5]
                .iter()
                .map(|&s| k.s_norm(Exponent::Finite(s)).unwrap())
                .chain([k.s_norm(Exponent::Infinity).unwrap()])
                .collect();
            assert!(norms.windows(2).all(|w| w[0] <= w[1] * (1.0 + 1e-12)), "{rule}: {norms:?}");
        }
    }

    #[test]
    fn error_bound_examples() {
        let t = kernel_for(RuleKind::Trapezoid, unit());
        assert_eq!(t.error_bound(2.0, HolderPair::uniform()).unwrap(), 1.0 / 6.0);
        let s = kernel_for(RuleKind::Simpson, unit());
        assert_eq!(s.error_bound(24.0, HolderPair::uniform()).unwrap(), 1.0 / 120.0);
        assert_eq!(t.error_bound(0.0, HolderPair::uniform()).unwrap(), 0.0);
        let l2 = HolderPair::new(Exponent::Finite(2.0), Exponent::Finite(2.0)).unwrap();
        assert!((t.error_bound(1.0, l2).unwrap() - 0.5 * (1.0f64 / 30.0).sqrt()).abs() < 1e-16);
    }

    #[test]
    fn error_bound_rejects_bad_inputs() {
        let t = kernel_for(RuleKind::Trapezoid, unit());
        assert!(matches!(
            HolderPair::new(Exponent::Finite(2.0), Exponent::Finite(3.0)),
            Err(Error::ConjugateMismatch { .. })
        ));
        let bad = HolderPair { r: Exponent::Finite(2.0), s: Exponent::Finite(1.0) };
        assert!(matches!(t.error_bound(1.0, bad), Err(Error::ConjugateMismatch { .. })));
        assert!(matches!(t.error_bound(-1.0, HolderPair::uniform()), Err(Error::InvalidNorm(_))));
        assert!(matches!(
            t.error_bound(f64::INFINITY, HolderPair::uniform()),
            Err(Error::InvalidNorm(_))
        ));
    }

    #[test]
    fn conjugates() {
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        assert_eq!(Exponent::Finite(3.0).conjugate(), Exponent::Finite(1.5));
        let p = HolderPair::for_kernel_exponent(Exponent::Finite(3.0));
        assert!(HolderPair::new(p.r, p.s).is_ok());
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert!("0.3".parse::<Exponent>().is_err());
    }

    #[test]
    fn quadratic_optimum_examples() {
        let opt = optimize_monic_quadratic(unit(), DEFAULT_GRID);
        assert_eq!((opt.alpha, opt.gamma, opt.min_value), (0.5, 0.25, 0.0625));
        assert!(opt.is_certified(1e-9));
        assert_eq!(opt.certificate.points_checked, 401 * 401);

        let sym = optimize_monic_quadratic(Interval::new(-1.0, 1.0).unwrap(), 100);
        assert_eq!((sym.alpha, sym.gamma, sym.min_value), (0.0, 0.5, 0.5));
        assert!(sym.is_certified(1e-9));

        for eps in [1e-1, 1e-3, 1e-6] {
            let tiny = optimize_monic_quadratic(Interval::new(2.0, 2.0 + eps).unwrap(), 50);
            let len = (2.0 + eps) - 2.0;
            assert!((tiny.min_value / len.powi(3) - 1.0 / 16.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quadratic_objective_matches_closed_form_at_optimum() {
        let iv = Interval::new(-2.0, 5.0).unwrap();
        let q = monic_quadratic_l1(iv, iv.midpoint(), iv.length() / 4.0);
        assert!((q - 7.0f64.powi(3) / 16.0).abs() < 1e-12);
        // γ = h reproduces the trapezoid kernel norm
        let q = monic_quadratic_l1(iv, iv.midpoint(), iv.length() / 2.0);
        assert!((q - 7.0f64.powi(3) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn linear_optimum_examples() {
        assert_eq!(optimize_monic_linear(unit()), LinearOptimum { center: 0.5, min_value: 0.25 });
        let two = optimize_monic_linear(Interval::new(0.0, 2.0).unwrap());
        assert_eq!((two.center, two.min_value), (1.0, 1.0));
        let h = 0.7;
        let sym = optimize_monic_linear(Interval::new(-h, h).unwrap());
        assert_eq!(sym.center, 0.0);
        assert!((sym.min_value - h * h).abs() < 1e-16);
        // any other centre is worse
        for c in [-0.2, 0.1, 0.49, 0.51, 0.9, 1.3] {
            assert!(monic_linear_l1(unit(), c) > 0.25);
        }
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in RuleKind::ALL {
            assert_eq!(rule.name().parse::<RuleKind>().unwrap(), rule);
        }
        assert_eq!("corrected_trapezoid".parse::<RuleKind>().unwrap(), RuleKind::CorrectedTrapezoid);
        assert!("boole".parse::<RuleKind>().is_err());
    }
}
