//! Quadrature rules with integration-by-parts error kernels.
//!
//! The crate implements the midpoint, trapezoidal, corrected trapezoidal and
//! Simpson rules, both simple and composite, together with the piecewise
//! polynomial kernels `p` for which
//!
//! ```text
//! ∫ f = rule(f) + (-1)^m / m! · ∫ f^(m)(x) p(x) dx
//! ```
//!
//! holds. Hölder's inequality applied to that integral yields the a-priori
//! error bounds reported by every rule. On top of this sit an adaptive
//! bisection driver, a corpus of test integrands with closed-form integrals,
//! and a small command-line front end.
//!
//! ```
//! use quadbound::{composite, Expression, Interval, RuleKind};
//!
//! let f: Expression = "x^2".parse().unwrap();
//! let grid = composite::UniformPartition::new(Interval::new(0.0, 1.0).unwrap(), 2).unwrap();
//! let est = composite::composite_rule(RuleKind::Trapezoid, &f, &grid, 2.0).unwrap();
//! assert_eq!(est.value, 0.375);
//! assert!((est.error_bound - 1.0 / 24.0).abs() < 1e-16);
//! ```

pub mod adaptive;
pub mod cli;
pub mod composite;
mod error;
pub mod expr;
pub mod harness;
pub mod kernels;
pub mod numeric;
pub mod poly;
pub mod rules;

pub use error::{Error, Result};
pub use expr::Expression;
pub use kernels::{Exponent, HolderPair, Interval, KernelSpec, RuleKind};
pub use rules::QuadratureEstimate;
