use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::kernels::Interval;
use crate::numeric::{polish_and_inflate, sample_abs_max};

/// Initial number of equispaced samples.
pub const BASE_SAMPLES: usize = 4097;
/// Density doublings used to detect unbounded growth.
pub const DOUBLINGS: usize = 3;
/// Relative growth per doubling that counts as divergence.
pub const GROWTH_THRESHOLD: f64 = 0.10;

/// Sampled `sup |fm|` on `interval`, inflated by `1e-6` relative.
///
/// Samples 4097 equispaced points, then doubles the density up to three
/// times. If the maximum grows by more than 10% at every doubling the
/// function is treated as unbounded and [`Error::DivergentNorm`] is
/// returned; otherwise the maximum is refined by golden-section search
/// around the best sample. An evaluation that overflows or divides by zero
/// also counts as divergence.
pub fn sup_norm(fm: &Expression, interval: Interval) -> Result<f64> {
    let (a, b) = (interval.a(), interval.b());
    let mut samples = BASE_SAMPLES;
    let mut best = sample_abs_max(fm, a, b, samples)?;
    let mut grew_every_time = true;
    for _ in 0..DOUBLINGS {
        let denser = 2 * samples - 1;
        let next = sample_abs_max(fm, a, b, denser)?;
        let grew = next.value > best.value * (1.0 + GROWTH_THRESHOLD);
        samples = denser;
        if next.value > best.value {
            best = next;
        }
        if !grew {
            grew_every_time = false;
            break;
        }
    }
    if grew_every_time {
        return Err(Error::DivergentNorm { lo: a, hi: b, max_seen: best.value });
    }
    Ok(polish_and_inflate(fm, a, b, samples, best))
}

/// `sup |f^(m)|` from the symbolic derivative.
pub fn derivative_sup_norm(f: &Expression, m: u32, interval: Interval) -> Result<f64> {
    sup_norm(&f.differentiate(m)?, interval)
}

/// Where a derivative norm came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormSource {
    /// The derivative simplified to a constant; its absolute value is exact.
    Constant,
    Sampled,
    Supplied,
}

/// `‖f^(m)‖∞`, taken exactly when the symbolic derivative is a constant and
/// from [`sup_norm`] otherwise.
pub fn derivative_norm_with_constants(
    f: &Expression,
    m: u32,
    interval: Interval,
) -> Result<(f64, NormSource)> {
    let fm = f.differentiate(m)?;
    match fm {
        Expression::Const(c) => Ok((c.abs(), NormSource::Constant)),
        other => Ok((sup_norm(&other, interval)?, NormSource::Sampled)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str, m: u32, a: f64, b: f64) -> Result<f64> {
        derivative_sup_norm(&text.parse().unwrap(), m, Interval::new(a, b).unwrap())
    }

    fn close(v: f64, expected: f64) -> bool {
        v >= expected && v <= expected * (1.0 + 1.1e-6)
    }

    #[test]
    fn examples() {
        assert!(close(d("x^2", 2, 0.0, 1.0).unwrap(), 2.0));
        assert!(close(d("x^4", 4, 0.0, 1.0).unwrap(), 24.0));
        assert!(close(d("sin(x)", 2, 0.0, std::f64::consts::PI).unwrap(), 1.0));
        // interior maximum found by the polish step
        let v = d("sin(3*x)", 1, 0.0, 1.0).unwrap();
        assert!(close(v, 3.0));
    }

    #[test]
    fn interior_peak_between_samples() {
        // |f| peaks at x = 0.3 + 1e-5, between grid points
        let f: Expression = "1/(1+1000000*(x-0.30001)^2)".parse().unwrap();
        let v = sup_norm(&f, Interval::new(0.0, 1.0).unwrap()).unwrap();
        assert!(close(v, 1.0), "{v}");
    }

    #[test]
    fn unbounded_derivatives_are_flagged() {
        assert!(matches!(d("x^1.5", 2, 0.0, 1.0), Err(Error::DivergentNorm { .. })));
        assert!(matches!(d("x^2.5", 4, 0.0, 1.0), Err(Error::DivergentNorm { .. })));
        // a pole off the grid: each doubling lands closer to it
        let g: Expression = "1/(x-1/3)".parse().unwrap();
        assert!(matches!(
            sup_norm(&g, Interval::new(0.0, 1.0).unwrap()),
            Err(Error::DivergentNorm { .. })
        ));
        assert!(d("x^2.5", 2, 0.0, 1.0).is_ok());
    }

    #[test]
    fn domain_errors_propagate() {
        let f: Expression = "log(x)".parse().unwrap();
        assert!(matches!(sup_norm(&f, Interval::new(-1.0, 1.0).unwrap()), Err(Error::Eval(_))));
    }

    #[test]
    fn constant_derivatives_are_exact() {
        let f: Expression = "x^2".parse().unwrap();
        let (v, src) = derivative_norm_with_constants(&f, 2, Interval::new(0.0, 1.0).unwrap()).unwrap();
        assert_eq!((v, src), (2.0, NormSource::Constant));
        let f: Expression = "exp(x)".parse().unwrap();
        let (v, src) = derivative_norm_with_constants(&f, 2, Interval::new(0.0, 1.0).unwrap()).unwrap();
        assert_eq!(src, NormSource::Sampled);
        assert!(close(v, std::f64::consts::E));
    }
}
