//! Small numerical building blocks: deterministic summation, reference
//! integrators used as oracles, golden-section search and sampled sup norms.

use crate::error::{Error, Result};
use crate::expr::Expression;

/// Pairwise (tree) summation in a fixed order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Composite Simpson with `panels` panels (rounded up to even), written as a
/// plain loop with Kahan accumulation. Reference integrator only.
pub fn simpson_reference<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let n = (panels.max(2) + 1) & !1;
    let h = (hi - lo) / n as f64;
    let mut sum = 0.0;
    let mut carry = 0.0;
    for i in 0..=n {
        let x = if i == n { hi } else { lo + h * i as f64 };
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let y = w * f(x) - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum * h / 3.0
}

/// Adaptive Simpson quadrature with Richardson correction.
///
/// Recursion stops once the local difference estimate is below `15·tol`
/// (tolerance halves at each split) or the depth limit is hit.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
    let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    flo: f64,
    fmid: f64,
    fhi: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let (lm, rm) = (0.5 * (lo + mid), 0.5 * (mid + hi));
    let (flm, frm) = (f(lm), f(rm));
    let left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    let right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol || mid <= lo || mid >= hi {
        return left + right + delta / 15.0;
    }
    simpson_step(f, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1)
        + simpson_step(f, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson to a relative tolerance, using a 64-panel composite
/// estimate to fix the absolute scale.
pub fn integrate_relative<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, rel_tol: f64) -> f64 {
    let scale = simpson_reference(|x| f(x).abs(), lo, hi, 64);
    if scale == 0.0 {
        return 0.0;
    }
    adaptive_simpson(f, lo, hi, rel_tol * scale)
}

/// Golden-section search for the maximum of `g` on `[lo, hi]`.
pub fn golden_section_max<G>(g: G, mut lo: f64, mut hi: f64, iterations: usize) -> (f64, f64)
where
    G: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut gc, mut gd) = (g(c).unwrap_or(f64::NEG_INFINITY), g(d).unwrap_or(f64::NEG_INFINITY));
    for _ in 0..iterations {
        if hi - lo <= f64::EPSILON * (lo.abs() + hi.abs()) {
            break;
        }
        if gc >= gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - INV_PHI * (hi - lo);
            gc = g(c).unwrap_or(f64::NEG_INFINITY);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + INV_PHI * (hi - lo);
            gd = g(d).unwrap_or(f64::NEG_INFINITY);
        }
    }
    if gc >= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Relative inflation applied to every sampled sup norm.
pub const NORM_INFLATION: f64 = 1e-6;

/// Outcome of sampling `|g|` on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledMax {
    pub value: f64,
    pub at: f64,
}

/// Max of `|g|` over `samples` equispaced points of `[lo, hi]`.
///
/// Evaluation errors that signal unboundedness become
/// [`Error::DivergentNorm`]; other domain errors propagate.
pub fn sample_abs_max(g: &Expression, lo: f64, hi: f64, samples: usize) -> Result<SampledMax> {
    let last = samples.max(2) - 1;
    let mut best = SampledMax { value: 0.0, at: lo };
    for i in 0..=last {
        let x = if i == last { hi } else { lo + (hi - lo) * i as f64 / last as f64 };
        let v = match g.eval(x) {
            Ok(v) => v.abs(),
            Err(e) if e.is_unbounded() => {
                return Err(Error::DivergentNorm { lo, hi, max_seen: f64::INFINITY })
            }
            Err(e) => return Err(e.into()),
        };
        if v > best.value {
            best = SampledMax { value: v, at: x };
        }
    }
    Ok(best)
}

/// Refines a sampled maximum by golden-section search on the neighbouring
/// sample cells and applies [`NORM_INFLATION`].
pub fn polish_and_inflate(g: &Expression, lo: f64, hi: f64, samples: usize, found: SampledMax) -> f64 {
    let cell = (hi - lo) / (samples.max(2) - 1) as f64;
    let a = (found.at - cell).max(lo);
    let b = (found.at + cell).min(hi);
    let (_, polished) = golden_section_max(|x| Ok(g.eval(x)?.abs()), a, b, 80);
    found.value.max(polished) * (1.0 + NORM_INFLATION)
}
