use super::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::kernels::{kernel_for, RuleKind};
use crate::numeric::pairwise_sum;
use crate::rules::simple_rule;

/// Panels per kernel piece for the representation integral.
pub const DEFAULT_RESOLUTION: usize = 1 << 16;

/// Composite Simpson for `∫ g` with `n` (even) panels after the change of
/// variables `x = lo + (hi-lo) t^2 (3-2t)`, which clusters nodes at both ends
/// so that square-root behaviour there is integrated accurately.
fn simpson_oracle(g: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, n: usize) -> Result<f64> {
    let n = (n.max(2) + 1) & !1;
    let len = hi - lo;
    let h = 1.0 / n as f64;
    let terms = (0..=n)
        .map(|i| {
            let w = match i {
                0 => return Ok(0.0),
                i if i == n => return Ok(0.0),
                i if i % 2 == 1 => 4.0,
                _ => 2.0,
            };
            let t = h * i as f64;
            let x = lo + len * t * t * (3.0 - 2.0 * t);
            Ok(w * g(x)? * 6.0 * t * (1.0 - t))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&terms) * len * h / 3.0)
}

/// `∫_a^b f^(m)(x) p(x) dx` for the kernel of `rule`, piece by piece.
pub fn representation_integral(
    rule: RuleKind,
    f: &Expression,
    entry: &CorpusEntry,
    resolution: usize,
) -> Result<f64> {
    let fm = f.differentiate(rule.derivative_order())?;
    let kernel = kernel_for(rule, entry.interval);
    let mut total = 0.0;
    for piece in kernel.pieces() {
        total += simpson_oracle(|x| Ok(fm.eval(x)? * piece.eval(x)), piece.lo, piece.hi, resolution)?;
    }
    Ok(total)
}

/// `|(exact - value) - (-1)^m/m! · ∫ f^(m) p|` for the simple rule on the
/// entry's interval.
pub fn residual_check(rule: RuleKind, entry: &CorpusEntry, resolution: usize) -> Result<f64> {
    if !entry.smoothness.supports(rule.derivative_order()) {
        return Err(Error::InsufficientSmoothness { entry: entry.name.clone(), rule: rule.name() });
    }
    let f = entry.expression()?;
    let value = simple_rule(rule, &f, entry.interval, 0.0)?.value;
    let kernel = kernel_for(rule, entry.interval);
    let integral = representation_integral(rule, &f, entry, resolution)?;
    let predicted = kernel.representation_sign() * integral / kernel.factorial();
    Ok(((entry.exact - value) - predicted).abs())
}
