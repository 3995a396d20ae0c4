//! Bounds from other norm pairings: |f^(m)|_r times |p|_s with 1/r + 1/s = 1.

use quadbound::kernels::{Exponent, HolderPair};
use quadbound::numeric::integrate_relative;
use quadbound::rules::simple_rule_holder;
use quadbound::{Expression, Interval, RuleKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: Expression = "exp(3*x)".parse()?;
    let iv = Interval::new(0.0, 1.0)?;
    let exact = (3f64.exp() - 1.0) / 3.0;
    let f2 = f.differentiate(2)?;

    for s in [1.0, 1.5, 2.0, 4.0] {
        let s = Exponent::finite(s)?;
        let pair = HolderPair::for_kernel_exponent(s);
        let norm_r = match pair.r {
            Exponent::Infinity => 9.0 * 3f64.exp(),
            r => {
                let p = r.value();
                integrate_relative(&|x| f2.eval(x).unwrap().abs().powf(p), 0.0, 1.0, 1e-12).powf(1.0 / p)
            }
        };
        let est = simple_rule_holder(RuleKind::Trapezoid, &f, iv, norm_r, pair)?;
        println!(
            "r={:<8} s={:<4} bound={:.6} error={:.6}",
            pair.r.to_string(),
            pair.s.to_string(),
            est.error_bound,
            est.true_error(exact)
        );
    }
    Ok(())
}
