//! Uniform composite rules on a smooth integrand as n grows.

use quadbound::composite::{composite_rule, UniformPartition};
use quadbound::harness::derivative_sup_norm;
use quadbound::{Expression, Interval, RuleKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: Expression = "1/(1+x^2)".parse()?;
    let iv = Interval::new(0.0, 1.0)?;
    let exact = std::f64::consts::FRAC_PI_4;

    for rule in RuleKind::CLASSICAL {
        let norm = derivative_sup_norm(&f, rule.derivative_order(), iv)?;
        println!("{rule}, |f^({})| <= {norm:.6}", rule.derivative_order());
        for n in [2, 8, 32, 128] {
            let est = composite_rule(rule, &f, &UniformPartition::new(iv, n)?, norm)?;
            println!(
                "  n={n:<4} value={:.15} error={:.3e} bound={:.3e}",
                est.value,
                est.true_error(exact),
                est.error_bound
            );
        }
    }
    Ok(())
}
