//! Single-interval rules with their a-priori bounds.

use quadbound::harness::derivative_sup_norm;
use quadbound::rules::simple_rule;
use quadbound::{Expression, Interval, RuleKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: Expression = "exp(x)".parse()?;
    let iv = Interval::new(0.0, 1.0)?;
    let exact = std::f64::consts::E - 1.0;

    println!("{:<22} {:>12} {:>12} {:>12}", "rule", "value", "error", "bound");
    for rule in RuleKind::ALL {
        let norm = derivative_sup_norm(&f, rule.derivative_order(), iv)?;
        let est = simple_rule(rule, &f, iv, norm)?;
        println!(
            "{:<22} {:>12.8} {:>12.3e} {:>12.3e}",
            rule.name(),
            est.value,
            est.true_error(exact),
            est.error_bound
        );
        assert!(est.covers(exact, 0.0));
    }

    // x^2 attains the trapezoid bound
    let sq: Expression = "x^2".parse()?;
    let t = simple_rule(RuleKind::Trapezoid, &sq, iv, 2.0)?;
    println!("trapezoid on x^2: error {} bound {}", t.true_error(1.0 / 3.0), t.error_bound);
    Ok(())
}
