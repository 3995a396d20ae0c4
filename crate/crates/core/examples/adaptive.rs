//! Greedy bisection driven by local bounds, compared with a uniform grid of
//! the same cost.

use quadbound::adaptive::{adaptive_integrate_with, AdaptiveOptions};
use quadbound::composite::{composite_rule, UniformPartition};
use quadbound::{Expression, Interval, RuleKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: Expression = "exp(10*x)".parse()?;
    let iv = Interval::new(0.0, 1.0)?;
    let exact = (10f64.exp() - 1.0) / 10.0;

    let options = AdaptiveOptions { max_evals: 100_000, ..AdaptiveOptions::new(1e-4) };
    let result = adaptive_integrate_with(RuleKind::Trapezoid, &f, iv, &options)?;
    let est = &result.estimate;
    println!(
        "adaptive: value={:.12} error={:.3e} bound={:.3e} evals={} subintervals={}",
        est.value,
        est.true_error(exact),
        est.error_bound,
        est.evaluations,
        result.partition.len()
    );
    println!(
        "widest piece on [0, 0.5]: {:.3e}, on [0.5, 1]: {:.3e}",
        result.partition.max_width_within(0.0, 0.5).unwrap_or(0.0),
        result.partition.max_width_within(0.5, 1.0).unwrap_or(0.0)
    );

    let uniform = composite_rule(
        RuleKind::Trapezoid,
        &f,
        &UniformPartition::new(iv, est.evaluations - 1)?,
        100.0 * 10f64.exp(),
    )?;
    println!("uniform, same evals: error={:.3e}", uniform.true_error(exact));

    let csv = result.partition.to_csv();
    println!("first breakpoints:\n{}", csv.lines().take(4).collect::<Vec<_>>().join("\n"));
    Ok(())
}
