//! Composite corrected trapezoid: only f'(a) and f'(b) are needed, and the
//! derivatives may be replaced by one-sided differences.

use quadbound::composite::{
    composite_corrected_trapezoid, composite_corrected_trapezoid_fd, composite_rule,
    endpoint_correction, UniformPartition,
};
use quadbound::{Expression, Interval, RuleKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: Expression = "exp(x)".parse()?;
    let df = f.differentiate(1)?;
    let iv = Interval::new(0.0, 1.0)?;
    let exact = std::f64::consts::E - 1.0;
    let norm = std::f64::consts::E;

    for n in [1, 4, 16, 64] {
        let p = UniformPartition::new(iv, n)?;
        let trap = composite_rule(RuleKind::Trapezoid, &f, &p, norm)?;
        let ct = composite_corrected_trapezoid(&f, &p, norm)?;
        let fd = composite_corrected_trapezoid_fd(&f, &p, norm, 1e-4)?;
        let closed = endpoint_correction(iv, n, df.eval(0.0)?, df.eval(1.0)?);
        println!(
            "n={n:<3} trap err {:.3e}  ct err {:.3e} (bound {:.3e})  fd err {:.3e} (bound {:.3e})",
            trap.true_error(exact),
            ct.true_error(exact),
            ct.error_bound,
            fd.true_error(exact),
            fd.error_bound
        );
        println!("      ct - trap = {:.6e}, closed form {closed:.6e}", ct.value - trap.value);
    }
    Ok(())
}
