//! Among monic quadratics with both roots in [a, b], the smallest L1 norm is
//! (b-a)^3/16; a grid search over the root parameters confirms it.

use quadbound::kernels::{monic_quadratic_l1, optimize_monic_linear, optimize_monic_quadratic};
use quadbound::Interval;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (a, b) in [(0.0, 1.0), (-1.0, 3.0), (2.0, 2.5)] {
        let iv = Interval::new(a, b)?;
        let opt = optimize_monic_quadratic(iv, 400);
        let (r1, r2) = opt.roots();
        println!(
            "[{a}, {b}]: alpha={} gamma={} min={} roots=({r1}, {r2}) grid min={:.3e} over {} points",
            opt.alpha, opt.gamma, opt.min_value, opt.certificate.grid_min, opt.certificate.points_checked
        );
        // nudging the roots costs L1 mass
        let nudged = monic_quadratic_l1(iv, opt.alpha, opt.gamma * 1.1);
        println!("  gamma * 1.1 gives {nudged:.6e}");
        let lin = optimize_monic_linear(iv);
        println!("  linear: c={} min={}", lin.center, lin.min_value);
    }
    Ok(())
}
