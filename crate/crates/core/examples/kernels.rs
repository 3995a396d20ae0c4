//! Error kernels of each rule: pieces, norms and the endpoint conditions
//! that characterise them.

use quadbound::kernels::{kernel_for, Exponent};
use quadbound::{Interval, RuleKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let iv = Interval::new(0.0, 1.0)?;
    for rule in RuleKind::ALL {
        let k = kernel_for(rule, iv);
        println!("{rule} (m = {})", k.derivative_order());
        for piece in k.pieces() {
            println!("  on [{}, {}]: {}", piece.lo, piece.hi, piece.poly);
        }
        let l2 = k.s_norm(Exponent::finite(2.0)?)?;
        let sup = k.s_norm(Exponent::Infinity)?;
        println!("  |p|_1 = {:.6e}  |p|_2 = {l2:.6e}  |p|_inf = {sup:.6e}", k.l1_norm());
    }

    let simpson = kernel_for(RuleKind::Simpson, Interval::new(2.0, 2.5)?);
    for check in simpson.boundary_conditions() {
        println!("{:<28} {:>12.3e} (want {:.3e})", check.label, check.actual, check.expected);
    }
    Ok(())
}
