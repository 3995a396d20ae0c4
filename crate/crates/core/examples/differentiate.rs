//! Parse an integrand, differentiate it symbolically and compare against a
//! central difference.

use quadbound::Expression;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: Expression = "exp(x)*sin(3*x) + sqrt(1+x^2)".parse()?;
    println!("f    = {f}");
    for order in 1..=3 {
        println!("f^({order}) = {}", f.differentiate(order)?);
    }

    let df = f.differentiate(1)?;
    let h = 1e-6;
    for x in [0.0, 0.5, 1.7] {
        let central = (f.eval(x + h)? - f.eval(x - h)?) / (2.0 * h);
        println!("x={x:<4} f'={:.12} central={central:.12}", df.eval(x)?);
    }

    // domain errors are reported, not NaN
    let g: Expression = "log(x)".parse()?;
    println!("log(-1): {}", g.eval(-1.0).unwrap_err());
    Ok(())
}
