//! Convergence study as CSV: error, bound, bound/error and observed order.

use quadbound::harness::{builtin_corpus, convergence_table, doubling};
use quadbound::RuleKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = builtin_corpus();
    for function in ["exp(x)", "x^1.5"] {
        let entry = corpus.iter().find(|e| e.function == function).expect("in corpus");
        for rule in [RuleKind::Trapezoid, RuleKind::Simpson] {
            let table = convergence_table(rule, entry, &doubling(4, 256))?;
            println!("# {rule} on {}", entry.name);
            if let Some(w) = &table.warning {
                println!("# {w}");
            }
            print!("{}", table.to_csv());
        }
    }
    Ok(())
}
