//! Bound validity and error-representation checks over the built-in corpus.

use quadbound::harness::{builtin_corpus, run_corpus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = builtin_corpus();
    for e in &corpus {
        println!("{:<24} exact={:<20} {}", e.name, e.exact, e.smoothness);
    }
    let report = run_corpus(&corpus, 1 << 14)?;
    println!("{report}");
    Ok(())
}
