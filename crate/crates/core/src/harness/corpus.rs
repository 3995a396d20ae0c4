use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, LN_2, PI};
use std::fmt;

use crate::error::Result;
use crate::expr::Expression;
use crate::kernels::Interval;

/// How many derivatives of an entry are bounded on its interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Smoothness {
    C1,
    C2,
    C4,
    Analytic,
}

impl Smoothness {
    /// Whether `f^(m)` is bounded.
    pub fn supports(self, m: u32) -> bool {
        match self {
            Smoothness::C1 => m <= 1,
            Smoothness::C2 => m <= 2,
            Smoothness::C4 => m <= 4,
            Smoothness::Analytic => true,
        }
    }
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Smoothness::C1 => "C1",
            Smoothness::C2 => "C2",
            Smoothness::C4 => "C4",
            Smoothness::Analytic => "analytic",
        })
    }
}

/// A test integrand with a closed-form integral.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub function: String,
    pub interval: Interval,
    pub exact: f64,
    /// `(p, q)` with `exact = p/q` for small integers, when the integral is rational.
    pub exact_rational: Option<(f64, f64)>,
    pub smoothness: Smoothness,
    pub derivation: String,
}

impl CorpusEntry {
    pub fn new(
        function: &str,
        interval: Interval,
        exact: f64,
        smoothness: Smoothness,
        derivation: &str,
    ) -> Self {
        CorpusEntry {
            name: format!("{function} on [{}, {}]", interval.a(), interval.b()),
            function: function.to_string(),
            interval,
            exact,
            exact_rational: None,
            smoothness,
            derivation: derivation.to_string(),
        }
    }

    fn rational(mut self, p: f64, q: f64) -> Self {
        self.exact_rational = Some((p, q));
        self
    }

    pub fn expression(&self) -> Result<Expression> {
        Ok(self.function.parse()?)
    }

    /// `|exact - value|` in double precision.
    pub fn abs_error(&self, value: f64) -> f64 {
        (self.exact - value).abs()
    }

    /// `|p/q - value|` computed as `|q·value - p| / q` with a fused
    /// multiply-add, which avoids the rounding of `p/q` itself. Falls back to
    /// [`abs_error`](Self::abs_error) for irrational integrals.
    pub fn abs_error_exact(&self, value: f64) -> f64 {
        match self.exact_rational {
            Some((p, q)) => value.mul_add(q, -p).abs() / q,
            None => self.abs_error(value),
        }
    }
}

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).expect("corpus intervals are valid")
}

/// The built-in test integrands.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    use Smoothness::*;
    vec![
        CorpusEntry::new("x^2", iv(0.0, 1.0), 1.0 / 3.0, Analytic, "x^3/3").rational(1.0, 3.0),
        CorpusEntry::new("x^3", iv(0.0, 1.0), 0.25, Analytic, "x^4/4").rational(1.0, 4.0),
        CorpusEntry::new("x^4", iv(0.0, 1.0), 0.2, Analytic, "x^5/5").rational(1.0, 5.0),
        CorpusEntry::new("2*x+1", iv(0.0, 1.0), 2.0, Analytic, "x^2 + x").rational(2.0, 1.0),
        CorpusEntry::new("x^5-2*x", iv(-1.0, 2.0), 7.5, Analytic, "x^6/6 - x^2: (32/3 - 4) - (1/6 - 1)")
            .rational(15.0, 2.0),
        CorpusEntry::new("exp(x)", iv(0.0, 1.0), E - 1.0, Analytic, "exp(x)"),
        CorpusEntry::new("sin(x)", iv(0.0, PI), 2.0, Analytic, "-cos(x)"),
        CorpusEntry::new("cos(x)", iv(0.0, FRAC_PI_2), 1.0, Analytic, "sin(x)"),
        CorpusEntry::new("1/(1+x^2)", iv(0.0, 1.0), FRAC_PI_4, Analytic, "arctan(x)"),
        CorpusEntry::new("log(1+x)", iv(0.0, 1.0), 2.0 * LN_2 - 1.0, Analytic, "(1+x) log(1+x) - x"),
        CorpusEntry::new("sqrt(1+x)", iv(0.0, 3.0), 14.0 / 3.0, Analytic, "(2/3)(1+x)^(3/2): (2/3)(8 - 1)"),
        CorpusEntry::new("x^2.5", iv(0.0, 1.0), 2.0 / 7.0, C2, "x^3.5/3.5; f''' ~ x^(-1/2) at 0"),
        CorpusEntry::new("x^1.5", iv(0.0, 1.0), 0.4, C1, "x^2.5/2.5; f'' ~ x^(-1/2) at 0"),
    ]
}

/// Looks up a built-in entry by function text and interval.
pub fn find_entry(function: &str, interval: Interval) -> Option<CorpusEntry> {
    let wanted: String = function.chars().filter(|c| !c.is_whitespace()).collect();
    builtin_corpus()
        .into_iter()
        .find(|e| e.function == wanted && e.interval == interval)
}
