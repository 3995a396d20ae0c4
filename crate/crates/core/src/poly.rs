//! Dense real polynomials in the monomial basis.
//!
//! Used for derivatives, antiderivatives and display of kernel pieces;
//! kernel values themselves come from the factored form.

use std::fmt;
use std::ops::Mul;

/// `coeffs[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// Monic polynomial `∏ (x - r)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots
            .iter()
            .fold(Polynomial::constant(1.0), |acc, &r| &acc * &Polynomial::new(vec![-r, 1.0]))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().expect("non-empty")
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::constant(0.0);
        }
        Polynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Polynomial {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Polynomial {
        let mut out = vec![0.0];
        out.extend(self.coeffs.iter().enumerate().map(|(k, &c)| c / (k + 1) as f64));
        Polynomial::new(out)
    }

    /// Exact `∫_lo^hi p(x) dx`.
    pub fn integrate(&self, lo: f64, hi: f64) -> f64 {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    pub fn powi(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::constant(1.0), |acc, _| &acc * self)
    }

    /// Real roots in `[lo, hi]`, ascending. Roots of even multiplicity are
    /// found as critical points where the value vanishes to rounding.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        if self.degree() == 1 {
            let r = -self.coeffs[0] / self.coeffs[1];
            return if (lo..=hi).contains(&r) { vec![r] } else { Vec::new() };
        }
        let mut marks = vec![lo];
        marks.extend(self.derivative().real_roots_in(lo, hi));
        marks.push(hi);
        let scale = self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
            * lo.abs().max(hi.abs()).max(1.0).powi(self.degree() as i32);
        let tiny = 64.0 * f64::EPSILON * scale;

        let mut roots: Vec<f64> = Vec::new();
        let push = |r: f64, roots: &mut Vec<f64>| {
            if roots.last().is_none_or(|&last| (r - last).abs() > 1e-12 * scale.max(1.0)) {
                roots.push(r);
            }
        };
        for &m in &marks {
            if self.eval(m).abs() <= tiny {
                push(m, &mut roots);
            }
        }
        for pair in marks.windows(2) {
            let (mut a, mut b) = (pair[0], pair[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa.abs() <= tiny || fb.abs() <= tiny || fa.signum() == fb.signum() {
                continue;
            }
            let rising = fb > fa;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if (self.eval(mid) > 0.0) == rising {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            push(0.5 * (a + b), &mut roots);
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * scale.max(1.0));
        roots
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            let m = c.abs();
            match (k, m == 1.0) {
                (0, _) => write!(f, "{m}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{m}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{m}*x^{k}")?,
            }
        }
        Ok(())
    }
}
