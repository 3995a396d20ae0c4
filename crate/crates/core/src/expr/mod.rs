//! Univariate real expressions in the variable `x`.
//!
//! Integrands are supplied as text (`"sin(x) + x^2"`), parsed into an
//! [`Expression`] tree, evaluated pointwise, and differentiated symbolically
//! so that the derivative norms entering the error bounds can be computed.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'x' | name '(' expr ')' | '(' expr ')'
//! name    := sin | cos | exp | log | sqrt | abs
//! ```
//!
//! So `-x^2` is `-(x^2)` and `2^3^2` is `2^(3^2)`.

mod diff;
mod display;
mod parse;

use std::str::FromStr;

use thiserror::Error;

pub use parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl UnaryOp {
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
        }
    }

    pub(crate) fn function(name: &str) -> Option<UnaryOp> {
        Some(match name {
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "exp" => UnaryOp::Exp,
            "log" => UnaryOp::Log,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Expression tree. Constants are always finite.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Const(f64),
    Var,
    Unary(UnaryOp, Box<Expression>),
    Binary(BinaryOp, Box<Expression>, Box<Expression>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("non-ASCII character at byte {offset}")]
    NonAscii { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NonAscii { offset } => *offset,
        }
    }
}

/// Domain violations found during evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero at x = {x}")]
    DivisionByZero { x: f64 },
    #[error("log of non-positive argument {arg} at x = {x}")]
    LogDomain { x: f64, arg: f64 },
    #[error("sqrt of negative argument {arg} at x = {x}")]
    SqrtDomain { x: f64, arg: f64 },
    #[error("negative base {base} raised to non-integer power {exponent} at x = {x}")]
    PowDomain { x: f64, base: f64, exponent: f64 },
    #[error("non-finite result at x = {x}")]
    Overflow { x: f64 },
}

impl EvalError {
    /// True when the failure signals an unbounded value (a pole or overflow)
    /// rather than leaving the function's real domain.
    pub fn is_unbounded(&self) -> bool {
        matches!(self, EvalError::DivisionByZero { .. } | EvalError::Overflow { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiffError {
    #[error("derivative order must be at least 1")]
    ZeroOrder,
    #[error("`{0}` is not differentiable")]
    NotDifferentiable(&'static str),
    #[error("exponent `{0}` is not constant; write general powers as exp(k*log(x))")]
    NonConstantExponent(String),
}

impl Expression {
    pub fn constant(value: f64) -> Expression {
        debug_assert!(value.is_finite());
        Expression::Const(value)
    }

    pub fn unary(op: UnaryOp, arg: Expression) -> Expression {
        Expression::Unary(op, Box::new(arg))
    }

    pub fn binary(op: BinaryOp, lhs: Expression, rhs: Expression) -> Expression {
        Expression::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// Evaluates at `x`, reporting domain violations instead of returning NaN.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expression::Const(c) => *c,
            Expression::Var => x,
            Expression::Unary(op, arg) => {
                let u = arg.eval(x)?;
                match op {
                    UnaryOp::Neg => -u,
                    UnaryOp::Sin => u.sin(),
                    UnaryOp::Cos => u.cos(),
                    UnaryOp::Exp => u.exp(),
                    UnaryOp::Log => {
                        if u <= 0.0 {
                            return Err(EvalError::LogDomain { x, arg: u });
                        }
                        u.ln()
                    }
                    UnaryOp::Sqrt => {
                        if u < 0.0 {
                            return Err(EvalError::SqrtDomain { x, arg: u });
                        }
                        u.sqrt()
                    }
                    UnaryOp::Abs => u.abs(),
                }
            }
            Expression::Binary(op, lhs, rhs) => {
                let l = lhs.eval(x)?;
                let r = rhs.eval(x)?;
                match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => {
                        if r == 0.0 {
                            return Err(EvalError::DivisionByZero { x });
                        }
                        l / r
                    }
                    BinaryOp::Pow => power(l, r, x)?,
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::Overflow { x })
        }
    }

    /// Value of the expression if it does not depend on `x`.
    pub fn constant_value(&self) -> Option<f64> {
        if self.contains_var() {
            None
        } else {
            self.eval(0.0).ok()
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expression::Const(_) => false,
            Expression::Var => true,
            Expression::Unary(_, a) => a.contains_var(),
            Expression::Binary(_, l, r) => l.contains_var() || r.contains_var(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expression::Const(_) | Expression::Var => 1,
            Expression::Unary(_, a) => 1 + a.size(),
            Expression::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }
}

fn power(base: f64, exponent: f64, x: f64) -> Result<f64, EvalError> {
    let integral = exponent.fract() == 0.0;
    if base == 0.0 && exponent < 0.0 {
        return Err(EvalError::DivisionByZero { x });
    }
    if base < 0.0 && !integral {
        return Err(EvalError::PowDomain { x, base, exponent });
    }
    if integral && exponent.abs() <= i32::MAX as f64 {
        Ok(base.powi(exponent as i32))
    } else {
        Ok(base.powf(exponent))
    }
}

impl FromStr for Expression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
