use std::fmt;

use super::{BinaryOp, Expression, UnaryOp};

// Binding strength, loosest first. Atoms include function calls and
// parenthesised negative constants.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const NEGATION: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn strength(e: &Expression) -> u8 {
    match e {
        Expression::Const(_) | Expression::Var => ATOM,
        Expression::Unary(UnaryOp::Neg, _) => NEGATION,
        Expression::Unary(..) => ATOM,
        Expression::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => SUM,
        Expression::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => PRODUCT,
        Expression::Binary(BinaryOp::Pow, ..) => POWER,
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expression, min: u8) -> fmt::Result {
    if strength(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints text that parses back to an evaluation-equivalent expression.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Const(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => {
                write!(f, "(-{})", -c)
            }
            Expression::Const(c) => write!(f, "{c}"),
            Expression::Var => f.write_str("x"),
            Expression::Unary(UnaryOp::Neg, arg) => {
                f.write_str("-")?;
                child(f, arg, POWER)
            }
            Expression::Unary(op, arg) => write!(f, "{}({arg})", op.name()),
            Expression::Binary(op, lhs, rhs) => {
                let (sym, left_min, right_min) = match op {
                    BinaryOp::Add => ("+", SUM, PRODUCT),
                    BinaryOp::Sub => ("-", SUM, PRODUCT),
                    BinaryOp::Mul => ("*", PRODUCT, POWER),
                    BinaryOp::Div => ("/", PRODUCT, POWER),
                    BinaryOp::Pow => ("^", ATOM, POWER),
                };
                child(f, lhs, left_min)?;
                f.write_str(sym)?;
                // a bare `-` after an operator reads badly; parenthesise it
                let right_min = if strength(rhs) == NEGATION { ATOM } else { right_min };
                child(f, rhs, right_min)
            }
        }
    }
}
