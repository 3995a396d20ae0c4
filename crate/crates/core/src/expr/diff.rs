//! Symbolic differentiation with light simplification.
//!
//! Simplification is local and best-effort: constants are folded and the
//! identities `0·e = 0`, `1·e = e`, `e ± 0 = e`, `e/1 = e`, `e^1 = e`,
//! `e^0 = 1` and `--e = e` are applied while the derivative is built.

use super::{BinaryOp, DiffError, Expression, UnaryOp};

use BinaryOp::*;
use Expression::{Binary, Const, Unary, Var};

impl Expression {
    /// Derivative of the given order.
    pub fn differentiate(&self, order: u32) -> Result<Expression, DiffError> {
        if order == 0 {
            return Err(DiffError::ZeroOrder);
        }
        let mut d = derive(self)?;
        for _ in 1..order {
            d = derive(&d)?;
        }
        Ok(d)
    }
}

fn derive(e: &Expression) -> Result<Expression, DiffError> {
    if !e.contains_var() {
        return Ok(Const(0.0));
    }
    Ok(match e {
        Const(_) => Const(0.0),
        Var => Const(1.0),
        Unary(op, arg) => {
            let u = arg.as_ref();
            let du = derive(u)?;
            let outer = match op {
                UnaryOp::Neg => return Ok(neg(du)),
                UnaryOp::Sin => unary(UnaryOp::Cos, u.clone()),
                UnaryOp::Cos => neg(unary(UnaryOp::Sin, u.clone())),
                UnaryOp::Exp => unary(UnaryOp::Exp, u.clone()),
                UnaryOp::Log => return Ok(div(du, u.clone())),
                UnaryOp::Sqrt => {
                    return Ok(div(du, mul(Const(2.0), unary(UnaryOp::Sqrt, u.clone()))))
                }
                UnaryOp::Abs => return Err(DiffError::NotDifferentiable("abs")),
            };
            mul(outer, du)
        }
        Binary(op, l, r) => {
            let (u, v) = (l.as_ref(), r.as_ref());
            match op {
                Add => add(derive(u)?, derive(v)?),
                Sub => sub(derive(u)?, derive(v)?),
                Mul => add(mul(derive(u)?, v.clone()), mul(u.clone(), derive(v)?)),
                Div => div(
                    sub(mul(derive(u)?, v.clone()), mul(u.clone(), derive(v)?)),
                    pow(v.clone(), Const(2.0)),
                ),
                Pow => {
                    let k = fold(v).ok_or_else(|| DiffError::NonConstantExponent(v.to_string()))?;
                    mul(mul(Const(k), pow(u.clone(), Const(k - 1.0))), derive(u)?)
                }
            }
        }
    })
}

/// Value of a variable-free subtree, if it evaluates cleanly.
fn fold(e: &Expression) -> Option<f64> {
    e.constant_value()
}

fn finite(v: f64) -> Option<Expression> {
    v.is_finite().then_some(Const(v))
}

/// Collapses a variable-free subtree to its value where that is finite.
fn lit(e: Expression) -> Expression {
    if matches!(e, Const(_)) || e.contains_var() {
        return e;
    }
    match fold(&e).and_then(finite) {
        Some(c) => c,
        None => e,
    }
}

pub(crate) fn neg(e: Expression) -> Expression {
    match e {
        Const(c) => Const(-c),
        Unary(UnaryOp::Neg, inner) => *inner,
        other => Unary(UnaryOp::Neg, Box::new(other)),
    }
}

pub(crate) fn unary(op: UnaryOp, e: Expression) -> Expression {
    let node = Unary(op, Box::new(e));
    if let Unary(_, ref arg) = node {
        if let Const(_) = **arg {
            if let Ok(v) = node.eval(0.0) {
                return Const(v);
            }
        }
    }
    node
}

pub(crate) fn add(l: Expression, r: Expression) -> Expression {
    let (l, r) = (lit(l), lit(r));
    match (&l, &r) {
        (Const(a), Const(b)) => finite(a + b).unwrap_or_else(|| Binary(Add, l.into(), r.into())),
        (Const(z), _) if *z == 0.0 => r,
        (_, Const(z)) if *z == 0.0 => l,
        _ => Binary(Add, l.into(), r.into()),
    }
}

pub(crate) fn sub(l: Expression, r: Expression) -> Expression {
    let (l, r) = (lit(l), lit(r));
    match (&l, &r) {
        (Const(a), Const(b)) => finite(a - b).unwrap_or_else(|| Binary(Sub, l.into(), r.into())),
        (_, Const(z)) if *z == 0.0 => l,
        (Const(z), _) if *z == 0.0 => neg(r),
        _ => Binary(Sub, l.into(), r.into()),
    }
}

pub(crate) fn mul(l: Expression, r: Expression) -> Expression {
    let (l, r) = (lit(l), lit(r));
    match (&l, &r) {
        (Const(a), Const(b)) => finite(a * b).unwrap_or_else(|| Binary(Mul, l.into(), r.into())),
        (Const(z), _) | (_, Const(z)) if *z == 0.0 => Const(0.0),
        (Const(o), _) if *o == 1.0 => r,
        (_, Const(o)) if *o == 1.0 => l,
        (Const(m), _) if *m == -1.0 => neg(r),
        (_, Const(m)) if *m == -1.0 => neg(l),
        // collect constant factors on the left: c1 * (c2 * e) -> (c1*c2) * e
        (Const(a), Binary(Mul, inner_l, inner_r)) => match inner_l.as_ref() {
            Const(b) => mul(Const(a * b), inner_r.as_ref().clone()),
            _ => Binary(Mul, l.into(), r.into()),
        },
        (_, Const(_)) => mul(r, l),
        _ => Binary(Mul, l.into(), r.into()),
    }
}

pub(crate) fn div(l: Expression, r: Expression) -> Expression {
    let (l, r) = (lit(l), lit(r));
    match (&l, &r) {
        (Const(a), Const(b)) if *b != 0.0 => {
            finite(a / b).unwrap_or_else(|| Binary(Div, l.into(), r.into()))
        }
        (Const(z), _) if *z == 0.0 => Const(0.0),
        (_, Const(o)) if *o == 1.0 => l,
        _ => Binary(Div, l.into(), r.into()),
    }
}

pub(crate) fn pow(base: Expression, exponent: Expression) -> Expression {
    match (&base, &exponent) {
        (_, Const(z)) if *z == 0.0 => Const(1.0),
        (_, Const(o)) if *o == 1.0 => base,
        (Const(_), Const(_)) => {
            let node = Binary(Pow, base.into(), exponent.into());
            match node.constant_value() {
                Some(v) => Const(v),
                None => node,
            }
        }
        _ => Binary(Pow, base.into(), exponent.into()),
    }
}
