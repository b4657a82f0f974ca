use num_traits::ToPrimitive;

use super::ast::*;
use crate::error::Result;
use crate::forms::{same_space, MeroForm, SpaceRef};
use crate::poly::{Ctx, Field, Poly, Rational};

fn exponent(e: &Expr) -> Option<u32> {
    match e {
        Expr::Num(n) => n.to_u32(),
        _ => None,
    }
}

/// Evaluates an expression as a polynomial over `ctx`. Division must be exact.
pub fn eval_poly(ctx: &Ctx, e: &Expr) -> Result<Poly> {
    Ok(match e {
        Expr::Num(n) => Poly::constant(ctx, Rational::from_bigint(n)),
        Expr::Name(s, p) => match ctx.index_of(s) {
            Some(i) => Poly::var(ctx, i),
            None => return Err(p.error(format!("unknown variable `{s}`"))),
        },
        Expr::Neg(a) => -eval_poly(ctx, a)?,
        Expr::Bin(op, a, b) => {
            if *op == BinOp::Caret {
                let k = exponent(b).ok_or_else(|| b.pos().error("exponent must be a non-negative integer"))?;
                return Ok(eval_poly(ctx, a)?.pow(k));
            }
            let (x, y) = (eval_poly(ctx, a)?, eval_poly(ctx, b)?);
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => &x * &y,
                BinOp::Div => {
                    if y.is_zero() {
                        return Err(b.pos().error("division by zero"));
                    }
                    x.div_exact(&y).ok_or_else(|| b.pos().error("division does not give a polynomial"))?
                }
                BinOp::Caret => unreachable!(),
            }
        }
    })
}

/// Evaluates a form expression on `space`. Names resolve to variables,
/// differentials `dX` of variables, then to forms supplied by `named`.
pub fn eval_form(space: &SpaceRef, e: &Expr, named: &dyn Fn(&str) -> Option<MeroForm>) -> Result<MeroForm> {
    let ctx = space.ctx();
    Ok(match e {
        Expr::Num(n) => MeroForm::function(space, Poly::constant(ctx, Rational::from_bigint(n))),
        Expr::Name(s, p) => {
            if let Some(i) = ctx.index_of(s) {
                MeroForm::function(space, Poly::var(ctx, i))
            } else if let Some(i) = s.strip_prefix('d').and_then(|v| ctx.index_of(v)) {
                MeroForm::dvar(space, i)
            } else if let Some(f) = named(s) {
                if !same_space(f.space(), space) {
                    return Err(p.error(format!("form `{s}` lives on `{}`, not `{}`", f.space().name(), space.name())));
                }
                f
            } else {
                return Err(p.error(format!("unknown name `{s}`")));
            }
        }
        Expr::Neg(a) => eval_form(space, a, named)?.neg(),
        Expr::Bin(op, a, b) => {
            let x = eval_form(space, a, named)?;
            if *op == BinOp::Caret {
                if let Some(k) = exponent(b) {
                    return power(&x, k).map_err(|m| a.pos().error(m));
                }
                let y = eval_form(space, b, named)?;
                return x.wedge(&y);
            }
            let y = eval_form(space, b, named)?;
            match op {
                BinOp::Add => x.add(&y)?,
                BinOp::Sub => x.sub(&y)?,
                BinOp::Mul => {
                    if y.degree() == 0 {
                        x.mul_function(&y)?
                    } else if x.degree() == 0 {
                        y.mul_function(&x)?
                    } else {
                        return Err(b.pos().error("product of two forms: use `^` for the wedge product"));
                    }
                }
                BinOp::Div => {
                    if y.degree() != 0 || y.is_zero() {
                        return Err(b.pos().error("can only divide by a non-zero function"));
                    }
                    let inv = MeroForm::function(space, y.den().clone());
                    x.mul_function(&inv)?.div_poly(&y.as_function_num())?
                }
                BinOp::Caret => unreachable!(),
            }
        }
    })
}

fn power(x: &MeroForm, k: u32) -> std::result::Result<MeroForm, String> {
    if x.degree() == 0 {
        let num = x.as_function_num().pow(k);
        let den = x.den().pow(k);
        let base = MeroForm::function(x.space(), num);
        return base.div_poly(&den).map_err(|e| e.to_string());
    }
    match k {
        1 => Ok(x.clone()),
        _ => Err(format!("power {k} of a form of degree {}; use `^` between forms for the wedge product", x.degree())),
    }
}
