//! Text grammar for scalars, polynomials, rational functions and tensor
//! expressions, with canonical printing. The grammar is documented in
//! `docs/grammar.md`; parsing is exact, there is no floating point.

mod ast;
mod lexer;
mod print;
mod tensor_eval;

pub use ast::{parse_expr, BinOp, Expr, FrameKind};
pub use print::{poly_to_string, ratfn_to_factor_string, ratfn_to_string, scalar_to_string};
pub use tensor_eval::{parse_tensor, tensor_to_string};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::{MPoly, RatFn};
use crate::scalar::{CycScalar, Rational};

use lexer::Pos;

/// Evaluation context: the declared variable names and the conductor that
/// `z` refers to.
#[derive(Clone, Debug)]
pub struct ParseCtx {
    pub vars: Vec<String>,
    pub conductor: u32,
}

impl ParseCtx {
    pub fn new(vars: &[String], conductor: u32) -> Self {
        ParseCtx {
            vars: vars.to_vec(),
            conductor,
        }
    }

    pub fn scalars_only(conductor: u32) -> Self {
        ParseCtx {
            vars: Vec::new(),
            conductor,
        }
    }

    fn var_index(&self, name: &str, pos: Pos) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| {
                Error::parse(
                    pos.line,
                    pos.col,
                    format!("unknown variable `{}` (declared: {})", name, self.vars.join(", ")),
                )
            })
    }
}

/// Parses a rational-function literal over the declared variables.
pub fn parse_ratfn(src: &str, ctx: &ParseCtx) -> Result<RatFn> {
    let expr = parse_expr(src)?;
    eval_scalar(&expr, ctx)
}

/// Parses a polynomial literal; rejects inputs with a nontrivial
/// denominator.
pub fn parse_poly(src: &str, ctx: &ParseCtx) -> Result<MPoly> {
    let r = parse_ratfn(src, ctx)?;
    r.as_polynomial().ok_or_else(|| {
        Error::InvalidInput(format!("`{}` is not a polynomial", src.trim()))
    })
}

/// Parses a scalar literal (no variables).
pub fn parse_scalar(src: &str, conductor: u32) -> Result<CycScalar> {
    let ctx = ParseCtx::scalars_only(conductor);
    let r = parse_ratfn(src, &ctx)?;
    let p = r
        .as_polynomial()
        .ok_or_else(|| Error::InvalidInput(format!("`{}` is not a scalar", src.trim())))?;
    p.constant_value()
        .ok_or_else(|| Error::InvalidInput(format!("`{}` is not a scalar", src.trim())))
}

pub(crate) fn eval_scalar(expr: &Expr, ctx: &ParseCtx) -> Result<RatFn> {
    let n = ctx.vars.len();
    match expr {
        Expr::Int(v, _) => Ok(RatFn::constant(
            n,
            CycScalar::from_rational(Rational::from_integer(v.clone())),
        )),
        Expr::Zeta(_) => Ok(RatFn::constant(n, CycScalar::zeta(ctx.conductor))),
        Expr::Var(name, pos) => {
            let idx = ctx.var_index(name, *pos)?;
            Ok(RatFn::var(n, idx))
        }
        Expr::Frame(_, _, pos) => Err(Error::parse(
            pos.line,
            pos.col,
            "frame symbols are not allowed in scalar context",
        )),
        Expr::Neg(inner, _) => Ok(eval_scalar(inner, ctx)?.neg()),
        Expr::Bin(op, lhs, rhs, pos) => {
            let a = eval_scalar(lhs, ctx)?;
            match op {
                BinOp::Add => Ok(a.add(&eval_scalar(rhs, ctx)?)),
                BinOp::Sub => Ok(a.sub(&eval_scalar(rhs, ctx)?)),
                BinOp::Mul => Ok(a.mul(&eval_scalar(rhs, ctx)?)),
                BinOp::Div => {
                    let b = eval_scalar(rhs, ctx)?;
                    a.div(&b).map_err(|_| {
                        Error::parse(pos.line, pos.col, "division by zero")
                    })
                }
                BinOp::Pow => {
                    let e = expect_int_exponent(rhs, ctx)?;
                    a.pow(e).map_err(|_| {
                        Error::parse(pos.line, pos.col, "zero cannot be raised to a negative power")
                    })
                }
                BinOp::Tensor => Err(Error::parse(
                    pos.line,
                    pos.col,
                    "tensor product is not allowed in scalar context",
                )),
            }
        }
    }
}

pub(crate) fn expect_int_exponent(expr: &Expr, ctx: &ParseCtx) -> Result<i64> {
    let r = eval_scalar(expr, ctx)?;
    let pos = expr.pos();
    let err = || Error::parse(pos.line, pos.col, "exponent must be an integer");
    let p = r.as_polynomial().ok_or_else(err)?;
    let c = p.constant_value().ok_or_else(err)?;
    let q = c.to_rational().ok_or_else(err)?;
    if !q.is_integer() {
        return Err(err());
    }
    big_to_i64(&q.to_integer()).ok_or_else(err)
}

fn big_to_i64(v: &BigInt) -> Option<i64> {
    if v.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    v.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx1() -> ParseCtx {
        ParseCtx::new(&["v".to_string()], 1)
    }

    fn ctx2() -> ParseCtx {
        ParseCtx::new(&["x1".to_string(), "x2".to_string()], 1)
    }

    #[test]
    fn scalar_literals() {
        assert_eq!(parse_scalar("3", 1).unwrap(), CycScalar::from_int(3));
        assert_eq!(
            parse_scalar("1/2", 1).unwrap(),
            CycScalar::from_rational(crate::scalar::rat(1, 2))
        );
        // z^2 - 1/2 at conductor 8
        let s = parse_scalar("z^2 - 1/2", 8).unwrap();
        let expected = CycScalar::zeta(8)
            .pow(2)
            .unwrap()
            .sub(&CycScalar::from_rational(crate::scalar::rat(1, 2)));
        assert_eq!(s, expected);
        assert_eq!(parse_scalar("-z", 4).unwrap(), CycScalar::zeta(4).neg());
    }

    #[test]
    fn poly_literals() {
        let p = parse_poly("x1^2 - 4*x2", &ctx2()).unwrap();
        let x1 = MPoly::var(2, 0);
        let x2 = MPoly::var(2, 1);
        assert_eq!(p, x1.pow(2).sub(&x2.scale(&CycScalar::from_int(4))));

        // division that cancels is still a polynomial
        let q = parse_poly("(x1^2 - x2^2)/(x1 + x2)", &ctx2()).unwrap();
        assert_eq!(q, x1.sub(&x2));

        assert!(parse_poly("1/x1", &ctx2()).is_err());
        assert!(parse_poly("x3", &ctx2()).is_err());
    }

    #[test]
    fn ratfn_literals_and_negative_powers() {
        let r = parse_ratfn("v^-3", &ctx1()).unwrap();
        let v = MPoly::var(1, 0);
        assert_eq!(r, RatFn::new(MPoly::one(1), v.pow(3)).unwrap());

        let r2 = parse_ratfn("(v - 1)^2 / v^3", &ctx1()).unwrap();
        assert_eq!(
            r2,
            RatFn::new(v.sub(&MPoly::one(1)).pow(2), v.pow(3)).unwrap()
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // ^ binds tighter than *, which binds tighter than +
        let ctx = ctx1();
        let a = parse_ratfn("2*v^2 + v", &ctx).unwrap();
        let v = MPoly::var(1, 0);
        assert_eq!(
            a,
            RatFn::from_poly(v.pow(2).scale(&CycScalar::from_int(2)).add(&v))
        );
        // left-associative division: 8/2/2 = 2
        assert_eq!(parse_scalar("8/2/2", 1).unwrap(), CycScalar::from_int(2));
        // right-associative power: 2^3^2 = 2^9
        assert_eq!(parse_scalar("2^3^2", 1).unwrap(), CycScalar::from_int(512));
    }

    #[test]
    fn print_parse_round_trip() {
        let ctx = ctx2();
        for src in [
            "x1^2*x2 + 2*x1 - 1/3",
            "x1^3 - x2^3",
            "(x1^2 + x2)/(x1*x2 + 1)",
            "1",
            "0",
        ] {
            let r = parse_ratfn(src, &ctx).unwrap();
            let printed = ratfn_to_string(&r, &ctx.vars);
            let reparsed = parse_ratfn(&printed, &ctx).unwrap();
            assert_eq!(r, reparsed, "round trip failed for `{}` -> `{}`", src, printed);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_ratfn("v + $", &ctx1()).unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
