//! Evaluation of parsed expressions into tensor fields, and canonical
//! tensor printing. Coefficients are rational-function literals; `d(v)`
//! and `D(v)` are the frame symbols for `dv` and `∂/∂v`; `&` is the tensor
//! product; `^` between covariant fields is the wedge.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::RatFn;
use crate::tensor::{CoordSystem, TensorField};

use super::ast::{parse_expr, BinOp, Expr, FrameKind};
use super::{eval_scalar, expect_int_exponent, ParseCtx};

enum Value {
    Scalar(RatFn),
    Tensor(TensorField),
}

pub fn parse_tensor(src: &str, coords: &Arc<CoordSystem>, conductor: u32) -> Result<TensorField> {
    let expr = parse_expr(src)?;
    let ctx = ParseCtx::new(&coords.vars, conductor);
    match eval(&expr, &ctx, coords)? {
        Value::Tensor(t) => Ok(t),
        Value::Scalar(f) => Ok(TensorField::function(coords.clone(), f)),
    }
}

fn eval(expr: &Expr, ctx: &ParseCtx, coords: &Arc<CoordSystem>) -> Result<Value> {
    match expr {
        Expr::Int(..) | Expr::Zeta(..) | Expr::Var(..) => {
            Ok(Value::Scalar(eval_scalar(expr, ctx)?))
        }
        Expr::Frame(kind, var, pos) => {
            let idx = coords.vars.iter().position(|v| v == var).ok_or_else(|| {
                Error::parse(
                    pos.line,
                    pos.col,
                    format!(
                        "unknown frame variable `{}` (chart variables: {})",
                        var,
                        coords.vars.join(", ")
                    ),
                )
            })?;
            let t = match kind {
                FrameKind::Differential => TensorField::differential(coords.clone(), idx),
                FrameKind::VectorField => TensorField::vector_field(coords.clone(), idx),
            };
            Ok(Value::Tensor(t))
        }
        Expr::Neg(inner, _) => Ok(match eval(inner, ctx, coords)? {
            Value::Scalar(f) => Value::Scalar(f.neg()),
            Value::Tensor(t) => Value::Tensor(t.neg()),
        }),
        Expr::Bin(op, lhs, rhs, pos) => {
            let (line, col) = (pos.line, pos.col);
            match op {
                BinOp::Add | BinOp::Sub => {
                    let a = eval(lhs, ctx, coords)?;
                    let b = eval(rhs, ctx, coords)?;
                    match (a, b, op) {
                        (Value::Scalar(a), Value::Scalar(b), BinOp::Add) => {
                            Ok(Value::Scalar(a.add(&b)))
                        }
                        (Value::Scalar(a), Value::Scalar(b), BinOp::Sub) => {
                            Ok(Value::Scalar(a.sub(&b)))
                        }
                        (Value::Tensor(a), Value::Tensor(b), BinOp::Add) => {
                            Ok(Value::Tensor(a.add(&b)?))
                        }
                        (Value::Tensor(a), Value::Tensor(b), BinOp::Sub) => {
                            Ok(Value::Tensor(a.sub(&b)?))
                        }
                        _ => Err(Error::parse(
                            line,
                            col,
                            "cannot add a scalar and a tensor field",
                        )),
                    }
                }
                BinOp::Mul => {
                    let a = eval(lhs, ctx, coords)?;
                    let b = eval(rhs, ctx, coords)?;
                    match (a, b) {
                        (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a.mul(&b))),
                        (Value::Scalar(f), Value::Tensor(t))
                        | (Value::Tensor(t), Value::Scalar(f)) => Ok(Value::Tensor(t.scale(&f))),
                        (Value::Tensor(_), Value::Tensor(_)) => Err(Error::parse(
                            line,
                            col,
                            "use `&` for tensor products of fields",
                        )),
                    }
                }
                BinOp::Div => {
                    let a = eval(lhs, ctx, coords)?;
                    let b = eval(rhs, ctx, coords)?;
                    match (a, b) {
                        (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(
                            a.div(&b)
                                .map_err(|_| Error::parse(line, col, "division by zero"))?,
                        )),
                        (Value::Tensor(t), Value::Scalar(f)) => {
                            let inv = f
                                .inv()
                                .map_err(|_| Error::parse(line, col, "division by zero"))?;
                            Ok(Value::Tensor(t.scale(&inv)))
                        }
                        _ => Err(Error::parse(line, col, "cannot divide by a tensor field")),
                    }
                }
                BinOp::Tensor => {
                    let a = eval(lhs, ctx, coords)?;
                    let b = eval(rhs, ctx, coords)?;
                    match (a, b) {
                        (Value::Tensor(a), Value::Tensor(b)) => {
                            Ok(Value::Tensor(a.tensor_product(&b)?))
                        }
                        _ => Err(Error::parse(
                            line,
                            col,
                            "`&` expects tensor fields on both sides (use `*` for scalars)",
                        )),
                    }
                }
                BinOp::Pow => {
                    let a = eval(lhs, ctx, coords)?;
                    match a {
                        Value::Scalar(f) => {
                            let e = expect_int_exponent(rhs, ctx)?;
                            Ok(Value::Scalar(f.pow(e).map_err(|_| {
                                Error::parse(line, col, "zero cannot be raised to a negative power")
                            })?))
                        }
                        Value::Tensor(t) => {
                            let b = eval(rhs, ctx, coords)?;
                            match b {
                                Value::Tensor(u) => Ok(Value::Tensor(t.wedge(&u)?)),
                                Value::Scalar(_) => Err(Error::parse(
                                    line,
                                    col,
                                    "`^` on a tensor field expects another covariant field (wedge)",
                                )),
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Canonical printing: terms in multi-index order, coefficients in
/// canonical rational-function form, frame factors joined with ` & `.
pub fn tensor_to_string(t: &TensorField) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let vars = &t.coords().vars;
    let mut parts = Vec::new();
    for (idx, coeff) in t.terms() {
        let mut factors = Vec::new();
        for &i in &idx.up {
            factors.push(format!("D({})", vars[i]));
        }
        for &j in &idx.down {
            factors.push(format!("d({})", vars[j]));
        }
        let coeff_str = super::print::ratfn_to_factor_string(coeff, vars);
        let term = if factors.is_empty() {
            coeff_str
        } else if coeff.is_one() {
            factors.join(" & ")
        } else {
            format!("{} * {}", coeff_str, factors.join(" & "))
        };
        parts.push(term);
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;
    use crate::tensor::MultiIndex;

    fn quot2() -> Arc<CoordSystem> {
        CoordSystem::new("v", vec!["v1".to_string(), "v2".to_string()])
    }

    fn line() -> Arc<CoordSystem> {
        CoordSystem::new("v", vec!["v".to_string()])
    }

    #[test]
    fn golden_case_expression() {
        let c = line();
        let t = parse_tensor(
            "v^-3 * d(v)&d(v)&d(v)&d(v)&d(v)&d(v)&d(v)",
            &c,
            1,
        )
        .unwrap();
        assert_eq!(t.valence(), (0, 7));
        assert_eq!(t.num_terms(), 1);
        let (idx, coeff) = t.terms().next().unwrap();
        assert_eq!(idx.down, vec![0; 7]);
        assert_eq!(coeff, &RatFn::var(1, 0).pow(-3).unwrap());
    }

    #[test]
    fn mixed_expression_from_the_grammar() {
        let c = quot2();
        let t = parse_tensor("(1/v1) * D(v1) & d(v2) + v2 * d(v1) & d(v1)", &c, 1).unwrap();
        assert_eq!(t.num_terms(), 2);
        let terms: Vec<_> = t.terms().collect();
        let keys: Vec<&MultiIndex> = terms.iter().map(|(k, _)| *k).collect();
        assert!(keys.contains(&&MultiIndex { up: vec![0], down: vec![1] }));
        assert!(keys.contains(&&MultiIndex { up: vec![], down: vec![0, 0] }));
        // mismatched types cannot be summed
        assert!(parse_tensor("d(v1) + d(v1) & d(v2)", &c, 1).is_err());
    }

    #[test]
    fn wedge_in_the_grammar() {
        let c = quot2();
        let w = parse_tensor("d(v1)^d(v2)", &c, 1).unwrap();
        let direct = parse_tensor("d(v1)&d(v2) - d(v2)&d(v1)", &c, 1).unwrap();
        assert_eq!(w, direct);
        assert!(w.is_skew_covariant());
    }

    #[test]
    fn print_parse_round_trip() {
        let c = quot2();
        for src in [
            "v1 * d(v1) & d(v2) + (-1) * d(v2) & d(v1)",
            "(1/v1) * D(v1)",
            "v1^2 - v2",
            "D(v1) & D(v2) & d(v1)",
            "(v1^2 - 4*v2) * d(v2)",
        ] {
            let t = parse_tensor(src, &c, 1).unwrap();
            let printed = tensor_to_string(&t);
            let reparsed = parse_tensor(&printed, &c, 1).unwrap();
            assert_eq!(t, reparsed, "round trip failed: `{}` -> `{}`", src, printed);
        }
    }

    #[test]
    fn scalar_expression_is_a_function_field() {
        let c = line();
        let t = parse_tensor("v^2 - 1", &c, 1).unwrap();
        assert_eq!(t.valence(), (0, 0));
        let v = MPoly::var(1, 0);
        assert_eq!(
            t.terms().next().unwrap().1,
            &RatFn::from_poly(v.pow(2).sub(&MPoly::one(1)))
        );
    }

    #[test]
    fn frame_errors_are_positioned() {
        let c = line();
        let err = parse_tensor("d(y)", &c, 1).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
