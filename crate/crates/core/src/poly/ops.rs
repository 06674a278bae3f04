//! Checked operation layer over the polynomial types, matching the
//! error contracts of the public interface.

use crate::error::{Error, Result};

use super::{MPoly, RatFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(op: PolyOp, a: &MPoly, b: &MPoly) -> Result<MPoly> {
    if a.nvars() != b.nvars() {
        return Err(Error::Arity(format!(
            "polynomials in {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    Ok(match op {
        PolyOp::Add => a.add(b),
        PolyOp::Sub => a.sub(b),
        PolyOp::Mul => a.mul(b),
    })
}

/// Exact quotient, or `None` when `b` does not divide `a`.
pub fn exact_divide(a: &MPoly, b: &MPoly) -> Result<Option<MPoly>> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if a.nvars() != b.nvars() {
        return Err(Error::Arity(format!(
            "polynomials in {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    Ok(a.exact_div(b))
}

pub fn partial_derivative(p: &MPoly, var: usize) -> Result<MPoly> {
    if var >= p.nvars() {
        return Err(Error::Arity(format!(
            "variable index {} out of range for {} variables",
            var,
            p.nvars()
        )));
    }
    Ok(p.derivative(var))
}

pub fn substitute(p: &MPoly, images: &[RatFn]) -> Result<RatFn> {
    if images.len() != p.nvars() {
        return Err(Error::Arity(format!(
            "{} images for {} variables",
            images.len(),
            p.nvars()
        )));
    }
    if let Some(first) = images.first() {
        if images.iter().any(|r| r.nvars() != first.nvars()) {
            return Err(Error::Arity("images disagree on variable count".into()));
        }
    }
    Ok(p.substitute(images))
}

/// Net multiplicity of the declared irreducible `delta` in `h`: the largest
/// power dividing the numerator minus the largest power dividing the
/// denominator. Additive in `h`.
pub fn factor_multiplicity(h: &RatFn, delta: &MPoly) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::ZeroInput(
            "valuation of the zero function is undefined".into(),
        ));
    }
    if delta.is_constant() {
        return Err(Error::InvalidComponent(
            "valuation along a constant is undefined".into(),
        ));
    }
    Ok(poly_multiplicity(h.num(), delta) - poly_multiplicity(h.den(), delta))
}

pub(crate) fn poly_multiplicity(p: &MPoly, delta: &MPoly) -> i64 {
    debug_assert!(!p.is_zero());
    let mut count = 0i64;
    let mut cur = p.clone();
    while let Some(q) = cur.exact_div(delta) {
        count += 1;
        cur = q;
    }
    count
}
