//! Canonical printing. Terms are emitted in descending graded
//! lexicographic order; rational functions print as `(num)/(den)` with the
//! denominator already monic, so printing is deterministic.

use crate::poly::{MPoly, RatFn};
use crate::scalar::CycScalar;

pub fn scalar_to_string(c: &CycScalar) -> String {
    c.to_string()
}

/// True when the scalar prints as a single product (no internal `+`/`-`),
/// so it can be juxtaposed with a monomial without parentheses.
fn scalar_is_simple(c: &CycScalar) -> bool {
    c.coeffs().iter().filter(|r| !num_traits::Zero::is_zero(*r)).count() <= 1
}

fn scalar_is_negative_simple(c: &CycScalar) -> bool {
    scalar_is_simple(c)
        && c.coeffs()
            .iter()
            .any(|r| num_traits::Signed::is_negative(r))
}

fn monomial_to_string(expo: &[u32], vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in expo.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

pub fn poly_to_string(p: &MPoly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (k, (e, c)) in terms.iter().rev().enumerate() {
        let mono = monomial_to_string(&e.0, vars);
        let (sign_neg, coeff_str) = if scalar_is_negative_simple(c) {
            (true, scalar_to_string(&c.neg()))
        } else if scalar_is_simple(c) {
            (false, scalar_to_string(c))
        } else {
            (false, format!("({})", scalar_to_string(c)))
        };
        if k == 0 {
            if sign_neg {
                out.push('-');
            }
        } else if sign_neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mono.is_empty() {
            out.push_str(&coeff_str);
        } else if coeff_str == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&coeff_str);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

pub fn ratfn_to_string(r: &RatFn, vars: &[String]) -> String {
    if r.den().is_one() {
        return poly_to_string(r.num(), vars);
    }
    format!(
        "({})/({})",
        poly_to_string(r.num(), vars),
        poly_to_string(r.den(), vars)
    )
}

/// Coefficient position in a tensor term: wraps in parentheses whenever the
/// expression is not a single product.
pub fn ratfn_to_factor_string(r: &RatFn, vars: &[String]) -> String {
    if r.den().is_one() && r.num().num_terms() <= 1 {
        let s = poly_to_string(r.num(), vars);
        if s.starts_with('-') {
            format!("({})", s)
        } else {
            s
        }
    } else {
        format!("({})", ratfn_to_string(r, vars))
    }
}
