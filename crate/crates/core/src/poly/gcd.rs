//! Multivariate polynomial gcd.
//!
//! Content/primitive-part recursion on the highest occurring variable with
//! a primitive pseudo-remainder sequence, falling back to plain Euclidean
//! division for univariate inputs (the coefficients form a field, so no
//! coefficient-growth control is needed there). Monomial content is split
//! off first; it covers the bulk of the calls coming from valuation
//! bookkeeping.

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

use super::{Expo, MPoly};

/// Monic greatest common divisor. Errors when both inputs are zero.
pub fn gcd(a: &MPoly, b: &MPoly) -> Result<MPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    Ok(gcd_inner(a, b).monic())
}

fn gcd_inner(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.nvars());
    }
    let (ea, pa) = a.split_monomial_content();
    let (eb, pb) = b.split_monomial_content();
    let eg = Expo(
        ea.0.iter()
            .zip(eb.0.iter())
            .map(|(x, y)| *x.min(y))
            .collect(),
    );
    let core = if pa.is_constant() || pb.is_constant() {
        MPoly::one(a.nvars())
    } else {
        gcd_core(&pa, &pb)
    };
    MPoly::monomial(a.nvars(), eg, CycScalar::one()).mul(&core)
}

fn gcd_core(a: &MPoly, b: &MPoly) -> MPoly {
    let mut vars = a.vars_occurring();
    for v in b.vars_occurring() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let main = *vars.iter().max().unwrap();
    if vars.len() == 1 {
        return univariate_gcd(a, b, main);
    }
    let ua = a.as_univariate(main);
    let ub = b.as_univariate(main);
    let ca = list_content(&ua);
    let cb = list_content(&ub);
    let cg = gcd_inner(&ca, &cb);
    let pa = divide_out(&ua, &ca);
    let pb = divide_out(&ub, &cb);
    let pg = primitive_prs(pa, pb, main, a.nvars());
    cg.mul(&pg)
}

/// Euclidean gcd for inputs involving a single variable.
fn univariate_gcd(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let mut ua = a.as_univariate(var);
    let mut ub = b.as_univariate(var);
    trim(&mut ua);
    trim(&mut ub);
    while !ub.is_empty() {
        let r = field_rem(&ua, &ub);
        ua = ub;
        ub = r;
    }
    MPoly::from_univariate(&ua, var, a.nvars())
}

/// Remainder of `a` by `b` with exact field division of the leading
/// coefficients; the coefficient polynomials here are constants.
fn field_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let lb_c = lb.constant_value().expect("univariate leading coefficient");
    let lb_inv = lb_c.inv().expect("nonzero leading coefficient");
    while r.len() > db {
        let lead = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        if !lead.is_zero() {
            let q = lead.scale(&lb_inv);
            for (j, bj) in b.iter().enumerate() {
                let sub = q.mul(bj);
                r[k + j] = r[k + j].sub(&sub);
            }
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn trim(p: &mut Vec<MPoly>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn list_content(coeffs: &[MPoly]) -> MPoly {
    let mut acc = MPoly::zero(coeffs[0].nvars());
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = gcd_inner(&acc, c);
        if acc.is_constant() {
            break;
        }
    }
    acc.monic()
}

fn divide_out(coeffs: &[MPoly], content: &MPoly) -> Vec<MPoly> {
    coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                c.exact_div(content).expect("content divides coefficient")
            }
        })
        .collect()
}

/// Primitive pseudo-remainder sequence for primitive inputs; returns the
/// primitive gcd as a full polynomial.
fn primitive_prs(a: Vec<MPoly>, b: Vec<MPoly>, var: usize, nvars: usize) -> MPoly {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if b.len() == 1 {
            // a common divisor of primitive inputs with degree 0 in the
            // main variable divides both contents, which are trivial
            return MPoly::one(nvars);
        }
        let mut r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return MPoly::from_univariate(&b, var, nvars);
        }
        let cont = list_content(&r);
        r = divide_out(&r, &cont);
        a = b;
        b = r;
    }
}

/// Pseudo-remainder: repeatedly scales by the divisor's leading coefficient
/// so that every elimination step is polynomial.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    while r.len() > db {
        let lead = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        if lead.is_zero() {
            r.pop();
            trim(&mut r);
            continue;
        }
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            let sub = lead.mul(bj);
            r[k + j] = r[k + j].sub(&sub);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatFn;

    fn vars2() -> (MPoly, MPoly) {
        (MPoly::var(2, 0), MPoly::var(2, 1))
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = vars2();
        let a = x.mul(&x).sub(&y.mul(&y));
        let b = x.add(&y).pow(2);
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, x.add(&y));
        // verified against the exact-division oracle
        assert!(a.exact_div(&g).is_some());
        assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn gcd_with_one_and_self() {
        let (x, y) = vars2();
        let p = x.mul(&y).add(&x).scale(&CycScalar::from_int(3));
        assert!(gcd(&p, &MPoly::one(2)).unwrap().is_one());
        assert_eq!(gcd(&p, &p).unwrap(), p.monic());
        assert_eq!(gcd(&p, &MPoly::zero(2)).unwrap(), p.monic());
        assert_eq!(gcd(&MPoly::zero(2), &MPoly::zero(2)), Err(Error::UndefinedGcd));
    }

    #[test]
    fn three_variable_gcd() {
        let x = MPoly::var(3, 0);
        let y = MPoly::var(3, 1);
        let z = MPoly::var(3, 2);
        let common = x.add(&y).add(&z.mul(&z));
        let a = common.mul(&x.sub(&y));
        let b = common.mul(&common).mul(&z.add(&MPoly::one(3)));
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, common.monic());
    }

    #[test]
    fn cyclotomic_coefficients() {
        // (x - z3)(x - z3^2) = x^2 + x + 1 over Q(zeta_3)
        let x = MPoly::var(1, 0);
        let z3 = CycScalar::zeta(3);
        let a = x.sub(&MPoly::constant(1, z3.clone()));
        let b = x.sub(&MPoly::constant(1, z3.pow(2).unwrap()));
        let prod = a.mul(&b);
        let expected = x.mul(&x).add(&x).add(&MPoly::one(1));
        assert_eq!(prod, expected);
        assert_eq!(gcd(&prod, &a).unwrap(), a.monic());
    }

    #[test]
    fn ratfn_reduction_uses_gcd() {
        let (x, y) = vars2();
        let num = x.mul(&x).sub(&y.mul(&y));
        let den = x.add(&y);
        let r = RatFn::new(num, den).unwrap();
        assert_eq!(r.num(), &x.sub(&y));
        assert!(r.den().is_one());
    }
}
