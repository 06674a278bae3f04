//! Exact scalars: arbitrary-precision rationals and elements of the
//! cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycScalar`] is stored as a vector of rational coefficients over the
//! power basis `zeta^0 .. zeta^{phi(N)-1}`, reduced modulo the `N`-th
//! cyclotomic polynomial. Reduction makes the representation canonical, so
//! equality at a fixed conductor is a plain coefficient comparison; mixed
//! conductors are compared after lifting to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut d = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            d.push(i);
            if i != n / i {
                d.push(n / i);
            }
        }
        i += 1;
    }
    d.sort_unstable();
    d
}

/// Dense integer polynomial helpers for the cyclotomic cache (ascending
/// degree, no trailing zeros).
fn int_poly_trim(p: &mut Vec<BigInt>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials where the divisor is monic.
fn int_poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().map_or(false, |c| c.is_one()));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let idx = k - dd + j;
            let sub = &c * dj;
            rem[idx] -= sub;
        }
    }
    int_poly_trim(&mut rem);
    debug_assert!(rem.is_empty(), "cyclotomic division left a remainder");
    quot
}

struct CycInfo {
    phi: u32,
    /// Coefficients of the cyclotomic polynomial, ascending, degree phi(n),
    /// monic.
    minpoly: Vec<Rational>,
}

fn cyclotomic_info(n: u32) -> Arc<CycInfo> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycInfo>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(info) = cache.lock().unwrap().get(&n) {
        return info.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let info = Arc::new(CycInfo {
        phi: (poly.len() - 1) as u32,
        minpoly: poly
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    });
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| info.clone())
        .clone()
}

/// The `n`-th cyclotomic polynomial with integer coefficients, computed by
/// dividing `x^n - 1` by the cyclotomic polynomials of the proper divisors.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors(n) {
        if d == n {
            continue;
        }
        den = int_poly_mul(&den, &cyclotomic_info(d).minpoly_as_int());
    }
    int_poly_div_monic(&num, &den)
}

impl CycInfo {
    fn minpoly_as_int(&self) -> Vec<BigInt> {
        self.minpoly
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect()
    }
}

/// An exact element of the cyclotomic field `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct CycScalar {
    conductor: u32,
    /// Length phi(conductor), coefficients over the power basis, canonical
    /// reduction modulo the cyclotomic polynomial.
    coeffs: Vec<Rational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        CycScalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        CycScalar::from_rational(rat_int(n))
    }

    /// Primitive `n`-th root of unity `zeta_n`.
    pub fn zeta(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let phi = euler_phi(n) as usize;
        let mut coeffs = vec![Rational::zero(); n as usize + 1];
        coeffs[1] = Rational::one();
        coeffs.truncate(phi.max(2));
        let mut s = CycScalar {
            conductor: n,
            coeffs,
        };
        s.reduce();
        s
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let info = cyclotomic_info(self.conductor);
        let phi = info.phi as usize;
        if self.coeffs.len() > phi {
            // polynomial remainder modulo the monic minimal polynomial
            for k in (phi..self.coeffs.len()).rev() {
                let c = std::mem::replace(&mut self.coeffs[k], Rational::zero());
                if c.is_zero() {
                    continue;
                }
                for (j, mj) in info.minpoly.iter().enumerate().take(phi) {
                    let sub = &c * mj;
                    self.coeffs[k - phi + j] -= sub;
                }
            }
        }
        self.coeffs.resize(phi, Rational::zero());
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in `Q` (in the current representation).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-represent the element in `Q(zeta_m)`; errors unless the current
    /// conductor divides `m`.
    pub fn embed(&self, m: u32) -> Result<CycScalar> {
        if m == 0 || m % self.conductor != 0 {
            return Err(Error::InvalidEmbedding {
                found: self.conductor,
                target: m,
            });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as usize;
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        let mut out = CycScalar { conductor: m, coeffs };
        out.reduce();
        Ok(out)
    }

    fn common(a: &CycScalar, b: &CycScalar) -> (CycScalar, CycScalar) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        let (mut a, b) = CycScalar::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycScalar) -> CycScalar {
        let (mut a, b) = CycScalar::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CycScalar {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        let (a, b) = CycScalar::common(self, other);
        let mut coeffs = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                coeffs[i + j] += x * y;
            }
        }
        let mut out = CycScalar {
            conductor: a.conductor,
            coeffs,
        };
        out.reduce();
        out
    }

    pub fn scale(&self, r: &Rational) -> CycScalar {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= r;
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[t]` modulo the cyclotomic polynomial.
    pub fn inv(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(CycScalar {
                conductor: self.conductor,
                coeffs: {
                    let mut v = vec![Rational::zero(); self.coeffs.len()];
                    v[0] = Rational::one() / self.coeffs[0].clone();
                    v
                },
            });
        }
        let info = cyclotomic_info(self.conductor);
        // Bezout: s*a + t*minpoly = gcd = const; the minimal polynomial is
        // irreducible over Q, so the gcd is a nonzero constant.
        let mut r0: Vec<Rational> = info.minpoly.clone();
        let mut r1: Vec<Rational> = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while degree(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert!(!r1.is_empty(), "cyclotomic polynomial must be irreducible");
        let c = r1[0].clone();
        let mut coeffs: Vec<Rational> = s1.into_iter().map(|x| x / c.clone()).collect();
        coeffs.resize(info.phi as usize, Rational::zero());
        let mut out = CycScalar {
            conductor: self.conductor,
            coeffs,
        };
        out.reduce();
        Ok(out)
    }

    pub fn div(&self, other: &CycScalar) -> Result<CycScalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycScalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = CycScalar::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Ok(acc)
    }

    /// Least `r >= 1` with `self^r = 1`, or `None` if the element is not a
    /// root of unity. Roots of unity in `Q(zeta_N)` all have order dividing
    /// `lcm(2, N)`.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let m = self.conductor.lcm(&2);
        let full = self.pow(m as i64).ok()?;
        if !full.is_one() {
            return None;
        }
        divisors(m)
            .into_iter()
            .find(|&r| self.pow(r as i64).map_or(false, |p| p.is_one()))
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn degree(p: &[Rational]) -> isize {
    p.len() as isize - 1
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = rem[k].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        quot[k - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let sub = &c * bj;
            rem[k - db + j] -= sub;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycScalar::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Display for CycScalar {
    /// Prints the canonical power-basis form, e.g. `z^2 - 1/2`; `z` denotes
    /// the primitive root for the element's conductor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Spec-level operation wrappers.
pub fn cyc_embed(x: &CycScalar, m: u32) -> Result<CycScalar> {
    x.embed(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> CycScalar {
        CycScalar::zeta(n)
    }

    #[test]
    fn cyclotomic_polynomials_are_correct() {
        // Phi_1 = t - 1, Phi_2 = t + 1, Phi_4 = t^2 + 1, Phi_6 = t^2 - t + 1
        let p6 = cyclotomic_polynomial(6);
        assert_eq!(p6, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        let p12 = cyclotomic_polynomial(12);
        assert_eq!(
            p12,
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn embed_identity_element() {
        let one = CycScalar::one();
        let e = cyc_embed(&one, 4).unwrap();
        assert_eq!(e.conductor(), 4);
        assert!(e.is_one());
    }

    #[test]
    fn embed_zeta2_into_conductor_4() {
        // zeta_2 = -1 and zeta_4^2 = -1
        let e = cyc_embed(&z(2), 4).unwrap();
        assert_eq!(e, CycScalar::from_int(-1));
        assert_eq!(z(4).mul(&z(4)), CycScalar::from_int(-1));
    }

    #[test]
    fn embed_zeta3_into_conductor_6() {
        // zeta_3 = zeta_6^2 and t^2 = t - 1 mod Phi_6, so the canonical form
        // is -1 + zeta_6 (reduced by hand from Phi_6 = t^2 - t + 1).
        let e = cyc_embed(&z(3), 6).unwrap();
        let expected = z(6).add(&CycScalar::from_int(-1));
        assert_eq!(e, expected);
        assert_eq!(e.coeffs(), &[rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn embed_rejects_non_divisible_conductor() {
        assert!(matches!(
            cyc_embed(&z(3), 4),
            Err(Error::InvalidEmbedding { found: 3, target: 4 })
        ));
    }

    #[test]
    fn embedding_round_trip() {
        for n in [2u32, 3, 4, 6, 8, 12] {
            let a = z(n).add(&CycScalar::from_rational(rat(1, 3)));
            let lifted = a.embed(n * 3).unwrap();
            assert_eq!(lifted, a);
            let lifted2 = lifted.embed(n * 6).unwrap();
            assert_eq!(lifted2, a);
        }
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(z(4).mul(&z(4)), CycScalar::from_int(-1));
        assert_eq!(
            CycScalar::from_int(2).inv().unwrap(),
            CycScalar::from_rational(rat(1, 2))
        );
        let z3 = z(3);
        assert!(z3.mul(&z3.mul(&z3)).is_one());
        assert!(z3.mul(&z3.pow(2).unwrap()).is_one());
    }

    #[test]
    fn inversion_of_zero_fails() {
        assert_eq!(CycScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_of_unity_orders() {
        assert_eq!(CycScalar::one().root_of_unity_order(), Some(1));
        assert_eq!(z(4).root_of_unity_order(), Some(4));
        assert_eq!(CycScalar::from_int(2).root_of_unity_order(), None);
        assert_eq!(CycScalar::from_int(-1).root_of_unity_order(), Some(2));
        assert_eq!(z(6).pow(2).unwrap().root_of_unity_order(), Some(3));
    }

    #[test]
    fn primitive_roots_have_full_order() {
        for n in 1u32..=24 {
            let r = z(n);
            assert_eq!(r.pow(n as i64).unwrap(), CycScalar::one());
            for k in 1..n {
                assert_ne!(r.pow(k as i64).unwrap(), CycScalar::one(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn field_axioms_on_sampled_triples() {
        // deterministic small sample over mixed conductors
        let pool = [
            CycScalar::from_int(2),
            CycScalar::from_rational(rat(-3, 7)),
            z(3),
            z(4).add(&CycScalar::one()),
            z(6).sub(&CycScalar::from_rational(rat(1, 2))),
            z(5),
        ];
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    let left = a.mul(&b.add(c));
                    let right = a.mul(b).add(&a.mul(c));
                    assert_eq!(left, right);
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
                assert_eq!(a.mul(b), b.mul(a));
            }
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(z(4).to_string(), "z");
        assert_eq!(z(4).mul(&z(4)).to_string(), "-1");
        let x = z(6).scale(&rat(1, 2)).sub(&CycScalar::from_int(1));
        assert_eq!(x.to_string(), "1/2*z - 1");
    }
}
