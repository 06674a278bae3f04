//! Reduced rational functions.
//!
//! Canonical form: numerator and denominator coprime, denominator monic in
//! graded lexicographic order. Equality of the canonical form is literal
//! equality, so derived `PartialEq` is semantic equality.

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

use super::{gcd, MPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        if num.is_zero() {
            return Ok(RatFn {
                num,
                den: MPoly::one(den.nvars()),
            });
        }
        let g = gcd(&num, &den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: MPoly) -> RatFn {
        let n = p.nvars();
        RatFn {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> RatFn {
        RatFn::from_poly(MPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> RatFn {
        RatFn::from_poly(MPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: CycScalar) -> RatFn {
        RatFn::from_poly(MPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, index: usize) -> RatFn {
        RatFn::from_poly(MPoly::var(nvars, index))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Regularity of a coefficient: the reduced denominator is constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial value when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<MPoly> {
        if !self.den.is_constant() {
            return None;
        }
        let c = self.den.constant_value().unwrap();
        if c.is_one() {
            return Some(self.num.clone());
        }
        Some(self.num.scale(&c.inv().expect("nonzero denominator")))
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFn::new(num, den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators")
    }

    pub fn scale(&self, c: &CycScalar) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFn::one(self.nvars());
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Composition with rational images of the variables; errors when the
    /// denominator collapses to zero under the substitution.
    pub fn compose(&self, images: &[RatFn]) -> Result<RatFn> {
        let num = self.num.substitute(images);
        let den = self.den.substitute(images);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.div(&den)
    }

    /// Composition with polynomial images.
    pub fn compose_poly(&self, images: &[MPoly]) -> Result<RatFn> {
        let num = self.num.compose(images);
        let den = self.den.compose(images);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(num, den)
    }

    pub fn compose_linear(&self, mat: &[Vec<CycScalar>]) -> RatFn {
        let num = self.num.compose_linear(mat);
        let den = self.den.compose_linear(mat);
        RatFn::new(num, den).expect("linear substitution preserves nonzero denominators")
    }

    pub fn extend_vars(&self, new_nvars: usize, offset: usize) -> RatFn {
        RatFn {
            num: self.num.extend_vars(new_nvars, offset),
            den: self.den.extend_vars(new_nvars, offset),
        }
    }
}

impl crate::linalg::FieldScalar for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RatFn::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFn::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFn::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFn::mul(self, other)
    }
    fn inv(&self) -> Result<Self> {
        RatFn::inv(self)
    }
}

impl std::fmt::Display for RatFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", crate::parse::ratfn_to_string(self, &names))
    }
}
