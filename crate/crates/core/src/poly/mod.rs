//! Sparse multivariate polynomials and reduced rational functions over
//! cyclotomic scalars.
//!
//! Terms are kept in a `BTreeMap` under graded lexicographic order, which
//! fixes a canonical form for printing, hashing and equality. The leading
//! term is the greatest key.

mod gcd;
mod ops;
mod ratfn;

pub use gcd::gcd;
pub use ops::{exact_divide, factor_multiplicity, partial_derivative, poly_arith, substitute, PolyOp};
pub use ratfn::RatFn;

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::CycScalar;

/// Exponent vector with graded lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Expo(pub Vec<u32>);

impl Expo {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Expo) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Expo) -> Expo {
        Expo(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    fn add(&self, other: &Expo) -> Expo {
        Expo(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse multivariate polynomial over [`CycScalar`]. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Expo, CycScalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, CycScalar::one())
    }

    pub fn constant(nvars: usize, c: CycScalar) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Expo(vec![0; nvars]), c);
        }
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut e = vec![0; nvars];
        e[index] = 1;
        MPoly::monomial(nvars, Expo(e), CycScalar::one())
    }

    pub fn monomial(nvars: usize, e: Expo, c: CycScalar) -> Self {
        assert_eq!(e.0.len(), nvars);
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Degree-one polynomial `sum coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[CycScalar]) -> Self {
        let nvars = coeffs.len();
        let mut p = MPoly::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                p.terms.insert(Expo(e), c.clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Expo, CycScalar)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(&e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &CycScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.leading().unwrap().0.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<CycScalar> {
        if self.is_zero() {
            return Some(CycScalar::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    /// The greatest term in graded lexicographic order.
    pub fn leading(&self) -> Option<(&Expo, &CycScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d` (zero counts as
    /// homogeneous of degree 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.degree());
        let Some(first) = it.next() else {
            return Some(0);
        };
        it.all(|d| d == first).then_some(first)
    }

    pub fn vars_occurring(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.0.iter().enumerate() {
                if x > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }

    fn add_term(&mut self, e: &Expo, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(e) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                out.add_term(&ea.add(eb), &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[var] = k - 1;
            out.add_term(&e2, &c.mul(&CycScalar::from_int(k as i64)));
        }
        out
    }

    /// Quotient `self / b` when the division is exact; `None` otherwise.
    /// Leading-term division in a monomial order over a field terminates
    /// with zero remainder exactly when `b` divides `self`.
    pub fn exact_div(&self, b: &MPoly) -> Option<MPoly> {
        assert!(!b.is_zero(), "division by the zero polynomial");
        assert_eq!(self.nvars, b.nvars);
        let (lbe, lbc) = b.leading().unwrap();
        let lbc_inv = lbc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((le, lc)) = rem.leading() {
            if !lbe.divides(le) {
                return None;
            }
            let qe = le.sub(lbe);
            let qc = lc.mul(&lbc_inv);
            let qt = MPoly::monomial(self.nvars, qe, qc);
            rem = rem.sub(&qt.mul(b));
            quot = quot.add(&qt);
        }
        Some(quot)
    }

    /// Splits off the monomial content: returns `(e, p)` with
    /// `self = x^e * p` and the exponent gcd of `p` trivial.
    pub fn split_monomial_content(&self) -> (Expo, MPoly) {
        if self.is_zero() {
            return (Expo(vec![0; self.nvars]), self.clone());
        }
        let mut min = vec![u32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, &x) in min.iter_mut().zip(e.0.iter()) {
                *m = (*m).min(x);
            }
        }
        let content = Expo(min);
        if content.degree() == 0 {
            return (content, self.clone());
        }
        let stripped = MPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.sub(&content), c.clone())),
        );
        (content, stripped)
    }

    /// Composition with polynomial images of the variables.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars, "image count mismatch");
        let target_nvars = images
            .first()
            .map(|p| p.nvars)
            .unwrap_or(0);
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(target_nvars), p.clone()])
            .collect();
        for (i, p) in images.iter().enumerate() {
            let maxdeg = self.degree_in(i) as usize;
            while powers[i].len() <= maxdeg {
                let last = powers[i].last().unwrap().mul(p);
                powers[i].push(last);
            }
        }
        let mut out = MPoly::zero(target_nvars);
        for (e, c) in self.terms.iter() {
            let mut term = MPoly::constant(target_nvars, c.clone());
            for (i, &x) in e.0.iter().enumerate() {
                if x > 0 {
                    term = term.mul(&powers[i][x as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Composition with rational images: evaluated over the common
    /// denominator so that only one final reduction is needed.
    pub fn substitute(&self, images: &[RatFn]) -> RatFn {
        assert_eq!(images.len(), self.nvars, "image count mismatch");
        let target_nvars = images
            .first()
            .map(|r| r.num().nvars())
            .unwrap_or(0);
        if self.is_zero() {
            return RatFn::zero(target_nvars);
        }
        if images.iter().all(|r| r.den().is_one()) {
            let polys: Vec<MPoly> = images.iter().map(|r| r.num().clone()).collect();
            return RatFn::from_poly(self.compose(&polys));
        }
        let maxdeg: Vec<usize> = (0..self.nvars).map(|i| self.degree_in(i) as usize).collect();
        let mut num_pows: Vec<Vec<MPoly>> = Vec::with_capacity(self.nvars);
        let mut den_pows: Vec<Vec<MPoly>> = Vec::with_capacity(self.nvars);
        for (i, r) in images.iter().enumerate() {
            let mut np = vec![MPoly::one(target_nvars)];
            let mut dp = vec![MPoly::one(target_nvars)];
            for k in 1..=maxdeg[i] {
                np.push(np[k - 1].mul(r.num()));
                dp.push(dp[k - 1].mul(r.den()));
            }
            num_pows.push(np);
            den_pows.push(dp);
        }
        let mut total_num = MPoly::zero(target_nvars);
        for (e, c) in self.terms.iter() {
            let mut term = MPoly::constant(target_nvars, c.clone());
            for (i, &x) in e.0.iter().enumerate() {
                let x = x as usize;
                if x > 0 {
                    term = term.mul(&num_pows[i][x]);
                }
                if maxdeg[i] - x > 0 {
                    term = term.mul(&den_pows[i][maxdeg[i] - x]);
                }
            }
            total_num = total_num.add(&term);
        }
        let mut total_den = MPoly::one(target_nvars);
        for (i, dp) in den_pows.iter().enumerate() {
            if maxdeg[i] > 0 {
                total_den = total_den.mul(&dp[maxdeg[i]]);
            }
        }
        RatFn::new(total_num, total_den).expect("denominator is a product of nonzero polynomials")
    }

    pub fn eval_point(&self, point: &[CycScalar]) -> CycScalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = CycScalar::zero();
        for (e, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &x) in e.0.iter().enumerate() {
                for _ in 0..x {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-embeds into a ring with `new_nvars` variables, placing variable
    /// `i` at position `offset + i`.
    pub fn extend_vars(&self, new_nvars: usize, offset: usize) -> MPoly {
        assert!(offset + self.nvars <= new_nvars);
        MPoly::from_terms(
            new_nvars,
            self.terms.iter().map(|(e, c)| {
                let mut v = vec![0u32; new_nvars];
                v[offset..offset + self.nvars].copy_from_slice(&e.0);
                (Expo(v), c.clone())
            }),
        )
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`
    /// (dense, ascending); the coefficients keep the full variable count
    /// with exponent zero at `var`.
    pub(crate) fn as_univariate(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (e, c) in self.terms.iter() {
            let k = e.0[var] as usize;
            let mut e2 = e.clone();
            e2.0[var] = 0;
            out[k].add_term(&e2, c);
        }
        out
    }

    pub(crate) fn from_univariate(coeffs: &[MPoly], var: usize, nvars: usize) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let shift = MPoly::monomial(
                nvars,
                Expo({
                    let mut v = vec![0; nvars];
                    v[var] = k as u32;
                    v
                }),
                CycScalar::one(),
            );
            out = out.add(&c.mul(&shift));
        }
        out
    }

    /// `self(g x)` for a linear map given by a row-major matrix.
    pub fn compose_linear(&self, mat: &[Vec<CycScalar>]) -> MPoly {
        let images: Vec<MPoly> = mat.iter().map(|row| MPoly::linear_form(row)).collect();
        self.compose(&images)
    }
}

impl fmt::Display for MPoly {
    /// Debug-oriented display with positional variable names `x0..`; the
    /// parser module provides printing with chart variable names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", crate::parse::poly_to_string(self, &names))
    }
}
