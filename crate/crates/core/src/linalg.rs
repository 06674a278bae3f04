//! Exact dense linear algebra over any field-like scalar, used for rank and
//! kernel computations over `CycScalar` and for Jacobian inversion over
//! rational functions.

use crate::error::{Error, Result};

/// The minimal field interface the elimination routines need. Zero and one
/// are derived from an existing element so that context-dependent scalars
/// (rational functions know their variable count) can participate.
pub trait FieldScalar: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
}

impl FieldScalar for crate::scalar::CycScalar {
    fn zero_like(&self) -> Self {
        crate::scalar::CycScalar::zero()
    }
    fn one_like(&self) -> Self {
        crate::scalar::CycScalar::one()
    }
    fn is_zero(&self) -> bool {
        crate::scalar::CycScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        crate::scalar::CycScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        crate::scalar::CycScalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        crate::scalar::CycScalar::mul(self, other)
    }
    fn inv(&self) -> Result<Self> {
        crate::scalar::CycScalar::inv(self)
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: FieldScalar>(sample: &F, n: usize) -> Matrix<F> {
    let zero = sample.zero_like();
    let one = sample.one_like();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<F: FieldScalar>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let zero = a[0][0].zero_like();
    let mut out = vec![vec![zero; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
            }
        }
    }
    out
}

pub fn mat_vec<F: FieldScalar>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            let mut acc = row[0].zero_like();
            for (x, y) in row.iter().zip(v.iter()) {
                acc = acc.add(&x.mul(y));
            }
            acc
        })
        .collect()
}

/// Row echelon reduction in place; returns the pivot columns.
fn echelon<F: FieldScalar>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let sub = factor.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank<F: FieldScalar>(m: &Matrix<F>) -> usize {
    let mut work = m.clone();
    echelon(&mut work).len()
}

pub fn determinant<F: FieldScalar>(m: &Matrix<F>) -> F {
    let n = m.len();
    let zero = m[0][0].zero_like();
    let mut work = m.clone();
    let mut det = m[0][0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return zero;
        };
        if p != c {
            work.swap(c, p);
            det = zero.sub(&det);
        }
        det = det.mul(&work[c][c]);
        let inv = work[c][c].inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if work[i][c].is_zero() {
                continue;
            }
            let factor = work[i][c].mul(&inv);
            for j in c..n {
                let sub = factor.mul(&work[c][j]);
                work[i][j] = work[i][j].sub(&sub);
            }
        }
    }
    det
}

/// Inverse of a square matrix; `SingularChart` if it is not invertible.
pub fn invert<F: FieldScalar>(m: &Matrix<F>) -> Result<Matrix<F>> {
    let n = m.len();
    let mut work: Matrix<F> = m
        .iter()
        .zip(identity(&m[0][0], n))
        .map(|(row, id_row)| row.iter().cloned().chain(id_row).collect())
        .collect();
    let pivots = echelon(&mut work);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::SingularChart);
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `A x = b`; returns `None` when the system is inconsistent. When
/// the solution space is positive-dimensional, free variables are set to
/// zero, which keeps the output deterministic.
pub fn solve<F: FieldScalar>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let rows = a.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let zero = b
        .first()
        .map(|x| x.zero_like())
        .unwrap_or_else(|| a[0][0].zero_like());
    let mut work: Matrix<F> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(rhs.clone()))
                .collect()
        })
        .collect();
    let pivots = echelon(&mut work);
    if pivots.iter().any(|&c| c == cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![zero; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = work[r][cols].clone();
    }
    Some(x)
}

/// A basis of the kernel of `A` (right null space).
pub fn kernel_basis<F: FieldScalar>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let zero = a[0][0].zero_like();
    let one = a[0][0].one_like();
    let mut work = a.clone();
    let pivots = echelon(&mut work);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = zero.sub(&work[r][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycScalar;

    fn m(rows: &[&[i64]]) -> Matrix<CycScalar> {
        rows.iter()
            .map(|r| r.iter().map(|&x| CycScalar::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[1, 2], &[3, 5]]);
        assert_eq!(determinant(&a), CycScalar::from_int(-1));
        let inv = invert(&a).unwrap();
        let prod = mat_mul(&a, &inv);
        assert_eq!(prod, identity(&a[0][0], 2));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&a), CycScalar::zero());
        assert!(invert(&a).is_err());
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn solve_and_kernel() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let b = vec![CycScalar::from_int(3), CycScalar::from_int(1)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![CycScalar::from_int(2), CycScalar::from_int(1)]);

        let sing = m(&[&[1, 2], &[2, 4]]);
        let ker = kernel_basis(&sing);
        assert_eq!(ker.len(), 1);
        let img = mat_vec(&sing, &ker[0]);
        assert!(img.iter().all(|x| x.is_zero()));

        let inconsistent = solve(&sing, &b);
        assert!(inconsistent.is_none());
    }
}
