//! Rational tensor fields of type `(p, q)` in an explicit coordinate
//! chart: a sparse map from frame multi-indices to rational-function
//! coefficients. The stored decomposition is the unique one over the
//! coordinate frame `∂/∂v_{i_1} ⊗ … ⊗ dv_{j_q}`.

mod divisor;

pub use divisor::{
    admissible_adapted_indices, b_divisor, b_divisor_detailed, divisor_of_tensor,
    rho_for_component, BDivisorDetail, ComponentValuation, WeilDivisorRel,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{MPoly, RatFn};
use crate::scalar::CycScalar;

/// A named coordinate system; tensor fields carry one so that operations
/// can reject mixed-chart arithmetic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordSystem {
    pub name: String,
    pub vars: Vec<String>,
}

impl CoordSystem {
    pub fn new(name: impl Into<String>, vars: Vec<String>) -> Arc<Self> {
        Arc::new(CoordSystem {
            name: name.into(),
            vars,
        })
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }
}

/// Frame multi-index `(i_1..i_p; j_1..j_q)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MultiIndex {
    pub up: Vec<usize>,
    pub down: Vec<usize>,
}

impl MultiIndex {
    pub fn scalar() -> Self {
        MultiIndex {
            up: vec![],
            down: vec![],
        }
    }
}

#[derive(Clone, Debug)]
pub struct TensorField {
    p: usize,
    q: usize,
    coords: Arc<CoordSystem>,
    terms: BTreeMap<MultiIndex, RatFn>,
}

impl PartialEq for TensorField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.q == other.q
            && *self.coords == *other.coords
            && self.terms == other.terms
    }
}

impl Eq for TensorField {}

impl TensorField {
    pub fn zero(p: usize, q: usize, coords: Arc<CoordSystem>) -> Self {
        TensorField {
            p,
            q,
            coords,
            terms: BTreeMap::new(),
        }
    }

    /// A rational function viewed as a type-(0,0) field.
    pub fn function(coords: Arc<CoordSystem>, f: RatFn) -> Self {
        let mut t = TensorField::zero(0, 0, coords);
        t.insert(MultiIndex::scalar(), f);
        t
    }

    /// The coordinate differential `dv_j`.
    pub fn differential(coords: Arc<CoordSystem>, j: usize) -> Self {
        let n = coords.dim();
        assert!(j < n);
        let mut t = TensorField::zero(0, 1, coords);
        t.insert(
            MultiIndex {
                up: vec![],
                down: vec![j],
            },
            RatFn::one(n),
        );
        t
    }

    /// The coordinate vector field `∂/∂v_i`.
    pub fn vector_field(coords: Arc<CoordSystem>, i: usize) -> Self {
        let n = coords.dim();
        assert!(i < n);
        let mut t = TensorField::zero(1, 0, coords);
        t.insert(
            MultiIndex {
                up: vec![i],
                down: vec![],
            },
            RatFn::one(n),
        );
        t
    }

    pub fn from_terms(
        p: usize,
        q: usize,
        coords: Arc<CoordSystem>,
        terms: impl IntoIterator<Item = (MultiIndex, RatFn)>,
    ) -> Result<Self> {
        let n = coords.dim();
        let mut t = TensorField::zero(p, q, coords);
        for (idx, c) in terms {
            if idx.up.len() != p || idx.down.len() != q {
                return Err(Error::Arity(format!(
                    "multi-index of type ({},{}) in a field of type ({},{})",
                    idx.up.len(),
                    idx.down.len(),
                    p,
                    q
                )));
            }
            if idx.up.iter().chain(idx.down.iter()).any(|&i| i >= n) {
                return Err(Error::Arity("frame index out of range".into()));
            }
            t.insert_add(idx, c);
        }
        Ok(t)
    }

    fn insert(&mut self, idx: MultiIndex, c: RatFn) {
        if !c.is_zero() {
            self.terms.insert(idx, c);
        }
    }

    fn insert_add(&mut self, idx: MultiIndex, c: RatFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn coords(&self) -> &Arc<CoordSystem> {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &RatFn)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same_chart(&self, other: &TensorField) -> Result<()> {
        if *self.coords != *other.coords {
            return Err(Error::ChartMismatch {
                expected: self.coords.name.clone(),
                found: other.coords.name.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorField) -> Result<TensorField> {
        self.check_same_chart(other)?;
        if self.p != other.p || self.q != other.q {
            return Err(Error::Arity(format!(
                "cannot add fields of type ({},{}) and ({},{})",
                self.p, self.q, other.p, other.q
            )));
        }
        let mut out = self.clone();
        for (idx, c) in other.terms.iter() {
            out.insert_add(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorField) -> Result<TensorField> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorField {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, f: &RatFn) -> TensorField {
        let mut out = TensorField::zero(self.p, self.q, self.coords.clone());
        if f.is_zero() {
            return out;
        }
        for (idx, c) in self.terms.iter() {
            out.insert(idx.clone(), c.mul(f));
        }
        out
    }

    /// Tensor product: coefficients multiply, multi-indices concatenate.
    pub fn tensor_product(&self, other: &TensorField) -> Result<TensorField> {
        self.check_same_chart(other)?;
        let mut out = TensorField::zero(self.p + other.p, self.q + other.q, self.coords.clone());
        for (ia, ca) in self.terms.iter() {
            for (ib, cb) in other.terms.iter() {
                let idx = MultiIndex {
                    up: ia.up.iter().chain(ib.up.iter()).copied().collect(),
                    down: ia.down.iter().chain(ib.down.iter()).copied().collect(),
                };
                out.insert_add(idx, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Shuffle wedge of covariant fields, expanded with sign conventions:
    /// `dv_1 ∧ dv_2 = dv_1 ⊗ dv_2 − dv_2 ⊗ dv_1`.
    pub fn wedge(&self, other: &TensorField) -> Result<TensorField> {
        self.check_same_chart(other)?;
        if self.p != 0 || other.p != 0 {
            return Err(Error::NotSymmetric(
                "wedge products are defined for covariant fields".into(),
            ));
        }
        let qa = self.q;
        let qb = other.q;
        let total = qa + qb;
        let mut out = TensorField::zero(0, total, self.coords.clone());
        for (ia, ca) in self.terms.iter() {
            for (ib, cb) in other.terms.iter() {
                let c = ca.mul(cb);
                for subset in subsets_of_size(total, qa) {
                    let mut down = vec![usize::MAX; total];
                    let mut a_it = ia.down.iter();
                    let mut b_it = ib.down.iter();
                    let mut in_a = vec![false; total];
                    for &s in &subset {
                        in_a[s] = true;
                    }
                    for (slot, flag) in in_a.iter().enumerate() {
                        down[slot] = if *flag {
                            *a_it.next().unwrap()
                        } else {
                            *b_it.next().unwrap()
                        };
                    }
                    let sign = shuffle_sign(&subset);
                    let coeff = if sign { c.neg() } else { c.clone() };
                    out.insert_add(
                        MultiIndex {
                            up: vec![],
                            down,
                        },
                        coeff,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Regular iff every reduced coefficient has constant denominator.
    pub fn is_regular(&self) -> bool {
        self.terms.values().all(|c| c.is_polynomial())
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFn) -> RatFn) -> TensorField {
        let mut out = TensorField::zero(self.p, self.q, self.coords.clone());
        for (idx, c) in self.terms.iter() {
            out.insert(idx.clone(), f(c));
        }
        out
    }

    /// True when the coefficients are antisymmetric under every
    /// transposition of covariant slots (repeated covariant indices then
    /// force zero coefficients, which are never stored).
    pub fn is_skew_covariant(&self) -> bool {
        if self.q <= 1 {
            return true;
        }
        for (idx, c) in self.terms.iter() {
            let mut seen = idx.down.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            for s in 0..self.q {
                for t in s + 1..self.q {
                    let mut swapped = idx.clone();
                    swapped.down.swap(s, t);
                    match self.terms.get(&swapped) {
                        Some(other) => {
                            if *other != c.neg() {
                                return false;
                            }
                        }
                        None => return false,
                    }
                }
            }
        }
        true
    }

    /// True when the coefficients are symmetric under transpositions of
    /// covariant slots inside each block (`blocks` are the sizes
    /// `q_1..q_d`, summing to `q`); requires a purely covariant field.
    pub fn is_multisymmetric(&self, blocks: &[usize]) -> bool {
        if self.p != 0 || blocks.iter().sum::<usize>() != self.q {
            return false;
        }
        let mut offsets = vec![0usize];
        for b in blocks {
            offsets.push(offsets.last().unwrap() + b);
        }
        for (idx, c) in self.terms.iter() {
            for (bi, b) in blocks.iter().enumerate() {
                let lo = offsets[bi];
                for s in lo..lo + b {
                    for t in s + 1..lo + b {
                        let mut swapped = idx.clone();
                        swapped.down.swap(s, t);
                        if self.terms.get(&swapped) != Some(c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Rewrites the field over a new frame. `d_rule[i]` expands the old
    /// `dv_i` over the new differentials, `del_rule[i]` expands the old
    /// `∂/∂v_i` over the new vector fields. Coefficients pass through
    /// `map_coeff` (composition for pull-backs, identity for frame
    /// changes).
    pub(crate) fn transport(
        &self,
        d_rule: &[Vec<RatFn>],
        del_rule: &[Vec<RatFn>],
        map_coeff: &dyn Fn(&RatFn) -> Result<RatFn>,
        new_coords: Arc<CoordSystem>,
    ) -> Result<TensorField> {
        let n = new_coords.dim();
        let mut out = TensorField::zero(self.p, self.q, new_coords);
        for (idx, c) in self.terms.iter() {
            let base = map_coeff(c)?;
            if base.is_zero() {
                continue;
            }
            // expand the product over all slot assignments
            let mut stack: Vec<(Vec<usize>, Vec<usize>, RatFn)> =
                vec![(Vec::new(), Vec::new(), base)];
            for &i in &idx.up {
                let mut next = Vec::new();
                for (up, down, acc) in stack {
                    for k in 0..n {
                        let factor = &del_rule[i][k];
                        if factor.is_zero() {
                            continue;
                        }
                        let mut up2 = up.clone();
                        up2.push(k);
                        next.push((up2, down.clone(), acc.mul(factor)));
                    }
                }
                stack = next;
            }
            for &j in &idx.down {
                let mut next = Vec::new();
                for (up, down, acc) in stack {
                    for k in 0..n {
                        let factor = &d_rule[j][k];
                        if factor.is_zero() {
                            continue;
                        }
                        let mut down2 = down.clone();
                        down2.push(k);
                        next.push((up.clone(), down2, acc.mul(factor)));
                    }
                }
                stack = next;
            }
            for (up, down, acc) in stack {
                out.insert_add(MultiIndex { up, down }, acc);
            }
        }
        Ok(out)
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Parity of the shuffle placing the first block at `positions` (ascending)
/// and the rest in order: odd iff `sum(positions[i] - i)` is odd.
fn shuffle_sign(positions: &[usize]) -> bool {
    positions
        .iter()
        .enumerate()
        .map(|(i, &s)| s - i)
        .sum::<usize>()
        % 2
        == 1
}

/// Frame expansion rules for a coordinate change: row `i` of the first
/// matrix expands the old `dv_i` over the new differentials, row `i` of
/// the second expands the old `∂/∂v_i` over the new vector fields.
fn frame_rules(new_coords: &[MPoly], n: usize) -> Result<(Vec<Vec<RatFn>>, Vec<Vec<RatFn>>)> {
    let jac = jacobian_of(new_coords, n);
    let jac_ratfn: Vec<Vec<RatFn>> = jac
        .iter()
        .map(|row| row.iter().map(|p| RatFn::from_poly(p.clone())).collect())
        .collect();
    let jac_inv = linalg::invert(&jac_ratfn).map_err(|_| Error::SingularChart)?;
    let del_rule = transpose(&jac_ratfn);
    Ok((jac_inv, del_rule))
}

/// Re-expresses a field over the frame of `new_coords` (polynomials in the
/// current coordinates with invertible Jacobian). For an invertible linear
/// substitution the coefficients are fully rewritten in the new variables;
/// otherwise the coefficients stay expressed in the source coordinates,
/// which is exactly what valuation bookkeeping needs.
pub fn frame_change(tau: &TensorField, new_coords: &[MPoly]) -> Result<TensorField> {
    let n = tau.dim();
    if new_coords.len() != n {
        return Err(Error::Arity(format!(
            "{} new coordinates for dimension {}",
            new_coords.len(),
            n
        )));
    }
    let (d_rule, del_rule) = frame_rules(new_coords, n)?;
    let names: Vec<String> = (1..=n).map(|i| format!("w{}", i)).collect();
    let coords = CoordSystem::new(format!("{}~", tau.coords().name), names);

    if let Some(linear) = linear_matrix(new_coords) {
        let inv = linalg::invert(&linear).map_err(|_| Error::SingularChart)?;
        let map = move |c: &RatFn| -> Result<RatFn> { Ok(c.compose_linear(&inv)) };
        return tau.transport(&d_rule, &del_rule, &map, coords);
    }
    tau.transport(&d_rule, &del_rule, &|c| Ok(c.clone()), coords)
}

/// Frame change onto an explicitly named coordinate system, always keeping
/// the coefficients expressed in the source coordinates. This is the form
/// the adapted-chart valuations use: the component polynomial and the
/// coefficients must stay in one variable set.
pub(crate) fn frame_change_to(
    tau: &TensorField,
    new_coords: &[MPoly],
    coords: Arc<CoordSystem>,
) -> Result<TensorField> {
    let n = tau.dim();
    let (d_rule, del_rule) = frame_rules(new_coords, n)?;
    tau.transport(&d_rule, &del_rule, &|c| Ok(c.clone()), coords)
}

/// Exact inverse of [`frame_change`] with the same `new_coords`; returns
/// a field on `orig_coords`.
pub fn frame_restore(
    tau: &TensorField,
    new_coords: &[MPoly],
    orig_coords: Arc<CoordSystem>,
) -> Result<TensorField> {
    let n = tau.dim();
    if new_coords.len() != n {
        return Err(Error::Arity(format!(
            "{} coordinates for dimension {}",
            new_coords.len(),
            n
        )));
    }
    let jac = jacobian_of(new_coords, n);
    let jac_ratfn: Vec<Vec<RatFn>> = jac
        .iter()
        .map(|row| row.iter().map(|p| RatFn::from_poly(p.clone())).collect())
        .collect();
    let jac_inv = linalg::invert(&jac_ratfn).map_err(|_| Error::SingularChart)?;
    let d_rule = jac_ratfn.clone();
    let del_rule = transpose(&jac_inv);
    if let Some(linear) = linear_matrix(new_coords) {
        let map = move |c: &RatFn| -> Result<RatFn> { Ok(c.compose_linear(&linear)) };
        return tau.transport(&d_rule, &del_rule, &map, orig_coords);
    }
    tau.transport(&d_rule, &del_rule, &|c| Ok(c.clone()), orig_coords)
}

pub(crate) fn jacobian_of(maps: &[MPoly], nvars: usize) -> Vec<Vec<MPoly>> {
    maps.iter()
        .map(|f| (0..nvars).map(|j| f.derivative(j)).collect())
        .collect()
}

pub(crate) fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let rows = m.len();
    let cols = m[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

/// When every coordinate is homogeneous linear, the coefficient matrix.
fn linear_matrix(maps: &[MPoly]) -> Option<Vec<Vec<CycScalar>>> {
    let n = maps.len();
    let mut out = Vec::with_capacity(n);
    for f in maps {
        if f.homogeneous_degree() != Some(1) || f.is_zero() {
            return None;
        }
        let mut row = vec![CycScalar::zero(); n];
        for (e, c) in f.terms() {
            let var = e.0.iter().position(|&x| x == 1)?;
            row[var] = c.clone();
        }
        out.push(row);
    }
    Some(out)
}

/// The function on `T(Y)^{⊕d}` attached to a multi-symmetric covariant
/// field: frame covectors are evaluated on `d` fresh vector-variable
/// blocks. Output lives in `n(d+1)` variables: the base coordinates
/// followed by the blocks; homogeneous of degree `q_b` in block `b`.
pub fn multisym_to_function(tau: &TensorField, blocks: &[usize]) -> Result<RatFn> {
    if tau.valence().0 != 0 {
        return Err(Error::NotSymmetric(
            "multi-symmetric fields are covariant".into(),
        ));
    }
    if !tau.is_multisymmetric(blocks) {
        return Err(Error::NotSymmetric(format!(
            "field is not symmetric within blocks {:?}",
            blocks
        )));
    }
    let n = tau.dim();
    let d = blocks.len();
    let total = n * (d + 1);
    let mut block_of_slot = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        block_of_slot.extend(std::iter::repeat(bi).take(*b));
    }
    let mut acc = RatFn::zero(total);
    for (idx, c) in tau.terms() {
        let mut term = c.extend_vars(total, 0);
        for (slot, &j) in idx.down.iter().enumerate() {
            let b = block_of_slot[slot];
            let var = n * (b + 1) + j;
            term = term.mul(&RatFn::var(total, var));
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Variable names for the extended ring of [`multisym_to_function`].
pub fn multisym_var_names(coords: &CoordSystem, d: usize) -> Vec<String> {
    let n = coords.dim();
    let mut names = coords.vars.clone();
    for b in 1..=d {
        for i in 1..=n {
            if n == 1 {
                names.push(if d == 1 { "w".into() } else { format!("w{}", b) });
            } else {
                names.push(format!("w{}_{}", b, i));
            }
        }
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatFn;

    fn line() -> Arc<CoordSystem> {
        CoordSystem::new("v", vec!["v".to_string()])
    }

    fn plane() -> Arc<CoordSystem> {
        CoordSystem::new("v", vec!["v1".to_string(), "v2".to_string()])
    }

    #[test]
    fn tensor_product_concatenates() {
        let c = plane();
        let dv1 = TensorField::differential(c.clone(), 0);
        let dv2 = TensorField::differential(c.clone(), 1);
        let prod = dv1.tensor_product(&dv2).unwrap();
        assert_eq!(prod.valence(), (0, 2));
        assert_eq!(prod.num_terms(), 1);
        let (idx, coeff) = prod.terms().next().unwrap();
        assert_eq!(idx.down, vec![0, 1]);
        assert!(coeff.is_one());

        let dd = TensorField::vector_field(c.clone(), 0)
            .scale(&RatFn::var(2, 0))
            .tensor_product(&dv2.scale(&RatFn::var(2, 1)))
            .unwrap();
        assert_eq!(dd.valence(), (1, 1));
        let (_, coeff) = dd.terms().next().unwrap();
        assert_eq!(coeff, &RatFn::var(2, 0).mul(&RatFn::var(2, 1)));
    }

    #[test]
    fn tensor_product_distributes_over_sums() {
        let c = plane();
        let a = TensorField::differential(c.clone(), 0).scale(&RatFn::var(2, 0));
        let b = TensorField::differential(c.clone(), 1);
        let s = TensorField::vector_field(c.clone(), 1).scale(&RatFn::var(2, 1));
        let lhs = s.tensor_product(&a.add(&b).unwrap()).unwrap();
        let rhs = s
            .tensor_product(&a)
            .unwrap()
            .add(&s.tensor_product(&b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chart_mismatch_is_rejected() {
        let a = TensorField::differential(line(), 0);
        let b = TensorField::differential(CoordSystem::new("u", vec!["u".to_string()]), 0);
        assert!(matches!(
            a.tensor_product(&b),
            Err(Error::ChartMismatch { .. })
        ));
    }

    #[test]
    fn wedge_antisymmetry() {
        let c = plane();
        let dv1 = TensorField::differential(c.clone(), 0);
        let dv2 = TensorField::differential(c.clone(), 1);
        let w = dv1.wedge(&dv2).unwrap();
        assert_eq!(w.num_terms(), 2);
        assert!(w.is_skew_covariant());
        let wrev = dv2.wedge(&dv1).unwrap();
        assert_eq!(wrev, w.neg());
        // dv ∧ dv = 0
        assert!(dv1.wedge(&dv1).unwrap().is_zero());
    }

    #[test]
    fn regularity_detects_poles() {
        let c = line();
        let v = RatFn::var(1, 0);
        let cube = TensorField::differential(c.clone(), 0).scale(&v.pow(3).unwrap());
        assert!(cube.is_regular());
        let pole = TensorField::differential(c.clone(), 0).scale(&v.pow(-1).unwrap());
        assert!(!pole.is_regular());
    }

    #[test]
    fn frame_change_linear_rescale() {
        // w = 2v: dv -> (1/2) dw, ∂/∂v -> 2 ∂/∂w
        let c = line();
        let two_v = MPoly::var(1, 0).scale(&CycScalar::from_int(2));
        let dv = TensorField::differential(c.clone(), 0);
        let out = frame_change(&dv, &[two_v.clone()]).unwrap();
        let coeff = out.terms().next().unwrap().1;
        assert_eq!(
            coeff,
            &RatFn::constant(1, CycScalar::from_rational(crate::scalar::rat(1, 2)))
        );
        let ddv = TensorField::vector_field(c.clone(), 0);
        let out2 = frame_change(&ddv, &[two_v.clone()]).unwrap();
        assert_eq!(
            out2.terms().next().unwrap().1,
            &RatFn::constant(1, CycScalar::from_int(2))
        );
        // identity change is the identity
        let id = frame_change(&dv, &[MPoly::var(1, 0)]).unwrap();
        assert_eq!(id.terms().next().unwrap().1, &RatFn::one(1));
        // round trip
        let back = frame_restore(&out, &[two_v], c.clone()).unwrap();
        assert_eq!(back, dv);
    }

    #[test]
    fn frame_change_nonlinear_round_trip() {
        // (v1, v2) -> (v1, v1^2 - 4 v2); coefficients stay in the source
        // variables, the frame transforms exactly
        let c = plane();
        let v1 = MPoly::var(2, 0);
        let delta = v1.pow(2).sub(&MPoly::var(2, 1).scale(&CycScalar::from_int(4)));
        let new_coords = vec![v1.clone(), delta.clone()];

        let df2 = TensorField::differential(c.clone(), 1);
        let moved = frame_change(&df2, &new_coords).unwrap();
        // df_2 = (2 f_1 dw_1 - dw_2)/4
        let mut expected_terms = std::collections::BTreeMap::new();
        expected_terms.insert(
            MultiIndex { up: vec![], down: vec![0] },
            RatFn::from_poly(v1.clone()).scale(&CycScalar::from_rational(crate::scalar::rat(1, 2))),
        );
        expected_terms.insert(
            MultiIndex { up: vec![], down: vec![1] },
            RatFn::constant(2, CycScalar::from_rational(crate::scalar::rat(-1, 4))),
        );
        for (idx, coeff) in moved.terms() {
            assert_eq!(expected_terms.get(idx), Some(coeff));
        }
        assert_eq!(moved.num_terms(), 2);

        let back = frame_restore(&moved, &new_coords, c.clone()).unwrap();
        assert_eq!(back, df2);

        // a mixed-valence field survives the round trip too
        let phi = TensorField::vector_field(c.clone(), 1)
            .tensor_product(&df2)
            .unwrap()
            .scale(&RatFn::var(2, 1));
        let there = frame_change(&phi, &new_coords).unwrap();
        let here = frame_restore(&there, &new_coords, c.clone()).unwrap();
        assert_eq!(here, phi);
    }

    #[test]
    fn singular_chart_is_rejected() {
        let c = plane();
        let v1 = MPoly::var(2, 0);
        let dv = TensorField::differential(c, 0);
        assert!(matches!(
            frame_change(&dv, &[v1.clone(), v1.scale(&CycScalar::from_int(3))]),
            Err(Error::SingularChart)
        ));
    }

    #[test]
    fn multisym_function_on_the_line() {
        // dv ⊙ dv on the affine line gives w^2 on T(C) = C^2
        let c = line();
        let dv = TensorField::differential(c.clone(), 0);
        let sigma = dv.tensor_product(&dv).unwrap();
        let f = multisym_to_function(&sigma, &[2]).unwrap();
        let w = MPoly::var(2, 1);
        assert_eq!(f, RatFn::from_poly(w.pow(2)));
        // scaling the field scales the function
        let scaled = sigma.scale(&RatFn::constant(1, CycScalar::from_int(5)));
        assert_eq!(
            multisym_to_function(&scaled, &[2]).unwrap(),
            RatFn::from_poly(w.pow(2).scale(&CycScalar::from_int(5)))
        );
    }

    #[test]
    fn multisym_rejects_asymmetric_input() {
        let c = plane();
        let bad = TensorField::differential(c.clone(), 0)
            .tensor_product(&TensorField::differential(c, 1))
            .unwrap();
        assert!(matches!(
            multisym_to_function(&bad, &[2]),
            Err(Error::NotSymmetric(_))
        ));
    }
}
