//! Divisors and B-divisors of tensor fields, relative to declared
//! irreducible components.
//!
//! The multiplicity of a field along a component is the minimum of the
//! coefficient valuations. Along a component of `B` the multiplicity is
//! replaced by `ρ = min over monomial terms of (b-1)(q'-p') + b·m`,
//! computed in an adapted chart whose last coordinate is the component.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{factor_multiplicity, MPoly};

use super::{frame_change_to, CoordSystem, TensorField};

/// A Weil divisor relative to a declared component list.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilDivisorRel {
    /// `(component, multiplicity)` with zero multiplicities omitted;
    /// components pairwise non-associate.
    pub entries: Vec<(MPoly, i64)>,
    /// True iff after removing all declared components from denominators
    /// every coefficient is polynomial.
    pub residual_regular: bool,
}

impl WeilDivisorRel {
    /// Nonnegative relative to the declared set: all listed multiplicities
    /// are >= 0 and nothing is left in the denominators.
    pub fn is_effective(&self) -> bool {
        self.residual_regular && self.entries.iter().all(|(_, m)| *m >= 0)
    }
}

/// Valuation data for one component of `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentValuation {
    pub delta: MPoly,
    pub multiplicity: u32,
    pub rho: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BDivisorDetail {
    pub b_entries: Vec<ComponentValuation>,
    pub extra_entries: Vec<(MPoly, i64)>,
    pub residual_regular: bool,
}

impl BDivisorDetail {
    pub fn criterion_holds(&self) -> bool {
        self.residual_regular
            && self.b_entries.iter().all(|e| e.rho >= 0)
            && self.extra_entries.iter().all(|(_, m)| *m >= 0)
    }

    pub fn to_divisor(&self) -> WeilDivisorRel {
        let mut entries: Vec<(MPoly, i64)> = Vec::new();
        for e in &self.b_entries {
            if e.rho != 0 {
                entries.push((e.delta.clone(), e.rho));
            }
        }
        for (c, m) in &self.extra_entries {
            if *m != 0 {
                entries.push((c.clone(), *m));
            }
        }
        WeilDivisorRel {
            entries,
            residual_regular: self.residual_regular,
        }
    }
}

fn check_components(tau: &TensorField, components: &[MPoly]) -> Result<()> {
    if tau.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let n = tau.dim();
    for c in components {
        if c.is_constant() {
            return Err(Error::InvalidComponent(format!("{}", c)));
        }
        if c.nvars() != n {
            return Err(Error::Arity(format!(
                "component in {} variables on a chart of dimension {}",
                c.nvars(),
                n
            )));
        }
    }
    Ok(())
}

/// Divisor of a nonzero tensor field relative to declared irreducible
/// components: per component the minimum coefficient valuation, plus the
/// residual regularity flag. For a type-(0,0) field this is the divisor of
/// a rational function restricted to the declared set.
pub fn divisor_of_tensor(tau: &TensorField, components: &[MPoly]) -> Result<WeilDivisorRel> {
    check_components(tau, components)?;
    let mut entries = Vec::new();
    for c in components {
        let m = min_valuation(tau, c)?;
        if m != 0 {
            entries.push((c.clone(), m));
        }
    }
    Ok(WeilDivisorRel {
        entries,
        residual_regular: residual_regular(tau, components),
    })
}

fn min_valuation(tau: &TensorField, delta: &MPoly) -> Result<i64> {
    let mut min = None;
    for (_, coeff) in tau.terms() {
        let v = factor_multiplicity(coeff, delta)?;
        min = Some(min.map_or(v, |m: i64| m.min(v)));
    }
    min.ok_or(Error::ZeroTensor)
}

/// After dividing all declared components out of the denominators, the
/// remainder must be a constant.
fn residual_regular(tau: &TensorField, components: &[MPoly]) -> bool {
    tau.terms().all(|(_, coeff)| {
        let mut den = coeff.den().clone();
        for c in components {
            loop {
                match den.exact_div(c) {
                    Some(q) => den = q,
                    None => break,
                }
            }
        }
        den.is_constant()
    })
}

/// Indices `j` such that replacing coordinate `j` by the component yields
/// an admissible adapted chart: `∂δ/∂v_j` not divisible by `δ` (zero
/// partials are divisible by everything, hence excluded).
pub fn admissible_adapted_indices(delta: &MPoly) -> Vec<usize> {
    (0..delta.nvars())
        .filter(|&j| {
            let d = delta.derivative(j);
            !d.is_zero() && d.exact_div(delta).is_none()
        })
        .collect()
}

/// `ρ` of the field along a single component of `B` through the adapted
/// chart that keeps all coordinates except `j` and appends the component
/// as the last coordinate. With `replace_index = None` the smallest
/// admissible `j` is used.
pub fn rho_for_component(
    tau: &TensorField,
    delta: &MPoly,
    b: u32,
    replace_index: Option<usize>,
) -> Result<i64> {
    if tau.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if b < 1 {
        return Err(Error::InvalidDivisor(b as i64));
    }
    let n = tau.dim();
    let admissible = admissible_adapted_indices(delta);
    let j = match replace_index {
        Some(j) => {
            if !admissible.contains(&j) {
                return Err(Error::SingularComponent(format!(
                    "index {} is not admissible for {}",
                    j, delta
                )));
            }
            j
        }
        None => *admissible
            .first()
            .ok_or_else(|| Error::SingularComponent(format!("{}", delta)))?,
    };
    // adapted coordinates: every v_i except v_j in order, then delta last
    let mut new_coords: Vec<MPoly> = (0..n)
        .filter(|&i| i != j)
        .map(|i| MPoly::var(n, i))
        .collect();
    new_coords.push(delta.clone());
    let adapted = frame_change_to(tau, &new_coords, adapted_coords(tau.coords(), j))?;
    let last = n - 1;
    let mut rho: Option<i64> = None;
    for (idx, coeff) in adapted.terms() {
        let p_last = idx.up.iter().filter(|&&i| i == last).count() as i64;
        let q_last = idx.down.iter().filter(|&&i| i == last).count() as i64;
        let m = factor_multiplicity(coeff, delta)?;
        let mu = (b as i64 - 1) * (q_last - p_last) + b as i64 * m;
        rho = Some(rho.map_or(mu, |r| r.min(mu)));
    }
    rho.ok_or(Error::ZeroTensor)
}

fn adapted_coords(orig: &Arc<CoordSystem>, replaced: usize) -> Arc<CoordSystem> {
    let mut vars: Vec<String> = orig
        .vars
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != replaced)
        .map(|(_, v)| v.clone())
        .collect();
    vars.push("_delta".to_string());
    CoordSystem::new(format!("{}|adapted{}", orig.name, replaced), vars)
}

/// B-divisor of a nonzero tensor field: `ρ` along each component of `B`
/// (each pair is `(component, multiplicity >= 1)`), plain divisor
/// multiplicities along the extra declared components, and the residual
/// regularity flag over the union. Per-component work is independent and
/// runs in parallel; the result is deterministic.
pub fn b_divisor_detailed(
    tau: &TensorField,
    b: &[(MPoly, u32)],
    extra: &[MPoly],
) -> Result<BDivisorDetail> {
    let b_polys: Vec<MPoly> = b.iter().map(|(d, _)| d.clone()).collect();
    check_components(tau, &b_polys)?;
    check_components(tau, extra)?;
    for (_, mult) in b {
        if *mult < 1 {
            return Err(Error::InvalidDivisor(*mult as i64));
        }
    }
    let b_entries: Vec<ComponentValuation> = par::try_map(b, |(delta, mult)| {
        Ok(ComponentValuation {
            delta: delta.clone(),
            multiplicity: *mult,
            rho: rho_for_component(tau, delta, *mult, None)?,
        })
    })?;
    let extra_entries: Vec<(MPoly, i64)> = extra
        .iter()
        .map(|c| Ok((c.clone(), min_valuation(tau, c)?)))
        .collect::<Result<_>>()?;
    let mut all = b_polys;
    all.extend(extra.iter().cloned());
    Ok(BDivisorDetail {
        b_entries,
        extra_entries,
        residual_regular: residual_regular(tau, &all),
    })
}

/// The B-divisor as a relative Weil divisor. With `B = 0` (empty list)
/// this coincides with [`divisor_of_tensor`].
pub fn b_divisor(
    tau: &TensorField,
    b: &[(MPoly, u32)],
    extra: &[MPoly],
) -> Result<WeilDivisorRel> {
    if b.is_empty() {
        return divisor_of_tensor(tau, extra);
    }
    Ok(b_divisor_detailed(tau, b, extra)?.to_divisor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatFn;
    use crate::scalar::CycScalar;
    use crate::tensor::TensorField;

    fn line() -> Arc<CoordSystem> {
        CoordSystem::new("v", vec!["v".to_string()])
    }

    fn dv_pow(c: &Arc<CoordSystem>, m: i64, q: usize) -> TensorField {
        let v = RatFn::var(1, 0);
        let mut t = TensorField::function(c.clone(), v.pow(m).unwrap());
        for _ in 0..q {
            t = t
                .tensor_product(&TensorField::differential(c.clone(), 0))
                .unwrap();
        }
        t
    }

    fn del_pow(c: &Arc<CoordSystem>, m: i64, p: usize) -> TensorField {
        let v = RatFn::var(1, 0);
        let mut t = TensorField::function(c.clone(), v.pow(m).unwrap());
        for _ in 0..p {
            t = t
                .tensor_product(&TensorField::vector_field(c.clone(), 0))
                .unwrap();
        }
        t
    }

    #[test]
    fn monomial_divisor_on_the_line() {
        let c = line();
        let v = MPoly::var(1, 0);
        for m in [-3i64, -1, 0, 2, 5] {
            let tau = dv_pow(&c, m, 3);
            let div = divisor_of_tensor(&tau, &[v.clone()]).unwrap();
            if m == 0 {
                assert!(div.entries.is_empty());
            } else {
                assert_eq!(div.entries, vec![(v.clone(), m)]);
            }
            assert!(div.residual_regular);
        }
    }

    #[test]
    fn min_rule_over_terms() {
        let c = line();
        let t = dv_pow(&c, 2, 1).add(&dv_pow(&c, 5, 1)).unwrap();
        let v = MPoly::var(1, 0);
        let div = divisor_of_tensor(&t, &[v.clone()]).unwrap();
        assert_eq!(div.entries, vec![(v, 2)]);
    }

    #[test]
    fn zero_tensor_is_rejected() {
        let c = line();
        let z = TensorField::zero(0, 1, c);
        assert!(matches!(
            divisor_of_tensor(&z, &[MPoly::var(1, 0)]),
            Err(Error::ZeroTensor)
        ));
    }

    #[test]
    fn residual_regularity_flags_off_component_poles() {
        let c = line();
        let v = MPoly::var(1, 0);
        let shifted = v.sub(&MPoly::one(1)); // pole along v - 1
        let tau = TensorField::differential(c.clone(), 0)
            .scale(&RatFn::new(MPoly::one(1), shifted.clone()).unwrap());
        let along_v = divisor_of_tensor(&tau, &[v.clone()]).unwrap();
        assert!(!along_v.residual_regular);
        let declared = divisor_of_tensor(&tau, &[v, shifted]).unwrap();
        assert!(declared.residual_regular);
    }

    #[test]
    fn rho_matches_the_line_criterion() {
        // B = r[v], tau = v^m (dv)^{⊗q}: rho = (r-1) q + r m
        let c = line();
        let v = MPoly::var(1, 0);
        for r in 2u32..=5 {
            for m in -4i64..=4 {
                for q in 0usize..=7 {
                    let tau = dv_pow(&c, m, q);
                    let rho = rho_for_component(&tau, &v, r, None).unwrap();
                    assert_eq!(rho, (r as i64 - 1) * q as i64 + r as i64 * m);
                }
                for p in 0usize..=5 {
                    let tau = del_pow(&c, m, p);
                    let rho = rho_for_component(&tau, &v, r, None).unwrap();
                    assert_eq!(rho, (r as i64 - 1) * (-(p as i64)) + r as i64 * m);
                }
            }
        }
    }

    #[test]
    fn empty_b_is_the_plain_divisor() {
        let c = line();
        let tau = dv_pow(&c, -2, 3);
        let v = MPoly::var(1, 0);
        let with_b = b_divisor(&tau, &[], &[v.clone()]).unwrap();
        let plain = divisor_of_tensor(&tau, &[v]).unwrap();
        assert_eq!(with_b, plain);
    }

    #[test]
    fn invalid_multiplicity_is_rejected() {
        let c = line();
        let tau = dv_pow(&c, 1, 1);
        let v = MPoly::var(1, 0);
        assert!(matches!(
            b_divisor_detailed(&tau, &[(v, 0)], &[]),
            Err(Error::InvalidDivisor(0))
        ));
    }

    #[test]
    fn constant_component_is_rejected() {
        let c = line();
        let tau = dv_pow(&c, 1, 1);
        assert!(matches!(
            divisor_of_tensor(&tau, &[MPoly::one(1)]),
            Err(Error::InvalidComponent(_))
        ));
    }

    #[test]
    fn adapted_chart_requires_an_admissible_index() {
        let two = CoordSystem::new("v", vec!["v1".into(), "v2".into()]);
        let tau = TensorField::differential(two, 0);
        let v1 = MPoly::var(2, 0);
        let delta = v1.pow(2); // d(delta)/dv1 = 2 v1 not divisible; admissible
        assert_eq!(admissible_adapted_indices(&delta), vec![0]);
        assert!(rho_for_component(&tau, &delta, 2, Some(1)).is_err());
        assert!(rho_for_component(&tau, &delta, 2, Some(0)).is_ok());
        // scale-invariant: component v1^2 has all partials 2v1 which is not
        // divisible by v1^2, so this stays admissible; a genuinely
        // inadmissible case needs every partial divisible, e.g. nothing in
        // one variable, so check the error path via the explicit index.
        assert!(matches!(
            rho_for_component(&tau, &delta, 2, Some(5)),
            Err(Error::SingularComponent(_))
        ));
    }

    #[test]
    fn cyclic3_golden_values() {
        // tau = v^{-3} (dv)^{⊗7}, B = 3[v]: rho = 2*7 + 3*(-3) = 5
        let c = line();
        let v = MPoly::var(1, 0);
        let tau = dv_pow(&c, -3, 7);
        assert_eq!(rho_for_component(&tau, &v, 3, None).unwrap(), 5);
        // tau = v^{-5} (dv)^{⊗7}: rho = 14 - 15 = -1
        let tau2 = dv_pow(&c, -5, 7);
        assert_eq!(rho_for_component(&tau2, &v, 3, None).unwrap(), -1);
    }
}
