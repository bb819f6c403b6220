//! Left-multiplication operators L_f = Σ_r ν^r A_r, where each A_r is a
//! differential operator in holomorphic directions of order ≤ r, A₀ is
//! multiplication by f, and A_r(1) = 0 for r ≥ 1.
//!
//! The defining condition is commutation with every right-multiplication
//! generator (1/ν)φ_l + ∂̄_l, which reads order by order
//! `[A_{r+1}, φ_l] = ∂̄_l A_r` (coefficientwise ∂̄ on the right), with φ_l
//! the antiholomorphic potential derivatives. Matching the coefficient of
//! ∂^γ gives, for every l,
//!
//! ```text
//! Σ_k (γ_k+1)·G[k][l]·a_{γ+e_k}
//!     = (∂̄_l A_r)_γ − Σ_{|δ|≥2} binom(γ+δ,δ)·(∂^δ φ_l)·a_{γ+δ},
//! ```
//!
//! which is solved for descending coefficient degree via the inverse metric.
//! Every equation is re-verified afterwards; a nonzero residual is an
//! internal bug, reported as ConsistencyFailure.

use num::BigRational;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formal::{FormalSeries, MultiIndex};

use super::carrier::Carrier;
use super::chart::PotentialChart;

#[derive(Debug, Clone)]
pub struct FormalOperator<C: Carrier> {
    hol: usize,
    order: i64,
    terms: BTreeMap<i64, BTreeMap<MultiIndex, C>>,
}

impl<C: Carrier> FormalOperator<C> {
    /// Parameter order through which the operator is built.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn hol_dims(&self) -> usize {
        self.hol
    }

    /// Coefficients of ∂^γ at parameter degree r.
    pub fn term(&self, r: i64) -> Option<&BTreeMap<MultiIndex, C>> {
        self.terms.get(&r)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BTreeMap<MultiIndex, C>)> {
        self.terms.iter()
    }

    /// True when the operator is plain multiplication (all A_r = 0, r ≥ 1).
    pub fn is_multiplication(&self) -> bool {
        self.terms.iter().all(|(r, m)| *r == 0 || m.is_empty())
    }

    /// Structural degree bound: every ∂^γ at level r has |γ| ≤ r.
    pub fn degree_bound_holds(&self) -> bool {
        self.terms
            .iter()
            .all(|(r, m)| m.keys().all(|g| i64::from(g.total()) <= *r))
    }

    /// Applies the operator to a single carrier, producing a series in the
    /// chart parameter valid through the operator order.
    pub fn apply(
        &self,
        g: &C,
        param: crate::formal::Param,
    ) -> Result<FormalSeries<C>> {
        let mut derivs: BTreeMap<MultiIndex, C> = BTreeMap::new();
        derivs.insert(MultiIndex::zero(self.hol), g.clone());
        let mut out = FormalSeries::zero(param, 0, self.order);
        for (r, coeffs) in &self.terms {
            let mut acc: Option<C> = None;
            for (gamma, a) in coeffs {
                let dg = hol_derivative_memo(&mut derivs, g, gamma)?;
                let prod = a.mul(dg);
                acc = Some(match acc {
                    Some(cur) => cur.add(&prod),
                    None => prod,
                });
            }
            if let Some(v) = acc {
                if !Carrier::is_zero(&v) {
                    out.insert_term(*r, v);
                }
            }
        }
        Ok(out)
    }
}

/// ∂^γ g with memoized derivative chains.
fn hol_derivative_memo<'a, C: Carrier>(
    memo: &'a mut BTreeMap<MultiIndex, C>,
    g: &C,
    gamma: &MultiIndex,
) -> Result<&'a C> {
    if !memo.contains_key(gamma) {
        let j = gamma
            .0
            .iter()
            .position(|&e| e > 0)
            .expect("nonzero index sought in memo");
        let parent = gamma.clone().0;
        let mut pv = parent;
        pv[j] -= 1;
        let parent = MultiIndex(pv);
        let base = hol_derivative_memo(memo, g, &parent)?.clone();
        let derived = base.diff_hol(j)?;
        memo.insert(gamma.clone(), derived);
    }
    Ok(memo.get(gamma).expect("just inserted"))
}

/// Holomorphic derivative ∂^δ of a carrier by repeated single derivatives.
fn hol_derivative<C: Carrier>(c: &C, delta: &MultiIndex) -> Result<C> {
    let mut out = c.clone();
    for (j, &e) in delta.0.iter().enumerate() {
        for _ in 0..e {
            out = out.diff_hol(j)?;
        }
    }
    Ok(out)
}

/// Builds L_f on the given chart through parameter order `r_max`.
pub fn left_mult_operator<C: Carrier>(
    f: &C,
    chart: &PotentialChart<C>,
    r_max: i64,
) -> Result<FormalOperator<C>> {
    assert!(r_max >= 0, "operator order must be non-negative");
    let hol = chart.hol_dims();
    if f.hol_dims() != hol {
        return Err(Error::DimensionMismatch);
    }
    let mut terms: BTreeMap<i64, BTreeMap<MultiIndex, C>> = BTreeMap::new();
    let mut level0 = BTreeMap::new();
    if !Carrier::is_zero(f) {
        level0.insert(MultiIndex::zero(hol), f.clone());
    }
    terms.insert(0, level0);

    // cache of ∂^δ φ_l keyed by (l, δ)
    let mut phi_derivs: BTreeMap<(usize, MultiIndex), C> = BTreeMap::new();

    for r in 0..r_max {
        let prev = terms.get(&r).expect("built in previous step").clone();
        // coefficientwise ∂̄_l of A_r
        let mut rhs: Vec<BTreeMap<MultiIndex, C>> = Vec::with_capacity(hol);
        for l in 0..hol {
            let mut m = BTreeMap::new();
            for (gamma, a) in &prev {
                let d = a.diff_antihol(l)?;
                if !Carrier::is_zero(&d) {
                    m.insert(gamma.clone(), d);
                }
            }
            rhs.push(m);
        }

        let mut next: BTreeMap<MultiIndex, C> = BTreeMap::new();
        let top = (r + 1) as u32;
        for m in (1..=top).rev() {
            for alpha in MultiIndex::of_degree(hol, m) {
                let j0 = alpha
                    .0
                    .iter()
                    .position(|&e| e > 0)
                    .expect("degree ≥ 1 has a positive entry");
                let gamma = {
                    let mut v = alpha.0.clone();
                    v[j0] -= 1;
                    MultiIndex(v)
                };
                // Σ_l Ginv[l][j0] · (rhs_l − corrections), then divide by γ_{j0}+1
                let mut acc: Option<C> = None;
                for l in 0..hol {
                    let mut rhs_l: Option<C> = rhs[l].get(&gamma).cloned();
                    for (alpha_p, a) in &next {
                        if alpha_p.total() < gamma.total() + 2 || !gamma.le(alpha_p) {
                            continue;
                        }
                        let delta = alpha_p.sub(&gamma);
                        let phi_d = phi_deriv_cached(&mut phi_derivs, chart, l, &delta)?;
                        let corr = phi_d.mul(a).scale_rat(&BigRational::from_integer(
                            alpha_p.binom(&delta),
                        ));
                        rhs_l = Some(match rhs_l {
                            Some(cur) => cur.sub(&corr),
                            None => corr.neg(),
                        });
                    }
                    let Some(rhs_l) = rhs_l else { continue };
                    if Carrier::is_zero(&rhs_l) {
                        continue;
                    }
                    let contrib = chart.metric_inv()[l][j0].mul(&rhs_l);
                    acc = Some(match acc {
                        Some(cur) => cur.add(&contrib),
                        None => contrib,
                    });
                }
                if let Some(v) = acc {
                    let scaled = v.scale_rat(&BigRational::new(
                        1.into(),
                        (i64::from(gamma.0[j0]) + 1).into(),
                    ));
                    if !Carrier::is_zero(&scaled) {
                        next.insert(alpha, scaled);
                    }
                }
            }
        }

        // verify [A_{r+1}, φ_l] = ∂̄_l A_r in full
        for l in 0..hol {
            for gamma in MultiIndex::up_to_degree(hol, r as u32) {
                let mut lhs: Option<C> = None;
                for (alpha_p, a) in &next {
                    if *alpha_p == gamma || !gamma.le(alpha_p) {
                        continue;
                    }
                    let delta = alpha_p.sub(&gamma);
                    let phi_d = phi_deriv_cached(&mut phi_derivs, chart, l, &delta)?;
                    let term = phi_d.mul(a).scale_rat(&BigRational::from_integer(
                        alpha_p.binom(&delta),
                    ));
                    lhs = Some(match lhs {
                        Some(cur) => cur.add(&term),
                        None => term,
                    });
                }
                let residual = match (lhs, rhs[l].get(&gamma)) {
                    (Some(lhs), Some(rhs)) => lhs.sub(rhs),
                    (Some(lhs), None) => lhs,
                    (None, Some(rhs)) => rhs.neg(),
                    (None, None) => continue,
                };
                if !Carrier::is_zero(&residual) {
                    return Err(Error::ConsistencyFailure(format!(
                        "left-multiplication recursion residual at level {}, l = {l}, γ = {gamma}",
                        r + 1
                    )));
                }
            }
        }

        terms.insert(r + 1, next);
    }

    Ok(FormalOperator {
        hol,
        order: r_max,
        terms,
    })
}

fn phi_deriv_cached<'a, C: Carrier>(
    cache: &'a mut BTreeMap<(usize, MultiIndex), C>,
    chart: &PotentialChart<C>,
    l: usize,
    delta: &MultiIndex,
) -> Result<&'a C> {
    let key = (l, delta.clone());
    if !cache.contains_key(&key) {
        let v = hol_derivative(chart.phi(l), delta)?;
        cache.insert(key.clone(), v);
    }
    Ok(cache.get(&key).expect("just inserted"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{GaussianRational, Jet, Param};

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn flat_chart(order: u32) -> PotentialChart<Jet> {
        let base = vec![q(0)];
        let pot = Jet::from_terms(
            1,
            &base,
            order,
            vec![(MultiIndex(vec![1, 1]), GaussianRational::one())],
        );
        PotentialChart::from_potential_jet(pot).unwrap()
    }

    #[test]
    fn flat_left_mult_of_zbar_is_two_terms() {
        // L_z̄ = z̄ + ν ∂/∂z on the flat chart
        let chart = flat_chart(8);
        let base = vec![q(0)];
        let zbar = Jet::from_terms(
            1,
            &base,
            8,
            vec![(MultiIndex(vec![0, 1]), GaussianRational::one())],
        );
        let op = left_mult_operator(&zbar, &chart, 3).unwrap();
        assert_eq!(op.term(0).unwrap().len(), 1);
        let a1 = op.term(1).unwrap();
        assert_eq!(a1.len(), 1);
        let coeff = a1.get(&MultiIndex(vec![1])).unwrap();
        assert!(coeff.sub(&coeff.one_like()).is_zero());
        assert!(op.term(2).unwrap().is_empty());
        assert!(op.term(3).unwrap().is_empty());
        assert!(op.degree_bound_holds());
    }

    #[test]
    fn holomorphic_functions_multiply() {
        let chart = flat_chart(8);
        let base = vec![q(0)];
        let a = Jet::from_terms(
            1,
            &base,
            8,
            vec![
                (MultiIndex(vec![2, 0]), q(3)),
                (MultiIndex(vec![1, 0]), q(-1)),
            ],
        );
        let op = left_mult_operator(&a, &chart, 3).unwrap();
        assert!(op.is_multiplication());
    }

    #[test]
    fn apply_reproduces_wick_product() {
        // z̄ ⋆ z = zz̄ + ν on the flat chart
        let chart = flat_chart(8);
        let base = vec![q(0)];
        let zbar = Jet::from_terms(
            1,
            &base,
            8,
            vec![(MultiIndex(vec![0, 1]), GaussianRational::one())],
        );
        let z = Jet::from_terms(
            1,
            &base,
            8,
            vec![(MultiIndex(vec![1, 0]), GaussianRational::one())],
        );
        let op = left_mult_operator(&zbar, &chart, 2).unwrap();
        let prod = op.apply(&z, Param::Nu).unwrap();
        let zzbar = Jet::from_terms(
            1,
            &base,
            8,
            vec![(MultiIndex(vec![1, 1]), GaussianRational::one())],
        );
        assert!(prod.coeff(0).unwrap().residual(&zzbar).unwrap().is_zero());
        assert!(prod
            .coeff(1)
            .unwrap()
            .residual(&Jet::one(1, &base, 7))
            .unwrap()
            .is_zero());
        assert!(prod.coeff(2).is_none());
    }

    #[test]
    fn operator_identity_for_potential_derivative() {
        // L_{∂Φ/∂z} = ∂Φ/∂z + ν·∂/∂z on the sphere chart off the surface
        let psi = crate::levi::DefiningFunction::sphere(1);
        let pot = psi.jet_at(&[q(2)], 10).log_ratio().unwrap();
        let chart = PotentialChart::from_potential_jet(pot.clone()).unwrap();
        let phi_z = pot.diff_z(0).unwrap();
        let op = left_mult_operator(&phi_z, &chart, 3).unwrap();
        let a1 = op.term(1).unwrap();
        assert_eq!(a1.len(), 1);
        let coeff = a1.get(&MultiIndex(vec![1])).unwrap();
        assert!(coeff.sub(&coeff.one_like()).is_zero());
        assert!(op.term(2).unwrap().is_empty());
        assert!(op.term(3).unwrap().is_empty());
    }
}
