//! The central inverse κ of (1/h)ρ off the hypersurface, and its star powers.
//!
//! κ is found order by order from ((1/h)ρ) ⋆ κ = 1: with the left
//! multiplication by (1/h)ρ acting as (1/h)ρ + u∂/∂u, the graded terms
//! satisfy ψκ_1 = 1 and ψκ_{s+1} = s·κ_s. The closed form (r−1)!/ψ^r is
//! kept in tests as an independent oracle.

use num::BigRational;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::chart::LiftedChart;
use super::felement::FElement;

/// (1/h)ρ = (h/(uū))^{-1} ψ as a graded element. Exists everywhere.
pub fn rho_over_h(ctx: &LiftedChart) -> FElement {
    FElement::single(-1, ctx.psi_jet().clone())
}

/// κ with graded terms through h-order `r_max`. Requires ψ(x) ≠ 0.
pub fn kappa(ctx: &LiftedChart, r_max: i64) -> Result<FElement> {
    if ctx.on_surface() {
        return Err(Error::OnHypersurface);
    }
    assert!(r_max >= 1, "κ starts at h-order 1");
    let psi_inv = ctx.psi_jet().inv()?;
    let mut terms = BTreeMap::new();
    let mut current = psi_inv.clone();
    terms.insert(1i64, current.clone());
    for s in 1..r_max {
        current = current
            .scale_rat(&BigRational::from_integer(s.into()))
            .checked_mul(&psi_inv)?;
        terms.insert(s + 1, current.clone());
    }
    Ok(FElement::from_terms(
        ctx.psi_jet().dim(),
        ctx.base_point(),
        ctx.jet_order(),
        1,
        r_max,
        terms,
    ))
}

/// Star powers κ^{⋆m}: positive powers by repeated ⋆ of κ (off the surface),
/// κ^{⋆0} = 1, negative powers by repeated ⋆ of (1/h)ρ (anywhere).
#[derive(Debug)]
pub struct KappaPowers {
    r_max: i64,
    powers: BTreeMap<i64, FElement>,
}

impl KappaPowers {
    /// Precomputes κ^{⋆m} for m in [min_power, max_power], each valid through
    /// h-order `r_max`.
    pub fn build(ctx: &LiftedChart, min_power: i64, max_power: i64, r_max: i64) -> Result<Self> {
        assert!(min_power <= 0 && max_power >= 0, "power range must include 0");
        let mut powers = BTreeMap::new();
        let one = FElement::one(ctx.psi_jet().dim(), ctx.base_point(), ctx.jet_order());
        powers.insert(0i64, one);
        if max_power > 0 {
            if ctx.on_surface() {
                return Err(Error::OnHypersurface);
            }
            let k = kappa(ctx, r_max)?;
            let mut acc = k.clone();
            powers.insert(1, acc.clone());
            for m in 2..=max_power {
                acc = star_elements(ctx, &acc, &k, r_max)?;
                powers.insert(m, acc.clone());
            }
        }
        if min_power < 0 {
            let r = rho_over_h(ctx);
            let mut acc = r.clone();
            powers.insert(-1, acc.clone());
            for m in 2..=(-min_power) {
                acc = star_elements(ctx, &acc, &r, r_max)?;
                powers.insert(-m, acc.clone());
            }
        }
        Ok(KappaPowers { r_max, powers })
    }

    pub fn r_max(&self) -> i64 {
        self.r_max
    }

    pub fn power(&self, m: i64) -> Result<&FElement> {
        self.powers.get(&m).ok_or_else(|| {
            Error::ConsistencyFailure(format!("κ^⋆{m} not precomputed"))
        })
    }
}

/// Star product of two graded elements on the lifted chart; the grading of
/// the result is validated structurally.
pub fn star_elements(
    ctx: &LiftedChart,
    a: &FElement,
    b: &FElement,
    target: i64,
) -> Result<FElement> {
    let s = crate::engine::star_series(&a.to_series(), &b.to_series(), ctx.chart(), target)?;
    FElement::from_series(&s)
}

/// κ^{⋆m} computed standalone, through h-order `r_max`.
pub fn kappa_power(ctx: &LiftedChart, m: i64, r_max: i64) -> Result<FElement> {
    let powers = KappaPowers::build(ctx, m.min(0), m.max(0), r_max)?;
    Ok(powers.power(m)?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{GaussianRational, Jet, EXACT};
    use crate::levi::DefiningFunction;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn ctx() -> LiftedChart {
        LiftedChart::new(&DefiningFunction::sphere(1), &[q(2)], 10).unwrap()
    }

    #[test]
    fn kappa_leading_term_is_inverse_psi() {
        let c = ctx();
        let k = kappa(&c, 4).unwrap();
        let psi_inv = c.psi_jet().inv().unwrap();
        assert!(k.term(1).unwrap().residual(&psi_inv).unwrap().is_zero());
    }

    #[test]
    fn kappa_matches_factorial_closed_form() {
        // κ_r = (r−1)!/ψ^r, derived from the two-term recursion
        let c = ctx();
        let k = kappa(&c, 5).unwrap();
        let mut factorial = BigRational::from_integer(1.into());
        for r in 1..=5i64 {
            if r > 1 {
                factorial *= BigRational::from_integer((r - 1).into());
            }
            let expect = c.psi_power(-r).unwrap().scale_rat(&factorial);
            assert!(
                k.term(r).unwrap().residual(&expect).unwrap().is_zero(),
                "term {r}"
            );
        }
    }

    #[test]
    fn kappa_is_two_sided_inverse() {
        let c = ctx();
        let k = kappa(&c, 4).unwrap();
        let rho = rho_over_h(&c);
        let one = FElement::one(1, &[q(2)], 10);
        for (a, b) in [(&rho, &k), (&k, &rho)] {
            let prod = star_elements(&c, a, b, 3).unwrap();
            let res = prod.residual(&one).unwrap();
            assert!(res.is_zero(), "({:?})", res);
        }
    }

    #[test]
    fn kappa_requires_off_surface() {
        let on_s = LiftedChart::new(&DefiningFunction::sphere(1), &[q(1)], 8).unwrap();
        assert!(matches!(kappa(&on_s, 3), Err(Error::OnHypersurface)));
        assert!(matches!(
            KappaPowers::build(&on_s, -2, 1, 3),
            Err(Error::OnHypersurface)
        ));
        // negative powers are fine on the surface
        assert!(KappaPowers::build(&on_s, -2, 0, 3).is_ok());
    }

    #[test]
    fn negative_power_is_rho_over_h() {
        let c = ctx();
        let p = kappa_power(&c, -1, 3).unwrap();
        assert_eq!(p.term(-1).unwrap().constant_term(), q(3));
        assert!(p.term(0).is_none());
    }

    #[test]
    fn positive_power_leading_terms() {
        // κ^{⋆m} = (h/(uūψ))^m + higher
        let c = ctx();
        for m in 1..=3i64 {
            let p = kappa_power(&c, m, 4).unwrap();
            assert_eq!(p.to_series().valuation(), Some(m), "power {m}");
            let expect = c.psi_power(-m).unwrap();
            assert!(
                p.term(m).unwrap().residual(&expect).unwrap().is_zero(),
                "power {m}"
            );
        }
    }

    #[test]
    fn kappa_times_inverse_power() {
        let c = ctx();
        let k1 = kappa_power(&c, 1, 4).unwrap();
        let km1 = kappa_power(&c, -1, 4).unwrap();
        let prod = star_elements(&c, &k1, &km1, 3).unwrap();
        let one = FElement::one(1, &[q(2)], 10);
        assert!(prod.residual(&one).unwrap().is_zero());
    }

    #[test]
    fn kappa_is_central_in_graded_subalgebra() {
        use crate::formal::MultiIndex;
        let c = ctx();
        let k = kappa(&c, 4).unwrap();
        let f = FElement::from_terms(
            1,
            &[q(2)],
            10,
            -1,
            EXACT,
            vec![
                (
                    -1,
                    Jet::from_terms(
                        1,
                        &[q(2)],
                        10,
                        vec![(MultiIndex(vec![1, 1]), q(2))],
                    ),
                ),
                (
                    1,
                    Jet::from_terms(
                        1,
                        &[q(2)],
                        10,
                        vec![(MultiIndex(vec![0, 1]), q(1)), (MultiIndex(vec![2, 0]), q(-1))],
                    ),
                ),
            ],
        );
        let lhs = star_elements(&c, &k, &f, 3).unwrap();
        let rhs = star_elements(&c, &f, &k, 3).unwrap();
        assert!(lhs.residual(&rhs).unwrap().is_zero());
    }
}
