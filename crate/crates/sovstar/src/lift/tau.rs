//! The bijection τ from ν-series on the base chart to graded lifted elements,
//! its triangular inverse, the pullback star product off the hypersurface,
//! and the residuals of the identities they satisfy.
//!
//! τ(Σ ν^r f_r) = Σ κ^{⋆r}·f_r (pointwise products; κ^{⋆r} commutes with
//! base functions). τ⁻¹ is solved degree by degree in h using
//! κ^{⋆r} = (h/(uūψ))^r + higher.

use crate::engine::star_series;
use crate::error::{Error, Result};
use crate::formal::{FiberGradedJet, FormalSeries, Jet, Param};

use super::chart::LiftedChart;
use super::felement::FElement;
use super::formal_number::formal_number;
use super::kappa::{star_elements, KappaPowers};

/// τ of a ν-series of jets. Requires κ-powers covering the degrees of `f`.
pub fn tau(ctx: &LiftedChart, powers: &KappaPowers, f: &FormalSeries<Jet>) -> Result<FElement> {
    assert_eq!(f.param(), Param::Nu);
    let order = f.order().min(powers.r_max());
    let mut acc = FElement::zero(
        ctx.psi().n(),
        ctx.base_point(),
        ctx.jet_order(),
        f.min_deg(),
        order,
    );
    for (r, fr) in f.terms() {
        let term = powers.power(*r)?.mul_fn(fr)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// τ⁻¹ of a graded element, truncated at ν-order `target`. Off the
/// hypersurface only (the solve divides by ψ at negative degrees and the
/// positive κ-powers require it anyway).
pub fn tau_inv(
    ctx: &LiftedChart,
    powers: &KappaPowers,
    f: &FElement,
    target: i64,
) -> Result<FormalSeries<Jet>> {
    if ctx.on_surface() {
        return Err(Error::OnHypersurface);
    }
    let order = target.min(f.order()).min(powers.r_max());
    let mut out = FormalSeries::zero(Param::Nu, f.min_deg(), order);
    let mut res = f.clone();
    let mut r = f.min_deg();
    while r <= order {
        if let Some(t) = res.term(r) {
            let fr = t.checked_mul(&ctx.psi_power(r)?)?;
            if !fr.is_zero() {
                out.insert_term(r, fr.clone());
                let sub = powers.power(r)?.mul_fn(&fr)?;
                res = res.sub(&sub)?;
                debug_assert!(
                    res.term(r).is_none(),
                    "triangular solve left degree {r} nonzero"
                );
            }
        }
        r += 1;
    }
    Ok(out)
}

/// The pullback product τ⁻¹(τ(F) ⋆ τ(G)) for ν-series, truncated at `target`.
pub fn pullback_star_series(
    ctx: &LiftedChart,
    powers: &KappaPowers,
    f: &FormalSeries<Jet>,
    g: &FormalSeries<Jet>,
    target: i64,
) -> Result<FormalSeries<Jet>> {
    if ctx.on_surface() {
        return Err(Error::OnHypersurface);
    }
    let tf = tau(ctx, powers, f)?;
    let tg = tau(ctx, powers, g)?;
    let prod = star_elements(ctx, &tf, &tg, target)?;
    tau_inv(ctx, powers, &prod, target)
}

/// Pullback star of two plain jets.
pub fn pullback_star(
    ctx: &LiftedChart,
    f: &Jet,
    g: &Jet,
    target: i64,
) -> Result<FormalSeries<Jet>> {
    let powers = KappaPowers::build(ctx, 0, target, target)?;
    pullback_star_series(
        ctx,
        &powers,
        &FormalSeries::laurent(Param::Nu, [(0, f.clone())]),
        &FormalSeries::laurent(Param::Nu, [(0, g.clone())]),
        target,
    )
}

/// The first-order generator on the base chart:
/// A_k f = (1/(νψ))·∂ψ/∂z^k·f + ∂f/∂z^k, as an exact ν-Laurent series.
pub fn generator_applied(ctx: &LiftedChart, f: &Jet, k: usize) -> Result<FormalSeries<Jet>> {
    let dpsi_k = ctx.psi().diff_z(k).jet_at(ctx.base_point(), ctx.jet_order());
    let psi_inv = ctx.psi_jet().inv()?;
    let low = psi_inv.checked_mul(&dpsi_k)?.checked_mul(f)?;
    let high = f.diff_z(k)?;
    Ok(FormalSeries::laurent(Param::Nu, [(-1, low), (0, high)]))
}

/// Residual of ((1/h)∂ρ/∂z^k) ⋆ f − τ(A_k f), which must vanish off the
/// hypersurface.
pub fn technstat_residual(
    ctx: &LiftedChart,
    powers: &KappaPowers,
    f: &Jet,
    k: usize,
    target: i64,
) -> Result<FormalSeries<FiberGradedJet>> {
    if ctx.on_surface() {
        return Err(Error::OnHypersurface);
    }
    let dpsi_k = ctx.psi().diff_z(k).jet_at(ctx.base_point(), ctx.jet_order());
    let lhs_f = FormalSeries::laurent(Param::H, [(-1, FiberGradedJet::monomial(1, 1, dpsi_k))]);
    let lhs_g = FormalSeries::laurent(Param::H, [(0, FiberGradedJet::from_jet(f.clone()))]);
    let lhs = star_series(&lhs_f, &lhs_g, ctx.chart(), target)?;
    let rhs = tau(ctx, powers, &generator_applied(ctx, f, k)?)?;
    Ok(lhs.residual(&rhs.to_series()))
}

/// Residual of L^⋆_{(1/ν)∂(log ψ)/∂z^k} f − A_k f under the pullback product.
pub fn leftmult_residual(
    ctx: &LiftedChart,
    powers: &KappaPowers,
    f: &Jet,
    k: usize,
    target: i64,
) -> Result<FormalSeries<Jet>> {
    let dpsi_k = ctx.psi().diff_z(k).jet_at(ctx.base_point(), ctx.jet_order());
    let dlog_k = ctx.psi_jet().inv()?.checked_mul(&dpsi_k)?;
    let lhs = pullback_star_series(
        ctx,
        powers,
        &FormalSeries::laurent(Param::Nu, [(-1, dlog_k)]),
        &FormalSeries::laurent(Param::Nu, [(0, f.clone())]),
        target,
    )?;
    let rhs = generator_applied(ctx, f, k)?;
    Ok(lhs.residual(&rhs))
}

/// Residual of τ⁻¹((h/(uū))^r f) − N_r(ν)·ψ^r·f for r ≥ 0.
pub fn invtau_residual(
    ctx: &LiftedChart,
    powers: &KappaPowers,
    f: &Jet,
    r: i64,
    target: i64,
) -> Result<FormalSeries<Jet>> {
    assert!(r >= 0);
    let lhs = tau_inv(ctx, powers, &FElement::single(r, f.clone()), target)?;
    let n_r = formal_number(r, target)?;
    let jet = ctx.psi_power(r)?.checked_mul(f)?;
    let mut rhs = FormalSeries::zero(Param::Nu, r, target);
    for (d, c) in n_r.terms() {
        let scaled = jet.scale(c);
        if !scaled.is_zero() {
            rhs.insert_term(*d, scaled);
        }
    }
    Ok(lhs.residual(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{GaussianRational, MultiIndex};
    use crate::levi::DefiningFunction;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn ctx() -> LiftedChart {
        LiftedChart::new(&DefiningFunction::sphere(1), &[q(2)], 12).unwrap()
    }

    fn test_jet(c: &LiftedChart) -> Jet {
        Jet::from_terms(
            1,
            c.base_point(),
            c.jet_order(),
            vec![
                (MultiIndex(vec![1, 1]), q(1)),
                (MultiIndex(vec![0, 1]), q(-2)),
                (MultiIndex(vec![2, 0]), q(1)),
            ],
        )
    }

    #[test]
    fn tau_fixes_plain_functions() {
        let c = ctx();
        let powers = KappaPowers::build(&c, -1, 2, 3).unwrap();
        let f = test_jet(&c);
        let t = tau(&c, &powers, &FormalSeries::laurent(Param::Nu, [(0, f.clone())])).unwrap();
        assert!(t.residual(&FElement::from_jet(f)).unwrap().is_zero());
    }

    #[test]
    fn tau_of_nu_is_kappa() {
        let c = ctx();
        let powers = KappaPowers::build(&c, 0, 3, 3).unwrap();
        let one = Jet::one(1, c.base_point(), c.jet_order());
        let t = tau(&c, &powers, &FormalSeries::laurent(Param::Nu, [(1, one)])).unwrap();
        let k = super::super::kappa::kappa(&c, 3).unwrap();
        assert!(t.residual(&k).unwrap().is_zero());
    }

    #[test]
    fn tau_respects_module_structure() {
        // τ(F·f) = τ(F)·f
        let c = ctx();
        let powers = KappaPowers::build(&c, -2, 3, 3).unwrap();
        let f = test_jet(&c);
        let big_f = FormalSeries::laurent(
            Param::Nu,
            [(-2, test_jet(&c).conj()), (1, Jet::one(1, c.base_point(), 12))],
        );
        let lhs = tau(&c, &powers, &big_f.map(|j| j.checked_mul(&f).unwrap())).unwrap();
        let rhs = tau(&c, &powers, &big_f).unwrap().mul_fn(&f).unwrap();
        assert!(lhs.residual(&rhs).unwrap().is_zero());
    }

    #[test]
    fn tau_intertwines_nu_and_kappa() {
        // τ(νF) = κ ⋆ τ(F) = τ(F) ⋆ κ
        let c = ctx();
        let powers = KappaPowers::build(&c, -1, 4, 4).unwrap();
        let big_f = FormalSeries::laurent(
            Param::Nu,
            [(-1, test_jet(&c)), (0, test_jet(&c).conj())],
        );
        let lhs = tau(&c, &powers, &big_f.shift(1)).unwrap();
        let tf = tau(&c, &powers, &big_f).unwrap();
        let k = super::super::kappa::kappa(&c, 4).unwrap();
        let rhs1 = star_elements(&c, &k, &tf, 3).unwrap();
        let rhs2 = star_elements(&c, &tf, &k, 3).unwrap();
        assert!(lhs.residual(&rhs1).unwrap().is_zero());
        assert!(lhs.residual(&rhs2).unwrap().is_zero());
    }

    #[test]
    fn tau_roundtrip() {
        let c = ctx();
        let powers = KappaPowers::build(&c, -2, 4, 4).unwrap();
        let f = FormalSeries::laurent(
            Param::Nu,
            [(-2, test_jet(&c)), (0, test_jet(&c).conj()), (2, test_jet(&c))],
        );
        let t = tau(&c, &powers, &f).unwrap();
        let back = tau_inv(&c, &powers, &t, 4).unwrap();
        let res = f.truncated(back.order()).residual(&back);
        assert!(res.is_zero(), "{res}");
    }

    #[test]
    fn invtau_single_terms() {
        let c = ctx();
        let powers = KappaPowers::build(&c, 0, 4, 4).unwrap();
        let f = test_jet(&c);
        for r in 0..=3 {
            let res = invtau_residual(&c, &powers, &f, r, 4).unwrap();
            assert!(res.is_zero(), "r = {r}: {res}");
        }
    }

    #[test]
    fn technstat_holds() {
        let c = ctx();
        let powers = KappaPowers::build(&c, -1, 3, 3).unwrap();
        for f in [test_jet(&c), Jet::one(1, c.base_point(), 12), c.psi_jet().clone()] {
            let res = technstat_residual(&c, &powers, &f, 0, 3).unwrap();
            assert!(res.is_zero(), "{res}");
        }
    }

    #[test]
    fn leftmult_is_first_order_generator() {
        let c = ctx();
        let powers = KappaPowers::build(&c, -1, 4, 4).unwrap();
        let res = leftmult_residual(&c, &powers, &test_jet(&c), 0, 3).unwrap();
        assert!(res.is_zero(), "{res}");
    }

    #[test]
    fn pullback_star_is_separated() {
        // a holomorphic ⇒ a ⋆ f = a·f under the pullback product
        let c = ctx();
        let a = Jet::from_terms(
            1,
            c.base_point(),
            12,
            vec![(MultiIndex(vec![2, 0]), q(1)), (MultiIndex(vec![1, 0]), q(3))],
        );
        let f = test_jet(&c);
        let prod = pullback_star(&c, &a, &f, 3).unwrap();
        let expect = FormalSeries::laurent(Param::Nu, [(0, a.checked_mul(&f).unwrap())]);
        let res = prod.residual(&expect.truncated(prod.order()));
        assert!(res.is_zero(), "{res}");
    }

    #[test]
    fn on_surface_operations_rejected() {
        let on_s = LiftedChart::new(&DefiningFunction::sphere(1), &[q(1)], 8).unwrap();
        let powers = KappaPowers::build(&on_s, -1, 0, 3).unwrap();
        let f = FElement::from_jet(Jet::one(1, on_s.base_point(), 8));
        assert!(matches!(
            tau_inv(&on_s, &powers, &f, 3),
            Err(Error::OnHypersurface)
        ));
    }
}
