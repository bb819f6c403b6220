//! The derivation δ = h·∂/∂h + ū·∂/∂ū of the lifted algebra. It weights each
//! h-degree and applies the fiber Euler operator in ū; graded elements
//! (h/(uū))^r·f are annihilated.

use crate::error::Result;
use crate::formal::{FiberGradedJet, FormalSeries, Param};

use super::chart::PotentialChart;
use super::checks::Residual;
use super::star::star_series;

pub fn lifted_delta(f: &FormalSeries<FiberGradedJet>) -> FormalSeries<FiberGradedJet> {
    assert_eq!(f.param(), Param::H, "δ acts on lifted (h-parameter) series");
    let mut out = FormalSeries::zero(Param::H, f.min_deg(), f.order());
    for (d, c) in f.terms() {
        let weighted = c.scale(&crate::formal::GaussianRational::from_int(*d));
        let euler = c.euler_ubar();
        let sum = weighted.checked_add(&euler).expect("compatible by construction");
        if !sum.is_zero() {
            out.insert_term(*d, sum);
        }
    }
    out
}

/// δ(F⋆G) − δ(F)⋆G − F⋆δ(G), which must vanish: δ is an h-derivation of the
/// lifted product.
pub fn delta_leibniz_residual(
    f: &FormalSeries<FiberGradedJet>,
    g: &FormalSeries<FiberGradedJet>,
    chart: &PotentialChart<FiberGradedJet>,
    target: i64,
) -> Result<Residual> {
    let prod = star_series(f, g, chart, target)?;
    let lhs = lifted_delta(&prod);
    let rhs = star_series(&lifted_delta(f), g, chart, target)?
        .add(&star_series(f, &lifted_delta(g), chart, target)?);
    Ok(Residual::from_series(&lhs.residual(&rhs)))
}
