//! Extraction of the bidifferential operators D_r from the lifted product and
//! the extended star product Σ_r N_r(ν)·ψ^r·D_r(f,g), which is defined across
//! the hypersurface and vanishes to first order on it.

use std::collections::BTreeMap;

use crate::engine::star_fn;
use crate::error::{Error, Result};
use crate::formal::{FiberGradedJet, FormalSeries, Jet, Param};

use super::chart::LiftedChart;
use super::formal_number::formal_number;

/// All D_r(f,g) for r ≤ r_max from one lifted product. The h^r coefficient of
/// the lifted star of base functions must sit at fiber grade (−r,−r);
/// anything else is a structural failure.
pub fn d_operators(
    ctx: &LiftedChart,
    f: &Jet,
    g: &Jet,
    r_max: i64,
) -> Result<BTreeMap<i64, Jet>> {
    let lf = FiberGradedJet::from_jet(f.clone());
    let lg = FiberGradedJet::from_jet(g.clone());
    let prod = star_fn(&lf, &lg, ctx.chart(), r_max)?;
    let mut out = BTreeMap::new();
    for (r, c) in prod.terms() {
        for (a, b) in c.support() {
            if a != -r || b != -r {
                return Err(Error::FiberGradeViolation(format!(
                    "lifted product of base functions has grade ({a},{b}) at h^{r}"
                )));
            }
        }
        let jet = c.grade(-r, -r);
        if !jet.is_zero() {
            out.insert(*r, jet);
        }
    }
    Ok(out)
}

/// D_r(f,g) = (uū)^r·C_r(f,g) as a plain jet.
pub fn extract_d(ctx: &LiftedChart, f: &Jet, g: &Jet, r: i64) -> Result<Jet> {
    let ops = d_operators(ctx, f, g, r)?;
    Ok(ops
        .get(&r)
        .cloned()
        .unwrap_or_else(|| Jet::zero(f.dim(), f.base(), f.order())))
}

/// The extended star product of two base functions: the assembled series
/// Σ N_r ψ^r D_r together with its ingredients. Every ν^{≥1} coefficient
/// keeps an explicit ψ^r factor, so vanishing on the hypersurface is
/// inspectable rather than incidental.
#[derive(Debug, Clone)]
pub struct ExtendedProduct {
    pub psi_jet: Jet,
    pub d_ops: BTreeMap<i64, Jet>,
    pub result: FormalSeries<Jet>,
}

impl ExtendedProduct {
    /// At a base point on the hypersurface, every ν^{≥1} coefficient of the
    /// assembled series vanishes at the point.
    pub fn vanishes_at_base(&self) -> bool {
        self.result
            .terms()
            .all(|(d, c)| *d == 0 || c.constant_term().is_zero())
    }
}

pub fn extended_star(ctx: &LiftedChart, f: &Jet, g: &Jet, r_max: i64) -> Result<ExtendedProduct> {
    let d_ops = d_operators(ctx, f, g, r_max)?;
    let psi_jet = ctx.psi_jet().clone();
    let mut acc: BTreeMap<i64, Jet> = BTreeMap::new();
    for (r, d) in &d_ops {
        let weight = formal_number(*r, r_max)?;
        let jet = psi_jet.pow(*r as u32)?.checked_mul(d)?;
        for (deg, c) in weight.terms() {
            if *deg > r_max {
                continue;
            }
            let scaled = jet.scale(c);
            if scaled.is_zero() {
                continue;
            }
            match acc.remove(deg) {
                Some(cur) => {
                    let sum = cur.checked_add(&scaled)?;
                    if !sum.is_zero() {
                        acc.insert(*deg, sum);
                    }
                }
                None => {
                    acc.insert(*deg, scaled);
                }
            }
        }
    }
    let mut result = FormalSeries::zero(Param::Nu, 0, r_max);
    for (d, c) in acc {
        result.insert_term(d, c);
    }
    Ok(ExtendedProduct {
        psi_jet,
        d_ops,
        result,
    })
}

/// Bilinear extension of the extended product to ν-series of jets.
pub fn extended_star_series(
    ctx: &LiftedChart,
    f: &FormalSeries<Jet>,
    g: &FormalSeries<Jet>,
    target: i64,
) -> Result<FormalSeries<Jet>> {
    let order = target
        .min(f.order().saturating_add(g.min_deg()).min(crate::formal::EXACT))
        .min(g.order().saturating_add(f.min_deg()).min(crate::formal::EXACT));
    let mut out = FormalSeries::zero(Param::Nu, f.min_deg() + g.min_deg(), order);
    for (i, fi) in f.terms() {
        for (j, gj) in g.terms() {
            let sub_target = order - i - j;
            if sub_target < 0 {
                continue;
            }
            let p = extended_star(ctx, fi, gj, sub_target)?;
            out = out.add(&p.result.shift(i + j));
        }
    }
    Ok(out.truncated(order))
}

/// Associativity residual of the extended product at the chart's base point.
pub fn extended_associativity_residual(
    ctx: &LiftedChart,
    f: &Jet,
    g: &Jet,
    k: &Jet,
    r_max: i64,
) -> Result<FormalSeries<Jet>> {
    let fg = extended_star(ctx, f, g, r_max)?.result;
    let gk = extended_star(ctx, g, k, r_max)?.result;
    let k_series = FormalSeries::laurent(Param::Nu, [(0, k.clone())]);
    let f_series = FormalSeries::laurent(Param::Nu, [(0, f.clone())]);
    let left = extended_star_series(ctx, &fg, &k_series, r_max)?;
    let right = extended_star_series(ctx, &f_series, &gk, r_max)?;
    Ok(left.residual(&right))
}
