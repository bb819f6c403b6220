//! The star product: apply L_f to g, with bilinear extension to Laurent
//! series in the formal parameter.

use crate::error::Result;
use crate::formal::{FormalSeries, EXACT};

use super::carrier::Carrier;
use super::chart::PotentialChart;
use super::operator::{left_mult_operator, FormalOperator};

/// f ⋆ g for single carriers, through parameter order `r_max`.
pub fn star_fn<C: Carrier>(
    f: &C,
    g: &C,
    chart: &PotentialChart<C>,
    r_max: i64,
) -> Result<FormalSeries<C>> {
    let op = left_mult_operator(f, chart, r_max)?;
    op.apply(g, chart.param())
}

/// Coefficient C_r(f,g) of the star product.
pub fn c_r<C: Carrier>(
    f: &C,
    g: &C,
    chart: &PotentialChart<C>,
    r: i64,
) -> Result<C> {
    let s = star_fn(f, g, chart, r)?;
    Ok(s.coeff(r).cloned().unwrap_or_else(|| f.zero_like()))
}

/// Star product of Laurent series by bilinear extension: coefficient pairs
/// (i, j) contribute at degrees i + j + r. The result is valid through
/// min(target, f.order + g.min_deg, g.order + f.min_deg).
pub fn star_series<C: Carrier>(
    f: &FormalSeries<C>,
    g: &FormalSeries<C>,
    chart: &PotentialChart<C>,
    target: i64,
) -> Result<FormalSeries<C>> {
    assert_eq!(f.param(), chart.param(), "series parameter mismatch");
    assert_eq!(g.param(), chart.param(), "series parameter mismatch");
    let order = target
        .min(f.order().saturating_add(g.min_deg()).min(EXACT))
        .min(g.order().saturating_add(f.min_deg()).min(EXACT));
    let min_deg = f.min_deg() + g.min_deg();
    let mut out = FormalSeries::zero(chart.param(), min_deg, order);
    let mut acc: std::collections::BTreeMap<i64, C> = std::collections::BTreeMap::new();
    for (i, fi) in f.terms() {
        let r_i = order - i - g.min_deg();
        if r_i < 0 {
            continue;
        }
        let op: FormalOperator<C> = left_mult_operator(fi, chart, r_i)?;
        for (j, gj) in g.terms() {
            for (r, coeffs) in op.terms() {
                let d = i + j + r;
                if d > order || coeffs.is_empty() {
                    continue;
                }
                let applied = op_level_apply(coeffs, gj)?;
                let Some(applied) = applied else { continue };
                match acc.remove(&d) {
                    Some(cur) => {
                        let sum = cur.add(&applied);
                        if !Carrier::is_zero(&sum) {
                            acc.insert(d, sum);
                        }
                    }
                    None => {
                        if !Carrier::is_zero(&applied) {
                            acc.insert(d, applied);
                        }
                    }
                }
            }
        }
    }
    for (d, v) in acc {
        out.insert_term(d, v);
    }
    Ok(out)
}

fn op_level_apply<C: Carrier>(
    coeffs: &std::collections::BTreeMap<crate::formal::MultiIndex, C>,
    g: &C,
) -> Result<Option<C>> {
    let mut acc: Option<C> = None;
    for (gamma, a) in coeffs {
        let mut dg = g.clone();
        for (j, &e) in gamma.0.iter().enumerate() {
            for _ in 0..e {
                dg = dg.diff_hol(j)?;
            }
        }
        let prod = a.mul(&dg);
        acc = Some(match acc {
            Some(cur) => cur.add(&prod),
            None => prod,
        });
    }
    Ok(acc)
}
