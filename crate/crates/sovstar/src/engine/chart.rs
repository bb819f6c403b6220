//! A chart with a fixed potential: the data the left-multiplication recursion
//! consumes. Holds the potential, its antiholomorphic first derivatives
//! φ_l = ∂(potential)/∂ξ̄^l, the mixed-Hessian metric G[k][l] = ∂φ_l/∂ξ^k,
//! and the inverse metric.

use crate::error::{Error, Result, SingularKind};
use crate::formal::linalg::invert_jet_matrix;
use crate::formal::{Jet, Param};

use super::carrier::Carrier;

#[derive(Debug, Clone)]
pub struct PotentialChart<C: Carrier> {
    hol: usize,
    param: Param,
    potential: C,
    phi: Vec<C>,
    metric: Vec<Vec<C>>,
    metric_inv: Vec<Vec<C>>,
}

impl<C: Carrier> PotentialChart<C> {
    /// Assembles a chart from precomputed pieces and verifies the structural
    /// invariants: metric = mixed Hessian of the potential, and
    /// metric · metric_inv = identity, both up to valid order.
    pub fn new(
        param: Param,
        potential: C,
        phi: Vec<C>,
        metric: Vec<Vec<C>>,
        metric_inv: Vec<Vec<C>>,
    ) -> Result<Self> {
        let hol = potential.hol_dims();
        if phi.len() != hol || metric.len() != hol || metric_inv.len() != hol {
            return Err(Error::DimensionMismatch);
        }
        for l in 0..hol {
            let expect = potential.diff_antihol(l)?;
            if !phi[l].sub(&expect).is_zero() {
                return Err(Error::ConsistencyFailure(format!(
                    "phi[{l}] is not the antiholomorphic derivative of the potential"
                )));
            }
        }
        for k in 0..hol {
            for l in 0..hol {
                let expect = phi[l].diff_hol(k)?;
                if !metric[k][l].sub(&expect).is_zero() {
                    return Err(Error::ConsistencyFailure(format!(
                        "metric[{k}][{l}] is not the mixed Hessian of the potential"
                    )));
                }
            }
        }
        for k in 0..hol {
            for m in 0..hol {
                let mut acc = metric[k][0].mul(&metric_inv[0][m]);
                for l in 1..hol {
                    acc = acc.add(&metric[k][l].mul(&metric_inv[l][m]));
                }
                let expect = if k == m {
                    acc.one_like()
                } else {
                    acc.zero_like()
                };
                if !acc.sub(&expect).is_zero() {
                    return Err(Error::ConsistencyFailure(format!(
                        "metric·metric_inv ≠ identity at entry ({k},{m})"
                    )));
                }
            }
        }
        Ok(PotentialChart {
            hol,
            param,
            potential,
            phi,
            metric,
            metric_inv,
        })
    }

    pub fn hol_dims(&self) -> usize {
        self.hol
    }

    pub fn param(&self) -> Param {
        self.param
    }

    pub fn potential(&self) -> &C {
        &self.potential
    }

    pub fn phi(&self, l: usize) -> &C {
        &self.phi[l]
    }

    pub fn metric(&self) -> &Vec<Vec<C>> {
        &self.metric
    }

    pub fn metric_inv(&self) -> &Vec<Vec<C>> {
        &self.metric_inv
    }
}

impl PotentialChart<Jet> {
    /// Base chart over a potential jet (formal parameter ν). The metric is
    /// the mixed Hessian and its inverse is computed over the jet ring.
    pub fn from_potential_jet(potential: Jet) -> Result<Self> {
        let n = potential.dim();
        if potential.order() < 2 {
            return Err(Error::PrecisionExhausted);
        }
        let mut phi = Vec::with_capacity(n);
        for l in 0..n {
            phi.push(potential.diff_zbar(l)?);
        }
        let mut metric = Vec::with_capacity(n);
        for k in 0..n {
            let mut row = Vec::with_capacity(n);
            for l in 0..n {
                row.push(phi[l].diff_z(k)?);
            }
            metric.push(row);
        }
        let metric_inv = match invert_jet_matrix(&metric) {
            Ok(inv) => inv,
            Err(Error::NotInvertible) => {
                return Err(Error::GammaSingular(SingularKind::Unclassified))
            }
            Err(e) => return Err(e),
        };
        // metric is indexed [k][l]; the inverse satisfies Σ_l G[k][l]·Ginv[l][m] = δ
        Self::new(Param::Nu, potential, phi, metric, metric_inv)
    }
}
