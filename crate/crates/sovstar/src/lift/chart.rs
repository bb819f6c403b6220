//! Chart constructors around a defining function: the lifted chart with
//! potential ρ = ψuū (valid on and off the hypersurface, wherever Γ is
//! invertible) and the base chart with potential log-ratio ψ (off it).

use crate::engine::PotentialChart;
use crate::error::{Error, Result};
use crate::formal::{FiberGradedJet, GaussianRational, Jet, Param};
use crate::levi::{build_gamma, classify_point, invert_gamma, DefiningFunction, PointClass};

/// ρ = ψuū as a fiber-graded jet: the ψ-jet at grade (1,1).
pub fn lift_rho(psi: &DefiningFunction, x: &[GaussianRational], order: u32) -> FiberGradedJet {
    FiberGradedJet::monomial(1, 1, psi.jet_at(x, order))
}

/// The lifted chart at (x, u = 1) with everything the engine needs:
/// potential ρ, its antiholomorphic derivatives, Γ as the metric, Π as the
/// inverse. All fiber dependence is exact monomials.
#[derive(Debug, Clone)]
pub struct LiftedChart {
    psi: DefiningFunction,
    x: Vec<GaussianRational>,
    order: u32,
    class: PointClass,
    psi_jet: Jet,
    chart: PotentialChart<FiberGradedJet>,
}

impl LiftedChart {
    pub fn new(psi: &DefiningFunction, x: &[GaussianRational], order: u32) -> Result<Self> {
        let n = psi.n();
        if x.len() != n {
            return Err(Error::DimensionMismatch);
        }
        let gamma = build_gamma(psi, x, order);
        let pi = invert_gamma(psi, &gamma)?;
        let psi_jet = psi.jet_at(x, order);
        let potential = lift_rho(psi, x, order);

        let mut phi = Vec::with_capacity(n + 1);
        for l in 0..n {
            phi.push(FiberGradedJet::monomial(1, 1, psi.diff_zbar(l).jet_at(x, order)));
        }
        phi.push(FiberGradedJet::monomial(1, 0, psi_jet.clone()));

        let metric = gamma.full_gamma();
        let metric_inv = pi.full_pi();
        let chart = PotentialChart::new(Param::H, potential, phi, metric, metric_inv)?;

        Ok(LiftedChart {
            psi: psi.clone(),
            x: x.to_vec(),
            order,
            class: classify_point(psi, x),
            psi_jet,
            chart,
        })
    }

    pub fn psi(&self) -> &DefiningFunction {
        &self.psi
    }

    pub fn base_point(&self) -> &[GaussianRational] {
        &self.x
    }

    pub fn jet_order(&self) -> u32 {
        self.order
    }

    pub fn class(&self) -> PointClass {
        self.class
    }

    pub fn on_surface(&self) -> bool {
        self.class != PointClass::Case1
    }

    pub fn psi_jet(&self) -> &Jet {
        &self.psi_jet
    }

    pub fn chart(&self) -> &PotentialChart<FiberGradedJet> {
        &self.chart
    }

    /// ψ^r as a jet; negative powers need ψ(x) ≠ 0.
    pub fn psi_power(&self, r: i64) -> Result<Jet> {
        if r >= 0 {
            self.psi_jet.pow(r as u32)
        } else {
            if self.on_surface() {
                return Err(Error::OnHypersurface);
            }
            self.psi_jet.inv()?.pow((-r) as u32)
        }
    }
}

/// The base chart off the hypersurface, with potential log-ratio ψ.
pub fn log_chart(
    psi: &DefiningFunction,
    x: &[GaussianRational],
    order: u32,
) -> Result<PotentialChart<Jet>> {
    if psi.eval(x).is_zero() {
        return Err(Error::OnHypersurface);
    }
    let pot = psi.jet_at(x, order).log_ratio()?;
    PotentialChart::from_potential_jet(pot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Carrier;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn rho_jet_content() {
        let psi = DefiningFunction::sphere(1);
        let rho = lift_rho(&psi, &[q(2)], 4);
        assert_eq!(rho.support(), vec![(1, 1)]);
        assert_eq!(rho.grade(1, 1).constant_term(), q(3));
        // ∂²ρ/∂u∂ū = ψ at grade (0,0)
        let mixed = rho.diff_u().diff_ubar();
        assert_eq!(mixed.support(), vec![(0, 0)]);
        assert_eq!(mixed.grade(0, 0).constant_term(), q(3));
    }

    #[test]
    fn lifted_chart_metric_is_rho_hessian() {
        // the chart constructor verifies metric = Hessian(ρ) entrywise;
        // here we double-check one entry by hand
        let psi = DefiningFunction::sphere(2);
        let lifted = LiftedChart::new(&psi, &[q(1), q(0)], 4).unwrap();
        let rho = lift_rho(&psi, &[q(1), q(0)], 4);
        let entry = rho.diff_hol(0).unwrap().diff_antihol(2).unwrap();
        assert!(lifted.chart().metric()[0][2].sub(&entry).is_zero());
    }

    #[test]
    fn lifted_chart_exists_on_surface() {
        let psi = DefiningFunction::sphere(1);
        assert!(LiftedChart::new(&psi, &[q(1)], 4).is_ok());
        assert!(LiftedChart::new(&psi, &[q(2)], 4).is_ok());
    }

    #[test]
    fn degenerate_point_rejected() {
        let psi = DefiningFunction::cylinder(2);
        assert!(matches!(
            LiftedChart::new(&psi, &[q(1), q(0)], 4),
            Err(Error::GammaSingular(_))
        ));
    }

    #[test]
    fn left_mult_by_rho_is_euler_shift() {
        // L_ρ = ρ + h·u∂/∂u exactly: one multiplication term, one first-order
        // term in the fiber direction, nothing beyond
        use crate::engine::left_mult_operator;
        use crate::formal::MultiIndex;
        let psi = DefiningFunction::sphere(1);
        for point in [q(1), q(2)] {
            let lifted = LiftedChart::new(&psi, &[point.clone()], 8).unwrap();
            let rho = lifted.chart().potential().clone();
            let op = left_mult_operator(&rho, lifted.chart(), 3).unwrap();
            let a1 = op.term(1).unwrap();
            assert_eq!(a1.len(), 1);
            // coefficient of ∂/∂u is the monomial u
            let coeff = a1.get(&MultiIndex(vec![0, 1])).unwrap();
            let u = FiberGradedJet::monomial(1, 0, Jet::one(1, &[point.clone()], 8));
            assert!(coeff.sub(&u).is_zero());
            assert!(op.term(2).unwrap().is_empty());
            assert!(op.term(3).unwrap().is_empty());
        }
    }

    #[test]
    fn log_chart_requires_off_surface() {
        let psi = DefiningFunction::sphere(1);
        assert!(log_chart(&psi, &[q(2)], 6).is_ok());
        assert!(matches!(
            log_chart(&psi, &[q(1)], 6),
            Err(Error::OnHypersurface)
        ));
    }

    #[test]
    fn psi_powers() {
        let psi = DefiningFunction::sphere(1);
        let lifted = LiftedChart::new(&psi, &[q(2)], 4).unwrap();
        let p2 = lifted.psi_power(2).unwrap();
        assert_eq!(p2.constant_term(), q(9));
        let pm1 = lifted.psi_power(-1).unwrap();
        assert!(p2
            .checked_mul(&pm1)
            .unwrap()
            .residual(&lifted.psi_jet())
            .unwrap()
            .is_zero());
        let on_s = LiftedChart::new(&psi, &[q(1)], 4).unwrap();
        assert!(matches!(on_s.psi_power(-1), Err(Error::OnHypersurface)));
    }
}
