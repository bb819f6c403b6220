//! The (n+1)×(n+1) matrix Γ attached to a defining function on the lifted
//! chart, its inverse Π, the point classification, and the kernel analysis.
//!
//! Fiber dependence of Γ is purely monomial: with D_u = diag(u,…,u,1) and
//! D_ū = diag(ū,…,ū,1), the full matrix is Γ = D_u·Γ₀·D_ū where Γ₀ holds
//! plain jets. Inversion therefore happens over z-jets only, and
//! Π = D_ū⁻¹·Γ₀⁻¹·D_u⁻¹ restores the grades.

use crate::error::{Error, Result, SingularKind};
use crate::formal::linalg::{constant_part, invert_jet_matrix, kernel_basis};
use crate::formal::{FiberGradedJet, GaussianRational, Jet};

use super::defining::DefiningFunction;

/// Classification of a base point relative to ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// ψ(x) ≠ 0.
    Case1,
    /// ψ(x) = 0 and ∂ψ(x) ≠ 0.
    Case2,
    /// ψ(x) = 0 and ∂ψ(x) = 0; Γ is necessarily singular.
    Critical,
}

impl std::fmt::Display for PointClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointClass::Case1 => write!(f, "case1"),
            PointClass::Case2 => write!(f, "case2"),
            PointClass::Critical => write!(f, "critical"),
        }
    }
}

pub fn classify_point(psi: &DefiningFunction, x: &[GaussianRational]) -> PointClass {
    if !psi.eval(x).is_zero() {
        return PointClass::Case1;
    }
    let n = psi.n();
    let grad_nonzero = (0..n).any(|k| !psi.diff_z(k).eval(x).is_zero());
    if grad_nonzero {
        PointClass::Case2
    } else {
        PointClass::Critical
    }
}

/// The fiber-stripped matrix Γ₀ together with the grade bookkeeping needed to
/// reconstruct the full Γ.
#[derive(Debug, Clone)]
pub struct GammaData {
    n: usize,
    base: Vec<GaussianRational>,
    order: u32,
    /// Γ₀[k][l] = ∂²ψ/∂z^k∂z̄^l for k,l < n; Γ₀[k][n] = ∂ψ/∂z^k;
    /// Γ₀[n][l] = ∂ψ/∂z̄^l; Γ₀[n][n] = ψ.
    gamma0: Vec<Vec<Jet>>,
}

impl GammaData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &[GaussianRational] {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn gamma0(&self) -> &Vec<Vec<Jet>> {
        &self.gamma0
    }

    /// Reconstructs the full Γ with fiber grades: entry (k,l) gains grade
    /// (1,1) for k,l < n, (1,0) in the last column, (0,1) in the last row,
    /// and (0,0) at the corner.
    pub fn full_gamma(&self) -> Vec<Vec<FiberGradedJet>> {
        let n = self.n;
        (0..=n)
            .map(|k| {
                (0..=n)
                    .map(|l| {
                        let a = if k < n { 1 } else { 0 };
                        let b = if l < n { 1 } else { 0 };
                        FiberGradedJet::monomial(a, b, self.gamma0[k][l].clone())
                    })
                    .collect()
            })
            .collect()
    }

    /// Hermiticity as a jet-matrix identity: entry (i,j) equals the conjugate
    /// jet of entry (j,i).
    pub fn is_hermitian(&self) -> bool {
        let n = self.n;
        (0..=n).all(|i| (0..=n).all(|j| self.gamma0[i][j] == self.gamma0[j][i].conj()))
    }
}

/// Expands Γ₀ at x with all entries of valid order `order`. Differentiation
/// happens at the polynomial level, so no jet precision is lost.
pub fn build_gamma(psi: &DefiningFunction, x: &[GaussianRational], order: u32) -> GammaData {
    let n = psi.n();
    let mut gamma0 = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        for l in 0..=n {
            let poly = if k < n && l < n {
                psi.diff_z(k).diff_zbar(l)
            } else if k < n {
                psi.diff_z(k)
            } else if l < n {
                psi.diff_zbar(l)
            } else {
                psi.clone()
            };
            row.push(poly.jet_at(x, order));
        }
        gamma0.push(row);
    }
    GammaData {
        n,
        base: x.to_vec(),
        order,
        gamma0,
    }
}

/// The inverse Π of Γ, stored fiber-stripped with the grade bookkeeping of
/// Π = D_ū⁻¹·Γ₀⁻¹·D_u⁻¹: the A block carries grade (−1,−1), B (bottom row)
/// grade (−1,0), C (right column) grade (0,−1), and D grade (0,0).
#[derive(Debug, Clone)]
pub struct PiData {
    n: usize,
    /// A[l][k] with Σ_l Γ₀[k][l]·A[l][m] + Γ₀[k][n]·B[m] = δ_k^m.
    a: Vec<Vec<Jet>>,
    b: Vec<Jet>,
    c: Vec<Jet>,
    d: Jet,
}

impl PiData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Vec<Vec<Jet>> {
        &self.a
    }

    pub fn b(&self) -> &[Jet] {
        &self.b
    }

    pub fn c(&self) -> &[Jet] {
        &self.c
    }

    pub fn d(&self) -> &Jet {
        &self.d
    }

    /// Π₀ = Γ₀⁻¹ as a plain jet matrix.
    pub fn pi0(&self) -> Vec<Vec<Jet>> {
        let n = self.n;
        let mut m: Vec<Vec<Jet>> = Vec::with_capacity(n + 1);
        for l in 0..n {
            let mut row = self.a[l].clone();
            row.push(self.c[l].clone());
            m.push(row);
        }
        let mut last = self.b.clone();
        last.push(self.d.clone());
        m.push(last);
        m
    }

    /// Full Π with fiber grades restored.
    pub fn full_pi(&self) -> Vec<Vec<FiberGradedJet>> {
        let n = self.n;
        let pi0 = self.pi0();
        (0..=n)
            .map(|l| {
                (0..=n)
                    .map(|k| {
                        let b = if l < n { -1 } else { 0 };
                        let a = if k < n { -1 } else { 0 };
                        FiberGradedJet::monomial(a, b, pi0[l][k].clone())
                    })
                    .collect()
            })
            .collect()
    }
}

/// Inverts Γ via the fiber factorization. On failure the error carries the
/// classification of the base point.
pub fn invert_gamma(psi: &DefiningFunction, gamma: &GammaData) -> Result<PiData> {
    let n = gamma.n;
    match invert_jet_matrix(&gamma.gamma0) {
        Ok(pi0) => {
            let a = (0..n).map(|l| pi0[l][..n].to_vec()).collect();
            let c = (0..n).map(|l| pi0[l][n].clone()).collect();
            let b = (0..n).map(|k| pi0[n][k].clone()).collect();
            let d = pi0[n][n].clone();
            Ok(PiData { n, a, b, c, d })
        }
        Err(Error::NotInvertible) => {
            let kind = match classify_point(psi, &gamma.base) {
                PointClass::Case1 => SingularKind::Case1DegenerateMetric,
                PointClass::Case2 => SingularKind::Case2DegenerateLevi,
                PointClass::Critical => SingularKind::CriticalPoint,
            };
            Err(Error::GammaSingular(kind))
        }
        Err(e) => Err(e),
    }
}

/// Exact kernel of the constant part of Γ at (x, u = 1): vectors
/// (v¹,…,vⁿ, a). Empty iff Γ is invertible there.
pub fn gamma_kernel(psi: &DefiningFunction, x: &[GaussianRational]) -> Vec<Vec<GaussianRational>> {
    let gamma = build_gamma(psi, x, 0);
    kernel_basis(&constant_part(&gamma.gamma0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::linalg::jet_matmul;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn classify_sphere_points() {
        let psi = DefiningFunction::sphere(2);
        assert_eq!(classify_point(&psi, &[q(1), q(0)]), PointClass::Case2);
        assert_eq!(classify_point(&psi, &[q(2), q(0)]), PointClass::Case1);
        let zz = DefiningFunction::new(
            1,
            vec![(crate::formal::MultiIndex(vec![1, 1]), q(1))],
        )
        .unwrap();
        assert_eq!(classify_point(&zz, &[q(0)]), PointClass::Critical);
    }

    #[test]
    fn gamma_constant_parts() {
        let psi = DefiningFunction::sphere(1);
        let g2 = build_gamma(&psi, &[q(2)], 3);
        let c2 = constant_part(g2.gamma0());
        assert_eq!(c2, vec![vec![q(1), q(2)], vec![q(2), q(3)]]);
        let g1 = build_gamma(&psi, &[q(1)], 3);
        let c1 = constant_part(g1.gamma0());
        assert_eq!(c1, vec![vec![q(1), q(1)], vec![q(1), q(0)]]);
        let zz = DefiningFunction::new(
            1,
            vec![(crate::formal::MultiIndex(vec![1, 1]), q(1))],
        )
        .unwrap();
        let g0 = build_gamma(&zz, &[q(0)], 3);
        assert_eq!(constant_part(g0.gamma0()), vec![vec![q(1), q(0)], vec![q(0), q(0)]]);
    }

    #[test]
    fn gamma_is_hermitian_at_complex_points() {
        let psi = DefiningFunction::sphere(2);
        let x = vec![GaussianRational::from_parts(1, 2, 1, 3), q(1)];
        let g = build_gamma(&psi, &x, 4);
        assert!(g.is_hermitian());
    }

    #[test]
    fn pi_constant_parts_on_sphere() {
        let psi = DefiningFunction::sphere(1);
        let g = build_gamma(&psi, &[q(2)], 3);
        let pi = invert_gamma(&psi, &g).unwrap();
        let pi0 = pi.pi0();
        assert_eq!(pi0[0][0].constant_term(), q(-3));
        assert_eq!(pi0[0][1].constant_term(), q(2));
        assert_eq!(pi0[1][0].constant_term(), q(2));
        assert_eq!(pi0[1][1].constant_term(), q(-1));

        let g1 = build_gamma(&psi, &[q(1)], 3);
        let pi1 = invert_gamma(&psi, &g1).unwrap();
        let p = pi1.pi0();
        assert_eq!(p[0][0].constant_term(), q(0));
        assert_eq!(p[0][1].constant_term(), q(1));
        assert_eq!(p[1][0].constant_term(), q(1));
        assert_eq!(p[1][1].constant_term(), q(-1));
    }

    #[test]
    fn gamma_times_pi_is_identity() {
        let psi = DefiningFunction::sphere(2);
        for x in [vec![q(2), q(0)], vec![q(1), q(0)]] {
            let g = build_gamma(&psi, &x, 4);
            let pi = invert_gamma(&psi, &g).unwrap();
            let prod = jet_matmul(g.gamma0(), &pi.pi0()).unwrap();
            for i in 0..=2 {
                for j in 0..=2 {
                    let expect = if i == j {
                        Jet::one(2, &x, 4)
                    } else {
                        Jet::zero(2, &x, 4)
                    };
                    assert_eq!(prod[i][j], expect, "entry ({i},{j}) at {x:?}");
                }
            }
        }
    }

    #[test]
    fn full_gamma_times_full_pi_is_identity() {
        // the graded identities, with the fiber monomials in place
        let psi = DefiningFunction::sphere(1);
        let x = vec![q(2)];
        let g = build_gamma(&psi, &x, 3);
        let pi = invert_gamma(&psi, &g).unwrap();
        let full_g = g.full_gamma();
        let full_p = pi.full_pi();
        for k in 0..=1 {
            for m in 0..=1 {
                let mut acc = full_g[k][0].checked_mul(&full_p[0][m]).unwrap();
                acc = acc
                    .checked_add(&full_g[k][1].checked_mul(&full_p[1][m]).unwrap())
                    .unwrap();
                if k == m {
                    let one = FiberGradedJet::from_jet(Jet::one(1, &x, 3));
                    assert!(acc.residual(&one).unwrap().is_zero());
                } else {
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn degenerate_cylinder_diagnosed() {
        let psi = DefiningFunction::cylinder(2);
        let x = vec![q(1), q(0)];
        let g = build_gamma(&psi, &x, 3);
        match invert_gamma(&psi, &g) {
            Err(Error::GammaSingular(SingularKind::Case2DegenerateLevi)) => {}
            other => panic!("expected Case2 singularity, got {other:?}"),
        }
    }

    #[test]
    fn kernel_examples() {
        let sphere = DefiningFunction::sphere(2);
        assert!(gamma_kernel(&sphere, &[q(1), q(0)]).is_empty());
        let cyl = DefiningFunction::cylinder(2);
        let k = gamma_kernel(&cyl, &[q(1), q(0)]);
        assert_eq!(k, vec![vec![q(0), q(1), q(0)]]);
    }
}
