//! The Levi form of a hypersurface point: bases of the holomorphic tangent
//! spaces V and W and the (n−1)×(n−1) matrix Q over them.

use crate::error::{Error, Result};
use crate::formal::GaussianRational;

use super::defining::DefiningFunction;
use super::gamma::{classify_point, gamma_kernel, PointClass};

#[derive(Debug, Clone)]
pub struct LeviData {
    pub point: Vec<GaussianRational>,
    /// Vectors v with Σ_k ∂ψ/∂z^k(x)·v^k = 0.
    pub v_basis: Vec<Vec<GaussianRational>>,
    /// Vectors w (components w^l̄) with Σ_l ∂ψ/∂z̄^l(x)·w^l̄ = 0.
    pub w_basis: Vec<Vec<GaussianRational>>,
    /// Q[i][j] = Σ_{k,l} ∂²ψ/∂z^k∂z̄^l(x)·v_i^k·w_j^l̄.
    pub q: Vec<Vec<GaussianRational>>,
}

impl LeviData {
    /// Exact determinant of Q; the empty matrix (n = 1) has determinant 1.
    pub fn det_q(&self) -> GaussianRational {
        det(&self.q)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det_q().is_zero()
    }
}

fn det(m: &[Vec<GaussianRational>]) -> GaussianRational {
    let n = m.len();
    if n == 0 {
        return GaussianRational::one();
    }
    // Laplace expansion; n ≤ 2 in practice
    let mut acc = GaussianRational::zero();
    let mut sign = GaussianRational::one();
    for k in 0..n {
        if !m[0][k].is_zero() {
            let minor: Vec<Vec<GaussianRational>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| j != k)
                        .map(|j| m[i][j].clone())
                        .collect()
                })
                .collect();
            acc = &acc + &(&(&sign * &m[0][k]) * &det(&minor));
        }
        sign = -&sign;
    }
    acc
}

/// Builds the Levi data at a hypersurface point. The pivot coordinate is the
/// one with the largest |∂ψ/∂z^k(x)|² (lowest index on ties); basis vectors
/// are e_j − (∂_jψ/∂_{k*}ψ)·e_{k*} for j ≠ k*.
pub fn levi_form(psi: &DefiningFunction, x: &[GaussianRational]) -> Result<LeviData> {
    match classify_point(psi, x) {
        PointClass::Case1 => return Err(Error::NotOnHypersurface),
        PointClass::Critical => return Err(Error::CriticalPoint),
        PointClass::Case2 => {}
    }
    let n = psi.n();
    let dz: Vec<GaussianRational> = (0..n).map(|k| psi.diff_z(k).eval(x)).collect();
    let dzbar: Vec<GaussianRational> = (0..n).map(|l| psi.diff_zbar(l).eval(x)).collect();

    let mut pivot = 0;
    let mut best = dz[0].norm_sq();
    for (k, c) in dz.iter().enumerate().skip(1) {
        let norm = c.norm_sq();
        if norm > best {
            best = norm;
            pivot = k;
        }
    }

    let mut v_basis = Vec::new();
    let mut w_basis = Vec::new();
    for j in 0..n {
        if j == pivot {
            continue;
        }
        let mut v = vec![GaussianRational::zero(); n];
        v[j] = GaussianRational::one();
        v[pivot] = -&(&dz[j] * &dz[pivot].inv()?);
        v_basis.push(v);
        let mut w = vec![GaussianRational::zero(); n];
        w[j] = GaussianRational::one();
        w[pivot] = -&(&dzbar[j] * &dzbar[pivot].inv()?);
        w_basis.push(w);
    }

    let mut hess = vec![vec![GaussianRational::zero(); n]; n];
    for k in 0..n {
        for l in 0..n {
            hess[k][l] = psi.diff_z(k).diff_zbar(l).eval(x);
        }
    }

    let m = v_basis.len();
    let mut q = vec![vec![GaussianRational::zero(); m]; m];
    for (i, v) in v_basis.iter().enumerate() {
        for (j, w) in w_basis.iter().enumerate() {
            let mut acc = GaussianRational::zero();
            for k in 0..n {
                for l in 0..n {
                    acc = &acc + &(&(&hess[k][l] * &v[k]) * &w[l]);
                }
            }
            q[i][j] = acc;
        }
    }

    Ok(LeviData {
        point: x.to_vec(),
        v_basis,
        w_basis,
        q,
    })
}

/// Case-2 equivalence: the kernel of Γ at (x,1) is nonempty iff Q is
/// degenerate. Returns (kernel basis, levi data) for cross-checks.
pub fn kernel_levi_equivalence(
    psi: &DefiningFunction,
    x: &[GaussianRational],
) -> Result<(Vec<Vec<GaussianRational>>, LeviData)> {
    let levi = levi_form(psi, x)?;
    let kernel = gamma_kernel(psi, x);
    Ok((kernel, levi))
}

#[allow(dead_code)]
fn basis_check(psi: &DefiningFunction, x: &[GaussianRational], levi: &LeviData) -> bool {
    let n = psi.n();
    levi.v_basis.iter().all(|v| {
        let mut acc = GaussianRational::zero();
        for k in 0..n {
            acc = &acc + &(&psi.diff_z(k).eval(x) * &v[k]);
        }
        acc.is_zero()
    })
}
