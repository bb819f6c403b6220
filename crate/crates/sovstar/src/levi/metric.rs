//! The pseudo-Kähler metric from a potential, its smooth inverse across the
//! hypersurface, and the Poisson bracket it defines.

use crate::error::{Error, Result, SingularKind};
use crate::formal::{GaussianRational, Jet};

use super::defining::DefiningFunction;
use super::gamma::{build_gamma, classify_point, invert_gamma, PointClass};

/// g[k][l] = ∂²φ/∂z^k∂z̄^l for a potential jet φ. Valid order drops by two.
pub fn metric_from_potential(phi: &Jet) -> Result<Vec<Vec<Jet>>> {
    if phi.order() < 2 {
        return Err(Error::PrecisionExhausted);
    }
    let n = phi.dim();
    let mut g = Vec::with_capacity(n);
    for k in 0..n {
        let dk = phi.diff_z(k)?;
        let mut row = Vec::with_capacity(n);
        for l in 0..n {
            row.push(dk.diff_zbar(l)?);
        }
        g.push(row);
    }
    Ok(g)
}

/// g^{l̄k} = ψ·(Γ₀⁻¹ upper-left block), indexed [l][k]. Defined wherever Γ is
/// invertible, on or off the hypersurface; off S it inverts the metric of
/// log-ratio ψ, and on S its constant part vanishes.
pub fn smooth_inverse_metric(
    psi: &DefiningFunction,
    x: &[GaussianRational],
    order: u32,
) -> Result<Vec<Vec<Jet>>> {
    let n = psi.n();
    let gamma = build_gamma(psi, x, order);
    let pi = invert_gamma(psi, &gamma)?;
    let psi_jet = psi.jet_at(x, order);
    let mut out = Vec::with_capacity(n);
    for l in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            row.push(psi_jet.checked_mul(&pi.a()[l][k])?);
        }
        out.push(row);
    }
    Ok(out)
}

/// The closed-form inverse metric of the unit sphere, ψ(δ^{kl} − z̄^l z^k),
/// expanded at x. Test oracle for `smooth_inverse_metric`.
pub fn sphere_inverse_metric_closed_form(
    n: usize,
    x: &[GaussianRational],
    order: u32,
) -> Vec<Vec<Jet>> {
    use super::defining::poly_jet_at;
    use crate::formal::MultiIndex;
    let psi = DefiningFunction::sphere(n);
    let mut out = Vec::with_capacity(n);
    for l in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            // δ^{kl} − z̄^l z^k
            let mut terms = Vec::new();
            if k == l {
                terms.push((MultiIndex::zero(2 * n), GaussianRational::one()));
            }
            let mut v = vec![0u32; 2 * n];
            v[k] += 1;
            v[n + l] += 1;
            terms.push((MultiIndex(v), GaussianRational::from_int(-1)));
            let jet = poly_jet_at(n, terms, x, order);
            row.push(psi.jet_at(x, order).checked_mul(&jet).unwrap());
        }
        out.push(row);
    }
    out
}

/// {f,g} = i Σ g^{l̄k}(∂f/∂z^k ∂g/∂z̄^l − ∂g/∂z^k ∂f/∂z̄^l), with the
/// constant fixed so that the first-order star antisymmetrization equals
/// i{f,g} on every chart.
pub fn poisson_bracket(
    psi: &DefiningFunction,
    x: &[GaussianRational],
    f: &Jet,
    g: &Jet,
) -> Result<Jet> {
    let n = psi.n();
    if f.dim() != n || g.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    let order = f.order().min(g.order());
    if order < 1 {
        return Err(Error::PrecisionExhausted);
    }
    let ginv = smooth_inverse_metric(psi, x, order)?;
    let mut acc = Jet::zero(n, x, order - 1);
    for l in 0..n {
        for k in 0..n {
            let term = f
                .diff_z(k)?
                .checked_mul(&g.diff_zbar(l)?)?
                .checked_sub(&g.diff_z(k)?.checked_mul(&f.diff_zbar(l)?)?)?;
            acc = acc.checked_add(&ginv[l][k].checked_mul(&term)?)?;
        }
    }
    Ok(acc.scale(&GaussianRational::i()))
}

/// Case-1 equivalence helper: both invertibility verdicts at a ψ(x) ≠ 0
/// point, plus the product identity when both hold.
pub fn case1_equivalence(
    psi: &DefiningFunction,
    x: &[GaussianRational],
    order: u32,
) -> Result<bool> {
    if classify_point(psi, x) != PointClass::Case1 {
        return Err(Error::OnHypersurface);
    }
    let psi_jet = psi.jet_at(x, order + 2);
    let pot = psi_jet.log_ratio()?;
    let g = metric_from_potential(&pot)?;
    let g_invertible = crate::formal::linalg::invert_jet_matrix(&g).is_ok();
    let gamma = build_gamma(psi, x, order);
    let gamma_invertible = invert_gamma(psi, &gamma).is_ok();
    if g_invertible != gamma_invertible {
        return Err(Error::ConsistencyFailure(
            "metric and gamma invertibility disagree at a case-1 point".into(),
        ));
    }
    if !g_invertible {
        return Err(Error::GammaSingular(SingularKind::Case1DegenerateMetric));
    }
    // ψ·A^{l̄k} inverts g_{kl̄}: check Σ_l g[k][l]·ginv[l][m] = δ_k^m
    let ginv = smooth_inverse_metric(psi, x, order)?;
    let n = psi.n();
    for k in 0..n {
        for m in 0..n {
            let mut acc = g[k][0].checked_mul(&ginv[0][m])?;
            for l in 1..n {
                acc = acc.checked_add(&g[k][l].checked_mul(&ginv[l][m])?)?;
            }
            let expect = if k == m {
                Jet::one(n, x, acc.order())
            } else {
                Jet::zero(n, x, acc.order())
            };
            if !acc.residual(&expect)?.is_zero() {
                return Err(Error::ConsistencyFailure(format!(
                    "g·g⁻¹ ≠ 1 at entry ({k},{m})"
                )));
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::MultiIndex;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn flat_potential_metric() {
        // φ = zz̄ → g = [1]
        let base = vec![q(0)];
        let phi = Jet::from_terms(
            1,
            &base,
            4,
            vec![(MultiIndex(vec![1, 1]), GaussianRational::one())],
        );
        let g = metric_from_potential(&phi).unwrap();
        assert_eq!(g[0][0], Jet::one(1, &base, 2));
    }

    #[test]
    fn sphere_metric_constant() {
        let psi = DefiningFunction::sphere(1);
        let pot = psi.jet_at(&[q(2)], 6).log_ratio().unwrap();
        let g = metric_from_potential(&pot).unwrap();
        assert_eq!(g[0][0].constant_term(), GaussianRational::from_ratio(-1, 9));
    }

    #[test]
    fn sphere_metric_matches_closed_form_n2() {
        // (1/ψ)(δ_{kl} − z̄^k z^l/ψ) at (2,0): ψ = 3
        let psi = DefiningFunction::sphere(2);
        let x = vec![q(2), q(0)];
        let pot = psi.jet_at(&x, 6).log_ratio().unwrap();
        let g = metric_from_potential(&pot).unwrap();
        // g_{11̄} = (1/3)(1 − 4/3) = −1/9; g_{22̄} = 1/3; off-diagonals 0
        assert_eq!(g[0][0].constant_term(), GaussianRational::from_ratio(-1, 9));
        assert_eq!(g[1][1].constant_term(), GaussianRational::from_ratio(1, 3));
        assert_eq!(g[0][1].constant_term(), q(0));
        assert_eq!(g[1][0].constant_term(), q(0));
    }

    #[test]
    fn metric_is_hermitian() {
        let psi = DefiningFunction::sphere(2);
        let x = vec![GaussianRational::from_parts(1, 2, 1, 5), q(2)];
        let pot = psi.jet_at(&x, 5).log_ratio().unwrap();
        let g = metric_from_potential(&pot).unwrap();
        for k in 0..2 {
            for l in 0..2 {
                assert_eq!(g[k][l], g[l][k].conj(), "entry ({k},{l})");
            }
        }
    }

    #[test]
    fn smooth_inverse_metric_values() {
        let psi = DefiningFunction::sphere(1);
        // off S: constant part −9, and it inverts g_{11̄}
        let ginv = smooth_inverse_metric(&psi, &[q(2)], 4).unwrap();
        assert_eq!(ginv[0][0].constant_term(), q(-9));
        let pot = psi.jet_at(&[q(2)], 6).log_ratio().unwrap();
        let g = metric_from_potential(&pot).unwrap();
        let prod = g[0][0].checked_mul(&ginv[0][0]).unwrap();
        assert!(prod.residual(&Jet::one(1, &[q(2)], 4)).unwrap().is_zero());
        // on S: constant part vanishes
        let on_s = smooth_inverse_metric(&psi, &[q(1)], 4).unwrap();
        assert_eq!(on_s[0][0].constant_term(), q(0));
    }

    #[test]
    fn smooth_inverse_metric_equals_sphere_closed_form() {
        for n in [1usize, 2] {
            let psi = DefiningFunction::sphere(n);
            let mut on_point = vec![q(0); n];
            on_point[0] = q(1);
            let mut off_point = vec![q(0); n];
            off_point[0] = q(2);
            for x in [on_point, off_point] {
                let got = smooth_inverse_metric(&psi, &x, 4).unwrap();
                let expect = sphere_inverse_metric_closed_form(n, &x, 4);
                for l in 0..n {
                    for k in 0..n {
                        assert!(
                            got[l][k].residual(&expect[l][k]).unwrap().is_zero(),
                            "n={n} entry ({l},{k}) at {x:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_antisymmetry_and_vanishing_on_s() {
        let psi = DefiningFunction::sphere(1);
        let x = vec![q(1)];
        let f = Jet::from_terms(
            1,
            &x,
            5,
            vec![
                (MultiIndex(vec![1, 0]), q(2)),
                (MultiIndex(vec![1, 1]), q(1)),
            ],
        );
        let g = Jet::from_terms(
            1,
            &x,
            5,
            vec![(MultiIndex(vec![0, 1]), q(3)), (MultiIndex(vec![2, 0]), q(1))],
        );
        let fg = poisson_bracket(&psi, &x, &f, &g).unwrap();
        let gf = poisson_bracket(&psi, &x, &g, &f).unwrap();
        assert!(fg.checked_add(&gf).unwrap().is_zero());
        assert!(poisson_bracket(&psi, &x, &f, &f).unwrap().is_zero());
        // vanishing on S: constant term of any bracket is zero
        assert_eq!(fg.constant_term(), q(0));
    }

    #[test]
    fn bracket_convention_flat_check() {
        // {z, z̄} = i·g^{1̄1} with g^{1̄1}(x) as the smooth inverse; at x = 2
        // on the sphere chart g^{1̄1}(2) = −9, so {z,z̄}(2) = −9i
        let psi = DefiningFunction::sphere(1);
        let x = vec![q(2)];
        let z = Jet::from_terms(
            1,
            &x,
            4,
            vec![
                (MultiIndex(vec![0, 0]), q(2)),
                (MultiIndex(vec![1, 0]), q(1)),
            ],
        );
        let zb = z.conj();
        let br = poisson_bracket(&psi, &x, &z, &zb).unwrap();
        assert_eq!(br.constant_term(), &q(-9) * &GaussianRational::i());
    }

    #[test]
    fn jacobi_identity_on_random_triples() {
        let psi = DefiningFunction::sphere(1);
        for (point, salt) in [(q(2), 0), (q(1), 1)] {
            let x = vec![point];
            let mut rng = crate::scenario::random::rng_for(13, "jacobi", 0, salt);
            for _ in 0..4 {
                let f = crate::scenario::random::random_jet(&mut rng, 1, &x, 8, 2);
                let g = crate::scenario::random::random_jet(&mut rng, 1, &x, 8, 2);
                let h = crate::scenario::random::random_jet(&mut rng, 1, &x, 8, 2);
                let a = poisson_bracket(&psi, &x, &f, &poisson_bracket(&psi, &x, &g, &h).unwrap())
                    .unwrap();
                let b = poisson_bracket(&psi, &x, &g, &poisson_bracket(&psi, &x, &h, &f).unwrap())
                    .unwrap();
                let c = poisson_bracket(&psi, &x, &h, &poisson_bracket(&psi, &x, &f, &g).unwrap())
                    .unwrap();
                let sum = a.checked_add(&b).unwrap().checked_add(&c).unwrap();
                assert!(sum.is_zero());
                // antisymmetry on the way
                let fg = poisson_bracket(&psi, &x, &f, &g).unwrap();
                let gf = poisson_bracket(&psi, &x, &g, &f).unwrap();
                assert!(fg.checked_add(&gf).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn case1_equivalence_on_sphere() {
        let psi = DefiningFunction::sphere(1);
        assert!(case1_equivalence(&psi, &[q(2)], 4).unwrap());
    }
}
