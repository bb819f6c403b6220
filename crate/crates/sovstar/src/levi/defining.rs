//! Defining functions: real polynomials in (z, z̄) with Gaussian-rational
//! coefficients, the exact inputs every hypersurface computation starts from.

use std::collections::BTreeMap;
use std::fmt;

use crate::formal::{GaussianRational, Jet, MultiIndex};

/// A real polynomial ψ(z, z̄). Reality means coeff(α,β) = conj(coeff(β,α)).
#[derive(Debug, Clone, PartialEq)]
pub struct DefiningFunction {
    n: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl DefiningFunction {
    /// Builds from (multi-index over z ++ z̄, coefficient) pairs; rejects
    /// polynomials that fail the reality predicate.
    pub fn new(
        n: usize,
        terms: impl IntoIterator<Item = (MultiIndex, GaussianRational)>,
    ) -> Result<Self, String> {
        let mut map: BTreeMap<MultiIndex, GaussianRational> = BTreeMap::new();
        for (idx, c) in terms {
            if idx.dim() != 2 * n {
                return Err(format!(
                    "multi-index dimension {} does not match 2n = {}",
                    idx.dim(),
                    2 * n
                ));
            }
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(idx).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        let f = DefiningFunction { n, terms: map };
        if !f.is_real() {
            return Err("polynomial is not real: coeff(α,β) must equal conj(coeff(β,α))".into());
        }
        Ok(f)
    }

    /// Σ_k |z^k|² − 1, the unit sphere.
    pub fn sphere(n: usize) -> Self {
        let mut terms = vec![(
            MultiIndex::zero(2 * n),
            GaussianRational::from_int(-1),
        )];
        for k in 0..n {
            let mut v = vec![0u32; 2 * n];
            v[k] = 1;
            v[n + k] = 1;
            terms.push((MultiIndex(v), GaussianRational::one()));
        }
        Self::new(n, terms).expect("sphere polynomial is real")
    }

    /// z¹z̄¹ − 1 in ℂⁿ: the Levi-degenerate cylinder for n ≥ 2.
    pub fn cylinder(n: usize) -> Self {
        let mut v = vec![0u32; 2 * n];
        v[0] = 1;
        v[n] = 1;
        let terms = vec![
            (MultiIndex(v), GaussianRational::one()),
            (MultiIndex::zero(2 * n), GaussianRational::from_int(-1)),
        ];
        Self::new(n, terms).expect("cylinder polynomial is real")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(idx, c)| {
            let mut sw = vec![0u32; 2 * self.n];
            for i in 0..self.n {
                sw[i] = idx.0[self.n + i];
                sw[self.n + i] = idx.0[i];
            }
            let mirror = self
                .terms
                .get(&MultiIndex(sw))
                .cloned()
                .unwrap_or_else(GaussianRational::zero);
            *c == mirror.conj()
        })
    }

    /// Formal ∂/∂z^k (var < n) or ∂/∂z̄^{var−n}, exact at the polynomial level.
    pub fn diff(&self, var: usize) -> DefiningFunction {
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            let e = idx.0[var];
            if e == 0 {
                continue;
            }
            let mut v = idx.0.clone();
            v[var] -= 1;
            terms.insert(
                MultiIndex(v),
                c.scale_rat(&num::BigRational::from_integer(e.into())),
            );
        }
        DefiningFunction { n: self.n, terms }
    }

    pub fn diff_z(&self, k: usize) -> DefiningFunction {
        self.diff(k)
    }

    pub fn diff_zbar(&self, l: usize) -> DefiningFunction {
        self.diff(self.n + l)
    }

    /// Exact evaluation at z = x, z̄ = conj(x).
    pub fn eval(&self, x: &[GaussianRational]) -> GaussianRational {
        assert_eq!(x.len(), self.n);
        let xbar: Vec<GaussianRational> = x.iter().map(|c| c.conj()).collect();
        let mut acc = GaussianRational::zero();
        for (idx, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..self.n {
                for _ in 0..idx.0[i] {
                    term = &term * &x[i];
                }
                for _ in 0..idx.0[self.n + i] {
                    term = &term * &xbar[i];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Taylor expansion at x as a jet of the given order. Exact: polynomials
    /// expand with no precision loss.
    pub fn jet_at(&self, x: &[GaussianRational], order: u32) -> Jet {
        poly_jet_at(self.n, self.terms.iter().map(|(i, c)| (i.clone(), c.clone())), x, order)
    }
}

/// Expands an arbitrary polynomial (no reality requirement) given by
/// (z ++ z̄ multi-index, coefficient) terms at the point x, z̄ = conj(x).
pub fn poly_jet_at(
    n: usize,
    terms: impl IntoIterator<Item = (MultiIndex, GaussianRational)>,
    x: &[GaussianRational],
    order: u32,
) -> Jet {
    assert_eq!(x.len(), n);
    let xbar: Vec<GaussianRational> = x.iter().map(|c| c.conj()).collect();
    let mut out: Vec<(MultiIndex, GaussianRational)> = Vec::new();
    for (idx, c) in terms {
        // expand Π (x_i + w_i)^{α_i} (x̄_i + w̄_i)^{β_i}
        let mut partial: Vec<(Vec<u32>, GaussianRational)> = vec![(vec![0u32; 2 * n], c.clone())];
        for i in 0..2 * n {
            let e = idx.0[i];
            if e == 0 {
                continue;
            }
            let point = if i < n { &x[i] } else { &xbar[i - n] };
            let mut next = Vec::new();
            for (exps, coeff) in &partial {
                for a in 0..=e {
                    let mut pow = GaussianRational::new(
                        num::BigRational::from_integer(crate::formal::multiindex::binomial(e, a)),
                        num::BigRational::from_integer(0.into()),
                    );
                    for _ in 0..(e - a) {
                        pow = &pow * point;
                    }
                    let mut exps2 = exps.clone();
                    exps2[i] += a;
                    next.push((exps2, &pow * coeff));
                }
            }
            partial = next;
        }
        for (exps, coeff) in partial {
            let mi = MultiIndex(exps);
            if mi.total() <= order && !coeff.is_zero() {
                out.push((mi, coeff));
            }
        }
    }
    Jet::from_terms(n, x, order, out)
}

impl fmt::Display for DefiningFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for i in 0..self.n {
                if idx.0[i] > 0 {
                    write!(f, "·z{}^{}", i + 1, idx.0[i])?;
                }
                if idx.0[self.n + i] > 0 {
                    write!(f, "·zb{}^{}", i + 1, idx.0[self.n + i])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn sphere_eval() {
        let psi = DefiningFunction::sphere(2);
        assert_eq!(psi.eval(&[q(1), q(0)]), q(0));
        assert_eq!(psi.eval(&[q(2), q(0)]), q(3));
        let i = GaussianRational::i();
        assert_eq!(psi.eval(&[i.clone(), q(0)]), q(0));
    }

    #[test]
    fn reality_enforced() {
        // z alone is not real
        let bad = DefiningFunction::new(
            1,
            vec![(MultiIndex(vec![1, 0]), q(1))],
        );
        assert!(bad.is_err());
        // z + z̄ is real
        let good = DefiningFunction::new(
            1,
            vec![
                (MultiIndex(vec![1, 0]), q(1)),
                (MultiIndex(vec![0, 1]), q(1)),
            ],
        );
        assert!(good.is_ok());
    }

    #[test]
    fn polynomial_derivatives() {
        let psi = DefiningFunction::sphere(1);
        // ∂ψ/∂z = z̄
        let dz = psi.diff_z(0);
        assert_eq!(dz.eval(&[q(2)]), q(2));
        // ∂²ψ/∂z∂z̄ = 1
        let dzz = dz.diff_zbar(0);
        assert_eq!(dzz.eval(&[q(5)]), q(1));
    }

    #[test]
    fn jet_expansion_matches_shift() {
        // ψ = zz̄ − 1 at z = 2: 3 + 2w + 2w̄ + ww̄
        let psi = DefiningFunction::sphere(1);
        let jet = psi.jet_at(&[q(2)], 4);
        assert_eq!(jet.constant_term(), q(3));
        assert_eq!(jet.coeff(&MultiIndex(vec![1, 0])), q(2));
        assert_eq!(jet.coeff(&MultiIndex(vec![0, 1])), q(2));
        assert_eq!(jet.coeff(&MultiIndex(vec![1, 1])), q(1));
        assert!(jet.is_real());
    }

    #[test]
    fn jet_expansion_at_complex_point() {
        let psi = DefiningFunction::sphere(1);
        let i = GaussianRational::i();
        let jet = psi.jet_at(&[i.clone()], 3);
        // ψ(i) = i·(−i) − 1 = 0; ∂ψ = z̄ = −i
        assert_eq!(jet.constant_term(), q(0));
        assert_eq!(jet.coeff(&MultiIndex(vec![1, 0])), i.conj());
        assert!(jet.is_real());
    }
}
