//! Truncated power series (jets) in the 2n formal variables z¹..zⁿ, z̄¹..z̄ⁿ
//! around a base point, with exact Gaussian-rational coefficients.
//!
//! Invariants:
//! - all stored multi-indices have total degree ≤ `order` (the valid order)
//! - no stored coefficient is zero
//! - the z̄ base coordinates are implicitly the conjugates of `base`
//!
//! Precision ledger: products truncate to min(J_a, J_b), derivatives to J−1;
//! coefficients beyond the valid order are never stored or returned.

use num::BigRational;
use std::collections::BTreeMap;
use std::fmt;

use super::multiindex::MultiIndex;
use super::scalar::GaussianRational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    dim: usize,
    base: Vec<GaussianRational>,
    order: u32,
    coeffs: BTreeMap<MultiIndex, GaussianRational>,
}

impl Jet {
    pub fn zero(dim: usize, base: &[GaussianRational], order: u32) -> Self {
        assert_eq!(base.len(), dim);
        Jet {
            dim,
            base: base.to_vec(),
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: GaussianRational, dim: usize, base: &[GaussianRational], order: u32) -> Self {
        let mut jet = Self::zero(dim, base, order);
        if !c.is_zero() {
            jet.coeffs.insert(MultiIndex::zero(2 * dim), c);
        }
        jet
    }

    pub fn one(dim: usize, base: &[GaussianRational], order: u32) -> Self {
        Self::constant(GaussianRational::one(), dim, base, order)
    }

    /// Builds a jet from (z-exponents ++ z̄-exponents, coefficient) pairs.
    /// Terms beyond `order` are dropped.
    pub fn from_terms(
        dim: usize,
        base: &[GaussianRational],
        order: u32,
        terms: impl IntoIterator<Item = (MultiIndex, GaussianRational)>,
    ) -> Self {
        let mut jet = Self::zero(dim, base, order);
        for (idx, c) in terms {
            assert_eq!(idx.dim(), 2 * dim, "multi-index must cover z and z̄");
            if idx.total() <= order && !c.is_zero() {
                let entry = jet.coeffs.entry(idx).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &c;
            }
        }
        jet.normalize();
        jet
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &[GaussianRational] {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, idx: &MultiIndex) -> GaussianRational {
        self.coeffs.get(idx).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&MultiIndex::zero(2 * self.dim))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &Jet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch);
        }
        if self.base != other.base {
            return Err(Error::BasePointMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = Jet::zero(self.dim, &self.base, order);
        for (idx, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if idx.total() <= order {
                let entry = out.coeffs.entry(idx.clone()).or_insert_with(GaussianRational::zero);
                *entry = &*entry + c;
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Jet) -> Result<Jet> {
        self.checked_add(&other.neg())
    }

    /// Truncated Cauchy product; valid order is min(J_a, J_b).
    pub fn checked_mul(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = Jet::zero(self.dim, &self.base, order);
        for (ia, ca) in &self.coeffs {
            let da = ia.total();
            if da > order {
                continue;
            }
            for (ib, cb) in &other.coeffs {
                if da + ib.total() > order {
                    continue;
                }
                let idx = ia.add(ib);
                let entry = out.coeffs.entry(idx).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &(ca * cb);
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn neg(&self) -> Jet {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Jet {
        if c.is_zero() {
            return Jet::zero(self.dim, &self.base, self.order);
        }
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn scale_rat(&self, c: &BigRational) -> Jet {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = v.scale_rat(c);
        }
        out.normalize();
        out
    }

    /// Formal partial derivative. `var` in 0..n selects ∂/∂z^k, in n..2n
    /// selects ∂/∂z̄^{var−n}. Valid order drops by one.
    pub fn diff(&self, var: usize) -> Result<Jet> {
        assert!(var < 2 * self.dim, "variable index out of range");
        if self.order == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let order = self.order - 1;
        let mut out = Jet::zero(self.dim, &self.base, order);
        for (idx, c) in &self.coeffs {
            let e = idx.0[var];
            if e == 0 {
                continue;
            }
            let mut v = idx.0.clone();
            v[var] -= 1;
            let down = MultiIndex(v);
            if down.total() <= order {
                out.coeffs.insert(down, c.scale_rat(&BigRational::from_integer(e.into())));
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn diff_z(&self, k: usize) -> Result<Jet> {
        self.diff(k)
    }

    pub fn diff_zbar(&self, l: usize) -> Result<Jet> {
        self.diff(self.dim + l)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<Jet> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let a0_inv = a0.inv()?;
        // a = a0 (1 + w), w of positive valuation: inv = (1/a0) Σ (−w)^m
        let mut w = self.scale(&a0_inv);
        w.coeffs.remove(&MultiIndex::zero(2 * self.dim));
        let mut sum = Jet::one(self.dim, &self.base, self.order);
        let mut power = Jet::one(self.dim, &self.base, self.order);
        let mut negative = false;
        for _ in 1..=self.order {
            power = power.checked_mul(&w)?;
            if power.is_zero() {
                break;
            }
            negative = !negative;
            sum = if negative {
                sum.checked_sub(&power)?
            } else {
                sum.checked_add(&power)?
            };
        }
        Ok(sum.scale(&a0_inv))
    }

    /// log(a/a₀) via the alternating series in w = a/a₀ − 1. The additive
    /// constant log|a₀| is dropped; only derivatives of the result are used.
    pub fn log_ratio(&self) -> Result<Jet> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let a0_inv = a0.inv()?;
        let mut w = self.scale(&a0_inv);
        w.coeffs.remove(&MultiIndex::zero(2 * self.dim));
        let mut sum = Jet::zero(self.dim, &self.base, self.order);
        let mut power = Jet::one(self.dim, &self.base, self.order);
        for m in 1..=self.order {
            power = power.checked_mul(&w)?;
            if power.is_zero() {
                break;
            }
            let term = power.scale_rat(&BigRational::new(
                if m % 2 == 1 { 1.into() } else { (-1).into() },
                m.into(),
            ));
            sum = sum.checked_add(&term)?;
        }
        Ok(sum)
    }

    pub fn pow(&self, e: u32) -> Result<Jet> {
        let mut out = Jet::one(self.dim, &self.base, self.order);
        for _ in 0..e {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Conjugate jet: swaps z and z̄ exponents and conjugates coefficients.
    pub fn conj(&self) -> Jet {
        let n = self.dim;
        let mut out = Jet::zero(n, &self.base, self.order);
        for (idx, c) in &self.coeffs {
            let mut v = vec![0u32; 2 * n];
            for i in 0..n {
                v[i] = idx.0[n + i];
                v[n + i] = idx.0[i];
            }
            out.coeffs.insert(MultiIndex(v), c.conj());
        }
        out
    }

    /// A jet represents a real function iff coeff(α,β) = conj(coeff(β,α)).
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Difference truncated to the common valid order.
    pub fn residual(&self, other: &Jet) -> Result<Jet> {
        self.checked_sub(other)
    }

    pub fn truncated(&self, order: u32) -> Jet {
        let order = order.min(self.order);
        let mut out = Jet::zero(self.dim, &self.base, order);
        for (idx, c) in &self.coeffs {
            if idx.total() <= order {
                out.coeffs.insert(idx.clone(), c.clone());
            }
        }
        out
    }

    /// Largest-norm coefficient (norm², rendered value); None when zero.
    pub fn worst_coeff(&self) -> Option<(BigRational, String)> {
        self.coeffs
            .values()
            .map(|c| (c.norm_sq(), c.to_string()))
            .max_by(|a, b| a.0.cmp(&b.0))
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(|z|^{})", self.order + 1);
        }
        let n = self.dim;
        let mut by_degree: Vec<_> = self.coeffs.iter().collect();
        by_degree.sort_by_key(|(idx, _)| (idx.total(), (*idx).clone()));
        let mut first = true;
        for (idx, c) in by_degree {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for i in 0..n {
                if idx.0[i] > 0 {
                    write!(f, "·z{}^{}", i + 1, idx.0[i])?;
                }
            }
            for i in 0..n {
                if idx.0[n + i] > 0 {
                    write!(f, "·zb{}^{}", i + 1, idx.0[n + i])?;
                }
            }
        }
        write!(f, " + O(|z|^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base1() -> Vec<GaussianRational> {
        vec![GaussianRational::zero()]
    }

    /// 1-dim jet from (z-exp, z̄-exp, num, den) tuples.
    fn jet1(order: u32, terms: &[(u32, u32, i64, i64)]) -> Jet {
        Jet::from_terms(
            1,
            &base1(),
            order,
            terms.iter().map(|&(a, b, n, d)| {
                (MultiIndex(vec![a, b]), GaussianRational::from_ratio(n, d))
            }),
        )
    }

    #[test]
    fn product_of_linear_factors() {
        // (1 + z)(1 + z̄) = 1 + z + z̄ + z z̄
        let a = jet1(4, &[(0, 0, 1, 1), (1, 0, 1, 1)]);
        let b = jet1(4, &[(0, 0, 1, 1), (0, 1, 1, 1)]);
        let expect = jet1(4, &[(0, 0, 1, 1), (1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 1, 1)]);
        assert_eq!(a.checked_mul(&b).unwrap(), expect);
    }

    #[test]
    fn unit_is_neutral() {
        let f = jet1(3, &[(0, 0, 2, 3), (1, 1, -1, 2), (2, 0, 5, 1)]);
        let one = Jet::one(1, &base1(), 3);
        assert_eq!(f.checked_mul(&one).unwrap(), f);
    }

    #[test]
    fn truncation_drops_high_degree() {
        // (z + z²)(z − z²) = z² − z⁴; at J = 3 only z² survives, z³ coefficient 0
        let a = jet1(3, &[(1, 0, 1, 1), (2, 0, 1, 1)]);
        let b = jet1(3, &[(1, 0, 1, 1), (2, 0, -1, 1)]);
        let prod = a.checked_mul(&b).unwrap();
        assert_eq!(prod, jet1(3, &[(2, 0, 1, 1)]));
        assert_eq!(prod.order(), 3);
    }

    #[test]
    fn derivative_examples() {
        // ∂/∂z (z²z̄) = 2 z z̄
        let f = jet1(5, &[(2, 1, 1, 1)]);
        assert_eq!(f.diff_z(0).unwrap(), jet1(4, &[(1, 1, 2, 1)]));
        // ∂/∂z̄ (z²) = 0
        let g = jet1(5, &[(2, 0, 1, 1)]);
        assert!(g.diff_zbar(0).unwrap().is_zero());
        // ∂²/∂z² (z²) = 2
        assert_eq!(
            g.diff_z(0).unwrap().diff_z(0).unwrap(),
            jet1(3, &[(0, 0, 2, 1)])
        );
    }

    #[test]
    fn derivative_tracks_precision() {
        let f = jet1(0, &[(0, 0, 5, 1)]);
        assert!(matches!(f.diff_z(0), Err(Error::PrecisionExhausted)));
        let g = jet1(2, &[(1, 0, 1, 1)]);
        assert_eq!(g.diff_z(0).unwrap().order(), 1);
    }

    #[test]
    fn geometric_series_inverse() {
        // inv(1 − z) = 1 + z + z² + z³ at J = 3
        let f = jet1(3, &[(0, 0, 1, 1), (1, 0, -1, 1)]);
        let expect = jet1(3, &[(0, 0, 1, 1), (1, 0, 1, 1), (2, 0, 1, 1), (3, 0, 1, 1)]);
        assert_eq!(f.inv().unwrap(), expect);
    }

    #[test]
    fn constant_inverse() {
        let c = jet1(2, &[(0, 0, -7, 3)]);
        assert_eq!(c.inv().unwrap(), jet1(2, &[(0, 0, -3, 7)]));
    }

    #[test]
    fn inverse_times_self_is_one() {
        // ψ = zz̄ − 1 expanded at z = 2: 3 + 2w + 2w̄ + ww̄
        let psi = jet1(4, &[(0, 0, 3, 1), (1, 0, 2, 1), (0, 1, 2, 1), (1, 1, 1, 1)]);
        let inv = psi.inv().unwrap();
        assert_eq!(inv.constant_term(), GaussianRational::from_ratio(1, 3));
        assert_eq!(
            inv.coeff(&MultiIndex(vec![1, 0])),
            GaussianRational::from_ratio(-2, 9)
        );
        let prod = psi.checked_mul(&inv).unwrap();
        assert_eq!(prod, Jet::one(1, &base1(), 4));
    }

    #[test]
    fn inv_requires_nonzero_constant() {
        let f = jet1(3, &[(1, 0, 1, 1)]);
        assert!(matches!(f.inv(), Err(Error::NotInvertible)));
    }

    #[test]
    fn log_ratio_mercator() {
        // log(1 + z) = z − z²/2 + z³/3
        let f = jet1(3, &[(0, 0, 1, 1), (1, 0, 1, 1)]);
        let expect = jet1(3, &[(1, 0, 1, 1), (2, 0, -1, 2), (3, 0, 1, 3)]);
        assert_eq!(f.log_ratio().unwrap(), expect);
    }

    #[test]
    fn log_ratio_of_constant_is_zero() {
        let c = jet1(3, &[(0, 0, 9, 2)]);
        assert!(c.log_ratio().unwrap().is_zero());
    }

    #[test]
    fn log_derivative_identity() {
        // ∂ log_ratio(a) = ∂a · inv(a), both variables
        let a = jet1(5, &[(0, 0, 2, 1), (1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 3, 1), (2, 1, -1, 2)]);
        let lr = a.log_ratio().unwrap();
        for var in 0..2 {
            let lhs = lr.diff(var).unwrap();
            let rhs = a.diff(var).unwrap().checked_mul(&a.inv().unwrap()).unwrap();
            assert_eq!(lhs.residual(&rhs).unwrap().is_zero(), true, "var {}", var);
        }
    }

    #[test]
    fn mixed_log_hessian_matches_closed_form() {
        // ψ = zz̄ − 1 at z = 2: ∂∂̄ log reaches (1/ψ)(1 − (1/ψ)·zz̄) = (1/3)(1 − 4/3) = −1/9
        let psi = jet1(6, &[(0, 0, 3, 1), (1, 0, 2, 1), (0, 1, 2, 1), (1, 1, 1, 1)]);
        let pot = psi.log_ratio().unwrap();
        let g = pot.diff_z(0).unwrap().diff_zbar(0).unwrap();
        assert_eq!(g.constant_term(), GaussianRational::from_ratio(-1, 9));
    }

    #[test]
    fn base_point_mismatch_is_error() {
        let a = Jet::one(1, &base1(), 2);
        let b = Jet::one(1, &[GaussianRational::one()], 2);
        assert!(matches!(a.checked_mul(&b), Err(Error::BasePointMismatch)));
    }

    #[test]
    fn conjugation_and_reality() {
        let real = jet1(3, &[(0, 0, 3, 1), (1, 0, 2, 1), (0, 1, 2, 1), (1, 1, 1, 1)]);
        assert!(real.is_real());
        let not_real = jet1(3, &[(1, 0, 1, 1)]);
        assert!(!not_real.is_real());
        assert_eq!(not_real.conj().conj(), not_real);
    }

    #[test]
    fn real_jets_closed_under_product() {
        let a = jet1(3, &[(0, 0, 1, 1), (1, 0, 2, 1), (0, 1, 2, 1)]);
        let b = jet1(3, &[(0, 0, -1, 2), (1, 1, 5, 1)]);
        assert!(a.is_real() && b.is_real());
        assert!(a.checked_mul(&b).unwrap().is_real());
        assert!(a.checked_add(&b).unwrap().is_real());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_jet() -> impl Strategy<Value = Jet> {
            proptest::collection::vec(
                ((0u32..=2, 0u32..=2), (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)),
                1..6,
            )
            .prop_map(|terms| {
                Jet::from_terms(
                    1,
                    &[GaussianRational::zero()],
                    4,
                    terms.into_iter().map(|((a, b), (rn, rd, im, id))| {
                        (
                            MultiIndex(vec![a, b]),
                            GaussianRational::from_parts(rn, rd, im, id),
                        )
                    }),
                )
            })
        }

        fn arb_real_jet() -> impl Strategy<Value = Jet> {
            arb_jet().prop_map(|j| {
                let half = GaussianRational::from_ratio(1, 2);
                j.scale(&half).checked_add(&j.conj().scale(&half)).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn mul_associative(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
                let lhs = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
                let rhs = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn mul_distributes(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
                let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
                let rhs = a
                    .checked_mul(&b)
                    .unwrap()
                    .checked_add(&a.checked_mul(&c).unwrap())
                    .unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn reality_preserved(a in arb_real_jet(), b in arb_real_jet()) {
                prop_assert!(a.checked_mul(&b).unwrap().is_real());
                prop_assert!(a.checked_add(&b).unwrap().is_real());
            }

            #[test]
            fn inverse_is_two_sided(a in arb_jet()) {
                prop_assume!(!a.constant_term().is_zero());
                let inv = a.inv().unwrap();
                let one = Jet::one(1, &[GaussianRational::zero()], a.order());
                prop_assert_eq!(a.checked_mul(&inv).unwrap(), one.clone());
                prop_assert_eq!(inv.checked_mul(&a).unwrap(), one);
            }

            #[test]
            fn log_derivative_identity_generic(a in arb_jet()) {
                prop_assume!(!a.constant_term().is_zero());
                let lr = a.log_ratio().unwrap();
                for var in 0..2 {
                    let lhs = lr.diff(var).unwrap();
                    let rhs = a.diff(var).unwrap().checked_mul(&a.inv().unwrap()).unwrap();
                    prop_assert!(lhs.residual(&rhs).unwrap().is_zero());
                }
            }

            #[test]
            fn product_order_is_min(a in arb_jet(), b in arb_jet()) {
                let t = b.truncated(2);
                prop_assert_eq!(a.checked_mul(&t).unwrap().order(), 2);
            }
        }
    }
}
