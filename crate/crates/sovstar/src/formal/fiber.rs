//! Functions on the lifted chart U × ℂ^×: finite sums Σ u^a ū^b f_{ab}(z, z̄)
//! with exact Laurent-monomial fiber dependence and jet coefficients.
//!
//! Fiber derivatives are exact (no precision cost): ∂/∂u maps the grade
//! (a,b) component to a·(a−1,b), and symmetrically for ū.

use num::BigRational;
use std::collections::BTreeMap;
use std::fmt;

use super::jet::Jet;
use super::scalar::GaussianRational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberGradedJet {
    dim: usize,
    base: Vec<GaussianRational>,
    order: u32,
    grades: BTreeMap<(i64, i64), Jet>,
}

impl FiberGradedJet {
    pub fn zero(dim: usize, base: &[GaussianRational], order: u32) -> Self {
        FiberGradedJet {
            dim,
            base: base.to_vec(),
            order,
            grades: BTreeMap::new(),
        }
    }

    /// Lift of a base-chart jet: grade (0,0).
    pub fn from_jet(jet: Jet) -> Self {
        Self::monomial(0, 0, jet)
    }

    /// u^a ū^b · jet.
    pub fn monomial(a: i64, b: i64, jet: Jet) -> Self {
        let mut out = FiberGradedJet::zero(jet.dim(), jet.base(), jet.order());
        if !jet.is_zero() {
            out.grades.insert((a, b), jet);
        }
        out
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

    pub fn is_zero(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grades(&self) -> impl Iterator<Item = (&(i64, i64), &Jet)> {
        self.grades.iter()
    }

    pub fn grade(&self, a: i64, b: i64) -> Jet {
        self.grades
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| Jet::zero(self.dim, &self.base, self.order))
    }

    /// The grade set actually present.
    pub fn support(&self) -> Vec<(i64, i64)> {
        self.grades.keys().cloned().collect()
    }

    fn check_compatible(&self, other: &FiberGradedJet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch);
        }
        if self.base != other.base {
            return Err(Error::BasePointMismatch);
        }
        Ok(())
    }

    fn normalized(mut self) -> Self {
        self.grades.retain(|_, j| !j.is_zero());
        self
    }

    pub fn checked_add(&self, other: &FiberGradedJet) -> Result<FiberGradedJet> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = FiberGradedJet::zero(self.dim, &self.base, order);
        for (g, j) in self.grades.iter().chain(other.grades.iter()) {
            let j = j.truncated(order);
            let entry = out
                .grades
                .entry(*g)
                .or_insert_with(|| Jet::zero(self.dim, &self.base, order));
            *entry = entry.checked_add(&j)?;
        }
        Ok(out.normalized())
    }

    pub fn checked_sub(&self, other: &FiberGradedJet) -> Result<FiberGradedJet> {
        self.checked_add(&other.neg())
    }

    /// Grade-wise product: (u^aū^b f)(u^cū^d g) = u^{a+c}ū^{b+d} fg.
    pub fn checked_mul(&self, other: &FiberGradedJet) -> Result<FiberGradedJet> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = FiberGradedJet::zero(self.dim, &self.base, order);
        for ((a, b), ja) in &self.grades {
            for ((c, d), jb) in &other.grades {
                let prod = ja.truncated(order).checked_mul(&jb.truncated(order))?;
                if prod.is_zero() {
                    continue;
                }
                let key = (a + c, b + d);
                let entry = out
                    .grades
                    .entry(key)
                    .or_insert_with(|| Jet::zero(self.dim, &self.base, order));
                *entry = entry.checked_add(&prod)?;
            }
        }
        Ok(out.normalized())
    }

    pub fn neg(&self) -> FiberGradedJet {
        let mut out = self.clone();
        for j in out.grades.values_mut() {
            *j = j.neg();
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> FiberGradedJet {
        if c.is_zero() {
            return FiberGradedJet::zero(self.dim, &self.base, self.order);
        }
        let mut out = self.clone();
        for j in out.grades.values_mut() {
            *j = j.scale(c);
        }
        out
    }

    /// ∂/∂z^k or ∂/∂z̄^l grade-wise (indices as in Jet::diff). Costs one jet order.
    pub fn diff_base(&self, var: usize) -> Result<FiberGradedJet> {
        if self.order == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let mut out = FiberGradedJet::zero(self.dim, &self.base, self.order - 1);
        for (g, j) in &self.grades {
            let d = j.diff(var)?;
            if !d.is_zero() {
                out.grades.insert(*g, d);
            }
        }
        Ok(out)
    }

    /// ∂/∂u: grade (a,b) ↦ a·(a−1,b). Exact in the fiber.
    pub fn diff_u(&self) -> FiberGradedJet {
        let mut out = FiberGradedJet::zero(self.dim, &self.base, self.order);
        for ((a, b), j) in &self.grades {
            if *a == 0 {
                continue;
            }
            let scaled = j.scale_rat(&BigRational::from_integer((*a).into()));
            out.grades.insert((a - 1, *b), scaled);
        }
        out.normalized()
    }

    /// ∂/∂ū: grade (a,b) ↦ b·(a,b−1).
    pub fn diff_ubar(&self) -> FiberGradedJet {
        let mut out = FiberGradedJet::zero(self.dim, &self.base, self.order);
        for ((a, b), j) in &self.grades {
            if *b == 0 {
                continue;
            }
            let scaled = j.scale_rat(&BigRational::from_integer((*b).into()));
            out.grades.insert((*a, b - 1), scaled);
        }
        out.normalized()
    }

    /// u ∂/∂u, the fiber Euler operator: multiplies grade (a,b) by a.
    pub fn euler_u(&self) -> FiberGradedJet {
        let mut out = FiberGradedJet::zero(self.dim, &self.base, self.order);
        for ((a, b), j) in &self.grades {
            if *a == 0 {
                continue;
            }
            out.grades
                .insert((*a, *b), j.scale_rat(&BigRational::from_integer((*a).into())));
        }
        out.normalized()
    }

    /// ū ∂/∂ū: multiplies grade (a,b) by b.
    pub fn euler_ubar(&self) -> FiberGradedJet {
        let mut out = FiberGradedJet::zero(self.dim, &self.base, self.order);
        for ((a, b), j) in &self.grades {
            if *b == 0 {
                continue;
            }
            out.grades
                .insert((*a, *b), j.scale_rat(&BigRational::from_integer((*b).into())));
        }
        out.normalized()
    }

    /// Shift every grade by (da, db), i.e. multiply by u^{da} ū^{db}.
    pub fn grade_shift(&self, da: i64, db: i64) -> FiberGradedJet {
        let mut out = FiberGradedJet::zero(self.dim, &self.base, self.order);
        for ((a, b), j) in &self.grades {
            out.grades.insert((a + da, b + db), j.clone());
        }
        out
    }

    pub fn residual(&self, other: &FiberGradedJet) -> Result<FiberGradedJet> {
        self.checked_sub(other)
    }

    pub fn truncated(&self, order: u32) -> FiberGradedJet {
        let order = order.min(self.order);
        let mut out = FiberGradedJet::zero(self.dim, &self.base, order);
        for (g, j) in &self.grades {
            let t = j.truncated(order);
            if !t.is_zero() {
                out.grades.insert(*g, t);
            }
        }
        out
    }

    /// True when no z̄ exponents and no ū grades appear (holomorphic on the lift).
    pub fn is_holomorphic(&self) -> bool {
        self.grades.iter().all(|((_, b), j)| {
            *b == 0 && j.terms().all(|(idx, _)| idx.0[self.dim..].iter().all(|&e| e == 0))
        })
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.grades.iter().all(|((a, _), j)| {
            *a == 0 && j.terms().all(|(idx, _)| idx.0[..self.dim].iter().all(|&e| e == 0))
        })
    }

    pub fn worst_coeff(&self) -> Option<(BigRational, String)> {
        self.grades
            .values()
            .filter_map(|j| j.worst_coeff())
            .max_by(|a, b| a.0.cmp(&b.0))
    }
}

impl fmt::Display for FiberGradedJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), j) in &self.grades {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "u^{} ub^{} · [{}]", a, b, j)?;
        }
        Ok(())
    }
}
