//! Coefficient carriers the engine is generic over. A carrier is a function
//! germ on a chart with named holomorphic and antiholomorphic directions:
//! plain jets on the base chart, fiber-graded jets on the lifted chart
//! (where the extra holomorphic direction is the fiber coordinate).

use num::BigRational;

use crate::error::Result;
use crate::formal::series::Coeff;
use crate::formal::{FiberGradedJet, GaussianRational, Jet};

pub trait Carrier: Coeff {
    /// Number of holomorphic directions of the chart this carrier lives on.
    fn hol_dims(&self) -> usize;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &GaussianRational) -> Self;
    fn scale_rat(&self, c: &BigRational) -> Self;
    fn is_zero(&self) -> bool;

    /// ∂ along the k-th holomorphic direction.
    fn diff_hol(&self, k: usize) -> Result<Self>;
    /// ∂ along the l-th antiholomorphic direction.
    fn diff_antihol(&self, l: usize) -> Result<Self>;

    fn depends_only_hol(&self) -> bool;
    fn depends_only_antihol(&self) -> bool;

    /// Largest-norm coefficient (norm², rendered value); None when zero.
    fn worst_coeff(&self) -> Option<(BigRational, String)>;
}

impl Carrier for Jet {
    fn hol_dims(&self) -> usize {
        self.dim()
    }

    fn zero_like(&self) -> Self {
        Jet::zero(self.dim(), self.base(), self.order())
    }

    fn one_like(&self) -> Self {
        Jet::one(self.dim(), self.base(), self.order())
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("incompatible jets")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("incompatible jets")
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("incompatible jets")
    }

    fn neg(&self) -> Self {
        Jet::neg(self)
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        Jet::scale(self, c)
    }

    fn scale_rat(&self, c: &BigRational) -> Self {
        Jet::scale_rat(self, c)
    }

    fn is_zero(&self) -> bool {
        Jet::is_zero(self)
    }

    fn diff_hol(&self, k: usize) -> Result<Self> {
        self.diff_z(k)
    }

    fn diff_antihol(&self, l: usize) -> Result<Self> {
        self.diff_zbar(l)
    }

    fn depends_only_hol(&self) -> bool {
        let n = self.dim();
        self.terms().all(|(idx, _)| idx.0[n..].iter().all(|&e| e == 0))
    }

    fn depends_only_antihol(&self) -> bool {
        let n = self.dim();
        self.terms().all(|(idx, _)| idx.0[..n].iter().all(|&e| e == 0))
    }

    fn worst_coeff(&self) -> Option<(BigRational, String)> {
        Jet::worst_coeff(self)
    }
}

impl Carrier for FiberGradedJet {
    fn hol_dims(&self) -> usize {
        self.dim() + 1
    }

    fn zero_like(&self) -> Self {
        FiberGradedJet::zero(self.dim(), self.base(), self.order())
    }

    fn one_like(&self) -> Self {
        FiberGradedJet::from_jet(Jet::one(self.dim(), self.base(), self.order()))
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("incompatible fiber jets")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("incompatible fiber jets")
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("incompatible fiber jets")
    }

    fn neg(&self) -> Self {
        FiberGradedJet::neg(self)
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        FiberGradedJet::scale(self, c)
    }

    fn scale_rat(&self, c: &BigRational) -> Self {
        let mut out = self.zero_like();
        for (g, j) in self.grades() {
            out = out
                .checked_add(&FiberGradedJet::monomial(g.0, g.1, j.scale_rat(c)))
                .expect("compatible by construction");
        }
        out
    }

    fn is_zero(&self) -> bool {
        FiberGradedJet::is_zero(self)
    }

    /// Directions 0..n are ∂/∂z^k, direction n is ∂/∂u.
    fn diff_hol(&self, k: usize) -> Result<Self> {
        if k < self.dim() {
            self.diff_base(k)
        } else {
            Ok(self.diff_u())
        }
    }

    /// Directions 0..n are ∂/∂z̄^l, direction n is ∂/∂ū.
    fn diff_antihol(&self, l: usize) -> Result<Self> {
        if l < self.dim() {
            self.diff_base(self.dim() + l)
        } else {
            Ok(self.diff_ubar())
        }
    }

    fn depends_only_hol(&self) -> bool {
        self.is_holomorphic()
    }

    fn depends_only_antihol(&self) -> bool {
        self.is_antiholomorphic()
    }

    fn worst_coeff(&self) -> Option<(BigRational, String)> {
        FiberGradedJet::worst_coeff(self)
    }
}
