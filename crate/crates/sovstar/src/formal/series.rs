//! Truncated formal Laurent series in one parameter (h or ν) with coefficients
//! in an arbitrary exact ring (scalars, jets, fiber-graded jets).
//!
//! `order` is the highest degree whose coefficient is known; `min_deg` is the
//! structural floor below which all coefficients vanish. Laurent polynomials
//! (finitely many exact terms) carry the sentinel order `EXACT`.

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::GaussianRational;
use crate::error::{Error, Result};

/// Sentinel valid order for series that are exact Laurent polynomials.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    /// The lifted-chart formal parameter.
    H,
    /// The base-chart formal parameter.
    Nu,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::H => write!(f, "h"),
            Param::Nu => write!(f, "ν"),
        }
    }
}

/// Coefficient ring interface for series arithmetic.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn c_add(&self, rhs: &Self) -> Self;
    fn c_sub(&self, rhs: &Self) -> Self;
    fn c_mul(&self, rhs: &Self) -> Self;
    fn c_neg(&self) -> Self;
    fn c_is_zero(&self) -> bool;
}

impl Coeff for GaussianRational {
    fn c_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn c_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn c_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Coeff for super::jet::Jet {
    fn c_add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("incompatible jets in series")
    }
    fn c_sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("incompatible jets in series")
    }
    fn c_mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("incompatible jets in series")
    }
    fn c_neg(&self) -> Self {
        self.neg()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Coeff for super::fiber::FiberGradedJet {
    fn c_add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("incompatible fiber jets in series")
    }
    fn c_sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("incompatible fiber jets in series")
    }
    fn c_mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("incompatible fiber jets in series")
    }
    fn c_neg(&self) -> Self {
        self.neg()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
}

fn cap(o: i64) -> i64 {
    o.min(EXACT)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormalSeries<T: Coeff> {
    param: Param,
    min_deg: i64,
    order: i64,
    coeffs: BTreeMap<i64, T>,
}

impl<T: Coeff> FormalSeries<T> {
    pub fn zero(param: Param, min_deg: i64, order: i64) -> Self {
        FormalSeries {
            param,
            min_deg,
            order: cap(order),
            coeffs: BTreeMap::new(),
        }
    }

    /// Exact Laurent polynomial from (degree, coefficient) pairs.
    pub fn laurent(param: Param, terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (d, c) in terms {
            if !c.c_is_zero() {
                coeffs.insert(d, c);
            }
        }
        let min_deg = coeffs.keys().next().cloned().unwrap_or(0);
        FormalSeries {
            param,
            min_deg,
            order: EXACT,
            coeffs,
        }
    }

    pub fn monomial(param: Param, deg: i64, c: T) -> Self {
        Self::laurent(param, [(deg, c)])
    }

    /// Series with declared truncation data; terms above `order` are dropped.
    pub fn from_terms(
        param: Param,
        min_deg: i64,
        order: i64,
        terms: impl IntoIterator<Item = (i64, T)>,
    ) -> Self {
        let order = cap(order);
        let mut s = Self::zero(param, min_deg, order);
        for (d, c) in terms {
            assert!(d >= min_deg, "term below declared min degree");
            if d <= order && !c.c_is_zero() {
                let cur = s.coeffs.remove(&d);
                let next = match cur {
                    Some(prev) => prev.c_add(&c),
                    None => c,
                };
                if !next.c_is_zero() {
                    s.coeffs.insert(d, next);
                }
            }
        }
        s
    }

    pub fn param(&self) -> Param {
        self.param
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT
    }

    pub fn coeff(&self, deg: i64) -> Option<&T> {
        self.coeffs.get(&deg)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &T)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().cloned()
    }

    fn assert_same_param(&self, other: &Self) {
        assert_eq!(self.param, other.param, "formal parameter mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_param(other);
        let order = self.order.min(other.order);
        let min_deg = self.min_deg.min(other.min_deg);
        let mut out = Self::zero(self.param, min_deg, order);
        for (d, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if *d > order {
                continue;
            }
            let cur = out.coeffs.remove(d);
            let next = match cur {
                Some(prev) => prev.c_add(c),
                None => c.clone(),
            };
            if !next.c_is_zero() {
                out.coeffs.insert(*d, next);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.c_neg();
        }
        out
    }

    /// Truncated product. The result is valid through
    /// min(a.order + b.min_deg, b.order + a.min_deg); exact factors do not
    /// limit the result.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_param(other);
        let order = match (self.is_exact(), other.is_exact()) {
            (true, true) => EXACT,
            (true, false) => cap(other.order.saturating_add(self.min_deg)),
            (false, true) => cap(self.order.saturating_add(other.min_deg)),
            (false, false) => cap(self.order.saturating_add(other.min_deg))
                .min(cap(other.order.saturating_add(self.min_deg))),
        };
        let min_deg = self.min_deg + other.min_deg;
        let mut out = Self::zero(self.param, min_deg, order);
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                let d = da + db;
                if d > order {
                    continue;
                }
                let prod = ca.c_mul(cb);
                if prod.c_is_zero() {
                    continue;
                }
                let cur = out.coeffs.remove(&d);
                let next = match cur {
                    Some(prev) => prev.c_add(&prod),
                    None => prod,
                };
                if !next.c_is_zero() {
                    out.coeffs.insert(d, next);
                }
            }
        }
        out
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> FormalSeries<U> {
        let mut out = FormalSeries::zero(self.param, self.min_deg, self.order);
        for (d, c) in &self.coeffs {
            let v = f(c);
            if !v.c_is_zero() {
                out.coeffs.insert(*d, v);
            }
        }
        out
    }

    /// Multiply by the parameter to the given power (degree shift).
    pub fn shift(&self, by: i64) -> Self {
        let order = if self.is_exact() {
            EXACT
        } else {
            cap(self.order.saturating_add(by))
        };
        let mut out = Self::zero(self.param, self.min_deg + by, order);
        for (d, c) in &self.coeffs {
            out.coeffs.insert(d + by, c.clone());
        }
        out
    }

    pub fn truncated(&self, order: i64) -> Self {
        let order = cap(order).min(self.order);
        let mut out = Self::zero(self.param, self.min_deg, order);
        for (d, c) in &self.coeffs {
            if *d <= order {
                out.coeffs.insert(*d, c.clone());
            }
        }
        out
    }

    /// Difference truncated to the common valid order.
    pub fn residual(&self, other: &Self) -> Self {
        self.sub(other)
    }

    /// Reinterpret under another formal parameter name.
    pub fn with_param(&self, param: Param) -> Self {
        let mut out = self.clone();
        out.param = param;
        out
    }

    pub fn insert_term(&mut self, deg: i64, c: T) {
        assert!(deg >= self.min_deg && deg <= self.order);
        if c.c_is_zero() {
            self.coeffs.remove(&deg);
        } else {
            self.coeffs.insert(deg, c);
        }
    }
}

impl FormalSeries<GaussianRational> {
    pub fn one(param: Param) -> Self {
        Self::laurent(param, [(0, GaussianRational::one())])
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|v| v * c)
    }

    /// Multiplicative inverse, truncated at `target_order`. Requires a nonzero
    /// lowest coefficient. A truncated input keeps its relative precision:
    /// the result is valid through min(target_order, order − 2·valuation).
    pub fn inv(&self, target_order: i64) -> Result<Self> {
        assert!(target_order < EXACT / 2, "finite target order required");
        let val = self.valuation().ok_or(Error::NotInvertible)?;
        let lead = self.coeff(val).cloned().ok_or(Error::NotInvertible)?;
        let lead_inv = lead.inv()?;
        let order = cap(target_order).min(cap(self.order.saturating_sub(2 * val)));
        // self = lead·x^val·(1 + t), t of positive relative degree
        let mut t = FormalSeries::zero(self.param, 1, cap(self.order.saturating_sub(val)));
        for (d, c) in &self.coeffs {
            if *d != val {
                t.coeffs.insert(d - val, c * &lead_inv);
            }
        }
        let rel_order = (order + val).max(0);
        let mut sum = FormalSeries::zero(self.param, 0, rel_order);
        sum.coeffs.insert(0, GaussianRational::one());
        let mut power = sum.clone();
        let mut negative = false;
        for _ in 0..rel_order {
            power = power.mul(&t).truncated(rel_order);
            if power.is_zero() {
                break;
            }
            negative = !negative;
            sum = if negative { sum.sub(&power) } else { sum.add(&power) };
        }
        let mut out = sum.scale(&lead_inv).shift(-val);
        out.min_deg = -val;
        out.order = order;
        Ok(out)
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for FormalSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (d, c) in &self.coeffs {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}^{}·({})", self.param, d, c)?;
            }
        }
        if !self.is_exact() {
            write!(f, " + O({}^{})", self.param, self.order + 1)?;
        }
        Ok(())
    }
}
