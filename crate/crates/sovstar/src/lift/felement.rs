//! Graded elements of the lifted algebra: finite sums Σ_r (h/(uū))^r f_r
//! with base-chart jet coefficients. As lifted series, the h^r coefficient
//! carries fiber grade exactly (−r,−r), which makes membership a structural
//! check rather than an analytic one.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formal::{FiberGradedJet, FormalSeries, GaussianRational, Jet, Param, EXACT};

#[derive(Debug, Clone, PartialEq)]
pub struct FElement {
    dim: usize,
    base: Vec<GaussianRational>,
    jet_order: u32,
    min_deg: i64,
    order: i64,
    terms: BTreeMap<i64, Jet>,
}

impl FElement {
    pub fn zero(dim: usize, base: &[GaussianRational], jet_order: u32, min_deg: i64, order: i64) -> Self {
        FElement {
            dim,
            base: base.to_vec(),
            jet_order,
            min_deg,
            order: order.min(EXACT),
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit (term r = 0 equal to 1), exact.
    pub fn one(dim: usize, base: &[GaussianRational], jet_order: u32) -> Self {
        let mut e = Self::zero(dim, base, jet_order, 0, EXACT);
        e.terms.insert(0, Jet::one(dim, base, jet_order));
        e
    }

    /// A plain function, placed at grading level 0. Exact as an h-series.
    pub fn from_jet(f: Jet) -> Self {
        let mut e = Self::zero(f.dim(), f.base(), f.order(), 0, EXACT);
        if !f.is_zero() {
            e.terms.insert(0, f);
        }
        e
    }

    /// Single term (h/(uū))^r · f. Exact as an h-series.
    pub fn single(r: i64, f: Jet) -> Self {
        let mut e = Self::zero(f.dim(), f.base(), f.order(), r.min(0), EXACT);
        e.min_deg = r;
        if !f.is_zero() {
            e.terms.insert(r, f);
        }
        e
    }

    pub fn from_terms(
        dim: usize,
        base: &[GaussianRational],
        jet_order: u32,
        min_deg: i64,
        order: i64,
        terms: impl IntoIterator<Item = (i64, Jet)>,
    ) -> Self {
        let mut e = Self::zero(dim, base, jet_order, min_deg, order);
        for (r, f) in terms {
            assert!(r >= min_deg && r <= e.order, "term degree out of range");
            if !f.is_zero() {
                e.terms.insert(r, f);
            }
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &[GaussianRational] {
        &self.base
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn term(&self, r: i64) -> Option<&Jet> {
        self.terms.get(&r)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Jet)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The underlying lifted series: h^r ↦ u^{-r}ū^{-r} f_r.
    pub fn to_series(&self) -> FormalSeries<FiberGradedJet> {
        let mut out = FormalSeries::zero(Param::H, self.min_deg, self.order);
        for (r, f) in &self.terms {
            out.insert_term(*r, FiberGradedJet::monomial(-r, -r, f.clone()));
        }
        out
    }

    /// Reads a lifted series back as a graded element; any coefficient with a
    /// grade other than (−r,−r) at degree r is a structural violation.
    pub fn from_series(s: &FormalSeries<FiberGradedJet>) -> Result<Self> {
        assert_eq!(s.param(), Param::H);
        let mut dim = None;
        let mut base: Option<Vec<GaussianRational>> = None;
        let mut jet_order = u32::MAX;
        let mut terms = BTreeMap::new();
        for (r, c) in s.terms() {
            dim = Some(c.dim());
            base = Some(c.base().to_vec());
            jet_order = jet_order.min(c.order());
            let support = c.support();
            for (a, b) in &support {
                if *a != -r || *b != -r {
                    return Err(Error::FiberGradeViolation(format!(
                        "degree h^{r} carries grade ({a},{b}); expected ({},{})",
                        -r, -r
                    )));
                }
            }
            let jet = c.grade(-r, -r);
            if !jet.is_zero() {
                terms.insert(*r, jet);
            }
        }
        let (Some(dim), Some(base)) = (dim, base) else {
            // an all-zero series carries no carrier context
            return Ok(FElement {
                dim: 0,
                base: Vec::new(),
                jet_order: 0,
                min_deg: s.min_deg(),
                order: s.order(),
                terms: BTreeMap::new(),
            });
        };
        Ok(FElement {
            dim,
            base,
            jet_order,
            min_deg: s.min_deg(),
            order: s.order(),
            terms,
        })
    }

    /// Pointwise product with a plain function: multiplies every f_r.
    pub fn mul_fn(&self, f: &Jet) -> Result<FElement> {
        let mut out = self.clone();
        out.terms = BTreeMap::new();
        for (r, t) in &self.terms {
            let prod = t.checked_mul(f)?;
            if !prod.is_zero() {
                out.terms.insert(*r, prod);
            }
        }
        out.jet_order = out.jet_order.min(f.order());
        Ok(out)
    }

    pub fn add(&self, other: &FElement) -> Result<FElement> {
        let order = self.order.min(other.order);
        let min_deg = self.min_deg.min(other.min_deg);
        let mut out = FElement::zero(self.dim, &self.base, self.jet_order.min(other.jet_order), min_deg, order);
        for (r, t) in self.terms.iter().chain(other.terms.iter()) {
            if *r > order {
                continue;
            }
            let cur = out.terms.remove(r);
            let next = match cur {
                Some(prev) => prev.checked_add(t)?,
                None => t.clone(),
            };
            if !next.is_zero() {
                out.terms.insert(*r, next);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FElement) -> Result<FElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FElement {
        let mut out = self.clone();
        for t in out.terms.values_mut() {
            *t = t.neg();
        }
        out
    }

    pub fn residual(&self, other: &FElement) -> Result<FElement> {
        self.sub(other)
    }
}
