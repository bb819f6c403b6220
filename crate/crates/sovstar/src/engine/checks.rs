//! Residual checks for the star-product axioms: separation of variables and
//! associativity. A residual is reported with its worst coefficient so that
//! failures surface as exact rationals.

use num::BigRational;

use crate::error::Result;
use crate::formal::{FormalSeries, GaussianRational};

use super::carrier::Carrier;
use super::chart::PotentialChart;
use super::star::{star_fn, star_series};

/// Outcome of an identity check: zero or the worst offending coefficient.
#[derive(Debug, Clone)]
pub struct Residual {
    pub is_zero: bool,
    /// (norm², rendered value) of the largest coefficient when nonzero.
    pub worst: Option<(BigRational, String)>,
}

impl Residual {
    pub fn zero() -> Self {
        Residual {
            is_zero: true,
            worst: None,
        }
    }

    pub fn from_carrier<C: Carrier>(c: &C) -> Self {
        let worst = c.worst_coeff();
        Residual {
            is_zero: worst.is_none(),
            worst,
        }
    }

    pub fn from_series<C: Carrier>(s: &FormalSeries<C>) -> Self {
        let worst = s
            .terms()
            .filter_map(|(_, c)| c.worst_coeff())
            .max_by(|a, b| a.0.cmp(&b.0));
        Residual {
            is_zero: worst.is_none(),
            worst,
        }
    }

    pub fn merge(self, other: Residual) -> Residual {
        let worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => Some(if a.0 >= b.0 { a } else { b }),
            (Some(a), None) => Some(a),
            (None, b) => b,
        };
        Residual {
            is_zero: worst.is_none(),
            worst,
        }
    }

    /// "0" when clean, otherwise the worst coefficient as an exact rational.
    pub fn summary(&self) -> String {
        match &self.worst {
            None => "0".into(),
            Some((_, s)) => s.clone(),
        }
    }
}

/// a ⋆ f − a·f and f ⋆ b − f·b for holomorphic a and antiholomorphic b.
/// Both must vanish identically; the left-multiplication operator of a must
/// be plain multiplication.
pub fn check_separation<C: Carrier>(
    a_holo: &C,
    f: &C,
    b_antiholo: &C,
    chart: &PotentialChart<C>,
    r_max: i64,
) -> Result<Residual> {
    debug_assert!(a_holo.depends_only_hol(), "a must be holomorphic");
    debug_assert!(b_antiholo.depends_only_antihol(), "b must be antiholomorphic");
    let left = star_fn(a_holo, f, chart, r_max)?;
    let mut expect = FormalSeries::zero(chart.param(), 0, left.order());
    let prod = a_holo.mul(f);
    if !Carrier::is_zero(&prod) {
        expect.insert_term(0, prod);
    }
    let left_res = Residual::from_series(&left.residual(&expect));

    let right = star_fn(f, b_antiholo, chart, r_max)?;
    let mut expect = FormalSeries::zero(chart.param(), 0, right.order());
    let prod = f.mul(b_antiholo);
    if !Carrier::is_zero(&prod) {
        expect.insert_term(0, prod);
    }
    let right_res = Residual::from_series(&right.residual(&expect));

    Ok(left_res.merge(right_res))
}

/// (f⋆g)⋆k − f⋆(g⋆k) through the target order.
pub fn check_associativity<C: Carrier>(
    f: &C,
    g: &C,
    k: &C,
    chart: &PotentialChart<C>,
    r_max: i64,
) -> Result<Residual> {
    let fg = star_fn(f, g, chart, r_max)?;
    let gk = star_fn(g, k, chart, r_max)?;
    let k_series = FormalSeries::laurent(chart.param(), [(0, k.clone())]);
    let f_series = FormalSeries::laurent(chart.param(), [(0, f.clone())]);
    let left = star_series(&fg, &k_series, chart, r_max)?;
    let right = star_series(&f_series, &gk, chart, r_max)?;
    Ok(Residual::from_series(&left.residual(&right)))
}

/// C₁(f,g) − C₁(g,f) − i{f,g}, with the bracket jet supplied by the caller.
pub fn check_first_order_bracket<C: Carrier>(
    f: &C,
    g: &C,
    bracket: &C,
    chart: &PotentialChart<C>,
) -> Result<Residual> {
    let fg = super::star::c_r(f, g, chart, 1)?;
    let gf = super::star::c_r(g, f, chart, 1)?;
    let anti = fg.sub(&gf);
    let expect = bracket.scale(&GaussianRational::i());
    Ok(Residual::from_carrier(&anti.sub(&expect)))
}
