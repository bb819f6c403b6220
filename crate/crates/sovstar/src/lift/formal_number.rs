//! The formal numbers N_r(ν) = Π_{s=1}^r ν/(1+νs) = ν^r + …, the conversion
//! factors between grading level and ν-powers.

use crate::error::Result;
use crate::formal::{FormalSeries, GaussianRational, Param};

/// N_r truncated at ν-order `order`; N₀ = 1 (exact).
pub fn formal_number(r: i64, order: i64) -> Result<FormalSeries<GaussianRational>> {
    assert!(r >= 0, "formal numbers are indexed by r ≥ 0");
    let mut acc = FormalSeries::one(Param::Nu);
    for s in 1..=r {
        let denom = FormalSeries::laurent(
            Param::Nu,
            [
                (0, GaussianRational::one()),
                (1, GaussianRational::from_int(s)),
            ],
        );
        let factor = denom.inv(order)?.shift(1);
        acc = acc.mul(&factor);
    }
    Ok(acc.truncated(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn n0_is_one() {
        let n0 = formal_number(0, 5).unwrap();
        assert_eq!(n0.coeff(0), Some(&q(1)));
        assert_eq!(n0.terms().count(), 1);
    }

    #[test]
    fn n1_alternates() {
        // ν/(1+ν) = ν − ν² + ν³ − …
        let n1 = formal_number(1, 4).unwrap();
        assert_eq!(n1.coeff(1), Some(&q(1)));
        assert_eq!(n1.coeff(2), Some(&q(-1)));
        assert_eq!(n1.coeff(3), Some(&q(1)));
        assert_eq!(n1.coeff(4), Some(&q(-1)));
        assert_eq!(n1.valuation(), Some(1));
    }

    #[test]
    fn n2_matches_long_division() {
        // ν²/((1+ν)(1+2ν)) = ν² − 3ν³ + 7ν⁴ − …
        let n2 = formal_number(2, 4).unwrap();
        assert_eq!(n2.coeff(2), Some(&q(1)));
        assert_eq!(n2.coeff(3), Some(&q(-3)));
        assert_eq!(n2.coeff(4), Some(&q(7)));
    }

    #[test]
    fn leading_coefficient_is_one() {
        for r in 0..=4 {
            let n = formal_number(r, 6).unwrap();
            assert_eq!(n.valuation(), Some(r));
            assert_eq!(n.coeff(r), Some(&q(1)), "N_{r}");
        }
    }

    #[test]
    fn product_recursion() {
        // N_{r+1} = N_r · ν/(1+(r+1)ν)
        let n2 = formal_number(2, 5).unwrap();
        let n3 = formal_number(3, 5).unwrap();
        let factor = FormalSeries::laurent(Param::Nu, [(0, q(1)), (1, q(3))])
            .inv(5)
            .unwrap()
            .shift(1);
        let expect = n2.mul(&factor);
        assert!(n3.residual(&expect.truncated(n3.order())).is_zero());
    }
}
