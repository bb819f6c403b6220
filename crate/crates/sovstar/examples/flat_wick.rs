//! The flat chart Φ = zz̄: the left-multiplication operator of z̄ has exactly
//! two terms, and the star product reproduces the classical Wick normal
//! ordering, e.g. z̄ ⋆ z = zz̄ + ν.
//!
//! Run with: cargo run --example flat_wick

use sovstar::engine::{left_mult_operator, star_fn, PotentialChart};
use sovstar::formal::{GaussianRational, Jet, MultiIndex};

fn mono(ze: u32, zbe: u32, order: u32) -> Jet {
    Jet::from_terms(
        1,
        &[GaussianRational::zero()],
        order,
        vec![(MultiIndex(vec![ze, zbe]), GaussianRational::one())],
    )
}

fn main() {
    let order = 12;
    let potential = mono(1, 1, order);
    let chart = PotentialChart::from_potential_jet(potential).unwrap();

    let zbar = mono(0, 1, order);
    let op = left_mult_operator(&zbar, &chart, 3).unwrap();
    println!("left multiplication by z̄, level by level:");
    for (r, terms) in op.terms() {
        for (gamma, coeff) in terms {
            println!("  ν^{r} · ∂^{gamma} with coefficient {coeff}");
        }
    }

    let prod = star_fn(&zbar, &mono(1, 0, order), &chart, 4).unwrap();
    println!("\nz̄ ⋆ z = {prod}");

    let prod = star_fn(&mono(0, 2, order), &mono(2, 0, order), &chart, 4).unwrap();
    println!("z̄² ⋆ z² = {prod}");
}
