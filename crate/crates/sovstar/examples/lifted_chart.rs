//! The lifted chart over U × ℂ^× with potential ρ = ψuū. The metric is Γ,
//! the product exists on the hypersurface itself, the left multiplication by
//! (1/h)ρ is (1/h)ρ + u∂/∂u, and δ = h∂_h + ū∂_ū differentiates the product.
//!
//! Run with: cargo run --example lifted_chart

use sovstar::engine::{delta_leibniz_residual, left_mult_operator, lifted_delta, star_fn};
use sovstar::formal::{FiberGradedJet, FormalSeries, GaussianRational, Jet, Param};
use sovstar::levi::DefiningFunction;
use sovstar::lift::LiftedChart;

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn main() {
    let psi = DefiningFunction::sphere(1);
    // a point ON the hypersurface: the lifted product is still defined
    let x = vec![q(1)];
    let lifted = LiftedChart::new(&psi, &x, 10).unwrap();

    let rho = lifted.chart().potential().clone();
    let op = left_mult_operator(&rho, lifted.chart(), 3).unwrap();
    println!("left multiplication by ρ (so by (1/h)ρ after an h-shift):");
    for (r, terms) in op.terms() {
        for (gamma, _) in terms {
            println!("  h^{r} · ∂^{gamma}");
        }
    }

    // ū ⋆ u on the lift: the first-order coefficient is the corner of Π
    let u = FiberGradedJet::monomial(1, 0, Jet::one(1, &x, 10));
    let ubar = FiberGradedJet::monomial(0, 1, Jet::one(1, &x, 10));
    let prod = star_fn(&ubar, &u, lifted.chart(), 2).unwrap();
    println!("\nū ⋆ u has h-coefficients at degrees: {:?}",
        prod.terms().map(|(d, _)| *d).collect::<Vec<_>>());

    // graded elements are δ-invariant
    let f = psi.jet_at(&x, 10);
    let graded = FormalSeries::laurent(Param::H, [(2, FiberGradedJet::monomial(-2, -2, f))]);
    println!("δ of a graded element is zero: {}", lifted_delta(&graded).is_zero());

    // δ is a derivation of the lifted product
    let a = FormalSeries::laurent(Param::H, [(0, ubar.clone()), (1, u.clone())]);
    let b = FormalSeries::laurent(Param::H, [(-1, u)]);
    let res = delta_leibniz_residual(&a, &b, lifted.chart(), 2).unwrap();
    println!("Leibniz residual of δ: {}", res.summary());
}
