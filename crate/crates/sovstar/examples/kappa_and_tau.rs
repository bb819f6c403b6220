//! κ, the star-inverse of (1/h)ρ off the hypersurface, solved order by order;
//! the formal numbers N_r(ν); and the bijection τ with its triangular inverse.
//!
//! Run with: cargo run --example kappa_and_tau

use sovstar::formal::{FormalSeries, GaussianRational, Param};
use sovstar::levi::DefiningFunction;
use sovstar::lift::{formal_number, kappa, rho_over_h, star_elements, tau, tau_inv, FElement, KappaPowers, LiftedChart};

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn main() {
    let psi = DefiningFunction::sphere(1);
    let x = vec![q(2)];
    let lifted = LiftedChart::new(&psi, &x, 10).unwrap();

    let k = kappa(&lifted, 4).unwrap();
    println!("κ graded terms (constant parts; ψ(2) = 3):");
    for (r, jet) in k.terms() {
        println!("  (h/(uū))^{r} · [{} + …]", jet.constant_term());
    }

    let prod = star_elements(&lifted, &rho_over_h(&lifted), &k, 3).unwrap();
    let one = FElement::one(1, &x, 10);
    println!("((1/h)ρ) ⋆ κ − 1 = 0: {}", prod.residual(&one).unwrap().is_zero());

    for r in 0..=3 {
        println!("N_{r}(ν) = {}", formal_number(r, 5).unwrap());
    }

    let powers = KappaPowers::build(&lifted, -2, 4, 4).unwrap();
    let f = FormalSeries::laurent(
        Param::Nu,
        [(-2, psi.jet_at(&x, 10)), (1, psi.diff_z(0).jet_at(&x, 10))],
    );
    let t = tau(&lifted, &powers, &f).unwrap();
    println!(
        "τ of a ν-Laurent series has graded degrees: {:?}",
        t.terms().map(|(r, _)| *r).collect::<Vec<_>>()
    );
    let back = tau_inv(&lifted, &powers, &t, 4).unwrap();
    println!(
        "τ⁻¹(τ(f)) − f = 0: {}",
        f.truncated(back.order()).residual(&back).is_zero()
    );
}
