//! The headline: the star product extends across the hypersurface. The
//! bidifferential operators D_r extracted from the lifted chart assemble into
//! Σ N_r(ν)·ψ^r·D_r(f,g), which at points of S multiplies to fg at first
//! order, stays associative, and agrees with the direct product off S.
//!
//! Run with: cargo run --example extension_across_surface

use sovstar::engine::star_fn;
use sovstar::formal::{GaussianRational, MultiIndex};
use sovstar::levi::{defining::poly_jet_at, DefiningFunction};
use sovstar::lift::{
    extended_associativity_residual, extended_star, log_chart, pullback_star, LiftedChart,
};

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn main() {
    let psi = DefiningFunction::sphere(1);

    // ON the hypersurface
    let x = vec![q(1)];
    let lifted = LiftedChart::new(&psi, &x, 12).unwrap();
    let one = GaussianRational::one();
    let z = poly_jet_at(1, vec![(MultiIndex(vec![1, 0]), one.clone())], &x, 12);
    let zbar = z.conj();

    let p = extended_star(&lifted, &zbar, &z, 3).unwrap();
    println!("extended z̄ ⋆ z at a point of S:");
    for (r, d) in &p.d_ops {
        println!("  D_{r}(z̄, z) constant part: {}", d.constant_term());
    }
    println!("  ν^(≥1) coefficients vanish at the point: {}", p.vanishes_at_base());
    let assoc = extended_associativity_residual(
        &lifted,
        &zbar,
        &z,
        &zbar.checked_mul(&z).unwrap(),
        3,
    )
    .unwrap();
    println!("  associativity residual on S: {}", assoc.is_zero());

    // OFF the hypersurface the three routes agree coefficientwise
    let x = vec![q(2)];
    let lifted = LiftedChart::new(&psi, &x, 12).unwrap();
    let chart = log_chart(&psi, &x, 12).unwrap();
    let z = poly_jet_at(1, vec![(MultiIndex(vec![1, 0]), one)], &x, 12);
    let zbar = z.conj();
    let direct = star_fn(&zbar, &z, &chart, 3).unwrap();
    let pulled = pullback_star(&lifted, &zbar, &z, 3).unwrap();
    let extended = extended_star(&lifted, &zbar, &z, 3).unwrap().result;
    println!("\noff S, direct = pullback: {}", direct.residual(&pulled).is_zero());
    println!("off S, direct = extended: {}", direct.residual(&extended).is_zero());
}
