//! The star product with separation of variables on the sphere chart off the
//! hypersurface, with potential log-ratio ψ: separation, associativity, and
//! the first-order bracket identity, all as exact residuals.
//!
//! Run with: cargo run --example sphere_star_product

use sovstar::engine::{
    check_associativity, check_first_order_bracket, check_separation, star_fn,
};
use sovstar::formal::{GaussianRational, Jet, MultiIndex};
use sovstar::levi::{poisson_bracket, DefiningFunction};
use sovstar::lift::log_chart;

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn main() {
    let psi = DefiningFunction::sphere(1);
    let x = vec![q(2)];
    let order = 12;
    let chart = log_chart(&psi, &x, order).unwrap();

    let f = Jet::from_terms(
        1,
        &x,
        order,
        vec![(MultiIndex(vec![1, 1]), q(1)), (MultiIndex(vec![0, 1]), q(2))],
    );
    let g = Jet::from_terms(
        1,
        &x,
        order,
        vec![(MultiIndex(vec![1, 0]), q(1)), (MultiIndex(vec![0, 2]), q(-1))],
    );
    let k = Jet::from_terms(
        1,
        &x,
        order,
        vec![(MultiIndex(vec![2, 0]), q(1)), (MultiIndex(vec![1, 1]), q(1))],
    );

    let prod = star_fn(&f, &g, &chart, 3).unwrap();
    println!("f ⋆ g coefficient orders:");
    for (r, c) in prod.terms() {
        println!("  ν^{r}: {} stored coefficients, jet order {}", c.terms().count(), c.order());
    }

    let a = Jet::from_terms(1, &x, order, vec![(MultiIndex(vec![2, 0]), q(3))]);
    let b = Jet::from_terms(1, &x, order, vec![(MultiIndex(vec![0, 3]), q(2))]);
    let sep = check_separation(&a, &f, &b, &chart, 3).unwrap();
    println!("separation residual: {}", sep.summary());

    let assoc = check_associativity(&f, &g, &k, &chart, 3).unwrap();
    println!("associativity residual: {}", assoc.summary());

    let bracket = poisson_bracket(&psi, &x, &f, &g).unwrap();
    let c1 = check_first_order_bracket(&f, &g, &bracket, &chart).unwrap();
    println!("C₁ antisymmetrization vs i{{f,g}} residual: {}", c1.summary());
}
