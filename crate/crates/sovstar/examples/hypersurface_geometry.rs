//! Geometry of the unit sphere and the degenerate cylinder in ℂ²: point
//! classification, the matrix Γ and its inverse, the Levi form, and the
//! kernel criterion for invertibility.
//!
//! Run with: cargo run --example hypersurface_geometry

use sovstar::formal::GaussianRational;
use sovstar::levi::{
    build_gamma, classify_point, gamma_kernel, invert_gamma, levi_form, DefiningFunction,
};

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn main() {
    let sphere = DefiningFunction::sphere(2);
    println!("sphere ψ = {sphere}");
    for x in [vec![q(1), q(0)], vec![q(2), q(0)]] {
        let class = classify_point(&sphere, &x);
        println!("\npoint ({}, {}): {class}", x[0], x[1]);
        let gamma = build_gamma(&sphere, &x, 2);
        println!("  Γ₀ constant part:");
        for row in gamma.gamma0() {
            let rendered: Vec<String> = row.iter().map(|j| j.constant_term().to_string()).collect();
            println!("    [{}]", rendered.join(", "));
        }
        match invert_gamma(&sphere, &gamma) {
            Ok(pi) => {
                println!("  Π₀ = Γ₀⁻¹ constant part:");
                for row in pi.pi0() {
                    let rendered: Vec<String> =
                        row.iter().map(|j| j.constant_term().to_string()).collect();
                    println!("    [{}]", rendered.join(", "));
                }
            }
            Err(e) => println!("  Γ not invertible: {e}"),
        }
        if let Ok(levi) = levi_form(&sphere, &x) {
            println!("  Levi form Q = {:?} (det = {})",
                levi.q.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                levi.det_q());
        }
    }

    let cylinder = DefiningFunction::cylinder(2);
    let x = vec![q(1), q(0)];
    println!("\ncylinder ψ = {cylinder} at ({}, {}):", x[0], x[1]);
    let levi = levi_form(&cylinder, &x).unwrap();
    println!("  Levi form determinant: {} (degenerate)", levi.det_q());
    let kernel = gamma_kernel(&cylinder, &x);
    for v in &kernel {
        let rendered: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        println!("  Γ kernel vector: ({})", rendered.join(", "));
    }
    println!("  Γ inversion: {:?}", invert_gamma(&cylinder, &build_gamma(&cylinder, &x, 2)).err().unwrap());
}
