//! The hypersurface lift: the chart over U × ℂ^× with potential ρ = ψuū, the
//! graded subalgebra of elements Σ(h/(uū))^r f_r, the central inverse κ, the
//! bijection τ and the formal numbers N_r, and the extended star product
//! Σ N_r ψ^r D_r(f,g) valid across the hypersurface.

pub mod chart;
pub mod extended;
pub mod felement;
pub mod formal_number;
pub mod kappa;
pub mod tau;

pub use chart::{lift_rho, log_chart, LiftedChart};
pub use extended::{
    d_operators, extended_associativity_residual, extended_star, extended_star_series, extract_d,
    ExtendedProduct,
};
pub use felement::FElement;
pub use formal_number::formal_number;
pub use kappa::{kappa, kappa_power, rho_over_h, star_elements, KappaPowers};
pub use tau::{
    generator_applied, invtau_residual, leftmult_residual, pullback_star, pullback_star_series,
    tau, tau_inv, technstat_residual,
};
