//! Geometry of a hypersurface defined by a real polynomial ψ: point
//! classification, the lifted matrix Γ and its inverse Π, the Levi form, and
//! the Kähler-Poisson tensor that extends smoothly across the zero set.

pub mod defining;
pub mod gamma;
pub mod levi_form;
pub mod metric;

pub use defining::DefiningFunction;
pub use gamma::{build_gamma, classify_point, gamma_kernel, invert_gamma, GammaData, PiData, PointClass};
pub use levi_form::{kernel_levi_equivalence, levi_form, LeviData};
pub use metric::{
    case1_equivalence, metric_from_potential, poisson_bracket, smooth_inverse_metric,
    sphere_inverse_metric_closed_form,
};
