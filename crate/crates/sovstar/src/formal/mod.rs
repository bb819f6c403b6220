//! Exact coefficient arithmetic and the truncated formal objects everything
//! else computes in: Gaussian rationals, multi-indices, jets, fiber-graded
//! jets, and one-parameter formal Laurent series.

pub mod fiber;
pub mod jet;
pub mod linalg;
pub mod multiindex;
pub mod scalar;
pub mod series;

pub use fiber::FiberGradedJet;
pub use jet::Jet;
pub use multiindex::MultiIndex;
pub use scalar::GaussianRational;
pub use series::{Coeff, FormalSeries, Param, EXACT};
