//! Exact-arithmetic star products with separation of variables for
//! Kähler-Poisson structures that vanish on a Levi nondegenerate
//! hypersurface and are nondegenerate off it.
//!
//! Everything is computed over Gaussian rationals in truncated jets, so each
//! identity (operator relations, star-product axioms, the correspondence
//! between the lifted chart and the base chart, the extension of the product
//! across the hypersurface) is checked as a literal coefficient equality up
//! to a tracked valid order. No identity here holds "up to tolerance".
//!
//! Module layout:
//! - [`formal`]: scalars, jets, fiber-graded jets, formal Laurent series
//! - [`levi`]: defining functions, Γ/Π, point classification, Levi form,
//!   the smoothly extended inverse metric and Poisson bracket
//! - [`engine`]: left-multiplication operators and star products with
//!   separation of variables, generic over the chart carrier
//! - [`lift`]: the lifted chart, κ, τ, formal numbers, D_r extraction and
//!   the extended star product
//! - [`scenario`]: named verification checks, configs, reports, built-ins

pub mod engine;
pub mod error;
pub mod formal;
pub mod levi;
pub mod lift;
pub mod scenario;

pub use error::{Error, Result};
