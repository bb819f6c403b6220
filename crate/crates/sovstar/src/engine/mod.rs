//! The deformation-quantization engine: left-multiplication operators built
//! by a triangular recursion from a chart potential, star products with
//! separation of variables, and the identity checks they must satisfy.
//! One code path serves plain jets and fiber-graded jets.

pub mod carrier;
pub mod chart;
pub mod checks;
pub mod delta;
pub mod operator;
pub mod star;

pub use carrier::Carrier;
pub use chart::PotentialChart;
pub use checks::{check_associativity, check_first_order_bracket, check_separation, Residual};
pub use delta::{delta_leibniz_residual, lifted_delta};
pub use operator::{left_mult_operator, FormalOperator};
pub use star::{c_r, star_fn, star_series};
