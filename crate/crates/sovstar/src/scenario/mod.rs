//! Scenario configuration, named verification checks, and reports.

pub mod checks;
pub mod config;
pub mod random;
pub mod report;
pub mod run;

pub use checks::{check_names, CHECKS};
pub use config::{BasePointConfig, ExpectedFailure, MonomialTerm, ScenarioConfig};
pub use report::{CheckRecord, CheckStatus, EngineMeta, Report};
pub use run::{run_scenario, sphere_demo};
