//! Executable verification: every closed-form identity is bound to a
//! pass/fail check with an explicit tolerance, and the branching theorems
//! are probed by ray-limit extrapolation with negative controls.

mod jump;
mod raylimit;
mod suites;

pub use jump::boundary_jump_test;
pub use raylimit::{ray_limit_test, RayLimitReport, RayTarget};
pub use suites::{run_all_suites, run_identity_suite, SUITE_IDS};

/// One identity check: residual against tolerance over a sample set.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub samples: u64,
    pub runtime_ms: u64,
}

impl CheckReport {
    pub fn from_run(
        check_id: &str,
        tolerance: f64,
        samples: u64,
        max_residual: f64,
        started: std::time::Instant,
    ) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            samples,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }
}
