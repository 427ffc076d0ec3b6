//! Truncation control for every hypergeometric-type series in the crate.
//!
//! Each series evaluation carries a certified tail bound: summation stops
//! only once the observed term ratios are in the geometric regime and the
//! resulting geometric tail estimate is below tolerance, and it fails
//! loudly with [`crate::Error::ConvergenceBudget`] otherwise.

use crate::error::{Error, Result};

/// Degree budget and tolerances for series summation.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct SeriesControl {
    /// Hard cap on the total degree summed before giving up.
    pub max_total_degree: usize,
    /// Absolute tolerance for the certified tail.
    pub abs_tol: f64,
    /// Relative tolerance (scaled by the running partial-sum magnitude).
    pub rel_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        // Degree 220 keeps every per-coordinate coefficient representable in
        // f64 and covers |w| up to about 3.5 of the |w| < 4 series domain.
        SeriesControl {
            max_total_degree: 220,
            abs_tol: 1e-12,
            rel_tol: 1e-12,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.max_total_degree == 0 {
            return Err(Error::Config("max_total_degree must be positive".into()));
        }
        for (name, t) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol)] {
            if !(t > 0.0 && t <= 1e-2) {
                return Err(Error::Config(format!("{name} must lie in (0, 1e-2]")));
            }
        }
        Ok(())
    }

    /// Stopping tolerance given the magnitude of the running sum.
    pub fn stop_tol(&self, running_magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * running_magnitude)
    }
}
