use thiserror::Error;

/// Errors raised by the model.
///
/// `is_solver_failure` separates "the numbers you gave me are invalid"
/// (validation) from "the numbers are valid but no solution exists /
/// the search failed" (solver), which callers map to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("parameter `{name}` = {value} is invalid: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("covariance is unphysical: v_plus*v_minus - correlation^2 = {product} < 1")]
    UnphysicalCovariance { product: f64 },

    #[error("dark-port target {target_w} W exceeds the achievable maximum {max_w} W")]
    UnreachableDarkPower { target_w: f64, max_w: f64 },

    #[error("operating-point search did not converge within {iterations} iterations")]
    NoConvergence { iterations: u32 },

    #[error("recycling-gain target {target} is above the lossless maximum {max}")]
    GainAboveLosslessMax { target: f64, max: f64 },

    #[error("recycling-gain target {target} is below the minimum {min} reachable by adding loss")]
    GainBelowMinimum { target: f64, min: f64 },

    #[error("no round-trip loss makes the solved operating point reach gain {target}: {reason}")]
    GainNotSelfConsistent { target: f64, reason: &'static str },

    #[error("configurations differ in `{field}`; only the squeeze input may differ")]
    GeometryMismatch { field: &'static str },

    #[error("electronic level {electronic_dbm} dBm is not below the total {total_dbm} dBm")]
    ElectronicAboveTotal { total_dbm: f64, electronic_dbm: f64 },
}

impl ModelError {
    /// True for errors meaning "no solution exists or the search failed",
    /// as opposed to malformed input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            ModelError::UnreachableDarkPower { .. }
                | ModelError::NoConvergence { .. }
                | ModelError::GainAboveLosslessMax { .. }
                | ModelError::GainBelowMinimum { .. }
                | ModelError::GainNotSelfConsistent { .. }
        )
    }
}
