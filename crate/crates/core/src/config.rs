//! Numeric configuration shared by limits, derivatives, quadrature and checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances, level resolution and refinement schedules.
///
/// The defaults resolve every function in the expression catalog and feed
/// the tolerances used by the verification harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NumericConfig {
    /// Cauchy tolerance for one-sided limits and dense-point derivatives.
    pub limit_tol: f64,
    /// Maximum number of step halvings before a limit is declared non-convergent.
    pub max_refinements: usize,
    /// Initial approach step for limit detection.
    pub h0: f64,
    /// Number of level subdivisions M; fuzzy numbers carry M+1 stacked intervals.
    pub level_resolution: usize,
    /// Absolute tolerance for adaptive quadrature on each continuous piece.
    pub quad_tol: f64,
    /// Maximum recursion depth for adaptive quadrature.
    pub quad_max_depth: usize,
    /// Default pass tolerance for theorem residual checks.
    pub residual_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            limit_tol: 1e-8,
            max_refinements: 40,
            h0: 1e-2,
            level_resolution: 64,
            quad_tol: 1e-9,
            quad_max_depth: 40,
            residual_tol: 1e-8,
        }
    }
}

impl NumericConfig {
    /// Checks that every tolerance is strictly positive and the schedules are non-trivial.
    pub fn validate(&self) -> Result<()> {
        let positives = [
            ("limit_tol", self.limit_tol),
            ("h0", self.h0),
            ("quad_tol", self.quad_tol),
            ("residual_tol", self.residual_tol),
        ];
        for (name, v) in positives {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidConfig(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.max_refinements == 0 {
            return Err(Error::InvalidConfig("max_refinements must be >= 1".into()));
        }
        if self.level_resolution == 0 {
            return Err(Error::InvalidConfig("level_resolution must be >= 1".into()));
        }
        if self.quad_max_depth == 0 {
            return Err(Error::InvalidConfig("quad_max_depth must be >= 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        NumericConfig::default().validate().unwrap();
    }

    #[test]
    fn zero_tolerance_rejected() {
        let cfg = NumericConfig {
            limit_tol: 0.0,
            ..NumericConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
    }
}
