//! Numerical tolerances and finite-difference settings shared by the library,
//! the verification suites and the CLI.

use serde::{Deserialize, Serialize};

/// Acceptance thresholds. Every check in the crate reads its threshold from
/// one of these fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Identities that hold by exact construction (TLA relations, unitarity of R).
    pub algebra: f64,
    /// Identities mediated by the eigensolver (conjugation, spectra, exponentials).
    pub eigen: f64,
    /// Pairwise agreement of the independent numeric QFI routes.
    pub routes: f64,
    /// Numeric QFI against closed-form expressions.
    pub closed_form: f64,
    /// Numeric QFI flow against closed-form flows.
    pub flow: f64,
    /// Upper bound for a QFI that is claimed to vanish.
    pub vanishing: f64,
    /// Agreement of the H3 and H1 QFI values.
    pub coincidence: f64,
    /// Eigenvalue pairs with `lambda_i + lambda_j` at or below this are excluded.
    pub support: f64,
    /// QFI values below `-floor` count as negative.
    pub floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebra: 1e-12,
            eigen: 1e-10,
            routes: 1e-6,
            closed_form: 1e-6,
            flow: 1e-5,
            vanishing: 1e-9,
            coincidence: 1e-8,
            support: 1e-10,
            floor: 1e-9,
        }
    }
}

/// Step sizes for the finite-difference derivatives in `phi` and `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteDifference {
    pub phi_step: f64,
    /// One level of Richardson extrapolation (steps `h` and `h/2`).
    pub richardson: bool,
    pub time_step: f64,
}

impl Default for FiniteDifference {
    fn default() -> Self {
        Self {
            phi_step: 1e-5,
            richardson: true,
            time_step: 1e-4,
        }
    }
}
