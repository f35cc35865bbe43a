//! Yang-Baxterized two-qubit Hamiltonians and the quantum Fisher information
//! of Werner-like and Bell-diagonal probes evolved under them.
//!
//! Conventions: basis `|00>, |01>, |10>, |11>` with `|0>` spin up, site 1 is
//! the left Kronecker factor, `Sz = diag(1/2, -1/2)`, `hbar = 1`.

pub mod hamiltonians;
pub mod linalg;
pub mod qfi;
pub mod states;
pub mod tolerances;
pub mod yang_baxter;

pub use hamiltonians::{h0, h_yangbaxterized, HamiltonianKind, ModelError, ModelParams};
pub use linalg::{eigh, partial_trace_b, unitary_exp, ComplexMatrix, LinalgError, SpectralDecomposition, C64};
pub use qfi::{
    closed_form_flow, closed_form_qfi, output_state, qcrb_bound, qfi, FlowTrace, FormulaSet, QfiError,
    QfiMethod, QfiSettings, Scenario, Subsystem,
};
pub use states::{make_probe, ProbeSpec, StateError};
pub use tolerances::{FiniteDifference, Tolerances};
pub use yang_baxter::{r_matrix, Sign, TlKind};
