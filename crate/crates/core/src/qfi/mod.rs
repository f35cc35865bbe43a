//! Quantum Fisher information of the evolved probes with respect to the
//! Yang-Baxterization phase `phi`.
//!
//! Three independent numeric routes are provided ([`qfi_sld_pair`],
//! [`qfi_spectral`], [`qfi_generator`]) together with the closed-form
//! expressions in [`closed_form`] and the time derivative of the QFI in
//! [`flow`].

pub mod closed_form;
pub mod flow;
mod routes;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hamiltonians::{h_yangbaxterized, HamiltonianKind, ModelError, ModelParams};
use crate::linalg::{eigh, partial_trace_b, unitary_exp, ComplexMatrix, LinalgError};
use crate::states::{make_probe, ProbeSpec, StateError};
use crate::tolerances::{FiniteDifference, Tolerances};

pub use closed_form::{
    closed_form_flow, closed_form_flow_with, closed_form_qfi, closed_form_qfi_with,
    ClosedFormError, FormulaSet,
};
pub use flow::{
    classify_markovianity, qfi_flow_numeric, FlowError, FlowTrace, MarkovWindow, Regime,
};
pub use routes::{
    qfi_generator, qfi_sld_pair, qfi_spectral, SldQfi, SpectralQfi, SpectralStencil,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QfiError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error("the generator route needs a unitary family; {0} is a reduced-state scenario")]
    NotUnitaryFamily(String),
    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("unknown subsystem {0:?} (expected full or reduced)")]
    UnknownSubsystem(String),
}

/// Which part of the evolved two-qubit state is inspected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    Full,
    /// Qubit A after tracing out qubit B.
    ReducedA,
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::Full => "full",
            Subsystem::ReducedA => "reduced",
        })
    }
}

impl FromStr for Subsystem {
    type Err = QfiError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(Subsystem::Full),
            "reduced" | "reduced_a" | "reduced-a" => Ok(Subsystem::ReducedA),
            other => Err(QfiError::UnknownSubsystem(other.to_string())),
        }
    }
}

/// Hamiltonian, probe and subsystem, plus the model parameters. The phase
/// stored in `params.phi` is ignored by the functions that take `phi`
/// explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub hamiltonian: HamiltonianKind,
    pub probe: ProbeSpec,
    pub subsystem: Subsystem,
    pub params: ModelParams,
}

impl Scenario {
    pub fn new(
        hamiltonian: HamiltonianKind,
        probe: ProbeSpec,
        subsystem: Subsystem,
        params: ModelParams,
    ) -> Self {
        Self {
            hamiltonian,
            probe,
            subsystem,
            params,
        }
    }

    pub fn with_probe(mut self, probe: ProbeSpec) -> Self {
        self.probe = probe;
        self
    }

    pub fn with_hamiltonian(mut self, hamiltonian: HamiltonianKind) -> Self {
        self.hamiltonian = hamiltonian;
        self
    }

    pub fn with_subsystem(mut self, subsystem: Subsystem) -> Self {
        self.subsystem = subsystem;
        self
    }

    pub fn hamiltonian_at(&self, phi: f64) -> ComplexMatrix {
        h_yangbaxterized(self.hamiltonian, &self.params.with_phi(phi))
    }

    pub fn propagator(&self, phi: f64, t: f64) -> Result<ComplexMatrix, QfiError> {
        Ok(unitary_exp(&self.hamiltonian_at(phi), t)?)
    }

    pub fn validate(&self) -> Result<(), QfiError> {
        self.params.validate()?;
        self.probe.validate()?;
        Ok(())
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} x {} ({})",
            self.hamiltonian, self.probe, self.subsystem
        )
    }
}

/// `sigma = e^{-itH} rho e^{itH}`.
pub fn evolve(probe: &ComplexMatrix, h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, QfiError> {
    let u = unitary_exp(h, t)?;
    let out = (&u * probe).compose(&u.adjoint())?;
    Ok(out.hermitian_part())
}

/// Evolved probe at phase `phi` and time `t`, reduced to qubit A if asked.
pub fn output_state(scenario: &Scenario, phi: f64, t: f64) -> Result<ComplexMatrix, QfiError> {
    let rho = make_probe(&scenario.probe)?;
    let sigma = evolve(&rho, &scenario.hamiltonian_at(phi), t)?;
    Ok(match scenario.subsystem {
        Subsystem::Full => sigma,
        Subsystem::ReducedA => partial_trace_b(&sigma)?,
    })
}

/// Central difference `d f / d phi` of a matrix-valued function, optionally
/// with one Richardson level `(4 D(h/2) - D(h)) / 3`.
pub(crate) fn central_difference<F>(
    f: F,
    phi: f64,
    h: f64,
    richardson: bool,
) -> Result<ComplexMatrix, QfiError>
where
    F: Fn(f64) -> Result<ComplexMatrix, QfiError>,
{
    if !(h > 0.0) {
        return Err(QfiError::InvalidStep(h));
    }
    let diff = |step: f64| -> Result<ComplexMatrix, QfiError> {
        Ok((&f(phi + step)? - &f(phi - step)?).scale_real(1.0 / (2.0 * step)))
    };
    let coarse = diff(h)?;
    if !richardson {
        return Ok(coarse);
    }
    let fine = diff(h / 2.0)?;
    Ok((&fine.scale_real(4.0) - &coarse).scale_real(1.0 / 3.0))
}

/// `d rho / d phi` of the (possibly reduced) output state.
pub fn d_rho_d_phi(
    scenario: &Scenario,
    phi: f64,
    t: f64,
    fd: &FiniteDifference,
) -> Result<ComplexMatrix, QfiError> {
    let d = central_difference(
        |x| output_state(scenario, x, t),
        phi,
        fd.phi_step,
        fd.richardson,
    )?;
    Ok(d.hermitian_part())
}

/// Numeric settings shared by the QFI routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QfiSettings {
    pub fd: FiniteDifference,
    pub support_tol: f64,
}

impl Default for QfiSettings {
    fn default() -> Self {
        Self {
            fd: FiniteDifference::default(),
            support_tol: Tolerances::default().support,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QfiMethod {
    SldPair,
    Spectral,
    Generator,
    ClosedForm,
}

impl fmt::Display for QfiMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QfiMethod::SldPair => "sld_pair",
            QfiMethod::Spectral => "spectral",
            QfiMethod::Generator => "generator",
            QfiMethod::ClosedForm => "closed_form",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QfiSample {
    pub t: f64,
    pub phi: f64,
    pub value: f64,
    pub method: QfiMethod,
}

/// QFI of `scenario` at `(phi, t)` by the chosen route. The closed form uses
/// the published expressions.
pub fn qfi(
    scenario: &Scenario,
    phi: f64,
    t: f64,
    method: QfiMethod,
    settings: &QfiSettings,
) -> Result<QfiSample, QfiError> {
    let value = match method {
        QfiMethod::SldPair => {
            let rho = output_state(scenario, phi, t)?;
            let drho = d_rho_d_phi(scenario, phi, t, &settings.fd)?;
            qfi_sld_pair(&rho, &drho, settings.support_tol)?.value
        }
        QfiMethod::Spectral => {
            let stencil = SpectralStencil::build(scenario, phi, t, settings.fd.phi_step)?;
            qfi_spectral(&stencil, settings.support_tol)?.value
        }
        QfiMethod::Generator => {
            if scenario.subsystem != Subsystem::Full {
                return Err(QfiError::NotUnitaryFamily(scenario.to_string()));
            }
            let probe = eigh(&make_probe(&scenario.probe)?)?;
            let u = scenario.propagator(phi, t)?;
            let du = central_difference(
                |x| scenario.propagator(x, t),
                phi,
                settings.fd.phi_step,
                settings.fd.richardson,
            )?;
            qfi_generator(&probe, &u, &du, settings.support_tol)?
        }
        QfiMethod::ClosedForm => closed_form_qfi(scenario, phi, t)?,
    };
    Ok(QfiSample {
        t,
        phi,
        value,
        method,
    })
}

/// Quantum Cramer-Rao bound `1 / (N F)`; infinite when `F <= 0`.
pub fn qcrb_bound(qfi: f64, repetitions: u64) -> f64 {
    if qfi <= 0.0 || repetitions == 0 {
        f64::INFINITY
    } else {
        1.0 / (repetitions as f64 * qfi)
    }
}
