//! Analytic QFI and QFI-flow expressions at `theta = pi/2`, `eps = +1`.
//!
//! [`FormulaSet::Published`] transcribes the expressions as printed.
//! [`FormulaSet::Rederived`] replaces the ones that disagree with direct
//! numerical evaluation by re-derived forms; every other entry is shared.
//!
//! QFI expressions are evaluated with their denominators cleared, which is
//! algebraically identical and finite at `phi = 0` and at `sin(2wt) = 0`.
//! Flow expressions keep their csc/cot structure and report
//! [`ClosedFormError::Singular`] on the lattice `sin(2wt) = 0`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hamiltonians::HamiltonianKind;
use crate::states::ProbeSpec;
use crate::yang_baxter::Sign;

use super::{Scenario, Subsystem};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("no closed form for {scenario}: {reason}")]
    Unavailable { scenario: String, reason: String },
    #[error("closed form is singular at t = {t}, phi = {phi}")]
    Singular { t: f64, phi: f64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaSet {
    #[default]
    Published,
    Rederived,
}

const LATTICE_TOL: f64 = 1e-12;

fn unavailable(scenario: &Scenario, reason: &str) -> ClosedFormError {
    ClosedFormError::Unavailable {
        scenario: scenario.to_string(),
        reason: reason.to_string(),
    }
}

/// H3 shares every expression with H1. Returns the effective kind and the
/// frequency (B for H1, J for H2).
fn effective(scenario: &Scenario) -> Result<(HamiltonianKind, f64), ClosedFormError> {
    let p = &scenario.params;
    if (p.theta - FRAC_PI_2).abs() > 1e-12 {
        return Err(unavailable(scenario, "closed forms assume theta = pi/2"));
    }
    if p.eps != Sign::Plus {
        return Err(unavailable(scenario, "closed forms assume eps = +1"));
    }
    match scenario.hamiltonian {
        HamiltonianKind::H1 | HamiltonianKind::H3 => Ok((HamiltonianKind::H1, p.b)),
        HamiltonianKind::H2 => Ok((HamiltonianKind::H2, p.j)),
        HamiltonianKind::H0 => Err(unavailable(scenario, "H0 does not depend on phi")),
    }
}

/// `sin^2(wt) [1 - cos^2(phi) cos^2(wt)]`
fn full_profile(w: f64, phi: f64, t: f64) -> f64 {
    let (s, c) = (w * t).sin_cos();
    s * s * (1.0 - phi.cos().powi(2) * c * c)
}

/// `k sin^2 phi s^2 / (a - k cos^2 phi s^2)` with `s = sin(2wt)`; the cleared
/// form of the reduced-state expressions.
fn reduced_profile(k: f64, a: f64, w: f64, phi: f64, t: f64) -> f64 {
    let s2 = (2.0 * w * t).sin().powi(2);
    let num = k * phi.sin().powi(2) * s2;
    if num == 0.0 {
        return 0.0;
    }
    num / (a - k * phi.cos().powi(2) * s2)
}

/// Published closed-form QFI.
pub fn closed_form_qfi(scenario: &Scenario, phi: f64, t: f64) -> Result<f64, ClosedFormError> {
    closed_form_qfi_with(FormulaSet::Published, scenario, phi, t)
}

pub fn closed_form_qfi_with(
    set: FormulaSet,
    scenario: &Scenario,
    phi: f64,
    t: f64,
) -> Result<f64, ClosedFormError> {
    let (kind, w) = effective(scenario)?;
    let rederived = set == FormulaSet::Rederived;
    let value = match (scenario.subsystem, kind, scenario.probe) {
        (_, HamiltonianKind::H2, ProbeSpec::Werner1 { .. }) => 0.0,

        (Subsystem::Full, HamiltonianKind::H1, ProbeSpec::Werner1 { p }) => {
            let pref = if rederived {
                8.0 * p * p / (1.0 + p)
            } else {
                8.0 * p.powi(4) / (1.0 + p)
            };
            pref * full_profile(w, phi, t)
        }
        (Subsystem::Full, HamiltonianKind::H1, ProbeSpec::Werner2 { p }) => {
            2.0 * (1.0 - p) * full_profile(w, phi, t)
        }
        (Subsystem::Full, HamiltonianKind::H2, ProbeSpec::Werner2 { p }) => {
            2.0 * (1.0 - 3.0 * p).powi(2) / (1.0 + p) * full_profile(w, phi, t)
        }
        (Subsystem::Full, HamiltonianKind::H1, ProbeSpec::BellDiagonal { c1, c2, c3 }) => {
            let q = (c1 - c2).powi(2);
            let pref = if rederived {
                guarded_ratio(2.0 * q, 1.0 + c3)
            } else {
                guarded_ratio(q, 2.0 * (1.0 + c3))
            };
            pref * full_profile(w, phi, t)
        }
        (Subsystem::Full, HamiltonianKind::H2, ProbeSpec::BellDiagonal { c1, c2, c3 }) => {
            let pref = if rederived {
                guarded_ratio(2.0 * (c1 + c2).powi(2), 1.0 - c3)
            } else {
                guarded_ratio((c1 - c2).powi(2), 2.0 * (1.0 + c3))
            };
            pref * full_profile(w, phi, t)
        }

        (Subsystem::ReducedA, HamiltonianKind::H1, ProbeSpec::Werner1 { p }) => {
            reduced_profile(p * p, 1.0, w, phi, t)
        }
        (Subsystem::ReducedA, HamiltonianKind::H1, ProbeSpec::Werner2 { p }) => {
            reduced_profile((1.0 - p).powi(2), 4.0, w, phi, t)
        }
        (Subsystem::ReducedA, HamiltonianKind::H2, ProbeSpec::Werner2 { p }) => {
            reduced_profile((1.0 - 3.0 * p).powi(2), 4.0, w, phi, t)
        }
        (Subsystem::ReducedA, HamiltonianKind::H1, ProbeSpec::BellDiagonal { c1, c2, .. }) => {
            reduced_profile((c1 - c2).powi(2), 4.0, w, phi, t)
        }
        (Subsystem::ReducedA, HamiltonianKind::H2, ProbeSpec::BellDiagonal { c1, c2, .. }) => {
            reduced_profile((c1 + c2).powi(2), 4.0, w, phi, t)
        }
        _ => return Err(unavailable(scenario, "no expression for this combination")),
    };
    Ok(value)
}

/// `num / den`, taking 0 when both vanish (the probe bounds force the
/// numerator to zero whenever the denominator does).
fn guarded_ratio(num: f64, den: f64) -> f64 {
    if den.abs() < 1e-15 {
        0.0
    } else {
        num / den
    }
}

/// Published closed-form flow `dF/dt` of the reduced state.
pub fn closed_form_flow(scenario: &Scenario, phi: f64, t: f64) -> Result<f64, ClosedFormError> {
    closed_form_flow_with(FormulaSet::Published, scenario, phi, t)
}

pub fn closed_form_flow_with(
    set: FormulaSet,
    scenario: &Scenario,
    phi: f64,
    t: f64,
) -> Result<f64, ClosedFormError> {
    let (kind, w) = effective(scenario)?;
    if scenario.subsystem == Subsystem::Full {
        return Err(unavailable(scenario, "flows are given for the reduced state only"));
    }
    if let (HamiltonianKind::H2, ProbeSpec::Werner1 { .. }) = (kind, scenario.probe) {
        return Ok(0.0);
    }
    let s = (2.0 * w * t).sin();
    if s.abs() < LATTICE_TOL {
        return Err(ClosedFormError::Singular { t, phi });
    }
    let rederived = set == FormulaSet::Rederived;
    let csc2 = 1.0 / (s * s);
    let cot = (2.0 * w * t).cos() / s;
    let (sin2, cos2) = (phi.sin().powi(2), phi.cos().powi(2));

    let value = match (kind, scenario.probe) {
        (HamiltonianKind::H1, ProbeSpec::Werner1 { p }) => {
            4.0 * w * p * p * sin2 * cot * csc2 / (csc2 - p * p * cos2).powi(2)
        }
        (HamiltonianKind::H1, ProbeSpec::Werner2 { p }) => {
            werner2_flow(rederived, (1.0 - p).powi(2), w, sin2, cos2, s, t)
        }
        (HamiltonianKind::H2, ProbeSpec::Werner2 { p }) => {
            werner2_flow(rederived, (1.0 - 3.0 * p).powi(2), w, sin2, cos2, s, t)
        }
        (HamiltonianKind::H1, ProbeSpec::BellDiagonal { c1, c2, .. }) => {
            let q = (c1 - c2).powi(2);
            let csc_phi2 = 1.0 / sin2;
            let cot_phi2 = cos2 / sin2;
            8.0 * w * q * csc_phi2 * (4.0 * w * t).sin() * csc2 * csc2
                / (4.0 * csc_phi2 * csc2 - q * cot_phi2).powi(2)
        }
        (HamiltonianKind::H2, ProbeSpec::BellDiagonal { c1, c2, .. }) => {
            let q = (c1 + c2).powi(2);
            let csc_phi2 = 1.0 / sin2;
            let cot_phi2 = cos2 / sin2;
            16.0 * w * q * csc_phi2 * cot * csc2 / (4.0 * csc_phi2 * csc2 - q * cot_phi2).powi(2)
        }
        _ => return Err(unavailable(scenario, "no expression for this combination")),
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ClosedFormError::Singular { t, phi })
    }
}

/// Flow of `x sin^2 phi / (4 - x cos^2 phi)` with `x = k sin^2(2wt)`.
fn werner2_flow(rederived: bool, k: f64, w: f64, sin2: f64, cos2: f64, s: f64, t: f64) -> f64 {
    let x = k * s * s;
    let den = (4.0 - x * cos2).powi(2);
    if rederived {
        8.0 * w * sin2 * k * (4.0 * w * t).sin() / den
    } else {
        16.0 * w * sin2 * (x * (k - x)).max(0.0).sqrt() / den
    }
}

/// Human-readable form of the published expression, for reports.
pub fn describe(scenario: &Scenario, set: FormulaSet) -> Option<&'static str> {
    let (kind, _) = effective(scenario).ok()?;
    let rederived = set == FormulaSet::Rederived;
    Some(match (scenario.subsystem, kind, scenario.probe) {
        (_, HamiltonianKind::H2, ProbeSpec::Werner1 { .. }) => "0",
        (Subsystem::Full, HamiltonianKind::H1, ProbeSpec::Werner1 { .. }) => {
            if rederived {
                "8p^2/(1+p) sin^2(Bt)[1-cos^2(phi)cos^2(Bt)]"
            } else {
                "8p^4/(1+p) sin^2(Bt)[1-cos^2(phi)cos^2(Bt)]"
            }
        }
        (Subsystem::Full, HamiltonianKind::H1, ProbeSpec::Werner2 { .. }) => {
            "2(1-p) sin^2(Bt)[1-cos^2(phi)cos^2(Bt)]"
        }
        (Subsystem::Full, HamiltonianKind::H2, ProbeSpec::Werner2 { .. }) => {
            "2(1-3p)^2/(1+p) sin^2(Jt)[1-cos^2(phi)cos^2(Jt)]"
        }
        (Subsystem::Full, HamiltonianKind::H1, ProbeSpec::BellDiagonal { .. }) => {
            if rederived {
                "2(c1-c2)^2/(1+c3) sin^2(Bt)[1-cos^2(phi)cos^2(Bt)]"
            } else {
                "(c1-c2)^2/(2(1+c3)) sin^2(Bt)[1-cos^2(phi)cos^2(Bt)]"
            }
        }
        (Subsystem::Full, HamiltonianKind::H2, ProbeSpec::BellDiagonal { .. }) => {
            if rederived {
                "2(c1+c2)^2/(1-c3) sin^2(Jt)[1-cos^2(phi)cos^2(Jt)]"
            } else {
                "(c1-c2)^2/(2(1+c3)) sin^2(Jt)[1-cos^2(phi)cos^2(Jt)]"
            }
        }
        (Subsystem::ReducedA, HamiltonianKind::H1, ProbeSpec::Werner1 { .. }) => {
            "p^2 sin^2(phi)/(csc^2(2Bt) - p^2 cos^2(phi))"
        }
        (Subsystem::ReducedA, HamiltonianKind::H1, ProbeSpec::Werner2 { .. }) => {
            "x sin^2(phi)/(4 - x cos^2(phi)), x = (1-p)^2 sin^2(2Bt)"
        }
        (Subsystem::ReducedA, HamiltonianKind::H2, ProbeSpec::Werner2 { .. }) => {
            "y sin^2(phi)/(4 - y cos^2(phi)), y = (1-3p)^2 sin^2(2Jt)"
        }
        (Subsystem::ReducedA, HamiltonianKind::H1, ProbeSpec::BellDiagonal { .. }) => {
            "(c1-c2)^2/(4 csc^2(phi) csc^2(2Bt) - (c1-c2)^2 cot^2(phi))"
        }
        (Subsystem::ReducedA, HamiltonianKind::H2, ProbeSpec::BellDiagonal { .. }) => {
            "(c1+c2)^2/(4 csc^2(phi) csc^2(2Jt) - (c1+c2)^2 cot^2(phi))"
        }
        _ => return None,
    })
}
