#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use ybqfi::{HamiltonianKind, ModelParams, ProbeSpec, Scenario, Subsystem};

pub const KINDS: [HamiltonianKind; 3] = [HamiltonianKind::H1, HamiltonianKind::H2, HamiltonianKind::H3];
pub const SUBSYSTEMS: [Subsystem; 2] = [Subsystem::Full, Subsystem::ReducedA];
pub const TIMES: [f64; 5] = [0.3, 1.1, 1.9, 2.7, 3.5];
pub const PHASES: [f64; 5] = [0.0, 0.7, FRAC_PI_2, 2.2, PI];

pub fn probe_grid() -> Vec<ProbeSpec> {
    let mut out = Vec::new();
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        out.push(ProbeSpec::Werner1 { p });
        out.push(ProbeSpec::Werner2 { p });
    }
    for (c1, c2, c3) in [
        (0.9, 0.0, 0.1),
        (0.3, -0.4, 0.2),
        (-0.5, -0.2, -0.1),
        (0.0, 0.6, -0.3),
        (0.2, 0.2, 0.2),
    ] {
        out.push(ProbeSpec::BellDiagonal { c1, c2, c3 });
    }
    out
}

pub fn params() -> ModelParams {
    ModelParams::new(0.8, 0.55, 0.35)
}

pub fn scenario(kind: HamiltonianKind, probe: ProbeSpec, subsystem: Subsystem) -> Scenario {
    Scenario::new(kind, probe, subsystem, params())
}
