//! `flow` subcommand: QFI flow over a time range and its windows.

use std::io::Write;

use serde::Serialize;
use ybqfi::qfi::{FlowTrace, MarkovWindow};
use ybqfi::{QfiSettings, Scenario};

use crate::args::RangeSpec;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowReport {
    pub scenario: String,
    pub phi: f64,
    pub dead_band: f64,
    /// The QFI stays below the vanishing tolerance on the whole range.
    pub phase_insensitive: bool,
    pub min_flow: (f64, f64),
    pub max_flow: (f64, f64),
    pub windows: Vec<MarkovWindow>,
    pub trace: FlowTrace,
}

pub fn flow_report(
    scenario: &Scenario,
    phi: f64,
    range: RangeSpec,
    points: usize,
    dead_band: f64,
    vanishing: f64,
    settings: &QfiSettings,
) -> Result<FlowReport, CliError> {
    if !(range.min.is_finite() && range.max.is_finite()) || range.max <= range.min {
        return Err(CliError::Usage(format!(
            "t-range {}:{} has zero or negative length",
            range.min, range.max
        )));
    }
    if points < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {points}")));
    }
    if !(dead_band >= 0.0) {
        return Err(CliError::Usage(format!("--dead-band must be non-negative, got {dead_band}")));
    }
    let times: Vec<f64> = (0..points)
        .map(|i| range.min + (range.max - range.min) * i as f64 / (points - 1) as f64)
        .collect();
    let trace = FlowTrace::compute(scenario, phi, &times, settings, dead_band)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let (min_flow, max_flow) = trace.extrema().expect("non-empty trace");
    let phase_insensitive = trace.qfi.iter().all(|f| f.abs() <= vanishing);
    Ok(FlowReport {
        scenario: scenario.to_string(),
        phi,
        dead_band,
        phase_insensitive,
        min_flow,
        max_flow,
        windows: trace.windows.clone(),
        trace,
    })
}

pub fn write_text(report: &FlowReport, w: &mut dyn Write) -> std::io::Result<()> {
    let times = &report.trace.times;
    writeln!(w, "scenario: {}", report.scenario)?;
    writeln!(
        w,
        "phi = {}, t in [{}, {}], {} points, dead band {:e}",
        report.phi,
        times[0],
        times[times.len() - 1],
        times.len(),
        report.dead_band
    )?;
    if report.phase_insensitive {
        writeln!(w, "no φ-sensitivity; QFI identically 0; no windows")?;
        return Ok(());
    }
    writeln!(
        w,
        "flow extrema: min {:.6e} at t = {:.6}, max {:.6e} at t = {:.6}",
        report.min_flow.1, report.min_flow.0, report.max_flow.1, report.max_flow.0
    )?;
    if report.windows.is_empty() {
        writeln!(w, "no windows: the flow stays inside the dead band")?;
    }
    for win in &report.windows {
        writeln!(
            w,
            "({}) {:<14} t in [{:.6}, {:.6}]",
            win.regime.sign(),
            win.regime.to_string(),
            win.start,
            win.end
        )?;
    }
    Ok(())
}
