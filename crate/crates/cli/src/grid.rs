//! Grid evaluation shared by `sweep` and `figure`, and its CSV/JSON output.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use ybqfi::qfi::{closed_form_flow_with, closed_form_qfi_with, qfi_flow_numeric};
use ybqfi::{qcrb_bound, qfi, FormulaSet, ProbeSpec, QfiMethod, QfiSettings, Scenario};

use crate::args::{AxisName, AxisSpec};
use crate::CliError;

pub const CSV_HEADER: &str =
    "axis1,axis2,qfi_numeric,qfi_closed,abs_diff,flow_numeric,flow_closed,qcrb_bound";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: AxisName, min: f64, max: f64, count: usize) -> Self {
        Self { name, min, max, count }
    }

    pub fn from_spec(spec: &AxisSpec, default_count: usize) -> Self {
        Self::new(spec.name, spec.min, spec.max, spec.count.unwrap_or(default_count))
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

impl Serialize for AxisName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub title: String,
    pub scenario: Scenario,
    pub axes: Vec<Axis>,
    /// Values of phi and t when they are not axes.
    pub phi: f64,
    pub t: f64,
    pub formulas: FormulaSet,
    pub repetitions: u64,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        match self.axes.len() {
            1 | 2 => {}
            n => return usage(format!("a grid needs one or two axes, got {n}")),
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return usage(format!("axis {} given twice", self.axes[0].name));
        }
        for a in &self.axes {
            if a.count < 2 {
                return usage(format!("axis {} needs at least 2 points, got {}", a.name, a.count));
            }
            if !(a.min.is_finite() && a.max.is_finite() && a.min < a.max) {
                return usage(format!("axis {} needs min < max, got {}:{}", a.name, a.min, a.max));
            }
        }
        if !(self.phi.is_finite() && self.t.is_finite()) {
            return usage("phi and t must be finite".into());
        }
        self.scenario
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        // every grid point must be a valid probe
        for a in &self.axes {
            for v in [a.min, a.max] {
                self.point_scenario(&[(a.name, v)])?;
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Axis values of grid point `index`, row-major (the last axis is fastest).
    pub fn coordinates(&self, index: usize) -> Vec<(AxisName, f64)> {
        let mut rest = index;
        let mut out = vec![(AxisName::T, 0.0); self.axes.len()];
        for (k, a) in self.axes.iter().enumerate().rev() {
            out[k] = (a.name, a.value(rest % a.count));
            rest /= a.count;
        }
        out
    }

    fn point_scenario(&self, coords: &[(AxisName, f64)]) -> Result<(Scenario, f64, f64), CliError> {
        let mut probe = self.scenario.probe;
        let (mut phi, mut t) = (self.phi, self.t);
        for &(name, v) in coords {
            let wrong = |fam: &str| {
                CliError::Usage(format!("axis {name} needs a {fam} probe, got {}", self.scenario.probe))
            };
            match name {
                AxisName::T => t = v,
                AxisName::Phi => phi = v,
                AxisName::P => probe = probe.with_p(v).ok_or_else(|| wrong("Werner"))?,
                AxisName::C1 => probe = probe.with_c(1, v).ok_or_else(|| wrong("Bell-diagonal"))?,
                AxisName::C2 => probe = probe.with_c(2, v).ok_or_else(|| wrong("Bell-diagonal"))?,
                AxisName::C3 => probe = probe.with_c(3, v).ok_or_else(|| wrong("Bell-diagonal"))?,
            }
        }
        probe_ok(&probe)?;
        Ok((self.scenario.with_probe(probe), phi, t))
    }
}

fn probe_ok(probe: &ProbeSpec) -> Result<(), CliError> {
    probe.validate().map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub qfi_numeric: f64,
    pub qfi_closed: Option<f64>,
    pub abs_diff: Option<f64>,
    pub flow_numeric: f64,
    pub flow_closed: Option<f64>,
    pub qcrb_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridOutput {
    pub rows: Vec<GridRow>,
    pub warnings: Vec<String>,
}

impl GridOutput {
    pub fn max_abs_diff(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.abs_diff).reduce(f64::max)
    }
}

pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

/// Evaluates every grid point independently; rows come back in grid order
/// whatever the number of workers.
pub fn evaluate(
    spec: &GridSpec,
    settings: &QfiSettings,
    floor: f64,
    pool: &rayon::ThreadPool,
) -> Result<GridOutput, CliError> {
    spec.validate()?;
    let results: Vec<Result<(GridRow, Option<String>), CliError>> = pool.install(|| {
        (0..spec.len())
            .into_par_iter()
            .map(|i| evaluate_point(spec, i, settings, floor))
            .collect()
    });
    let mut rows = Vec::with_capacity(results.len());
    let mut warnings = Vec::new();
    for r in results {
        let (row, warning) = r?;
        rows.push(row);
        warnings.extend(warning);
    }
    Ok(GridOutput { rows, warnings })
}

fn evaluate_point(
    spec: &GridSpec,
    index: usize,
    settings: &QfiSettings,
    floor: f64,
) -> Result<(GridRow, Option<String>), CliError> {
    let coords = spec.coordinates(index);
    let (scenario, phi, t) = spec.point_scenario(&coords)?;
    let numeric = qfi(&scenario, phi, t, QfiMethod::SldPair, settings)?.value;
    let flow = qfi_flow_numeric(&scenario, phi, t, settings)?;
    let closed = closed_form_qfi_with(spec.formulas, &scenario, phi, t).ok();
    let flow_closed = closed_form_flow_with(spec.formulas, &scenario, phi, t).ok();

    let warning = if !numeric.is_finite() || !flow.is_finite() {
        Some(format!("non-finite value at {}", describe_point(&coords)))
    } else if numeric < -floor {
        Some(format!("negative QFI {numeric:e} at {}", describe_point(&coords)))
    } else {
        None
    };
    let row = GridRow {
        axis1: coords[0].1,
        axis2: coords.get(1).map(|c| c.1),
        qfi_numeric: numeric,
        qfi_closed: closed,
        abs_diff: closed.map(|c| (numeric - c).abs()),
        flow_numeric: flow,
        flow_closed,
        qcrb_bound: qcrb_bound(numeric, spec.repetitions),
    };
    Ok((row, warning))
}

fn describe_point(coords: &[(AxisName, f64)]) -> String {
    coords
        .iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// 17 significant digits, enough to round-trip an f64.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

pub fn write_csv(spec: &GridSpec, output: &GridOutput, w: &mut dyn Write) -> std::io::Result<()> {
    let p = &spec.scenario.params;
    writeln!(w, "# yb-qfi {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# {}", spec.title)?;
    writeln!(w, "# scenario: {}", spec.scenario)?;
    writeln!(
        w,
        "# parameters: B={} J={} g={} theta={} eps={} phi={} t={} formulas={} repetitions={}",
        p.b,
        p.j,
        p.g,
        p.theta,
        p.eps,
        spec.phi,
        spec.t,
        match spec.formulas {
            FormulaSet::Published => "published",
            FormulaSet::Rederived => "rederived",
        },
        spec.repetitions
    )?;
    let axes: Vec<String> = spec
        .axes
        .iter()
        .enumerate()
        .map(|(k, a)| format!("axis{}={} [{}, {}] x {}", k + 1, a.name, a.min, a.max, a.count))
        .collect();
    writeln!(w, "# axes: {}", axes.join("; "))?;
    writeln!(w, "{CSV_HEADER}")?;
    for r in &output.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_num(r.axis1),
            fmt_opt(r.axis2),
            fmt_num(r.qfi_numeric),
            fmt_opt(r.qfi_closed),
            fmt_opt(r.abs_diff),
            fmt_num(r.flow_numeric),
            fmt_opt(r.flow_closed),
            fmt_num(r.qcrb_bound),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonGrid<'a> {
    title: &'a str,
    scenario: String,
    phi: f64,
    t: f64,
    axes: &'a [Axis],
    rows: &'a [GridRow],
    warnings: &'a [String],
}

pub fn write_json(spec: &GridSpec, output: &GridOutput, w: &mut dyn Write) -> std::io::Result<()> {
    // serde_json writes infinities as null; the bound is infinite only when F = 0
    let doc = JsonGrid {
        title: &spec.title,
        scenario: spec.scenario.to_string(),
        phi: spec.phi,
        t: spec.t,
        axes: &spec.axes,
        rows: &output.rows,
        warnings: &output.warnings,
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}
