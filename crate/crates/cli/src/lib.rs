//! Library behind the `yb-qfi` command-line tool.

pub mod args;
pub mod figure;
pub mod flow;
pub mod grid;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;
use ybqfi::{FormulaSet, QfiError, QfiSettings};

use args::{Cli, Command};
use grid::{Axis, GridOutput, GridSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_STRICT: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("numerical failure: {0}")]
    Numeric(String),
}

impl From<QfiError> for CliError {
    fn from(e: QfiError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Output { .. } | CliError::Io(_) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_VERIFICATION,
        }
    }
}

/// Runs one invocation and returns its exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let g = &cli.global;
    g.check_points()?;
    let tol = g.tolerances()?;
    let settings = QfiSettings::default();
    let formulas: FormulaSet = g.formulas.into();

    match &cli.command {
        Command::Verify(v) => {
            if v.list {
                for name in verify::suite_names() {
                    writeln!(out, "{name}")?;
                }
                return Ok(EXIT_OK);
            }
            let ctx = verify::Context { tol, settings };
            let reports = verify::run_suites(&ctx, &v.only).map_err(CliError::Usage)?;
            let passed = reports.iter().all(|r| r.passed());
            if g.json {
                let doc = serde_json::json!({ "passed": passed, "suites": reports });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
            } else {
                verify::write_text(&reports, out)?;
            }
            Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Figure(f) => {
            let panels = figure::select(f.number, f.panel, g.points, formulas, g.repetitions)?;
            let pool = grid::thread_pool(g.threads)?;
            let multiple = panels.len() > 1;
            let mut warned = false;
            for panel in &panels {
                let result = grid::evaluate(&panel.spec, &settings, tol.floor, &pool)?;
                warned |= report_warnings(&result, err)?;
                if let Some(diff) = result.max_abs_diff() {
                    writeln!(
                        err,
                        "figure {}({}): max |numeric - closed form| = {:.3e}",
                        panel.figure, panel.id, diff
                    )?;
                }
                let path = g
                    .output
                    .as_ref()
                    .map(|p| if multiple { panel_path(p, panel.id) } else { p.clone() });
                emit_grid(&panel.spec, &result, g.json, path.as_deref(), out)?;
            }
            Ok(strict_status(g.strict, warned))
        }
        Command::Sweep(s) => {
            let scenario = s.scenario.scenario()?;
            let spec = GridSpec {
                title: "sweep".into(),
                scenario,
                axes: s.axes.iter().map(|a| Axis::from_spec(a, g.points)).collect(),
                phi: s.phi,
                t: s.t,
                formulas,
                repetitions: g.repetitions,
            };
            let pool = grid::thread_pool(g.threads)?;
            let result = grid::evaluate(&spec, &settings, tol.floor, &pool)?;
            let warned = report_warnings(&result, err)?;
            emit_grid(&spec, &result, g.json, g.output.as_deref(), out)?;
            Ok(strict_status(g.strict, warned))
        }
        Command::Flow(f) => {
            let scenario = f.scenario.scenario()?;
            let report = flow::flow_report(
                &scenario,
                f.phi,
                f.t_range,
                g.points,
                f.dead_band,
                tol.vanishing,
                &settings,
            )?;
            with_destination(g.output.as_deref(), out, |w| {
                if g.json {
                    serde_json::to_writer_pretty(&mut *w, &report).map_err(io::Error::from)?;
                    writeln!(w)
                } else {
                    flow::write_text(&report, w)
                }
            })?;
            Ok(EXIT_OK)
        }
    }
}

fn strict_status(strict: bool, warned: bool) -> u8 {
    if strict && warned {
        EXIT_STRICT
    } else {
        EXIT_OK
    }
}

fn report_warnings(result: &GridOutput, err: &mut dyn Write) -> io::Result<bool> {
    for w in &result.warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(!result.warnings.is_empty())
}

/// `out/fig.csv` with panel `b` becomes `out/fig-b.csv`.
pub fn panel_path(base: &Path, id: char) -> PathBuf {
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}-{id}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{id}"),
    };
    base.with_file_name(name)
}

fn emit_grid(
    spec: &GridSpec,
    result: &GridOutput,
    json: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    with_destination(path, out, |w| {
        if json {
            grid::write_json(spec, result, w)
        } else {
            grid::write_csv(spec, result, w)
        }
    })
}

fn with_destination(
    path: Option<&Path>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    fn wrap(p: &Path) -> impl Fn(io::Error) -> CliError + '_ {
        move |source| CliError::Output {
            path: p.to_path_buf(),
            source,
        }
    }
    match path {
        None => Ok(body(out)?),
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(wrap(p))?);
            body(&mut w).map_err(wrap(p))?;
            w.flush().map_err(wrap(p))
        }
    }
}
