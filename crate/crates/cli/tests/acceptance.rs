//! One PASS/FAIL line per acceptance criterion. Exits non-zero when any fails.

use std::path::Path;
use std::process::Command;

use ybqfi::{QfiSettings, Tolerances};
use ybqfi_cli::verify::{run_suites, Context, SuiteReport};

const TOL_ALGEBRA: f64 = 1e-12;
const TOL_EIGEN: f64 = 1e-10;
const TOL_ROUTES: f64 = 1e-6;
const TOL_CLOSED_FORM: f64 = 1e-6;
const TOL_FLOW: f64 = 1e-5;
const TOL_VANISHING: f64 = 1e-9;
const TOL_COINCIDENCE: f64 = 1e-8;
const SUPPORT: f64 = 1e-10;
const FLOOR: f64 = 1e-9;

const FIGURE_POINTS: &str = "31";

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn suites(ctx: &Context, name: &'static str, names: &[&str]) -> Outcome {
    let only: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let reports = run_suites(ctx, &only).expect("known suites");
    summarize(name, &reports)
}

fn summarize(name: &'static str, reports: &[SuiteReport]) -> Outcome {
    let passed = reports.iter().all(|r| r.passed());
    let samples: usize = reports.iter().map(|r| r.samples()).sum();
    let worst = reports.iter().map(|r| r.max_residual()).fold(0.0, f64::max);
    let mut detail = format!("{samples} samples, max residual {worst:.3e}");
    let failing: Vec<String> = reports
        .iter()
        .flat_map(|r| r.checks.iter())
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({:.3e} > {:.0e})", c.label, c.max_residual, c.tolerance))
        .collect();
    if !failing.is_empty() {
        detail.push_str("; failing: ");
        detail.push_str(&failing.join(", "));
    }
    Outcome { name, passed, detail }
}

fn figures(dir: &Path, threads: &str, tag: &str) -> Result<Vec<(String, Vec<u8>)>, String> {
    let mut files = Vec::new();
    for n in 1..=6 {
        let base = dir.join(format!("{tag}-fig{n}.csv"));
        let out = Command::new(env!("CARGO_BIN_EXE_yb-qfi"))
            .args(["figure", &n.to_string(), "--points", FIGURE_POINTS, "--threads", threads, "-o"])
            .arg(&base)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("figure {n} exited with {:?}", out.status.code()));
        }
    }
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with(&format!("{tag}-")))
        .collect();
    paths.sort();
    for p in paths {
        let name = p.file_name().unwrap().to_string_lossy().trim_start_matches(&format!("{tag}-")).to_string();
        files.push((name, std::fs::read(&p).map_err(|e| e.to_string())?));
    }
    Ok(files)
}

fn determinism() -> Outcome {
    let name = "figure output is deterministic across runs and thread counts";
    let dir = tempfile::tempdir().expect("temp dir");
    let runs = (|| {
        Ok::<_, String>([
            figures(dir.path(), "1", "serial")?,
            figures(dir.path(), "8", "parallel")?,
            figures(dir.path(), "8", "repeat")?,
        ])
    })();
    match runs {
        Err(e) => Outcome { name, passed: false, detail: e },
        Ok([serial, parallel, repeat]) => {
            let passed = serial.len() >= 6 && serial == parallel && parallel == repeat;
            Outcome {
                name,
                passed,
                detail: format!("{} panel files, figures 1-6 at {FIGURE_POINTS} points, threads 1/8/8", serial.len()),
            }
        }
    }
}

fn main() {
    let tol = Tolerances {
        algebra: TOL_ALGEBRA,
        eigen: TOL_EIGEN,
        routes: TOL_ROUTES,
        closed_form: TOL_CLOSED_FORM,
        flow: TOL_FLOW,
        vanishing: TOL_VANISHING,
        coincidence: TOL_COINCIDENCE,
        support: SUPPORT,
        floor: FLOOR,
    };
    let settings = QfiSettings { support_tol: SUPPORT, ..QfiSettings::default() };
    let ctx = Context { tol, settings };

    let outcomes = vec![
        suites(&ctx, "Temperley-Lieb relations and unitarity of R", &["tla", "r-unitarity"]),
        suites(&ctx, "Yang-Baxterized Hamiltonians are unitary conjugates of H0", &["conjugation"]),
        suites(&ctx, "numeric QFI matches the tabulated closed forms", &["closed-form", "closed-form-spots"]),
        suites(&ctx, "vanishing QFI and H3 = H1 coincidence", &["vanishing", "h3-equals-h1"]),
        suites(&ctx, "numeric QFI flow matches the tabulated flows and sign pattern", &["flow", "flow-sign"]),
        suites(&ctx, "SLD, spectral and generator routes agree", &["routes"]),
        suites(&ctx, "output spectrum equals input spectrum under the evolution", &["spectrum-invariance"]),
        suites(&ctx, "corrected closed forms and flows match numerics", &["closed-form-rederived", "flow-rederived"]),
        determinism(),
    ];

    let mut failed = 0;
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
