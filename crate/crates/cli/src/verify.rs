//! Verification suites run by `yb-qfi verify` and by the acceptance tests.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use ybqfi::hamiltonians::verify_conjugation;
use ybqfi::qfi::closed_form::describe;
use ybqfi::qfi::{
    classify_markovianity, closed_form_flow_with, closed_form_qfi_with, qfi_flow_numeric, Regime,
};
use ybqfi::yang_baxter::{check_tla, tl_decompose};
use ybqfi::{
    eigh, h0, h_yangbaxterized, make_probe, output_state, qcrb_bound, qfi, r_matrix, FormulaSet,
    HamiltonianKind, ModelParams, ProbeSpec, QfiMethod, QfiSettings, Scenario, Sign, Subsystem,
    TlKind, Tolerances,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(label: impl Into<String>, residuals: impl IntoIterator<Item = f64>, tolerance: f64) -> Self {
        let mut samples = 0;
        let mut worst: f64 = 0.0;
        for r in residuals {
            samples += 1;
            // NaN counts as a failure
            worst = if r.is_nan() { f64::NAN } else if worst.is_nan() { worst } else { worst.max(r) };
        }
        Self {
            label: label.into(),
            samples,
            max_residual: worst,
            tolerance,
            passed: worst <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub summary: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn samples(&self) -> usize {
        self.checks.iter().map(|c| c.samples).sum()
    }
}

pub struct Context {
    pub tol: Tolerances,
    pub settings: QfiSettings,
}

type SuiteFn = fn(&Context) -> SuiteReport;

pub const SUITES: &[(&str, SuiteFn)] = &[
    ("tla", suite_tla),
    ("r-unitarity", suite_r_unitarity),
    ("tl-fit", suite_tl_fit),
    ("hermiticity", suite_hermiticity),
    ("conjugation", suite_conjugation),
    ("isospectral", suite_isospectral),
    ("probes", suite_probes),
    ("spectrum-invariance", suite_spectrum_invariance),
    ("routes", suite_routes),
    ("closed-form", suite_closed_form),
    ("closed-form-spots", suite_closed_form_spots),
    ("flow", suite_flow),
    ("flow-sign", suite_flow_sign),
    ("closed-form-rederived", suite_closed_form_rederived),
    ("flow-rederived", suite_flow_rederived),
    ("vanishing", suite_vanishing),
    ("h3-equals-h1", suite_h3_equals_h1),
    ("qcrb", suite_qcrb),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs the named suites (all when `only` is empty). Unknown names are
/// returned as an error.
pub fn run_suites(ctx: &Context, only: &[String]) -> Result<Vec<SuiteReport>, String> {
    for name in only {
        if !SUITES.iter().any(|(n, _)| n == name) {
            return Err(format!(
                "unknown suite {name:?}; available: {}",
                suite_names().join(", ")
            ));
        }
    }
    Ok(SUITES
        .iter()
        .filter(|(n, _)| only.is_empty() || only.iter().any(|o| o == n))
        .map(|(_, f)| f(ctx))
        .collect())
}

pub fn write_text(reports: &[SuiteReport], w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(w, "{:<22} {:>8} {:>13} {:>10}  result", "suite", "samples", "max residual", "tolerance")?;
    for r in reports {
        let tol = r.checks.iter().map(|c| c.tolerance).fold(0.0, f64::max);
        writeln!(
            w,
            "{:<22} {:>8} {:>13.3e} {:>10.0e}  {}",
            r.name,
            r.samples(),
            r.max_residual(),
            tol,
            if r.passed() { "pass" } else { "FAIL" }
        )?;
        for c in &r.checks {
            writeln!(
                w,
                "    {} {:<70} {:>11.3e} (tol {:.0e}, {} samples)",
                if c.passed { " " } else { "x" },
                c.label,
                c.max_residual,
                c.tolerance,
                c.samples
            )?;
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    if failed.is_empty() {
        writeln!(w, "all {} suites passed", reports.len())?;
    } else {
        writeln!(w, "{} of {} suites failed: {}", failed.len(), reports.len(), failed.join(", "))?;
    }
    Ok(())
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
        .collect()
}

/// `n` points on `[a, b)`.
fn periodic(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

const TL_CASES: [(TlKind, Sign); 4] = [
    (TlKind::U1, Sign::Plus),
    (TlKind::U2, Sign::Plus),
    (TlKind::U3, Sign::Plus),
    (TlKind::U3, Sign::Minus),
];

fn tl_label(kind: TlKind, eps: Sign) -> String {
    case_label(format!("U{kind}"), kind, eps)
}

fn ham_label(kind: TlKind, eps: Sign) -> String {
    case_label(kind.hamiltonian().to_string().to_uppercase(), kind, eps)
}

fn case_label(name: String, kind: TlKind, eps: Sign) -> String {
    match kind {
        TlKind::U3 => format!("{name} (eps = {eps})"),
        _ => name,
    }
}

pub fn suite_tla(ctx: &Context) -> SuiteReport {
    let checks = TL_CASES
        .iter()
        .map(|&(kind, eps)| {
            Check::new(
                format!("{}: braid and loop relations, d = {:.6}", tl_label(kind, eps), kind.loop_value()),
                periodic(0.0, TAU, 32).into_iter().map(|phi| check_tla(kind, phi, eps).max()),
                ctx.tol.algebra,
            )
        })
        .collect();
    SuiteReport {
        name: "tla",
        summary: "Temperley-Lieb relations of the three generators",
        checks,
    }
}

fn angle_grid() -> Vec<(f64, f64)> {
    let g = periodic(0.0, TAU, 16);
    g.iter().flat_map(|&a| g.iter().map(move |&b| (a, b))).collect()
}

pub fn suite_r_unitarity(ctx: &Context) -> SuiteReport {
    let checks = TL_CASES
        .iter()
        .map(|&(kind, eps)| {
            Check::new(
                format!("{}: ||R R^dag - I||", tl_label(kind, eps)),
                angle_grid()
                    .into_iter()
                    .map(|(theta, phi)| r_matrix(kind, theta, phi, eps).unitarity_residual()),
                ctx.tol.algebra,
            )
        })
        .collect();
    SuiteReport {
        name: "r-unitarity",
        summary: "unitarity of the R-matrices on a 16 x 16 (theta, phi) grid",
        checks,
    }
}

pub fn suite_tl_fit(ctx: &Context) -> SuiteReport {
    let checks = TL_CASES
        .iter()
        .map(|&(kind, eps)| {
            Check::new(
                format!("{}: R in span(I, U)", tl_label(kind, eps)),
                angle_grid()
                    .into_iter()
                    .map(|(theta, phi)| tl_decompose(kind, theta, phi, eps).residual),
                ctx.tol.algebra,
            )
        })
        .collect();
    SuiteReport {
        name: "tl-fit",
        summary: "R-matrices lie in the span of the identity and their generator",
        checks,
    }
}

fn model_grid() -> Vec<ModelParams> {
    let bases = [
        ModelParams::new(1.0, 0.5, 0.3),
        ModelParams::new(-0.7, 1.3, -0.2),
        ModelParams::new(0.25, -0.8, 1.1),
    ];
    let mut out = Vec::new();
    for base in bases {
        for (theta, phi) in angle_grid() {
            out.push(base.with_theta(theta).with_phi(phi));
        }
    }
    out
}

pub fn suite_hermiticity(ctx: &Context) -> SuiteReport {
    let checks = TL_CASES
        .iter()
        .map(|&(kind, eps)| {
            Check::new(
                format!("{}: ||H - H^dag||", ham_label(kind, eps)),
                model_grid()
                    .into_iter()
                    .map(|p| h_yangbaxterized(kind.hamiltonian(), &p.with_eps(eps)).hermiticity_residual()),
                ctx.tol.algebra,
            )
        })
        .collect();
    SuiteReport {
        name: "hermiticity",
        summary: "Yang-Baxterized Hamiltonians are Hermitian",
        checks,
    }
}

pub fn suite_conjugation(ctx: &Context) -> SuiteReport {
    let checks = TL_CASES
        .iter()
        .map(|&(kind, eps)| {
            Check::new(
                format!("{}: ||H - R H0 R^dag||", ham_label(kind, eps)),
                model_grid()
                    .into_iter()
                    .map(|p| verify_conjugation(kind, &p.with_eps(eps))),
                ctx.tol.eigen,
            )
        })
        .collect();
    SuiteReport {
        name: "conjugation",
        summary: "each Hamiltonian is the R-conjugate of H0",
        checks,
    }
}

pub fn suite_isospectral(ctx: &Context) -> SuiteReport {
    let checks = TL_CASES
        .iter()
        .map(|&(kind, eps)| {
            let residuals = model_grid().into_iter().map(|p| {
                let p = p.with_eps(eps);
                let a = eigh(&h_yangbaxterized(kind.hamiltonian(), &p)).expect("Hermitian");
                let b = eigh(&h0(&p)).expect("Hermitian");
                a.eigenvalues
                    .iter()
                    .zip(&b.eigenvalues)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max)
            });
            Check::new(
                format!("{}: spectrum equals that of H0", ham_label(kind, eps)),
                residuals,
                ctx.tol.eigen,
            )
        })
        .collect();
    SuiteReport {
        name: "isospectral",
        summary: "Hamiltonians share the spectrum of H0",
        checks,
    }
}

pub fn werner_params() -> Vec<f64> {
    linspace(0.0, 1.0, 5)
}

pub fn bell_params() -> Vec<ProbeSpec> {
    [
        (0.9, 0.0, 0.1),
        (0.3, -0.4, 0.2),
        (-0.5, -0.2, -0.1),
        (0.0, 0.6, -0.3),
        (0.2, 0.2, 0.2),
    ]
    .into_iter()
    .map(|(c1, c2, c3)| ProbeSpec::BellDiagonal { c1, c2, c3 })
    .collect()
}

/// Five probes per family.
pub fn family_probes() -> [(&'static str, Vec<ProbeSpec>); 3] {
    [
        ("Werner1", werner_params().into_iter().map(|p| ProbeSpec::Werner1 { p }).collect()),
        ("Werner2", werner_params().into_iter().map(|p| ProbeSpec::Werner2 { p }).collect()),
        ("Bell-diagonal", bell_params()),
    ]
}

pub fn suite_probes(ctx: &Context) -> SuiteReport {
    let checks = family_probes()
        .into_iter()
        .map(|(name, probes)| {
            let residuals = probes.into_iter().map(|spec| {
                let rho = make_probe(&spec).expect("valid probe");
                let eig = eigh(&rho).expect("Hermitian").eigenvalues;
                let spectrum = eig
                    .iter()
                    .zip(spec.spectrum())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                let trace = (rho.trace().re - 1.0).abs() + rho.trace().im.abs();
                let negativity = eig.iter().map(|&l| (-l).max(0.0)).fold(0.0, f64::max);
                spectrum.max(trace).max(negativity).max(rho.hermiticity_residual())
            });
            Check::new(format!("{name}: unit-trace PSD with the stated spectrum"), residuals, ctx.tol.eigen)
        })
        .collect();
    SuiteReport {
        name: "probes",
        summary: "probe states are valid density matrices",
        checks,
    }
}

const KINDS: [HamiltonianKind; 3] = [HamiltonianKind::H1, HamiltonianKind::H2, HamiltonianKind::H3];

fn random_probe(rng: &mut ChaCha8Rng) -> ProbeSpec {
    match rng.gen_range(0..3) {
        0 => ProbeSpec::Werner1 { p: rng.gen() },
        1 => ProbeSpec::Werner2 { p: rng.gen() },
        _ => {
            // Bell weights from a flat Dirichlet draw
            let e: Vec<f64> = (0..4).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let s: f64 = e.iter().sum();
            let w: Vec<f64> = e.iter().map(|x| x / s).collect();
            ProbeSpec::BellDiagonal {
                c1: -w[0] - w[1] + w[2] + w[3],
                c2: -w[0] + w[1] + w[2] - w[3],
                c3: -w[0] + w[1] - w[2] + w[3],
            }
        }
    }
}

/// `count` seeded random full-state scenarios with their `(phi, t)`.
pub fn random_scenarios(seed: u64, count: usize) -> Vec<(Scenario, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let kind = KINDS[rng.gen_range(0..3)];
        let probe = random_probe(&mut rng);
        let params = ModelParams::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0))
            .with_theta(rng.gen_range(0.0..TAU))
            .with_eps(if rng.gen() { Sign::Plus } else { Sign::Minus });
        let (phi, t) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..10.0));
        if probe.validate().is_ok() {
            out.push((Scenario::new(kind, probe, Subsystem::Full, params), phi, t));
        }
    }
    out
}

pub fn suite_spectrum_invariance(ctx: &Context) -> SuiteReport {
    let residuals = random_scenarios(0x5eed_0001, 1000).into_iter().map(|(s, phi, t)| {
        let out = eigh(&output_state(&s, phi, t).expect("valid scenario")).expect("Hermitian");
        out.eigenvalues
            .iter()
            .zip(s.probe.spectrum())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    SuiteReport {
        name: "spectrum-invariance",
        summary: "unitary evolution leaves the probe spectrum unchanged",
        checks: vec![Check::new("1000 random full-state scenarios", residuals, ctx.tol.eigen)],
    }
}

fn route_grid() -> (Vec<f64>, Vec<f64>) {
    (linspace(0.3, 3.5, 5), linspace(0.0, PI, 5))
}

fn base_params() -> ModelParams {
    ModelParams::new(1.0, 1.0, 0.25)
}

pub fn suite_routes(ctx: &Context) -> SuiteReport {
    let (times, phases) = route_grid();
    let mut pair_spectral = Vec::new();
    let mut pair_generator = Vec::new();
    let mut spectral_generator = Vec::new();
    for kind in KINDS {
        for (_, probes) in family_probes() {
            for probe in probes {
                for sub in [Subsystem::Full, Subsystem::ReducedA] {
                    let s = Scenario::new(kind, probe, sub, base_params());
                    for &t in &times {
                        for &phi in &phases {
                            let q = |m| qfi(&s, phi, t, m, &ctx.settings).expect("valid scenario").value;
                            let a = q(QfiMethod::SldPair);
                            let b = q(QfiMethod::Spectral);
                            pair_spectral.push((a - b).abs());
                            if sub == Subsystem::Full {
                                let c = q(QfiMethod::Generator);
                                pair_generator.push((a - c).abs());
                                spectral_generator.push((b - c).abs());
                            }
                        }
                    }
                }
            }
        }
    }
    SuiteReport {
        name: "routes",
        summary: "pair formula, spectral and generator routes agree",
        checks: vec![
            Check::new("pair vs spectral, all scenarios", pair_spectral, ctx.tol.routes),
            Check::new("pair vs generator, full states", pair_generator, ctx.tol.routes),
            Check::new("spectral vs generator, full states", spectral_generator, ctx.tol.routes),
        ],
    }
}

/// The ten tabulated (Hamiltonian, probe family, subsystem) combinations
/// with a non-trivial closed form.
pub fn tabulated() -> Vec<(HamiltonianKind, usize, Subsystem)> {
    use HamiltonianKind::{H1, H2};
    use Subsystem::{Full, ReducedA};
    vec![
        (H1, 0, Full),
        (H1, 1, Full),
        (H2, 1, Full),
        (H1, 2, Full),
        (H2, 2, Full),
        (H1, 0, ReducedA),
        (H1, 1, ReducedA),
        (H2, 1, ReducedA),
        (H1, 2, ReducedA),
        (H2, 2, ReducedA),
    ]
}

/// Reduced-state combinations with a closed-form flow.
pub fn tabulated_flows() -> Vec<(HamiltonianKind, usize, Subsystem)> {
    tabulated()
        .into_iter()
        .filter(|(_, _, s)| *s == Subsystem::ReducedA)
        .collect()
}

fn closed_form_checks(ctx: &Context, set: FormulaSet) -> Vec<Check> {
    let times = linspace(0.0, PI, 11);
    let phases = linspace(0.0, PI, 11);
    let families = family_probes();
    tabulated()
        .into_iter()
        .map(|(kind, family, sub)| {
            let (fam_name, probes) = &families[family];
            let mut residuals = Vec::new();
            let mut label = String::new();
            for &probe in probes {
                let s = Scenario::new(kind, probe, sub, base_params());
                label = format!(
                    "{} x {fam_name} ({sub}): {}",
                    kind.to_string().to_uppercase(),
                    describe(&s, set).unwrap_or("?")
                );
                for &t in &times {
                    for &phi in &phases {
                        let numeric = qfi(&s, phi, t, QfiMethod::SldPair, &ctx.settings)
                            .expect("valid scenario")
                            .value;
                        let closed = closed_form_qfi_with(set, &s, phi, t).expect("tabulated");
                        residuals.push((numeric - closed).abs());
                    }
                }
            }
            Check::new(label, residuals, ctx.tol.closed_form)
        })
        .collect()
}

pub fn suite_closed_form(ctx: &Context) -> SuiteReport {
    SuiteReport {
        name: "closed-form",
        summary: "numeric QFI against the published closed forms (5 x 11 x 11 grids)",
        checks: closed_form_checks(ctx, FormulaSet::Published),
    }
}

pub fn suite_closed_form_rederived(ctx: &Context) -> SuiteReport {
    SuiteReport {
        name: "closed-form-rederived",
        summary: "numeric QFI against the re-derived closed forms (5 x 11 x 11 grids)",
        checks: closed_form_checks(ctx, FormulaSet::Rederived),
    }
}

pub fn suite_closed_form_spots(ctx: &Context) -> SuiteReport {
    let spots = [
        (
            "Werner1 (p = 1), H1 full, Bt = phi = pi/2",
            Scenario::new(HamiltonianKind::H1, ProbeSpec::Werner1 { p: 1.0 }, Subsystem::Full, base_params()),
            4.0,
        ),
        (
            "Bell-diagonal (0.9, 0, 0.1), H1 full, Bt = phi = pi/2",
            Scenario::new(
                HamiltonianKind::H1,
                ProbeSpec::BellDiagonal {
                    c1: 0.9,
                    c2: 0.0,
                    c3: 0.1,
                },
                Subsystem::Full,
                base_params(),
            ),
            0.81 / 2.2,
        ),
    ];
    let mut checks = Vec::new();
    for (label, s, expected) in spots {
        let closed = closed_form_qfi_with(FormulaSet::Published, &s, FRAC_PI_2, FRAC_PI_2).expect("tabulated");
        let numeric = qfi(&s, FRAC_PI_2, FRAC_PI_2, QfiMethod::SldPair, &ctx.settings)
            .expect("valid scenario")
            .value;
        checks.push(Check::new(
            format!("{label}: closed form = {expected:.6}"),
            [(closed - expected).abs()],
            ctx.tol.closed_form,
        ));
        checks.push(Check::new(
            format!("{label}: numeric {numeric:.6}, expected {expected:.6}"),
            [(numeric - expected).abs()],
            ctx.tol.closed_form,
        ));
    }
    SuiteReport {
        name: "closed-form-spots",
        summary: "spot values of the published closed forms",
        checks,
    }
}

/// Off-lattice flow grid at 2B = 2J = 1.
fn flow_grid() -> (Vec<f64>, Vec<f64>) {
    (linspace(0.1, PI - 0.1, 11), linspace(0.1, PI - 0.1, 11))
}

fn flow_params() -> ModelParams {
    ModelParams::new(0.5, 0.5, 0.25)
}

fn flow_checks(ctx: &Context, set: FormulaSet) -> Vec<Check> {
    let (times, phases) = flow_grid();
    let families = family_probes();
    tabulated_flows()
        .into_iter()
        .map(|(kind, family, sub)| {
            let (fam_name, probes) = &families[family];
            let mut residuals = Vec::new();
            for &probe in probes {
                let s = Scenario::new(kind, probe, sub, flow_params());
                for &t in &times {
                    for &phi in &phases {
                        let numeric = qfi_flow_numeric(&s, phi, t, &ctx.settings).expect("valid scenario");
                        // the grid avoids the csc/cot lattice
                        let closed = closed_form_flow_with(set, &s, phi, t).unwrap_or(f64::NAN);
                        residuals.push((numeric - closed).abs());
                    }
                }
            }
            let flavour = match (kind, family, set) {
                (_, 1, FormulaSet::Published) => "published sqrt form",
                (_, 1, FormulaSet::Rederived) => "re-derived sin(4wt) form",
                _ => "csc/cot form",
            };
            let name = kind.to_string().to_uppercase();
            Check::new(format!("{name} x {fam_name} (reduced): dF/dt, {flavour}"), residuals, ctx.tol.flow)
        })
        .collect()
}

pub fn suite_flow(ctx: &Context) -> SuiteReport {
    SuiteReport {
        name: "flow",
        summary: "numeric dF/dt against the published flows off the sin(2wt) = 0 lattice",
        checks: flow_checks(ctx, FormulaSet::Published),
    }
}

pub fn suite_flow_rederived(ctx: &Context) -> SuiteReport {
    SuiteReport {
        name: "flow-rederived",
        summary: "numeric dF/dt against the re-derived flows off the lattice",
        checks: flow_checks(ctx, FormulaSet::Rederived),
    }
}

pub fn suite_flow_sign(ctx: &Context) -> SuiteReport {
    let delta = 0.05;
    let s = Scenario::new(HamiltonianKind::H1, ProbeSpec::Werner1 { p: 1.0 }, Subsystem::ReducedA, flow_params());
    let flow_at = |t: f64| qfi_flow_numeric(&s, FRAC_PI_2, t, &ctx.settings).expect("valid scenario");
    let rising = linspace(delta, FRAC_PI_2 - delta, 100);
    let falling = linspace(FRAC_PI_2 + delta, PI - delta, 100);
    // residual: size of a wrong-signed value
    let up = rising.iter().map(|&t| (-flow_at(t)).max(0.0));
    let down = falling.iter().map(|&t| flow_at(t).max(0.0));

    let times = linspace(delta, PI - delta, 201);
    let flows: Vec<f64> = times.iter().map(|&t| flow_at(t)).collect();
    let windows = classify_markovianity(&times, &flows, 1e-6).expect("non-empty");
    let expected = [Regime::NonMarkovian, Regime::Markovian];
    let shape_ok = windows.len() == 2
        && windows.iter().zip(expected).all(|(w, r)| w.regime == r)
        && (windows[0].end - FRAC_PI_2).abs() < 2.0 * delta;

    SuiteReport {
        name: "flow-sign",
        summary: "reduced Werner1 under H1 at 2B = 1, phi = pi/2: backflow then decay",
        checks: vec![
            Check::new("flow > 0 on (0.05, pi/2 - 0.05)", up, 0.0),
            Check::new("flow < 0 on (pi/2 + 0.05, pi - 0.05)", down, 0.0),
            Check::new(
                "windows: (+) then (-), split near pi/2",
                [if shape_ok { 0.0 } else { 1.0 }],
                0.0,
            ),
        ],
    }
}

pub fn suite_vanishing(ctx: &Context) -> SuiteReport {
    let (times, phases) = (linspace(0.0, TAU, 11), linspace(0.0, PI, 11));
    let checks = [Subsystem::Full, Subsystem::ReducedA]
        .into_iter()
        .map(|sub| {
            let mut residuals = Vec::new();
            for p in werner_params() {
                let s = Scenario::new(HamiltonianKind::H2, ProbeSpec::Werner1 { p }, sub, base_params());
                for &t in &times {
                    for &phi in &phases {
                        residuals.push(
                            qfi(&s, phi, t, QfiMethod::SldPair, &ctx.settings)
                                .expect("valid scenario")
                                .value
                                .abs(),
                        );
                    }
                }
            }
            Check::new(format!("H2 x Werner1 ({sub}): |F|"), residuals, ctx.tol.vanishing)
        })
        .collect();
    SuiteReport {
        name: "vanishing",
        summary: "H2 carries no information about phi into Werner1 probes",
        checks,
    }
}

pub fn suite_h3_equals_h1(ctx: &Context) -> SuiteReport {
    let (times, phases) = (linspace(0.0, TAU, 11), linspace(0.0, PI, 11));
    let mut checks = Vec::new();
    for (name, probes) in family_probes() {
        for sub in [Subsystem::Full, Subsystem::ReducedA] {
            let mut residuals = Vec::new();
            for &probe in &probes {
                let h1 = Scenario::new(HamiltonianKind::H1, probe, sub, base_params());
                let h3 = h1.with_hamiltonian(HamiltonianKind::H3);
                for &t in &times {
                    for &phi in &phases {
                        let a = qfi(&h1, phi, t, QfiMethod::SldPair, &ctx.settings).expect("valid").value;
                        let b = qfi(&h3, phi, t, QfiMethod::SldPair, &ctx.settings).expect("valid").value;
                        residuals.push((a - b).abs());
                    }
                }
            }
            checks.push(Check::new(format!("{name} ({sub}): |F(H3) - F(H1)|"), residuals, ctx.tol.coincidence));
        }
    }
    SuiteReport {
        name: "h3-equals-h1",
        summary: "H3 gives the same QFI as H1",
        checks,
    }
}

pub fn suite_qcrb(_ctx: &Context) -> SuiteReport {
    let values = linspace(0.0, 4.0, 401);
    let mut residuals = Vec::new();
    for n in [1u64, 10, 1000] {
        for w in values.windows(2) {
            residuals.push((qcrb_bound(w[1], n) - qcrb_bound(w[0], n)).max(0.0));
        }
    }
    SuiteReport {
        name: "qcrb",
        summary: "the Cramer-Rao bound 1/(N F) is non-increasing in F",
        checks: vec![Check::new("bound increase between neighbouring F", residuals, 0.0)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_flags_nan() {
        let c = Check::new("x", [0.0, f64::NAN, 0.1], 1.0);
        assert!(!c.passed);
        assert_eq!(c.samples, 3);
        assert!(Check::new("y", [0.1, 0.3], 0.5).passed);
    }

    #[test]
    fn random_scenarios_are_reproducible() {
        let a = random_scenarios(3, 20);
        let b = random_scenarios(3, 20);
        assert_eq!(a, b);
        assert!(a.iter().all(|(s, _, _)| s.probe.validate().is_ok()));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let ctx = Context {
            tol: Tolerances::default(),
            settings: QfiSettings::default(),
        };
        assert!(run_suites(&ctx, &["nope".to_string()]).is_err());
        let only = run_suites(&ctx, &["tla".to_string(), "qcrb".to_string()]).unwrap();
        assert_eq!(only.len(), 2);
        assert!(only.iter().all(|r| r.passed()));
    }
}
