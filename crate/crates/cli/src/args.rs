use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ybqfi::{FormulaSet, HamiltonianKind, ModelParams, ProbeSpec, Scenario, Sign, Subsystem, Tolerances};

use crate::CliError;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "yb-qfi",
    version,
    about = "Quantum Fisher information of Yang-Baxterized two-qubit dynamics"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Grid points per axis.
    #[arg(long, global = true, default_value_t = 101)]
    pub points: usize,
    /// Emit JSON instead of text or CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Exit with status 3 when numerical warnings were raised.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Number of repetitions N in the Cramer-Rao bound 1/(N F).
    #[arg(long, global = true, default_value_t = 1)]
    pub repetitions: u64,
    /// Output file; figures with several panels write `<stem>-<panel>.<ext>`.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Closed-form expressions used for comparison columns.
    #[arg(long, global = true, value_enum, default_value_t = Formulas::Published)]
    pub formulas: Formulas,
    #[arg(long = "tol-algebra", global = true, value_name = "TOL")]
    pub tol_algebra: Option<f64>,
    #[arg(long = "tol-eigen", global = true, value_name = "TOL")]
    pub tol_eigen: Option<f64>,
    #[arg(long = "tol-routes", global = true, value_name = "TOL")]
    pub tol_routes: Option<f64>,
    #[arg(long = "tol-closed-form", global = true, value_name = "TOL")]
    pub tol_closed_form: Option<f64>,
    #[arg(long = "tol-flow", global = true, value_name = "TOL")]
    pub tol_flow: Option<f64>,
    #[arg(long = "tol-vanishing", global = true, value_name = "TOL")]
    pub tol_vanishing: Option<f64>,
    #[arg(long = "tol-coincidence", global = true, value_name = "TOL")]
    pub tol_coincidence: Option<f64>,
}

impl GlobalArgs {
    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        let overrides = [
            ("--tol-algebra", self.tol_algebra, &mut tol.algebra),
            ("--tol-eigen", self.tol_eigen, &mut tol.eigen),
            ("--tol-routes", self.tol_routes, &mut tol.routes),
            ("--tol-closed-form", self.tol_closed_form, &mut tol.closed_form),
            ("--tol-flow", self.tol_flow, &mut tol.flow),
            ("--tol-vanishing", self.tol_vanishing, &mut tol.vanishing),
            ("--tol-coincidence", self.tol_coincidence, &mut tol.coincidence),
        ];
        for (flag, value, slot) in overrides {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::Usage(format!("{flag} must be a positive number, got {v}")));
                }
                *slot = v;
            }
        }
        Ok(tol)
    }

    pub fn check_points(&self) -> Result<(), CliError> {
        if self.points < 2 {
            return Err(CliError::Usage(format!("--points must be at least 2, got {}", self.points)));
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formulas {
    Published,
    Rederived,
}

impl From<Formulas> for FormulaSet {
    fn from(f: Formulas) -> Self {
        match f {
            Formulas::Published => FormulaSet::Published,
            Formulas::Rederived => FormulaSet::Rederived,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run the verification suites and report the worst residual of each.
    Verify(VerifyArgs),
    /// Write the data behind one of the six figures as CSV.
    Figure(FigureArgs),
    /// Evaluate QFI, closed form, flow and Cramer-Rao bound on a grid.
    Sweep(SweepArgs),
    /// Report the QFI flow over a time range and its Markovianity windows.
    Flow(FlowArgs),
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Comma-separated subset of suites to run.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// List the available suites and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Clone)]
pub struct FigureArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
    pub number: u8,
    /// Single panel (a, b, c or d); all panels by default.
    #[arg(long)]
    pub panel: Option<char>,
}

#[derive(Args, Debug, Clone)]
pub struct ScenarioArgs {
    #[arg(long = "ham", default_value = "h1")]
    pub hamiltonian: HamiltonianKind,
    /// Probe, e.g. `werner1:p=0.5`, `werner2:p=0.25`, `belldiag:c1=0.9,c2=0,c3=0.1`.
    #[arg(long)]
    pub probe: ProbeSpec,
    #[arg(long, default_value = "full")]
    pub subsystem: Subsystem,
    #[arg(long, short = 'B', default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, short = 'J', default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long, short = 'g', default_value_t = 0.0, allow_negative_numbers = true)]
    pub g: f64,
    #[arg(long, default_value_t = FRAC_PI_2, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value = "+")]
    pub eps: SignArg,
}

impl ScenarioArgs {
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let params = ModelParams::new(self.b, self.j, self.g)
            .with_theta(self.theta)
            .with_eps(self.eps.0);
        let s = Scenario::new(self.hamiltonian, self.probe, self.subsystem, params);
        s.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignArg(pub Sign);

impl FromStr for SignArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(SignArg(Sign::Plus)),
            "-" | "-1" | "minus" => Ok(SignArg(Sign::Minus)),
            other => Err(format!("expected + or -, got {other:?}")),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Grid axis `name=min:max[:count]` with name one of t, phi, p, c1, c2, c3.
    /// Give one or two.
    #[arg(long = "axis", required = true)]
    pub axes: Vec<AxisSpec>,
    /// Phase used when phi is not an axis.
    #[arg(long, default_value_t = FRAC_PI_2, allow_negative_numbers = true)]
    pub phi: f64,
    /// Time used when t is not an axis.
    #[arg(long, short = 't', default_value_t = 1.0, allow_negative_numbers = true)]
    pub t: f64,
}

#[derive(Args, Debug, Clone)]
pub struct FlowArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Time range `min:max`.
    #[arg(long = "t-range", default_value_t = RangeSpec { min: 0.0, max: PI })]
    pub t_range: RangeSpec,
    #[arg(long, default_value_t = FRAC_PI_2, allow_negative_numbers = true)]
    pub phi: f64,
    /// Flow values with magnitude below this do not open a window.
    #[arg(long = "dead-band", default_value_t = 1e-6)]
    pub dead_band: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxisName {
    T,
    Phi,
    P,
    C1,
    C2,
    C3,
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisName::T => "t",
            AxisName::Phi => "phi",
            AxisName::P => "p",
            AxisName::C1 => "c1",
            AxisName::C2 => "c2",
            AxisName::C3 => "c3",
        })
    }
}

impl FromStr for AxisName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "t" => AxisName::T,
            "phi" => AxisName::Phi,
            "p" => AxisName::P,
            "c1" => AxisName::C1,
            "c2" => AxisName::C2,
            "c3" => AxisName::C3,
            other => return Err(format!("unknown axis {other:?} (expected t, phi, p, c1, c2 or c3)")),
        })
    }
}

/// Axis as given on the command line; the count falls back to `--points`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisSpec {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub count: Option<usize>,
}

impl FromStr for AxisSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, range) = s
            .split_once('=')
            .ok_or_else(|| format!("expected name=min:max[:count], got {s:?}"))?;
        let name: AxisName = name.parse()?;
        let parts: Vec<&str> = range.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(format!("expected min:max[:count] for axis {name}, got {range:?}"));
        }
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number {x:?} in axis {name}"))
        };
        let count = match parts.get(2) {
            Some(c) => Some(
                c.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad point count {c:?} in axis {name}"))?,
            ),
            None => None,
        };
        Ok(AxisSpec {
            name,
            min: num(parts[0])?,
            max: num(parts[1])?,
            count,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.min, self.max)
    }
}

impl FromStr for RangeSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected min:max, got {s:?}"))?;
        let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("bad number {x:?}"));
        Ok(RangeSpec {
            min: num(a)?,
            max: num(b)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        let a: AxisSpec = "t=0:6.5:11".parse().unwrap();
        assert_eq!(
            a,
            AxisSpec {
                name: AxisName::T,
                min: 0.0,
                max: 6.5,
                count: Some(11)
            }
        );
        let b: AxisSpec = "phi=-1:1".parse().unwrap();
        assert_eq!(b.count, None);
        assert!("q=0:1".parse::<AxisSpec>().is_err());
        assert!("t=0".parse::<AxisSpec>().is_err());
        assert!("t=0:1:x".parse::<AxisSpec>().is_err());
    }

    #[test]
    fn range_and_sign_parsing() {
        assert_eq!("0:3".parse::<RangeSpec>().unwrap(), RangeSpec { min: 0.0, max: 3.0 });
        assert_eq!("-".parse::<SignArg>().unwrap(), SignArg(Sign::Minus));
        assert!("x".parse::<SignArg>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
