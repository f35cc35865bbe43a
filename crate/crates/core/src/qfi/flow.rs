//! QFI flow `dF/dt` and the Markovian / non-Markovian windows it defines.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{qfi, QfiError, QfiMethod, QfiSettings, Scenario};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("empty flow trace")]
    Empty,
    #[error("time grid has {times} points but {values} values were given")]
    LengthMismatch { times: usize, values: usize },
    #[error("time grid must be strictly increasing (t[{index}] = {value})")]
    NotIncreasing { index: usize, value: f64 },
    #[error("dead band must be non-negative, got {0}")]
    NegativeDeadBand(f64),
    #[error(transparent)]
    Qfi(#[from] QfiError),
}

/// Positive flow means information returning to the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Markovian,
    NonMarkovian,
}

impl Regime {
    pub fn sign(self) -> char {
        match self {
            Regime::Markovian => '-',
            Regime::NonMarkovian => '+',
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Markovian => "markovian",
            Regime::NonMarkovian => "non-markovian",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovWindow {
    pub start: f64,
    pub end: f64,
    pub regime: Regime,
}

/// Central difference in `t` of the pair-formula QFI.
pub fn qfi_flow_numeric(
    scenario: &Scenario,
    phi: f64,
    t: f64,
    settings: &QfiSettings,
) -> Result<f64, QfiError> {
    let h = settings.fd.time_step;
    if !(h > 0.0) {
        return Err(QfiError::InvalidStep(h));
    }
    let at = |x: f64| qfi(scenario, phi, x, QfiMethod::SldPair, settings).map(|s| s.value);
    Ok((at(t + h)? - at(t - h)?) / (2.0 * h))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowTrace {
    pub times: Vec<f64>,
    pub qfi: Vec<f64>,
    pub flow: Vec<f64>,
    pub windows: Vec<MarkovWindow>,
}

impl FlowTrace {
    /// Samples QFI and flow of `scenario` on `times`.
    pub fn compute(
        scenario: &Scenario,
        phi: f64,
        times: &[f64],
        settings: &QfiSettings,
        dead_band: f64,
    ) -> Result<Self, FlowError> {
        let mut qfi_values = Vec::with_capacity(times.len());
        let mut flow = Vec::with_capacity(times.len());
        for &t in times {
            qfi_values.push(qfi(scenario, phi, t, QfiMethod::SldPair, settings)?.value);
            flow.push(qfi_flow_numeric(scenario, phi, t, settings)?);
        }
        Self::from_parts(times.to_vec(), qfi_values, flow, dead_band)
    }

    pub fn from_parts(
        times: Vec<f64>,
        qfi: Vec<f64>,
        flow: Vec<f64>,
        dead_band: f64,
    ) -> Result<Self, FlowError> {
        if qfi.len() != times.len() {
            return Err(FlowError::LengthMismatch {
                times: times.len(),
                values: qfi.len(),
            });
        }
        let windows = classify_markovianity(&times, &flow, dead_band)?;
        Ok(Self {
            times,
            qfi,
            flow,
            windows,
        })
    }

    /// Builds the flow from a sampled QFI series by finite differences
    /// (central inside, one-sided at the ends).
    pub fn from_qfi_series(times: Vec<f64>, qfi: Vec<f64>, dead_band: f64) -> Result<Self, FlowError> {
        let n = times.len();
        if qfi.len() != n {
            return Err(FlowError::LengthMismatch {
                times: n,
                values: qfi.len(),
            });
        }
        check_grid(&times)?;
        let flow = (0..n)
            .map(|i| match (i, n) {
                (_, 1) => 0.0,
                (0, _) => (qfi[1] - qfi[0]) / (times[1] - times[0]),
                (i, n) if i == n - 1 => (qfi[i] - qfi[i - 1]) / (times[i] - times[i - 1]),
                (i, _) => (qfi[i + 1] - qfi[i - 1]) / (times[i + 1] - times[i - 1]),
            })
            .collect();
        Self::from_parts(times, qfi, flow, dead_band)
    }

    pub fn extrema(&self) -> Option<((f64, f64), (f64, f64))> {
        let pick = |better: fn(f64, f64) -> bool| {
            self.times
                .iter()
                .zip(&self.flow)
                .fold(None, |acc: Option<(f64, f64)>, (&t, &f)| match acc {
                    Some((_, g)) if !better(f, g) => acc,
                    _ => Some((t, f)),
                })
        };
        Some((pick(|a, b| a < b)?, pick(|a, b| a > b)?))
    }
}

fn check_grid(times: &[f64]) -> Result<(), FlowError> {
    if times.is_empty() {
        return Err(FlowError::Empty);
    }
    for (i, w) in times.windows(2).enumerate() {
        if !(w[1] > w[0]) {
            return Err(FlowError::NotIncreasing {
                index: i + 1,
                value: w[1],
            });
        }
    }
    Ok(())
}

/// Maximal runs where the flow stays above `+dead_band` (non-Markovian) or
/// below `-dead_band` (Markovian). Points inside the dead band join the
/// window that follows them; trailing ones are dropped.
pub fn classify_markovianity(
    times: &[f64],
    flow: &[f64],
    dead_band: f64,
) -> Result<Vec<MarkovWindow>, FlowError> {
    check_grid(times)?;
    if flow.len() != times.len() {
        return Err(FlowError::LengthMismatch {
            times: times.len(),
            values: flow.len(),
        });
    }
    if !(dead_band >= 0.0) {
        return Err(FlowError::NegativeDeadBand(dead_band));
    }
    let label = |f: f64| {
        if f > dead_band {
            Some(Regime::NonMarkovian)
        } else if f < -dead_band {
            Some(Regime::Markovian)
        } else {
            None
        }
    };

    let mut windows: Vec<MarkovWindow> = Vec::new();
    let mut pending: Option<f64> = None;
    for (&t, &f) in times.iter().zip(flow) {
        let Some(regime) = label(f) else {
            pending.get_or_insert(t);
            continue;
        };
        let start = pending.take().unwrap_or(t);
        match windows.last_mut() {
            Some(w) if w.regime == regime => w.end = t,
            _ => windows.push(MarkovWindow {
                start,
                end: t,
                regime,
            }),
        }
    }
    Ok(windows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::{HamiltonianKind, ModelParams};
    use crate::qfi::{closed_form_flow, Subsystem};
    use crate::states::ProbeSpec;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn werner1_reduced(p: f64) -> Scenario {
        Scenario::new(
            HamiltonianKind::H1,
            ProbeSpec::Werner1 { p },
            Subsystem::ReducedA,
            ModelParams::new(0.5, 0.3, 0.1),
        )
    }

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn decreasing_qfi_is_markovian() {
        let times = grid(0.0, 1.0, 11);
        let qfi: Vec<f64> = times.iter().map(|t| 1.0 - t * t).collect();
        let trace = FlowTrace::from_qfi_series(times, qfi, 1e-9).unwrap();
        // the flow at t = 0 is negative with the one-sided difference
        assert_eq!(trace.windows.len(), 1);
        assert_eq!(trace.windows[0].regime, Regime::Markovian);
    }

    #[test]
    fn constant_qfi_has_no_windows() {
        let times = grid(0.0, 2.0, 21);
        let trace = FlowTrace::from_qfi_series(times, vec![0.3; 21], 1e-9).unwrap();
        assert!(trace.windows.is_empty());
    }

    #[test]
    fn dead_band_points_join_the_next_window() {
        let times = grid(0.0, 6.0, 7);
        let flow = [0.0, 1.0, 1.0, 0.0, -1.0, -1.0, 0.0];
        let windows = classify_markovianity(&times, &flow, 1e-9).unwrap();
        assert_eq!(
            windows,
            vec![
                MarkovWindow {
                    start: 0.0,
                    end: 2.0,
                    regime: Regime::NonMarkovian
                },
                MarkovWindow {
                    start: 3.0,
                    end: 5.0,
                    regime: Regime::Markovian
                },
            ]
        );
    }

    #[test]
    fn classify_errors() {
        assert_eq!(classify_markovianity(&[], &[], 0.0), Err(FlowError::Empty));
        assert!(matches!(
            classify_markovianity(&[0.0, 0.0], &[1.0, 1.0], 0.0),
            Err(FlowError::NotIncreasing { .. })
        ));
        assert!(matches!(
            classify_markovianity(&[0.0, 1.0], &[1.0], 0.0),
            Err(FlowError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn numeric_flow_matches_closed_form() {
        let s = werner1_reduced(1.0);
        let settings = QfiSettings::default();
        for t in [0.3, 0.7, 1.1] {
            let numeric = qfi_flow_numeric(&s, FRAC_PI_2, t, &settings).unwrap();
            let closed = closed_form_flow(&s, FRAC_PI_2, t).unwrap();
            assert!((numeric - closed).abs() < 1e-5, "t = {t}: {numeric} vs {closed}");
        }
    }

    #[test]
    fn flow_vanishes_at_qfi_maximum() {
        let s = werner1_reduced(1.0);
        // F = sin^2(2Bt) peaks at 2Bt = pi/2, i.e. t = pi/2 for B = 1/2
        let f = qfi_flow_numeric(&s, FRAC_PI_2, FRAC_PI_2, &QfiSettings::default()).unwrap();
        assert!(f.abs() < 1e-5, "{f}");
    }

    #[test]
    fn flow_integrates_back() {
        let s = werner1_reduced(0.8);
        let settings = QfiSettings::default();
        let (t1, t2) = (0.2, 1.4);
        let times = grid(t1, t2, 1000);
        let flow: Vec<f64> = times
            .iter()
            .map(|&t| qfi_flow_numeric(&s, 1.1, t, &settings).unwrap())
            .collect();
        let dt = times[1] - times[0];
        let integral: f64 = flow.windows(2).map(|w| 0.5 * (w[0] + w[1]) * dt).sum();
        let f = |t| qfi(&s, 1.1, t, QfiMethod::SldPair, &settings).unwrap().value;
        assert!((f(t2) - f(t1) - integral).abs() < 1e-4);
    }

    #[test]
    fn werner1_reduced_windows() {
        let s = werner1_reduced(1.0);
        let times = grid(0.01, PI - 0.01, 201);
        let trace = FlowTrace::compute(&s, FRAC_PI_2, &times, &QfiSettings::default(), 1e-6).unwrap();
        assert_eq!(trace.windows.len(), 2);
        assert_eq!(trace.windows[0].regime, Regime::NonMarkovian);
        assert_eq!(trace.windows[1].regime, Regime::Markovian);
        assert!((trace.windows[0].end - FRAC_PI_2).abs() < 0.05);
        let ((_, lo), (_, hi)) = trace.extrema().unwrap();
        assert!(lo < 0.0 && hi > 0.0);
    }
}
