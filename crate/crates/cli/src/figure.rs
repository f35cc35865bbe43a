//! Grids behind the six published figures.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use ybqfi::{FormulaSet, HamiltonianKind, ModelParams, ProbeSpec, Scenario, Subsystem};

use crate::args::AxisName;
use crate::grid::{Axis, GridSpec};
use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct Panel {
    pub figure: u8,
    pub id: char,
    pub spec: GridSpec,
}

const BELL: ProbeSpec = ProbeSpec::BellDiagonal {
    c1: 0.9,
    c2: 0.0,
    c3: 0.1,
};

struct Builder {
    points: usize,
    formulas: FormulaSet,
    repetitions: u64,
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn panel(
        &self,
        figure: u8,
        id: char,
        title: &str,
        kind: HamiltonianKind,
        probe: ProbeSpec,
        subsystem: Subsystem,
        freq: f64,
        axes: [(AxisName, f64, f64); 2],
    ) -> Panel {
        // B and J share the frequency; each Hamiltonian only sees its own one
        let params = ModelParams::new(freq, freq, 0.0);
        Panel {
            figure,
            id,
            spec: GridSpec {
                title: format!("figure {figure}({id}): {title}"),
                scenario: Scenario::new(kind, probe, subsystem, params),
                axes: axes
                    .iter()
                    .map(|&(n, lo, hi)| Axis::new(n, lo, hi, self.points))
                    .collect(),
                phi: FRAC_PI_2,
                t: 1.0,
                formulas: self.formulas,
                repetitions: self.repetitions,
            },
        }
    }
}

/// All panels of figure `number`.
pub fn panels(
    number: u8,
    points: usize,
    formulas: FormulaSet,
    repetitions: u64,
) -> Result<Vec<Panel>, CliError> {
    use AxisName::{Phi, P, T};
    use HamiltonianKind::{H1, H2};
    use Subsystem::{Full, ReducedA};
    let b = Builder {
        points,
        formulas,
        repetitions,
    };
    let w1 = ProbeSpec::Werner1 { p: 0.5 };
    let w2 = ProbeSpec::Werner2 { p: 0.5 };
    let t_p = [(T, 0.0, TAU), (P, 0.0, 1.0)];
    let t_phi = [(T, 0.0, TAU), (Phi, 0.0, PI)];
    Ok(match number {
        1 => vec![
            b.panel(1, 'a', "QFI of Werner1 output under H1 vs Bt and p, B = 1", H1, w1, Full, 1.0, t_p),
            b.panel(1, 'b', "QFI of Werner2 output under H1 vs Bt and p, B = 1", H1, w2, Full, 1.0, t_p),
            b.panel(1, 'c', "QFI of Werner1 (p = 0.5) output under H1 vs Bt and phi, B = 1", H1, w1, Full, 1.0, t_phi),
            b.panel(1, 'd', "QFI of Werner2 (p = 0.5) output under H1 vs Bt and phi, B = 1", H1, w2, Full, 1.0, t_phi),
        ],
        2 => vec![
            b.panel(2, 'a', "QFI of Werner2 output under H2 vs p and Jt, J = 1", H2, w2, Full, 1.0, [(P, 0.0, 1.0), (T, 0.0, TAU)]),
            b.panel(
                2,
                'b',
                "QFI of Werner2 (p = 1) output under H2 vs phi and Jt, J = 1",
                H2,
                ProbeSpec::Werner2 { p: 1.0 },
                Full,
                1.0,
                [(Phi, 0.0, PI), (T, 0.0, TAU)],
            ),
        ],
        3 => vec![b.panel(3, 'a', "QFI of Bell-diagonal output under H1 vs Bt and phi, B = 1", H1, BELL, Full, 1.0, t_phi)],
        4 => vec![
            b.panel(4, 'a', "QFI of reduced Werner1 output under H1 vs Bt and p, B = 1", H1, w1, ReducedA, 1.0, t_p),
            b.panel(4, 'b', "QFI flow of reduced Werner1 output under H1 vs t and p, 2B = 1", H1, w1, ReducedA, 0.5, t_p),
            b.panel(4, 'c', "QFI of reduced Werner2 output under H1 vs t and p, 2B = 1", H1, w2, ReducedA, 0.5, t_p),
            b.panel(4, 'd', "QFI flow of reduced Werner2 output under H1 vs t and p, 2B = 1", H1, w2, ReducedA, 0.5, t_p),
        ],
        5 => vec![
            b.panel(5, 'a', "QFI of reduced Werner2 output under H2 vs Jt and p, J = 1", H2, w2, ReducedA, 1.0, t_p),
            b.panel(5, 'b', "QFI flow of reduced Werner2 output under H2 vs t and p, 2J = 1", H2, w2, ReducedA, 0.5, t_p),
        ],
        6 => vec![
            b.panel(6, 'a', "QFI of reduced Bell-diagonal output under H1 vs Bt and phi, B = 1", H1, BELL, ReducedA, 1.0, t_phi),
            b.panel(6, 'b', "QFI flow of reduced Bell-diagonal output under H1 vs t and phi, 2B = 1", H1, BELL, ReducedA, 0.5, t_phi),
            b.panel(6, 'c', "QFI of reduced Bell-diagonal output under H2 vs Jt and phi, J = 1", H2, BELL, ReducedA, 1.0, t_phi),
            b.panel(6, 'd', "QFI flow of reduced Bell-diagonal output under H2 vs t and phi, 2J = 1", H2, BELL, ReducedA, 0.5, t_phi),
        ],
        n => return Err(CliError::Usage(format!("figure must be 1 to 6, got {n}"))),
    })
}

/// Panels of figure `number`, narrowed to `panel` when given.
pub fn select(
    number: u8,
    panel: Option<char>,
    points: usize,
    formulas: FormulaSet,
    repetitions: u64,
) -> Result<Vec<Panel>, CliError> {
    let all = panels(number, points, formulas, repetitions)?;
    match panel {
        None => Ok(all),
        Some(id) => {
            let id = id.to_ascii_lowercase();
            let ids: String = all.iter().map(|p| p.id).collect();
            let chosen: Vec<Panel> = all.into_iter().filter(|p| p.id == id).collect();
            if chosen.is_empty() {
                Err(CliError::Usage(format!(
                    "figure {number} has panels {ids}, not {id:?}"
                )))
            } else {
                Ok(chosen)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_panel_is_a_valid_grid() {
        for n in 1..=6 {
            for p in panels(n, 5, FormulaSet::Published, 1).unwrap() {
                p.spec.validate().unwrap();
                assert_eq!(p.figure, n);
            }
        }
        assert!(panels(7, 5, FormulaSet::Published, 1).is_err());
    }

    #[test]
    fn panel_selection() {
        assert_eq!(select(4, Some('d'), 5, FormulaSet::Published, 1).unwrap().len(), 1);
        assert_eq!(select(4, None, 5, FormulaSet::Published, 1).unwrap().len(), 4);
        assert!(select(3, Some('b'), 5, FormulaSet::Published, 1).is_err());
    }
}
