//! Probe states: Bell projectors, the two Werner-like families and the
//! Bell-diagonal family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{ComplexMatrix, C64, I, ONE, ZERO};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("{family}: p = {p} is outside [0, 1]")]
    MixingOutOfRange { family: &'static str, p: f64 },
    #[error("belldiag: bound {bound} violated (value {value})")]
    BellDiagonalBound { bound: &'static str, value: f64 },
    #[error("belldiag: coefficient {name} = {value} is outside [-1, 1]")]
    CoefficientOutOfRange { name: &'static str, value: f64 },
    #[error("cannot parse probe {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A probe family together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProbeSpec {
    /// `(1 - p) I/4 + p |b00><b00|`
    Werner1 { p: f64 },
    /// `p |b11><b11| + (1 - p)/2 (|b01><b01| + |b00><b00|)`
    Werner2 { p: f64 },
    /// `(I (x) I + sum_i c_i sigma_i (x) sigma_i) / 4`
    BellDiagonal { c1: f64, c2: f64, c3: f64 },
}

/// Human-readable names of the four eigenvalue bounds of the Bell-diagonal family.
const BELL_DIAGONAL_BOUNDS: [&str; 4] = [
    "(1-c1-c2-c3)/4 in [0,1]",
    "(1-c1+c2+c3)/4 in [0,1]",
    "(1+c1-c2+c3)/4 in [0,1]",
    "(1+c1+c2-c3)/4 in [0,1]",
];

/// Eigenvalues of the Bell-diagonal state on `|b11>, |b10>, |b00>, |b01>`.
pub fn bell_diagonal_weights(c1: f64, c2: f64, c3: f64) -> [f64; 4] {
    [
        0.25 * (1.0 - c1 - c2 - c3),
        0.25 * (1.0 - c1 + c2 + c3),
        0.25 * (1.0 + c1 - c2 + c3),
        0.25 * (1.0 + c1 + c2 - c3),
    ]
}

impl ProbeSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            ProbeSpec::Werner1 { .. } => "werner1",
            ProbeSpec::Werner2 { .. } => "werner2",
            ProbeSpec::BellDiagonal { .. } => "belldiag",
        }
    }

    /// Strict validity check; nothing is clamped.
    pub fn validate(&self) -> Result<(), StateError> {
        const SLACK: f64 = 1e-12;
        match *self {
            ProbeSpec::Werner1 { p } | ProbeSpec::Werner2 { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(StateError::MixingOutOfRange {
                        family: self.family_name(),
                        p,
                    });
                }
            }
            ProbeSpec::BellDiagonal { c1, c2, c3 } => {
                for (name, value) in [("c1", c1), ("c2", c2), ("c3", c3)] {
                    if !(-1.0..=1.0).contains(&value) {
                        return Err(StateError::CoefficientOutOfRange { name, value });
                    }
                }
                let weights = bell_diagonal_weights(c1, c2, c3);
                for (bound, value) in BELL_DIAGONAL_BOUNDS.iter().zip(weights) {
                    if !(-SLACK..=1.0 + SLACK).contains(&value) {
                        return Err(StateError::BellDiagonalBound { bound, value });
                    }
                }
            }
        }
        Ok(())
    }

    /// The probe's eigenvalues in ascending order.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut ev = match *self {
            ProbeSpec::Werner1 { p } => {
                let low = (1.0 - p) / 4.0;
                vec![(1.0 + 3.0 * p) / 4.0, low, low, low]
            }
            ProbeSpec::Werner2 { p } => vec![p, (1.0 - p) / 2.0, (1.0 - p) / 2.0, 0.0],
            ProbeSpec::BellDiagonal { c1, c2, c3 } => bell_diagonal_weights(c1, c2, c3).to_vec(),
        };
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn with_p(self, value: f64) -> Option<Self> {
        match self {
            ProbeSpec::Werner1 { .. } => Some(ProbeSpec::Werner1 { p: value }),
            ProbeSpec::Werner2 { .. } => Some(ProbeSpec::Werner2 { p: value }),
            ProbeSpec::BellDiagonal { .. } => None,
        }
    }

    /// Replaces one Bell-diagonal coefficient (`index` in 1..=3).
    pub fn with_c(self, index: usize, value: f64) -> Option<Self> {
        match self {
            ProbeSpec::BellDiagonal { c1, c2, c3 } => Some(match index {
                1 => ProbeSpec::BellDiagonal { c1: value, c2, c3 },
                2 => ProbeSpec::BellDiagonal { c1, c2: value, c3 },
                3 => ProbeSpec::BellDiagonal { c1, c2, c3: value },
                _ => return None,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for ProbeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeSpec::Werner1 { p } => write!(f, "werner1:p={p}"),
            ProbeSpec::Werner2 { p } => write!(f, "werner2:p={p}"),
            ProbeSpec::BellDiagonal { c1, c2, c3 } => {
                write!(f, "belldiag:c1={c1},c2={c2},c3={c3}")
            }
        }
    }
}

impl FromStr for ProbeSpec {
    type Err = StateError;

    /// Parses `werner1:p=0.5`, `werner2:p=0.25` or `belldiag:c1=0.9,c2=0,c3=0.1`.
    /// The parsed spec is validated.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| StateError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (family, rest) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| fail("expected <family>:<key>=<value>,..."))?;

        let mut values = Vec::new();
        for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| fail(&format!("missing '=' in {item:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| fail(&format!("{value:?} is not a number")))?;
            values.push((key.trim().to_ascii_lowercase(), value));
        }
        let get = |key: &str| -> Result<f64, StateError> {
            values
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| fail(&format!("missing key {key}")))
        };
        let expect_keys = |allowed: &[&str]| -> Result<(), StateError> {
            match values.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
                Some((k, _)) => Err(fail(&format!("unexpected key {k}"))),
                None => Ok(()),
            }
        };

        let spec = match family.trim().to_ascii_lowercase().as_str() {
            "werner1" => {
                expect_keys(&["p"])?;
                ProbeSpec::Werner1 { p: get("p")? }
            }
            "werner2" => {
                expect_keys(&["p"])?;
                ProbeSpec::Werner2 { p: get("p")? }
            }
            "belldiag" => {
                expect_keys(&["c1", "c2", "c3"])?;
                ProbeSpec::BellDiagonal {
                    c1: get("c1")?,
                    c2: get("c2")?,
                    c3: get("c3")?,
                }
            }
            other => return Err(fail(&format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `|b_xy> = (|0,y> + (-1)^x |1,not y>)/sqrt 2`.
pub fn bell_vector(x: u8, y: u8) -> [C64; 4] {
    assert!(x < 2 && y < 2, "Bell indices are bits");
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = [ZERO; 4];
    v[y as usize] = C64::new(s, 0.0);
    let sign = if x == 0 { 1.0 } else { -1.0 };
    v[2 + (1 - y as usize)] = C64::new(sign * s, 0.0);
    v
}

/// Projector onto the Bell state `|b_xy>`.
pub fn bell_state(x: u8, y: u8) -> ComplexMatrix {
    ComplexMatrix::projector(&bell_vector(x, y))
}

/// Pauli matrix `sigma_k` for `k` in 1..=3.
pub fn pauli(k: usize) -> ComplexMatrix {
    match k {
        1 => ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]),
        2 => ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]]),
        3 => ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]]),
        _ => panic!("Pauli index must be 1, 2 or 3"),
    }
}

/// Density matrix of a validated probe.
pub fn make_probe(spec: &ProbeSpec) -> Result<ComplexMatrix, StateError> {
    spec.validate()?;
    let id = ComplexMatrix::identity(4);
    Ok(match *spec {
        ProbeSpec::Werner1 { p } => &id.scale_real((1.0 - p) / 4.0) + &bell_state(0, 0).scale_real(p),
        ProbeSpec::Werner2 { p } => {
            let mixed = &bell_state(0, 1) + &bell_state(0, 0);
            &bell_state(1, 1).scale_real(p) + &mixed.scale_real((1.0 - p) / 2.0)
        }
        ProbeSpec::BellDiagonal { c1, c2, c3 } => {
            let mut acc = id;
            for (k, c) in [(1, c1), (2, c2), (3, c3)] {
                acc = &acc + &pauli(k).kron(&pauli(k)).scale_real(c);
            }
            acc.scale(ONE * 0.25)
        }
    })
}
