//! Spin operators, the bare Hamiltonian `H0` and the three Yang-Baxterized
//! Hamiltonians obtained by conjugating `H0` with the R-matrices.
//!
//! Conventions: basis order `|00>, |01>, |10>, |11>`, `|0>` is spin-up,
//! `S^z = diag(1/2, -1/2)`, `S^+ = |0><1|`, site 1 is the left Kronecker factor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{ComplexMatrix, C64, I};
use crate::yang_baxter::{r_matrix, Sign, TlKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("site must be 1 or 2, got {0}")]
    InvalidSite(usize),
    #[error("model parameter {name} is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("unknown Hamiltonian kind {0:?} (expected h0, h1, h2 or h3)")]
    UnknownKind(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinComponent {
    Z,
    Plus,
    Minus,
}

/// Single-site spin matrix in the two-dimensional space.
pub fn single_site(which: SpinComponent) -> ComplexMatrix {
    match which {
        SpinComponent::Z => ComplexMatrix::from_real_diag(&[0.5, -0.5]),
        SpinComponent::Plus => ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]]),
        SpinComponent::Minus => ComplexMatrix::from_real_rows([[0.0, 0.0], [1.0, 0.0]]),
    }
}

/// Spin operator of `site` (1 or 2) embedded in the two-qubit space.
pub fn spin_operator(site: usize, which: SpinComponent) -> Result<ComplexMatrix, ModelError> {
    let s = single_site(which);
    let id = ComplexMatrix::identity(2);
    match site {
        1 => Ok(s.kron(&id)),
        2 => Ok(id.kron(&s)),
        other => Err(ModelError::InvalidSite(other)),
    }
}

/// Shorthand for the two-site products `S_1^a S_2^b`.
pub(crate) fn pair(a: SpinComponent, b: SpinComponent) -> ComplexMatrix {
    single_site(a).kron(&single_site(b))
}

pub(crate) fn sz_sum() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0, -1.0])
}

pub(crate) fn sz_diff() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[0.0, 1.0, -1.0, 0.0])
}

pub(crate) fn sz_sz() -> ComplexMatrix {
    pair(SpinComponent::Z, SpinComponent::Z)
}

/// Parameters of the two-spin model, with `hbar = 1`.
///
/// `b` and `j` are the mean and half-difference of the site fields,
/// `g` the z-z coupling, and `theta`, `phi`, `eps` the Yang-Baxterization
/// parameters. Zero `b` or `j` is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub b: f64,
    pub j: f64,
    pub g: f64,
    pub theta: f64,
    pub phi: f64,
    pub eps: Sign,
}

impl ModelParams {
    /// `theta = pi/2`, `phi = 0`, `eps = +1`.
    pub fn new(b: f64, j: f64, g: f64) -> Self {
        Self {
            b,
            j,
            g,
            theta: std::f64::consts::FRAC_PI_2,
            phi: 0.0,
            eps: Sign::Plus,
        }
    }

    /// From the individual site fields `mu1`, `mu2`.
    pub fn from_fields(mu1: f64, mu2: f64, g: f64) -> Self {
        Self::new((mu1 + mu2) / 2.0, (mu1 - mu2) / 2.0, g)
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    pub fn with_eps(mut self, eps: Sign) -> Self {
        self.eps = eps;
        self
    }

    pub fn mu1(&self) -> f64 {
        self.b + self.j
    }

    pub fn mu2(&self) -> f64 {
        self.b - self.j
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, value) in [
            ("B", self.b),
            ("J", self.j),
            ("g", self.g),
            ("theta", self.theta),
            ("phi", self.phi),
        ] {
            if !value.is_finite() {
                return Err(ModelError::NonFinite { name, value });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HamiltonianKind {
    H0,
    H1,
    H2,
    H3,
}

impl HamiltonianKind {
    /// The R-matrix family that generates this Hamiltonian from `H0`.
    pub fn tl_kind(self) -> Option<TlKind> {
        match self {
            HamiltonianKind::H0 => None,
            HamiltonianKind::H1 => Some(TlKind::U1),
            HamiltonianKind::H2 => Some(TlKind::U2),
            HamiltonianKind::H3 => Some(TlKind::U3),
        }
    }
}

impl fmt::Display for HamiltonianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HamiltonianKind::H0 => "h0",
            HamiltonianKind::H1 => "h1",
            HamiltonianKind::H2 => "h2",
            HamiltonianKind::H3 => "h3",
        };
        f.write_str(s)
    }
}

impl FromStr for HamiltonianKind {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "h0" => Ok(HamiltonianKind::H0),
            "h1" => Ok(HamiltonianKind::H1),
            "h2" => Ok(HamiltonianKind::H2),
            "h3" => Ok(HamiltonianKind::H3),
            _ => Err(ModelError::UnknownKind(s.to_string())),
        }
    }
}

/// `H0 = mu1 S1z + mu2 S2z + g S1z S2z`, i.e.
/// `diag(B + g/4, J - g/4, -J - g/4, -B + g/4)`.
pub fn h0(params: &ModelParams) -> ComplexMatrix {
    let s1z = spin_operator(1, SpinComponent::Z).expect("site 1");
    let s2z = spin_operator(2, SpinComponent::Z).expect("site 2");
    let h = &s1z.scale_real(params.mu1()) + &s2z.scale_real(params.mu2());
    &h + &sz_sz().scale_real(params.g)
}

/// The Yang-Baxterized Hamiltonian of the given kind, written term by term.
///
/// `H0` is returned unchanged for [`HamiltonianKind::H0`].
pub fn h_yangbaxterized(kind: HamiltonianKind, params: &ModelParams) -> ComplexMatrix {
    use SpinComponent::{Minus, Plus};
    let ModelParams {
        b,
        j,
        g,
        theta,
        phi,
        eps,
    } = *params;
    let (cos_t, sin_t) = (theta.cos(), theta.sin());
    let e_plus = C64::from_polar(1.0, phi);
    let e_minus = C64::from_polar(1.0, -phi);

    // e^{i phi} A - e^{-i phi} A^dag
    let twisted = |a: SpinComponent, bb: SpinComponent, adj_a, adj_b| {
        &pair(a, bb).scale(e_plus) - &pair(adj_a, adj_b).scale(e_minus)
    };
    let zz = sz_sz().scale_real(g);

    match kind {
        HamiltonianKind::H0 => h0(params),
        HamiltonianKind::H1 => {
            let diag = &(&sz_sum().scale_real(b * cos_t) + &sz_diff().scale_real(j)) + &zz;
            &diag + &twisted(Plus, Plus, Minus, Minus).scale(I * b * sin_t)
        }
        HamiltonianKind::H2 => {
            let diag = &(&sz_sum().scale_real(b) + &sz_diff().scale_real(j * cos_t)) + &zz;
            &diag + &twisted(Plus, Minus, Minus, Plus).scale(I * j * sin_t)
        }
        HamiltonianKind::H3 => {
            let diag = &(&sz_sum().scale_real(b * cos_t) + &sz_diff().scale_real(j * cos_t)) + &zz;
            let flip = &twisted(Plus, Plus, Minus, Minus).scale(-I * b * sin_t);
            let exchange =
                (&pair(Plus, Minus) + &pair(Minus, Plus)).scale_real(eps.value() * j * sin_t);
            &(&diag + flip) + &exchange
        }
    }
}

/// `||H_k(theta, phi) - R_k H0 R_k^dag||_F`.
pub fn verify_conjugation(kind: TlKind, params: &ModelParams) -> f64 {
    let r = r_matrix(kind, params.theta, params.phi, params.eps);
    let conj = &(&r * &h0(params)) * &r.adjoint();
    let h = h_yangbaxterized(kind.hamiltonian(), params);
    h.frobenius_distance(&conj).expect("4x4")
}
