//! Temperley-Lieb generators, the Yang-Baxterized R-matrices built from them,
//! and residual checks for the algebraic relations they are expected to obey.
//!
//! The `check_*` functions return Frobenius residuals rather than booleans; the
//! thresholds belong to the caller.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hamiltonians::{pair, sz_sz, HamiltonianKind, SpinComponent};
use crate::linalg::{ComplexMatrix, C64, I, ONE, ZERO};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum YbeError {
    #[error("three-site position must be 1 or 2, got {0}")]
    InvalidPosition(usize),
    #[error("expected a 4x4 two-site operator, got {0}x{0}")]
    NotTwoSite(usize),
    #[error("spectral parameter is not finite ({0})")]
    NonFiniteParameter(f64),
    #[error("combined spectral parameter {0} is not real")]
    NonRealCombination(C64),
    #[error("combined spectral parameter is singular (1 + beta^2 mu nu = 0)")]
    SingularCombination,
}

/// The sign `eps = +-1` entering the third generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Which Temperley-Lieb generator (and hence which R-matrix family).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TlKind {
    U1,
    U2,
    U3,
}

impl TlKind {
    pub const ALL: [TlKind; 3] = [TlKind::U1, TlKind::U2, TlKind::U3];

    /// The loop value `d` in `U^2 = d U`.
    pub fn loop_value(self) -> f64 {
        match self {
            TlKind::U1 | TlKind::U2 => 2.0,
            TlKind::U3 => SQRT_2,
        }
    }

    pub fn hamiltonian(self) -> HamiltonianKind {
        match self {
            TlKind::U1 => HamiltonianKind::H1,
            TlKind::U2 => HamiltonianKind::H2,
            TlKind::U3 => HamiltonianKind::H3,
        }
    }
}

impl fmt::Display for TlKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TlKind::U1 => "1",
            TlKind::U2 => "2",
            TlKind::U3 => "3",
        })
    }
}

/// Hermitian Temperley-Lieb generator of the given kind.
pub fn tl_generator(kind: TlKind, phi: f64, eps: Sign) -> ComplexMatrix {
    let e = C64::from_polar(1.0, phi);
    match kind {
        TlKind::U1 => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, e],
            [ZERO, ZERO, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ZERO],
            [e.conj(), ZERO, ZERO, ONE],
        ]),
        TlKind::U2 => ComplexMatrix::from_rows([
            [ZERO, ZERO, ZERO, ZERO],
            [ZERO, ONE, e, ZERO],
            [ZERO, e.conj(), ONE, ZERO],
            [ZERO, ZERO, ZERO, ZERO],
        ]),
        TlKind::U3 => {
            let ie = I * eps.value();
            ComplexMatrix::from_rows([
                [ONE, ZERO, ZERO, e],
                [ZERO, ONE, ie, ZERO],
                [ZERO, -ie, ONE, ZERO],
                [e.conj(), ZERO, ZERO, ONE],
            ])
            .scale_real(1.0 / SQRT_2)
        }
    }
}

/// Places a two-site operator on sites (1,2) or (2,3) of a three-site chain.
pub fn embed_three_site(m: &ComplexMatrix, position: usize) -> Result<ComplexMatrix, YbeError> {
    if m.dim() != 4 {
        return Err(YbeError::NotTwoSite(m.dim()));
    }
    let id = ComplexMatrix::identity(2);
    match position {
        1 => Ok(m.kron(&id)),
        2 => Ok(id.kron(m)),
        other => Err(YbeError::InvalidPosition(other)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TlaResidual {
    /// `||E1 E2 E1 - E1||_F`
    pub braid: f64,
    /// `||U^2 - d U||_F`
    pub loop_relation: f64,
}

impl TlaResidual {
    pub fn max(&self) -> f64 {
        self.braid.max(self.loop_relation)
    }
}

/// Temperley-Lieb residuals of an arbitrary 4x4 operator with loop value `d`.
pub fn tla_residuals(u: &ComplexMatrix, d: f64) -> Result<TlaResidual, YbeError> {
    let e1 = embed_three_site(u, 1)?;
    let e2 = embed_three_site(u, 2)?;
    let braid = (&(&e1 * &e2) * &e1).frobenius_distance(&e1).expect("8x8");
    let loop_relation = (u * u).frobenius_distance(&u.scale_real(d)).expect("4x4");
    Ok(TlaResidual {
        braid,
        loop_relation,
    })
}

pub fn check_tla(kind: TlKind, phi: f64, eps: Sign) -> TlaResidual {
    tla_residuals(&tl_generator(kind, phi, eps), kind.loop_value()).expect("generator is 4x4")
}

/// R-matrix of the given family, assembled from the spin-operator expansion.
pub fn r_matrix(kind: TlKind, theta: f64, phi: f64, eps: Sign) -> ComplexMatrix {
    use SpinComponent::{Minus, Plus};
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e_plus = C64::from_polar(1.0, phi);
    let e_minus = C64::from_polar(1.0, -phi);
    let id = ComplexMatrix::identity(4);
    let flip_both = &pair(Plus, Plus).scale(e_plus) + &pair(Minus, Minus).scale(e_minus);

    match kind {
        TlKind::U1 => {
            let diag = &id.scale(C64::new(c, s / 2.0)) - &sz_sz().scale(I * 2.0 * s);
            &diag - &flip_both.scale(I * s)
        }
        TlKind::U2 => {
            let diag = &id.scale(C64::new(c, s / 2.0)) + &sz_sz().scale(I * 2.0 * s);
            let exchange = &pair(Plus, Minus).scale(e_plus) + &pair(Minus, Plus).scale(e_minus);
            &diag - &exchange.scale(I * s)
        }
        TlKind::U3 => {
            let exchange = &pair(Plus, Minus) - &pair(Minus, Plus);
            &(&id.scale_real(-c) - &flip_both.scale(I * s)) + &exchange.scale_real(eps.value() * s)
        }
    }
}

/// Least-squares fit `R ~ a I + b U`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TlFit {
    pub a: C64,
    pub b: C64,
    pub residual: f64,
}

pub fn tl_decompose(kind: TlKind, theta: f64, phi: f64, eps: Sign) -> TlFit {
    let r = r_matrix(kind, theta, phi, eps);
    let u = tl_generator(kind, phi, eps);
    let id = ComplexMatrix::identity(4);
    let ud = u.adjoint();

    // normal equations in the (I, U) span under the Frobenius inner product
    let g00 = C64::new(4.0, 0.0);
    let g01 = u.trace();
    let g10 = ud.trace();
    let g11 = (&ud * &u).trace();
    let r0 = r.trace();
    let r1 = (&ud * &r).trace();
    let det = g00 * g11 - g01 * g10;
    let a = (r0 * g11 - g01 * r1) / det;
    let b = (g00 * r1 - g10 * r0) / det;

    let fit = &id.scale(a) + &u.scale(b);
    TlFit {
        a,
        b,
        residual: r.frobenius_distance(&fit).expect("4x4"),
    }
}

/// `||(R x I)(I x R)(R x I) - (I x R)(R x I)(I x R)||_F` for an arbitrary 4x4 `R`.
pub fn braid_residual(r: &ComplexMatrix) -> Result<f64, YbeError> {
    let e1 = embed_three_site(r, 1)?;
    let e2 = embed_three_site(r, 2)?;
    let lhs = &(&e1 * &e2) * &e1;
    let rhs = &(&e2 * &e1) * &e2;
    Ok(lhs.frobenius_distance(&rhs).expect("8x8"))
}

pub fn check_braid_ybe(kind: TlKind, theta: f64, phi: f64, eps: Sign) -> f64 {
    braid_residual(&r_matrix(kind, theta, phi, eps)).expect("R is 4x4")
}

/// Rule combining two spectral parameters into the middle factor's parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Combiner {
    /// `mu + nu`
    Additive,
    /// `(mu + nu) / (1 + beta^2 mu nu)` with caller-supplied `beta`.
    Moebius { beta: C64 },
}

impl Combiner {
    pub fn combine(&self, mu: f64, nu: f64) -> Result<f64, YbeError> {
        match *self {
            Combiner::Additive => Ok(mu + nu),
            Combiner::Moebius { beta } => {
                let denom = ONE + beta * beta * (mu * nu);
                if denom.norm() == 0.0 {
                    return Err(YbeError::SingularCombination);
                }
                let z = C64::new(mu + nu, 0.0) / denom;
                if z.im.abs() > 1e-12 * z.norm().max(1.0) {
                    return Err(YbeError::NonRealCombination(z));
                }
                Ok(z.re)
            }
        }
    }
}

/// Maps a spectral parameter to the angle: `cos theta = (1 - mu^2)/(1 + mu^2)`
/// for the first two kinds and `cos theta = 1/cosh mu` for the third. The sign
/// of `theta` follows the sign of `mu`.
pub fn spectral_to_theta(kind: TlKind, mu: f64) -> Result<f64, YbeError> {
    if !mu.is_finite() {
        return Err(YbeError::NonFiniteParameter(mu));
    }
    Ok(match kind {
        TlKind::U1 | TlKind::U2 => 2.0 * mu.atan(),
        TlKind::U3 => mu.sinh().atan(),
    })
}

/// Residual of `R1(mu) R2(mu*nu) R1(nu) = R2(nu) R1(mu*nu) R2(mu)` where `*` is
/// the chosen combiner and `Ri` places `R` on sites (i, i+1).
pub fn check_parameterized_ybe(
    kind: TlKind,
    mu: f64,
    nu: f64,
    phi: f64,
    eps: Sign,
    combiner: Combiner,
) -> Result<f64, YbeError> {
    let combined = combiner.combine(mu, nu)?;
    let r_of = |x: f64| -> Result<ComplexMatrix, YbeError> {
        Ok(r_matrix(kind, spectral_to_theta(kind, x)?, phi, eps))
    };
    let (r_mu, r_nu, r_mid) = (r_of(mu)?, r_of(nu)?, r_of(combined)?);
    let lhs = &(&embed_three_site(&r_mu, 1)? * &embed_three_site(&r_mid, 2)?)
        * &embed_three_site(&r_nu, 1)?;
    let rhs = &(&embed_three_site(&r_nu, 2)? * &embed_three_site(&r_mid, 1)?)
        * &embed_three_site(&r_mu, 2)?;
    Ok(lhs.frobenius_distance(&rhs).expect("8x8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, PI};

    fn grid(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |k| 2.0 * PI * k as f64 / n as f64)
    }

    #[test]
    fn generator_u1_entries() {
        let phi = 0.83;
        let u = tl_generator(TlKind::U1, phi, Sign::Plus);
        let e = C64::from_polar(1.0, phi);
        for i in 0..4 {
            for j in 0..4 {
                let expected = match (i, j) {
                    (0, 0) | (3, 3) => ONE,
                    (0, 3) => e,
                    (3, 0) => e.conj(),
                    _ => ZERO,
                };
                assert_eq!(u[(i, j)], expected, "({i},{j})");
            }
        }
    }

    #[test]
    fn generator_u3_entries() {
        let phi = 1.1;
        let u = tl_generator(TlKind::U3, phi, Sign::Plus);
        let e = C64::from_polar(1.0, phi);
        let expected = ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, e],
            [ZERO, ONE, I, ZERO],
            [ZERO, -I, ONE, ZERO],
            [e.conj(), ZERO, ZERO, ONE],
        ])
        .scale_real(1.0 / SQRT_2);
        assert!(u.frobenius_distance(&expected).unwrap() < 1e-16);
    }

    #[test]
    fn generator_u2_at_zero_phase() {
        let u = tl_generator(TlKind::U2, 0.0, Sign::Plus);
        let expected = ComplexMatrix::from_real_rows([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 1.0, 0.0],
            [0.0, 1.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(u, expected);
    }

    #[test]
    fn embedding() {
        assert_eq!(
            embed_three_site(&ComplexMatrix::identity(4), 1).unwrap(),
            ComplexMatrix::identity(8)
        );
        assert_eq!(
            embed_three_site(&ComplexMatrix::identity(4), 3),
            Err(YbeError::InvalidPosition(3))
        );
        assert_eq!(
            embed_three_site(&ComplexMatrix::identity(2), 1),
            Err(YbeError::NotTwoSite(2))
        );

        // I2 (x) U1: the lower-right 4x4 block is U1 itself
        let u = tl_generator(TlKind::U1, 0.4, Sign::Plus);
        let e = embed_three_site(&u, 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(e[(4 + i, 4 + j)], u[(i, j)]);
                assert_eq!(e[(i, 4 + j)], ZERO);
            }
        }

        // sites overlap, so the two placements do not commute in general
        let a = embed_three_site(&u, 1).unwrap();
        assert!(a.commutator(&e).frobenius_norm() > 1e-3);
    }

    #[test]
    fn tla_examples() {
        let r = check_tla(TlKind::U1, 0.7, Sign::Plus);
        assert!(r.braid <= 1e-12 && r.loop_relation <= 1e-12);
        let r = check_tla(TlKind::U3, 1.3, Sign::Minus);
        assert!(r.braid <= 1e-12 && r.loop_relation <= 1e-12);

        let perturbed = &tl_generator(TlKind::U1, 0.7, Sign::Plus)
            + &ComplexMatrix::identity(4).scale_real(0.01);
        let r = tla_residuals(&perturbed, 2.0).unwrap();
        assert!(r.loop_relation > 1e-3);
    }

    #[test]
    fn generators_on_phase_grid() {
        for kind in TlKind::ALL {
            for eps in [Sign::Plus, Sign::Minus] {
                for phi in grid(32) {
                    let u = tl_generator(kind, phi, eps);
                    assert!(u.hermiticity_residual() <= 1e-14);
                    let r = check_tla(kind, phi, eps);
                    assert!(r.max() <= 1e-12, "{kind} {eps} {phi}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn r_matrix_special_values() {
        let id = ComplexMatrix::identity(4);
        assert!(r_matrix(TlKind::U1, 0.0, 0.3, Sign::Plus)
            .frobenius_distance(&id)
            .unwrap()
            < 1e-15);
        assert!(r_matrix(TlKind::U3, 0.0, 0.3, Sign::Plus)
            .frobenius_distance(&id.scale_real(-1.0))
            .unwrap()
            < 1e-15);
    }

    #[test]
    fn r_matrix_first_kind_expanded() {
        let (theta, phi) = (1.2_f64, 0.5_f64);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let h = C64::from_polar(1.0, theta / 2.0);
        let expected = ComplexMatrix::from_rows([
            [C64::new(c, 0.0), ZERO, ZERO, -I * C64::from_polar(s, phi)],
            [ZERO, h, ZERO, ZERO],
            [ZERO, ZERO, h, ZERO],
            [-I * C64::from_polar(s, -phi), ZERO, ZERO, C64::new(c, 0.0)],
        ]);
        let r = r_matrix(TlKind::U1, theta, phi, Sign::Plus);
        assert!(r.frobenius_distance(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn r_matrices_are_unitary_on_grid() {
        for kind in TlKind::ALL {
            for eps in [Sign::Plus, Sign::Minus] {
                for theta in grid(16) {
                    for phi in grid(16) {
                        let r = r_matrix(kind, theta, phi, eps);
                        assert!(r.unitarity_residual() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn tl_fit_first_kind() {
        let (theta, phi) = (0.9_f64, 1.4_f64);
        let fit = tl_decompose(TlKind::U1, theta, phi, Sign::Plus);
        assert!((fit.a - C64::from_polar(1.0, theta / 2.0)).norm() < 1e-14);
        assert!((fit.b - (-I * (theta / 2.0).sin())).norm() < 1e-14);
        assert!(fit.residual < 1e-14);

        let fit = tl_decompose(TlKind::U1, 0.0, phi, Sign::Plus);
        assert!((fit.a - ONE).norm() < 1e-15 && fit.b.norm() < 1e-15);
    }

    #[test]
    fn tl_fit_second_kind_is_consistent_with_unitarity() {
        // (aI + bU)^dag (aI + bU) = |a|^2 I + (2 Re(a conj b) + d |b|^2) U = I
        let fit = tl_decompose(TlKind::U2, PI, 0.6, Sign::Plus);
        assert!(fit.residual <= 1e-10);
        assert!((fit.a.norm_sqr() - 1.0).abs() < 1e-12);
        let cross = 2.0 * (fit.a * fit.b.conj()).re + 2.0 * fit.b.norm_sqr();
        assert!(cross.abs() < 1e-12);
    }

    #[test]
    fn tl_fit_on_grid() {
        for kind in [TlKind::U1, TlKind::U2] {
            for theta in grid(16) {
                for phi in grid(16) {
                    let fit = tl_decompose(kind, theta, phi, Sign::Plus);
                    assert!(fit.residual <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn braid_examples() {
        assert_eq!(braid_residual(&ComplexMatrix::identity(4)).unwrap(), 0.0);
        let swap = ComplexMatrix::from_real_rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(braid_residual(&swap).unwrap() <= 1e-12);
        let r = check_braid_ybe(TlKind::U1, FRAC_PI_3, 0.4, Sign::Plus);
        assert!(r.is_finite() && r >= 0.0);
    }

    #[test]
    fn parameterized_ybe_at_zero() {
        for kind in [TlKind::U1, TlKind::U2] {
            let r = check_parameterized_ybe(kind, 0.0, 0.0, 0.4, Sign::Plus, Combiner::Additive)
                .unwrap();
            assert!(r <= 1e-12);
        }
    }

    #[test]
    fn parameterized_ybe_errors() {
        assert!(matches!(
            check_parameterized_ybe(TlKind::U1, f64::NAN, 0.1, 0.0, Sign::Plus, Combiner::Additive),
            Err(YbeError::NonFiniteParameter(_))
        ));
        let singular = Combiner::Moebius { beta: ONE * I };
        assert_eq!(
            check_parameterized_ybe(TlKind::U1, 1.0, 1.0, 0.0, Sign::Plus, singular),
            Err(YbeError::SingularCombination)
        );
        let complex = Combiner::Moebius {
            beta: C64::from_polar(1.0, 0.3),
        };
        assert!(matches!(
            check_parameterized_ybe(TlKind::U1, 0.5, 0.7, 0.0, Sign::Plus, complex),
            Err(YbeError::NonRealCombination(_))
        ));
    }

    #[test]
    fn spectral_mapping() {
        for mu in [0.0, 0.3, 1.0, 2.5, -0.7] {
            let t = spectral_to_theta(TlKind::U1, mu).unwrap();
            assert!((t.cos() - (1.0 - mu * mu) / (1.0 + mu * mu)).abs() < 1e-14);
            let t = spectral_to_theta(TlKind::U3, mu).unwrap();
            assert!((t.cos() - 1.0 / mu.cosh()).abs() < 1e-14);
        }
    }
}
