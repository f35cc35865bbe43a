use crate::linalg::{eigh, inner, vec_norm, ComplexMatrix, LinalgError, SpectralDecomposition, C64, ZERO};

/// Eigenvalues closer than this are treated as one degenerate cluster.
const CLUSTER_TOL: f64 = 1e-8;

use super::{output_state, QfiError, Scenario};

/// QFI together with the symmetric logarithmic derivative it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct SldQfi {
    pub value: f64,
    pub sld: ComplexMatrix,
}

/// `F = sum_{i,j} 2 |<i|d rho|j>|^2 / (l_i + l_j)` over pairs with
/// `l_i + l_j > support_tol`, so support-kernel pairs are kept.
///
/// The SLD `L` solving `d rho = (rho L + L rho) / 2` is returned alongside.
pub fn qfi_sld_pair(
    rho: &ComplexMatrix,
    drho: &ComplexMatrix,
    support_tol: f64,
) -> Result<SldQfi, QfiError> {
    let decomp = eigh(rho)?;
    let v = &decomp.eigenvectors;
    let local = v.adjoint().compose(drho)?.compose(v)?;
    let n = decomp.dim();
    let mut value = 0.0;
    let mut l_local = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let denom = decomp.eigenvalues[i] + decomp.eigenvalues[j];
            if denom > support_tol {
                value += 2.0 * local[(i, j)].norm_sqr() / denom;
                l_local[(i, j)] = local[(i, j)] * (2.0 / denom);
            }
        }
    }
    let sld = (v * &l_local).compose(&v.adjoint())?;
    Ok(SldQfi { value, sld })
}

/// Eigendecompositions of the output state at `phi - h`, `phi`, `phi + h`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralStencil {
    pub minus: SpectralDecomposition,
    pub center: SpectralDecomposition,
    pub plus: SpectralDecomposition,
    pub step: f64,
}

impl SpectralStencil {
    pub fn build(scenario: &Scenario, phi: f64, t: f64, step: f64) -> Result<Self, QfiError> {
        if !(step > 0.0) {
            return Err(QfiError::InvalidStep(step));
        }
        Ok(Self {
            minus: eigh(&output_state(scenario, phi - step, t)?)?,
            center: eigh(&output_state(scenario, phi, t)?)?,
            plus: eigh(&output_state(scenario, phi + step, t)?)?,
            step,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralQfi {
    pub value: f64,
    /// Eigenvalue (classical) part.
    pub classical: f64,
    /// Eigenvector (quantum) part.
    pub quantum: f64,
    /// Eigenvalue branches exchanged order across the stencil.
    pub crossing: bool,
    /// Two distinct branches sit closer than `10 h` at the centre.
    pub near_degenerate: bool,
}

/// QFI from eigenvalues and eigenvectors differentiated by central
/// differences.
///
/// Branches at `phi + h` are paired with branches at `phi - h` by maximal
/// overlap, and every cluster of coincident eigenvalues is aligned with the
/// unitary polar factor of its overlap matrix before differencing, so the
/// result does not depend on the basis chosen inside degenerate subspaces.
/// The diagonal `i = j` terms of the vector part are kept for the same
/// reason.
pub fn qfi_spectral(stencil: &SpectralStencil, support_tol: f64) -> Result<SpectralQfi, QfiError> {
    let n = stencil.plus.dim();
    let h = stencil.step;
    let cluster_tol = CLUSTER_TOL;
    let plus = stencil.plus.vectors();
    let minus_raw = stencil.minus.vectors();

    let perm = best_matching(&plus, &minus_raw);
    let lam_plus = &stencil.plus.eigenvalues;
    let lam_minus: Vec<f64> = perm.iter().map(|&k| stencil.minus.eigenvalues[k]).collect();
    let mut minus: Vec<Vec<C64>> = perm.iter().map(|&k| minus_raw[k].clone()).collect();

    let crossing = perm.iter().enumerate().any(|(i, &k)| {
        k != i && (stencil.minus.eigenvalues[k] - stencil.minus.eigenvalues[i]).abs() > cluster_tol
    });

    for block in clusters(lam_plus, cluster_tol) {
        align_block(&plus, &mut minus, &block)?;
    }

    let lambda: Vec<f64> = (0..n).map(|i| 0.5 * (lam_plus[i] + lam_minus[i])).collect();
    let dlambda: Vec<f64> = (0..n).map(|i| (lam_plus[i] - lam_minus[i]) / (2.0 * h)).collect();
    let psi: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let mid: Vec<C64> = plus[i].iter().zip(&minus[i]).map(|(a, b)| (a + b) * 0.5).collect();
            let norm = vec_norm(&mid);
            mid.into_iter().map(|z| z / norm).collect()
        })
        .collect();
    let dpsi: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            plus[i]
                .iter()
                .zip(&minus[i])
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect()
        })
        .collect();

    let support: Vec<usize> = (0..n).filter(|&i| lambda[i] > support_tol).collect();
    let classical: f64 = support.iter().map(|&i| dlambda[i] * dlambda[i] / lambda[i]).sum();
    let mut quantum = 0.0;
    for &i in &support {
        quantum += 4.0 * lambda[i] * inner(&dpsi[i], &dpsi[i]).re;
        for &j in &support {
            let w = 8.0 * lambda[i] * lambda[j] / (lambda[i] + lambda[j]);
            quantum -= w * inner(&psi[i], &dpsi[j]).norm_sqr();
        }
    }

    let centre = &stencil.center.eigenvalues;
    let near_degenerate = (0..n.saturating_sub(1)).any(|i| {
        let gap = centre[i + 1] - centre[i];
        gap < 10.0 * h && (lam_plus[i + 1] - lam_plus[i]).abs() > cluster_tol
    });

    Ok(SpectralQfi {
        value: classical + quantum,
        classical,
        quantum,
        crossing,
        near_degenerate,
    })
}

/// `F = sum_i 4 l_i Var_i(G) - sum_{i != j} 8 l_i l_j / (l_i + l_j) |G_ij|^2`
/// with the generator `G = i (dU^dag) U` and the probe spectrum.
pub fn qfi_generator(
    probe: &SpectralDecomposition,
    u: &ComplexMatrix,
    du: &ComplexMatrix,
    support_tol: f64,
) -> Result<f64, QfiError> {
    let g = du.adjoint().compose(u)?.scale(C64::new(0.0, 1.0));
    let residual = g.hermiticity_residual();
    if residual > 1e-8 * g.frobenius_norm().max(1.0) {
        return Err(LinalgError::NotHermitian { residual }.into());
    }
    let g = g.hermitian_part();
    let g2 = &g * &g;
    let vecs = probe.vectors();
    let lam = &probe.eigenvalues;
    let support: Vec<usize> = (0..probe.dim()).filter(|&i| lam[i] > support_tol).collect();
    let mut value = 0.0;
    for &i in &support {
        let mean = g.sandwich(&vecs[i], &vecs[i]).re;
        let second = g2.sandwich(&vecs[i], &vecs[i]).re;
        value += 4.0 * lam[i] * (second - mean * mean);
        for &j in &support {
            if i != j {
                let w = 8.0 * lam[i] * lam[j] / (lam[i] + lam[j]);
                value -= w * g.sandwich(&vecs[i], &vecs[j]).norm_sqr();
            }
        }
    }
    Ok(value)
}

/// Permutation `perm` maximising `sum_i |<plus_i|minus_perm[i]>|^2`; ties go
/// to the first permutation in lexicographic order, which is the identity
/// when it is optimal.
fn best_matching(plus: &[Vec<C64>], minus: &[Vec<C64>]) -> Vec<usize> {
    let n = plus.len();
    let overlap: Vec<Vec<f64>> = plus
        .iter()
        .map(|p| minus.iter().map(|m| inner(p, m).norm_sqr()).collect())
        .collect();
    if n > 8 {
        return greedy_matching(&overlap);
    }
    let mut best = (0..n).collect::<Vec<_>>();
    let score = |perm: &[usize]| perm.iter().enumerate().map(|(i, &k)| overlap[i][k]).sum::<f64>();
    let mut best_score = score(&best);
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&overlap, &mut current, &mut used, &mut best, &mut best_score, &score);
    best
}

fn search(
    overlap: &[Vec<f64>],
    current: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Vec<usize>,
    best_score: &mut f64,
    score: &dyn Fn(&[usize]) -> f64,
) {
    let n = overlap.len();
    if current.len() == n {
        let s = score(current);
        if s > *best_score + 1e-9 {
            *best_score = s;
            best.clone_from(current);
        }
        return;
    }
    for k in 0..n {
        if !used[k] {
            used[k] = true;
            current.push(k);
            search(overlap, current, used, best, best_score, score);
            current.pop();
            used[k] = false;
        }
    }
}

fn greedy_matching(overlap: &[Vec<f64>]) -> Vec<usize> {
    let n = overlap.len();
    let mut used = vec![false; n];
    (0..n)
        .map(|i| {
            let k = (0..n)
                .filter(|&k| !used[k])
                .max_by(|&a, &b| overlap[i][a].total_cmp(&overlap[i][b]))
                .expect("free column");
            used[k] = true;
            k
        })
        .collect()
}

/// Runs of consecutive sorted eigenvalues equal to within `tol`.
fn clusters(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(block) if (v - values[*block.last().unwrap()]).abs() <= tol => block.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

/// Rotates `minus[block]` by the polar factor of `M = V_minus^dag V_plus`,
/// the unitary that brings it closest to `plus[block]`.
fn align_block(plus: &[Vec<C64>], minus: &mut [Vec<C64>], block: &[usize]) -> Result<(), QfiError> {
    let k = block.len();
    let mut m = ComplexMatrix::zeros(k);
    for (a, &ia) in block.iter().enumerate() {
        for (b, &ib) in block.iter().enumerate() {
            m[(a, b)] = inner(&minus[ia], &plus[ib]);
        }
    }
    let gram = eigh(&(&m.adjoint() * &m))?;
    if gram.eigenvalues[0] <= 1e-12 {
        return Ok(());
    }
    let inv_sqrt = gram.reconstruct_with(|l| C64::new(1.0 / l.sqrt(), 0.0));
    let w = &m * &inv_sqrt;
    let old: Vec<Vec<C64>> = block.iter().map(|&i| minus[i].clone()).collect();
    for (b, &ib) in block.iter().enumerate() {
        let mut col = vec![ZERO; old[0].len()];
        for (a, v) in old.iter().enumerate() {
            for (c, x) in col.iter_mut().zip(v) {
                *c += x * w[(a, b)];
            }
        }
        minus[ib] = col;
    }
    Ok(())
}
