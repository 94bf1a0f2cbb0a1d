//! Explicitly restarted Lanczos with full reorthogonalization for the lowest
//! eigenpair of a real symmetric matrix.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::CsrMatrix;
use crate::error::{Error, Result};

const SEED: u64 = 0x00c0_ffee;
const MAX_RESTARTS: usize = 500;
/// Upper bound on the memory held by Krylov vectors, in `f64` entries.
const KRYLOV_ENTRIES: usize = 250_000_000;

#[derive(Debug, Clone)]
pub(crate) struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn random_start(dim: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Lowest eigenpair with `‖H v − θ v‖ ≤ tol · max(1, |θ|)`.
pub(crate) fn lowest_eigenpair(h: &CsrMatrix, tol: f64) -> Result<Eigenpair> {
    let n = h.dim();
    let krylov = (KRYLOV_ENTRIES / n).clamp(20, 100).min(n);
    let mut start = random_start(n);
    let mut w = vec![0.0; n];
    let mut last = f64::INFINITY;
    for _ in 0..MAX_RESTARTS {
        let s = norm(&start);
        start.iter_mut().for_each(|v| *v /= s);
        let mut basis = vec![start];
        let mut alpha = Vec::with_capacity(krylov);
        let mut beta = Vec::with_capacity(krylov);
        loop {
            let current = basis.last().unwrap();
            h.matvec(current, &mut w);
            let a = dot(&w, current);
            alpha.push(a);
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&w, q);
                    axpy(-c, q, &mut w);
                }
            }
            let b = norm(&w);
            if basis.len() == krylov || b <= 1e-14 * a.abs().max(1.0) {
                break;
            }
            beta.push(b);
            let next: Vec<f64> = w.iter().map(|v| v / b).collect();
            basis.push(next);
        }
        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let idx = eig.eigenvalues.imin();
        let theta = eig.eigenvalues[idx];
        let y = eig.eigenvectors.column(idx);
        let mut ritz = vec![0.0; n];
        for (c, q) in y.iter().zip(&basis) {
            axpy(*c, q, &mut ritz);
        }
        let r = norm(&ritz);
        ritz.iter_mut().for_each(|v| *v /= r);
        h.matvec(&ritz, &mut w);
        axpy(-theta, &ritz, &mut w);
        let residual = norm(&w);
        if residual <= tol * theta.abs().max(1.0) {
            return Ok(Eigenpair { value: theta, vector: ritz });
        }
        last = residual;
        start = ritz;
    }
    Err(Error::Convergence(format!(
        "Lanczos did not reach residual {tol:e} after {MAX_RESTARTS} restarts (last {last:e})"
    )))
}
