//! Lanczos iteration with full reorthogonalization for the algebraically
//! largest eigenvalues of a symmetric operator.
//!
//! The operator is first shifted by its maximal absolute row sum so the
//! shifted matrix is positive semidefinite (Gershgorin); the wanted
//! eigenvalues are then the dominant ones and the shift is subtracted at
//! the end. On breakdown (invariant subspace) the basis is extended with a
//! fresh random direction, which also recovers eigenvalue multiplicities.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tridiag::eigen_tridiagonal;
use super::{EigsOptions, Spectrum, SymOp};
use crate::error::{Error, Result};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc0 = 0.0;
    let mut acc1 = 0.0;
    let mut acc2 = 0.0;
    let mut acc3 = 0.0;
    let mut chunks = a.chunks_exact(4).zip(b.chunks_exact(4));
    for (ca, cb) in &mut chunks {
        acc0 += ca[0] * cb[0];
        acc1 += ca[1] * cb[1];
        acc2 += ca[2] * cb[2];
        acc3 += ca[3] * cb[3];
    }
    let rem = a.len() - a.len() % 4;
    let mut tail = 0.0;
    for i in rem..a.len() {
        tail += a[i] * b[i];
    }
    acc0 + acc1 + acc2 + acc3 + tail
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Orthogonalize `w` against every basis vector, twice for stability.
fn reorthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for v in basis {
            let proj = dot(w, v);
            axpy(w, -proj, v);
        }
    }
}

fn random_unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    let nv = norm(&v);
    for x in &mut v {
        *x /= nv;
    }
    v
}

struct RitzState {
    values: Vec<f64>,
    residuals: Vec<f64>,
    /// Ritz coefficient columns for the top `m` pairs (dim x m, row-major).
    coefficients: Vec<f64>,
    dim: usize,
}

/// Top `m` eigenvalues of `op` by restarted Lanczos.
pub(super) fn lanczos_top(op: &dyn SymOp, m: usize, opts: &EigsOptions) -> Result<Spectrum> {
    let n = op.dim();
    assert!(m >= 1 && m <= n);

    let shift = op.abs_row_sum_max();
    if shift == 0.0 {
        // Zero operator: the spectrum is identically zero.
        return Ok(Spectrum {
            values: vec![0.0; m],
            requested: m,
            residuals: vec![0.0; m],
            converged: true,
        });
    }
    let scale = 2.0 * shift; // bound on the shifted operator norm
    let tol_abs = opts.tol * scale;
    let breakdown_tol = 1e-13 * scale;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.start_seed);
    let mut max_dim = opts
        .krylov_dim
        .unwrap_or_else(|| (2 * m + 10).max(40))
        .clamp(m, n);
    let mut v0 = random_unit_vector(n, &mut rng);
    let mut last: Option<RitzState> = None;

    for restart in 0..=opts.max_restarts {
        let state = run_cycle(op, shift, m, max_dim, tol_abs, breakdown_tol, &v0, &mut rng)?;
        let converged = state.residuals.iter().all(|&r| r <= tol_abs);
        if converged {
            return Ok(Spectrum {
                values: state.values.iter().map(|&v| v - shift).collect(),
                requested: m,
                residuals: state.residuals,
                converged: true,
            });
        }
        if restart == opts.max_restarts {
            let max_residual = state.residuals.iter().cloned().fold(0.0, f64::max);
            return Err(Error::NotConverged {
                restarts: restart,
                max_residual,
                partial: state.values.iter().map(|&v| v - shift).collect(),
                residuals: state.residuals,
            });
        }
        v0 = state.restart_vector(n);
        max_dim = (max_dim + max_dim / 2).clamp(m, n);
        last = Some(state);
    }
    let _ = last;
    unreachable!("loop returns or errors on final restart");
}

impl RitzState {
    /// Combined top Ritz vectors, the restart direction for the next cycle.
    /// Coefficient columns are recombined lazily by the caller because the
    /// basis is owned by `run_cycle`; here we only keep the combined vector.
    fn restart_vector(&self, n: usize) -> Vec<f64> {
        debug_assert_eq!(self.combined.len(), n);
        self.combined.clone()
    }
}

// The combined restart vector is assembled inside `run_cycle` while the
// basis is still alive, so `RitzState` carries it along.
struct RitzStateFields;

fn run_cycle(
    op: &dyn SymOp,
    shift: f64,
    m: usize,
    max_dim: usize,
    tol_abs: f64,
    breakdown_tol: f64,
    v0: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<RitzState> {
    let n = op.dim();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_dim);
    let mut alpha: Vec<f64> = Vec::with_capacity(max_dim);
    let mut beta: Vec<f64> = Vec::with_capacity(max_dim);
    basis.push(v0.to_vec());

    let mut w = vec![0.0; n];
    let mut exhausted = false;
    let mut last_screen: Option<Vec<f64>> = None;

    for step in 0..max_dim {
        let v = basis[step].clone();
        op.matvec(&v, &mut w);
        axpy(&mut w, shift, &v);
        if step > 0 {
            let b = beta[step - 1];
            let prev = &basis[step - 1];
            axpy(&mut w, -b, prev);
        }
        let a = dot(&w, &v);
        alpha.push(a);
        axpy(&mut w, -a, &v);
        reorthogonalize(&mut w, &basis);
        let b = norm(&w);
        if b <= breakdown_tol {
            beta.push(0.0);
            if basis.len() == n {
                exhausted = true;
                break;
            }
            // Invariant subspace: extend with a fresh orthogonal direction.
            let mut fresh = random_unit_vector(n, rng);
            reorthogonalize(&mut fresh, &basis);
            let fb = norm(&fresh);
            if fb <= breakdown_tol {
                exhausted = true;
                break;
            }
            for x in &mut fresh {
                *x /= fb;
            }
            basis.push(fresh);
        } else {
            beta.push(b);
            let mut next = w.clone();
            for x in &mut next {
                *x /= b;
            }
            basis.push(next);
        }

        let dim = alpha.len();
        if dim < m {
            continue;
        }
        let final_step = step + 1 == max_dim || exhausted;
        let do_screen = final_step || dim % 8 == 0;
        if !do_screen {
            continue;
        }
        // Cheap values-only screen: only pay for eigenvectors once the top
        // Ritz values have stopped moving.
        let (vals, _) = eigen_tridiagonal(&alpha, &beta[..dim - 1], false)?;
        let top: Vec<f64> = vals.iter().take(m).copied().collect();
        let settled = match (&last_screen, final_step) {
            (_, true) => true,
            (Some(prev), _) => prev
                .iter()
                .zip(&top)
                .all(|(p, t)| (p - t).abs() <= 0.1 * tol_abs),
            (None, _) => false,
        };
        last_screen = Some(top);
        if !settled {
            continue;
        }
        let state = ritz_state(&alpha, &beta, &basis, m)?;
        let converged = state.residuals.iter().all(|&r| r <= tol_abs);
        if converged || final_step {
            return Ok(state);
        }
    }
    // Basis exhausted the whole space (or max_dim) without an early return.
    ritz_state(&alpha, &beta, &basis, m)
}

fn ritz_state(alpha: &[f64], beta: &[f64], basis: &[Vec<f64>], m: usize) -> Result<RitzState> {
    let dim = alpha.len();
    let (vals, vecs) = eigen_tridiagonal(alpha, &beta[..dim - 1], true)?;
    let z = vecs.expect("vectors requested");
    let trailing = beta[dim - 1];
    let n = basis[0].len();

    let mut residuals = Vec::with_capacity(m);
    let mut coefficients = vec![0.0; dim * m];
    let mut combined = vec![0.0; n];
    for i in 0..m {
        residuals.push((trailing * z[(dim - 1) * dim + i]).abs());
        for k in 0..dim {
            coefficients[k * m + i] = z[k * dim + i];
        }
    }
    // Restart direction: equal-weight combination of the wanted Ritz
    // vectors, formed while the basis is in scope.
    for k in 0..dim {
        let mut weight = 0.0;
        for i in 0..m {
            weight += z[k * dim + i];
        }
        axpy(&mut combined, weight, &basis[k]);
    }
    let cn = norm(&combined);
    if cn > 0.0 {
        for x in &mut combined {
            *x /= cn;
        }
    }

    Ok(RitzState {
        values: vals[..m].to_vec(),
        residuals,
        coefficients,
        dim,
        combined,
    })
}
