//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)` with the unitary
//!
//! ```text
//! G = [  c      s·w ]      w = a_pq / |a_pq|
//!     [ -s·w̄    c   ]
//! ```
//!
//! acting on columns `p, q`, where `t = s / c` is the smaller root of
//! `t² + 2τt − 1 = 0`, `τ = (a_qq − a_pp) / (2|a_pq|)`. Sweeps repeat until
//! the off-diagonal Frobenius norm drops below `JACOBI_TOL · ‖A‖_F`.

use num_complex::Complex64;

use super::{CMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Relative off-diagonal threshold for convergence.
pub const JACOBI_TOL: f64 = 1e-13;
/// Sweep cap before reporting non-convergence.
pub const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with unitary eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Smallest eigenvalue; `+inf` for the empty matrix.
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::INFINITY)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NEG_INFINITY)
    }

    /// `Q · diag(f(λ)) · Q*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &w) in fl.iter().enumerate() {
                    acc += q[(i, k)] * q[(j, k)].conj() * w;
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        HermitianMatrix::from_computed(out).expect("reconstruction is square")
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.reconstruct_with(|l| l)
    }
}

fn off_diagonal_norm(w: &CMatrix) -> f64 {
    let n = w.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

pub fn eig_hermitian(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut w = a.as_cmatrix().clone();
    let mut q = CMatrix::identity(n);
    let threshold = JACOBI_TOL * a.frobenius_norm();

    let mut off = off_diagonal_norm(&w);
    let mut sweeps = 0;
    if !threshold.is_finite() {
        return Err(Error::NoConvergence {
            sweeps,
            off_diagonal: off,
        });
    }
    while off > threshold {
        if !off.is_finite() || sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        for p in 0..n {
            for r in p + 1..n {
                rotate(&mut w, &mut q, p, r);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&w);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| w[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| q[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(w: &mut CMatrix, q: &mut CMatrix, p: usize, r: usize) {
    let apr = w[(p, r)];
    let b = apr.norm();
    if b == 0.0 {
        return;
    }
    let phase = apr / b;
    let alpha = w[(p, p)].re;
    let beta = w[(r, r)].re;
    let tau = (beta - alpha) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + tau.hypot(1.0))
    } else {
        -1.0 / (-tau + tau.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let sw = phase * s;
    let swc = sw.conj();
    let n = w.rows();

    // A <- A G
    for k in 0..n {
        let akp = w[(k, p)];
        let akr = w[(k, r)];
        w[(k, p)] = akp * c - swc * akr;
        w[(k, r)] = sw * akp + akr * c;
    }
    // A <- G* A
    for k in 0..n {
        let apk = w[(p, k)];
        let ark = w[(r, k)];
        w[(p, k)] = apk * c - sw * ark;
        w[(r, k)] = swc * apk + ark * c;
    }
    w[(p, r)] = Complex64::new(0.0, 0.0);
    w[(r, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)] = Complex64::new(alpha - t * b, 0.0);
    w[(r, r)] = Complex64::new(beta + t * b, 0.0);

    // Q <- Q G
    for k in 0..n {
        let qkp = q[(k, p)];
        let qkr = q[(k, r)];
        q[(k, p)] = qkp * c - swc * qkr;
        q[(k, r)] = sw * qkp + qkr * c;
    }
}
