//! Seeded randomness shared by the probes and instance generators.
//!
//! All randomness is drawn from `ChaCha8Rng`. A trial with index `i` in a
//! campaign seeded with `s` uses `ChaCha8Rng::seed_from_u64(s ^ i)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, HermitianMatrix};

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed ^ trial)
}

fn gaussian(rng: &mut TrialRng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-distributed unitary: Gram–Schmidt (with one re-orthogonalization
/// pass) applied to the columns of a complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut TrialRng) -> CMatrix {
    random_isometry(n, n, rng)
}

/// `n x k` matrix with orthonormal columns, the first `k` columns of a
/// Haar unitary.
pub fn random_isometry(n: usize, k: usize, rng: &mut TrialRng) -> CMatrix {
    assert!(k <= n, "isometry needs k <= n");
    let g = CMatrix::from_fn(n, k, |_, _| gaussian(rng));
    let mut cols: Vec<Vec<Complex64>> = (0..k).map(|j| g.column(j)).collect();
    for j in 0..k {
        for _pass in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let u = &done[i];
                let v = &mut rest[0];
                let proj: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    CMatrix::from_fn(n, k, |i, j| cols[j][i])
}

/// `U · diag(eigenvalues) · U*`.
pub fn hermitian_with_spectrum(eigenvalues: &[f64], u: &CMatrix) -> HermitianMatrix {
    let n = eigenvalues.len();
    assert_eq!(u.rows(), n);
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &l) in eigenvalues.iter().enumerate() {
                acc += u[(i, k)] * u[(j, k)].conj() * l;
            }
            m[(i, j)] = acc;
        }
    }
    HermitianMatrix::new(m).expect("square by construction")
}

/// Random Hermitian matrix with iid complex Gaussian entries.
pub fn gaussian_hermitian(n: usize, rng: &mut TrialRng) -> HermitianMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let sum = g.add(&g.adjoint()).expect("square");
    HermitianMatrix::new(sum.scale(0.5)).expect("square")
}

/// Log-uniform sample in `[lo, hi]`.
pub fn log_uniform(rng: &mut TrialRng, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return lo;
    }
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}
