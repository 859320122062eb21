//! Dense complex matrices, the Hermitian eigensolver, spectral calculus and
//! Loewner-order comparison.

mod calculus;
mod cmatrix;
mod eigen;
mod hermitian;
mod loewner;

pub use calculus::{spectral_apply, DOMAIN_MARGIN};
pub use cmatrix::{CMatrix, CMatrixJson};
pub use eigen::{eig_hermitian, SpectralDecomposition, JACOBI_TOL, MAX_SWEEPS};
pub use hermitian::HermitianMatrix;
pub use loewner::{loewner_leq, loewner_leq_scaled, LoewnerVerdict, DEFAULT_TOL};
