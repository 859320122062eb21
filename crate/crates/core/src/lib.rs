//! Operator means, normalized positive linear maps and executable checks
//! of Kantorovich- and Bellman-type operator inequality chains on random
//! finite-dimensional instances.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense Hermitian matrices, a complex Jacobi eigensolver,
//!   spectral calculus and Loewner-order comparison.
//! - [`means`]: weighted arithmetic and geometric means and spectral bands.
//! - [`maps`]: unital positive maps (pinching, compression, unitary
//!   mixtures, normalized trace).
//! - [`functions`]: scalar functions with operator-class flags and the
//!   probe-verified catalog.
//! - [`chains`]: one verifier per inequality chain, each returning a
//!   [`chains::ChainReport`] of per-link Loewner gaps.
//! - [`harness`]: seeded generators, campaigns, tightness search and
//!   negative controls. Trials run on rayon when the `parallel` feature is
//!   enabled (the default) and serially otherwise.

pub mod chains;
pub mod error;
pub mod functions;
pub mod harness;
pub mod linalg;
pub mod maps;
pub mod means;
pub mod random;

pub use error::{Error, Result};
pub use linalg::{loewner_leq, spectral_apply, CMatrix, HermitianMatrix, LoewnerVerdict, SpectralDecomposition};
