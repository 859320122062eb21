use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{eig_hermitian, SpectralDecomposition};
use super::CMatrix;
use crate::error::{Error, Result};

/// Dense complex Hermitian matrix.
///
/// Every constructor symmetrizes its input as `(X + X*) / 2` and forces the
/// diagonal to be real. The Frobenius size of that correction is kept in
/// [`HermitianMatrix::correction_norm`] so generators can check they only
/// ever produce Hermitian data up to roundoff.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    inner: CMatrix,
    correction: f64,
}

impl PartialEq for HermitianMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut sym = CMatrix::zeros(n, n);
        let mut correction = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s = if i == j {
                    Complex64::new(m[(i, i)].re, 0.0)
                } else {
                    (m[(i, j)] + m[(j, i)].conj()) * 0.5
                };
                correction += (m[(i, j)] - s).norm_sqr();
                sym[(i, j)] = s;
            }
        }
        Ok(Self {
            inner: sym,
            correction: correction.sqrt(),
        })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let data: Vec<Complex64> = rows.iter().flatten().copied().collect();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("rows must all have length n".into()));
        }
        Self::new(CMatrix::from_vec(n, n, data)?)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let zeros = vec![vec![0.0; n]; n];
        Self::new(CMatrix::from_parts(rows, &zeros)?)
    }

    /// Diagonal matrix; exact, no symmetrization error.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Self {
            inner: m,
            correction: 0.0,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    pub fn scalar(n: usize, c: f64) -> Self {
        Self::diag(&vec![c; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::scalar(n, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn correction_norm(&self) -> f64 {
        self.correction
    }

    pub fn as_cmatrix(&self) -> &CMatrix {
        &self.inner
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.inner[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_norm(&self) -> Result<f64> {
        let eig = self.eig()?;
        Ok(eig.eigenvalues().iter().fold(0.0_f64, |acc, l| acc.max(l.abs())))
    }

    pub fn eig(&self) -> Result<SpectralDecomposition> {
        eig_hermitian(self)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eig()?.min())
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.eig()?.max())
    }

    /// `Q diag(f(λ)) Q*` for an arbitrary real rule; no domain checks.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Ok(self.eig()?.reconstruct_with(f))
    }

    pub fn inverse(&self) -> Result<Self> {
        let eig = self.eig()?;
        if eig.min() <= 0.0 {
            return Err(Error::Singular {
                min_eigenvalue: eig.min(),
            });
        }
        Ok(eig.reconstruct_with(|l| 1.0 / l))
    }

    /// Principal power of a strictly positive matrix.
    pub fn pow(&self, p: f64) -> Result<Self> {
        let eig = self.eig()?;
        if eig.min() <= 0.0 {
            return Err(Error::Singular {
                min_eigenvalue: eig.min(),
            });
        }
        Ok(eig.reconstruct_with(|l| l.powf(p)))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let eig = self.eig()?;
        if eig.min() < 0.0 {
            return Err(Error::Singular {
                min_eigenvalue: eig.min(),
            });
        }
        Ok(eig.reconstruct_with(f64::sqrt))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(Self {
            inner: self.inner.add(&rhs.inner)?,
            correction: 0.0,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(Self {
            inner: self.inner.sub(&rhs.inner)?,
            correction: 0.0,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            inner: self.inner.scale(s),
            correction: 0.0,
        }
    }

    /// `alpha * self + beta * rhs`.
    pub fn lin_comb(&self, alpha: f64, rhs: &Self, beta: f64) -> Result<Self> {
        self.check_dim(rhs)?;
        let data = self
            .inner
            .as_slice()
            .iter()
            .zip(rhs.inner.as_slice())
            .map(|(a, b)| a * alpha + b * beta)
            .collect();
        Ok(Self {
            inner: CMatrix::from_vec(self.dim(), self.dim(), data)?,
            correction: 0.0,
        })
    }

    /// `outer · self · outer` for Hermitian `outer`, re-symmetrized.
    pub fn sandwich(&self, outer: &Self) -> Result<Self> {
        self.check_dim(outer)?;
        let p = outer.inner.matmul(&self.inner)?.matmul(&outer.inner)?;
        Self::new(p).map(Self::without_correction)
    }

    /// `V* · self · V` for an `n x k` matrix `V`, re-symmetrized.
    pub fn congruence(&self, v: &CMatrix) -> Result<Self> {
        if v.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.rows(),
            });
        }
        let p = v.adjoint().matmul(&self.inner)?.matmul(v)?;
        Self::new(p).map(Self::without_correction)
    }

    /// Largest absolute entry of `self - rhs`, for tests and diagnostics.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.check_dim(rhs)?;
        Ok(self
            .inner
            .as_slice()
            .iter()
            .zip(rhs.inner.as_slice())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `‖self − rhs‖_F / max(1, ‖rhs‖_F)`.
    pub fn relative_distance(&self, rhs: &Self) -> Result<f64> {
        Ok(self.sub(rhs)?.frobenius_norm() / rhs.frobenius_norm().max(1.0))
    }

    /// Symmetrizes a computed product without recording a correction;
    /// roundoff asymmetry of intermediate results is not an input defect.
    pub(crate) fn from_computed(m: CMatrix) -> Result<Self> {
        Self::new(m).map(Self::without_correction)
    }

    fn without_correction(mut self) -> Self {
        self.correction = 0.0;
        self
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        Ok(())
    }
}

/// Wire form: `{"n": int, "re": [[...]], "im": [[...]]}`, row-major. On
/// decode only the lower triangle (including the diagonal) is read.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct HermitianJson {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl HermitianMatrix {
    /// Decodes from the wire form, trusting the lower triangle. The
    /// recorded correction is the Frobenius distance between the supplied
    /// array and the decoded matrix.
    fn from_wire(raw: HermitianJson) -> Result<Self> {
        let n = raw.n;
        if raw.re.len() != n || raw.im.len() != n {
            return Err(Error::Malformed(format!("expected {n} rows")));
        }
        if raw.re.iter().chain(&raw.im).any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("expected {n} columns per row")));
        }
        let given = CMatrix::from_parts(&raw.re, &raw.im)?;
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(given[(i, i)].re, 0.0)
            } else if i > j {
                given[(i, j)]
            } else {
                given[(j, i)].conj()
            }
        });
        let correction = given.sub(&m)?.frobenius_norm();
        Ok(Self { inner: m, correction })
    }
}

impl Serialize for HermitianMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HermitianJson {
            n: self.dim(),
            re: self.inner.real_parts(),
            im: self.inner.imag_parts(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HermitianJson::deserialize(d)?;
        HermitianMatrix::from_wire(raw).map_err(serde::de::Error::custom)
    }
}
