use super::HermitianMatrix;
use crate::error::{Error, Result};
use crate::functions::ScalarFunction;

/// Eigenvalues must sit at least this far inside a function's open domain.
pub const DOMAIN_MARGIN: f64 = 1e-12;

/// `f(A) = Q · diag(f(λ)) · Q*`, after checking every eigenvalue lies
/// strictly inside the domain of `f`.
pub fn spectral_apply(a: &HermitianMatrix, f: &ScalarFunction) -> Result<HermitianMatrix> {
    let eig = a.eig()?;
    let domain = f.domain();
    if let Some(&bad) = eig
        .eigenvalues()
        .iter()
        .find(|&&l| !domain.contains_with_margin(l, DOMAIN_MARGIN))
    {
        return Err(Error::DomainViolation {
            function: f.name(),
            eigenvalue: bad,
            lower: domain.lower,
            upper: domain.upper,
        });
    }
    Ok(eig.reconstruct_with(|l| f.evaluate(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{hermitian_with_spectrum, random_unitary, trial_rng};

    #[test]
    fn diagonal_square_root() {
        let r = spectral_apply(&HermitianMatrix::diag(&[4.0, 9.0]), &ScalarFunction::power(0.5)).unwrap();
        assert_eq!(r, HermitianMatrix::diag(&[2.0, 3.0]));
    }

    #[test]
    fn diagonal_inverse_square_root() {
        let r = spectral_apply(&HermitianMatrix::diag(&[1.0, 16.0]), &ScalarFunction::power(-0.5)).unwrap();
        assert_eq!(r, HermitianMatrix::diag(&[1.0, 0.25]));
    }

    #[test]
    fn identity_maps_to_scalar_multiple() {
        for f in ["power:0.3", "log", "log1p", "reciprocal:log1p", "power:-1"] {
            let f = ScalarFunction::parse(f).unwrap();
            let r = spectral_apply(&HermitianMatrix::identity(4), &f).unwrap();
            assert!(r.max_abs_diff(&HermitianMatrix::scalar(4, f.evaluate(1.0))).unwrap() < 1e-15);
        }
    }

    #[test]
    fn domain_violation_names_the_eigenvalue() {
        let err = spectral_apply(&HermitianMatrix::diag(&[-1.0, 2.0]), &ScalarFunction::log()).unwrap_err();
        assert_eq!(
            err,
            Error::DomainViolation {
                function: "log".into(),
                eigenvalue: -1.0,
                lower: 0.0,
                upper: f64::INFINITY
            }
        );
        let err = spectral_apply(
            &HermitianMatrix::diag(&[0.5, 1.0]),
            &ScalarFunction::one_minus_power(2.0),
        );
        assert!(matches!(err, Err(Error::DomainViolation { eigenvalue, .. }) if eigenvalue == 1.0));
    }

    #[test]
    fn result_commutes_with_argument() {
        let mut rng = trial_rng(17, 0);
        let u = random_unitary(5, &mut rng);
        let a = hermitian_with_spectrum(&[0.2, 0.9, 1.5, 3.0, 8.0], &u);
        let fa = spectral_apply(&a, &ScalarFunction::power(0.7)).unwrap();
        let ab = a.as_cmatrix().matmul(fa.as_cmatrix()).unwrap();
        let ba = fa.as_cmatrix().matmul(a.as_cmatrix()).unwrap();
        assert!(ab.sub(&ba).unwrap().frobenius_norm() < 1e-12 * ab.frobenius_norm());
    }

    #[test]
    fn repeated_eigenvalues_do_not_depend_on_basis_choice() {
        let mut rng = trial_rng(23, 0);
        let u = random_unitary(4, &mut rng);
        let a = hermitian_with_spectrum(&[1.0, 1.0, 1.0, 2.5], &u);
        let f = ScalarFunction::power(0.5);
        let direct = spectral_apply(&a, &f).unwrap();
        // re-decompose a reconstruction whose degenerate eigenspace basis differs
        let again = a.eig().unwrap().reconstruct();
        let redone = spectral_apply(&again, &f).unwrap();
        assert!(direct.relative_distance(&redone).unwrap() < 1e-12);
        // and against the closed form: sqrt(A) = P_1 + sqrt(2.5) P_2
        let closed = hermitian_with_spectrum(&[1.0, 1.0, 1.0, 2.5_f64.sqrt()], &u);
        assert!(direct.relative_distance(&closed).unwrap() < 1e-12);
    }
}
