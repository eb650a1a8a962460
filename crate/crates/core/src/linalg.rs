//! Dense helpers for the 2–4 dimensional reduced operators.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// Max-entry deviation of `UᵀU` from the identity, for real `U`.
pub fn orthogonality_defect(u: &DMatrix<f64>) -> f64 {
    let gram = u.transpose() * u;
    let n = gram.nrows();
    (gram - DMatrix::<f64>::identity(n, n)).amax()
}

/// Orthogonal projector onto the eigenvalue −1 eigenspace of a real
/// orthogonal matrix.
///
/// `(U + I)ᵀ(U + I) = 2I + U + Uᵀ` is positive semidefinite and its kernel is
/// exactly that eigenspace, so a symmetric eigensolver finds it.
pub fn negative_one_projector(u: &DMatrix<f64>) -> DMatrix<f64> {
    let n = u.nrows();
    let gram = DMatrix::<f64>::identity(n, n) * 2.0 + u + u.transpose();
    let eig = SymmetricEigen::new(gram);
    let mut proj = DMatrix::<f64>::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() < 1e-8 {
            let v = eig.eigenvectors.column(i);
            proj += v * v.transpose();
        }
    }
    proj
}

/// Eigenvalue and unit eigenvector.
pub type EigenPairRaw = (Complex64, DVector<Complex64>);

/// Eigenpairs of a unitary matrix.
///
/// A unitary `U` is normal, so it shares eigenvectors with the Hermitian
/// matrix `Re(U) + c·Im(U)` (real and imaginary parts in the operator sense),
/// whose eigenvalue for eigenphase ω is `cos ω + c sin ω`. A generic `c` keeps
/// distinct eigenphases apart; if two collide the residual check fails and
/// the next `c` is tried.
pub fn unitary_eigen(u: &DMatrix<Complex64>) -> Vec<EigenPairRaw> {
    const PENCIL: [f64; 4] = [0.618_033_988_749_894_8, 0.414_213_562_373_095, 1.732_050_807_568_877, -0.267_949_192_431_122_7];
    let n = u.nrows();
    let adj = u.adjoint();
    let re = (u + &adj).scale(0.5);
    let im = (u - &adj) * Complex64::new(0.0, -0.5);
    let mut best: Option<(f64, Vec<EigenPairRaw>)> = None;
    for c in PENCIL {
        let herm = &re + &im * Complex64::new(c, 0.0);
        let eig = SymmetricEigen::new(herm);
        let pairs: Vec<_> = (0..n)
            .map(|i| {
                let v: DVector<Complex64> = eig.eigenvectors.column(i).into_owned();
                let lambda = v.dotc(&(u * &v));
                (lambda / lambda.norm(), v)
            })
            .collect();
        let residual = pairs
            .iter()
            .map(|(lambda, v)| (u * v - v * *lambda).norm())
            .fold(0.0, f64::max);
        if residual < 1e-12 {
            return pairs;
        }
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, pairs));
        }
    }
    best.map(|(_, p)| p).unwrap_or_default()
}

pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}
