use nalgebra::DVector;
use num_complex::Complex64;

use crate::e6::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::{from_orthonormal_frame, max_abs, to_orthonormal_frame, unitarity_defect, CMatrix};

const ANTI_HERMITIAN_TOL: f64 = 1e-9;

/// exp(tX) for X anti-self-adjoint under the trace form.
///
/// In the orthonormal frame X = −iH with H Hermitian, so
/// exp(tX) = V diag(e^{−iλt}) V†.
pub fn matrix_exp(x: &AlgebraElement, t: f64) -> Result<CMatrix> {
    let xo = to_orthonormal_frame(&x.entries);
    let deviation = max_abs(&(&xo + xo.adjoint()));
    if deviation > ANTI_HERMITIAN_TOL {
        return Err(Error::NotAntiHermitian { deviation });
    }
    let h = (&xo - xo.adjoint()) * Complex64::new(0.0, 0.5);
    let eig = h.symmetric_eigen();
    let phases = DVector::from_iterator(eig.eigenvalues.len(), eig.eigenvalues.iter().map(|l| Complex64::from_polar(1.0, -l * t)));
    let v = &eig.eigenvectors;
    let e = v * CMatrix::from_diagonal(&phases) * v.adjoint();
    Ok(from_orthonormal_frame(&e))
}

/// Inverse of a group element: the adjoint in the orthonormal frame.
pub fn group_inverse(g: &CMatrix) -> CMatrix {
    from_orthonormal_frame(&to_orthonormal_frame(g).adjoint())
}

/// (unitarity defect, |det − 1|).
pub fn group_defects(g: &CMatrix) -> (f64, f64) {
    let det = g.clone().determinant();
    (unitarity_defect(g), (det - Complex64::new(1.0, 0.0)).norm())
}
