//! Small dense linear-algebra helpers shared by the construction and the
//! measure code. Everything here is `f64` / `Complex<f64>`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::jordan::{trace_weight, DIM};

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tr(AB) without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Square roots of the trace-form weights of the 27 coordinates.
///
/// The trace form is `diag(w)` in coordinates, so a matrix `M` is
/// anti-self-adjoint for it exactly when `S M S⁻¹` is anti-Hermitian with
/// `S = diag(√w)`.
pub fn frame_scales() -> [f64; DIM] {
    std::array::from_fn(|k| (trace_weight(k) as f64).sqrt())
}

/// `S M S⁻¹`: coordinates in which the trace form is the identity.
pub fn to_orthonormal_frame(m: &CMatrix) -> CMatrix {
    let s = frame_scales();
    CMatrix::from_fn(DIM, DIM, |r, c| m[(r, c)] * (s[r] / s[c]))
}

/// Inverse of [`to_orthonormal_frame`].
pub fn from_orthonormal_frame(m: &CMatrix) -> CMatrix {
    let s = frame_scales();
    CMatrix::from_fn(DIM, DIM, |r, c| m[(r, c)] * (s[c] / s[r]))
}

/// ‖M + M†‖ (max-entry) in the orthonormal frame.
pub fn anti_hermitian_defect(m: &CMatrix) -> f64 {
    let u = to_orthonormal_frame(m);
    max_abs(&(&u + u.adjoint()))
}

/// ‖g†g − 1‖ (max-entry) in the orthonormal frame.
pub fn unitarity_defect(g: &CMatrix) -> f64 {
    let u = to_orthonormal_frame(g);
    max_abs(&(u.adjoint() * &u - CMatrix::identity(u.nrows(), u.ncols())))
}

/// Eigen-decomposition of a real symmetric matrix with eigenvalues sorted
/// in decreasing order.
pub fn sorted_symmetric_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Least squares with a relative singular-value cutoff.
///
/// Returns the solution and the numerical rank of `a`.
pub fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>, rel_cutoff: f64) -> (DVector<f64>, usize) {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let cutoff = smax * rel_cutoff;
    let rank = svd.singular_values.iter().filter(|s| **s > cutoff).count();
    let x = svd.solve(b, cutoff).expect("both factors were computed");
    (x, rank)
}

/// Determinant of a real square matrix.
pub fn det(m: &DMatrix<f64>) -> f64 {
    m.clone().determinant()
}
