//! The 78-dimensional algebra: derivations of the Jordan algebra plus the
//! traceless right multiplications.
//!
//! All matrices act on the 27 Jordan coordinates in the order fixed by
//! [`crate::jordan`]. In those coordinates the invariant form is not the
//! identity, so "anti-Hermitian" and "unitary" are always checked after
//! [`crate::linalg::to_orthonormal_frame`]. Traces and inner products are
//! frame independent.

mod derivations;
mod f4;
mod structure;

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use derivations::{derivation_space, DerivationConstraint, DerivationSpace};
pub use f4::{reconstruct_f4_basis, ExcludedPair, F4Fit, F4Reconstruction, FitMode, TypoReport, TypoRow};
pub use structure::{killing_form, structure_constants, KillingForm, StructureDiagnostics, StructureTensor};

use crate::error::{Error, Result};
use crate::jordan::{traceless_basis, DIM};
use crate::linalg::{anti_hermitian_defect, commutator, frobenius, to_complex, trace_of_product, CMatrix, I};
use crate::oracle::Oracle;

pub const ALGEBRA_DIM: usize = 78;
pub const F4_DIM: usize = 52;
pub const COSET_DIM: usize = 26;

const GRAM_SCHMIDT_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Coset generators multiplied by i: negative-definite Killing form.
    Compact,
    /// Real coset generators: trace form of signature (52, 26).
    Split,
}

/// A 27×27 complex matrix in the Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub entries: CMatrix,
}

impl AlgebraElement {
    pub fn new(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new(CMatrix::zeros(DIM, DIM))
    }

    pub fn from_real(m: &DMatrix<f64>) -> Self {
        Self::new(to_complex(m))
    }

    /// ⟨a, b⟩ = −(1/6) Tr(ab), real part.
    pub fn inner(&self, other: &Self) -> f64 {
        self.inner_complex(other).re
    }

    pub fn inner_complex(&self, other: &Self) -> Complex64 {
        -trace_of_product(&self.entries, &other.entries) / 6.0
    }

    pub fn bracket(&self, other: &Self) -> Self {
        Self::new(commutator(&self.entries, &other.entries))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(&self.entries * Complex64::new(s, 0.0))
    }

    pub fn norm_fro(&self) -> f64 {
        frobenius(&self.entries)
    }

    pub fn anti_hermitian_defect(&self) -> f64 {
        anti_hermitian_defect(&self.entries)
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        AlgebraElement::new(&self.entries + &rhs.entries)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        AlgebraElement::new(&self.entries - &rhs.entries)
    }
}

impl Mul<f64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: f64) -> AlgebraElement {
        self.scale(rhs)
    }
}

/// Ordered basis c_1..c_78; labels are 1-based.
#[derive(Debug, Clone)]
pub struct LieBasis {
    pub form: Form,
    pub elements: Vec<AlgebraElement>,
}

impl LieBasis {
    pub fn new(form: Form, elements: Vec<AlgebraElement>) -> Self {
        Self { form, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// c_label, 1-based.
    pub fn get(&self, label: usize) -> &AlgebraElement {
        &self.elements[label - 1]
    }

    pub fn f4_block(&self) -> &[AlgebraElement] {
        &self.elements[..F4_DIM]
    }

    pub fn coset_block(&self) -> &[AlgebraElement] {
        &self.elements[F4_DIM..]
    }

    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut g = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let v = self.elements[a].inner(&self.elements[b]);
                g[(a, b)] = v;
                g[(b, a)] = v;
            }
        }
        g
    }

    /// Diagonal of the Gram matrix rounded to ±1.
    pub fn metric(&self) -> Vec<f64> {
        self.elements.iter().map(|e| e.inner(e).signum()).collect()
    }

    /// Max |G − diag(metric)|.
    pub fn gram_deviation(&self) -> f64 {
        let g = self.gram();
        let eta = self.metric();
        let mut worst: f64 = 0.0;
        for a in 0..self.len() {
            for b in 0..self.len() {
                let want = if a == b { eta[a] } else { 0.0 };
                worst = worst.max((g[(a, b)] - want).abs());
            }
        }
        worst
    }

    /// Expansion coefficients of `x` in this basis.
    pub fn coordinates(&self, x: &AlgebraElement) -> Vec<f64> {
        let eta = self.metric();
        self.elements.iter().zip(eta).map(|(c, s)| s * x.inner(c)).collect()
    }

    pub fn combine(&self, coeffs: &[f64]) -> AlgebraElement {
        let mut acc = CMatrix::zeros(DIM, DIM);
        for (c, x) in self.elements.iter().zip(coeffs) {
            if *x != 0.0 {
                acc += &c.entries * Complex64::new(*x, 0.0);
            }
        }
        AlgebraElement::new(acc)
    }
}

/// Orthogonal change of coordinates mixing the three diagonal slots.
///
/// Identity except rows 1, 18, 27 which become (e1 − e18)/√2,
/// (e1 + e18 − 2 e27)/√6 and (e1 + e18 + e27)/√3.
pub fn diagonal_rotation() -> DMatrix<f64> {
    let mut x = DMatrix::identity(DIM, DIM);
    let (a, b, c) = (0, 17, 26);
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    for r in [a, b, c] {
        x.row_mut(r).fill(0.0);
    }
    x[(a, a)] = 1.0 / s2;
    x[(a, b)] = -1.0 / s2;
    x[(b, a)] = 1.0 / s6;
    x[(b, b)] = 1.0 / s6;
    x[(b, c)] = -2.0 / s6;
    x[(c, a)] = 1.0 / s3;
    x[(c, b)] = 1.0 / s3;
    x[(c, c)] = 1.0 / s3;
    x
}

/// `X M Xᵀ` with X the [`diagonal_rotation`].
pub fn rotate(m: &DMatrix<f64>) -> DMatrix<f64> {
    let x = diagonal_rotation();
    &x * m * x.transpose()
}

/// The 26 coset generators in their normative order.
///
/// Right multiplications by the traceless basis, Gram–Schmidt with respect
/// to Tr(ab) in listing order, scaled to Tr(M²) = 6 with a −√6 sign,
/// rotated by [`diagonal_rotation`], and multiplied by i for the compact form.
pub fn coset_generators(form: Form) -> Result<Vec<AlgebraElement>> {
    let raw: Vec<DMatrix<f64>> = traceless_basis::<f64>().iter().map(|y| y.right_mult_matrix()).collect();
    let tr = |a: &DMatrix<f64>, b: &DMatrix<f64>| a.component_mul(&b.transpose()).sum();
    let mut ortho: Vec<DMatrix<f64>> = Vec::with_capacity(COSET_DIM);
    for (n, m) in raw.iter().enumerate() {
        let mut v = m.clone();
        for u in &ortho {
            v -= u * (tr(m, u) / tr(u, u));
        }
        let norm = tr(&v, &v).abs().sqrt();
        if norm < GRAM_SCHMIDT_CUTOFF {
            return Err(Error::GramSchmidtDegenerate { index: F4_DIM + n + 1, norm });
        }
        ortho.push(v);
    }
    let factor = match form {
        Form::Compact => I,
        Form::Split => Complex64::new(1.0, 0.0),
    };
    Ok(ortho
        .into_iter()
        .map(|v| {
            let scaled = &v * (-(6f64.sqrt()) / tr(&v, &v).sqrt());
            AlgebraElement::new(to_complex(&rotate(&scaled)) * factor)
        })
        .collect())
}

/// Gram–Schmidt under ⟨,⟩ in the given order.
pub fn orthonormalize(elements: &[AlgebraElement], label_offset: usize) -> Result<Vec<AlgebraElement>> {
    let mut out: Vec<AlgebraElement> = Vec::with_capacity(elements.len());
    for (n, e) in elements.iter().enumerate() {
        let mut v = e.clone();
        for u in &out {
            v = &v - &u.scale(e.inner(u) / u.inner(u));
        }
        let norm2 = v.inner(&v);
        if norm2.abs().sqrt() < GRAM_SCHMIDT_CUTOFF {
            return Err(Error::GramSchmidtDegenerate { index: label_offset + n + 1, norm: norm2.abs().sqrt() });
        }
        out.push(v.scale(1.0 / norm2.abs().sqrt()));
    }
    Ok(out)
}

/// Derivations rotated into the frame of the coset generators.
pub fn rotated_derivations(space: &DerivationSpace) -> Vec<AlgebraElement> {
    space.basis.iter().map(|d| AlgebraElement::from_real(&rotate(d))).collect()
}

/// Full basis with an orthonormalized (but otherwise arbitrary) f4 block.
///
/// Use [`build_reference_basis`] for the labelled f4 block.
pub fn build_e6(form: Form) -> Result<LieBasis> {
    let space = derivation_space()?;
    let f4 = orthonormalize(&rotated_derivations(&space), 0)?;
    let mut elements = f4;
    elements.extend(coset_generators(form)?);
    Ok(LieBasis::new(form, elements))
}

/// The compact basis with the f4 block fitted to the published structure
/// constants.
#[derive(Debug, Clone)]
pub struct ReferenceBasis {
    pub basis: LieBasis,
    pub derivations: DerivationSpace,
    pub reconstruction: F4Reconstruction,
}

pub fn build_reference_basis(oracle: &Oracle, mode: FitMode) -> Result<ReferenceBasis> {
    let derivations = derivation_space()?;
    let coset = coset_generators(Form::Compact)?;
    let reconstruction = reconstruct_f4_basis(&oracle.structure_raw, &coset, &rotated_derivations(&derivations), mode)?;
    let mut elements = reconstruction.elements.clone();
    elements.extend(coset);
    Ok(ReferenceBasis { basis: LieBasis::new(Form::Compact, elements), derivations, reconstruction })
}

/// (c̃53, c̃70) = (½ c53 + (√3/2) c70, −(√3/2) c53 + ½ c70).
pub fn tilde_coset(c53: &AlgebraElement, c70: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
    let h = 3f64.sqrt() / 2.0;
    (&c53.scale(0.5) + &c70.scale(h), &c53.scale(-h) + &c70.scale(0.5))
}

/// Inverse of [`tilde_coset`].
pub fn untilde_coset(t53: &AlgebraElement, t70: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
    let h = 3f64.sqrt() / 2.0;
    (&t53.scale(0.5) - &t70.scale(h), &t53.scale(h) + &t70.scale(0.5))
}
