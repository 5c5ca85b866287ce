use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::jordan::{product_table, DIM};
use crate::linalg::sorted_symmetric_eigen;

const UNKNOWNS: usize = DIM * DIM;
/// Relative singular-value cutoff for rank decisions.
pub const RANK_CUTOFF: f64 = 1e-8;
/// Eigenvalues of AᵀA below this fraction of the largest are refined as null candidates.
const CANDIDATE_CUTOFF: f64 = 1e-8;

/// The linear map D ↦ (D(e_i∘e_j) − De_i∘e_j − e_i∘De_j)_{i≤j} on 27×27 matrices.
///
/// Unknown `D[(a, b)]` sits at column `a * 27 + b`. Rows are stored sparse.
#[derive(Debug, Clone)]
pub struct DerivationConstraint {
    pub rows: Vec<Vec<(usize, f64)>>,
}

impl DerivationConstraint {
    pub fn assemble() -> Self {
        let table = product_table::<f64>();
        let mut rows = Vec::with_capacity(DIM * (DIM + 1) / 2 * DIM);
        let mut dense = vec![0.0; UNKNOWNS];
        for i in 0..DIM {
            for j in i..DIM {
                for k in 0..DIM {
                    dense.iter_mut().for_each(|x| *x = 0.0);
                    for m in 0..DIM {
                        dense[k * DIM + m] += table[i][j].0[m];
                    }
                    for a in 0..DIM {
                        dense[a * DIM + i] -= table[a][j].0[k];
                        dense[a * DIM + j] -= table[i][a].0[k];
                    }
                    rows.push(dense.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(c, v)| (c, *v)).collect());
                }
            }
        }
        Self { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().map(|(c, x)| x * v[*c]).sum()).collect()
    }

    /// AᵀA. Entries are exact: all coefficients are dyadic.
    pub fn normal_matrix(&self) -> DMatrix<f64> {
        let mut g = DMatrix::zeros(UNKNOWNS, UNKNOWNS);
        for r in &self.rows {
            for (a, x) in r {
                for (b, y) in r {
                    g[(*a, *b)] += x * y;
                }
            }
        }
        g
    }
}

/// Basis of Der(J3) with the singular spectrum of the constraint operator.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    /// Orthonormal (Frobenius) basis of derivation matrices.
    pub basis: Vec<DMatrix<f64>>,
    /// Singular values of the constraint operator, decreasing.
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// (σ_rank − σ_{rank+1}) / σ_max.
    pub gap: f64,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Nullspace of the derivation constraint.
///
/// Candidates come from the eigenvectors of AᵀA; the singular values of A on
/// that subspace are then recomputed from A itself, which resolves the null
/// block to machine precision instead of √ε.
pub fn derivation_space() -> Result<DerivationSpace> {
    let constraint = DerivationConstraint::assemble();
    let (eigenvalues, vectors) = sorted_symmetric_eigen(constraint.normal_matrix());
    let lmax = eigenvalues[0];
    let ncand = eigenvalues.iter().filter(|l| **l <= lmax * CANDIDATE_CUTOFF).count();
    let split = UNKNOWNS - ncand;

    let candidates = vectors.columns(split, ncand).into_owned();
    let mut image = DMatrix::zeros(constraint.nrows(), ncand);
    for c in 0..ncand {
        let col: Vec<f64> = candidates.column(c).iter().copied().collect();
        image.set_column(c, &DVector::from_vec(constraint.apply(&col)));
    }
    let svd = image.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut refined: Vec<(f64, DVector<f64>)> = (0..ncand)
        .map(|r| (svd.singular_values[r], &candidates * vt.row(r).transpose()))
        .collect();
    refined.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut singular_values: Vec<f64> = eigenvalues[..split].iter().map(|l| l.max(0.0).sqrt()).collect();
    singular_values.extend(refined.iter().map(|r| r.0));
    let smax = singular_values[0];
    let rank = singular_values.iter().filter(|s| **s > smax * RANK_CUTOFF).count();
    let next = singular_values.get(rank).copied().unwrap_or(0.0);
    let gap = (singular_values[rank - 1] - next) / smax;
    let threshold = 1e6 * f64::EPSILON;
    if gap < threshold {
        return Err(Error::NumericalRankAmbiguous { rank, gap, threshold });
    }

    let basis = refined
        .iter()
        .filter(|r| r.0 <= smax * RANK_CUTOFF)
        .map(|(_, v)| DMatrix::from_row_slice(DIM, DIM, v.as_slice()))
        .collect();
    Ok(DerivationSpace { basis, singular_values, rank, gap })
}
