use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::{AlgebraElement, LieBasis};
use crate::error::{Error, Result};

/// Values below this are treated as structural zeros.
pub const ZERO_CUTOFF: f64 = 1e-12;
const CLOSURE_TOL: f64 = 1e-9;

/// s_{IJK} = ⟨[c_I, c_J], c_K⟩ with the index lowered by the trace form.
///
/// Only I < J < K is stored; other orderings pick up the permutation sign.
/// For an orthonormal basis with metric η the bracket is
/// [c_I, c_J] = Σ_K η_K s_{IJK} c_K.
#[derive(Debug, Clone)]
pub struct StructureTensor {
    pub dim: usize,
    pub metric: Vec<f64>,
    pub entries: BTreeMap<(usize, usize, usize), f64>,
    pub diagnostics: StructureDiagnostics,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StructureDiagnostics {
    /// Max |s_{IJK} − sign·s_canonical| over all computed orderings.
    pub antisymmetry: f64,
    /// Max Frobenius norm of [c_I, c_J] − Σ η_K s_{IJK} c_K.
    pub closure: f64,
    /// Max |Im ⟨[c_I, c_J], c_K⟩| discarded.
    pub imaginary: f64,
}

/// Sorts (i, j, k) and returns the sign of the permutation; 0 on a repeated index.
pub fn canonical(i: usize, j: usize, k: usize) -> ((usize, usize, usize), f64) {
    if i == j || j == k || i == k {
        return ((i, j, k), 0.0);
    }
    let mut v = [i, j, k];
    let mut sign = 1.0;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    ((v[0], v[1], v[2]), sign)
}

impl StructureTensor {
    /// Builds from canonical entries; labels are 1-based.
    pub fn from_entries(dim: usize, metric: Vec<f64>, entries: BTreeMap<(usize, usize, usize), f64>) -> Self {
        Self { dim, metric, entries, diagnostics: StructureDiagnostics::default() }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let (key, sign) = canonical(i, j, k);
        if sign == 0.0 {
            return 0.0;
        }
        sign * self.entries.get(&key).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// For each ordered pair (I, J), the nonzero (K, s_{IJK}); 0-based.
    fn pair_lists(&self) -> Vec<Vec<(usize, f64)>> {
        let n = self.dim;
        let mut lists = vec![Vec::new(); n * n];
        for (&(i, j, k), &v) in &self.entries {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for (a, b, c, s) in [(i, j, k, v), (j, k, i, v), (k, i, j, v), (j, i, k, -v), (i, k, j, -v), (k, j, i, -v)] {
                lists[a * n + b].push((c, s));
            }
        }
        lists
    }

    /// ad(c_I) in the basis: (ad c_I)_{KJ} = η_K s_{IJK}.
    pub fn adjoint(&self, i: usize) -> DMatrix<f64> {
        let n = self.dim;
        let mut m = DMatrix::zeros(n, n);
        for j in 1..=n {
            for k in 1..=n {
                let v = self.get(i, j, k);
                if v != 0.0 {
                    m[(k - 1, j - 1)] = self.metric[k - 1] * v;
                }
            }
        }
        m
    }

    /// max over I<J<K, L of |Σ_M η_M (s_{IJM} s_{MKL} + s_{JKM} s_{MIL} + s_{KIM} s_{MJL})|.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let lists = self.pair_lists();
        let eta = &self.metric;
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0.0; n];
                let mut worst: f64 = 0.0;
                for j in i + 1..n {
                    for k in j + 1..n {
                        acc.iter_mut().for_each(|x| *x = 0.0);
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            for &(m, s1) in &lists[a * n + b] {
                                for &(l, s2) in &lists[m * n + c] {
                                    acc[l] += eta[m] * s1 * s2;
                                }
                            }
                        }
                        worst = acc.iter().fold(worst, |w, x| w.max(x.abs()));
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Canonical entries as 1-based (i, j, k, v) rows.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        self.entries.iter().map(|(&(i, j, k), &v)| (i, j, k, v))
    }
}

/// Projects every bracket onto the basis and checks closure.
pub fn structure_constants(basis: &LieBasis) -> Result<StructureTensor> {
    let n = basis.len();
    let eta = basis.metric();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let rows: Vec<(usize, usize, Vec<f64>, f64, f64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let br = basis.elements[i].bracket(&basis.elements[j]);
            let mut values = Vec::with_capacity(n);
            let mut imag: f64 = 0.0;
            let mut rebuilt = AlgebraElement::zero();
            for (k, ck) in basis.elements.iter().enumerate() {
                let z = br.inner_complex(ck);
                imag = imag.max(z.im.abs());
                values.push(z.re);
                if z.re.abs() > ZERO_CUTOFF {
                    rebuilt = &rebuilt + &ck.scale(eta[k] * z.re);
                }
            }
            let closure = (&br - &rebuilt).norm_fro();
            (i, j, values, imag, closure)
        })
        .collect();

    let mut entries = BTreeMap::new();
    let mut diagnostics = StructureDiagnostics::default();
    for (i, j, values, imag, closure) in &rows {
        diagnostics.imaginary = diagnostics.imaginary.max(*imag);
        diagnostics.closure = diagnostics.closure.max(*closure);
        if *closure > CLOSURE_TOL {
            return Err(Error::NotClosed { i: i + 1, j: j + 1, residual: *closure });
        }
        for (k, v) in values.iter().enumerate().skip(j + 1) {
            if v.abs() > ZERO_CUTOFF {
                entries.insert((i + 1, j + 1, k + 1), *v);
            }
        }
    }
    let tensor = StructureTensor::from_entries(n, eta, entries);
    for (i, j, values, _, _) in &rows {
        for (k, v) in values.iter().enumerate() {
            let d = (v - tensor.get(i + 1, j + 1, k + 1)).abs();
            diagnostics.antisymmetry = diagnostics.antisymmetry.max(d);
        }
    }
    Ok(StructureTensor { diagnostics, ..tensor })
}

#[derive(Debug, Clone)]
pub struct KillingForm {
    pub matrix: DMatrix<f64>,
    /// (positive, negative, zero) eigenvalue counts.
    pub signature: (usize, usize, usize),
    /// Mean of K_II / η_I: the constant in K = λ·G.
    pub lambda: f64,
    /// Max |K − λ·G|.
    pub max_deviation: f64,
}

/// K_IJ = Tr(ad c_I ad c_J).
pub fn killing_form(tensor: &StructureTensor) -> KillingForm {
    let n = tensor.dim;
    let ads: Vec<DMatrix<f64>> = (1..=n).into_par_iter().map(|i| tensor.adjoint(i)).collect();
    let mut matrix = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let v = ads[a].component_mul(&ads[b].transpose()).sum();
            matrix[(a, b)] = v;
            matrix[(b, a)] = v;
        }
    }
    let eta = &tensor.metric;
    let lambda = (0..n).map(|a| matrix[(a, a)] / eta[a]).sum::<f64>() / n as f64;
    let mut max_deviation: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let want = if a == b { lambda * eta[a] } else { 0.0 };
            max_deviation = max_deviation.max((matrix[(a, b)] - want).abs());
        }
    }
    let eig = matrix.clone().symmetric_eigenvalues();
    let scale = eig.amax().max(1.0);
    let pos = eig.iter().filter(|e| **e > 1e-9 * scale).count();
    let neg = eig.iter().filter(|e| **e < -1e-9 * scale).count();
    KillingForm { matrix, signature: (pos, neg, n - pos - neg), lambda, max_deviation }
}
