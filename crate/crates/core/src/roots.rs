//! Cartan subalgebra and roots of the compact form.
//!
//! Everything is computed in the coordinates of an orthonormal compact basis,
//! where ad(X) is a real antisymmetric 78×78 matrix and −i·ad(H) is Hermitian.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::e6::{LieBasis, StructureTensor};
use crate::error::{Error, Result};

pub const RANK: usize = 6;
const NULL_CUTOFF: f64 = 1e-8;
const ZERO_ROOT: f64 = 1e-8;
const SNAP_TOL: f64 = 1e-6;

/// Cartan subalgebra as coordinate vectors in the basis.
#[derive(Debug, Clone)]
pub struct Cartan {
    /// Orthonormal coordinate vectors h_1..h_6.
    pub coordinates: Vec<DVector<f64>>,
    /// Max ‖[h_a, h_b]‖ in coordinates.
    pub commutator_defect: f64,
}

fn adjoint_matrices(tensor: &StructureTensor) -> Vec<DMatrix<f64>> {
    (1..=tensor.dim).map(|i| tensor.adjoint(i)).collect()
}

fn ad_of(ads: &[DMatrix<f64>], x: &DVector<f64>) -> DMatrix<f64> {
    let n = ads.len();
    let mut m = DMatrix::zeros(n, n);
    for (a, c) in ads.iter().zip(x.iter()) {
        if *c != 0.0 {
            m += a * *c;
        }
    }
    m
}

/// Orthonormal basis (columns) of {v ∈ span(cols of `within`) : ad(x) v = 0}.
fn centralizer(ads: &[DMatrix<f64>], x: &DVector<f64>, within: &DMatrix<f64>) -> DMatrix<f64> {
    let image = ad_of(ads, x) * within;
    let svd = image.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let smax = svd.singular_values.max().max(1.0);
    let k = within.ncols();
    let null: Vec<DVector<f64>> = (0..k)
        .filter(|r| svd.singular_values[*r] <= smax * NULL_CUTOFF)
        .map(|r| within * vt.row(r).transpose())
        .collect();
    if null.is_empty() {
        DMatrix::zeros(within.nrows(), 0)
    } else {
        DMatrix::from_columns(&null)
    }
}

fn random_combination(rng: &mut ChaCha8Rng, span: &DMatrix<f64>) -> DVector<f64> {
    let coeffs = DVector::from_fn(span.ncols(), |_, _| rng.random_range(-1.0..1.0));
    span * coeffs
}

fn max_commutator(ads: &[DMatrix<f64>], cols: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..cols.ncols() {
        let ad = ad_of(ads, &cols.column(a).into_owned());
        for b in a + 1..cols.ncols() {
            worst = worst.max((&ad * cols.column(b)).amax());
        }
    }
    worst
}

/// Maximal abelian subalgebra by repeated centralizers of random elements.
///
/// Starts with the centralizer of a random element of the whole algebra and
/// shrinks to the centralizer of a random element of the current space until
/// the space is abelian.
pub fn find_cartan(tensor: &StructureTensor, seed: u64) -> Result<Cartan> {
    let n = tensor.dim;
    let ads = adjoint_matrices(tensor);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut space = DMatrix::identity(n, n);
    for _ in 0..n {
        let x = random_combination(&mut rng, &space);
        let next = centralizer(&ads, &x, &space);
        let shrank = next.ncols() < space.ncols();
        space = next;
        if max_commutator(&ads, &space) <= 1e-10 {
            break;
        }
        if !shrank && space.ncols() == 0 {
            break;
        }
    }
    if space.ncols() != RANK {
        return Err(Error::CartanDimMismatch { found: space.ncols() });
    }
    let qr = space.qr();
    let q = qr.q();
    let coordinates: Vec<DVector<f64>> = (0..RANK).map(|c| q.column(c).into_owned()).collect();
    let commutator_defect = max_commutator(&ads, &DMatrix::from_columns(&coordinates));
    Ok(Cartan { coordinates, commutator_defect })
}

/// Roots and simple roots, in the coordinates of the Cartan basis and in the
/// L-frame of the published simple roots.
#[derive(Debug, Clone, Serialize)]
pub struct RootDatum {
    pub roots: Vec<[f64; RANK]>,
    pub positive: Vec<[f64; RANK]>,
    pub simple: Vec<[f64; RANK]>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub cartan_determinant: f64,
    /// Max | |α|² − 2 |.
    pub length_defect: f64,
    /// Max distance between a root and the nearest lattice point after alignment.
    pub snap_defect: f64,
    /// Found simple roots rotated onto the published ones; None if no permutation matches.
    pub aligned: Option<Alignment>,
    /// Exponents of the rational homology.
    pub exponents: [u32; RANK],
}

#[derive(Debug, Clone, Serialize)]
pub struct Alignment {
    /// permutation[i] = index of the found simple root sent to r_{i+1}.
    pub permutation: [usize; RANK],
    /// All 72 roots in the L-frame, snapped to the lattice.
    pub roots_l_frame: Vec<[f64; RANK]>,
    /// Every snapped root is a ± nonnegative integer combination of r1..r6.
    pub generated_by_published: bool,
}

/// The six simple roots in the L-frame.
pub fn published_simple_roots() -> [[f64; RANK]; RANK] {
    let h = 0.5;
    let s = 3f64.sqrt() / 2.0;
    [
        [1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0, 1.0, 0.0],
        [h, -h, -h, -h, -h, s],
    ]
}

fn dot(a: &[f64; RANK], b: &[f64; RANK]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lexicographic positivity on (L6, L5, ..., L1).
pub fn is_positive(r: &[f64; RANK]) -> bool {
    for c in r.iter().rev() {
        if c.abs() > 1e-9 {
            return *c > 0.0;
        }
    }
    false
}

pub fn cartan_matrix(simple: &[[f64; RANK]]) -> Vec<Vec<f64>> {
    simple.iter().map(|a| simple.iter().map(|b| 2.0 * dot(a, b) / dot(b, b)).collect()).collect()
}

/// Joint eigenvalues of −i·ad(h_a) on the complexified algebra.
pub fn compute_roots(tensor: &StructureTensor, cartan: &Cartan, seed: u64) -> Result<RootDatum> {
    let n = tensor.dim;
    let ads = adjoint_matrices(tensor);
    let hs: Vec<DMatrix<f64>> = cartan.coordinates.iter().map(|h| ad_of(&ads, h)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..RANK).map(|_| rng.random_range(0.5..1.5)).collect();
    let generic = hs.iter().zip(&weights).fold(DMatrix::zeros(n, n), |acc, (h, w)| acc + h * *w);

    // −i·ad(H) is Hermitian because ad(H) is real antisymmetric.
    let herm = generic.map(|v| Complex64::new(0.0, -v));
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));

    let mut roots = Vec::new();
    let mut cartan_count = 0;
    for &idx in &order {
        let mu = eig.eigenvalues[idx];
        if mu.abs() <= ZERO_ROOT {
            cartan_count += 1;
            continue;
        }
        let size = order.iter().filter(|o| (eig.eigenvalues[**o] - mu).abs() <= 1e-6).count();
        let v = eig.eigenvectors.column(idx);
        let root: [f64; RANK] = std::array::from_fn(|a| {
            let hv = hs[a].map(|x| Complex64::new(0.0, -x)) * v;
            v.dotc(&hv).re
        });
        if size != 1 {
            return Err(Error::DegenerateRootSpace { size, root: root.to_vec() });
        }
        roots.push(root);
    }
    if cartan_count != RANK {
        return Err(Error::CartanDimMismatch { found: cartan_count });
    }

    let length_defect = roots.iter().map(|r| (dot(r, r) - 2.0).abs()).fold(0.0, f64::max);
    let positive: Vec<[f64; RANK]> = roots.iter().copied().filter(is_positive).collect();
    let simple = simple_roots(&positive);
    let cm = cartan_matrix(&simple);
    let cartan_determinant = DMatrix::from_fn(simple.len(), simple.len(), |i, j| cm[i][j]).determinant();
    let cartan_matrix = cm.iter().map(|row| row.iter().map(|x| x.round() as i64).collect()).collect();
    let aligned = align(&simple, &roots);
    let snap_defect = aligned.as_ref().map_or(f64::INFINITY, |a| a.1);
    Ok(RootDatum {
        roots,
        positive,
        simple,
        cartan_matrix,
        cartan_determinant,
        length_defect,
        snap_defect,
        aligned: aligned.map(|a| a.0),
        exponents: [3, 9, 11, 15, 17, 23],
    })
}

/// Positive roots that are not the sum of two positive roots.
pub fn simple_roots(positive: &[[f64; RANK]]) -> Vec<[f64; RANK]> {
    let close = |a: &[f64; RANK], b: &[f64; RANK]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-6);
    positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                let diff: [f64; RANK] = std::array::from_fn(|k| r[k] - a[k]);
                positive.iter().any(|b| close(b, &diff))
            })
        })
        .copied()
        .collect()
}

/// Coefficients of `v` in the basis `simple`.
pub fn simple_coefficients(simple: &[[f64; RANK]], v: &[f64; RANK]) -> Option<[f64; RANK]> {
    let m = DMatrix::from_fn(RANK, RANK, |i, j| simple[j][i]);
    let x = m.lu().solve(&DVector::from_column_slice(v))?;
    Some(std::array::from_fn(|k| x[k]))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn snap(v: &[f64; RANK]) -> [f64; RANK] {
    let s = 3f64.sqrt() / 2.0;
    std::array::from_fn(|k| if k < 5 { (v[k] * 2.0).round() / 2.0 } else { (v[k] / s).round() * s })
}

/// Finds a permutation σ with Gram(found_σ) = Gram(published), maps the roots
/// by the orthogonal map found_σ(i) ↦ r_i and snaps them to the lattice.
fn align(simple: &[[f64; RANK]], roots: &[[f64; RANK]]) -> Option<(Alignment, f64)> {
    if simple.len() != RANK {
        return None;
    }
    let published = published_simple_roots();
    let target = cartan_matrix(&published);
    for p in permutations(RANK) {
        let permuted: Vec<[f64; RANK]> = p.iter().map(|&i| simple[i]).collect();
        let cm = cartan_matrix(&permuted);
        let same = cm.iter().zip(&target).all(|(a, b)| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-6));
        if !same {
            continue;
        }
        // Q·found_σ(i) = r_i: Q = R·F⁻¹ with columns r_i and found_σ(i).
        let f = DMatrix::from_fn(RANK, RANK, |i, j| permuted[j][i]);
        let r = DMatrix::from_fn(RANK, RANK, |i, j| published[j][i]);
        let q = &r * f.try_inverse()?;
        let mut defect: f64 = 0.0;
        let mut generated = true;
        let roots_l_frame: Vec<[f64; RANK]> = roots
            .iter()
            .map(|root| {
                let v = &q * DVector::from_column_slice(root);
                let raw: [f64; RANK] = std::array::from_fn(|k| v[k]);
                let snapped = snap(&raw);
                for k in 0..RANK {
                    defect = defect.max((raw[k] - snapped[k]).abs());
                }
                match simple_coefficients(&published, &snapped) {
                    Some(c) => {
                        let integral = c.iter().all(|x| (x - x.round()).abs() < 1e-9);
                        let signed = c.iter().all(|x| *x > -1e-9) || c.iter().all(|x| *x < 1e-9);
                        generated &= integral && signed;
                    }
                    None => generated = false,
                }
                snapped
            })
            .collect();
        let permutation: [usize; RANK] = std::array::from_fn(|k| p[k]);
        if defect > SNAP_TOL {
            generated = false;
        }
        return Some((Alignment { permutation, roots_l_frame, generated_by_published: generated }, defect));
    }
    None
}

/// Cartan subalgebra and roots of a compact basis.
pub fn root_datum(basis: &LieBasis, tensor: &StructureTensor, seed: u64) -> Result<(Cartan, RootDatum)> {
    if basis.metric().iter().any(|s| *s < 0.0) {
        return Err(Error::InvalidArgument("roots need the compact form".into()));
    }
    let cartan = find_cartan(tensor, seed)?;
    let datum = compute_roots(tensor, &cartan, seed.wrapping_add(1))?;
    Ok((cartan, datum))
}
