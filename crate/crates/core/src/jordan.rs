//! The exceptional Jordan algebra of 3×3 octonionic Hermitian matrices.
//!
//! An element is stored structurally: three real diagonal entries and the
//! three octonions above the diagonal, `o1` at (1,2), `o2` at (1,3) and `o3`
//! at (2,3). Entries below the diagonal are the conjugates.
//!
//! The 27 real coordinates are ordered `(a1, o1, o2, a2, o3, a3)`, so the
//! diagonal sits at 1-based positions 1, 18 and 27.

use nalgebra::DMatrix;

use crate::octonion::Octonion;
use crate::scalar::Scalar;

pub const DIM: usize = 27;

/// 0-based coordinate slots of the diagonal entries.
pub const DIAGONAL_SLOTS: [usize; 3] = [0, 17, 26];

/// 0-based first slot of each off-diagonal octonion.
pub const OFF_DIAGONAL_SLOTS: [usize; 3] = [1, 9, 18];

/// Weight of each coordinate in the trace form `Tr(X∘Y) = Σ w_k x_k y_k`.
pub fn trace_weight(slot: usize) -> u8 {
    if DIAGONAL_SLOTS.contains(&slot) {
        1
    } else {
        2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coordinates27<T>(pub [T; DIM]);

impl<T: Scalar> Coordinates27<T> {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| T::zero()))
    }

    /// Unit vector at 1-based position `pos`.
    pub fn unit(pos: usize) -> Self {
        let mut v = Self::zero();
        v.0[pos - 1] = T::one();
        v
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JordanElement<T> {
    pub diag: [T; 3],
    pub off: [Octonion<T>; 3],
}

impl<T: Scalar> JordanElement<T> {
    pub fn new(diag: [T; 3], off: [Octonion<T>; 3]) -> Self {
        Self { diag, off }
    }

    pub fn zero() -> Self {
        Self::diagonal([T::zero(), T::zero(), T::zero()])
    }

    pub fn identity() -> Self {
        Self::diagonal([T::one(), T::one(), T::one()])
    }

    pub fn diagonal(diag: [T; 3]) -> Self {
        Self { diag, off: std::array::from_fn(|_| Octonion::zero()) }
    }

    /// Diagonal idempotent E_ii, `i` in 1..=3.
    pub fn idempotent(i: usize) -> Self {
        let mut d = [T::zero(), T::zero(), T::zero()];
        d[i - 1] = T::one();
        Self::diagonal(d)
    }

    pub fn trace(&self) -> T {
        self.diag[0].clone() + self.diag[1].clone() + self.diag[2].clone()
    }

    /// Matrix entry (i, j), 0-based, with conjugates below the diagonal.
    pub fn entry(&self, i: usize, j: usize) -> Octonion<T> {
        match (i, j) {
            (i, j) if i == j => Octonion::real(self.diag[i].clone()),
            (0, 1) => self.off[0].clone(),
            (0, 2) => self.off[1].clone(),
            (1, 2) => self.off[2].clone(),
            (1, 0) => self.off[0].conj(),
            (2, 0) => self.off[1].conj(),
            (2, 1) => self.off[2].conj(),
            _ => panic!("entry ({i}, {j}) outside a 3x3 matrix"),
        }
    }

    fn product_entry(&self, other: &Self, i: usize, j: usize) -> Octonion<T> {
        (0..3).fold(Octonion::zero(), |acc, k| acc + &self.entry(i, k) * &other.entry(k, j))
    }

    /// Symmetrized product ½(XY + YX).
    pub fn jordan_product(&self, other: &Self) -> Self {
        let half = T::half();
        let sym = |i: usize, j: usize| {
            (self.product_entry(other, i, j) + other.product_entry(self, i, j)).scale(&half)
        };
        // the diagonal of XY + YX is real for Hermitian X, Y
        let diag = std::array::from_fn(|i| sym(i, i).re());
        Self { diag, off: [sym(0, 1), sym(0, 2), sym(1, 2)] }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            diag: std::array::from_fn(|i| self.diag[i].clone() + other.diag[i].clone()),
            off: std::array::from_fn(|i| &self.off[i] + &other.off[i]),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            diag: std::array::from_fn(|i| self.diag[i].clone() * s.clone()),
            off: std::array::from_fn(|i| self.off[i].scale(s)),
        }
    }

    /// Trace form Tr(X∘Y).
    pub fn trace_form(&self, other: &Self) -> T {
        self.jordan_product(other).trace()
    }

    /// Coordinate map into R^27.
    pub fn phi(&self) -> Coordinates27<T> {
        let mut v = Coordinates27::zero();
        for (k, slot) in DIAGONAL_SLOTS.iter().enumerate() {
            v.0[*slot] = self.diag[k].clone();
        }
        for (k, start) in OFF_DIAGONAL_SLOTS.iter().enumerate() {
            for (n, c) in self.off[k].coeffs.iter().enumerate() {
                v.0[start + n] = c.clone();
            }
        }
        v
    }

    pub fn phi_inv(v: &Coordinates27<T>) -> Self {
        Self {
            diag: DIAGONAL_SLOTS.map(|s| v.0[s].clone()),
            off: OFF_DIAGONAL_SLOTS.map(|s| Octonion::new(std::array::from_fn(|n| v.0[s + n].clone()))),
        }
    }

    /// Matrix of `X ↦ self ∘ X` acting on coordinates.
    pub fn right_mult_matrix(&self) -> DMatrix<T> {
        let mut m = DMatrix::from_element(DIM, DIM, T::zero());
        for col in 0..DIM {
            let image = self.jordan_product(&Self::phi_inv(&Coordinates27::unit(col + 1))).phi();
            for (row, x) in image.0.into_iter().enumerate() {
                m[(row, col)] = x;
            }
        }
        m
    }
}

/// The 26 traceless generators in their normative order.
///
/// Generator 1 is diag(1, 0, −1) and generator 18 is diag(0, 1, −1); every
/// other generator j is the unit vector at coordinate position j.
pub fn traceless_basis<T: Scalar>() -> Vec<JordanElement<T>> {
    (1..=26)
        .map(|j| {
            let mut v = Coordinates27::zero();
            match j {
                1 | 18 => {
                    v.0[j - 1] = T::one();
                    v.0[26] = -T::one();
                }
                _ => v.0[j - 1] = T::one(),
            }
            JordanElement::phi_inv(&v)
        })
        .collect()
}

/// Structure constants of the Jordan product on coordinates:
/// `table[i][j]` holds φ(e_i ∘ e_j) for coordinate unit vectors.
pub fn product_table<T: Scalar>() -> Vec<Vec<Coordinates27<T>>> {
    let units: Vec<JordanElement<T>> =
        (1..=DIM).map(|p| JordanElement::phi_inv(&Coordinates27::unit(p))).collect();
    units
        .iter()
        .map(|a| units.iter().map(|b| a.jordan_product(b).phi()).collect())
        .collect()
}
