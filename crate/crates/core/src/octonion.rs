//! Octonions in the basis e1..e8 with e1 the unit.
//!
//! Coefficients are stored 0-based (`coeffs[0]` is the e1 component); every
//! public constructor that takes a basis label uses the 1-based label.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// `PRODUCT_TABLE[i][j] = ±k` means e_(i+1) · e_(j+1) = ±e_k.
pub const PRODUCT_TABLE: [[i8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 5, 8, -3, 7, -6, -4],
    [3, -5, -1, 6, 2, -4, 8, -7],
    [4, -8, -6, -1, 7, 3, -5, 2],
    [5, 3, -2, -7, -1, 8, 4, -6],
    [6, -7, 4, -3, -8, -1, 2, 5],
    [7, 6, -8, 5, -4, -2, -1, 3],
    [8, 4, 7, -2, 6, -5, -3, -1],
];

#[derive(Debug, Clone, PartialEq)]
pub struct Octonion<T> {
    pub coeffs: [T; 8],
}

impl<T: Scalar> Octonion<T> {
    pub fn new(coeffs: [T; 8]) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: std::array::from_fn(|_| T::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(1)
    }

    pub fn real(x: T) -> Self {
        let mut o = Self::zero();
        o.coeffs[0] = x;
        o
    }

    /// Basis element e_label, `label` in 1..=8.
    pub fn basis(label: usize) -> Self {
        assert!((1..=8).contains(&label), "octonion basis label {label} out of range");
        let mut o = Self::zero();
        o.coeffs[label - 1] = T::one();
        o
    }

    /// Coefficient of e_label, `label` in 1..=8.
    pub fn coeff(&self, label: usize) -> &T {
        &self.coeffs[label - 1]
    }

    /// Coefficient vector in the basis order e1..e8.
    pub fn rho(&self) -> [T; 8] {
        self.coeffs.clone()
    }

    pub fn from_rho(v: [T; 8]) -> Self {
        Self { coeffs: v }
    }

    pub fn re(&self) -> T {
        self.coeffs[0].clone()
    }

    pub fn conj(&self) -> Self {
        let mut c = self.coeffs.clone();
        for x in c.iter_mut().skip(1) {
            *x = -x.clone();
        }
        Self { coeffs: c }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coeffs: std::array::from_fn(|i| self.coeffs[i].clone() * s.clone()) }
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Euclidean inner product of the coefficient vectors, equal to Re(a · conj(b)).
    pub fn dot(&self, other: &Self) -> T {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }
}

impl<T: Scalar + num_traits::Float> Octonion<T> {
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }
}

impl<T: Scalar> Add for Octonion<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Add for &Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: Self) -> Octonion<T> {
        Octonion { coeffs: std::array::from_fn(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()) }
    }
}

impl<T: Scalar> Sub for Octonion<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Scalar> Sub for &Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: Self) -> Octonion<T> {
        Octonion { coeffs: std::array::from_fn(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()) }
    }
}

impl<T: Scalar> Neg for Octonion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion { coeffs: self.coeffs.map(|x| -x) }
    }
}

impl<T: Scalar> Mul for &Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, rhs: Self) -> Octonion<T> {
        let mut out = Octonion::<T>::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let entry = PRODUCT_TABLE[i][j];
                let k = entry.unsigned_abs() as usize - 1;
                let term = a.clone() * b.clone();
                out.coeffs[k] = if entry > 0 {
                    out.coeffs[k].clone() + term
                } else {
                    out.coeffs[k].clone() - term
                };
            }
        }
        out
    }
}

impl<T: Scalar> Mul for Octonion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
