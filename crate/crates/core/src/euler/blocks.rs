//! Coset projections of the Maurer–Cartan current and the A and U blocks.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::e6::AlgebraElement;
use crate::error::Result;
use crate::linalg::CMatrix;

use super::chain::{compose_element, currents, omega_chain, Chain, Generator, GeneratorTable};
use super::exp::group_inverse;

/// {c̃53, c̃70, c54..c69, c71..c78}.
pub fn coset_projection_labels() -> Vec<Generator> {
    let mut v = vec![Generator::Tilde(53), Generator::Tilde(70)];
    v.extend((54..=69).map(Generator::Plain));
    v.extend((71..=78).map(Generator::Plain));
    v
}

pub const U_ROWS: [usize; 16] = [22, 23, 24, 25, 26, 27, 28, 29, 37, 38, 39, 40, 41, 42, 43, 44];
pub const U_COLS: [usize; 16] = [54, 55, 56, 57, 58, 59, 60, 61, 62, 63, 64, 65, 66, 67, 68, 69];

/// g⁻¹ x g.
pub fn conjugate(g: &CMatrix, x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::new(group_inverse(g) * &x.entries * g)
}

/// Coefficients of x on the coset projection basis.
pub fn project_on_coset(table: &GeneratorTable, x: &AlgebraElement) -> Result<Vec<f64>> {
    coset_projection_labels().into_iter().map(|g| Ok(x.inner(table.get(g)?))).collect()
}

/// Row of J_M for coordinate `coordinate`: π_P(g⁻¹ ∂g/∂x_k) on the coset basis.
pub fn maurer_cartan_projection(
    table: &GeneratorTable,
    chain: &Chain,
    coords: &[f64],
    coordinate: usize,
) -> Result<Vec<f64>> {
    let j = currents(table, chain, coords)?;
    match j.get(&coordinate) {
        Some(x) => project_on_coset(table, x),
        None => Ok(vec![0.0; 26]),
    }
}

/// Full coordinate vector with only (x24, x25, x26) set.
pub fn omega_coords(x24: f64, x25: f64, x26: f64) -> Vec<f64> {
    let mut c = vec![0.0; 26];
    c[23] = x24;
    c[24] = x25;
    c[25] = x26;
    c
}

/// A with rows (x25, x26, x24) and columns (c̃53, c̃70, c71).
pub fn block_a(table: &GeneratorTable, x24: f64, x25: f64, x26: f64) -> Result<DMatrix<f64>> {
    let coords = omega_coords(x24, x25, x26);
    let j = currents(table, &omega_chain(), &coords)?;
    let cols = [Generator::Tilde(53), Generator::Tilde(70), Generator::Plain(71)];
    let mut a = DMatrix::zeros(3, 3);
    for (r, k) in [25, 26, 24].iter().enumerate() {
        for (c, g) in cols.iter().enumerate() {
            a[(r, c)] = j[k].inner(table.get(*g)?);
        }
    }
    Ok(a)
}

/// U_A^B = ⟨ω⁻¹ c_A ω, c_B⟩ with A in [`U_ROWS`], B in [`U_COLS`].
pub fn block_u(table: &GeneratorTable, x24: f64, x25: f64, x26: f64) -> Result<DMatrix<f64>> {
    let omega = compose_element(table, &omega_chain(), &omega_coords(x24, x25, x26))?;
    let mut u = DMatrix::zeros(16, 16);
    for (r, a) in U_ROWS.iter().enumerate() {
        let moved = conjugate(&omega, table.get(Generator::Plain(*a))?);
        for (c, b) in U_COLS.iter().enumerate() {
            u[(r, c)] = moved.inner(table.get(Generator::Plain(*b))?);
        }
    }
    Ok(u)
}

pub fn det_a_closed(x25: f64) -> f64 {
    x25.sin()
}

pub fn det_u_closed(x25: f64, x26: f64) -> f64 {
    let s = 3f64.sqrt() / 2.0;
    (s * x26 + x25 / 2.0).sin().powi(8) * (s * x26 - x25 / 2.0).sin().powi(8)
}

/// sin x20 cos x21 cos x22 sin²x22 sin²x23 cos⁴x23 sin⁷x24 sin⁷x25 (x is 1-based).
pub fn det_c_formula(x: &[f64]) -> f64 {
    let v = |k: usize| x[k - 1];
    v(20).sin()
        * v(21).cos()
        * v(22).cos()
        * v(22).sin().powi(2)
        * v(23).sin().powi(2)
        * v(23).cos().powi(4)
        * v(24).sin().powi(7)
        * v(25).sin().powi(7)
}

/// 2⁷ sin¹⁵(x16/2) cos⁷(x16/2) times the x4..x8 and x12..x15 factors.
pub fn det_dtilde_formula(x: &[f64]) -> f64 {
    let v = |k: usize| x[k - 1];
    128.0
        * (v(16) / 2.0).sin().powi(15)
        * (v(16) / 2.0).cos().powi(7)
        * v(4).sin()
        * v(5).cos()
        * v(6).cos()
        * v(6).sin().powi(2)
        * v(7).cos().powi(4)
        * v(7).sin().powi(2)
        * v(8).sin().powi(7)
        * v(12).sin()
        * v(13).cos()
        * v(14).cos()
        * v(14).sin().powi(2)
        * v(15).cos().powi(2)
        * v(15).sin().powi(4)
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockDeterminants {
    pub det_a_closed: f64,
    /// Signed; compare in absolute value since the row order is a convention.
    pub det_a_numeric: f64,
    pub det_u_closed: f64,
    pub det_u_numeric: f64,
    pub det_c_formula: f64,
    pub det_dtilde_formula: f64,
    /// detC and detD̃ need the external f4 chain and are formula evaluations only.
    pub c_and_dtilde_verified: bool,
}

impl BlockDeterminants {
    pub fn a_difference(&self) -> f64 {
        (self.det_a_numeric.abs() - self.det_a_closed.abs()).abs()
    }

    pub fn u_difference(&self) -> f64 {
        (self.det_u_numeric - self.det_u_closed).abs()
    }
}

/// All four determinants at a 26-coordinate point (1-based x_k at index k−1).
pub fn block_determinants(table: &GeneratorTable, x: &[f64]) -> Result<BlockDeterminants> {
    let (x24, x25, x26) = (x[23], x[24], x[25]);
    Ok(BlockDeterminants {
        det_a_closed: det_a_closed(x25),
        det_a_numeric: block_a(table, x24, x25, x26)?.determinant(),
        det_u_closed: det_u_closed(x25, x26),
        det_u_numeric: block_u(table, x24, x25, x26)?.determinant(),
        det_c_formula: det_c_formula(x),
        det_dtilde_formula: det_dtilde_formula(x),
        c_and_dtilde_verified: false,
    })
}
