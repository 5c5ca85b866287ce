//! Euler-type parametrization of E6 over F4: exponential chains, the
//! Maurer–Cartan current on the coset, its block determinants, the Haar
//! density on the 26 coset coordinates and its integral.

mod blocks;
mod chain;
mod exp;
mod integral;
mod measure;
pub mod identities;

pub use blocks::{
    block_a, block_determinants, block_u, conjugate, coset_projection_labels, det_a_closed, det_c_formula,
    det_dtilde_formula, det_u_closed, maurer_cartan_projection, omega_coords, project_on_coset, BlockDeterminants,
    U_COLS, U_ROWS,
};
pub use chain::{
    compose_element, coset_chain, currents, currents_finite_difference, omega_chain, Chain, Factor, Generator,
    GeneratorTable,
};
pub use exp::{group_defects, group_inverse, matrix_exp};
pub use integral::{
    integrate_1d, measure_integral, triangle_integral, volume_integral, FactorIntegral, IntegralAtOrder,
    VolumeIntegral, MIN_ORDER,
};
pub use measure::{
    measure_density, measure_density_checked, single_variable_factors, triangle_factor, CoordinateBox, DensityValue,
    Factor1d, Range, FLAT,
};
