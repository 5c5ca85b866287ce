//! Compact E6 in its 27-dimensional representation, built from the
//! octonions and the exceptional Jordan algebra.

pub mod e6;
pub mod error;
pub mod euler;
pub mod export;
pub mod jordan;
pub mod linalg;
pub mod octonion;
pub mod oracle;
pub mod roots;
pub mod scalar;
pub mod volume;

pub use error::{Error, Result};

pub type Octonion64 = octonion::Octonion<f64>;
pub type OctonionQ = octonion::Octonion<num_rational::BigRational>;
pub type JordanElement64 = jordan::JordanElement<f64>;
pub type JordanElementQ = jordan::JordanElement<num_rational::BigRational>;
