//! Sphere volumes and the Macdonald formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Homology exponents of E6.
pub const E6_EXPONENTS: [u32; 6] = [3, 9, 11, 15, 17, 23];
/// Homology exponents of F4.
pub const F4_EXPONENTS: [u32; 4] = [3, 11, 15, 23];
/// Lattice factor that makes the Macdonald product equal the closed form of Vol(E6).
pub const E6_LATTICE_POWER_OF_TWO: i32 = 36;

/// (prime, exponent) pairs in increasing prime order.
pub type PrimePowers = Vec<(u64, u32)>;

/// coefficient · π^power with an exact rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMonomial {
    pub coefficient: BigRational,
    pub power: u32,
}

impl PiMonomial {
    pub fn one() -> Self {
        Self { coefficient: BigRational::one(), power: 0 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { coefficient: &self.coefficient * &other.coefficient, power: self.power + other.power }
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.power as i32)
    }

    /// Prime factorization of numerator and denominator of the coefficient.
    pub fn factorize(&self) -> (PrimePowers, PrimePowers) {
        (factor(self.coefficient.numer()), factor(self.coefficient.denom()))
    }
}

impl std::fmt::Display for PiMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |fs: &[(u64, u32)]| {
            if fs.is_empty() {
                "1".to_string()
            } else {
                fs.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect::<Vec<_>>().join("·")
            }
        };
        let (num, den) = self.factorize();
        let lead = if num.is_empty() { String::new() } else { format!("{}·", show(&num)) };
        write!(f, "{lead}π^{}/({})", self.power, show(&den))
    }
}

fn factor(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.magnitude().clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !n.is_one() && !n.is_zero() {
        let mut e = 0;
        while (&n % p).is_zero() {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
        if p > 1_000_000 {
            break;
        }
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Vol(Sⁿ) = 2π^((n+1)/2) / Γ((n+1)/2), exactly.
///
/// Odd n: 2π^m/(m−1)! with m = (n+1)/2. Even n = 2k: 2^(2k+1) k! π^k / (2k)!.
pub fn sphere_volume_exact(n: u32) -> PiMonomial {
    if n % 2 == 1 {
        let m = n.div_ceil(2);
        PiMonomial { coefficient: BigRational::new(BigInt::from(2), factorial(m - 1)), power: m }
    } else {
        let k = n / 2;
        let num = (BigInt::one() << (2 * k + 1)) * factorial(k);
        PiMonomial { coefficient: BigRational::new(num, factorial(2 * k)), power: k }
    }
}

pub fn sphere_volume(n: u32) -> f64 {
    sphere_volume_exact(n).to_f64()
}

pub fn sphere_product_exact(d: &[u32]) -> PiMonomial {
    d.iter().fold(PiMonomial::one(), |acc, n| acc.mul(&sphere_volume_exact(*n)))
}

/// lattice_factor · Π Vol(S^{d_i}).
pub fn macdonald_volume(d: &[u32], lattice_factor: f64) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::InvalidArgument("empty exponent list".into()));
    }
    if lattice_factor.is_nan() || lattice_factor <= 0.0 {
        return Err(Error::InvalidArgument(format!("lattice factor must be positive, got {lattice_factor}")));
    }
    Ok(lattice_factor * sphere_product_exact(d).to_f64())
}

/// √3 · 2^36.
pub fn e6_lattice_factor() -> f64 {
    3f64.sqrt() * 2f64.powi(E6_LATTICE_POWER_OF_TWO)
}

/// The rational part of √3·2^17·π^42/(3^10·5^5·7^3·11), without √3.
pub fn e6_closed_form_exact() -> PiMonomial {
    let den = BigInt::from(3u64.pow(10) * 5u64.pow(5) * 7u64.pow(3) * 11);
    PiMonomial { coefficient: BigRational::new(BigInt::from(1u64 << 17), den), power: 42 }
}

/// √3·2^17·π^42/(3^10·5^5·7^3·11).
pub fn e6_volume_closed_form() -> f64 {
    3f64.sqrt() * e6_closed_form_exact().to_f64()
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeSummary {
    pub sphere_product: String,
    pub sphere_product_value: f64,
    pub lattice_factor: f64,
    pub macdonald: f64,
    pub closed_form: f64,
    pub relative_error: f64,
}

pub fn e6_volume_summary() -> VolumeSummary {
    let sp = sphere_product_exact(&E6_EXPONENTS);
    let lattice_factor = e6_lattice_factor();
    let macdonald = lattice_factor * sp.to_f64();
    let closed_form = e6_volume_closed_form();
    VolumeSummary {
        sphere_product: sp.to_string(),
        sphere_product_value: sp.to_f64(),
        lattice_factor,
        macdonald,
        closed_form,
        relative_error: (macdonald - closed_form).abs() / closed_form,
    }
}
