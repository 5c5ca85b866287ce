use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::Serialize;

/// Range of one coset coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Range {
    Interval(f64, f64),
    /// |x26| ≤ x25/√3.
    Triangle,
}

/// Parameter domain of x1..x26.
#[derive(Debug, Clone, Serialize)]
pub struct CoordinateBox {
    pub ranges: [Range; 26],
}

/// Coordinates entering only through the overall (2π)⁹.
pub const FLAT: [usize; 9] = [1, 2, 3, 9, 10, 11, 17, 18, 19];

impl Default for CoordinateBox {
    fn default() -> Self {
        let mut ranges = [Range::Interval(0.0, 0.0); 26];
        let set = |r: &mut [Range; 26], ks: &[usize], v: Range| ks.iter().for_each(|k| r[k - 1] = v);
        set(&mut ranges, &FLAT, Range::Interval(0.0, 2.0 * PI));
        set(&mut ranges, &[4, 8, 12, 16, 20, 24], Range::Interval(0.0, PI));
        set(&mut ranges, &[5, 13, 21], Range::Interval(-FRAC_PI_2, FRAC_PI_2));
        set(&mut ranges, &[6, 7, 14, 15, 22, 23, 25], Range::Interval(0.0, FRAC_PI_2));
        ranges[25] = Range::Triangle;
        Self { ranges }
    }
}

impl CoordinateBox {
    pub fn bounds(&self, k: usize, x: &[f64]) -> (f64, f64) {
        match self.ranges[k - 1] {
            Range::Interval(a, b) => (a, b),
            Range::Triangle => {
                let h = x[24] / 3f64.sqrt();
                (-h, h)
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == 26
            && (1..=26).all(|k| {
                let (a, b) = self.bounds(k, x);
                x[k - 1] >= a && x[k - 1] <= b
            })
    }

    /// Uniform point with every coordinate at least `margin` (relative) from its bounds.
    pub fn sample_interior<R: Rng>(&self, rng: &mut R, margin: f64) -> Vec<f64> {
        let mut x = vec![0.0; 26];
        for k in 1..=26 {
            let (a, b) = self.bounds(k, &x);
            let pad = margin * (b - a);
            x[k - 1] = rng.random_range(a + pad..b - pad);
        }
        x
    }

    /// Centre of every interval; x25 = π/2, x26 = 0.
    pub fn midpoint(&self) -> Vec<f64> {
        let mut x = vec![0.0; 26];
        for k in 1..=26 {
            let (a, b) = self.bounds(k, &x);
            x[k - 1] = if k == 25 { b } else { (a + b) / 2.0 };
        }
        x
    }
}

/// The x25/x26 factor sin⁸x25 sin⁸(√3/2 x26 + x25/2) sin⁸(√3/2 x26 − x25/2).
pub fn triangle_factor(x25: f64, x26: f64) -> f64 {
    let s = 3f64.sqrt() / 2.0;
    x25.sin().powi(8) * (s * x26 + x25 / 2.0).sin().powi(8) * (s * x26 - x25 / 2.0).sin().powi(8)
}

/// One single-variable factor of the density.
#[derive(Debug, Clone, Copy)]
pub struct Factor1d {
    pub coordinate: usize,
    pub f: fn(f64) -> f64,
}

/// Single-variable factors of the density other than x25, x26 and the flat angles.
pub fn single_variable_factors() -> Vec<Factor1d> {
    let f = |coordinate, f| Factor1d { coordinate, f };
    vec![
        f(4, |x| x.sin()),
        f(5, |x| x.cos()),
        f(6, |x| x.cos() * x.sin().powi(2)),
        f(7, |x| x.cos().powi(4) * x.sin().powi(2)),
        f(8, |x| x.sin().powi(7)),
        f(12, |x| x.sin()),
        f(13, |x| x.cos()),
        f(14, |x| x.cos() * x.sin().powi(2)),
        f(15, |x| x.cos().powi(2) * x.sin().powi(4)),
        f(16, |x| (x / 2.0).sin().powi(15) * (x / 2.0).cos().powi(7)),
        f(20, |x| x.sin()),
        f(21, |x| x.cos()),
        f(22, |x| x.cos() * x.sin().powi(2)),
        f(23, |x| x.sin().powi(2) * x.cos().powi(4)),
        f(24, |x| x.sin().powi(7)),
    ]
}

/// dμ_M at x (x_k at index k−1).
pub fn measure_density(x: &[f64]) -> f64 {
    let single: f64 = single_variable_factors().iter().map(|f| (f.f)(x[f.coordinate - 1])).product();
    128.0 * single * triangle_factor(x[24], x[25])
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityValue {
    pub value: f64,
    pub inside: bool,
}

pub fn measure_density_checked(x: &[f64]) -> DensityValue {
    DensityValue { value: measure_density(x), inside: CoordinateBox::default().contains(x) }
}
