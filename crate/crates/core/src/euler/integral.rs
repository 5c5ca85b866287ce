use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::Serialize;

use super::measure::{single_variable_factors, triangle_factor, CoordinateBox, FLAT};
use crate::error::{Error, Result};
use crate::volume::e6_volume_closed_form;

pub const MIN_ORDER: usize = 8;
const CONVERGENCE_TOL: f64 = 1e-8;

fn rule(order: usize) -> Result<GaussLegendre> {
    NonZeroUsize::new(order)
        .filter(|n| n.get() >= MIN_ORDER)
        .map(GaussLegendre::new)
        .ok_or_else(|| Error::InvalidArgument(format!("quadrature order must be at least {MIN_ORDER}, got {order}")))
}

pub fn integrate_1d(f: impl Fn(f64) -> f64, a: f64, b: f64, order: usize) -> Result<f64> {
    Ok(rule(order)?.integrate(a, b, f))
}

/// ∫ over |x26| ≤ x25/√3, 0 ≤ x25 ≤ π/2, via x26 = v·x25/√3 (Duffy).
pub fn triangle_integral(order: usize) -> Result<f64> {
    let r = rule(order)?;
    let s3 = 3f64.sqrt();
    Ok(r.integrate(0.0, FRAC_PI_2, |x25| {
        let h = x25 / s3;
        h * r.integrate(-1.0, 1.0, |v| triangle_factor(x25, v * h))
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorIntegral {
    pub coordinate: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegralAtOrder {
    pub order: usize,
    pub factors: Vec<FactorIntegral>,
    pub triangle: f64,
    pub value: f64,
}

/// 2⁷ · Π ∫ f_k · (2π)⁹ · ∫∫ triangle.
pub fn measure_integral(order: usize) -> Result<IntegralAtOrder> {
    let domain = CoordinateBox::default();
    let origin = vec![0.0; 26];
    let factors: Vec<FactorIntegral> = single_variable_factors()
        .par_iter()
        .map(|f| {
            let (a, b) = domain.bounds(f.coordinate, &origin);
            integrate_1d(f.f, a, b, order).map(|value| FactorIntegral { coordinate: f.coordinate, value })
        })
        .collect::<Result<_>>()?;
    let triangle = triangle_integral(order)?;
    let flat = (2.0 * PI).powi(FLAT.len() as i32);
    let value = 128.0 * factors.iter().map(|f| f.value).product::<f64>() * flat * triangle;
    Ok(IntegralAtOrder { order, factors, triangle, value })
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeIntegral {
    pub coarse: IntegralAtOrder,
    pub fine: IntegralAtOrder,
    pub relative_change: f64,
    /// ∫_R dμ_M at the doubled order.
    pub value: f64,
    pub e6_volume: f64,
    /// Vol(E6) / I.
    pub implied_f4_volume: f64,
}

/// I at `order` and `2·order`; NONCONVERGED if they differ by more than 1e−8 relative.
pub fn volume_integral(order: usize) -> Result<VolumeIntegral> {
    let coarse = measure_integral(order)?;
    let fine = measure_integral(2 * order)?;
    let relative_change = (coarse.value - fine.value).abs() / fine.value.abs();
    if relative_change.is_nan() || relative_change > CONVERGENCE_TOL {
        return Err(Error::NonConverged { order, doubled: 2 * order, relative: relative_change });
    }
    let value = fine.value;
    let e6_volume = e6_volume_closed_form();
    Ok(VolumeIntegral { coarse, fine, relative_change, value, e6_volume, implied_f4_volume: e6_volume / value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_factors() {
        assert!((integrate_1d(|x| x.sin(), 0.0, PI, 16).unwrap() - 2.0).abs() < 1e-14);
        let beta = integrate_1d(|x| x.cos().powi(4) * x.sin().powi(2), 0.0, FRAC_PI_2, 16).unwrap();
        assert!((beta - PI / 32.0).abs() < 1e-15);
        let half = integrate_1d(|x| (x / 2.0).sin().powi(15) * (x / 2.0).cos().powi(7), 0.0, PI, 32).unwrap();
        assert!((half - 1.0 / 1320.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_low_order() {
        assert!(integrate_1d(|x| x, 0.0, 1.0, 4).is_err());
        assert!(measure_integral(0).is_err());
    }

    #[test]
    fn invariant_under_interval_splitting() {
        for f in single_variable_factors() {
            let (a, b) = CoordinateBox::default().bounds(f.coordinate, &[0.0; 26]);
            let m = 0.37 * a + 0.63 * b;
            let whole = integrate_1d(f.f, a, b, 48).unwrap();
            let split = integrate_1d(f.f, a, m, 48).unwrap() + integrate_1d(f.f, m, b, 48).unwrap();
            assert!((whole - split).abs() <= 1e-10 * whole.abs(), "x{}", f.coordinate);
        }
    }

    #[test]
    fn bit_stable_across_runs() {
        let a = measure_integral(24).unwrap().value;
        let b = measure_integral(24).unwrap().value;
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
