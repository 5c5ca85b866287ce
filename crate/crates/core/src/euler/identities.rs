//! Adjoint-action identities used to block-triangularize J_M.
//!
//! Each check returns the largest residual it saw.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::e6::{AlgebraElement, LieBasis};
use crate::error::Result;

use super::blocks::conjugate;
use super::chain::{compose_element, omega_chain, Generator, GeneratorTable};
use super::exp::matrix_exp;

/// c1..c21, c30..c36.
pub fn so8_labels() -> Vec<usize> {
    (1..=21).chain(30..=36).collect()
}

/// Max Frobenius norm of e^{−α c̃53} c_L e^{α c̃53} − (cos α c_L + s·sin α c_{L+26}), L = 45..52.
///
/// `s = +1` is the identity as printed; `s = −1` is the form implied by the
/// structure constants (equivalently, the printed form with α → −α).
pub fn c53_rotation_residual(table: &GeneratorTable, alphas: &[f64], s: f64) -> Result<f64> {
    let t53 = table.get(Generator::Tilde(53))?;
    let mut worst: f64 = 0.0;
    for &alpha in alphas {
        let g = matrix_exp(t53, alpha)?;
        for l in 45..=52 {
            let cl = table.get(Generator::Plain(l))?;
            let cm = table.get(Generator::Plain(l + 26))?;
            let want = &cl.scale(alpha.cos()) + &cm.scale(s * alpha.sin());
            worst = worst.max((&conjugate(&g, cl) - &want).norm_fro());
        }
    }
    Ok(worst)
}

/// Max ‖[c̃70, c_I]‖ over I in 45..52, 71..78, and ‖[c̃70, c̃53]‖.
pub fn tilde70_commutation(table: &GeneratorTable) -> Result<f64> {
    let t70 = table.get(Generator::Tilde(70))?;
    let mut others: Vec<&AlgebraElement> = Vec::new();
    for i in (45..=52).chain(71..=78) {
        others.push(table.get(Generator::Plain(i))?);
    }
    others.push(table.get(Generator::Tilde(53))?);
    Ok(others.iter().map(|c| t70.bracket(c).norm_fro()).fold(0.0, f64::max))
}

/// Max ‖[c̃53, c_A]‖, ‖[c̃70, c_A]‖ over the so(8) block.
pub fn so8_commutation_residual(table: &GeneratorTable) -> Result<f64> {
    let t = [table.get(Generator::Tilde(53))?, table.get(Generator::Tilde(70))?];
    let mut worst: f64 = 0.0;
    for a in so8_labels() {
        let ca = table.get(Generator::Plain(a))?;
        for x in t {
            worst = worst.max(x.bracket(ca).norm_fro());
        }
    }
    Ok(worst)
}

/// Norm of the part of x outside span{c_l : l ∈ labels}.
fn outside_span(basis: &LieBasis, x: &AlgebraElement, labels: &[usize]) -> f64 {
    let mut rest = x.clone();
    for &l in labels {
        let c = basis.get(l);
        rest = &rest - &c.scale(x.inner(c));
    }
    rest.inner(&rest).abs().sqrt()
}

/// e^{−x c45} c_A e^{x c45} for A in so(8) stays in so(8) ⊕ span{c46..c52}.
pub fn c45_so8_residual(basis: &LieBasis, angles: &[f64]) -> Result<f64> {
    let c45 = basis.get(45);
    let mut allowed = so8_labels();
    allowed.extend(46..=52);
    let mut worst: f64 = 0.0;
    for &x in angles {
        let g = matrix_exp(c45, x)?;
        for a in so8_labels() {
            worst = worst.max(outside_span(basis, &conjugate(&g, basis.get(a)), &allowed));
        }
    }
    Ok(worst)
}

/// Largest |⟨ω⁻¹ c_L ω, c_J⟩| with L ≤ 52 outside 22..29, 37..44 and J in 54..69.
pub fn omega_coset_leakage(table: &GeneratorTable, points: &[[f64; 3]]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in points {
        let mut coords = vec![0.0; 26];
        coords[23..26].copy_from_slice(p);
        let omega = compose_element(table, &omega_chain(), &coords)?;
        for l in (1..=52).filter(|l| !(22..=29).contains(l) && !(37..=44).contains(l)) {
            let moved = conjugate(&omega, table.get(Generator::Plain(l))?);
            for j in 54..=69 {
                worst = worst.max(moved.inner(table.get(Generator::Plain(j))?).abs());
            }
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct So8BlockAction {
    /// Max ‖RᵀR − 1‖ for the action on span{c22..c29}.
    pub orthogonality_22: f64,
    /// Same for span{c37..c44}.
    pub orthogonality_37: f64,
    /// Max weight leaking out of each span.
    pub leakage: f64,
}

/// The adjoint action of e^{x c_A}, A in so(8), restricted to span{c22..c29}
/// and span{c37..c44}.
pub fn so8_block_action(basis: &LieBasis, angles: &[f64]) -> Result<So8BlockAction> {
    let mut out = So8BlockAction::default();
    for &x in angles {
        for a in so8_labels() {
            let g = matrix_exp(basis.get(a), x)?;
            for (block, slot) in [((22..=29), 0), ((37..=44), 1)] {
                let labels: Vec<usize> = block.collect();
                let r = DMatrix::from_fn(8, 8, |i, j| conjugate(&g, basis.get(labels[j])).inner(basis.get(labels[i])));
                let dev = (r.transpose() * &r - DMatrix::identity(8, 8)).amax();
                if slot == 0 {
                    out.orthogonality_22 = out.orthogonality_22.max(dev);
                } else {
                    out.orthogonality_37 = out.orthogonality_37.max(dev);
                }
                for &l in &labels {
                    out.leakage = out.leakage.max(outside_span(basis, &conjugate(&g, basis.get(l)), &labels));
                }
            }
        }
    }
    Ok(out)
}
