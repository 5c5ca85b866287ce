mod common;

use common::{reference, table, tensor};
use e6_core::euler::identities::{
    c53_rotation_residual, so8_commutation_residual, c45_so8_residual, omega_coset_leakage, so8_block_action, tilde70_commutation,
};
use e6_core::euler::{
    block_a, block_determinants, block_u, compose_element, coset_chain, currents, currents_finite_difference,
    group_defects, maurer_cartan_projection, matrix_exp, omega_chain, omega_coords, CoordinateBox, Generator,
    U_COLS, U_ROWS,
};
use e6_core::linalg::max_abs;
use e6_core::roots::{published_simple_roots, root_datum, simple_coefficients};
use e6_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

#[test]
fn root_system_of_the_reference_basis() {
    let (cartan, d) = root_datum(&reference().basis, tensor(), 11).unwrap();
    assert_eq!(cartan.coordinates.len(), 6);
    assert!(cartan.commutator_defect <= 1e-10);
    assert_eq!(d.roots.len(), 72);
    assert_eq!(d.positive.len(), 36);
    assert_eq!(d.simple.len(), 6);
    assert!(d.length_defect <= 1e-8);
    assert!((d.cartan_determinant - 3.0).abs() < 1e-9);
    for r in &d.roots {
        let neg: Vec<f64> = r.iter().map(|x| -x).collect();
        assert!(d.roots.iter().any(|s| s.iter().zip(&neg).all(|(a, b)| (a - b).abs() < 1e-8)));
    }
    for p in &d.positive {
        let c = simple_coefficients(&d.simple, p).unwrap();
        assert!(c.iter().all(|x| (x - x.round()).abs() < 1e-8 && *x > -1e-8));
    }
    let aligned = d.aligned.expect("Cartan matrix matches the published simple roots");
    assert!(aligned.generated_by_published);
    assert!(d.snap_defect <= 1e-6);
    for r in published_simple_roots() {
        assert!(aligned.roots_l_frame.iter().any(|s| s.iter().zip(&r).all(|(a, b)| (a - b).abs() < 1e-12)));
    }
}

#[test]
fn cartan_is_seed_independent_in_count() {
    for seed in [1, 2, 3] {
        let (_, d) = root_datum(&reference().basis, tensor(), seed).unwrap();
        assert_eq!(d.roots.len(), 72);
        assert!((d.cartan_determinant - 3.0).abs() < 1e-9);
    }
}

fn alpha_grid() -> Vec<f64> {
    (0..=16).map(|k| -PI + k as f64 * PI / 8.0).collect()
}

#[test]
fn c53_rotation_as_printed_conflicts_with_the_structure_constants() {
    // With s_{45,53,71} = −1/2 and s_{45,70,71} = −√3/2, [c45, c̃53] = −c71,
    // so the printed sign only holds with α → −α.
    let literal = c53_rotation_residual(table(), &alpha_grid(), 1.0).unwrap();
    let mirrored = c53_rotation_residual(table(), &alpha_grid(), -1.0).unwrap();
    assert!(literal > 1.0);
    assert!(mirrored <= 1e-9, "{mirrored:e}");
    let c45 = table().get(Generator::Plain(45)).unwrap();
    let t53 = table().get(Generator::Tilde(53)).unwrap();
    let c71 = table().get(Generator::Plain(71)).unwrap();
    assert!((&c45.bracket(t53) + c71).norm_fro() < 1e-12);
}

#[test]
fn tilde70_commutes_with_the_listed_generators() {
    assert!(tilde70_commutation(table()).unwrap() <= 1e-10);
}

#[test]
fn tilde_pair_commutes_with_so8() {
    assert!(so8_commutation_residual(table()).unwrap() <= 1e-9);
}

#[test]
fn c45_action_on_so8() {
    assert!(c45_so8_residual(&reference().basis, &[0.3, 1.1, 2.5, PI]).unwrap() <= 1e-9);
}

#[test]
fn only_the_listed_f4_generators_reach_c54_to_c69() {
    let pts = [[0.3, 0.7, 0.1], [2.0, 1.2, -0.4], [PI / 3.0, FRAC_PI_2, 0.5]];
    assert!(omega_coset_leakage(table(), &pts).unwrap() <= 1e-9);
}

#[test]
fn so8_acts_orthogonally() {
    let r = so8_block_action(&reference().basis, &[0.4, 1.9, -2.7]).unwrap();
    assert!(r.orthogonality_22 <= 1e-9);
    assert!(r.orthogonality_37 <= 1e-9);
    assert!(r.leakage <= 1e-9);
}

/// Printed ω⁻¹c_Aω expansion: (A, [(B, sign, kind)]) with kind 0 for
/// cos(x24/2)·sin(√3/2 x26 + x25/2) and 1 for sin(x24/2)·sin(√3/2 x26 − x25/2)
/// in rows 22..29, and kind 2 for sin(x24/2)·sin(√3/2 x26 + x25/2), kind 3 for
/// cos(x24/2)·sin(√3/2 x26 − x25/2) in rows 37..44.
type DisplayRow = (usize, [(usize, f64, u8); 2]);

fn printed_adjoint_display() -> Vec<DisplayRow> {
    let mut rows = vec![
        (22, [(61, 1.0, 0), (69, 1.0, 1)]),
        (23, [(57, -1.0, 0), (65, -1.0, 1)]),
        (24, [(60, -1.0, 0), (68, -1.0, 1)]),
        (25, [(55, 1.0, 0), (63, 1.0, 1)]),
        (26, [(59, -1.0, 0), (67, -1.0, 1)]),
        (27, [(58, 1.0, 0), (66, 1.0, 1)]),
        (28, [(56, 1.0, 0), (64, 1.0, 1)]),
        (29, [(54, -1.0, 0), (62, -1.0, 1)]),
    ];
    for k in 0..8 {
        rows.push((37 + k, [(54 + k, -1.0, 2), (62 + k, 1.0, 3)]));
    }
    rows
}

fn display_value(kind: u8, x24: f64, x25: f64, x26: f64) -> f64 {
    let s = 3f64.sqrt() / 2.0;
    let (plus, minus) = ((s * x26 + x25 / 2.0).sin(), (s * x26 - x25 / 2.0).sin());
    let (c, sn) = ((x24 / 2.0).cos(), (x24 / 2.0).sin());
    match kind {
        0 => c * plus,
        1 => sn * minus,
        2 => sn * plus,
        _ => c * minus,
    }
}

#[test]
fn adjoint_display_magnitudes_match_and_signs_split_by_block() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let (x24, x25) = (rng.random_range(0.0..PI), rng.random_range(0.0..FRAC_PI_2));
        let x26 = rng.random_range(-x25 / 3f64.sqrt()..x25 / 3f64.sqrt());
        let u = block_u(table(), x24, x25, x26).unwrap();
        for (a, terms) in printed_adjoint_display() {
            let r = U_ROWS.iter().position(|x| *x == a).unwrap();
            let mut printed_cols = vec![];
            for (b, sign, kind) in terms {
                let c = U_COLS.iter().position(|x| *x == b).unwrap();
                printed_cols.push(c);
                let want = sign * display_value(kind, x24, x25, x26);
                // Rows 22..29 carry the opposite sign in the basis fixed by the structure constants.
                let block_sign = if a <= 29 { -1.0 } else { 1.0 };
                assert!((u[(r, c)].abs() - want.abs()).abs() < 1e-12, "c{a} on c{b}");
                assert!((u[(r, c)] - block_sign * want).abs() < 1e-12, "c{a} on c{b}");
            }
            for c in (0..16).filter(|c| !printed_cols.contains(c)) {
                assert!(u[(r, c)].abs() < 1e-12);
            }
        }
    }
}

#[test]
fn block_a_structure() {
    let a = block_a(table(), 0.9, 0.6, 0.2).unwrap();
    assert!((a[(0, 0)] - 1.0).abs() < 1e-12);
    assert!((a[(1, 1)] - 1.0).abs() < 1e-12);
    assert!((a[(2, 2)].abs() - 0.6f64.sin()).abs() < 1e-12);
    for (r, c) in [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)] {
        assert!(a[(r, c)].abs() < 1e-12);
    }
}

#[test]
fn det_a_and_det_u_at_special_points() {
    let at = |x24, x25, x26| block_determinants(table(), &omega_coords(x24, x25, x26)).unwrap();
    let d = at(0.4, FRAC_PI_2, 0.1);
    assert!((d.det_a_numeric.abs() - 1.0).abs() < 1e-12);
    let d = at(0.4, 0.0, 0.0);
    assert!(d.det_a_numeric.abs() < 1e-12);
    assert!(d.det_u_numeric.abs() < 1e-12 && d.det_u_closed == 0.0);
}

#[test]
fn det_a_and_det_u_at_random_interior_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let domain = CoordinateBox::default();
    for _ in 0..100 {
        let x = domain.sample_interior(&mut rng, 1e-3);
        let d = block_determinants(table(), &x).unwrap();
        assert!(d.a_difference() <= 1e-9);
        assert!(d.u_difference() <= 1e-9);
        assert!(!d.c_and_dtilde_verified);
    }
}

#[test]
fn maurer_cartan_rows_of_omega() {
    let coords = omega_coords(0.5, FRAC_PI_2, 0.2);
    let chain = omega_chain();
    let row25 = maurer_cartan_projection(table(), &chain, &coords, 25).unwrap();
    let row26 = maurer_cartan_projection(table(), &chain, &coords, 26).unwrap();
    let row24 = maurer_cartan_projection(table(), &chain, &coords, 24).unwrap();
    assert!((row25[0] - 1.0).abs() < 1e-12);
    assert!((row26[1] - 1.0).abs() < 1e-12);
    // c71 is the 19th element of {c̃53, c̃70, c54..c69, c71..c78}.
    assert!((row24[18].abs() - 1.0).abs() < 1e-12);
}

#[test]
fn exact_currents_agree_with_finite_differences() {
    let coords = omega_coords(0.8, 0.5, -0.1);
    let exact = currents(table(), &omega_chain(), &coords).unwrap();
    let fd = currents_finite_difference(table(), &omega_chain(), &coords, 1e-5).unwrap();
    for (k, j) in &exact {
        let d = (j - &fd[k]).norm_fro();
        assert!(d < 1e-8, "x{k}: {d:e}");
    }
}

#[test]
fn full_chain_needs_the_external_generators() {
    let err = compose_element(table(), &coset_chain(), &[0.1; 26]).unwrap_err();
    assert!(matches!(err, Error::MissingGenerator(ref g) if g == "c~3"));
}

#[test]
fn plugged_generators_complete_the_chain() {
    let mut t = table().clone();
    for n in [1, 3, 5, 15, 16, 30, 35] {
        t.plug(n, reference().basis.get(n).clone());
    }
    let g = compose_element(&t, &coset_chain(), &[0.2; 26]).unwrap();
    let (u, d) = group_defects(&g);
    assert!(u <= 1e-10 && d <= 1e-10);
    let zero = compose_element(&t, &coset_chain(), &[0.0; 26]).unwrap();
    let dev = max_abs(&(zero - e6_core::linalg::CMatrix::identity(27, 27)));
    assert!(dev < 1e-12, "{dev:e}");
}

#[test]
fn omega_is_unitary() {
    let g = compose_element(table(), &omega_chain(), &omega_coords(PI, FRAC_PI_2, 0.0)).unwrap();
    let (u, d) = group_defects(&g);
    assert!(u <= 1e-10 && d <= 1e-10);
}

#[test]
fn exponentials_of_random_elements_are_special_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let basis = &reference().basis;
    for _ in 0..100 {
        let coeffs: Vec<f64> = (0..78).map(|_| rng.random_range(-1.0..1.0)).collect();
        let g = matrix_exp(&basis.combine(&coeffs), 1.0).unwrap();
        let (u, d) = group_defects(&g);
        assert!(u <= 1e-10 && d <= 1e-10, "{u:e} {d:e}");
    }
}
