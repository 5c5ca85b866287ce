mod common;

use common::{oracle, reference, tensor};
use e6_core::e6::{build_e6, killing_form, structure_constants, Form, TypoReport};
use e6_core::linalg::max_abs;

#[test]
fn coset_block_matches_curated_matrices() {
    let basis = &reference().basis;
    for a in 53..=78 {
        let d = max_abs(&(&basis.get(a).entries - oracle().matrices_curated.matrix(a)));
        assert!(d <= 1e-10, "c{a}: {d:e}");
    }
}

#[test]
fn raw_matrices_differ_only_at_the_known_defects() {
    let basis = &reference().basis;
    let bad: Vec<usize> = (53..=78)
        .filter(|a| max_abs(&(&basis.get(*a).entries - oracle().matrices_raw.matrix(*a))) > 1e-10)
        .collect();
    assert_eq!(bad, vec![57, 63, 75]);
}

#[test]
fn reference_basis_is_orthonormal_and_compact() {
    let basis = &reference().basis;
    assert_eq!(basis.len(), 78);
    assert!(basis.gram_deviation() <= 1e-9, "{}", basis.gram_deviation());
    assert!(basis.metric().iter().all(|s| *s == 1.0));
    for c in &basis.elements {
        assert!(c.trace().norm() < 1e-12);
    }
}

#[test]
fn reconstruction_report() {
    let r = &reference().reconstruction;
    assert_eq!(r.system_rank, 52);
    let mut excluded = vec![];
    for f in &r.fits {
        assert!(f.residual <= 1e-9, "c{}: {:e}", f.index, f.residual);
        excluded.extend(f.excluded.iter().map(|e| (f.index, e.j, e.k)));
    }
    // Only pairs touched by the seven misprinted raw constants.
    excluded.sort();
    let want = [(13, 66, 68), (22, 61, 70), (25, 68, 74), (25, 69, 74), (27, 64, 77), (27, 65, 77), (32, 57, 58), (48, 57, 62), (52, 56, 68), (52, 57, 58)];
    assert_eq!(excluded, want);
}

#[test]
fn structure_tensor_invariants() {
    let t = tensor();
    let d = t.diagnostics;
    assert!(d.antisymmetry <= 1e-10);
    assert!(d.closure <= 1e-9);
    assert!(d.imaginary <= 1e-11);
    let j = t.jacobi_residual();
    assert!(j <= 1e-9);
}

#[test]
fn published_anchor_values() {
    let t = tensor();
    assert!((t.get(1, 54, 55) - 0.5).abs() <= 1e-9);
    assert!((t.get(37, 53, 62) + 1.0).abs() <= 1e-9);
    assert!((t.get(45, 70, 71) + 3f64.sqrt() / 2.0).abs() <= 1e-9);
}

#[test]
fn typo_report_against_both_tables() {
    let raw = TypoReport::build(&oracle().structure_raw, tensor(), Some(&reference().reconstruction), 1e-9);
    let curated = TypoReport::build(&oracle().structure_curated, tensor(), None, 1e-9);
    assert_eq!(raw.mismatches.len(), 7);
    assert!(curated.mismatches.is_empty());
}

#[test]
fn killing_form_is_minus_24() {
    let k = killing_form(tensor());
    assert!((k.lambda + 24.0).abs() < 1e-9);
    assert!(k.max_deviation <= 1e-8 * 24.0);
    assert_eq!(k.signature, (0, 78, 0));
}

#[test]
fn split_form_signature() {
    let basis = build_e6(Form::Split).unwrap();
    let t = structure_constants(&basis).unwrap();
    let k = killing_form(&t);
    assert_eq!(k.signature, (26, 52, 0));
}
