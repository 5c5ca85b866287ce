//! Acceptance suite: one PASS/FAIL line per criterion, sub-checks indented.
//!
//! Exit status is nonzero when a criterion outside `KNOWN_RED` fails, or when
//! any criterion fails and `E6_ACCEPTANCE_STRICT` is set.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use e6_core::e6::{
    build_e6, build_reference_basis, derivation_space, killing_form, structure_constants, FitMode, Form,
    ReferenceBasis, StructureTensor, TypoReport,
};
use e6_core::euler::identities::c53_rotation_residual;
use e6_core::euler::{
    block_determinants, group_defects, matrix_exp, measure_density, volume_integral, CoordinateBox, GeneratorTable,
};
use e6_core::linalg::{max_abs, sorted_symmetric_eigen};
use e6_core::oracle::{load_oracle, Oracle};
use e6_core::roots::root_datum;
use e6_core::volume::{
    e6_lattice_factor, e6_volume_closed_form, macdonald_volume, sphere_product_exact, PiMonomial, E6_EXPONENTS,
    F4_EXPONENTS,
};

const DER_RUNTIME: Duration = Duration::from_secs(30);
const MATRIX_TOL: f64 = 1e-10;
const ANTISYMMETRY_TOL: f64 = 1e-10;
const JACOBI_TOL: f64 = 1e-9;
const CLOSURE_TOL: f64 = 1e-9;
const STRUCTURE_RUNTIME: Duration = Duration::from_secs(120);
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_FRACTION: f64 = 0.95;
const ORTHONORMAL_TOL: f64 = 1e-9;
const ROTATION_TOL: f64 = 1e-9;
const KILLING_REL_TOL: f64 = 1e-8;
const ROOT_LENGTH_TOL: f64 = 1e-8;
const VOLUME_REL_TOL: f64 = 1e-12;
const DENSITY_REL_TOL: f64 = 1e-12;
const DET_TOL: f64 = 1e-9;
const DET_POINTS: usize = 100;
const QUADRATURE_ORDER: usize = 32;
const DOUBLING_TOL: f64 = 1e-9;
const F4_CROSS_TOL: f64 = 1e-6;
const GROUP_TOL: f64 = 1e-10;
const GROUP_SAMPLES: usize = 100;

/// Criteria whose failure is a documented conflict in the source data.
const KNOWN_RED: [(usize, &str); 2] = [
    (5, "c~53 rotation sign contradicts the printed structure constants s_{45,53,71}, s_{45,70,71}"),
    (8, "Π Vol(S^d) has 2^19 in the denominator, not 2^18"),
];

struct Check {
    label: String,
    pass: Option<bool>,
}

struct Criterion {
    id: usize,
    title: &'static str,
    checks: Vec<Check>,
}

impl Criterion {
    fn new(id: usize, title: &'static str) -> Self {
        Self { id, title, checks: Vec::new() }
    }

    fn check(&mut self, pass: bool, label: impl Into<String>) {
        self.checks.push(Check { label: label.into(), pass: Some(pass) });
    }

    fn info(&mut self, label: impl Into<String>) {
        self.checks.push(Check { label: label.into(), pass: None });
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass != Some(false))
    }

    fn print(&self) {
        println!("{} {:>2}. {}", if self.passed() { "PASS" } else { "FAIL" }, self.id, self.title);
        for c in &self.checks {
            let tag = match c.pass {
                Some(true) => "ok  ",
                Some(false) => "FAIL",
                None => "info",
            };
            println!("       [{tag}] {}", c.label);
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn criterion1() -> Criterion {
    let mut c = Criterion::new(1, "Der(J3) nullspace dimension");
    let t = Instant::now();
    match derivation_space() {
        Ok(space) => {
            let elapsed = t.elapsed();
            let threshold = 1e6 * f64::EPSILON;
            c.check(space.dim() == 52, format!("dim = {} (rank {} of 729 unknowns)", space.dim(), space.rank));
            c.check(space.gap >= threshold, format!("singular-value gap {:.3e} >= {threshold:.3e}", space.gap));
            c.check(elapsed < DER_RUNTIME, format!("runtime {:.2?} < {DER_RUNTIME:?}", elapsed));
        }
        Err(e) => c.check(false, format!("derivation_space failed: {e}")),
    }
    c
}

fn criterion2(oracle: &Oracle, r: &ReferenceBasis) -> Criterion {
    let mut c = Criterion::new(2, "coset generators c53..c78 reproduce the printed matrices");
    let basis = &r.basis;
    let worst = (53..=78)
        .map(|a| max_abs(&(&basis.get(a).entries - oracle.matrices_curated.matrix(a))))
        .fold(0.0, f64::max);
    c.check(worst <= MATRIX_TOL, format!("max entry deviation {worst:.3e} <= {MATRIX_TOL:e} (curated table)"));
    let raw_bad: Vec<usize> = (53..=78)
        .filter(|a| max_abs(&(&basis.get(*a).entries - oracle.matrices_raw.matrix(*a))) > MATRIX_TOL)
        .collect();
    let defects: Vec<usize> = oracle.raw_matrix_defects.iter().map(|d| d.label).collect();
    c.info(format!("as printed, {raw_bad:?} differ; the structural scan of the printed matrices flags {defects:?}"));
    c.check(raw_bad == defects, "every printed-matrix difference is a detected printing defect");

    let s3 = 3f64.sqrt();
    let c53 = &basis.get(53).entries;
    let anchors = [
        ("c53 (1,1) = -i/2", c53[(0, 0)], Complex64::new(0.0, -0.5)),
        ("c53 (1,18) = -i/(2√3)", c53[(0, 17)], Complex64::new(0.0, -1.0 / (2.0 * s3))),
        ("c53 (1,19) = 0", c53[(0, 18)], Complex64::new(0.0, 0.0)),
        ("c70 (1,1) = -κ/2, κ = i/√3", basis.get(70).entries[(0, 0)], Complex64::new(0.0, -0.5 / s3)),
    ];
    for (label, got, want) in anchors {
        c.check((got - want).norm() <= MATRIX_TOL, format!("{label}: got {got:.12}"));
    }
    c.check((oracle.matrices_curated.kappa - Complex64::new(0.0, 1.0 / s3)).norm() < 1e-15, "table κ = i/√3");
    c.info("the listed anchor (1,19) is column 19 = first slot of the third octonion; the value sits at (1,18)");
    c
}

fn criterion3(r: &ReferenceBasis) -> (Criterion, Option<StructureTensor>) {
    let mut c = Criterion::new(3, "structure tensor invariants");
    let t = Instant::now();
    let tensor = match structure_constants(&r.basis) {
        Ok(t) => t,
        Err(e) => {
            c.check(false, format!("structure_constants failed: {e}"));
            return (c, None);
        }
    };
    let jacobi = tensor.jacobi_residual();
    let elapsed = t.elapsed();
    let d = tensor.diagnostics;
    c.info(format!("{} nonzero s_IJK with I<J<K", tensor.len()));
    c.check(d.antisymmetry <= ANTISYMMETRY_TOL, format!("antisymmetry {:.3e} <= {ANTISYMMETRY_TOL:e}", d.antisymmetry));
    c.check(jacobi <= JACOBI_TOL, format!("Jacobi {jacobi:.3e} <= {JACOBI_TOL:e}"));
    c.check(d.closure <= CLOSURE_TOL, format!("closure {:.3e} <= {CLOSURE_TOL:e}", d.closure));
    c.check(elapsed < STRUCTURE_RUNTIME, format!("runtime {elapsed:.2?} < {STRUCTURE_RUNTIME:?}"));
    (c, Some(tensor))
}

fn criterion4(oracle: &Oracle, r: &ReferenceBasis, tensor: &StructureTensor) -> Criterion {
    let mut c = Criterion::new(4, "printed structure constants");
    let report = TypoReport::build(&oracle.structure_raw, tensor, Some(&r.reconstruction), ORACLE_TOL);
    c.check(
        report.match_fraction() >= ORACLE_FRACTION,
        format!("{}/{} = {:.2}% match within {ORACLE_TOL:e}", report.matched, report.total, 100.0 * report.match_fraction()),
    );
    let diagnosed = report.mismatches.iter().all(|m| m.residual.is_finite() && m.excluded_by_fit);
    c.check(diagnosed, format!("{} mismatches reported, each with residual and fit exclusion", report.mismatches.len()));
    for m in &report.mismatches {
        c.info(format!(
            "s{:?} line {}: printed {:+.6}, computed {:+.6}",
            m.index_triple, m.line, m.oracle_value, m.computed_value
        ));
    }
    let findings = oracle.structure_raw.scan();
    let mismatch_lines: Vec<usize> = report.mismatches.iter().map(|m| m.line).collect();
    let grounded = findings.iter().all(|f| f.lines().iter().any(|l| mismatch_lines.contains(l)));
    c.check(!findings.is_empty() && grounded, format!("scan flags {} inconsistencies, all at reported mismatches", findings.len()));
    for f in &findings {
        c.info(format!("scan: {f}"));
    }
    c
}

fn alpha_grid() -> Vec<f64> {
    (0..=16).map(|k| -PI + k as f64 * PI / 8.0).collect()
}

fn criterion5(r: &ReferenceBasis, table: &GeneratorTable) -> Criterion {
    let mut c = Criterion::new(5, "f4 reconstruction");
    let rec = &r.reconstruction;
    c.check(rec.system_rank == 52 && rec.fits.len() == 52, format!("52 systems, column rank {}", rec.system_rank));
    c.info(format!("singular values of the fit systems in [{:.3e}, {:.3e}]", rec.singular_range.0, rec.singular_range.1));
    let worst_fit = rec.fits.iter().map(|f| f.residual).fold(0.0, f64::max);
    c.info(format!("max fit residual after exclusions {worst_fit:.3e}"));
    let dev = r.basis.gram_deviation();
    c.check(dev <= ORTHONORMAL_TOL, format!("orthonormality deviation {dev:.3e} <= {ORTHONORMAL_TOL:e}"));
    match (c53_rotation_residual(table, &alpha_grid(), 1.0), c53_rotation_residual(table, &alpha_grid(), -1.0)) {
        (Ok(lit), Ok(mir)) => {
            c.check(lit <= ROTATION_TOL, format!("e^(-α c~53) c_L e^(α c~53) = cos α c_L + sin α c_(L+26): residual {lit:.3e}"));
            c.info(format!("with sin α → -sin α the identity holds: residual {mir:.3e}"));
        }
        (Err(e), _) | (_, Err(e)) => c.check(false, format!("rotation check failed: {e}")),
    }
    c
}

fn criterion6(tensor: &StructureTensor) -> Criterion {
    let mut c = Criterion::new(6, "Killing form and split signature");
    let k = killing_form(tensor);
    c.check(k.lambda < 0.0, format!("compact λ = {:.12}", k.lambda));
    let tol = KILLING_REL_TOL * k.lambda.abs();
    c.check(k.max_deviation <= tol, format!("|K − λ·1| {:.3e} <= {tol:.3e}", k.max_deviation));
    match build_e6(Form::Split) {
        Ok(split) => {
            let (eig, _) = sorted_symmetric_eigen(split.gram());
            let pos = eig.iter().filter(|x| **x > 1e-9).count();
            let neg = eig.iter().filter(|x| **x < -1e-9).count();
            c.check((pos, neg) == (52, 26), format!("split trace-form signature ({pos},{neg})"));
            if let Ok(t) = structure_constants(&split) {
                let ks = killing_form(&t);
                c.info(format!("split Killing form signature (+{}, -{}, 0:{})", ks.signature.0, ks.signature.1, ks.signature.2));
            }
        }
        Err(e) => c.check(false, format!("split construction failed: {e}")),
    }
    c
}

fn criterion7(r: &ReferenceBasis, tensor: &StructureTensor) -> Criterion {
    let mut c = Criterion::new(7, "root system");
    match root_datum(&r.basis, tensor, 11) {
        Ok((cartan, d)) => {
            c.info(format!("Cartan subalgebra dim {}, commutator defect {:.3e}", cartan.coordinates.len(), cartan.commutator_defect));
            c.check(d.roots.len() == 72, format!("{} roots", d.roots.len()));
            c.check(d.positive.len() == 36, format!("{} positive", d.positive.len()));
            c.check(d.length_defect <= ROOT_LENGTH_TOL, format!("max ||α|² − 2| {:.3e} <= {ROOT_LENGTH_TOL:e}", d.length_defect));
            c.check((d.cartan_determinant - 3.0).abs() < 1e-9, format!("det Cartan = {:.12}", d.cartan_determinant));
            if let Some(a) = &d.aligned {
                c.info(format!("aligned with r1..r6 via {:?}, generated by them: {}", a.permutation, a.generated_by_published));
            }
        }
        Err(e) => c.check(false, format!("root_datum failed: {e}")),
    }
    c
}

fn criterion8() -> Criterion {
    let mut c = Criterion::new(8, "Macdonald volume");
    let sp = sphere_product_exact(&E6_EXPONENTS);
    let listed = |two: u32| {
        let den = BigInt::from(2u64.pow(two) * 3u64.pow(10) * 5u64.pow(5) * 7u64.pow(3) * 11);
        PiMonomial { coefficient: BigRational::new(BigInt::from(1), den), power: 42 }
    };
    c.check(sp == listed(18), format!("Π Vol(S^d), d = {E6_EXPONENTS:?}, = π^42/(2^18·3^10·5^5·7^3·11): exact value is {sp}"));
    c.info(format!("exact value equals π^42/(2^19·3^10·5^5·7^3·11): {}", sp == listed(19)));
    let closed = e6_volume_closed_form();
    match macdonald_volume(&E6_EXPONENTS, e6_lattice_factor()) {
        Ok(v) => {
            let e = rel(v, closed);
            c.check(e <= VOLUME_REL_TOL, format!("√3·2^36 · Π Vol(S^d) = {v:.15e} vs √3·2^17·π^42/(3^10·5^5·7^3·11), rel {e:.1e}"));
        }
        Err(e) => c.check(false, format!("macdonald_volume failed: {e}")),
    }
    c
}

/// 2^7 · Π of the closed-form factors at the centre of the box, written out term by term.
fn midpoint_oracle() -> f64 {
    let q = PI / 4.0;
    let x4 = (PI / 2.0).sin();
    let x5 = 0f64.cos();
    let x6 = q.cos() * q.sin().powi(2);
    let x7 = q.cos().powi(4) * q.sin().powi(2);
    let x8 = (PI / 2.0).sin().powi(7);
    let x15 = q.cos().powi(2) * q.sin().powi(4);
    let x16 = q.sin().powi(15) * q.cos().powi(7);
    let x25_26 = (PI / 2.0).sin().powi(8) * (PI / 4.0).sin().powi(8) * (-PI / 4.0).sin().powi(8);
    128.0 * (x4 * x5 * x6 * x7 * x8) * (x4 * x5 * x6 * x15 * x16) * (x4 * x5 * x6 * x7 * x8) * x25_26
}

fn criterion9(table: &GeneratorTable) -> Criterion {
    let mut c = Criterion::new(9, "Haar measure");
    let domain = CoordinateBox::default();
    let mid = measure_density(&domain.midpoint());
    let oracle = midpoint_oracle();
    let target = 2f64.powf(-25.5);
    c.check(
        rel(mid, oracle) <= DENSITY_REL_TOL && rel(oracle, target) <= DENSITY_REL_TOL,
        format!("midpoint density {mid:.15e}, term-by-term {oracle:.15e}, 2^(-51/2) = {target:.15e}"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut da, mut du) = (0.0f64, 0.0f64);
    for _ in 0..DET_POINTS {
        let x = domain.sample_interior(&mut rng, 1e-3);
        match block_determinants(table, &x) {
            Ok(d) => {
                da = da.max(d.a_difference());
                du = du.max(d.u_difference());
            }
            Err(e) => {
                c.check(false, format!("block_determinants failed: {e}"));
                return c;
            }
        }
    }
    c.check(da <= DET_TOL, format!("||det A| − sin x25| max {da:.3e} <= {DET_TOL:e} over {DET_POINTS} points"));
    c.check(du <= DET_TOL, format!("|det U − closed form| max {du:.3e} <= {DET_TOL:e} over {DET_POINTS} points"));
    c.info("signed det A is −sin x25 with rows (x25, x26, x24) against (c~53, c~70, c71)");
    c.info("det C and det D~ are closed forms only; the tilded f4 generators are not available");

    match volume_integral(QUADRATURE_ORDER) {
        Ok(v) => {
            c.check(
                v.relative_change <= DOUBLING_TOL,
                format!("I = {:.15} at order {}, {:.15} at order {}, rel change {:.1e}", v.coarse.value, v.coarse.order, v.fine.value, v.fine.order, v.relative_change),
            );
            let f4_spheres = sphere_product_exact(&F4_EXPONENTS).to_f64();
            c.info(format!("Vol(F4) = Vol(E6)/I = {:.9e}", v.implied_f4_volume));
            c.info(format!(
                "F4 sphere product {f4_spheres:.9e}; implied lattice factor {:.6e} (no independent derivation, agreement tol {F4_CROSS_TOL:e} not applied)",
                v.implied_f4_volume / f4_spheres
            ));
        }
        Err(e) => c.check(false, format!("volume_integral failed: {e}")),
    }
    c
}

fn criterion10(r: &ReferenceBasis) -> Criterion {
    let mut c = Criterion::new(10, "exponentials are special unitary");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut wu, mut wd) = (0.0f64, 0.0f64);
    for _ in 0..GROUP_SAMPLES {
        let coeffs: Vec<f64> = (0..78).map(|_| rng.random_range(-PI..PI)).collect();
        match matrix_exp(&r.basis.combine(&coeffs), 1.0) {
            Ok(g) => {
                let (u, d) = group_defects(&g);
                wu = wu.max(u);
                wd = wd.max(d);
            }
            Err(e) => {
                c.check(false, format!("matrix_exp failed: {e}"));
                return c;
            }
        }
    }
    c.check(wu <= GROUP_TOL, format!("max ||g†g − 1|| {wu:.3e} <= {GROUP_TOL:e} over {GROUP_SAMPLES} samples"));
    c.check(wd <= GROUP_TOL, format!("max |det g − 1| {wd:.3e} <= {GROUP_TOL:e}"));
    c
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results = vec![criterion1()];

    let oracle = match load_oracle() {
        Ok(o) => o,
        Err(e) => {
            println!("FAIL     oracle datasets: {e}");
            return ExitCode::FAILURE;
        }
    };
    let reference = match build_reference_basis(&oracle, FitMode::default()) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL     reference basis: {e}");
            return ExitCode::FAILURE;
        }
    };
    let table = GeneratorTable::from_basis(&reference.basis);

    results.push(criterion2(&oracle, &reference));
    let (c3, tensor) = criterion3(&reference);
    results.push(c3);
    if let Some(t) = &tensor {
        results.push(criterion4(&oracle, &reference, t));
    }
    results.push(criterion5(&reference, &table));
    if let Some(t) = &tensor {
        results.push(criterion6(t));
        results.push(criterion7(&reference, t));
    }
    results.push(criterion8());
    results.push(criterion9(&table));
    results.push(criterion10(&reference));
    results.sort_by_key(|c| c.id);

    for c in &results {
        c.print();
    }
    let failed: Vec<usize> = results.iter().filter(|c| !c.passed()).map(|c| c.id).collect();
    let missing = 10 - results.len();
    println!("{}/10 criteria pass ({:.1?})", results.len() - failed.len(), start.elapsed());
    for (id, why) in KNOWN_RED {
        if failed.contains(&id) {
            println!("known red {id}: {why}");
        } else {
            println!("criterion {id} was expected to fail and passed");
        }
    }
    let unexpected: Vec<usize> = failed.iter().copied().filter(|id| !KNOWN_RED.iter().any(|k| k.0 == *id)).collect();
    let strict = std::env::var_os("E6_ACCEPTANCE_STRICT").is_some();
    if missing > 0 || !unexpected.is_empty() || (strict && !failed.is_empty()) {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
