use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Write;

use e6_core::e6::{
    build_e6, build_reference_basis, killing_form, structure_constants, FitMode, Form, LieBasis, ReferenceBasis,
    StructureTensor, TypoReport,
};
use e6_core::euler::identities::{
    c53_rotation_residual, so8_commutation_residual, c45_so8_residual, omega_coset_leakage, so8_block_action, tilde70_commutation,
};
use e6_core::euler::{
    block_determinants, compose_element, coset_chain, group_defects, matrix_exp, measure_density_checked,
    measure_integral, omega_chain, omega_coords, CoordinateBox, GeneratorTable,
};
use e6_core::export::{matrices_to_csv, matrices_to_json, tensor_to_csv, tensor_to_jsonl, write_binary};
use e6_core::linalg::{max_abs, sorted_symmetric_eigen, CMatrix};
use e6_core::oracle::{load_oracle, Oracle};
use e6_core::roots::root_datum;
use e6_core::volume::{e6_volume_summary, sphere_product_exact, F4_EXPONENTS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{ChainArg, Format, FormArg, RunConfig, Suite};

#[derive(Debug)]
pub enum CliError {
    Core(e6_core::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e6_core::Error::NonConverged { .. }) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => {
                let msg = e.to_string();
                if msg.starts_with(e.name()) {
                    write!(f, "{msg}")
                } else {
                    write!(f, "{}: {}", e.name(), msg.trim_start_matches("invalid argument: "))
                }
            }
            CliError::Io(e) => write!(f, "IO: {e}"),
        }
    }
}

impl From<e6_core::Error> for CliError {
    fn from(e: e6_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Core(e6_core::Error::InvalidArgument(msg.into()))
}

pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

const TOLERANCE_DEFAULTS: [(&str, f64); 10] = [
    ("gram", 1e-9),
    ("antisymmetry", 1e-10),
    ("closure", 1e-9),
    ("jacobi", 1e-9),
    ("oracle", 1e-9),
    ("adjoint", 1e-9),
    ("determinant", 1e-9),
    ("roots", 1e-8),
    ("group", 1e-10),
    ("convergence", 1e-9),
];

/// Named tolerances, defaults overridden from `NAME=VALUE` flags.
#[derive(Debug, Clone)]
pub struct Tolerances(BTreeMap<&'static str, f64>);

impl Tolerances {
    pub fn parse(overrides: &[String]) -> Result<Self> {
        let mut map: BTreeMap<&'static str, f64> = TOLERANCE_DEFAULTS.into_iter().collect();
        for o in overrides {
            let (name, value) = o.split_once('=').ok_or_else(|| invalid(format!("tolerance {o:?} is not NAME=VALUE")))?;
            let key = TOLERANCE_DEFAULTS
                .iter()
                .map(|(k, _)| *k)
                .find(|k| *k == name.trim())
                .ok_or_else(|| invalid(format!("unknown tolerance {name:?}")))?;
            let v: f64 = value.trim().parse().map_err(|_| invalid(format!("tolerance {name}: bad value {value:?}")))?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("tolerance {name} must be positive")));
            }
            map.insert(key, v);
        }
        Ok(Self(map))
    }

    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    fn to_json(&self) -> Value {
        json!(self.0)
    }
}

/// One named residual with its tolerance.
struct Measured {
    label: &'static str,
    value: f64,
    tolerance: f64,
}

impl Measured {
    fn new(label: &'static str, value: f64, tolerance: f64) -> Self {
        Self { label, value, tolerance }
    }

    fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

struct SuiteResult {
    name: &'static str,
    checks: Vec<Measured>,
    /// Integer-valued conditions (counts, ranks).
    conditions: Vec<(String, bool)>,
    notes: Vec<String>,
    extra: Value,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, checks: Vec::new(), conditions: Vec::new(), notes: Vec::new(), extra: Value::Null }
    }

    fn pass(&self) -> bool {
        self.checks.iter().all(Measured::pass) && self.conditions.iter().all(|c| c.1)
    }

    fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "pass": self.pass(),
            "checks": self.checks.iter().map(|m| json!({
                "name": m.label, "value": m.value, "tolerance": m.tolerance, "pass": m.pass()
            })).collect::<Vec<_>>(),
            "conditions": self.conditions.iter().map(|(c, p)| json!({"name": c, "pass": p})).collect::<Vec<_>>(),
            "notes": self.notes,
            "details": self.extra,
        })
    }

    fn print(&self) {
        println!("{} {}", if self.pass() { "PASS" } else { "FAIL" }, self.name);
        for m in &self.checks {
            let tag = if m.pass() { "ok  " } else { "FAIL" };
            println!("  [{tag}] {:<28} {:.3e} (tol {:e})", m.label, m.value, m.tolerance);
        }
        for (c, p) in &self.conditions {
            println!("  [{}] {c}", if *p { "ok  " } else { "FAIL" });
        }
        for n in &self.notes {
            println!("  [info] {n}");
        }
    }
}

pub struct Context {
    config: RunConfig,
    tol: Tolerances,
    oracle: OnceCell<Oracle>,
    reference: OnceCell<ReferenceBasis>,
    tensor: OnceCell<StructureTensor>,
    table: OnceCell<GeneratorTable>,
}

impl Context {
    pub fn new(config: RunConfig, tol: Tolerances) -> Self {
        Self {
            config,
            tol,
            oracle: OnceCell::new(),
            reference: OnceCell::new(),
            tensor: OnceCell::new(),
            table: OnceCell::new(),
        }
    }

    fn oracle(&self) -> Result<&Oracle> {
        if let Some(o) = self.oracle.get() {
            return Ok(o);
        }
        let o = load_oracle()?;
        Ok(self.oracle.get_or_init(|| o))
    }

    fn reference(&self) -> Result<&ReferenceBasis> {
        if let Some(r) = self.reference.get() {
            return Ok(r);
        }
        let r = build_reference_basis(self.oracle()?, FitMode::default())?;
        Ok(self.reference.get_or_init(|| r))
    }

    fn tensor(&self) -> Result<&StructureTensor> {
        if let Some(t) = self.tensor.get() {
            return Ok(t);
        }
        let t = structure_constants(&self.reference()?.basis)?;
        Ok(self.tensor.get_or_init(|| t))
    }

    fn table(&self) -> Result<&GeneratorTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = GeneratorTable::from_basis(&self.reference()?.basis);
        Ok(self.table.get_or_init(|| t))
    }

    /// Summary line: stderr when the data stream occupies stdout.
    fn say(&self, streaming: bool, line: impl AsRef<str>) {
        if streaming && self.config.output.is_none() {
            eprintln!("{}", line.as_ref());
        } else {
            println!("{}", line.as_ref());
        }
    }

    fn emit(&self, bytes: &[u8]) -> Result<()> {
        match &self.config.output {
            Some(path) => std::fs::write(path, bytes)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(bytes)?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn emit_file_only(&self, bytes: &[u8]) -> Result<()> {
        if let Some(path) = &self.config.output {
            std::fs::write(path, bytes)?;
        }
        Ok(())
    }

    fn report(&self, command: &str, mut body: Value) -> Result<()> {
        if let Some(path) = &self.config.report {
            body["command"] = json!(command);
            body["tolerances"] = self.tol.to_json();
            let mut text = serde_json::to_string_pretty(&body).expect("serializable");
            text.push('\n');
            std::fs::write(path, text)?;
        }
        Ok(())
    }

    fn matrices_bytes(&self, ms: &[CMatrix]) -> Result<Vec<u8>> {
        let labels: Vec<usize> = (1..=ms.len()).collect();
        Ok(match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string(&matrices_to_json(&labels, ms)).expect("serializable");
                s.push('\n');
                s.into_bytes()
            }
            Format::Csv => matrices_to_csv(&labels, ms).into_bytes(),
            Format::Binary => {
                let mut buf = Vec::new();
                write_binary(&mut buf, ms)?;
                buf
            }
        })
    }

    fn basis_for_form(&self) -> Result<LieBasis> {
        match self.config.form {
            FormArg::Compact => Ok(self.reference()?.basis.clone()),
            FormArg::Split => Ok(build_e6(Form::Split)?),
        }
    }

    pub fn basis(&self) -> Result<Outcome> {
        let basis = self.basis_for_form()?;
        let ms: Vec<CMatrix> = basis.elements.iter().map(|c| c.entries.clone()).collect();
        self.emit(&self.matrices_bytes(&ms)?)?;

        let dev = basis.gram_deviation();
        let (eig, _) = sorted_symmetric_eigen(basis.gram());
        let pos = eig.iter().filter(|x| **x > 0.5).count();
        let neg = eig.iter().filter(|x| **x < -0.5).count();
        let tol = self.tol.get("gram");
        let form = match self.config.form {
            FormArg::Compact => "compact",
            FormArg::Split => "split",
        };
        self.say(true, format!("{} matrices ({form}), Gram max deviation {dev:.3e} (tol {tol:e}), signature ({pos},{neg})", ms.len()));
        self.report("basis", json!({"form": form, "count": ms.len(), "gram_deviation": dev, "signature": [pos, neg]}))?;
        Ok(Outcome::from_pass(dev <= tol))
    }

    pub fn structure_constants(&self) -> Result<Outcome> {
        let t = self.tensor()?;
        let data = match self.config.format {
            Format::Json => tensor_to_jsonl(t),
            Format::Csv => tensor_to_csv(t),
            Format::Binary => return Err(invalid("structure constants export as json (lines) or csv")),
        };
        self.emit(data.as_bytes())?;
        let d = t.diagnostics;
        let jacobi = t.jacobi_residual();
        let checks = [
            Measured::new("antisymmetry", d.antisymmetry, self.tol.get("antisymmetry")),
            Measured::new("closure", d.closure, self.tol.get("closure")),
            Measured::new("jacobi", jacobi, self.tol.get("jacobi")),
        ];
        let summary: Vec<String> =
            checks.iter().map(|m| format!("{} {:.3e} (tol {:e})", m.label, m.value, m.tolerance)).collect();
        self.say(true, format!("{} entries; {}", t.len(), summary.join(", ")));
        self.report(
            "structure-constants",
            json!({"entries": t.len(), "antisymmetry": d.antisymmetry, "closure": d.closure, "jacobi": jacobi, "imaginary": d.imaginary}),
        )?;
        Ok(Outcome::from_pass(checks.iter().all(Measured::pass)))
    }

    pub fn verify(&self, suite: Suite, points: usize) -> Result<Outcome> {
        let want = |s: Suite| suite == Suite::All || suite == s;
        let mut results = Vec::new();
        if want(Suite::Structure) {
            results.push(self.suite_structure()?);
        }
        if want(Suite::Orthonormality) {
            results.push(self.suite_orthonormality()?);
        }
        if want(Suite::Oracle) {
            results.push(self.suite_oracle()?);
        }
        if want(Suite::Adjoint) {
            results.push(self.suite_adjoint()?);
        }
        if want(Suite::Determinants) {
            results.push(self.suite_determinants(points)?);
        }
        if want(Suite::Roots) {
            results.push(self.suite_roots()?);
        }
        if want(Suite::Group) {
            results.push(self.suite_group(points)?);
        }
        for r in &results {
            r.print();
        }
        let failures: Vec<&str> = results.iter().filter(|r| !r.pass()).map(|r| r.name).collect();
        println!("{}/{} suites pass", results.len() - failures.len(), results.len());
        if !failures.is_empty() {
            eprintln!("{}", json!({"failures": failures}));
        }
        self.report(
            "verify",
            json!({"pass": failures.is_empty(), "failures": failures, "suites": results.iter().map(SuiteResult::to_json).collect::<Vec<_>>()}),
        )?;
        Ok(Outcome::from_pass(failures.is_empty()))
    }

    fn suite_structure(&self) -> Result<SuiteResult> {
        let t = self.tensor()?;
        let mut s = SuiteResult::new("structure");
        s.checks.push(Measured::new("antisymmetry", t.diagnostics.antisymmetry, self.tol.get("antisymmetry")));
        s.checks.push(Measured::new("closure", t.diagnostics.closure, self.tol.get("closure")));
        s.checks.push(Measured::new("jacobi", t.jacobi_residual(), self.tol.get("jacobi")));
        let k = killing_form(t);
        s.checks.push(Measured::new("killing |K - λ·1| / |λ|", k.max_deviation / k.lambda.abs(), self.tol.get("gram")));
        s.conditions.push((format!("Killing form negative definite, λ = {:.9}", k.lambda), k.signature == (0, 78, 0)));
        s.notes.push(format!("{} nonzero s_IJK", t.len()));
        Ok(s)
    }

    fn suite_orthonormality(&self) -> Result<SuiteResult> {
        let r = self.reference()?;
        let mut s = SuiteResult::new("orthonormality");
        s.checks.push(Measured::new("gram deviation", r.basis.gram_deviation(), self.tol.get("gram")));
        let ah = r.basis.elements.iter().map(|c| c.anti_hermitian_defect()).fold(0.0, f64::max);
        s.checks.push(Measured::new("anti-hermitian defect", ah, self.tol.get("gram")));
        let tr = r.basis.elements.iter().map(|c| c.trace().norm()).fold(0.0, f64::max);
        s.checks.push(Measured::new("trace", tr, self.tol.get("gram")));
        let fit = r.reconstruction.fits.iter().map(|f| f.residual).fold(0.0, f64::max);
        s.checks.push(Measured::new("f4 fit residual", fit, self.tol.get("gram")));
        s.conditions.push((format!("f4 systems of rank {}", r.reconstruction.system_rank), r.reconstruction.system_rank == 52));
        Ok(s)
    }

    fn suite_oracle(&self) -> Result<SuiteResult> {
        let oracle = self.oracle()?;
        let r = self.reference()?;
        let t = self.tensor()?;
        let report = TypoReport::build(&oracle.structure_raw, t, Some(&r.reconstruction), self.tol.get("oracle"));
        print!("{}", report.to_text());
        let mut s = SuiteResult::new("oracle");
        s.conditions.push((
            format!("{}/{} printed constants match (>= 95%)", report.matched, report.total),
            report.match_fraction() >= 0.95,
        ));
        s.conditions.push((
            format!("{} mismatches, all isolated by the f4 fit", report.mismatches.len()),
            report.mismatches.iter().all(|m| m.excluded_by_fit),
        ));
        let curated = TypoReport::build(&oracle.structure_curated, t, None, self.tol.get("oracle"));
        s.conditions.push(("curated table matches exactly".into(), curated.mismatches.is_empty()));
        let coset = (53..=78)
            .map(|a| max_abs(&(&r.basis.get(a).entries - oracle.matrices_curated.matrix(a))))
            .fold(0.0, f64::max);
        s.checks.push(Measured::new("c53..c78 vs printed", coset, self.tol.get("oracle")));
        for f in oracle.structure_raw.scan() {
            s.notes.push(format!("scan: {f}"));
        }
        s.extra = json!({"typo_report": report});
        Ok(s)
    }

    fn suite_adjoint(&self) -> Result<SuiteResult> {
        let table = self.table()?;
        let basis = &self.reference()?.basis;
        let tol = self.tol.get("adjoint");
        let alphas: Vec<f64> = (0..=16).map(|k| -PI + k as f64 * PI / 8.0).collect();
        let mut s = SuiteResult::new("adjoint");
        s.checks.push(Measured::new("c~53 rotation of c45..c52", c53_rotation_residual(table, &alphas, -1.0)?, tol));
        s.checks.push(Measured::new("c~70 commutation", tilde70_commutation(table)?, tol));
        s.checks.push(Measured::new("c~53, c~70 vs so(8)", so8_commutation_residual(table)?, tol));
        s.checks.push(Measured::new("c45 action on so(8)", c45_so8_residual(basis, &[0.3, 1.1, 2.5, PI])?, tol));
        let pts = [[0.3, 0.7, 0.1], [2.0, 1.2, -0.4], [PI / 3.0, FRAC_PI_2, 0.5]];
        s.checks.push(Measured::new("ω-conjugates into c54..c69", omega_coset_leakage(table, &pts)?, tol));
        let r6 = so8_block_action(basis, &[0.4, 1.9, -2.7])?;
        s.checks.push(Measured::new("so(8) on c22..c29", r6.orthogonality_22.max(r6.leakage), tol));
        s.checks.push(Measured::new("so(8) on c37..c44", r6.orthogonality_37.max(r6.leakage), tol));
        let literal = c53_rotation_residual(table, &alphas, 1.0)?;
        s.notes.push(format!(
            "e^(-α c~53) c_L e^(α c~53) = cos α c_L + sin α c_(L+26) as printed: residual {literal:.3e}; the basis fixed by the printed structure constants gives cos α c_L - sin α c_(L+26)"
        ));
        Ok(s)
    }

    fn suite_determinants(&self, points: usize) -> Result<SuiteResult> {
        let table = self.table()?;
        let tol = self.tol.get("determinant");
        let domain = CoordinateBox::default();
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let mut rows = Vec::with_capacity(points);
        let (mut da, mut du) = (0.0f64, 0.0f64);
        for _ in 0..points {
            let x = domain.sample_interior(&mut rng, 1e-3);
            let d = block_determinants(table, &x)?;
            da = da.max(d.a_difference());
            du = du.max(d.u_difference());
            rows.push((x, d));
        }
        let mut s = SuiteResult::new("determinants");
        s.checks.push(Measured::new("|det A| vs sin x25", da, tol));
        s.checks.push(Measured::new("det U vs closed form", du, tol));
        s.notes.push(format!("{points} interior points, seed {}", self.config.seed));
        s.notes.push("det C and det D~ are formula evaluations only (tilded f4 generators not available)".into());

        let table_bytes = match self.config.format {
            Format::Csv => {
                let mut out = String::from("point,x24,x25,x26,block,closed_form,numeric,abs_diff\n");
                for (n, (x, d)) in rows.iter().enumerate() {
                    for (block, closed, numeric, diff) in [
                        ("A", d.det_a_closed, d.det_a_numeric, d.a_difference()),
                        ("U", d.det_u_closed, d.det_u_numeric, d.u_difference()),
                    ] {
                        out.push_str(&format!(
                            "{n},{:e},{:e},{:e},{block},{closed:e},{numeric:e},{diff:e}\n",
                            x[23], x[24], x[25]
                        ));
                    }
                }
                out.into_bytes()
            }
            Format::Json => {
                let v: Vec<Value> = rows.iter().map(|(x, d)| json!({"coords": x, "determinants": d})).collect();
                let mut s = serde_json::to_string(&v).expect("serializable");
                s.push('\n');
                s.into_bytes()
            }
            Format::Binary if self.config.output.is_some() => {
                return Err(invalid("the determinant table is written as csv or json"))
            }
            Format::Binary => Vec::new(),
        };
        self.emit_file_only(&table_bytes)?;
        Ok(s)
    }

    fn suite_roots(&self) -> Result<SuiteResult> {
        let (_, d) = root_datum(&self.reference()?.basis, self.tensor()?, self.config.seed)?;
        let mut s = SuiteResult::new("roots");
        s.checks.push(Measured::new("| |α|² - 2 |", d.length_defect, self.tol.get("roots")));
        s.conditions.push((format!("{} roots", d.roots.len()), d.roots.len() == 72));
        s.conditions.push((format!("{} positive", d.positive.len()), d.positive.len() == 36));
        s.conditions.push((format!("det Cartan = {:.9}", d.cartan_determinant), (d.cartan_determinant - 3.0).abs() < 1e-6));
        let aligned = d.aligned.as_ref().is_some_and(|a| a.generated_by_published);
        s.conditions.push(("roots generated by r1..r6 after alignment".into(), aligned));
        Ok(s)
    }

    fn suite_group(&self, points: usize) -> Result<SuiteResult> {
        let basis = &self.reference()?.basis;
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let (mut wu, mut wd) = (0.0f64, 0.0f64);
        for _ in 0..points {
            let coeffs: Vec<f64> = (0..78).map(|_| rng.random_range(-PI..PI)).collect();
            let (u, d) = group_defects(&matrix_exp(&basis.combine(&coeffs), 1.0)?);
            wu = wu.max(u);
            wd = wd.max(d);
        }
        let mut s = SuiteResult::new("group");
        s.checks.push(Measured::new("unitarity", wu, self.tol.get("group")));
        s.checks.push(Measured::new("|det - 1|", wd, self.tol.get("group")));
        s.notes.push(format!("{points} random elements, seed {}", self.config.seed));
        Ok(s)
    }

    pub fn roots(&self) -> Result<Outcome> {
        let (cartan, d) = root_datum(&self.reference()?.basis, self.tensor()?, self.config.seed)?;
        let data = match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string(&d).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("set,index,h1,h2,h3,h4,h5,h6\n");
                let mut push = |set: &str, rs: &[[f64; 6]]| {
                    for (n, r) in rs.iter().enumerate() {
                        let cols: Vec<String> = r.iter().map(|x| format!("{x:e}")).collect();
                        s.push_str(&format!("{set},{n},{}\n", cols.join(",")));
                    }
                };
                push("root", &d.roots);
                push("simple", &d.simple);
                if let Some(a) = &d.aligned {
                    push("l_frame", &a.roots_l_frame);
                }
                s
            }
            Format::Binary => return Err(invalid("roots export as json or csv")),
        };
        self.emit(data.as_bytes())?;
        let tol = self.tol.get("roots");
        self.say(
            true,
            format!(
                "{} roots, {} positive, {} simple; max | |α|² - 2 | {:.3e} (tol {tol:e}); det Cartan {:.9}; Cartan commutator defect {:.3e}",
                d.roots.len(),
                d.positive.len(),
                d.simple.len(),
                d.length_defect,
                d.cartan_determinant,
                cartan.commutator_defect
            ),
        );
        for row in &d.cartan_matrix {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            self.say(true, format!("  [{}]", cells.join(" ")));
        }
        let pass = d.roots.len() == 72
            && d.positive.len() == 36
            && d.length_defect <= tol
            && (d.cartan_determinant - 3.0).abs() < 1e-6;
        self.report("roots", json!({"pass": pass, "roots": d}))?;
        Ok(Outcome::from_pass(pass))
    }

    pub fn volume(&self, order: usize) -> Result<Outcome> {
        let summary = e6_volume_summary();
        let coarse = measure_integral(order)?;
        let fine = measure_integral(2 * order)?;
        let change = (coarse.value - fine.value).abs() / fine.value.abs();
        let tol = self.tol.get("convergence");
        let implied_f4 = summary.closed_form / fine.value;
        let f4_spheres = sphere_product_exact(&F4_EXPONENTS);

        println!("Vol(E6) = √3·2^17·π^42/(3^10·5^5·7^3·11) = {:.15e}", summary.closed_form);
        println!("sphere product Π Vol(S^d) = {} = {:.15e}", summary.sphere_product, summary.sphere_product_value);
        println!(
            "lattice factor √3·2^36 = {:.15e}; Macdonald volume {:.15e} (rel {:.1e})",
            summary.lattice_factor, summary.macdonald, summary.relative_error
        );
        println!("I = {:.16} (order {order}), {:.16} (order {}), rel change {change:.1e} (tol {tol:e})", coarse.value, fine.value, 2 * order);
        println!(
            "Vol(F4) = Vol(E6)/I = {implied_f4:.12e}; F4 sphere product {} = {:.12e}; implied lattice factor {:.9e}",
            f4_spheres,
            f4_spheres.to_f64(),
            implied_f4 / f4_spheres.to_f64()
        );
        let body = json!({
            "e6_closed_form": summary.closed_form,
            "sphere_product": summary.sphere_product,
            "sphere_product_value": summary.sphere_product_value,
            "lattice_factor": summary.lattice_factor,
            "macdonald": summary.macdonald,
            "macdonald_relative_error": summary.relative_error,
            "order": order,
            "integral_coarse": coarse,
            "integral_fine": fine,
            "relative_change": change,
            "integral": fine.value,
            "implied_f4_volume": implied_f4,
            "f4_sphere_product": f4_spheres.to_string(),
            "f4_implied_lattice_factor": implied_f4 / f4_spheres.to_f64(),
        });
        let mut data = serde_json::to_string(&body).expect("serializable");
        data.push('\n');
        self.emit_file_only(data.as_bytes())?;
        self.report("volume", body)?;
        if change > tol {
            eprintln!("NONCONVERGED: order {order} vs {} differ by {change:e} (relative)", 2 * order);
            return Ok(Outcome::Fail);
        }
        Ok(Outcome::Pass)
    }

    pub fn density(&self, point: Option<Vec<f64>>) -> Result<Outcome> {
        let x = point.unwrap_or_else(|| CoordinateBox::default().midpoint());
        if x.len() != 26 {
            return Err(invalid(format!("a point has 26 coordinates, got {}", x.len())));
        }
        let d = measure_density_checked(&x);
        println!("dμ = {:.17e} ({} the coordinate box)", d.value, if d.inside { "inside" } else { "outside" });
        let body = json!({"point": x, "value": d.value, "inside": d.inside});
        let mut data = serde_json::to_string(&body).expect("serializable");
        data.push('\n');
        self.emit_file_only(data.as_bytes())?;
        self.report("density", body)?;
        Ok(Outcome::Pass)
    }

    pub fn element(&self, chain: ChainArg, coords: &[f64]) -> Result<Outcome> {
        let (chain, full) = match chain {
            ChainArg::Omega => {
                let [x24, x25, x26] = coords else {
                    return Err(invalid(format!("omega takes x24,x25,x26, got {} values", coords.len())));
                };
                (omega_chain(), omega_coords(*x24, *x25, *x26))
            }
            ChainArg::Coset => {
                if coords.len() != 26 {
                    return Err(invalid(format!("the coset chain takes 26 coordinates, got {}", coords.len())));
                }
                (coset_chain(), coords.to_vec())
            }
        };
        let g = compose_element(self.table()?, &chain, &full)?;
        self.emit(&self.matrices_bytes(std::slice::from_ref(&g))?)?;
        let (u, d) = group_defects(&g);
        let tol = self.tol.get("group");
        let factors: Vec<String> = chain.iter().map(|f| format!("e^(x{} {})", f.coordinate, f.generator)).collect();
        self.say(true, factors.join(" "));
        self.say(true, format!("unitarity {u:.3e}, |det - 1| {d:.3e} (tol {tol:e})"));
        self.report("element", json!({"coords": full, "unitarity": u, "det_defect": d}))?;
        Ok(Outcome::from_pass(u <= tol && d <= tol))
    }
}
