//! Reference datasets: the published structure constants and coset matrices.
//!
//! Both tables are embedded verbatim from text files under `data/`, misprints
//! included. Corrections live in separate overlay files so every fix is a
//! visible, annotated line; [`Oracle`] exposes the raw and the curated view
//! side by side.

pub mod surd;

use std::collections::BTreeMap;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{anti_hermitian_defect, trace_of_product, CMatrix};

pub const STRUCTURE_TABLE: &str = include_str!("../../data/structure_constants.txt");
pub const STRUCTURE_TABLE_CURATED: &str = include_str!("../../data/structure_constants_curated.txt");
pub const MATRIX_TABLE: &str = include_str!("../../data/coset_matrices.txt");
pub const MATRIX_TABLE_CURATED: &str = include_str!("../../data/coset_matrices_curated.txt");

const SHA256_STRUCTURE_TABLE: &str = "0856a3117559b95c2ae41948385af96812563e3448720f5b601ee2b6f12c6cab";
const SHA256_STRUCTURE_TABLE_CURATED: &str = "4b2914499e08f69dcdd9c6cafabdcaa16b755f798587a5c158fa5630c388123e";
const SHA256_MATRIX_TABLE: &str = "8c5bc70aa26189e57dcfd48c5db07fdea1df776dc5cbb4b7cdb63defc5806671";
const SHA256_MATRIX_TABLE_CURATED: &str = "ab81902b511c8e98a0cc7df9421ba4df3b1627ea254c3082601c03ceea20b4d8";

pub const STRUCTURE_ENTRY_COUNT: usize = 484;
/// Labels of the published coset matrices.
pub const COSET_LABELS: std::ops::RangeInclusive<usize> = 53..=78;

const MATRIX_TOL: f64 = 1e-12;
const GRAM_TOL: f64 = 1e-10;

/// One printed structure constant s_{IJK}.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub expr: String,
    pub value: f64,
    /// 1-based line in the source file.
    pub line: usize,
}

impl OracleEntry {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.i, self.j, self.k)
    }
}

/// Sorts a triple and returns the sign of the sorting permutation.
pub fn canonical_triple(i: usize, j: usize, k: usize) -> ((usize, usize, usize), f64) {
    let mut v = [i, j, k];
    let mut sign = 1.0;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    ((v[0], v[1], v[2]), sign)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleStructureConstants {
    pub entries: Vec<OracleEntry>,
}

/// Anomalies found by scanning the printed table on its own.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanFinding {
    /// Two entries describe the same index set with incompatible values.
    Conflict { triple: (usize, usize, usize), lines: Vec<usize>, values: Vec<f64> },
    /// An entry appears twice.
    Duplicate { triple: (usize, usize, usize), lines: Vec<usize> },
    /// Entry listed inside the block of a larger first index.
    OutOfOrder { line: usize, triple: (usize, usize, usize), block: usize },
    /// A coset index occurs twice in one block outside the c53/c70 mixing pattern.
    RepeatedIndex { block: usize, index: usize, lines: Vec<usize> },
}

impl ScanFinding {
    pub fn lines(&self) -> Vec<usize> {
        match self {
            ScanFinding::Conflict { lines, .. }
            | ScanFinding::Duplicate { lines, .. }
            | ScanFinding::RepeatedIndex { lines, .. } => lines.clone(),
            ScanFinding::OutOfOrder { line, .. } => vec![*line],
        }
    }
}

impl std::fmt::Display for ScanFinding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScanFinding::Conflict { triple, lines, values } => {
                write!(f, "conflict on {triple:?}: lines {lines:?} give {values:?}")
            }
            ScanFinding::Duplicate { triple, lines } => write!(f, "duplicate {triple:?} on lines {lines:?}"),
            ScanFinding::OutOfOrder { line, triple, block } => {
                write!(f, "line {line}: {triple:?} listed inside block {block}")
            }
            ScanFinding::RepeatedIndex { block, index, lines } => {
                write!(f, "block {block}: index {index} repeated on lines {lines:?}")
            }
        }
    }
}

impl OracleStructureConstants {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            entries.push(parse_entry(line, n + 1)?);
        }
        Ok(Self { entries })
    }

    /// Applies a `- I J K expr` / `+ I J K expr` overlay.
    pub fn with_overlay(&self, overlay: &str) -> Result<Self> {
        let mut entries = self.entries.clone();
        for (n, raw) in overlay.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let (op, rest) = line.split_at(1);
            let entry = parse_entry(rest.trim(), n + 1)?;
            match op {
                "-" => {
                    let pos = entries
                        .iter()
                        .position(|e| e.triple() == entry.triple() && e.value == entry.value)
                        .ok_or_else(|| {
                            Error::CorruptDataset(format!("overlay line {}: {:?} not in the table", n + 1, entry.triple()))
                        })?;
                    entries.remove(pos);
                }
                "+" => entries.push(entry),
                _ => return Err(Error::CorruptDataset(format!("overlay line {}: unknown directive {op:?}", n + 1))),
            }
        }
        entries.sort_by_key(|e| e.i);
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical view `I < J < K → s_{IJK}`, closing the table under
    /// antisymmetry. Later entries win on conflicts; see [`Self::scan`].
    pub fn canonical(&self) -> BTreeMap<(usize, usize, usize), f64> {
        let mut map = BTreeMap::new();
        for e in &self.entries {
            let (t, sign) = canonical_triple(e.i, e.j, e.k);
            map.insert(t, sign * e.value);
        }
        map
    }

    /// Entries whose first index is `i`, as printed.
    pub fn block(&self, i: usize) -> impl Iterator<Item = &OracleEntry> {
        self.entries.iter().filter(move |e| e.i == i)
    }

    /// Internal-consistency scan of the table as printed.
    pub fn scan(&self) -> Vec<ScanFinding> {
        let mut findings = Vec::new();
        let mut by_triple: BTreeMap<(usize, usize, usize), Vec<(usize, f64)>> = BTreeMap::new();
        for e in &self.entries {
            let (t, sign) = canonical_triple(e.i, e.j, e.k);
            by_triple.entry(t).or_default().push((e.line, sign * e.value));
        }
        for (t, hits) in by_triple {
            if hits.len() < 2 {
                continue;
            }
            let lines = hits.iter().map(|h| h.0).collect();
            if hits.iter().all(|h| (h.1 - hits[0].1).abs() < 1e-12) {
                findings.push(ScanFinding::Duplicate { triple: t, lines });
            } else {
                findings.push(ScanFinding::Conflict { triple: t, lines, values: hits.iter().map(|h| h.1).collect() });
            }
        }

        for w in self.entries.windows(3) {
            if w[0].i == w[2].i && w[1].i != w[0].i {
                findings.push(ScanFinding::OutOfOrder { line: w[1].line, triple: w[1].triple(), block: w[0].i });
            }
        }

        let mut blocks: BTreeMap<usize, Vec<&OracleEntry>> = BTreeMap::new();
        for e in &self.entries {
            blocks.entry(e.i).or_default().push(e);
        }
        for (block, list) in blocks {
            let mut seen: BTreeMap<usize, Vec<&OracleEntry>> = BTreeMap::new();
            for e in &list {
                for idx in [e.j, e.k] {
                    if idx != 53 && idx != 70 {
                        seen.entry(idx).or_default().push(e);
                    }
                }
            }
            for (index, hits) in seen {
                if hits.len() < 2 {
                    continue;
                }
                // c53 and c70 both rotate into the same partner
                let mixing = hits.len() == 2 && {
                    let partners: Vec<usize> =
                        hits.iter().map(|e| if e.j == index { e.k } else { e.j }).collect();
                    partners.contains(&53) && partners.contains(&70)
                };
                if !mixing {
                    findings.push(ScanFinding::RepeatedIndex { block, index, lines: hits.iter().map(|e| e.line).collect() });
                }
            }
        }
        findings
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::CorruptDataset(format!("line {line}: missing field")))?;
    let v: usize = tok.parse().map_err(|_| Error::CorruptDataset(format!("line {line}: bad index {tok:?}")))?;
    if !(1..=78).contains(&v) {
        return Err(Error::CorruptDataset(format!("line {line}: index {v} outside 1..78")));
    }
    Ok(v)
}

fn parse_entry(line: &str, n: usize) -> Result<OracleEntry> {
    let mut it = line.split_whitespace();
    let i = parse_index(it.next(), n)?;
    let j = parse_index(it.next(), n)?;
    let k = parse_index(it.next(), n)?;
    let expr: String = it.collect::<Vec<_>>().join("");
    let value = surd::evaluate_real(&expr).map_err(|e| Error::CorruptDataset(format!("line {n}: {e}")))?;
    Ok(OracleEntry { i, j, k, expr, value, line: n })
}

/// The 26 published coset matrices c53..c78.
#[derive(Debug, Clone)]
pub struct OracleMatrices {
    pub kappa: Complex64,
    /// `matrices[a - 53]` is c_a.
    pub matrices: Vec<CMatrix>,
    /// Source expression of every nonzero entry, keyed by (label, row, col), 1-based.
    pub exprs: BTreeMap<(usize, usize, usize), String>,
}

/// Violations of the expected matrix properties, per label.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDefect {
    pub label: usize,
    pub anti_hermitian: f64,
    pub trace: f64,
    pub norm: f64,
}

impl OracleMatrices {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kappa = None;
        let mut matrices = vec![CMatrix::zeros(27, 27); 26];
        let mut exprs = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rhs) = line.strip_prefix("kappa") {
                let rhs = rhs.trim().strip_prefix('=').ok_or_else(|| {
                    Error::CorruptDataset(format!("line {}: malformed kappa definition", n + 1))
                })?;
                kappa = Some(
                    surd::evaluate(rhs, None).map_err(|e| Error::CorruptDataset(format!("line {}: {e}", n + 1)))?,
                );
                continue;
            }
            let (label, row, col, expr) = parse_matrix_line(line, n + 1)?;
            let v = surd::evaluate(&expr, kappa).map_err(|e| Error::CorruptDataset(format!("line {}: {e}", n + 1)))?;
            matrices[label - 53][(row - 1, col - 1)] = v;
            exprs.insert((label, row, col), expr);
        }
        let kappa = kappa.ok_or_else(|| Error::CorruptDataset("kappa is never defined".into()))?;
        Ok(Self { kappa, matrices, exprs })
    }

    /// Applies `= A row col expr` overrides.
    pub fn with_overlay(&self, overlay: &str) -> Result<Self> {
        let mut out = self.clone();
        for (n, raw) in overlay.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix('=')
                .ok_or_else(|| Error::CorruptDataset(format!("overlay line {}: expected '='", n + 1)))?;
            let (label, row, col, expr) = parse_matrix_line(rest.trim(), n + 1)?;
            let v = surd::evaluate(&expr, Some(self.kappa))
                .map_err(|e| Error::CorruptDataset(format!("overlay line {}: {e}", n + 1)))?;
            out.matrices[label - 53][(row - 1, col - 1)] = v;
            if v.norm() == 0.0 {
                out.exprs.remove(&(label, row, col));
            } else {
                out.exprs.insert((label, row, col), expr);
            }
        }
        Ok(out)
    }

    pub fn matrix(&self, label: usize) -> &CMatrix {
        &self.matrices[label - 53]
    }

    /// ⟨a, b⟩ = −(1/6) Tr(c_a c_b).
    pub fn gram(&self) -> Vec<Vec<f64>> {
        self.matrices
            .iter()
            .map(|a| self.matrices.iter().map(|b| -trace_of_product(a, b).re / 6.0).collect())
            .collect()
    }

    /// Labels failing anti-Hermiticity (trace frame), tracelessness or unit norm.
    pub fn defects(&self) -> Vec<MatrixDefect> {
        let mut out = Vec::new();
        for (n, m) in self.matrices.iter().enumerate() {
            let d = MatrixDefect {
                label: n + 53,
                anti_hermitian: anti_hermitian_defect(m),
                trace: m.trace().norm(),
                norm: -trace_of_product(m, m).re / 6.0,
            };
            if d.anti_hermitian > MATRIX_TOL || d.trace > MATRIX_TOL || (d.norm - 1.0).abs() > GRAM_TOL {
                out.push(d);
            }
        }
        out
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let g = self.gram();
        let mut worst: f64 = 0.0;
        for (a, row) in g.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - want).abs());
            }
        }
        worst
    }
}

fn parse_matrix_line(line: &str, n: usize) -> Result<(usize, usize, usize, String)> {
    let mut it = line.split_whitespace();
    let mut field = |what: &str, range: std::ops::RangeInclusive<usize>| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::CorruptDataset(format!("line {n}: missing {what}")))?;
        let v: usize = tok.parse().map_err(|_| Error::CorruptDataset(format!("line {n}: bad {what} {tok:?}")))?;
        if !range.contains(&v) {
            return Err(Error::CorruptDataset(format!("line {n}: {what} {v} out of range")));
        }
        Ok(v)
    };
    let label = field("label", COSET_LABELS)?;
    let row = field("row", 1..=27)?;
    let col = field("column", 1..=27)?;
    let expr = it.collect::<Vec<_>>().join("");
    if expr.is_empty() {
        return Err(Error::CorruptDataset(format!("line {n}: missing expression")));
    }
    Ok((label, row, col, expr))
}

/// Text of the four dataset files.
#[derive(Debug, Clone, Copy)]
pub struct OracleSources<'a> {
    pub structure: &'a str,
    pub structure_overlay: &'a str,
    pub matrices: &'a str,
    pub matrices_overlay: &'a str,
}

impl OracleSources<'static> {
    pub fn embedded() -> Self {
        Self {
            structure: STRUCTURE_TABLE,
            structure_overlay: STRUCTURE_TABLE_CURATED,
            matrices: MATRIX_TABLE,
            matrices_overlay: MATRIX_TABLE_CURATED,
        }
    }
}

/// Both reference tables, as printed and with the overlays applied.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub structure_raw: OracleStructureConstants,
    pub structure_curated: OracleStructureConstants,
    pub matrices_raw: OracleMatrices,
    pub matrices_curated: OracleMatrices,
    /// Printed matrices that fail the structural checks. Expected to be
    /// exactly the labels the overlay corrects.
    pub raw_matrix_defects: Vec<MatrixDefect>,
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Loads the embedded datasets, verifying pinned checksums and structure.
pub fn load_oracle() -> Result<Oracle> {
    load_oracle_from(OracleSources::embedded(), true)
}

pub fn load_oracle_from(src: OracleSources<'_>, verify_checksums: bool) -> Result<Oracle> {
    if verify_checksums {
        for (name, text, pinned) in [
            ("structure_constants.txt", src.structure, SHA256_STRUCTURE_TABLE),
            ("structure_constants_curated.txt", src.structure_overlay, SHA256_STRUCTURE_TABLE_CURATED),
            ("coset_matrices.txt", src.matrices, SHA256_MATRIX_TABLE),
            ("coset_matrices_curated.txt", src.matrices_overlay, SHA256_MATRIX_TABLE_CURATED),
        ] {
            let got = sha256_hex(text);
            if got != pinned {
                return Err(Error::CorruptDataset(format!("{name}: checksum {got} does not match the pinned value")));
            }
        }
    }
    let structure_raw = OracleStructureConstants::parse(src.structure)?;
    if structure_raw.len() != STRUCTURE_ENTRY_COUNT {
        return Err(Error::CorruptDataset(format!(
            "expected {STRUCTURE_ENTRY_COUNT} structure constants, found {}",
            structure_raw.len()
        )));
    }
    let structure_curated = structure_raw.with_overlay(src.structure_overlay)?;

    let matrices_raw = OracleMatrices::parse(src.matrices)?;
    let matrices_curated = matrices_raw.with_overlay(src.matrices_overlay)?;
    let curated_defects = matrices_curated.defects();
    if !curated_defects.is_empty() {
        return Err(Error::CorruptDataset(format!("curated matrices fail structural checks: {curated_defects:?}")));
    }
    let gram = matrices_curated.gram_deviation();
    if gram > GRAM_TOL {
        return Err(Error::CorruptDataset(format!("curated matrices are not orthonormal (deviation {gram:e})")));
    }
    let raw_matrix_defects = matrices_raw.defects();
    Ok(Oracle { structure_raw, structure_curated, matrices_raw, matrices_curated, raw_matrix_defects })
}
