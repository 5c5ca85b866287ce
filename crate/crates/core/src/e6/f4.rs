//! Recovering the labelled f4 generators c1..c52 from the published
//! structure constants that pair one f4 index with two coset indices.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{AlgebraElement, COSET_DIM, F4_DIM};
use crate::error::{Error, Result};
use crate::linalg::least_squares;
use crate::oracle::OracleStructureConstants;

const FIT_TOL: f64 = 1e-9;
const HIGH_RESIDUAL: f64 = 1e-6;
const RANK_CUTOFF: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMode {
    /// One least-squares solve per generator; any residual above 1e-6 is an error.
    Strict,
    /// Drop the worst-fitting (J, K) pair and re-solve, at most this many times.
    Robust { max_exclusions: usize },
}

impl Default for FitMode {
    fn default() -> Self {
        FitMode::Robust { max_exclusions: 4 }
    }
}

/// A table entry left out of a fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedPair {
    pub j: usize,
    pub k: usize,
    /// Value of s_{I,J,K} implied by the table (0 when the entry is absent).
    pub target: f64,
    /// Value reproduced by the fitted generator.
    pub fitted: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct F4Fit {
    pub index: usize,
    /// Max residual over all targets of the unmasked fit.
    pub initial_residual: f64,
    /// Max residual over the targets kept in the final fit.
    pub residual: f64,
    pub excluded: Vec<ExcludedPair>,
}

#[derive(Debug, Clone)]
pub struct F4Reconstruction {
    pub elements: Vec<AlgebraElement>,
    pub fits: Vec<F4Fit>,
    pub system_rank: usize,
    pub singular_range: (f64, f64),
}

impl F4Reconstruction {
    pub fn typo_candidates(&self) -> Vec<(usize, &ExcludedPair)> {
        self.fits.iter().flat_map(|f| f.excluded.iter().map(move |e| (f.index, e))).collect()
    }
}

/// Least-squares fit of each c_I, I ≤ 52, inside span(derivations) to
/// ⟨[c_I, c_J], c_K⟩ = s_{IJK} over all coset pairs J, K.
pub fn reconstruct_f4_basis(
    table: &OracleStructureConstants,
    coset: &[AlgebraElement],
    derivations: &[AlgebraElement],
    mode: FitMode,
) -> Result<F4Reconstruction> {
    if coset.len() != COSET_DIM {
        return Err(Error::InvalidArgument(format!("expected {COSET_DIM} coset matrices, got {}", coset.len())));
    }
    let nd = derivations.len();
    let npairs = COSET_DIM * COSET_DIM;
    // system[(J*26 + K, m)] = ⟨[D_m, c_J], c_K⟩
    let mut system = DMatrix::zeros(npairs, nd);
    for (m, d) in derivations.iter().enumerate() {
        for (j, cj) in coset.iter().enumerate() {
            let br = d.bracket(cj);
            for (k, ck) in coset.iter().enumerate() {
                system[(j * COSET_DIM + k, m)] = br.inner(ck);
            }
        }
    }
    let sv = system.clone().singular_values();
    let smax = sv.max();
    let system_rank = sv.iter().filter(|s| **s > smax * RANK_CUTOFF).count();
    if system_rank < F4_DIM || nd < F4_DIM {
        return Err(Error::AmbiguousSolution { rank: system_rank, expected: F4_DIM });
    }
    let singular_range = (sv.min(), smax);

    let mut elements = Vec::with_capacity(F4_DIM);
    let mut fits = Vec::with_capacity(F4_DIM);
    for index in 1..=F4_DIM {
        let mut target = DVector::zeros(npairs);
        for e in table.block(index) {
            if e.j <= F4_DIM || e.k <= F4_DIM {
                continue;
            }
            let (j, k) = (e.j - F4_DIM - 1, e.k - F4_DIM - 1);
            target[j * COSET_DIM + k] += e.value;
            target[k * COSET_DIM + j] -= e.value;
        }

        let mut mask = vec![true; npairs];
        let mut excluded = Vec::new();
        let max_exclusions = match mode {
            FitMode::Strict => 0,
            FitMode::Robust { max_exclusions } => max_exclusions,
        };
        let mut initial_residual = None;
        let (coeffs, residual) = loop {
            let rows: Vec<usize> = (0..npairs).filter(|r| mask[*r]).collect();
            let a = system.select_rows(rows.iter());
            let b = target.select_rows(rows.iter());
            let (x, rank) = least_squares(&a, &b, RANK_CUTOFF);
            if rank < F4_DIM {
                return Err(Error::AmbiguousSolution { rank, expected: F4_DIM });
            }
            let fitted = &system * &x;
            let resid = (&fitted - &target).map(|v| v.abs());
            let (worst_row, worst) = (0..npairs)
                .filter(|r| mask[*r])
                .map(|r| (r, resid[r]))
                .fold((0, 0.0), |acc, (r, v)| if v > acc.1 { (r, v) } else { acc });
            initial_residual.get_or_insert(worst);
            if worst <= FIT_TOL || excluded.len() >= max_exclusions {
                break (x, worst);
            }
            let (j, k) = (worst_row / COSET_DIM, worst_row % COSET_DIM);
            let (j, k) = (j.min(k), j.max(k));
            mask[j * COSET_DIM + k] = false;
            mask[k * COSET_DIM + j] = false;
            excluded.push(ExcludedPair {
                j: j + F4_DIM + 1,
                k: k + F4_DIM + 1,
                target: target[j * COSET_DIM + k],
                fitted: fitted[j * COSET_DIM + k],
            });
        };
        if residual > HIGH_RESIDUAL {
            return Err(Error::HighResidual { index, residual });
        }
        let mut element = AlgebraElement::zero();
        for (d, c) in derivations.iter().zip(coeffs.iter()) {
            element = &element + &d.scale(*c);
        }
        elements.push(element);
        fits.push(F4Fit { index, initial_residual: initial_residual.unwrap_or(0.0), residual, excluded });
    }
    Ok(F4Reconstruction { elements, fits, system_rank, singular_range })
}

/// One line of the comparison between printed and computed structure constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypoRow {
    pub index_triple: (usize, usize, usize),
    /// 1-based line in the data file.
    pub line: usize,
    pub oracle_value: f64,
    pub computed_value: f64,
    pub residual: f64,
    /// Pairs the f4 fit excluded for the first index of this entry.
    pub excluded_by_fit: bool,
}

/// Printed entries that disagree with the computed structure constants.
#[derive(Debug, Clone, Serialize)]
pub struct TypoReport {
    pub total: usize,
    pub matched: usize,
    pub tolerance: f64,
    pub mismatches: Vec<TypoRow>,
}

impl TypoReport {
    pub fn build(
        table: &OracleStructureConstants,
        computed: &super::StructureTensor,
        reconstruction: Option<&F4Reconstruction>,
        tolerance: f64,
    ) -> Self {
        let mut mismatches = Vec::new();
        for e in &table.entries {
            let c = computed.get(e.i, e.j, e.k);
            let residual = (c - e.value).abs();
            if residual > tolerance {
                let excluded_by_fit = reconstruction.is_some_and(|r| {
                    r.fits.iter().any(|f| {
                        f.index == e.i
                            && f.excluded.iter().any(|p| (p.j, p.k) == (e.j.min(e.k), e.j.max(e.k)))
                    })
                });
                mismatches.push(TypoRow {
                    index_triple: e.triple(),
                    line: e.line,
                    oracle_value: e.value,
                    computed_value: c,
                    residual,
                    excluded_by_fit,
                });
            }
        }
        Self { total: table.len(), matched: table.len() - mismatches.len(), tolerance, mismatches }
    }

    pub fn match_fraction(&self) -> f64 {
        self.matched as f64 / self.total as f64
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}/{} printed structure constants match within {:e} ({:.1}%)\n",
            self.matched,
            self.total,
            self.tolerance,
            100.0 * self.match_fraction()
        );
        for m in &self.mismatches {
            s.push_str(&format!(
                "  s{:?} line {}: printed {:+.6}, computed {:+.6}, residual {:.3e}{}\n",
                m.index_triple,
                m.line,
                m.oracle_value,
                m.computed_value,
                m.residual,
                if m.excluded_by_fit { " (excluded by fit)" } else { "" }
            ));
        }
        s
    }
}
