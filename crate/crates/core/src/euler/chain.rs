use std::collections::BTreeMap;

use crate::e6::{tilde_coset, AlgebraElement, LieBasis};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

use super::exp::{group_inverse, matrix_exp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    /// c_n of the basis.
    Plain(usize),
    /// c̃_n: built in for 53 and 70, otherwise supplied by the caller.
    Tilde(usize),
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Plain(n) => write!(f, "c{n}"),
            Generator::Tilde(n) => write!(f, "c~{n}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorTable {
    plain: Vec<AlgebraElement>,
    tilde: BTreeMap<usize, AlgebraElement>,
}

impl GeneratorTable {
    pub fn from_basis(basis: &LieBasis) -> Self {
        let mut tilde = BTreeMap::new();
        if basis.len() >= 70 {
            let (t53, t70) = tilde_coset(basis.get(53), basis.get(70));
            tilde.insert(53, t53);
            tilde.insert(70, t70);
        }
        Self { plain: basis.elements.clone(), tilde }
    }

    /// Supplies a tilded generator (e.g. from an external f4 parametrization).
    pub fn plug(&mut self, label: usize, element: AlgebraElement) {
        self.tilde.insert(label, element);
    }

    pub fn get(&self, g: Generator) -> Result<&AlgebraElement> {
        match g {
            Generator::Plain(n) if (1..=self.plain.len()).contains(&n) => Ok(&self.plain[n - 1]),
            Generator::Tilde(n) => self.tilde.get(&n).ok_or_else(|| Error::MissingGenerator(g.to_string())),
            _ => Err(Error::MissingGenerator(g.to_string())),
        }
    }
}

/// One factor exp(x_coordinate · generator); coordinates are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub generator: Generator,
    pub coordinate: usize,
}

pub type Chain = Vec<Factor>;

fn chain_of(items: &[(Generator, usize)]) -> Chain {
    items.iter().map(|&(generator, coordinate)| Factor { generator, coordinate }).collect()
}

/// ω[x24, x25, x26] = exp(x24 c45) exp(x25 c̃53) exp(x26 c̃70).
pub fn omega_chain() -> Chain {
    use Generator::*;
    chain_of(&[(Plain(45), 24), (Tilde(53), 25), (Tilde(70), 26)])
}

/// The 7-factor chain e^{x1 c̃3} … e^{x7 c̃30} on coordinates start..start+6.
fn b9(start: usize) -> Vec<(Generator, usize)> {
    use Generator::Tilde;
    [3, 16, 15, 35, 5, 1, 30].iter().enumerate().map(|(k, n)| (Tilde(*n), start + k)).collect()
}

/// B_F4[x1..x16] B9[x17..x23] ω[x24, x25, x26].
pub fn coset_chain() -> Chain {
    use Generator::*;
    let mut items = b9(1);
    items.push((Plain(45), 8));
    items.extend(b9(9).into_iter().take(6));
    items.push((Tilde(30), 15));
    items.push((Plain(22), 16));
    items.extend(b9(17));
    items.extend([(Plain(45), 24), (Tilde(53), 25), (Tilde(70), 26)]);
    chain_of(&items)
}

fn exps(table: &GeneratorTable, chain: &[Factor], coords: &[f64]) -> Result<Vec<CMatrix>> {
    chain
        .iter()
        .map(|f| {
            let x = coords
                .get(f.coordinate - 1)
                .ok_or_else(|| Error::InvalidArgument(format!("no value for coordinate x{}", f.coordinate)))?;
            matrix_exp(table.get(f.generator)?, *x)
        })
        .collect()
}

/// Left-to-right product of the chain's exponentials.
pub fn compose_element(table: &GeneratorTable, chain: &[Factor], coords: &[f64]) -> Result<CMatrix> {
    let factors = exps(table, chain, coords)?;
    Ok(factors.into_iter().fold(CMatrix::identity(27, 27), |acc, e| acc * e))
}

/// g⁻¹ ∂g/∂x_k for every coordinate k that appears in the chain, exactly:
/// Σ over factors on x_k of S⁻¹ G S with S the product of the later factors.
pub fn currents(table: &GeneratorTable, chain: &[Factor], coords: &[f64]) -> Result<BTreeMap<usize, AlgebraElement>> {
    let factors = exps(table, chain, coords)?;
    let mut out: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
    let mut suffix = CMatrix::identity(27, 27);
    for (f, e) in chain.iter().zip(&factors).rev() {
        suffix = e * &suffix;
        let g = table.get(f.generator)?;
        let term = AlgebraElement::new(group_inverse(&suffix) * &g.entries * &suffix);
        let slot = out.entry(f.coordinate).or_insert_with(AlgebraElement::zero);
        *slot = &*slot + &term;
    }
    Ok(out)
}

/// The same currents by central differences with one Richardson step.
pub fn currents_finite_difference(
    table: &GeneratorTable,
    chain: &[Factor],
    coords: &[f64],
    h: f64,
) -> Result<BTreeMap<usize, AlgebraElement>> {
    let g_inv = group_inverse(&compose_element(table, chain, coords)?);
    let central = |k: usize, step: f64| -> Result<CMatrix> {
        let mut plus = coords.to_vec();
        let mut minus = coords.to_vec();
        plus[k - 1] += step;
        minus[k - 1] -= step;
        let d = compose_element(table, chain, &plus)? - compose_element(table, chain, &minus)?;
        Ok(d / num_complex::Complex64::new(2.0 * step, 0.0))
    };
    let mut out = BTreeMap::new();
    let coordinates: std::collections::BTreeSet<usize> = chain.iter().map(|f| f.coordinate).collect();
    for k in coordinates {
        let coarse = central(k, h)?;
        let fine = central(k, h / 2.0)?;
        let extrapolated = (fine * num_complex::Complex64::new(4.0, 0.0) - coarse) / num_complex::Complex64::new(3.0, 0.0);
        out.insert(k, AlgebraElement::new(&g_inv * extrapolated));
    }
    Ok(out)
}
