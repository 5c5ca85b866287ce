#![allow(dead_code)]

use std::sync::OnceLock;

use e6_core::e6::{build_reference_basis, structure_constants, FitMode, ReferenceBasis, StructureTensor};
use e6_core::euler::GeneratorTable;
use e6_core::oracle::{load_oracle, Oracle};

pub fn oracle() -> &'static Oracle {
    static O: OnceLock<Oracle> = OnceLock::new();
    O.get_or_init(|| load_oracle().unwrap())
}

pub fn reference() -> &'static ReferenceBasis {
    static R: OnceLock<ReferenceBasis> = OnceLock::new();
    R.get_or_init(|| build_reference_basis(oracle(), FitMode::default()).unwrap())
}

pub fn tensor() -> &'static StructureTensor {
    static T: OnceLock<StructureTensor> = OnceLock::new();
    T.get_or_init(|| structure_constants(&reference().basis).unwrap())
}

pub fn table() -> &'static GeneratorTable {
    static G: OnceLock<GeneratorTable> = OnceLock::new();
    G.get_or_init(|| GeneratorTable::from_basis(&reference().basis))
}
