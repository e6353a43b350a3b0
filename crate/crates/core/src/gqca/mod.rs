//! Quantum F-polynomials of generalized quantum cluster algebras via the
//! bracketed product formula in the `Ŷ`-torus.

mod bracket;
mod extract;
mod lrec;
mod separation;

pub use bracket::{bracketed_power, cocycle_sides, BracketBase};
pub use extract::{
    extract_fpolys, specialize_q1, Certificate, ExtractOptions, Extraction, QuantumFPoly, QuantumRun,
    StructureReport,
};
pub use lrec::{
    gtilde_of, gupta_product_quantum, gupta_product_quantum_path, l_recursion, LRecursion, QuantumPath,
    QuantumSeed,
};
pub use separation::{cluster_variable, separation_check_quantum};
