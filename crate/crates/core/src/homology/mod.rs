//! Cochain complexes and their cohomology: cobar complexes for Cotor,
//! Hochschild complexes for HH and Ext, simplicial cochains.

pub mod bimodule;
pub mod cobar;
pub mod complex;
pub mod hochschild;
pub mod matrix;
pub mod simplicial;

pub use bimodule::{Bimodule, CoefficientAlgebra};
pub use cobar::{cotor, cotor_trivial, CobarBlock, CobarComplex, Cochain, Cocycle, Comodule, Reduction, Side};
pub use complex::{CochainComplex, GradedComplex};
pub use hochschild::{
    ext_dims, gerstenhaber_cup, hochschild_complex, hochschild_differential, hochschild_dims, hochschild_reduced,
    HochschildCochain, HochschildComplex,
};
pub use matrix::RationalMatrix;
pub use simplicial::{reduced_simplicial_cohomology, simplicial_cohomology};
