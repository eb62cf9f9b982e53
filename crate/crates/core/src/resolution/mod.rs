//! Resolutions of degeneracy loci: Buchsbaum–Eisenbud complexes, symmetric
//! quasi-isomorphism diagrams, local equations and codimension one analogues.

mod codim1;
mod codim3;
mod complex;
mod euler;

pub use codim1::{parity_obstruction_codim1, symmetric_codim1_resolution, Codim1Twists, Symmetry};
pub use codim3::{
    be_complex, colon_equations, dual_diagram, homotopy_of_complement, homotopy_symmetrize, split_pair,
    standard_local_form, ColonEquations, SplitTwists, StandardForm,
};
pub use complex::{check_exactness, verify_square, ChainComplex, DiagramTwists, SymResolution};
pub use euler::{binomial_poly, cotangent_power, euler_characteristic, VirtualSheaf};

#[cfg(test)]
mod tests;
