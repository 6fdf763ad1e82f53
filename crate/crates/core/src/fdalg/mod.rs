//! Finite-dimensional algebras given by structure constants, their modules,
//! radicals, idempotents and graded projective resolutions.

pub mod algebra;
pub mod constructions;
pub mod io;
pub mod module;
pub mod resolution;
pub mod samples;
pub mod structure;

pub use algebra::{Algebra, AlgebraBuilder, Key, KeyMask};
pub use module::{hom_space, isomorphic, Module, SparseMat};
pub use structure::{
    blocks_and_basic, cartan_matrix, center, peirce, primitive_idempotents, radical, radical_series, BasicAlgebra,
    BlockDecomposition, Idempotents,
};
pub use resolution::{ext_table, minimal_resolution, ExtTable, Projectives, Resolution, Term};
pub use constructions::{
    associated_graded, associated_graded_module, class_idempotent, dual, dual_with_involution, idempotent_truncate,
    quotient_by_trace_ideal, radically_graded, trace_ideal, Filtration, Involution, Truncation,
};
pub use io::{AlgebraJson, ModuleJson};
