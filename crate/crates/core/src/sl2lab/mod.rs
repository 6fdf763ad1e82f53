//! Instance generators for SL2: the restricted enveloping algebra, its
//! simple, baby Verma and coinduced modules, Schur algebras S(2,d), Weyl
//! modules and character bookkeeping.

pub mod characters;
pub mod instances;
pub mod modules;
pub mod schur;
pub mod u;

pub use characters::{
    delta_p_character, delta_p_decomposition, nabla_character_test, simple_character, weyl_character, CharacterA1,
    NablaTest,
};
pub use modules::{baby_verma, coinduced_phi, simple_module, weyl_module, VermaKind, WeylModule};
pub use schur::{schur_algebra, SchurAlgebra};
pub use u::{build_u, UAlgebra};
