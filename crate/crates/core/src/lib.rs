//! Fusion rings, tensor functors at the level of Grothendieck rings, and the
//! exact sequences of tensor categories built from finite groups, pointed
//! categories and equivariantization.
//!
//! Numerical code is generic over `num_traits::Float`; exact integer code
//! (Smith normal forms) is generic over `num_integer::Integer`. The aliases
//! below fix the usual choices.

pub mod characters;
pub mod cohomology;
pub mod corpus;
pub mod eigen;
pub mod equivariant;
pub mod error;
pub mod functors;
pub mod fusion_ring;
pub mod groups;
pub mod io;
pub mod perron;
pub mod pointed;
pub mod smith;
pub mod tolerance;

pub use characters::{character_table, character_table_with, CharacterOptions, CharacterTable};
pub use cohomology::{cyclic_representative, h3_order, Cochain2, Cocycle3};
pub use equivariant::{
    check_equivariant_sequence, equivariant_simples, forgetful_functor, EquivariantSimples,
    GroupAction,
};
pub use error::{Error, Result};
pub use functors::{index2_check, verify_exact_sequence, ExactnessReport, FunctorMatrix};
pub use fusion_ring::{FpData, FusionRing};
pub use groups::{FiniteGroup, GroupExtension, GroupHom};
pub use io::Workspace;
pub use pointed::{
    build_pointed_exact_sequence, is_simple_eno, is_simple_pointed, PointedCategory,
};
pub use smith::SmithDecomposition;
pub use tolerance::Tolerances;

pub type FpData64 = FpData<f64>;
pub type FpData32 = FpData<f32>;
pub type CharacterTable64 = CharacterTable<f64>;
pub type CharacterTable32 = CharacterTable<f32>;
pub type Tolerances64 = Tolerances<f64>;
pub type ExactnessReport64 = ExactnessReport<f64>;
pub type EquivariantSimples64 = EquivariantSimples<f64>;
pub type BigSmith = SmithDecomposition<num_bigint::BigInt>;
pub type Smith64 = SmithDecomposition<i64>;
pub type Smith128 = SmithDecomposition<i128>;
