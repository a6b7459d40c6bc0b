//! Exact arithmetic in finite abelian groups and their character groups.
//!
//! Everything above this layer (kernels of the sum map, character lifting,
//! the fiber ring) reduces to integer linear algebra over `Z`, done here with
//! the Smith normal form.

mod character;
mod group;
mod matrix;

pub use character::{
    discrete_log, restrict_character, solve_character_congruences, Character, RootExponent,
};
pub use group::{
    element_order, image_subgroup, kernel_generators, AbelianGroup, Element, Hom,
    LatticeQuotient, Subgroup,
};
pub use matrix::{smith_normal_form, IntMatrix, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("modulus {modulus} at position {index} is below 2")]
    ModulusTooSmall { index: usize, modulus: u64 },
    #[error("group order does not fit in 64 bits")]
    OrderOverflow,
    #[error("expected {expected} coordinates, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("residue {value} at position {index} is outside [0, {modulus})")]
    ResidueOutOfRange { index: usize, value: u64, modulus: u64 },
    #[error("image does not belong to the target group")]
    GroupMismatch,
    #[error("image of generator {generator} is not killed by its modulus")]
    IllDefinedHom { generator: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DiscreteLogError {
    #[error("{base} does not have order {order}")]
    NotAGenerator { base: RootExponent, order: u64 },
    #[error("{target} is not a multiple of {base}")]
    OutsideSubgroup { base: RootExponent, target: RootExponent },
}
