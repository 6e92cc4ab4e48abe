//! Finite Abelian groups, their characters and Fourier transforms, and GF(p^r).

mod field;
mod group;

pub use field::{is_irreducible, is_prime, prime_power, FieldElement, FiniteField, MAX_FIELD_ORDER};
pub use group::{AbelianGroup, CharacterIndex, GroupElement};
