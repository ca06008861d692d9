//! Exact computation of equivariant K-theoretic degrees of Seiberg-Witten
//! maps on finite covers of spin 4-manifolds.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactnum`]: cyclotomic numbers and Laurent polynomials, the values of
//!   characters and of traces on the circle subgroup of Pin(2);
//! * [`groups`]: finite abelian groups, parsed character tables, cyclic
//!   embeddings and restriction;
//! * [`reprings`]: `R(Γ)`, `R(Pin(2))` and `R(Γ) ⊗ R(Pin(2))`;
//! * [`formulas`]: the closed-form degree formulas;
//! * [`verify`]: independent oracles and identity checkers.

pub mod error;
pub mod exactnum;
pub mod formulas;
pub mod groups;
pub mod reprings;
pub mod verify;

pub use error::{Error, Result};
