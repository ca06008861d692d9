//! Representation rings: `R(Γ)`, `R(Pin(2)) = Z[h] ⊕ Zc`, and their tensor
//! product `R(Γ × Pin(2))`.

mod equiv;
mod json;
mod pin2;
mod virtual_rep;

pub use equiv::{wedge_star_c, wedge_star_h, Decomposition, EquivElem};
pub use json::{big_to_json, json_to_big};
pub use pin2::Pin2Elem;
pub use virtual_rep::{regular_rep, vr_from_character, VirtualRep};

/// Where a `Pin(2)` trace is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TracePoint {
    /// The element `j`: `h ↦ 0`, `c ↦ -1`.
    J,
    /// A generic `z ∈ S¹`: `h ↦ z + z⁻¹`, `c ↦ 1`.
    Symbolic,
}

impl std::fmt::Display for TracePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TracePoint::J => "J",
            TracePoint::Symbolic => "z",
        })
    }
}
