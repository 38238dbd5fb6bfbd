//! Finite p-groups from power-commutator presentations or explicit tables,
//! and the subgroup calculus built on top of them: lower central series,
//! power subgroups, products, centers, abelian invariants and section ranks.

mod group;
mod presentation;
mod subgroup;

pub use group::{FiniteGroup, DEFAULT_ORDER_CAP};
pub use presentation::{PcPresentation, Word};
pub use subgroup::{AbelianInvariants, RankProfile, Subgroup};

/// Builds the full Cayley table of the group presented by `pres`.
pub fn build_group(pres: &PcPresentation, order_cap: usize) -> crate::Result<FiniteGroup> {
    FiniteGroup::from_presentation(pres, order_cap)
}
