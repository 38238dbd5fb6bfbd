//! Lower and upper Lie nilpotency indices of modular group algebras `KG`,
//! where `G` is a finite p-group and `K = GF(p)`.
//!
//! The indices are computed twice: by brute-force Lie power chains in the
//! regular representation ([`groupalgebra`]) and by the closed form in terms
//! of Lie dimension subgroups ([`indexformulas`]).

pub mod catalog;
pub mod error;
pub mod ffkernel;
pub mod groupalgebra;
pub mod indexformulas;
pub mod pcgroup;

pub use error::{Error, Result};
pub use ffkernel::{CoeffVector, FieldSpec, Subspace};
pub use pcgroup::{FiniteGroup, PcPresentation, Subgroup};
