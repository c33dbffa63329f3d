//! Mono-term canonical forms and Young-projector handling of multi-term
//! symmetries.

pub mod perm;
pub mod tableau;

pub use perm::{Perm, SignedGroup};
pub use tableau::{SlotPermutationSum, YoungTableau};
pub mod canon;

pub use canon::{canonicalise, canonicalise_term, canonicalise_with, CanonOptions};
pub mod project;

pub use project::{young_project, young_project_term};
pub mod asym;
pub mod basis;
pub mod linalg;

pub use asym::asym;
pub use basis::{all_contractions, build_basis, decompose, reduce_sum, CoefficientVector, MonomialBasis};
