//! Arrows of the monoidal category built from an operad: permutation-forest normal
//! form, composition, tensor, square fillings.

mod arrow;
mod perm;

pub use arrow::{push_perm, Arrow, CommonFilling};
pub use perm::Permutation;
