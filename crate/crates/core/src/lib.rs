//! Operad groups presented by calculus-of-fractions operads: Higman-Thompson groups from
//! k-ary trees and Brin-Thompson groups from dyadic cube cutting.

pub mod action;
pub mod backend;
pub mod category;
pub mod certificates;
pub mod error;
pub mod fractions;
pub mod markings;
pub mod enumerate;
pub mod poset;
pub mod sample;
pub mod syntax;

pub use backend::{Backend, BackendKind, Cell, CutTree, Flavor, Operation, Placement};
pub use category::{Arrow, Permutation};
pub use error::{Error, Result};
pub use fractions::Span;
