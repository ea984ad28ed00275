//! Numerical semigroups with concentration two.
//!
//! The crate computes the usual invariants of a numerical semigroup and
//! enumerates the semigroups whose nonzero members are never more than two
//! apart, organised as rooted trees:
//!
//! * by multiplicity ([`trees`]), where each semigroup's parent is obtained
//!   by adjoining its Frobenius number;
//! * by Frobenius number ([`classes`]), where the family splits into classes
//!   hanging off irreducible semigroups.
//!
//! [`wilf`] checks Wilf's inequality over any enumerated family and
//! [`oracle`] holds brute-force reference enumerators used for
//! cross-validation. [`export`] renders trees and listings as DOT, JSON
//! lines and plain tables.

mod bits;
pub mod classes;
pub mod error;
pub mod export;
pub mod oracle;
pub mod semigroup;
pub mod trees;
pub mod wilf;

pub use classes::FrobeniusClass;
pub use error::{Error, Result};
pub use semigroup::{GeneratorList, NumericalSemigroup};
pub use trees::{EnumerationRequest, Mode, TreeNode, Variant};
pub use wilf::{Family, WilfRecord, WilfReport};
