//! Exact zero-sum combinatorics over finite abelian groups.
//!
//! Everything here is integer arithmetic: finite abelian groups in
//! invariant-factor form ([`abelian`]), block monoids of zero-sum
//! multiplicity vectors and their atoms ([`blockmonoid`]), integer lattices
//! spanned by zero-sum vectors with Hermite-normal-form membership tests
//! ([`lattice`]), the separating Noether number computed by exhaustive
//! pruned sweep ([`sepnoether`]), and explicit witness constructions with
//! closed-form cross-checks ([`constructions`]).

pub mod abelian;
pub mod arith;
pub mod blockmonoid;
pub mod constructions;
pub mod error;
pub mod lattice;
pub mod sepnoether;

pub use abelian::{GroupElement, GroupSpec};
pub use error::{Error, Result};
