//! Additive filters and idempotent ultrafilters, executed exactly on finite
//! semigroups and approximated on bounded windows of ℕ.

pub mod cli;
pub mod filter;
pub mod gallery;
pub mod nat;
pub mod ramsey;
pub mod semigroup;
