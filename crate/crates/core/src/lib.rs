//! Combinatorics behind the θ-invariant complex of standard modules
//! attached to a Speh representation of `GL(2n, R)`.
//!
//! * [`perm`]: permutations, involutions, Bruhat order and its covers.
//! * [`poset`]: ranked Hasse diagrams, intervals, diamonds and EL checks.
//! * [`signs`]: sign assignments with anticommuting diamonds and the
//!   resulting integer chain complexes.
//! * [`speh`]: standard-module labels, Kazhdan–Lusztig tables and the
//!   Euler-characteristic check of the Johnson resolution.
//! * [`clan`]: clans parameterizing `U(p, q)` representations.

mod bits;
pub mod clan;
pub mod dot;
pub mod error;
pub mod fixture;
pub mod perm;
pub mod poset;
pub mod signs;
pub mod speh;

pub use error::{Error, Result};
