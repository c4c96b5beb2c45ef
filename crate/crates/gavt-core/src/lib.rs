//! Exact algebra behind the classification of maximal automorphism groups of
//! polarized abelian threefolds over finite fields.
//!
//! The crate is `no_std` with `alloc`. It holds every algorithm and the
//! built-in data tables; file IO and the command line live in the `gavt`
//! crate.
//!
//! Modules:
//! - [`arith`]: rationals, polynomials, cyclotomic numbers and matrices.
//! - [`weil`]: Weil polynomial checks and endomorphism-algebra descriptors.
//! - [`amitsur`]: embeddability of metacyclic groups in division rings.
//! - [`groups`]: permutation-group engine, catalog, isomorphism and embedding.
//! - [`gl3`]: finite subgroups of GL3 over the rationals and real quadratic fields.
//! - [`quat`]: maximal finite subgroups over definite quaternion algebras.
//! - [`classify`]: the combination engine over isogeny shapes.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod amitsur;
pub mod arith;
pub mod classify;
mod error;
pub mod gl3;
pub mod groups;
pub mod quat;
pub mod weil;

pub use error::{Error, Result};
