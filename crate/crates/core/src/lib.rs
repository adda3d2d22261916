//! Graded Lie algebras of maximal class over a quadratic extension `E ⊇ F_p`,
//! their two-generator `F_p`-subalgebras, and the reconstruction of an algebra of
//! maximal class from a thin subalgebra.
//!
//! All computations are exact and take place in a truncation: an algebra of class
//! `n` has components in degrees `1..=n` and every bracket landing above `n` is zero.

pub mod error;
pub mod gf;
pub mod maxclass;
pub mod endo;
pub mod subfield;
pub mod reconstruct;
pub mod io;

pub use error::{Error, Result};
