//! Exact symbolic verification of Drinfeld orbifold algebra maps for the
//! symmetric group acting on `Q^n` by permuting coordinates.
//!
//! The crate is organized bottom-up:
//!
//! - [`permgroup`]: permutations, centralizers, factorization orbits.
//! - [`exactalg`]: rationals, parameter polynomials, `S(V)`, `S(V)#S_n`.
//! - [`cochains`]: graded 2- and 3-cochains and the named parameter maps.
//! - [`obstructions`]: the operators `psi` and `phi`, the five conditions,
//!   closed forms, orbit tables and the classification driver.
//! - [`cohomology`]: centralizer invariants and dimension counts.
//! - [`pbw`]: an independent rewriting check of the PBW property.
//!
//! Group elements compose right to left: `(x * y)(i) = x(y(i))`.

pub mod cochains;
pub mod cohomology;
pub mod error;
pub mod exactalg;
pub mod exec;
pub mod linalg;
pub mod obstructions;
pub mod pbw;
pub mod permgroup;

pub use error::{Error, Result};
pub use exec::Exec;
