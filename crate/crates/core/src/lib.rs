//! Exact computational kernel for braid-trace and point-count identities.
//!
//! The crate is organized around five layers:
//! - [`ring`]: the scalar ring `Z[v^{±1}]` with `v = q^{1/2}`, its bar
//!   involution, and exact evaluation at integer `q`.
//! - [`coxeter`]: finite Coxeter groups of types A, B, and I2 with canonical
//!   element encodings, lengths, descents, and reduced words.
//! - [`braid`]: positive braid words over a Coxeter system and the full twist.
//! - [`hecke`]: the Iwahori–Hecke algebra in its standard basis, braid
//!   evaluation, and the trace functionals `tau_plus` / `tau_minus`.
//! - [`homfly`]: extreme a-degree coefficients of reduced HOMFLYPT series of
//!   braid closures, and the twist identity relating them.
//! - [`finfield`]: exact linear algebra over prime fields, flags and relative
//!   position, and enumeration-based point-count checks.

pub mod braid;
pub mod coxeter;
pub mod finfield;
pub mod hecke;
pub mod homfly;
pub mod ring;
pub mod rng;

pub use braid::BraidWord;
pub use coxeter::{CoxElement, CoxFamily, CoxeterSystem};
pub use hecke::HeckeElement;
pub use ring::LaurentPoly;
