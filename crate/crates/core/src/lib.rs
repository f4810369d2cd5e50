//! Exact symbolic computation in the discrete Heisenberg group `ℋ = ℤ × H₁(Σ_{g,1})`,
//! its group ring `ℤ[ℋ]`, the mapping class group action on `ℋ`, and the twisted
//! Heisenberg-homology matrices of Dehn twists on two-point configurations.
//!
//! Module map:
//!
//! * [`heis`]: normal-form arithmetic in `ℋ`.
//! * [`ring`]: sparse group-ring arithmetic and specializations to quotient rings.
//! * [`aut`]: orientation-preserving automorphisms `H* ⋊ Sp(H)` and Morita's crossed homomorphism.
//! * [`braid`]: surface braid words and the quotient `φ: 𝔹_n(Σ) ↠ ℋ`.
//! * [`matrix`]: twisted representation matrices over `ℤ[ℋ]`.
//! * [`pairing`]: the intersection pairing evaluated from combinatorial data.
//! * [`schrodinger`]: finite Schrödinger representations and Weil intertwiners.
//! * [`cli`]: the `heisencalc` command-line front end.

pub mod aut;
pub mod braid;
pub mod cli;
pub mod error;
pub mod heis;
pub mod matrix;
pub mod pairing;
pub mod ring;
pub mod schrodinger;

mod json;
mod text;

pub use aut::HeisAutomorphism;
pub use braid::BraidWord;
pub use error::{Error, Result};
pub use heis::{HeisElement, SymplecticForm};
pub use matrix::RepMatrix;
pub use ring::{HeisPolynomial, SpecializedPolynomial};
