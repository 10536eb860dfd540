//! Exact arithmetic for Salem-type digit representations of `[0, 1]`.
//!
//! A probability vector `P = (p_0, ..., p_{q-1})` turns a digit string
//! `i_1 i_2 ...` into the number
//! `beta[i_1] + beta[i_2] p[i_1] + beta[i_3] p[i_1] p[i_2] + ...`, where
//! `beta[i] = p_0 + ... + p_{i-1}`. With uniform `P` this is the ordinary
//! base-`q` expansion; otherwise it is the inverse of the singular Salem
//! function. On top of that the crate provides digit permutations (such as
//! the ternary swap `1 <-> 2`), alternating digit flips, and the cylinder
//! intervals of all of these systems. Everything is computed with exact
//! rationals.

pub mod cli;
pub mod cylinders;
pub mod digits;
pub mod error;
pub mod exactnum;
pub mod operators;
pub mod random;
pub mod salem;
pub mod suite;

pub use cylinders::Cylinder;
pub use digits::{parse_digits, Alphabet, DigitWord, Digits, PeriodicDigits};
pub use error::{Error, Result};
pub use exactnum::Rational;
pub use operators::{AlternatingScheme, DigitPermutation};
pub use salem::{BetaVector, EncodeKind, EncodeResult, ProbabilityVector};
