//! Exact determinant theory for matrices over noncommutative rings.
//!
//! The crate is organized as a ring tower:
//!
//! - [`ring`]: the [`Ring`](ring::Ring) abstraction, rationals, cyclotomic
//!   fields, endomorphisms and Lie-structure probes;
//! - [`grassmann`]: the finitely generated Grassmann algebra `E_m` and its
//!   automorphisms;
//! - [`poly`]: commutative polynomial rings `R[x]` and skew polynomial rings `R[w, delta]`;
//! - [`matrix`]: dense square matrices, Hadamard products and transitive matrices;
//! - [`det`]: symmetric determinants, preadjoints, right/left determinants and
//!   characteristic polynomials;
//! - [`structures`]: `(delta, W)`-matrix algebras, graded matrices, ring
//!   embeddings and integrality witnesses;
//! - [`cli`]: the `compute` and `verify` front end used by the `ncdet` binary.

pub mod cli;
pub mod det;
pub mod error;
pub mod grassmann;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod rng;
pub mod structures;

pub use error::{AlgebraError, ParseError};
