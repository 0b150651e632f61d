//! Exact-arithmetic computational topology toolkit.
//!
//! The crate implements the combinatorial pipeline for branched coverings of
//! the projective plane: braid words and full-twist factorizations encoding
//! branch loci, simple-covering monodromy with Riemann-Hurwitz bookkeeping,
//! trisection parameter algebra, torus diagrams with exact transversality
//! checking, fundamental-group factorization machinery for tangle
//! complements, discrete symplectic 1-cocycle verification, and rational
//! characteristic-class arithmetic.
//!
//! All numeric invariants are computed in exact rational (or integer)
//! arithmetic; nothing in the library rounds.

pub mod braid;
pub mod charclass;
pub mod cocycle;
pub mod fixtures;
pub mod monodromy;
pub mod perm;
pub mod pi1;
pub mod rational;
pub mod torus_diagram;
pub mod trisection;

pub use perm::Permutation;
pub use rational::Frac;
