//! Exact symbolic verification engine for the maximally supersymmetric
//! backgrounds of eleven-dimensional supergravity.
//!
//! The crate constructs the candidate backgrounds (flat space, Freund–Rubin
//! AdS×S products, Cahen–Wallach pp-waves), checks the bosonic field
//! equations and the flatness of the supercovariant connection exactly,
//! counts Killing spinors, explores the Cahen–Wallach moduli space, and
//! reduces invariant backgrounds to type IIA data.
//!
//! The arithmetic kernel ([`poly`], [`linalg`]) is generic over a
//! num-traits scalar; the engine instantiates it at arbitrary-precision
//! rationals (aliased below), the numeric oracles at `f64`.

pub mod backgrounds;
pub mod chart;
pub mod clifford;
pub mod exprlang;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod sugra;

/// Exact rational scalar used throughout the engine.
pub type Rat = scalar::Rat;
/// Sparse multivariate polynomial over [`Rat`].
pub type RatPoly = poly::Poly<Rat>;
/// Dense exact matrix over [`Rat`].
pub type RatMat = linalg::Matrix<Rat>;

pub use chart::Chart;
pub use ring::RingElem;
