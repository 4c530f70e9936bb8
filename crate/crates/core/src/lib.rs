//! Exact-arithmetic construction and analysis of semi-direct-sum Lie
//! algebras and the polynomial invariants of their coadjoint representation.
//!
//! The crate is organized around a small exact kernel (rationals, sparse
//! multivariate polynomials, rational functions, fraction-free linear
//! algebra) and the layers built on it:
//!
//! - [`lie`]: algebras from structure constants, sl(2) and its irreducible
//!   modules, semi-direct sums, Jacobi/perfectness/trivial-representation
//!   checks, and the JSON file format.
//! - [`coadjoint`]: infinitesimal generators on the dual space, the symbolic
//!   commutator matrix, its generic rank and the invariant count.
//! - [`engine`]: degree-bounded linear-ansatz invariant search, verification,
//!   functional-independence estimates, inter-reduction, and the
//!   radical-dependence predicates.
//! - [`tde`]: the Jacobian system and the equivalent total-differential
//!   system derived from the commutator matrix, with integrability and
//!   solution checks.
//! - [`oracle`]: floating-point cross-validation by integrating coadjoint
//!   flows and watching invariants for drift.
//!
//! With the default `parallel` feature the independent inner loops (Jacobi
//! triples, per-degree ansatz solves, integrability pairs, flow batches) run
//! on rayon; disabling it gives a fully sequential build with identical
//! results.

// Matrix elimination reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod coadjoint;
pub mod engine;
pub mod error;
pub mod exec;
pub mod lie;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod reference;
pub mod rng;
pub mod tde;

pub use error::{EngineError, KernelError, LieError, OracleError};
pub use poly::{Context, Monomial, Polynomial};
pub use ratfun::RationalFunction;
pub use rational::Rational;
