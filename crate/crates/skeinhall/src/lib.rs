//! Exact computer algebra for the skein algebra of the torus and the
//! elliptic Hall algebra.
//!
//! The crate provides:
//!
//! - [`coeffring`]: exact Laurent-polynomial and rational-function
//!   arithmetic over the rationals in the fixed variable set
//!   `q, t, u, s, v, x`, with specialization and evaluation maps.
//! - [`partitions`]: integer partitions, cell statistics, content
//!   polynomials and border-strip (ribbon) enumeration.
//! - [`symfunc`]: the ring of symmetric functions with power-sum, Schur,
//!   monomial and Macdonald bases, basis conversions, principal
//!   specialization and the two evaluation maps.
//! - [`toralg`]: the torus algebra on generators `P(m,n)` as a PBW
//!   normal-ordering rewrite system, with a `GL(2,Z)` action and the
//!   one-parameter adapted variant.
//! - [`skeinmod`]: the module of the annulus in the `Q(lambda,mu)` basis,
//!   the full torus-generator action, the determinant realization and the
//!   Homflypt cabling pipeline `J^H`.
//! - [`hallrep`]: the positive elliptic Hall algebra acting on symmetric
//!   functions, built recursively from its defining relations, and the
//!   three-variable pipeline `J^E` with its two specializations.
//! - [`knots`]: Newton-pair sequences and the comparison driver checking
//!   that the two pipelines agree up to a monomial.

pub mod coeffring;
pub mod error;
pub mod hallrep;
pub mod knots;
pub mod partitions;
pub mod skeinmod;
pub mod suites;
pub mod symfunc;
pub mod toralg;

pub use coeffring::{LaurentPoly, RatFunc, Var};
pub use error::{Error, Result};
pub use hallrep::HallOperator;
pub use knots::{ConnectionReport, NewtonPairs};
pub use partitions::{BorderStrip, Cell, Partition};
pub use skeinmod::SkeinElement;
pub use symfunc::{Basis, SymFunc};
pub use toralg::{ToralElement, ToralVector};

/// Default degree cap guarding the exact-arithmetic pipelines.
pub const DEFAULT_DEGREE_CAP: u32 = 12;
