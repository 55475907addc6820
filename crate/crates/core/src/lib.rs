//! Exact computer algebra for exp-polynomial graded Lie algebras and the
//! weight-space dimensions of their induced modules.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactnum`]: the scalar field Q(p) and fraction-free linear algebra;
//! - [`exppoly`]: canonical exp-polynomial functions with affine substitution
//!   and independence grids;
//! - [`vandermonde`]: extended Vandermonde determinants and the
//!   infinite-to-finite system reduction;
//! - [`algebra`] / [`gmodule`]: extragraded Lie algebras and their degree-zero
//!   modules, defined by exp-polynomial structure tables, with a registry of
//!   standard instances (toroidal, Witt, quantum torus, Virasoro-like,
//!   generalized Virasoro);
//! - [`induce`]: the induced module, generator application with normal
//!   ordering toward the base module, and its fully symbolic counterpart;
//! - [`quotient`]: radical membership and weight-space dimensions of the
//!   irreducible-top quotient, by truncated exact rank and by symbolic
//!   reduction to finitely many functionals;
//! - [`virasoro`]: the generalized Virasoro specialization with its reduced
//!   spanning sets, odd-double-factorial bounds and dimension tables.

pub mod algebra;
pub mod error;
pub mod exactnum;
pub mod exppoly;
pub mod gmodule;
pub mod induce;
pub mod quotient;
pub mod vandermonde;
pub mod virasoro;

pub use error::{Error, Result};
