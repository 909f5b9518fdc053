//! Exact recursive calculator for counts of singular curves on surfaces.
//!
//! Let `X` be a compact complex surface and `L` a sufficiently ample line
//! bundle on it.  The number of curves in the linear system `|L|` that pass
//! through an appropriate number of generic points and carry one prescribed
//! singularity (of type `A1..A7`, `D4..D7`, `E6`, `E7`), or one node plus one
//! prescribed singularity, is a universal polynomial in the four Chern
//! numbers
//!
//! ```text
//! c1^2 = c1(L)^2,   c1 x1 = c1(L) . c1(T*X),   x1^2 = c1(T*X)^2,   x2 = c2(T*X).
//! ```
//!
//! This crate derives those universal polynomials *from scratch* by running
//! exact recursions over auxiliary curve strata (no table is hard-coded in
//! the engines; the published tables appear only in tests and in the built-in
//! [`selftest`]), and evaluates them on concrete surfaces.
//!
//! # Crate layout
//!
//! - [`chern_ring`] — the degree-2 and degree-4 Chern-class containers
//!   ([`chern_ring::OnePointClass`], [`chern_ring::TwoPointClass`]), the
//!   flattened polynomial form, and text/LaTeX formatting.
//! - [`singularity`] — the singularity-type alphabet and its invariants.
//! - [`strata_engine`] — the memoized one-point recursion over locally
//!   closed strata of curves with a marked point.
//! - [`two_point_engine`] — the memoized two-point (node + stratum)
//!   recursion, including the documented variant switches.
//! - [`surface_eval`] — concrete surfaces, point-count bookkeeping, and
//!   ampleness reporting.
//! - [`selftest`] — the deterministic verification suite shared by the test
//!   harness and the command-line `selftest` command.
//!
//! # Conventions
//!
//! - All arithmetic is exact: coefficients are arbitrary-precision rationals
//!   ([`Rational`]).  No floating point is used anywhere.
//! - The basis of degree-2 classes is always ordered
//!   `(c1^2, c1 x1, x1^2, x2)`; a one-point class is the coefficient vector
//!   in that basis, so `(3, 2, 0, 1)` denotes `3 c1^2 + 2 c1 x1 + x2`.
//! - `x1 = c1(T*X)` is the *cotangent* Chern class; on the projective plane
//!   with `L = O(d)` the four Chern numbers are `(d^2, -3d, 9, 3)`.
//! - Engines are single-threaded value caches: results are immutable once
//!   computed, and queries take `&mut self` only to fill the memo tables.
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod chern_ring;
pub mod error;
pub mod selftest;
pub mod singularity;
pub mod strata_engine;
pub mod surface_eval;
pub mod two_point_engine;

/// Exact arbitrary-precision rational number used for every coefficient.
pub type Rational = num_rational::BigRational;

/// Exact arbitrary-precision integer (numerators, point counts, degrees).
pub type Integer = num_bigint::BigInt;

pub use chern_ring::{FormalPolynomial, FormatStyle, Monomial2, OnePointClass, SurfaceGeometry, TwoPointClass};
pub use error::EngineError;
pub use singularity::Singularity;
pub use strata_engine::{OnePointEngine, Pa7Variant, StratumKey, StratumTag};
pub use surface_eval::{Ampleness, AmplenessReport, CountReport, CountTarget, SurfaceKind, SurfaceSpec};
pub use two_point_engine::{A1Pa3Correction, A1Pd4Correction, RecursionVariants, TwoPointEngine, TwoPointKey, TwoPointTag};
