//! Exact computations in the combinatorics of reductive groups: root data,
//! Weyl groups, weight and tensor-product multiplicities, loop-group lattice
//! models, and transfer of invariants between dual groups.
//!
//! Everything is exact: lattice arithmetic over `i64`, multiplicities and
//! dimensions over arbitrary-precision integers, and Laurent-matrix linear
//! algebra over arbitrary-precision rationals. No floating point anywhere.
//!
//! The main entry points:
//!
//! - [`rootdata::RootDatum`] — a root system together with its weight and
//!   coweight lattices; the single source of truth for one group.
//! - [`weylgrp::WeylGroup`] — exhaustive enumeration of the Weyl group with
//!   reduced words, dominant representatives, stabilizers, double cosets.
//! - [`repcalc::Reps`] — weight multiplicities (Freudenthal), irreducible
//!   dimensions (Weyl), tensor multiplicities (Klimyk), invariant dimensions,
//!   plus an independent character-product oracle.
//! - [`prvcore`] — the triple-invariant lower bound `m`, the stabilizer
//!   valuation profile, and the orbit-dimension identity, with exhaustive
//!   sweep drivers.
//! - [`looplattice`] — truncated Laurent matrices over exact rationals,
//!   Chevalley distance via elementary divisors, convolution-cycle
//!   membership, and stabilizer Lie-algebra dimensions for `SL_m`.
//! - [`transfer`] — the dominant-translate transfer map between root data
//!   and bounded searches for invariant-transfer failures.

// index loops mirror the matrix arithmetic they implement
#![allow(clippy::needless_range_loop)]

pub mod linalg;
mod mat;
pub mod rootdata;
pub mod weylgrp;

pub mod looplattice;
pub mod prvcore;
pub mod repcalc;
pub mod transfer;

use thiserror::Error;

/// Errors surfaced by fallible operations. Most operations in this crate are
/// total on their documented preconditions and return plain values.
#[derive(Debug, Error)]
pub enum Error {
    /// A type label such as "A2xT1" could not be parsed or is unsupported.
    #[error("unsupported type label: {0}")]
    UnsupportedLabel(String),

    /// Explicit lattice data failed validation.
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    /// The Weyl group order exceeds the enumeration cap.
    #[error("Weyl group order {order} exceeds cap {cap}")]
    WeylOrderCap { order: u64, cap: u64 },

    /// A brute-force oracle was asked for more work than its cap allows.
    #[error("oracle cap exceeded: requested {size}, cap {cap}")]
    OracleCap { size: u64, cap: u64 },

    /// Mismatched vector length against the datum rank.
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    /// A Laurent-window operation could not represent all required degrees.
    #[error("window insufficient: {0}")]
    WindowInsufficient(String),

    /// A matrix required to be invertible was singular.
    #[error("singular matrix")]
    SingularMatrix,

    /// Input lists have inconsistent lengths.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// Text or JSON input failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A vector does not lie in the required lattice.
    #[error("not in lattice: {0}")]
    NotInLattice(String),
}

pub type Result<T> = std::result::Result<T, Error>;
