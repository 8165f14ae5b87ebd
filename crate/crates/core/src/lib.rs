//! Exact-arithmetic classification of invariant Chern-Einstein almost Kähler
//! structures on homogeneous spaces G/L of classical non-compact simple Lie
//! groups.
//!
//! The pipeline is purely combinatorial: build a classical root system in
//! ε-coordinates ([`rootsys`]), split its roots into compact and noncompact
//! parts for an inner real form ([`realform`]), walk the Weyl group as signed
//! permutations and form chambers ([`weyl`]), attach to each chamber the
//! unique metric-positive almost complex structure and its Koszul form and
//! decide the sign of the Einstein constant ([`chern`]), cross-check the
//! per-case closed-form coefficients against direct summation
//! ([`closedform`]), and sweep whole Weyl groups exhaustively ([`search`]).
//! Everything is integer or rational arithmetic; there is no floating point
//! anywhere.

pub mod bitset;
pub mod chern;
pub mod closedform;
pub mod error;
pub mod realform;
pub mod rootsys;
pub mod search;
pub mod weyl;

pub use error::{Error, Result};
