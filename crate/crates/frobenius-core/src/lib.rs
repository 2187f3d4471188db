//! Exact arithmetic for the largest non-representable integer of a coprime
//! vector (its Frobenius number), the determinant-one lattices attached to
//! such vectors, and the covering radius of the standard simplex with respect
//! to those lattices.
//!
//! The crate is organized around one identity: for a primitive vector `a`
//! with Frobenius number `F(a)`, the normalized quantity
//! `(F(a) + a_1 + ... + a_d) / (a_1 ... a_d)^(1/(d-1))` equals the covering
//! radius of the standard simplex with respect to a unimodular lattice built
//! from `a`. Everything here either computes one side of that identity
//! exactly, or measures how the two sides distribute over ensembles of
//! vectors.
//!
//! Pure math only: no I/O, no threads, `no_std` + `alloc`. Callers that want
//! files, CLIs, or parallel sweeps live in the companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod convexgeom;
pub mod covering;
pub mod domains;
pub mod ensemble;
pub mod error;
pub mod frobenius;
pub mod lattice;
pub mod numeric;
pub mod siegel;
pub mod tol;

pub use error::{Error, Result};
