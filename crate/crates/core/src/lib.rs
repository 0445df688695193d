//! Idempotent set-theoretic Yang–Baxter operators: normal forms, braided
//! (co)homology over ℤ, quantum shuffle products and comparison with the
//! Hochschild homology of the structure monoid.
//!
//! The crate is `no_std` and only needs `alloc`; file formats and the
//! command-line front end live in the companion `ybhom` crate.

#![no_std]

extern crate alloc;

pub mod bimodule;
pub mod braided;
pub mod brcomplex;
pub mod catalog;
pub mod combination;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod monoid;
pub mod products;
pub mod shuffle;

pub use braided::{word, BraidWord, BraidedSet, ElementId, Word};
pub use error::{Error, Result};
pub use linalg::{AbelianGroup, ChainComplex, IntegerMatrix};
pub use monoid::FiniteMonoid;
