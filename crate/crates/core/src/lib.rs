//! Exact crystallographic root systems and Weyl groups.
//!
//! Decides whether a set of reflections generates the Weyl group from the
//! root and coroot lattices they span, recognizes simple systems and
//! quasi-Coxeter elements, and conjugates completing reflections of a
//! corank-one parabolic subgroup into a simple system.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod quasicox;
pub mod rootsystem;
pub mod selftest;
pub mod simple_systems;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::IntMatrix;
pub use rootsystem::{CartanType, Family, Root, RootSystem};
pub use weyl::{GroupElement, RootSubset};
