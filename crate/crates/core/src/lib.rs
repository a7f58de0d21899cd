//! Higher Hopf formulae for finite algebraic structures.
//!
//! The crate computes homology objects `H_{n+1}(A)` of finite groups,
//! finite-dimensional nilpotent Lie algebras over prime fields, and finite
//! precrossed modules, relative to a chosen Birkhoff subcategory. Both sides
//! of the theory are implemented: the closed-form commutator-product
//! denominators and the categorical kernel-pair recursion, which serve as
//! cross-checking oracles for each other on finite data.

pub mod backend;
pub mod corpus;
pub mod cube;
pub mod error;
pub mod fp;
pub mod group;
pub mod hopf;
pub mod json;
pub mod lie;
pub mod present;
pub mod pxmod;

pub use backend::{Backend, BackendKind, GroupBackend, LieBackend, PxmodBackend};
pub use error::{Error, Result};
pub use group::DEFAULT_SIZE_CAP;
pub use hopf::{HopfResult, InvariantsReport, Reflector};
pub use present::VarietySpec;
