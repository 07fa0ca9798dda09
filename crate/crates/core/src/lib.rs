//! Exact computations on finite-dimensional genetic Volterra algebras.
//!
//! A genetic Volterra algebra of dimension `m` has basis `e_1, …, e_m` and
//! the commutative product `e_i ∘ e_j = p_{ij,i} e_i + p_{ij,j} e_j`, where
//! the heredity coefficients satisfy `p_{ii,i} = 1` and
//! `p_{ij,i} + p_{ij,j} = 1`. Everything except [`dynamics`] works over exact
//! rationals, so identities such as `p_{ij,i} = 1/2` are decided without
//! tolerances.
//!
//! Indices in the Rust API are 0-based. Error messages and the companion
//! CLI print 1-based indices.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod characters;
pub mod derivations;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod local;
pub mod rational;
pub mod structure;

pub use algebra::{AlgebraElement, AlgebraSpec, SimplexPoint, SkewMatrix};
pub use characters::CharacterSet;
pub use derivations::{DerivationSpace, LinearMap};
pub use error::{Error, Result};
pub use local::{LocalCandidateSpace, ProbeReport, ProbeVerdict};
pub use rational::Rational;
pub use structure::{AssociativityReport, Tournament};
