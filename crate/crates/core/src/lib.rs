//! Exact symbolic engine realizing the Q-system of a simply-laced simple
//! Lie algebra as a cluster algebra.
//!
//! The crate computes Q-system solutions over the integers, performs seed
//! mutations with exact Laurent division, builds the belt graph of
//! hypercubes, and evaluates the fermionic M- and N-sums together with
//! small-rank tensor-product oracles.

pub mod algebra;
pub mod belt;
pub mod cluster;
pub mod counting;
pub mod error;
pub mod lie;
pub mod qsystem;

pub use algebra::{LaurentPoly, Monomial, VarSet};
pub use belt::{BeltGraph, BeltNode, HypercubeBlock, NodeKind};
pub use cluster::{MutationSequence, Seed};
pub use counting::{CountReport, MConfig, NVector, PositivityConvention, Weight};
pub use error::{Error, Result};
pub use lie::{CartanData, DynkinType, Family};
pub use qsystem::{NormalizationSigns, QTable};
