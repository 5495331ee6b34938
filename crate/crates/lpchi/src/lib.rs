//! Permutation groups acting on graphs: stabiliser chains, Praeger–Xu graphs,
//! locally-L(p,χ) pair validation, classification dispatch and a coset-graph
//! census of exceptional pairs.

pub mod arith;
pub mod budget;
pub mod census;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod graphcore;
pub mod perm;
pub mod permgroup;
pub mod px;
pub mod quotients;

pub use budget::Budget;
pub use error::{Error, Rejection, Result};
pub use perm::Permutation;
pub use permgroup::PermGroup;
