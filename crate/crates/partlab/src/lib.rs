//! Exact-arithmetic toolkit for k-regular partition classes.
//!
//! The crate enumerates the partition families A_k, B_k, B'_k, C_k, D and
//! E_k, applies the constructive bijections relating them (the classical
//! Glaisher split/merge, psi between E_k and B_k, phi between C_k(n+1) and
//! B'_k(n)), evaluates the corresponding generating functions as exact
//! truncated q-series, and verifies the equinumerosity identities by
//! exhaustive desk-scale sweeps.
//!
//! With the default `parallel` feature, per-n sweep work is distributed
//! with rayon; disabling the feature falls back to sequential iteration
//! with identical results.

pub mod bijections;
pub mod classes;
pub mod error;
pub mod partition;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{FrequencyView, Partition};
