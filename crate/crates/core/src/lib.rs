//! State-vector simulation of quantum networks for fermionic lattice models.
// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod circuit;
pub mod dense;
pub mod error;
pub mod fermion;
pub mod hubbard;
pub mod measure;
pub mod oracle;
pub mod pauli;
pub mod pipeline;
pub mod prep;
pub mod spectral;
pub mod state;
pub mod synth;
pub mod trotter;

pub use error::{Error, Result};
