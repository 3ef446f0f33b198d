//! Document privatization by sentence infilling, with an optional
//! differentially private token-selection mechanism, plus the dataset
//! preparation and utility/privacy evaluation machinery around it.
//!
//! The crate is organized around independent work units (documents,
//! corpus records, text pairs). With the default `parallel` feature the
//! batch entry points fan out over rayon; without it they run
//! sequentially. Outputs are byte-identical either way: every document
//! draws from its own RNG substream derived from the job seed and the
//! document id.

pub mod corpus;
pub mod dp;
pub mod error;
pub mod eval;
pub mod exec;
pub mod infill;
pub mod io;
pub mod model;
pub mod rewrite;
pub mod rng;
pub mod segment;

pub use error::{Error, Result};
