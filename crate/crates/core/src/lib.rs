//! Exact tools for irredundant spanning sets on Segre, Veronese and
//! Segre–Veronese varieties: verification, envelopes, constructions of
//! decompositions above the rank, and exhaustive oracles over prime fields.

pub mod construct;
pub mod decomp;
pub mod error;
pub mod exactlin;
pub mod geometry;
pub mod json;
pub mod oracle;
pub mod par;

pub use error::{Error, Result};
