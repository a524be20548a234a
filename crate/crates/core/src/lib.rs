//! Conversational graph extraction, topological featurization and
//! graph-only abuse classification for chat logs.

pub mod analysis;
pub mod community;
pub mod corpus;
pub mod error;
pub mod extraction;
pub mod features;
pub mod graph;
pub mod learning;
pub mod measures;
pub mod synthgen;

pub use error::{Error, Result};
