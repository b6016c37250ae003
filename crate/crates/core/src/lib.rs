pub mod corpus;
pub mod error;
pub mod graph;
pub mod matching;
pub mod orient;
pub mod poly;
pub mod spectral;
pub mod ucover;

pub use error::{Error, Result};
