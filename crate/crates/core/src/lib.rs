//! Approximate kernels: polynomial-time reductions paired with solution
//! lifting algorithms that lose at most a chosen factor in quality.

pub mod companion;
pub mod cp;
pub mod cvc;
pub mod df;
pub mod error;
pub mod framework;
pub mod graph;
pub mod io;
pub mod ulic;

pub use error::{Error, Result};
pub use graph::{MinorOp, MinorTranscript, MultiGraph, VertexId};
