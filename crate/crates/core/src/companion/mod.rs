//! Partial Vertex Cover, Steiner Tree and Optimal Linear Arrangement.

pub mod ola;
pub mod pvc;
pub mod steiner;
