//! Exact exponential-time solvers. They share no code with the kernels and
//! take plain inputs: vertices are `0..n`, edges are index pairs, and a
//! repeated pair is a parallel edge.

pub mod cp;
pub mod cvc;
pub mod df;
pub mod ola;
pub mod pvc;
pub mod steiner;
pub mod ulic;
pub mod vc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("refused: {0}")]
    Refused(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Size limits beyond which a solver refuses instead of approximating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_string: usize,
    pub max_alphabet: usize,
    pub max_free_vertices: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 20, max_string: 200, max_alphabet: 16, max_free_vertices: 18 }
    }
}

pub(crate) fn check_vertices(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(OracleError::Refused(format!("{n} vertices exceed the limit of {limit}")))
    } else {
        Ok(())
    }
}

pub(crate) fn adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<u32>> {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        if u >= n || v >= n || u == v {
            return Err(OracleError::BadInput(format!("edge ({u}, {v})")));
        }
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

pub(crate) fn mask_connected(adj: &[u32], mask: u32) -> bool {
    if mask == 0 {
        return true;
    }
    let mut seen = mask & mask.wrapping_neg();
    loop {
        let mut grow = seen;
        let mut rest = seen;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow |= adj[v] & mask;
        }
        if grow == seen {
            return seen == mask;
        }
        seen = grow;
    }
}

pub(crate) fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}
