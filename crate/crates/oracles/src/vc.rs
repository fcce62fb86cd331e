use crate::{adjacency, bits, check_vertices, Result};

/// A minimum vertex cover.
pub fn min_vertex_cover(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    check_vertices(n, 20)?;
    adjacency(n, edges)?;
    let mut best = (1u32 << n) - 1;
    for mask in 0u32..1 << n {
        if mask.count_ones() < best.count_ones()
            && edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
        {
            best = mask;
        }
    }
    Ok(bits(best))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_covers() {
        assert_eq!(min_vertex_cover(3, &[]).unwrap(), Vec::<usize>::new());
        assert_eq!(min_vertex_cover(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(), vec![0]);
        assert_eq!(min_vertex_cover(3, &[(0, 1), (1, 2), (0, 2)]).unwrap().len(), 2);
    }
}
