use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Chains `r` copies of a bipartite graph `(V, U, E)`.
///
/// Copy `i` maps vertex `x` to `i·n + x`. Each copy keeps its own edges
/// `V_i–U_i`, and for `i < r - 1` the edges are repeated as `V_i–U_{i+1}`.
/// `sides[x]` is `false` for `V` and `true` for `U`.
pub fn build_reduction_prime(g: &SimpleGraph, sides: &[bool], r: usize) -> Result<SimpleGraph> {
    let n = g.n();
    if sides.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} side labels for {n} vertices",
            sides.len()
        )));
    }
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if let Some(&(a, b)) = g.edges().iter().find(|&&(a, b)| sides[a] == sides[b]) {
        return Err(Error::InvalidParameter(format!(
            "edge ({a}, {b}) does not cross the declared sides"
        )));
    }
    let mut edges = Vec::with_capacity((2 * r - 1) * g.m());
    for i in 0..r {
        for &(a, b) in g.edges() {
            let (v, u) = if sides[a] { (b, a) } else { (a, b) };
            edges.push((i * n + v, i * n + u));
            if i + 1 < r {
                edges.push((i * n + v, (i + 1) * n + u));
            }
        }
    }
    SimpleGraph::from_edges(r * n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_becomes_path() {
        let g = SimpleGraph::from_edges(2, [(0, 1)]).unwrap();
        let gp = build_reduction_prime(&g, &[false, true], 2).unwrap();
        assert_eq!(gp.m(), 3);
        let degs: Vec<usize> = (0..4).map(|v| gp.degree(v)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 2);
        assert!(gp.is_connected());
    }

    #[test]
    fn rejects_bad_sides_and_handles_empty() {
        let g = SimpleGraph::from_edges(2, [(0, 1)]).unwrap();
        assert!(build_reduction_prime(&g, &[false, false], 2).is_err());
        let e = build_reduction_prime(&SimpleGraph::empty(0), &[], 3).unwrap();
        assert_eq!((e.n(), e.m()), (0, 0));
    }
}
