use crate::graph::SimpleGraph;

/// Adjacency-list access as seen by the local oracles.
///
/// `neighbor` may be charged against a query ledger; `degree` is free.
pub trait NeighborView {
    fn vertex_count(&self) -> usize;
    fn degree(&self, v: usize) -> usize;
    /// The `i`-th neighbor of `v`, `i < degree(v)`.
    fn neighbor(&self, v: usize, i: usize) -> usize;
    fn max_degree(&self) -> usize;
}

impl NeighborView for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn degree(&self, v: usize) -> usize {
        SimpleGraph::degree(self, v)
    }

    fn neighbor(&self, v: usize, i: usize) -> usize {
        self.neighbors(v)[i]
    }

    fn max_degree(&self) -> usize {
        SimpleGraph::max_degree(self)
    }
}

impl<T: NeighborView + ?Sized> NeighborView for &T {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }

    fn degree(&self, v: usize) -> usize {
        (**self).degree(v)
    }

    fn neighbor(&self, v: usize, i: usize) -> usize {
        (**self).neighbor(v, i)
    }

    fn max_degree(&self) -> usize {
        (**self).max_degree()
    }
}
