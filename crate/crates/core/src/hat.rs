//! Implicit gadget graph giving adjacency-list access to a graph that is only
//! available through pairwise adjacency queries.
//!
//! Vertices are two copies `V1`, `V2` of the base vertex set plus, for every
//! base vertex `i`, a block `U_i` of `gamma` pendant vertices hanging off
//! `V2(i)`. `V1` induces the base graph, `V2` induces it too, and `V1(i)` is
//! joined to `V2(j)` exactly when `(i, j)` is not a base edge (including
//! `i = j`). Each neighbor probe costs at most one base query.

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TspInstance};
use crate::local::{NeighborView, OracleSession, RankMode};
use crate::port_greedy::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HatVertexId {
    V1(usize),
    V2(usize),
    /// Pendant `j` of block `U_i`.
    U(usize, usize),
}

#[derive(Debug, Clone, Copy)]
pub struct HatGraph<'a> {
    inst: &'a TspInstance,
    n: usize,
    k: usize,
    gamma: usize,
}

impl<'a> HatGraph<'a> {
    /// Padding `gamma = 16·K·n`.
    pub fn new(inst: &'a TspInstance, k: usize) -> Self {
        let n = inst.n();
        Self::with_gamma(inst, k, 16 * k * n)
    }

    /// Custom padding, for diagnostics on materializable sizes.
    pub fn with_gamma(inst: &'a TspInstance, k: usize, gamma: usize) -> Self {
        HatGraph {
            inst,
            n: inst.n(),
            k,
            gamma,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn instance(&self) -> &'a TspInstance {
        self.inst
    }

    pub fn total_vertices(&self) -> usize {
        2 * self.n + self.n * self.gamma
    }

    pub fn id(&self, v: HatVertexId) -> usize {
        match v {
            HatVertexId::V1(i) => i,
            HatVertexId::V2(i) => self.n + i,
            HatVertexId::U(i, j) => 2 * self.n + i * self.gamma + j,
        }
    }

    pub fn vertex(&self, id: usize) -> Result<HatVertexId> {
        let n = self.n;
        if id < n {
            Ok(HatVertexId::V1(id))
        } else if id < 2 * n {
            Ok(HatVertexId::V2(id - n))
        } else if id < self.total_vertices() {
            let r = id - 2 * n;
            Ok(HatVertexId::U(r / self.gamma, r % self.gamma))
        } else {
            Err(Error::IndexOutOfRange {
                index: id,
                limit: self.total_vertices(),
            })
        }
    }

    fn check(&self, v: HatVertexId) -> Result<()> {
        let ok = match v {
            HatVertexId::V1(i) | HatVertexId::V2(i) => i < self.n,
            HatVertexId::U(i, j) => i < self.n && j < self.gamma,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{v:?} is not a vertex of the gadget graph"
            )))
        }
    }

    pub fn hat_degree(&self, v: HatVertexId) -> usize {
        match v {
            HatVertexId::V1(_) => self.n,
            HatVertexId::V2(_) => self.n + self.gamma,
            HatVertexId::U(..) => 1,
        }
    }

    /// The `i`-th neighbor of `v`; at most one base query.
    pub fn hat_neighbor(&self, v: HatVertexId, i: usize) -> Result<HatVertexId> {
        self.check(v)?;
        let deg = self.hat_degree(v);
        if i >= deg {
            return Err(Error::IndexOutOfRange { index: i, limit: deg });
        }
        Ok(match v {
            HatVertexId::V1(x) => {
                if self.inst.distance_query(x, i) == 1 {
                    HatVertexId::V1(i)
                } else {
                    HatVertexId::V2(i)
                }
            }
            HatVertexId::V2(x) if i < self.n => {
                if self.inst.distance_query(x, i) == 1 {
                    HatVertexId::V2(i)
                } else {
                    HatVertexId::V1(i)
                }
            }
            HatVertexId::V2(x) => HatVertexId::U(x, i - self.n),
            HatVertexId::U(x, _) => HatVertexId::V2(x),
        })
    }

    /// Explicit copy of the gadget graph, built by full enumeration.
    pub fn materialize(&self) -> Result<SimpleGraph> {
        const LIMIT: usize = 1 << 20;
        let total = self.total_vertices();
        if total > LIMIT {
            return Err(Error::SizeGuard(format!(
                "gadget graph has {total} vertices, limit is {LIMIT}"
            )));
        }
        let mut edges = Vec::new();
        for id in 0..total {
            let v = self.vertex(id)?;
            for i in 0..self.hat_degree(v) {
                let w = self.id(self.hat_neighbor(v, i)?);
                if id < w {
                    edges.push((id, w));
                }
            }
        }
        SimpleGraph::from_edges(total, edges)
    }

    /// Whether `V2(v)` has a non-pendant copy among the first copy of its
    /// side-0 list or the first two of its side-1 list. Needs eager ranks.
    pub fn is_abnormal(&self, session: &mut OracleSession<'_>, v: usize) -> Result<bool> {
        if session.provider().mode() != RankMode::Eager {
            return Err(Error::RequiresEager);
        }
        self.check(HatVertexId::V2(v))?;
        let x = self.id(HatVertexId::V2(v));
        let pendant = |p: &mut OracleSession<'_>, side: Side, i: usize| -> bool {
            p.provider()
                .list_entry(x, side, i, None)
                .is_some_and(|e| e.copy.other(x) >= 2 * self.n)
        };
        Ok(!(pendant(session, Side::Zero, 0) && pendant(session, Side::One, 0) && pendant(session, Side::One, 1)))
    }
}

impl NeighborView for HatGraph<'_> {
    fn vertex_count(&self) -> usize {
        self.total_vertices()
    }

    fn degree(&self, v: usize) -> usize {
        self.hat_degree(self.vertex(v).expect("vertex id in range"))
    }

    fn neighbor(&self, v: usize, i: usize) -> usize {
        let hv = self.vertex(v).expect("vertex id in range");
        self.id(self.hat_neighbor(hv, i).expect("neighbor index in range"))
    }

    fn max_degree(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.n + self.gamma
        }
    }
}
