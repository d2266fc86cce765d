use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::ledger::QueryLedger;
use super::simple::SimpleGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    /// Distance 1 on edges of the base graph, 2 elsewhere.
    OneTwo,
    /// Shortest-path distance in a connected base graph.
    Graphic,
}

/// Callback invoked on every distance query, before it is answered.
pub type QueryObserver = Arc<dyn Fn(usize, usize) + Send + Sync>;

/// A TSP instance seen through a counting distance oracle.
///
/// The base graph is the hidden ground truth; algorithms are expected to go
/// through [`TspInstance::distance_query`] and its wrappers so that every
/// probe lands on the ledger.
pub struct TspInstance {
    metric: MetricKind,
    base: SimpleGraph,
    ledger: QueryLedger,
    bfs: Vec<OnceLock<Vec<u32>>>,
    observer: Option<QueryObserver>,
}

impl std::fmt::Debug for TspInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TspInstance")
            .field("metric", &self.metric)
            .field("n", &self.base.n())
            .field("m", &self.base.m())
            .field("queries", &self.ledger.total())
            .finish()
    }
}

impl TspInstance {
    pub fn one_two(base: SimpleGraph) -> Self {
        Self::build(MetricKind::OneTwo, base)
    }

    /// Shortest-path metric; fails on a disconnected base graph.
    pub fn graphic(base: SimpleGraph) -> Result<Self> {
        if !base.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Self::build(MetricKind::Graphic, base))
    }

    pub fn new(metric: MetricKind, base: SimpleGraph) -> Result<Self> {
        match metric {
            MetricKind::OneTwo => Ok(Self::one_two(base)),
            MetricKind::Graphic => Self::graphic(base),
        }
    }

    fn build(metric: MetricKind, base: SimpleGraph) -> Self {
        let bfs = match metric {
            MetricKind::OneTwo => Vec::new(),
            MetricKind::Graphic => (0..base.n()).map(|_| OnceLock::new()).collect(),
        };
        TspInstance {
            metric,
            base,
            ledger: QueryLedger::new(),
            bfs,
            observer: None,
        }
    }

    /// Installs a hook that sees every charged query.
    pub fn with_observer(mut self, observer: QueryObserver) -> Self {
        self.observer = Some(observer);
        self
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// The hidden graph. Only harness and test code should read this directly.
    pub fn base(&self) -> &SimpleGraph {
        &self.base
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    /// Answers `d(u, v)` and charges exactly one query.
    ///
    /// Panics if either vertex is out of range.
    pub fn distance_query(&self, u: usize, v: usize) -> u32 {
        let n = self.n();
        assert!(u < n && v < n, "vertex pair ({u}, {v}) out of range for n = {n}");
        if let Some(obs) = &self.observer {
            obs(u, v);
        }
        self.ledger.charge(1);
        self.peek_distance(u, v)
    }

    /// Uncharged distance, for exact oracles and tests.
    pub fn peek_distance(&self, u: usize, v: usize) -> u32 {
        if u == v {
            return 0;
        }
        let adjacent = self.base.has_edge(u, v);
        match self.metric {
            MetricKind::OneTwo => {
                if adjacent {
                    1
                } else {
                    2
                }
            }
            MetricKind::Graphic => {
                if adjacent {
                    1
                } else {
                    self.bfs[u].get_or_init(|| self.base.bfs_distances(u))[v]
                }
            }
        }
    }

    /// `d(u, v) == 1`, at the cost of one query.
    pub fn weight_one_adjacency(&self, u: usize, v: usize) -> bool {
        self.distance_query(u, v) == 1
    }

    /// All vertices at distance 1 from `v`, at the cost of `n - 1` queries.
    pub fn scan_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&u| u != v && self.weight_one_adjacency(u, v))
            .collect()
    }
}
