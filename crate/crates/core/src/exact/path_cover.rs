use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

use super::matching::exact_max_matching;

/// Search-node budget applied outside the guaranteed-small regime.
const NODE_BUDGET: u64 = 200_000_000;
/// Budget for the vertex-branching search, whose nodes cost more.
const VERTEX_NODE_BUDGET: u64 = 20_000_000;

/// Union-find with an undo log.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.log.push((a, b));
    }

    fn undo(&mut self) {
        let (a, b) = self.log.pop().expect("undo without union");
        self.parent[b] = b;
        self.size[a] -= self.size[b];
    }
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    /// `remaining[i][v]`: edges with index `>= i` incident to `v`.
    remaining: Vec<Vec<u16>>,
    deg: Vec<u8>,
    dsu: RollbackDsu,
    best: usize,
    ceiling: usize,
    nodes: u64,
    budget: Option<u64>,
    /// Two-colouring, when the graph is bipartite.
    side: Option<Vec<bool>>,
}

/// Finds an augmenting path from left vertex `a` in the unit-edge flow network;
/// right vertices absorb flow up to `cap`, or by rerouting a current mate.
fn augment(
    a: usize,
    adj: &[Vec<usize>],
    used: &mut [Vec<bool>],
    mate: &mut [Vec<usize>],
    cap: &mut [usize],
    visited: &mut [bool],
) -> bool {
    for k in 0..adj[a].len() {
        let b = adj[a][k];
        if used[a][k] || visited[b] {
            continue;
        }
        visited[b] = true;
        if cap[b] > 0 {
            cap[b] -= 1;
            used[a][k] = true;
            mate[b].push(a);
            return true;
        }
        for j in 0..mate[b].len() {
            let other = mate[b][j];
            if augment(other, adj, used, mate, cap, visited) {
                let kk = adj[other].iter().position(|&x| x == b).expect("edge");
                used[other][kk] = false;
                mate[b][j] = a;
                used[a][k] = true;
                return true;
            }
        }
    }
    false
}

impl Search<'_> {
    fn bound(&self, i: usize) -> usize {
        let caps: usize = self
            .deg
            .iter()
            .zip(&self.remaining[i])
            .map(|(&d, &r)| (2 - d as usize).min(r as usize))
            .sum();
        caps / 2
    }

    /// Largest 2-matching among the still-addable edges `>= i`, with vertex
    /// capacities `2 - deg`, as a max flow from one colour class to the other.
    fn two_matching_bound(&self, i: usize) -> usize {
        let side = self.side.as_ref().expect("bipartite");
        let n = self.deg.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &self.edges[i..] {
            if self.deg[u] < 2 && self.deg[v] < 2 && self.dsu.find(u) != self.dsu.find(v) {
                let (a, b) = if side[u] { (v, u) } else { (u, v) };
                adj[a].push(b);
            }
        }
        let mut cap: Vec<usize> = self.deg.iter().map(|&d| 2 - d as usize).collect();
        // mate[b] lists the left vertices matched to right vertex b.
        let mut mate: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut used: Vec<Vec<bool>> = adj.iter().map(|a| vec![false; a.len()]).collect();
        let mut flow = 0;
        for a in 0..n {
            while !side[a] && cap[a] > 0 {
                let mut visited = vec![false; n];
                if !augment(a, &adj, &mut used, &mut mate, &mut cap, &mut visited) {
                    break;
                }
                cap[a] -= 1;
                flow += 1;
            }
        }
        flow
    }

    fn run(&mut self, i: usize, count: usize) -> Result<()> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::SizeGuard(format!("path-cover search exceeded {b} nodes")));
            }
        }
        if count > self.best {
            self.best = count;
        }
        if self.best >= self.ceiling || i == self.edges.len() || count + self.bound(i) <= self.best {
            return Ok(());
        }
        if self.side.is_some() && count + self.two_matching_bound(i) <= self.best {
            return Ok(());
        }
        let (u, v) = self.edges[i];
        if self.deg[u] < 2 && self.deg[v] < 2 && self.dsu.find(u) != self.dsu.find(v) {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.dsu.union(u, v);
            let r = self.run(i + 1, count + 1);
            self.dsu.undo();
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            r?;
        }
        self.run(i + 1, count)
    }
}

/// Search state for branching on the most constrained vertex.
struct VertexSearch {
    adj: Vec<Vec<(usize, usize)>>,
    deg: Vec<u8>,
    closed: Vec<bool>,
    forbidden: Vec<bool>,
    dsu: RollbackDsu,
    side: Option<Vec<bool>>,
    best: usize,
    ceiling: usize,
    nodes: u64,
    budget: Option<u64>,
}

impl VertexSearch {
    fn addable(&self, v: usize, w: usize, e: usize) -> bool {
        !self.forbidden[e]
            && !self.closed[v]
            && !self.closed[w]
            && self.deg[v] < 2
            && self.deg[w] < 2
            && self.dsu.find(v) != self.dsu.find(w)
    }

    fn open_edges(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[v].iter().copied().filter(move |&(w, e)| self.addable(v, w, e))
    }

    fn two_matching_bound(&self, side: &[bool]) -> usize {
        let n = self.deg.len();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if side[v] {
                    Vec::new()
                } else {
                    self.open_edges(v).map(|(w, _)| w).collect()
                }
            })
            .collect();
        let mut cap: Vec<usize> = self.deg.iter().map(|&d| 2 - d as usize).collect();
        let mut mate: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut used: Vec<Vec<bool>> = adj.iter().map(|a| vec![false; a.len()]).collect();
        let mut flow = 0;
        for a in 0..n {
            while !side[a] && cap[a] > 0 {
                let mut visited = vec![false; n];
                if !augment(a, &adj, &mut used, &mut mate, &mut cap, &mut visited) {
                    break;
                }
                cap[a] -= 1;
                flow += 1;
            }
        }
        flow
    }

    fn run(&mut self, count: usize) -> Result<()> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::SizeGuard(format!("path-cover search exceeded {b} nodes")));
            }
        }
        self.best = self.best.max(count);
        if self.best >= self.ceiling {
            return Ok(());
        }
        let n = self.deg.len();
        let open: Vec<usize> = (0..n).map(|v| self.open_edges(v).count()).collect();
        let caps: usize = (0..n).map(|v| (2 - self.deg[v] as usize).min(open[v])).sum();
        if count + caps / 2 <= self.best {
            return Ok(());
        }
        if let Some(side) = &self.side {
            if count + self.two_matching_bound(side) <= self.best {
                return Ok(());
            }
        }
        let Some(v) = (0..n)
            .filter(|&v| open[v] > 0)
            .min_by_key(|&v| (open[v], 2 - self.deg[v]))
        else {
            return Ok(());
        };
        let mut choices: Vec<(usize, usize)> = self.open_edges(v).collect();
        choices.sort_by_key(|&(w, _)| open[w]);
        let mut result = Ok(());
        for &(w, e) in &choices {
            self.deg[v] += 1;
            self.deg[w] += 1;
            self.dsu.union(v, w);
            result = self.run(count + 1);
            self.dsu.undo();
            self.deg[v] -= 1;
            self.deg[w] -= 1;
            self.forbidden[e] = true;
            if result.is_err() || self.best >= self.ceiling {
                break;
            }
        }
        if result.is_ok() && self.best < self.ceiling {
            self.closed[v] = true;
            result = self.run(count);
            self.closed[v] = false;
        }
        for &(_, e) in &choices {
            self.forbidden[e] = false;
        }
        result
    }
}

/// Maximum number of edges in a collection of vertex-disjoint paths.
///
/// Exhaustive branch and bound per connected component: branch on the open
/// vertex with the fewest addable edges, either taking one of them or closing
/// the vertex. Bounded by residual degree capacity and, on bipartite inputs,
/// by the largest residual 2-matching. Unlimited when `m <= 24` or `n <= 12`;
/// otherwise a node budget applies and exhausting it is a size-guard error.
pub fn exact_max_path_cover(g: &SimpleGraph) -> Result<usize> {
    let (label, count) = g.components();
    let mut index = vec![0usize; g.n()];
    let mut sizes = vec![0usize; count];
    for (v, &c) in label.iter().enumerate() {
        index[v] = sizes[c];
        sizes[c] += 1;
    }
    let mut edges = vec![Vec::new(); count];
    for &(u, v) in g.edges() {
        edges[label[u]].push((index[u], index[v]));
    }
    let mut total = 0;
    for (c, e) in edges.into_iter().enumerate() {
        if !e.is_empty() {
            total += connected_path_cover(&SimpleGraph::from_edges(sizes[c], e)?)?;
        }
    }
    Ok(total)
}

fn connected_path_cover(g: &SimpleGraph) -> Result<usize> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let matching_cap = exact_max_matching(g).map_or(usize::MAX, |m| 2 * m.size);
    let mut search = VertexSearch {
        adj,
        deg: vec![0; n],
        closed: vec![false; n],
        forbidden: vec![false; g.m()],
        dsu: RollbackDsu::new(n),
        side: g.bipartition(),
        best: 0,
        ceiling: (n - 1).min(matching_cap),
        nodes: 0,
        budget: (g.m() > 24 && n > 12).then_some(VERTEX_NODE_BUDGET),
    };
    search.run(0)?;
    Ok(search.best)
}

/// Maximum path cover by an independent search that branches on edges in the
/// given index order. Same limits as [`exact_max_path_cover`].
pub fn exact_max_path_cover_with_order(g: &SimpleGraph, order: &[usize]) -> Result<usize> {
    let n = g.n();
    let mut seen = vec![false; g.m()];
    if order.len() != g.m()
        || order
            .iter()
            .any(|&i| i >= g.m() || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::NotAPermutation("edge index order".into()));
    }
    if g.m() == 0 {
        return Ok(0);
    }
    let edges: Vec<(usize, usize)> = order.iter().map(|&i| g.edges()[i]).collect();
    let mut remaining = vec![vec![0u16; n]; edges.len() + 1];
    for i in (0..edges.len()).rev() {
        remaining[i] = remaining[i + 1].clone();
        remaining[i][edges[i].0] += 1;
        remaining[i][edges[i].1] += 1;
    }
    // A path on s vertices has at most s - 1 edges and at most 2μ edges overall.
    let components = g.components().1;
    let matching_cap = exact_max_matching(g).map_or(usize::MAX, |m| 2 * m.size);
    let ceiling = (n - components).min(matching_cap);
    let small = g.m() <= 24 || n <= 12;
    let mut search = Search {
        edges: &edges,
        remaining,
        deg: vec![0; n],
        dsu: RollbackDsu::new(n),
        best: 0,
        ceiling,
        nodes: 0,
        budget: (!small).then_some(NODE_BUDGET),
        side: g.bipartition(),
    };
    search.run(0, 0)?;
    Ok(search.best)
}

/// Maximum path cover via `n - (minimum number of paths partitioning V)`,
/// computed over vertex subsets. Independent of the edge search; `n <= 16`.
pub fn path_cover_by_subset_dp(g: &SimpleGraph) -> Result<usize> {
    let n = g.n();
    if n > 16 {
        return Err(Error::SizeGuard(format!("subset DP needs n <= 16, got {n}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let full = 1usize << n;
    // ends[S]: bitmask of vertices at which some Hamiltonian path of S ends.
    let mut ends = vec![0u32; full];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    for s in 1..full {
        let e = ends[s];
        if e == 0 {
            continue;
        }
        for (v, &adj) in nbr.iter().enumerate().take(n) {
            if e >> v & 1 == 1 {
                let mut ext = adj & !(s as u32);
                while ext != 0 {
                    let w = ext.trailing_zeros() as usize;
                    ext &= ext - 1;
                    ends[s | 1 << w] |= 1 << w;
                }
            }
        }
    }
    let mut parts = vec![u8::MAX; full];
    parts[0] = 0;
    for s in 1..full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        // Enumerate subsets t of s that contain the lowest vertex.
        let mut sub = rest;
        loop {
            let t = sub | low;
            if ends[t] != 0 && parts[s ^ t] != u8::MAX {
                parts[s] = parts[s].min(parts[s ^ t] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(n - parts[full - 1] as usize)
}
