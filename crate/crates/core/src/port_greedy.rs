//! Full-information port greedy for path cover and its randomized greedy
//! MIS reformulation over edge copies.

use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Default number of `ZeroZero` copies per edge.
pub const DEFAULT_K: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Side {
        if i == 0 {
            Side::Zero
        } else {
            Side::One
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Port {
    pub vertex: usize,
    pub side: Side,
}

impl Port {
    pub fn new(vertex: usize, side: Side) -> Self {
        Port { vertex, side }
    }
}

/// Which port pair a copy occupies, relative to the canonical orientation
/// `lo < hi` of its edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CopyKind {
    /// `(lo⁰, hi⁰)`, one of `K` interchangeable replicas.
    ZeroZero(u32),
    /// `(lo⁰, hi¹)`
    ZeroOne,
    /// `(lo¹, hi⁰)`
    OneZero,
}

impl CopyKind {
    /// Sides occupied at `(lo, hi)`.
    pub fn sides(self) -> (Side, Side) {
        match self {
            CopyKind::ZeroZero(_) => (Side::Zero, Side::Zero),
            CopyKind::ZeroOne => (Side::Zero, Side::One),
            CopyKind::OneZero => (Side::One, Side::Zero),
        }
    }

    /// Dense index in `0..K+2`: replicas first, then the two mixed kinds.
    pub fn code(self, k: usize) -> usize {
        match self {
            CopyKind::ZeroZero(i) => i as usize,
            CopyKind::ZeroOne => k,
            CopyKind::OneZero => k + 1,
        }
    }

    pub fn from_code(code: usize, k: usize) -> CopyKind {
        match code.cmp(&k) {
            std::cmp::Ordering::Less => CopyKind::ZeroZero(code as u32),
            std::cmp::Ordering::Equal => CopyKind::ZeroOne,
            std::cmp::Ordering::Greater => CopyKind::OneZero,
        }
    }

    pub fn is_zero_zero(self) -> bool {
        matches!(self, CopyKind::ZeroZero(_))
    }
}

impl fmt::Display for CopyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopyKind::ZeroZero(i) => write!(f, "00:{i}"),
            CopyKind::ZeroOne => write!(f, "01"),
            CopyKind::OneZero => write!(f, "10"),
        }
    }
}

impl FromStr for CopyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "01" => Ok(CopyKind::ZeroOne),
            "10" => Ok(CopyKind::OneZero),
            _ => s
                .strip_prefix("00:")
                .and_then(|i| i.parse().ok())
                .map(CopyKind::ZeroZero)
                .ok_or_else(|| format!("unknown copy kind `{s}`")),
        }
    }
}

/// One replica of an edge, bound to a port pair.
///
/// The derived ordering is the canonical copy id: edge, then kind, then
/// replica index. It breaks rank ties everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeCopy {
    lo: usize,
    hi: usize,
    pub kind: CopyKind,
}

impl EdgeCopy {
    pub fn new(u: usize, v: usize, kind: CopyKind) -> Self {
        debug_assert!(u != v);
        EdgeCopy {
            lo: u.min(v),
            hi: u.max(v),
            kind,
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn edge(&self) -> (usize, usize) {
        (self.lo(), self.hi())
    }

    pub fn same_edge(&self, other: &EdgeCopy) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }

    pub fn has_endpoint(&self, x: usize) -> bool {
        self.lo() == x || self.hi() == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.lo() == x {
            self.hi()
        } else {
            self.lo()
        }
    }

    /// Side occupied at endpoint `x`.
    pub fn side_at(&self, x: usize) -> Side {
        let (a, b) = self.kind.sides();
        if x == self.lo() {
            a
        } else {
            debug_assert_eq!(x, self.hi());
            b
        }
    }

    pub fn ports(&self) -> [Port; 2] {
        let (a, b) = self.kind.sides();
        [Port::new(self.lo(), a), Port::new(self.hi(), b)]
    }

    /// All `K + 2` copies of edge `(u, v)` in canonical order.
    pub fn all_of(u: usize, v: usize, k: usize) -> impl Iterator<Item = EdgeCopy> {
        (0..k + 2).map(move |c| EdgeCopy::new(u, v, CopyKind::from_code(c, k)))
    }

    /// Copy of `(u, v)` that occupies side `su` at `u` and `sv` at `v`,
    /// with replica index 0 for the `(0, 0)` case. `None` for `(1, 1)`.
    pub fn occupying(u: usize, su: Side, v: usize, sv: Side) -> Option<EdgeCopy> {
        let (s_lo, s_hi) = if u < v { (su, sv) } else { (sv, su) };
        let kind = match (s_lo, s_hi) {
            (Side::Zero, Side::Zero) => CopyKind::ZeroZero(0),
            (Side::Zero, Side::One) => CopyKind::ZeroOne,
            (Side::One, Side::Zero) => CopyKind::OneZero,
            (Side::One, Side::One) => return None,
        };
        Some(EdgeCopy::new(u, v, kind))
    }
}

impl fmt::Display for EdgeCopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) {}", self.lo, self.hi, self.kind)
    }
}

/// Copies conflict when they replicate the same edge or occupy the same
/// side of a shared endpoint.
pub fn is_conflicting(a: &EdgeCopy, b: &EdgeCopy) -> bool {
    if a.same_edge(b) {
        return true;
    }
    a.ports().iter().any(|p| b.ports().contains(p))
}

/// A set of chosen copies together with the ports they occupy.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PortCoverSolution {
    chosen: Vec<EdgeCopy>,
    occupant: BTreeMap<Port, EdgeCopy>,
}

impl PortCoverSolution {
    /// Builds a solution from copies, checking that no two of them conflict.
    pub fn from_copies<I: IntoIterator<Item = EdgeCopy>>(copies: I) -> Result<Self> {
        let mut sol = PortCoverSolution::default();
        let mut edges = FxHashSet::default();
        for c in copies {
            if !edges.insert(c.edge()) {
                return Err(Error::InvariantViolation(format!("edge {:?} chosen twice", c.edge())));
            }
            if let Some(p) = c.ports().iter().find(|p| sol.occupant.contains_key(p)) {
                return Err(Error::InvariantViolation(format!("port {p:?} occupied twice")));
            }
            sol.insert_unchecked(c);
        }
        sol.chosen.sort_unstable();
        Ok(sol)
    }

    fn insert_unchecked(&mut self, c: EdgeCopy) {
        for p in c.ports() {
            self.occupant.insert(p, c);
        }
        self.chosen.push(c);
    }

    pub fn chosen(&self) -> &[EdgeCopy] {
        &self.chosen
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    pub fn occupant(&self, port: Port) -> Option<EdgeCopy> {
        self.occupant.get(&port).copied()
    }

    pub fn is_free(&self, port: Port) -> bool {
        !self.occupant.contains_key(&port)
    }

    /// Chosen edges as canonical `(lo, hi)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.chosen.iter().map(EdgeCopy::edge).collect()
    }

    /// Degree of `v` in the projected edge set.
    pub fn degree(&self, v: usize) -> usize {
        [Side::Zero, Side::One]
            .iter()
            .filter(|&&s| !self.is_free(Port::new(v, s)))
            .count()
    }

    /// Sidecar text: one `u v kind` line per chosen copy.
    pub fn to_sidecar(&self) -> String {
        self.chosen
            .iter()
            .map(|c| format!("{} {} {}\n", c.lo, c.hi, c.kind))
            .collect()
    }

    pub fn read_sidecar<R: BufRead>(reader: R) -> Result<Self> {
        let mut copies = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let err = |message: String| Error::Format { line: idx + 1, message };
            if fields.len() != 3 {
                return Err(err(format!("expected 3 fields, found {}", fields.len())));
            }
            let u: usize = fields[0]
                .parse()
                .map_err(|_| err(format!("bad vertex `{}`", fields[0])))?;
            let v: usize = fields[1]
                .parse()
                .map_err(|_| err(format!("bad vertex `{}`", fields[1])))?;
            if u == v {
                return Err(err(format!("self-loop at vertex {u}")));
            }
            let kind: CopyKind = fields[2].parse().map_err(err)?;
            copies.push(EdgeCopy::new(u, v, kind));
        }
        Self::from_copies(copies)
    }
}

/// Port greedy over an explicit edge order.
///
/// Each `(u, v)` in `order` is visited with `u` as the first endpoint and
/// takes the first free pair among `(u⁰, v⁰)`, `(u⁰, v¹)`, `(u¹, v⁰)`.
pub fn port_greedy_cover(g: &SimpleGraph, order: &[(usize, usize)]) -> Result<PortCoverSolution> {
    check_edge_permutation(g, order)?;
    let mut sol = PortCoverSolution::default();
    const RULES: [(Side, Side); 3] = [
        (Side::Zero, Side::Zero),
        (Side::Zero, Side::One),
        (Side::One, Side::Zero),
    ];
    for &(u, v) in order {
        for (su, sv) in RULES {
            if sol.is_free(Port::new(u, su)) && sol.is_free(Port::new(v, sv)) {
                sol.insert_unchecked(EdgeCopy::occupying(u, su, v, sv).unwrap());
                break;
            }
        }
    }
    sol.chosen.sort_unstable();
    Ok(sol)
}

fn check_edge_permutation(g: &SimpleGraph, order: &[(usize, usize)]) -> Result<()> {
    if order.len() != g.m() {
        return Err(Error::NotAPermutation(format!(
            "{} entries for {} edges",
            order.len(),
            g.m()
        )));
    }
    let mut seen = FxHashSet::default();
    for &(u, v) in order {
        if !g.has_edge(u, v) {
            return Err(Error::NotAPermutation(format!("({u}, {v}) is not an edge")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::NotAPermutation(format!("({u}, {v}) repeated")));
        }
    }
    Ok(())
}

/// Every copy of every edge of `g`, in canonical order.
pub fn all_copies(g: &SimpleGraph, k: usize) -> Vec<EdgeCopy> {
    g.edges().iter().flat_map(|&(u, v)| EdgeCopy::all_of(u, v, k)).collect()
}

/// Randomized greedy MIS over the copy conflict relation, scanning copies in
/// the given order. `order` must list all `(K + 2)·m` copies exactly once.
pub fn rgmis_port_cover(g: &SimpleGraph, k: usize, order: &[EdgeCopy]) -> Result<PortCoverSolution> {
    if k < 1 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    if order.len() != (k + 2) * g.m() {
        return Err(Error::NotAPermutation(format!(
            "{} copies listed, expected {}",
            order.len(),
            (k + 2) * g.m()
        )));
    }
    let mut seen = FxHashSet::default();
    for c in order {
        let valid = g.has_edge(c.lo(), c.hi()) && c.kind.code(k) < k + 2;
        if !valid || !seen.insert(*c) {
            return Err(Error::NotAPermutation(format!("copy {c} invalid or repeated")));
        }
    }
    Ok(greedy_mis(order.iter().copied()))
}

/// [`rgmis_port_cover`] with the order induced by `rank` (ties by copy id).
pub fn rgmis_by_rank<F: FnMut(&EdgeCopy) -> f64>(g: &SimpleGraph, k: usize, mut rank: F) -> Result<PortCoverSolution> {
    if k < 1 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    let mut keyed: Vec<(f64, EdgeCopy)> = all_copies(g, k).into_iter().map(|c| (rank(&c), c)).collect();
    keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(greedy_mis(keyed.into_iter().map(|(_, c)| c)))
}

fn greedy_mis<I: Iterator<Item = EdgeCopy>>(order: I) -> PortCoverSolution {
    let mut sol = PortCoverSolution::default();
    let mut taken = FxHashSet::default();
    for c in order {
        if taken.contains(&c.edge()) {
            continue;
        }
        if c.ports().iter().all(|&p| sol.is_free(p)) {
            taken.insert(c.edge());
            sol.insert_unchecked(c);
        }
    }
    sol.chosen.sort_unstable();
    sol
}

/// A connected component of a solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Vertices in walk order. For a cycle the closing edge returns to the first.
    pub vertices: Vec<usize>,
    pub copies: Vec<EdgeCopy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Decomposition {
    pub paths: Vec<Component>,
    pub cycles: Vec<Component>,
}

impl Decomposition {
    /// Edges left after cutting one edge from every cycle.
    pub fn path_cover_size(&self) -> usize {
        let path_edges: usize = self.paths.iter().map(|c| c.copies.len()).sum();
        let cycle_edges: usize = self.cycles.iter().map(|c| c.copies.len() - 1).sum();
        path_edges + cycle_edges
    }
}

/// Splits the chosen edges into maximal paths and cycles.
pub fn decompose(sol: &PortCoverSolution) -> Result<Decomposition> {
    let mut adj: BTreeMap<usize, Vec<EdgeCopy>> = BTreeMap::new();
    for c in &sol.chosen {
        adj.entry(c.lo()).or_default().push(*c);
        adj.entry(c.hi()).or_default().push(*c);
    }
    if let Some((v, list)) = adj.iter().find(|(_, l)| l.len() > 2) {
        return Err(Error::InvariantViolation(format!(
            "vertex {v} has degree {} in the solution",
            list.len()
        )));
    }
    let mut used: FxHashSet<EdgeCopy> = FxHashSet::default();
    let mut visited: FxHashSet<usize> = FxHashSet::default();
    let mut out = Decomposition::default();
    let walk = |start: usize, used: &mut FxHashSet<EdgeCopy>, visited: &mut FxHashSet<usize>| {
        let mut comp = Component {
            vertices: vec![start],
            copies: Vec::new(),
        };
        visited.insert(start);
        let mut cur = start;
        while let Some(c) = adj[&cur].iter().find(|c| !used.contains(c)) {
            used.insert(*c);
            comp.copies.push(*c);
            cur = c.other(cur);
            if cur == start {
                break;
            }
            visited.insert(cur);
            comp.vertices.push(cur);
        }
        comp
    };
    // Paths start at their degree-1 ends; what remains afterwards is cycles.
    for (&v, list) in &adj {
        if list.len() == 1 && !visited.contains(&v) {
            out.paths.push(walk(v, &mut used, &mut visited));
        }
    }
    for &v in adj.keys() {
        if !visited.contains(&v) {
            out.cycles.push(walk(v, &mut used, &mut visited));
        }
    }
    Ok(out)
}
