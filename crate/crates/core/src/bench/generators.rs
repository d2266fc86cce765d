use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::build_reduction_prime;
use crate::graph::SimpleGraph;

/// A graph family with its parameters.
///
/// Serialized as a JSON object tagged by `family`, e.g.
/// `{"family": "gnp", "n": 100, "p": 0.05}`. The compact text form
/// `gnp:n=100,p=0.05` is accepted by [`FromStr`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Gnp {
        n: usize,
        p: f64,
    },
    /// A random Hamiltonian path plus independent extra edges.
    PlantedHamPath {
        n: usize,
        extra_p: f64,
    },
    /// A perfect matching on `2·⌊n/2⌋` vertices, isolated vertex if `n` is odd.
    DisjointEdges {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    /// Center `0` joined to every other vertex.
    Star {
        n: usize,
    },
    /// Sides `0..a` and `a..a+b`, each cross pair present with probability `p`.
    BipartiteGnp {
        a: usize,
        b: usize,
        p: f64,
    },
    /// Chained copies of a bipartite inner graph.
    ReductionPrime {
        inner: Box<GeneratorSpec>,
        r: usize,
    },
    GadgetEmpty {
        n: usize,
    },
    GadgetSingleEdge {
        n: usize,
    },
    GadgetHamCycle {
        n: usize,
    },
    /// Uniform-ish random `d`-regular graph from the pairing model.
    Regular {
        n: usize,
        d: usize,
    },
    /// `G(n, p)` with its components chained by one random edge each.
    ConnectedGnp {
        n: usize,
        p: f64,
    },
}

/// A generated graph with the structure its family promises.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: SimpleGraph,
    /// Vertex order of a planted Hamiltonian path or cycle.
    pub hamiltonian: Option<Vec<usize>>,
    /// Side labels for bipartite families.
    pub sides: Option<Vec<bool>>,
}

const REGULAR_ATTEMPTS: usize = 10_000;

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Gnp { .. } => "gnp",
            GeneratorSpec::PlantedHamPath { .. } => "planted_ham_path",
            GeneratorSpec::DisjointEdges { .. } => "disjoint_edges",
            GeneratorSpec::Cycle { .. } => "cycle",
            GeneratorSpec::Path { .. } => "path",
            GeneratorSpec::Star { .. } => "star",
            GeneratorSpec::BipartiteGnp { .. } => "bipartite_gnp",
            GeneratorSpec::ReductionPrime { .. } => "reduction_prime",
            GeneratorSpec::GadgetEmpty { .. } => "gadget_empty",
            GeneratorSpec::GadgetSingleEdge { .. } => "gadget_single_edge",
            GeneratorSpec::GadgetHamCycle { .. } => "gadget_ham_cycle",
            GeneratorSpec::Regular { .. } => "regular",
            GeneratorSpec::ConnectedGnp { .. } => "connected_gnp",
        }
    }

    /// Vertex count of the generated graph.
    pub fn n(&self) -> usize {
        match self {
            GeneratorSpec::Gnp { n, .. }
            | GeneratorSpec::PlantedHamPath { n, .. }
            | GeneratorSpec::DisjointEdges { n }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::Path { n }
            | GeneratorSpec::Star { n }
            | GeneratorSpec::GadgetEmpty { n }
            | GeneratorSpec::GadgetSingleEdge { n }
            | GeneratorSpec::GadgetHamCycle { n }
            | GeneratorSpec::Regular { n, .. }
            | GeneratorSpec::ConnectedGnp { n, .. } => *n,
            GeneratorSpec::BipartiteGnp { a, b, .. } => a + b,
            GeneratorSpec::ReductionPrime { inner, r } => inner.n() * r,
        }
    }

    /// The same family resized to about `n` vertices.
    ///
    /// Bipartite graphs split `n` evenly; the chained construction resizes
    /// its inner graph to `n / r`.
    pub fn with_n(&self, n: usize) -> GeneratorSpec {
        let mut spec = self.clone();
        match &mut spec {
            GeneratorSpec::Gnp { n: m, .. }
            | GeneratorSpec::PlantedHamPath { n: m, .. }
            | GeneratorSpec::DisjointEdges { n: m }
            | GeneratorSpec::Cycle { n: m }
            | GeneratorSpec::Path { n: m }
            | GeneratorSpec::Star { n: m }
            | GeneratorSpec::GadgetEmpty { n: m }
            | GeneratorSpec::GadgetSingleEdge { n: m }
            | GeneratorSpec::GadgetHamCycle { n: m }
            | GeneratorSpec::Regular { n: m, .. }
            | GeneratorSpec::ConnectedGnp { n: m, .. } => *m = n,
            GeneratorSpec::BipartiteGnp { a, b, .. } => {
                *a = n / 2;
                *b = n - n / 2;
            }
            GeneratorSpec::ReductionPrime { inner, r } => **inner = inner.with_n(n / (*r).max(1)),
        }
        spec
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")))
            }
        };
        let at_least = |n: usize, min: usize| {
            if n >= min {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{} needs at least {min} vertices, got {n}",
                    self.family()
                )))
            }
        };
        match self {
            GeneratorSpec::Gnp { p, .. } | GeneratorSpec::ConnectedGnp { p, .. } => prob(*p),
            GeneratorSpec::PlantedHamPath { extra_p, .. } => prob(*extra_p),
            GeneratorSpec::BipartiteGnp { p, .. } => prob(*p),
            GeneratorSpec::Cycle { n } | GeneratorSpec::GadgetHamCycle { n } => at_least(*n, 3),
            GeneratorSpec::Star { n } => at_least(*n, 1),
            GeneratorSpec::GadgetSingleEdge { n } => at_least(*n, 2),
            GeneratorSpec::Regular { n, d } => {
                if d >= n || (n * d) % 2 == 1 {
                    Err(Error::InvalidParameter(format!(
                        "no simple {d}-regular graph on {n} vertices"
                    )))
                } else {
                    Ok(())
                }
            }
            GeneratorSpec::ReductionPrime { inner, r } => {
                if *r < 1 {
                    return Err(Error::InvalidParameter("r must be at least 1".into()));
                }
                if !matches!(**inner, GeneratorSpec::BipartiteGnp { .. }) {
                    return Err(Error::InvalidParameter(
                        "reduction_prime needs a bipartite_gnp inner graph".into(),
                    ));
                }
                inner.validate()
            }
            _ => Ok(()),
        }
    }

    /// Generates the graph for `seed`. Deterministic per `(spec, seed)`.
    pub fn generate(&self, seed: u64) -> Result<SimpleGraph> {
        Ok(self.generate_full(seed)?.graph)
    }

    /// Generates the graph together with its structural witnesses.
    pub fn generate_full(&self, seed: u64) -> Result<Generated> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plain = |graph| Generated {
            graph,
            hamiltonian: None,
            sides: None,
        };
        Ok(match *self {
            GeneratorSpec::Gnp { n, p } => plain(gnp(n, p, &mut rng)?),
            GeneratorSpec::ConnectedGnp { n, p } => plain(connect(gnp(n, p, &mut rng)?, &mut rng)?),
            GeneratorSpec::PlantedHamPath { n, extra_p } => {
                let order = permutation(n, &mut rng);
                let extra = gnp(n, extra_p, &mut rng)?;
                let path = order.windows(2).map(|w| (w[0], w[1]));
                let graph = SimpleGraph::from_edges_dedup(n, path.chain(extra.edges().iter().copied()))?;
                Generated {
                    graph,
                    hamiltonian: Some(order),
                    sides: None,
                }
            }
            GeneratorSpec::DisjointEdges { n } => {
                plain(SimpleGraph::from_edges(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1)))?)
            }
            GeneratorSpec::Cycle { n } => Generated {
                graph: SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?,
                hamiltonian: Some((0..n).collect()),
                sides: None,
            },
            GeneratorSpec::Path { n } => Generated {
                graph: SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))?,
                hamiltonian: Some((0..n).collect()),
                sides: None,
            },
            GeneratorSpec::Star { n } => plain(SimpleGraph::from_edges(n, (1..n).map(|i| (0, i)))?),
            GeneratorSpec::BipartiteGnp { a, b, p } => {
                let mut edges = Vec::new();
                for u in 0..a {
                    for v in a..a + b {
                        if rng.gen_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                Generated {
                    graph: SimpleGraph::from_edges(a + b, edges)?,
                    hamiltonian: None,
                    sides: Some((0..a + b).map(|x| x >= a).collect()),
                }
            }
            GeneratorSpec::ReductionPrime { ref inner, r } => {
                let g = inner.generate_full(rng.gen())?;
                let sides = g.sides.expect("bipartite inner graph has sides");
                let graph = build_reduction_prime(&g.graph, &sides, r)?;
                let chained = (0..r).flat_map(|_| sides.iter().copied()).collect();
                Generated {
                    graph,
                    hamiltonian: None,
                    sides: Some(chained),
                }
            }
            GeneratorSpec::GadgetEmpty { n } => plain(SimpleGraph::empty(n)),
            GeneratorSpec::GadgetSingleEdge { n } => {
                let u = rng.gen_range(0..n);
                let v = (u + rng.gen_range(1..n)) % n;
                plain(SimpleGraph::from_edges(n, [(u, v)])?)
            }
            GeneratorSpec::GadgetHamCycle { n } => {
                let order = permutation(n, &mut rng);
                let graph = SimpleGraph::from_edges(n, (0..n).map(|i| (order[i], order[(i + 1) % n])))?;
                Generated {
                    graph,
                    hamiltonian: Some(order),
                    sides: None,
                }
            }
            GeneratorSpec::Regular { n, d } => plain(regular(n, d, &mut rng)?),
        })
    }
}

impl Generated {
    /// Checks the structural property the family promises.
    pub fn verify(&self, spec: &GeneratorSpec) -> Result<()> {
        let g = &self.graph;
        let fail = |what: &str| Err(Error::InvariantViolation(format!("{}: {what}", spec.family())));
        if g.n() != spec.n() {
            return fail("wrong vertex count");
        }
        if let Some(order) = &self.hamiltonian {
            let mut seen = vec![false; g.n()];
            for &v in order {
                if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                    return fail("planted order is not a permutation");
                }
            }
            if order.len() != g.n() || order.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return fail("planted Hamiltonian path missing");
            }
        }
        if let Some(sides) = &self.sides {
            if g.edges().iter().any(|&(u, v)| sides[u] == sides[v]) {
                return fail("edge inside a side");
            }
        }
        let ok = match *spec {
            GeneratorSpec::DisjointEdges { n } => g.m() == n / 2 && g.max_degree() <= 1,
            GeneratorSpec::Cycle { n } | GeneratorSpec::GadgetHamCycle { n } => {
                g.m() == n && g.is_connected() && (0..n).all(|v| g.degree(v) == 2)
            }
            GeneratorSpec::Path { n } => g.m() == n.saturating_sub(1) && g.is_connected(),
            GeneratorSpec::Star { n } => g.m() == n - 1 && (n < 2 || g.degree(0) == n - 1),
            GeneratorSpec::GadgetEmpty { .. } => g.m() == 0,
            GeneratorSpec::GadgetSingleEdge { .. } => g.m() == 1,
            GeneratorSpec::Regular { n, d } => (0..n).all(|v| g.degree(v) == d),
            GeneratorSpec::ConnectedGnp { .. } => g.is_connected(),
            GeneratorSpec::BipartiteGnp { .. } | GeneratorSpec::ReductionPrime { .. } => self.sides.is_some(),
            GeneratorSpec::Gnp { .. } | GeneratorSpec::PlantedHamPath { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            fail("structural property violated")
        }
    }
}

fn permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// `G(n, p)` with geometric skipping over the `n(n−1)/2` pairs.
fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<SimpleGraph> {
    let mut edges = Vec::new();
    if p >= 1.0 {
        for u in 0..n {
            edges.extend((u + 1..n).map(|v| (u, v)));
        }
    } else if p > 0.0 {
        let log_q = (1.0 - p).ln();
        let (mut u, mut v) = (1usize, 0usize);
        // Walk the lower triangle row by row: pair (u, v) with v < u.
        loop {
            let r: f64 = rng.gen();
            let skip = ((1.0 - r).ln() / log_q).floor();
            if !skip.is_finite() || skip > (n * n) as f64 {
                break;
            }
            v += skip as usize;
            while u < n && v >= u {
                v -= u;
                u += 1;
            }
            if u >= n {
                break;
            }
            edges.push((v, u));
            v += 1;
        }
    }
    SimpleGraph::from_edges(n, edges)
}

fn connect(g: SimpleGraph, rng: &mut ChaCha8Rng) -> Result<SimpleGraph> {
    let (label, count) = g.components();
    if count <= 1 {
        return Ok(g);
    }
    let mut members = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        members[c].push(v);
    }
    let mut edges = g.edges().to_vec();
    for w in members.windows(2) {
        let a = w[0][rng.gen_range(0..w[0].len())];
        let b = w[1][rng.gen_range(0..w[1].len())];
        edges.push((a, b));
    }
    SimpleGraph::from_edges(g.n(), edges)
}

/// Pairing model with restarts on loops or repeated pairs.
fn regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<SimpleGraph> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..REGULAR_ATTEMPTS {
        points.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = points
            .chunks_exact(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                continue 'attempt;
            }
        }
        return SimpleGraph::from_edges(n, edges);
    }
    Err(Error::InvalidParameter(format!(
        "no simple {d}-regular pairing on {n} vertices after {REGULAR_ATTEMPTS} attempts"
    )))
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Parses JSON (`{"family": ...}`) or `family:key=value,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Ok(serde_json::from_str(s)?);
        }
        let (family, params) = s.split_once(':').unwrap_or((s, ""));
        let mut obj = serde_json::Map::new();
        obj.insert("family".into(), family.trim().into());
        for kv in params.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got `{kv}`")))?;
            let value: serde_json::Value = serde_json::from_str(value.trim())
                .map_err(|_| Error::InvalidParameter(format!("`{key}` needs a number, got `{value}`")))?;
            obj.insert(key.trim().into(), value);
        }
        serde_json::from_value(serde_json::Value::Object(obj)).map_err(|e| {
            if e.to_string().contains("unknown variant") {
                Error::UnknownFamily(family.to_string())
            } else {
                Error::InvalidParameter(format!("{family}: {e}"))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs() -> Vec<GeneratorSpec> {
        vec![
            GeneratorSpec::Gnp { n: 40, p: 0.1 },
            GeneratorSpec::PlantedHamPath { n: 100, extra_p: 0.05 },
            GeneratorSpec::DisjointEdges { n: 11 },
            GeneratorSpec::Cycle { n: 8 },
            GeneratorSpec::Path { n: 9 },
            GeneratorSpec::Star { n: 7 },
            GeneratorSpec::BipartiteGnp { a: 6, b: 5, p: 0.4 },
            GeneratorSpec::ReductionPrime {
                inner: Box::new(GeneratorSpec::BipartiteGnp { a: 4, b: 4, p: 0.5 }),
                r: 3,
            },
            GeneratorSpec::GadgetEmpty { n: 10 },
            GeneratorSpec::GadgetSingleEdge { n: 10 },
            GeneratorSpec::GadgetHamCycle { n: 12 },
            GeneratorSpec::Regular { n: 30, d: 3 },
            GeneratorSpec::ConnectedGnp { n: 50, p: 0.02 },
        ]
    }

    #[test]
    fn every_family_verifies_and_is_deterministic() {
        for spec in all_specs() {
            for seed in 0..5 {
                let g = spec.generate_full(seed).unwrap();
                g.verify(&spec).unwrap();
                assert_eq!(g, spec.generate_full(seed).unwrap(), "{spec}");
            }
        }
    }

    #[test]
    fn known_shapes() {
        let single = GeneratorSpec::GadgetSingleEdge { n: 10 }.generate(3).unwrap();
        assert_eq!((single.n(), single.m()), (10, 1));
        let cycle = GeneratorSpec::Cycle { n: 8 }.generate(0).unwrap();
        assert_eq!(cycle.m(), 8);
        assert!(crate::exact::exact_bridges(&cycle).is_empty());
    }

    #[test]
    fn gnp_density_is_plausible() {
        let g = GeneratorSpec::Gnp { n: 400, p: 0.05 }.generate(1).unwrap();
        let expected = 0.05 * (400.0 * 399.0 / 2.0);
        assert!((g.m() as f64 - expected).abs() < 5.0 * expected.sqrt(), "{}", g.m());
        let full = GeneratorSpec::Gnp { n: 6, p: 1.0 }.generate(1).unwrap();
        assert_eq!(full.m(), 15);
    }

    #[test]
    fn text_and_json_forms() {
        let a: GeneratorSpec = "gnp:n=100,p=0.05".parse().unwrap();
        assert_eq!(a, GeneratorSpec::Gnp { n: 100, p: 0.05 });
        let b: GeneratorSpec = r#"{"family":"cycle","n":8}"#.parse().unwrap();
        assert_eq!(b, GeneratorSpec::Cycle { n: 8 });
        assert_eq!(b.to_string().parse::<GeneratorSpec>().unwrap(), b);
        assert!(matches!(
            "nope:n=3".parse::<GeneratorSpec>(),
            Err(Error::UnknownFamily(_))
        ));
        assert!("cycle:n=8,q=1".parse::<GeneratorSpec>().is_err());
        assert!("gnp:n=10,p=2".parse::<GeneratorSpec>().unwrap().generate(0).is_err());
    }

    #[test]
    fn resizing() {
        assert_eq!(GeneratorSpec::Cycle { n: 8 }.with_n(20).n(), 20);
        assert_eq!(GeneratorSpec::BipartiteGnp { a: 1, b: 1, p: 0.5 }.with_n(9).n(), 9);
        let rp = GeneratorSpec::ReductionPrime {
            inner: Box::new(GeneratorSpec::BipartiteGnp { a: 2, b: 2, p: 0.5 }),
            r: 2,
        };
        assert_eq!(rp.with_n(20).n(), 20);
    }
}
