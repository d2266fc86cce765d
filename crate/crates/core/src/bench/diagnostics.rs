use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{derive_seed, estimate_path_cover, EstimatorConfig};
use crate::graph::{SimpleGraph, TspInstance};
use crate::local::{eager_rank, OracleSession, RankMode};
use crate::port_greedy::{all_copies, EdgeCopy, Port};

use super::generators::GeneratorSpec;
use super::stats::{polylog_fit, power_fit, LinearFit};

/// Largest copy set the round simulation will materialize.
pub const MAX_ROUND_COPIES: usize = 4_000_000;

/// Rounds of the parallel greedy MIS over all edge copies of `g` under the
/// eager ranks for `seed`.
///
/// Each round takes every live copy whose rank is below all of its live
/// conflicting copies, then removes those copies and everything they
/// conflict with. Returns the number of rounds until nothing is live.
pub fn diagnostic_parallel_rounds(g: &SimpleGraph, k: usize, seed: u64) -> Result<usize> {
    Ok(parallel_greedy(g, k, seed)?.0)
}

fn parallel_greedy(g: &SimpleGraph, k: usize, seed: u64) -> Result<(usize, Vec<EdgeCopy>)> {
    if k < 1 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    let total = (k + 2) * g.m();
    if total > MAX_ROUND_COPIES {
        return Err(Error::SizeGuard(format!(
            "{total} copies exceed the round-simulation limit {MAX_ROUND_COPIES}"
        )));
    }
    let copies = all_copies(g, k);
    let ranks: Vec<f64> = copies.iter().map(|c| eager_rank(seed, k, c)).collect();
    let port_id = |p: Port| 2 * p.vertex + p.side.index();
    let edge_id: FxHashMap<(usize, usize), usize> = g.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_of: Vec<usize> = copies.iter().map(|c| edge_id[&c.edge()]).collect();
    let ports_of: Vec<[usize; 2]> = copies.iter().map(|c| c.ports().map(port_id)).collect();
    let key = |i: usize| (ranks[i], copies[i]);
    let less = |a: (f64, EdgeCopy), b: (f64, EdgeCopy)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).is_lt();

    let mut live: Vec<usize> = (0..copies.len()).collect();
    let mut port_blocked = vec![false; 2 * g.n()];
    let mut edge_blocked = vec![false; g.m()];
    let mut rounds = 0;
    let mut taken = Vec::new();
    while !live.is_empty() {
        rounds += 1;
        let mut port_min: Vec<Option<usize>> = vec![None; 2 * g.n()];
        let mut edge_min: Vec<Option<usize>> = vec![None; g.m()];
        let bump = |slot: &mut Option<usize>, i: usize| {
            if slot.is_none_or(|j| less(key(i), key(j))) {
                *slot = Some(i);
            }
        };
        for &i in &live {
            bump(&mut edge_min[edge_of[i]], i);
            for p in ports_of[i] {
                bump(&mut port_min[p], i);
            }
        }
        let chosen: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&i| edge_min[edge_of[i]] == Some(i) && ports_of[i].iter().all(|&p| port_min[p] == Some(i)))
            .collect();
        for &i in &chosen {
            edge_blocked[edge_of[i]] = true;
            for p in ports_of[i] {
                port_blocked[p] = true;
            }
        }
        taken.extend(chosen.iter().map(|&i| copies[i]));
        live.retain(|&i| !edge_blocked[edge_of[i]] && ports_of[i].iter().all(|&p| !port_blocked[p]));
    }
    taken.sort_unstable();
    Ok((rounds, taken))
}

/// Parallel rounds and the deepest oracle trail under the same eager ranks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoundsAndTrail {
    pub rounds: usize,
    pub max_trail: usize,
}

/// Runs the vertex oracle on every vertex of `g` with eager ranks for `seed`
/// and reports the deepest evaluation stack next to the round count.
pub fn rounds_and_trail(g: &SimpleGraph, k: usize, seed: u64) -> Result<RoundsAndTrail> {
    let rounds = diagnostic_parallel_rounds(g, k, seed)?;
    let mut session = OracleSession::new(g, k, RankMode::Eager, seed)?;
    for v in 0..g.n() {
        session.vertex_oracle(v);
    }
    Ok(RoundsAndTrail {
        rounds,
        max_trail: session.trail_report().max_depth,
    })
}

/// Oracle cost at one graph size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrailPoint {
    pub n: usize,
    /// Mean edge-oracle evaluations per vertex-oracle call.
    pub mean_eo_per_vo: f64,
    pub max_depth: usize,
    pub vo_calls: u64,
    /// Total charged queries of one path-cover estimate with fixed `r`, if measured.
    pub path_cover_queries: Option<u64>,
}

/// Scaling measurement over a size sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrailScaling {
    pub points: Vec<TrailPoint>,
    /// `mean_eo_per_vo ≈ a·(ln n)ᵇ`.
    pub polylog: LinearFit,
    /// `path_cover_queries ≈ a·nᵇ`, when measured.
    pub query_power: Option<LinearFit>,
}

/// Parameters of a trail scaling sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrailConfig {
    pub generator: GeneratorSpec,
    pub n: Vec<usize>,
    #[serde(default = "default_k")]
    pub k: usize,
    /// Sampled vertices per size, one fresh lazy session each.
    #[serde(default = "default_vo_samples")]
    pub vo_samples: usize,
    /// Path-cover samples for the query-growth measurement; skipped if absent.
    #[serde(default)]
    pub path_cover_r: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

fn default_k() -> usize {
    crate::port_greedy::DEFAULT_K
}

fn default_vo_samples() -> usize {
    200
}

/// Measures oracle cost across sizes and fits the growth laws.
pub fn trail_scaling(cfg: &TrailConfig) -> Result<TrailScaling> {
    if cfg.n.len() < 2 || cfg.vo_samples == 0 {
        return Err(Error::InvalidParameter(
            "scaling needs two or more sizes and a positive sample count".into(),
        ));
    }
    let mut points = Vec::with_capacity(cfg.n.len());
    for (i, &n) in cfg.n.iter().enumerate() {
        let spec = cfg.generator.with_n(n);
        let g = spec.generate(derive_seed(cfg.seed, 10, i as u64))?;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 11, i as u64));
        let (mut eo, mut vo, mut depth) = (0u64, 0u64, 0usize);
        for s in 0..cfg.vo_samples {
            let v = rng.gen_range(0..g.n());
            let mut session = OracleSession::new(&g, cfg.k, RankMode::Lazy, derive_seed(cfg.seed, 12, s as u64))?;
            session.vertex_oracle(v);
            let t = session.trail_report();
            eo += t.eo_calls;
            vo += t.vo_calls;
            depth = depth.max(t.max_depth);
        }
        let path_cover_queries = match cfg.path_cover_r {
            Some(r) => {
                let inst = TspInstance::one_two(g.clone());
                let ecfg = EstimatorConfig::new(cfg.k, 0.1, derive_seed(cfg.seed, 13, i as u64)).with_r(r);
                Some(estimate_path_cover(&inst, &ecfg)?.queries["total"])
            }
            None => None,
        };
        points.push(TrailPoint {
            n: g.n(),
            mean_eo_per_vo: eo as f64 / vo.max(1) as f64,
            max_depth: depth,
            vo_calls: vo,
            path_cover_queries,
        });
    }
    let ns: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let eo: Vec<f64> = points.iter().map(|p| p.mean_eo_per_vo.max(f64::MIN_POSITIVE)).collect();
    let polylog = polylog_fit(&ns, &eo)?;
    let query_power = if cfg.path_cover_r.is_some() {
        let qs: Vec<f64> = points
            .iter()
            .map(|p| p.path_cover_queries.unwrap_or(0).max(1) as f64)
            .collect();
        Some(power_fit(&ns, &qs)?)
    } else {
        None
    };
    Ok(TrailScaling {
        points,
        polylog,
        query_power,
    })
}
