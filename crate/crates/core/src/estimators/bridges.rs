use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, streams, EstimateReport, EstimatorConfig, Run};
use crate::error::{Error, Result};
use crate::graph::{MetricKind, Phase, TspInstance};

/// For each neighbor `v_j` of `u` (in increasing order), whether `(u, v_j)`
/// is a bridge. Refuses vertices of degree above `cap`.
///
/// Every `w != u` is assigned to its nearest neighbor of `u` (ties to the
/// lowest index). The edge to `v_j` is a bridge iff every `w` assigned to
/// `v_j` is exactly 2 farther from all other neighbors, and every other `w`
/// is exactly 2 farther from `v_j` than from its own neighbor.
pub fn test_bridges_at(inst: &TspInstance, u: usize, cap: usize) -> Result<Vec<(usize, bool)>> {
    require_graphic(inst)?;
    let nbrs = {
        let _p = inst.ledger().enter(Phase::DegreeProbe);
        inst.scan_neighbors(u)
    };
    if nbrs.len() > cap {
        return Err(Error::DegreeCap {
            vertex: u,
            degree: nbrs.len(),
            cap,
        });
    }
    Ok(nbrs.iter().copied().zip(bridge_flags(inst, u, &nbrs)).collect())
}

pub(super) fn require_graphic(inst: &TspInstance) -> Result<()> {
    if inst.metric() != MetricKind::Graphic {
        return Err(Error::WrongMetric(
            "bridge and bad-vertex tests need a graphic instance",
        ));
    }
    Ok(())
}

/// Bridge flags for the edges from `u` to its known neighbors `nbrs`.
pub(super) fn bridge_flags(inst: &TspInstance, u: usize, nbrs: &[usize]) -> Vec<bool> {
    let _p = inst.ledger().enter(Phase::BridgeTest);
    let r = nbrs.len();
    let mut ok = vec![true; r];
    let mut dist = vec![0u32; r];
    for w in (0..inst.n()).filter(|&w| w != u) {
        for (i, &v) in nbrs.iter().enumerate() {
            dist[i] = if v == w { 0 } else { inst.distance_query(w, v) };
        }
        let mut home = 0;
        for i in 1..r {
            if dist[i] < dist[home] {
                home = i;
            }
        }
        for j in 0..r {
            if !ok[j] {
                continue;
            }
            ok[j] = if j == home {
                (0..r).all(|i| i == j || dist[i] == dist[j] + 2)
            } else {
                dist[j] == dist[home] + 2
            };
        }
    }
    ok
}

/// Estimates the number of bridges: `n·X̄ + 3εn/4`.
///
/// Each sampled vertex of degree at most `4/ε` tests the incident edges it
/// owns (lower degree, ties to the lower index) and counts the bridges.
pub fn estimate_bridges(inst: &TspInstance, cfg: &EstimatorConfig) -> Result<EstimateReport> {
    cfg.validate()?;
    require_graphic(inst)?;
    let n = inst.n();
    let run = Run::start(inst, cfg);
    let r = cfg.bridge_samples(n);
    let cap = (4.0 / cfg.epsilon).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, streams::BRIDGES, 0));
    let mut total = 0usize;
    for _ in 0..r {
        let u = rng.gen_range(0..n);
        let probe = inst.ledger().enter(Phase::DegreeProbe);
        let nbrs = inst.scan_neighbors(u);
        if nbrs.len() > cap {
            continue;
        }
        let owned: Vec<bool> = nbrs
            .iter()
            .map(|&v| {
                let dv = inst.scan_neighbors(v).len();
                nbrs.len() < dv || (nbrs.len() == dv && u < v)
            })
            .collect();
        drop(probe);
        if !owned.contains(&true) {
            continue;
        }
        let flags = bridge_flags(inst, u, &nbrs);
        total += owned.iter().zip(&flags).filter(|(&o, &b)| o && b).count();
    }
    let mean = total as f64 / r as f64;
    let value = n as f64 * mean + 3.0 * cfg.epsilon * n as f64 / 4.0;
    let components = BTreeMap::from([
        ("mean".to_string(), mean),
        ("epsilon".to_string(), cfg.epsilon),
        ("degree_cap".to_string(), cap as f64),
    ]);
    Ok(run.finish("bridges", cfg, value, components, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_bridges;
    use crate::graph::SimpleGraph;

    fn graphic(n: usize, edges: &[(usize, usize)]) -> TspInstance {
        TspInstance::graphic(SimpleGraph::from_edges(n, edges.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn path_and_triangle() {
        let p = graphic(3, &[(0, 1), (1, 2)]);
        assert_eq!(test_bridges_at(&p, 1, 2).unwrap(), vec![(0, true), (2, true)]);
        assert_eq!(test_bridges_at(&p, 0, 2).unwrap(), vec![(1, true)]);
        let t = graphic(3, &[(0, 1), (1, 2), (0, 2)]);
        for u in 0..3 {
            assert!(test_bridges_at(&t, u, 2).unwrap().iter().all(|&(_, b)| !b));
        }
    }

    #[test]
    fn cap_and_metric_refusals() {
        let star = graphic(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(matches!(
            test_bridges_at(&star, 0, 2),
            Err(Error::DegreeCap { degree: 3, .. })
        ));
        let one_two = TspInstance::one_two(SimpleGraph::from_edges(2, [(0, 1)]).unwrap());
        assert!(matches!(test_bridges_at(&one_two, 0, 2), Err(Error::WrongMetric(_))));
    }

    #[test]
    fn matches_tarjan_on_mixed_graph() {
        // Two triangles joined by a path, with a pendant.
        let e = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (6, 7)];
        let inst = graphic(8, &e);
        let truth = exact_bridges(inst.base());
        for u in 0..8 {
            for (v, b) in test_bridges_at(&inst, u, 8).unwrap() {
                assert_eq!(b, truth.contains(&(u.min(v), u.max(v))), "edge ({u}, {v})");
            }
        }
    }

    #[test]
    fn tree_estimate_upper_shift() {
        let inst = graphic(40, &(1..40).map(|i| (i, (i - 1) / 2)).collect::<Vec<_>>());
        let rep = estimate_bridges(&inst, &EstimatorConfig::new(2, 0.5, 1).with_aux_r(400)).unwrap();
        rep.audit().unwrap();
        assert!(rep.value >= 39.0 - 1e-9 && rep.value <= 39.0 + 20.0, "{}", rep.value);
        assert!(rep.queries["bridge_test"] > 0 && rep.queries["degree_probe"] > 0);
    }
}
