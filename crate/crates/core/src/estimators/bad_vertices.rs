use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bridges::{bridge_flags, require_graphic};
use super::{derive_seed, streams, EstimateReport, EstimatorConfig, Run};
use crate::error::Result;
use crate::graph::{Phase, TspInstance};

/// A vertex of degree 1, or of degree 2 whose removal disconnects the graph.
///
/// A degree-2 vertex is a cut vertex iff one of its two edges is a bridge,
/// so one neighbor scan plus one local bridge test suffice.
pub fn is_bad_vertex(inst: &TspInstance, v: usize) -> Result<bool> {
    require_graphic(inst)?;
    let nbrs = {
        let _p = inst.ledger().enter(Phase::DegreeProbe);
        inst.scan_neighbors(v)
    };
    Ok(match nbrs.len() {
        1 => true,
        2 => bridge_flags(inst, v, &nbrs).contains(&true),
        _ => false,
    })
}

/// Estimates the number of bad vertices: `n·mean + εn/2` over
/// `4·ε⁻²·ln n` uniform samples.
pub fn estimate_bad_vertices(inst: &TspInstance, cfg: &EstimatorConfig) -> Result<EstimateReport> {
    cfg.validate()?;
    require_graphic(inst)?;
    let n = inst.n();
    let run = Run::start(inst, cfg);
    let s = cfg.bad_vertex_samples(n);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, streams::BAD_VERTICES, 0));
    let mut bad = 0usize;
    for _ in 0..s {
        if is_bad_vertex(inst, rng.gen_range(0..n))? {
            bad += 1;
        }
    }
    let mean = bad as f64 / s as f64;
    let value = n as f64 * mean + cfg.epsilon * n as f64 / 2.0;
    let components = BTreeMap::from([("mean".to_string(), mean), ("epsilon".to_string(), cfg.epsilon)]);
    Ok(run.finish("bad_vertices", cfg, value, components, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_cut_vertices;
    use crate::graph::SimpleGraph;

    fn graphic(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> TspInstance {
        TspInstance::graphic(SimpleGraph::from_edges(n, edges).unwrap()).unwrap()
    }

    #[test]
    fn star_path_cycle() {
        let star = graphic(5, (1..5).map(|i| (0, i)));
        assert!(is_bad_vertex(&star, 3).unwrap());
        assert!(!is_bad_vertex(&star, 0).unwrap());
        let path = graphic(3, [(0, 1), (1, 2)]);
        assert!((0..3).all(|v| is_bad_vertex(&path, v).unwrap()));
        let cycle = graphic(6, (0..6).map(|i| (i, (i + 1) % 6)));
        assert!((0..6).all(|v| !is_bad_vertex(&cycle, v).unwrap()));
    }

    #[test]
    fn agrees_with_articulation_points() {
        // Cycle 0..4 with a tail 4-5-6 and a chord-free square 6-7-8-9.
        let e = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 6),
        ];
        let inst = graphic(10, e);
        let cuts = exact_cut_vertices(inst.base());
        for v in 0..10 {
            let d = inst.base().degree(v);
            let truth = d == 1 || (d == 2 && cuts.contains(&v));
            assert_eq!(is_bad_vertex(&inst, v).unwrap(), truth, "vertex {v}");
        }
    }

    #[test]
    fn path_estimate_sandwich() {
        let inst = graphic(60, (0..59).map(|i| (i, i + 1)));
        let rep = estimate_bad_vertices(&inst, &EstimatorConfig::new(2, 0.2, 4).with_aux_r(50)).unwrap();
        rep.audit().unwrap();
        assert_eq!(rep.component("mean"), Some(1.0));
        assert!((rep.value - 66.0).abs() < 1e-9);
    }
}
