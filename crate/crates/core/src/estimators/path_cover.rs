use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, streams, EstimateReport, EstimatorConfig, Run};
use crate::error::{Error, Result};
use crate::graph::{Phase, TspInstance};
use crate::hat::HatGraph;
use crate::local::{OracleSession, RankMode};
use crate::port_greedy::Side;

/// Estimates the maximum path cover of the weight-1 graph.
///
/// Samples `r` pairs (vertex `u` of `V1`, port `p`) and checks, through a
/// fresh oracle session on the gadget graph, whether port `p` of `u` is
/// occupied by a copy whose other endpoint is also in `V1`. With `f` the
/// hit fraction, the estimate is `K/(2(K+2))·(2·f·n − n/(4K))`.
pub fn estimate_path_cover(inst: &TspInstance, cfg: &EstimatorConfig) -> Result<EstimateReport> {
    cfg.validate()?;
    let n = inst.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "path-cover estimate needs n >= 2, got {n}"
        )));
    }
    let run = Run::start(inst, cfg);
    let r = cfg.path_cover_samples(n);
    let hat = HatGraph::new(inst, cfg.k);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, streams::PATH_COVER_SAMPLES, 0));
    let mut hits = 0usize;
    let mut eo_calls = 0u64;
    {
        let _phase = inst.ledger().enter(Phase::Trail);
        for i in 0..r {
            let u = rng.gen_range(0..n);
            let side = if rng.gen_bool(0.5) { Side::One } else { Side::Zero };
            let seed = derive_seed(cfg.seed, streams::PATH_COVER_SESSIONS, i as u64);
            let mut session = OracleSession::new(&hat, cfg.k, RankMode::Lazy, seed)?;
            let occupant = session.port_occupant(u, side);
            if occupant.is_some_and(|c| c.other(u) < n) {
                hits += 1;
            }
            eo_calls += session.trail_report().eo_calls;
        }
    }
    let f = hits as f64 / r as f64;
    let (kf, nf) = (cfg.k as f64, n as f64);
    let raw = kf / (2.0 * (kf + 2.0)) * (2.0 * f * nf - nf / (4.0 * kf));
    let value = if cfg.clamp { raw.clamp(0.0, nf - 1.0) } else { raw };
    let components = BTreeMap::from([
        ("f".to_string(), f),
        ("k".to_string(), kf),
        ("rho_raw".to_string(), raw),
        ("rho_tilde".to_string(), value),
        ("mean_eo_calls".to_string(), eo_calls as f64 / r as f64),
    ]);
    Ok(run.finish("path_cover", cfg, value, components, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn edgeless_clamps_to_zero() {
        let inst = TspInstance::one_two(SimpleGraph::empty(20));
        let rep = estimate_path_cover(&inst, &EstimatorConfig::new(4, 0.1, 3).with_r(50)).unwrap();
        assert_eq!(rep.component("f"), Some(0.0));
        assert_eq!(rep.value, 0.0);
        assert!(rep.component("rho_raw").unwrap() < 0.0);
        rep.audit().unwrap();
        assert!(rep.queries["trail"] > 0);
        assert_eq!(rep.queries["total"], rep.queries["trail"]);
    }

    #[test]
    fn deterministic_and_bounded() {
        let g = SimpleGraph::from_edges(30, (0..29).map(|i| (i, i + 1))).unwrap();
        let cfg = EstimatorConfig::new(4, 0.1, 11).with_r(200);
        let a = estimate_path_cover(&TspInstance::one_two(g.clone()), &cfg).unwrap();
        let b = estimate_path_cover(&TspInstance::one_two(g), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.value <= 29.0 && a.value > 0.0);
        a.audit().unwrap();
    }

    #[test]
    fn rejects_tiny() {
        let inst = TspInstance::one_two(SimpleGraph::empty(1));
        assert!(estimate_path_cover(&inst, &EstimatorConfig::default().with_r(5)).is_err());
    }
}
