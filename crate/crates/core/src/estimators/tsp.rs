use std::collections::BTreeMap;

use super::{estimate_bad_vertices, estimate_bridges, estimate_path_cover, EstimateReport, EstimatorConfig, Run};
use crate::error::{Error, Result};
use crate::exact::exact_max_matching;
use crate::graph::{MetricKind, TspInstance};

/// Source of a maximum-matching estimate `μ̃` with `μ − εn <= μ̃ <= μ`.
pub trait MatchingEstimator {
    fn name(&self) -> &str;
    fn estimate(&self, inst: &TspInstance, cfg: &EstimatorConfig) -> Result<f64>;
}

/// Exact maximum matching of the base graph, computed offline.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactMatching;

impl MatchingEstimator for ExactMatching {
    fn name(&self) -> &str {
        "exact"
    }

    fn estimate(&self, inst: &TspInstance, _cfg: &EstimatorConfig) -> Result<f64> {
        Ok(exact_max_matching(inst.base())?.size as f64)
    }
}

/// Worst case allowed by the contract: exactly `μ − εn`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdversarialMatching;

impl MatchingEstimator for AdversarialMatching {
    fn name(&self) -> &str {
        "adversarial"
    }

    fn estimate(&self, inst: &TspInstance, cfg: &EstimatorConfig) -> Result<f64> {
        Ok(exact_max_matching(inst.base())?.size as f64 - cfg.epsilon * inst.n() as f64)
    }
}

fn merge(into: &mut BTreeMap<String, f64>, prefix: &str, rep: &EstimateReport) {
    for (k, v) in &rep.components {
        into.insert(format!("{prefix}.{k}"), *v);
    }
}

/// `(1,2)`-TSP cost estimate `2n − ρ̃`.
pub fn estimate_tsp12(inst: &TspInstance, cfg: &EstimatorConfig) -> Result<EstimateReport> {
    if inst.metric() != MetricKind::OneTwo {
        return Err(Error::WrongMetric("(1,2)-TSP estimate needs a (1,2) instance"));
    }
    if inst.n() < 3 {
        return Err(Error::InvalidParameter("(1,2)-TSP estimate needs n >= 3".into()));
    }
    let run = Run::start(inst, cfg);
    let rho = estimate_path_cover(inst, cfg)?;
    let value = 2.0 * inst.n() as f64 - rho.value;
    let mut components = BTreeMap::from([("rho_tilde".to_string(), rho.value)]);
    merge(&mut components, "path_cover", &rho);
    Ok(run.finish("tsp12", cfg, value, components, rho.samples))
}

fn require_connected_graphic(inst: &TspInstance) -> Result<()> {
    if inst.metric() != MetricKind::Graphic {
        return Err(Error::WrongMetric("graphic TSP estimate needs a graphic instance"));
    }
    if inst.n() < 3 {
        return Err(Error::InvalidParameter("graphic TSP estimate needs n >= 3".into()));
    }
    Ok(())
}

/// Graphic TSP from path cover and bad vertices: `2n − (ρ̃ − 2β̃)/5`.
pub fn estimate_graphic_tsp_v1(inst: &TspInstance, cfg: &EstimatorConfig) -> Result<EstimateReport> {
    require_connected_graphic(inst)?;
    let run = Run::start(inst, cfg);
    let rho = estimate_path_cover(inst, cfg)?;
    let beta = estimate_bad_vertices(inst, cfg)?;
    let value = 2.0 * inst.n() as f64 - (rho.value - 2.0 * beta.value) / 5.0;
    let mut components = BTreeMap::from([
        ("rho_tilde".to_string(), rho.value),
        ("beta_tilde".to_string(), beta.value),
    ]);
    merge(&mut components, "path_cover", &rho);
    merge(&mut components, "bad_vertices", &beta);
    Ok(run.finish("graphic_v1", cfg, value, components, rho.samples + beta.samples))
}

/// Graphic TSP from path cover and bridges: `2n − (ρ̃ − B̃)/3`.
pub fn estimate_graphic_tsp_v2(inst: &TspInstance, cfg: &EstimatorConfig) -> Result<EstimateReport> {
    require_connected_graphic(inst)?;
    let run = Run::start(inst, cfg);
    let rho = estimate_path_cover(inst, cfg)?;
    let bridges = estimate_bridges(inst, cfg)?;
    let value = 2.0 * inst.n() as f64 - (rho.value - bridges.value) / 3.0;
    let mut components = BTreeMap::from([
        ("rho_tilde".to_string(), rho.value),
        ("b_tilde".to_string(), bridges.value),
    ]);
    merge(&mut components, "path_cover", &rho);
    merge(&mut components, "bridges", &bridges);
    Ok(run.finish("graphic_v2", cfg, value, components, rho.samples + bridges.samples))
}

/// Graphic TSP from a matching estimate and bridges: `2n − (μ̃ − B̃)/3`.
pub fn estimate_graphic_tsp_subquadratic(
    inst: &TspInstance,
    cfg: &EstimatorConfig,
    matcher: &dyn MatchingEstimator,
) -> Result<EstimateReport> {
    require_connected_graphic(inst)?;
    let run = Run::start(inst, cfg);
    let mu = matcher.estimate(inst, cfg)?;
    let bridges = estimate_bridges(inst, cfg)?;
    let value = 2.0 * inst.n() as f64 - (mu - bridges.value) / 3.0;
    let mut components = BTreeMap::from([("mu_tilde".to_string(), mu), ("b_tilde".to_string(), bridges.value)]);
    merge(&mut components, "bridges", &bridges);
    Ok(run.finish("graphic_subquadratic", cfg, value, components, bridges.samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn edgeless_tsp12_is_two_n() {
        let inst = TspInstance::one_two(SimpleGraph::empty(10));
        let rep = estimate_tsp12(&inst, &EstimatorConfig::new(3, 0.1, 1).with_r(30)).unwrap();
        assert_eq!(rep.value, 20.0);
        rep.audit().unwrap();
    }

    #[test]
    fn metric_checks() {
        let g = cycle(6);
        let one_two = TspInstance::one_two(g.clone());
        let graphic = TspInstance::graphic(g).unwrap();
        let cfg = EstimatorConfig::new(3, 0.2, 1).with_r(10);
        assert!(estimate_tsp12(&graphic, &cfg).is_err());
        assert!(estimate_graphic_tsp_v1(&one_two, &cfg).is_err());
        assert!(estimate_graphic_tsp_v2(&one_two, &cfg).is_err());
    }

    #[test]
    fn composites_audit() {
        let inst = TspInstance::graphic(cycle(24)).unwrap();
        let cfg = EstimatorConfig::new(4, 0.2, 5).with_r(60).with_aux_r(40);
        for rep in [
            estimate_graphic_tsp_v1(&inst, &cfg).unwrap(),
            estimate_graphic_tsp_v2(&inst, &cfg).unwrap(),
            estimate_graphic_tsp_subquadratic(&inst, &cfg, &ExactMatching).unwrap(),
        ] {
            rep.audit().unwrap();
            assert!(
                rep.value >= 24.0 && rep.value <= 48.0,
                "{}: {}",
                rep.algorithm,
                rep.value
            );
        }
    }

    #[test]
    fn adversarial_matcher_shifts_by_eps_n_over_three() {
        let inst = TspInstance::graphic(cycle(30)).unwrap();
        let cfg = EstimatorConfig::new(4, 0.2, 5).with_aux_r(30);
        let a = estimate_graphic_tsp_subquadratic(&inst, &cfg, &ExactMatching).unwrap();
        let b = estimate_graphic_tsp_subquadratic(&inst, &cfg, &AdversarialMatching).unwrap();
        assert!((b.value - a.value - 0.2 * 30.0 / 3.0).abs() < 1e-9);
        assert!(b.value >= 30.0);
    }
}
