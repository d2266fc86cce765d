//! The three graphic TSP estimators on small connected graphs and on a cycle.

use sublinear_tsp::bench::GeneratorSpec;
use sublinear_tsp::estimators::{
    estimate_graphic_tsp_subquadratic, estimate_graphic_tsp_v1, estimate_graphic_tsp_v2, EstimatorConfig, ExactMatching,
};
use sublinear_tsp::exact::exact_tsp;
use sublinear_tsp::graph::TspInstance;

fn main() -> sublinear_tsp::Result<()> {
    let cfg = EstimatorConfig::new(20, 0.1, 3).with_r(500).with_aux_r(2000);
    let specs = [
        GeneratorSpec::ConnectedGnp { n: 12, p: 0.2 },
        GeneratorSpec::ConnectedGnp { n: 12, p: 0.4 },
        GeneratorSpec::Cycle { n: 12 },
    ];
    for spec in specs {
        let inst = TspInstance::graphic(spec.generate(1)?)?;
        let tau = exact_tsp(&inst)? as f64;
        let v1 = estimate_graphic_tsp_v1(&inst, &cfg)?.value;
        let v2 = estimate_graphic_tsp_v2(&inst, &cfg)?.value;
        let sq = estimate_graphic_tsp_subquadratic(&inst, &cfg, &ExactMatching)?.value;
        println!(
            "{:<14} tau = {tau:>3}  v1 = {:.3}  v2 = {:.3}  subquadratic = {:.3}  (ratios)",
            spec.family(),
            v1 / tau,
            v2 / tau,
            sq / tau
        );
    }
    Ok(())
}
