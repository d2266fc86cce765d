//! (1,2)-TSP cost estimate against the exact tour cost.

use sublinear_tsp::bench::GeneratorSpec;
use sublinear_tsp::estimators::{estimate_tsp12, EstimatorConfig};
use sublinear_tsp::exact::exact_tsp;
use sublinear_tsp::graph::TspInstance;

fn main() -> sublinear_tsp::Result<()> {
    for seed in 0..5 {
        let g = GeneratorSpec::Gnp { n: 13, p: 0.25 }.generate(seed)?;
        let inst = TspInstance::one_two(g);
        let tau = exact_tsp(&inst)?;
        let cfg = EstimatorConfig::new(20, 0.1, seed).with_r(2000);
        let est = estimate_tsp12(&inst, &cfg)?.value;
        println!(
            "seed {seed}: tau = {tau:>2}, estimate = {est:>6.2}, ratio = {:.3}",
            est / tau as f64
        );
    }
    Ok(())
}
