//! Path cover size estimate on a (1,2) instance with a known answer.

use sublinear_tsp::bench::{guarantee_holds, Algorithm, ExperimentConfig, GeneratorSpec};
use sublinear_tsp::estimators::{estimate_path_cover, EstimatorConfig};
use sublinear_tsp::graph::TspInstance;

fn main() -> sublinear_tsp::Result<()> {
    let n = 512;
    let g = GeneratorSpec::PlantedHamPath {
        n,
        extra_p: 2.0 / n as f64,
    }
    .generate(5)?;
    let inst = TspInstance::one_two(g);
    let cfg = EstimatorConfig::new(20, 0.1, 9).with_r(500);
    let report = estimate_path_cover(&inst, &cfg)?;
    let rho = (n - 1) as f64;
    let bounds = ExperimentConfig::new(GeneratorSpec::Path { n }, vec![Algorithm::PathCover], vec![0]);
    println!("true maximum path cover: {rho}");
    println!(
        "estimate: {:.1}, within [(1/2 - 1/K) rho - n/K, rho]: {}",
        report.value,
        guarantee_holds(Algorithm::PathCover, report.value, rho, n, &bounds)
    );
    println!("distance queries: {}", report.queries["total"]);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
