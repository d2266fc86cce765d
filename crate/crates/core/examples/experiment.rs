//! A small experiment sweep with guarantee checking, written as CSV.

use sublinear_tsp::bench::{check_output, run_experiment, Algorithm, ExperimentConfig, GeneratorSpec};

fn main() -> sublinear_tsp::Result<()> {
    let mut cfg = ExperimentConfig::new(
        GeneratorSpec::ConnectedGnp { n: 10, p: 0.3 },
        vec![Algorithm::PathCover, Algorithm::Tsp12, Algorithm::GraphicV2],
        (0..5).collect(),
    );
    cfg.n = vec![8, 12];
    cfg.r_override = Some(500);
    cfg.aux_r_override = Some(2000);
    let output = run_experiment(&cfg, 0)?;
    print!("{}", output.to_csv()?);
    for g in check_output(&output).groups {
        println!("{} n={}: {}/{} within guarantee", g.algorithm, g.n, g.passed, g.checked);
    }
    Ok(())
}
