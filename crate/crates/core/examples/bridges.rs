//! Bridge and bad-vertex count estimates against exact counts.

use sublinear_tsp::bench::{exact_bad_vertices, GeneratorSpec};
use sublinear_tsp::estimators::{estimate_bad_vertices, estimate_bridges, EstimatorConfig};
use sublinear_tsp::exact::exact_bridges;
use sublinear_tsp::graph::TspInstance;

fn main() -> sublinear_tsp::Result<()> {
    let n = 400;
    let g = GeneratorSpec::ConnectedGnp { n, p: 1.5 / n as f64 }.generate(2)?;
    let (bridges, bad) = (exact_bridges(&g).len(), exact_bad_vertices(&g));
    let inst = TspInstance::graphic(g)?;
    let cfg = EstimatorConfig::new(20, 0.1, 4).with_aux_r(8000);
    let b = estimate_bridges(&inst, &cfg)?;
    let beta = estimate_bad_vertices(&inst, &cfg)?;
    println!(
        "bridges: exact {bridges}, estimate {:.1}, allowed up to {:.1}",
        b.value,
        bridges as f64 + 0.1 * n as f64
    );
    println!("bad vertices: exact {bad}, estimate {:.1}", beta.value);
    Ok(())
}
