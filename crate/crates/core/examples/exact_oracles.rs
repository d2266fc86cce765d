//! Exact baselines: path cover, tour cost, matching, bridges and the ratio programs.

use sublinear_tsp::bench::GeneratorSpec;
use sublinear_tsp::exact::{
    build_reduction_prime, exact_bridges, exact_cut_vertices, exact_max_matching, exact_max_path_cover, exact_tsp,
    solve_ratio_program, RatioProgram,
};
use sublinear_tsp::graph::TspInstance;

fn main() -> sublinear_tsp::Result<()> {
    let g = GeneratorSpec::ConnectedGnp { n: 14, p: 0.2 }.generate(6)?;
    println!("n = {}, m = {}", g.n(), g.m());
    println!("maximum path cover: {}", exact_max_path_cover(&g)?);
    println!("maximum matching: {}", exact_max_matching(&g)?.size);
    println!("(1,2) tour cost: {}", exact_tsp(&TspInstance::one_two(g.clone()))?);
    println!("graphic tour cost: {}", exact_tsp(&TspInstance::graphic(g.clone())?)?);
    println!("bridges: {:?}", exact_bridges(&g));
    println!("cut vertices: {:?}", exact_cut_vertices(&g));

    let inner = GeneratorSpec::BipartiteGnp { a: 4, b: 4, p: 0.5 }.generate_full(1)?;
    let mu = exact_max_matching(&inner.graph)?.size;
    let prime = build_reduction_prime(&inner.graph, inner.sides.as_deref().unwrap(), 3)?;
    println!(
        "reduction with r = 3: mu = {mu}, mu' = {}, rho' = {}",
        exact_max_matching(&prime)?.size,
        exact_max_path_cover(&prime)?
    );

    for (name, p) in [
        ("path cover + bad vertices", RatioProgram::GRAPHIC_BAD_VERTICES),
        ("path cover + bridges", RatioProgram::GRAPHIC_BRIDGES),
        ("matching + bridges", RatioProgram::GRAPHIC_MATCHING),
    ] {
        println!("ratio, {name}: {:.6}", solve_ratio_program(&p, 1e-4)?);
    }
    Ok(())
}
