//! Greedy path cover over ports, in a fixed edge order and under random ranks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sublinear_tsp::bench::GeneratorSpec;
use sublinear_tsp::exact::exact_max_path_cover;
use sublinear_tsp::local::eager_rank;
use sublinear_tsp::port_greedy::{decompose, port_greedy_cover, rgmis_by_rank};

fn main() -> sublinear_tsp::Result<()> {
    let g = GeneratorSpec::Gnp { n: 40, p: 0.08 }.generate(1)?;
    let rho = exact_max_path_cover(&g)?;
    println!("G(40, 0.08): m = {}, maximum path cover = {rho}", g.m());

    let mut order = g.edges().to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(2));
    let sol = port_greedy_cover(&g, &order)?;
    let dec = decompose(&sol)?;
    println!("fixed order: {} edges in {} paths", sol.len(), dec.paths.len());

    for k in [1, 4, 20] {
        let sol = rgmis_by_rank(&g, k, |c| eager_rank(7, k, c))?;
        let dec = decompose(&sol)?;
        println!(
            "random ranks, K = {k:>2}: {} edges, {} paths, {} cycles",
            sol.len(),
            dec.paths.len(),
            dec.cycles.len()
        );
    }
    Ok(())
}
