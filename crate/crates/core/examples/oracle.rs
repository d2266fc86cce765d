//! Local vertex and edge oracles agree with the global greedy run and report their cost.

use sublinear_tsp::bench::GeneratorSpec;
use sublinear_tsp::local::{eager_rank, OracleSession, RankMode};
use sublinear_tsp::port_greedy::rgmis_by_rank;

fn main() -> sublinear_tsp::Result<()> {
    let (k, seed) = (4, 11);
    let g = GeneratorSpec::Regular { n: 2000, d: 3 }.generate(3)?;
    let reference = rgmis_by_rank(&g, k, |c| eager_rank(seed, k, c))?;

    let mut eager = OracleSession::new(&g, k, RankMode::Eager, seed)?;
    let agree = (0..g.n()).all(|v| eager.vertex_oracle(v) == reference.degree(v));
    println!(
        "eager oracle matches the greedy solution on all {} vertices: {agree}",
        g.n()
    );

    for v in [0, 500, 1999] {
        let mut lazy = OracleSession::new(&g, k, RankMode::Lazy, seed)?;
        let d = lazy.vertex_oracle(v);
        let t = lazy.trail_report();
        println!(
            "lazy VO({v:>4}) = {d}: {} edge-oracle calls, depth {}, {} ranks realized",
            t.eo_calls,
            t.max_depth,
            lazy.provider().realized_count()
        );
    }
    Ok(())
}
