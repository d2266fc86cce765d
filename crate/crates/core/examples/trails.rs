//! Oracle cost growth on 3-regular graphs.

use sublinear_tsp::bench::{rounds_and_trail, trail_scaling, GeneratorSpec, TrailConfig};

fn main() -> sublinear_tsp::Result<()> {
    let cfg = TrailConfig {
        generator: GeneratorSpec::Regular { n: 256, d: 3 },
        n: (8..=12).map(|e| 1 << e).collect(),
        k: 20,
        vo_samples: 200,
        path_cover_r: Some(50),
        seed: 0,
    };
    let s = trail_scaling(&cfg)?;
    for p in &s.points {
        println!(
            "n = {:>5}: {:.2} edge-oracle calls per vertex oracle, max depth {}",
            p.n, p.mean_eo_per_vo, p.max_depth
        );
    }
    println!("polylog fit exponent {:.3}", s.polylog.slope);
    if let Some(q) = s.query_power {
        println!("queries ~ n^{:.3}", q.slope);
    }

    let g = GeneratorSpec::Regular { n: 1024, d: 3 }.generate(1)?;
    let rt = rounds_and_trail(&g, 20, 1)?;
    println!(
        "n = 1024: {} parallel greedy rounds, deepest oracle trail {}",
        rt.rounds, rt.max_trail
    );
    Ok(())
}
