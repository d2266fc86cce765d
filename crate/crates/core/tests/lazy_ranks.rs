use std::collections::BTreeMap;

use sublinear_tsp::bench::stats::ks_two_sample;
use sublinear_tsp::bench::GeneratorSpec;
use sublinear_tsp::graph::SimpleGraph;
use sublinear_tsp::local::{OracleSession, RankMode};
use sublinear_tsp::port_greedy::{all_copies, rgmis_by_rank};

fn cover_size(g: &SimpleGraph, k: usize, mode: RankMode, seed: u64) -> usize {
    let mut session = OracleSession::new(g, k, mode, seed).unwrap();
    (0..g.n()).map(|v| session.vertex_oracle(v)).sum::<usize>() / 2
}

#[test]
fn lazy_answers_match_the_greedy_run_on_realized_ranks() {
    for seed in 0..40u64 {
        let g = GeneratorSpec::Gnp {
            n: 24,
            p: 0.15 + 0.01 * (seed % 10) as f64,
        }
        .generate(seed)
        .unwrap();
        let k = 1 + (seed % 4) as usize;
        let mut session = OracleSession::new(&g, k, RankMode::Lazy, seed).unwrap();
        let degrees: Vec<usize> = (0..g.n()).map(|v| session.vertex_oracle(v)).collect();
        let ranks: BTreeMap<_, f64> = all_copies(&g, k)
            .into_iter()
            .map(|c| (c, session.provider().rank_of(&c)))
            .collect();
        let reference = rgmis_by_rank(&g, k, |c| ranks[c]).unwrap();
        for (v, &d) in degrees.iter().enumerate() {
            assert_eq!(d, reference.degree(v), "seed {seed}, vertex {v}");
        }
    }
}

#[test]
fn lazy_and_eager_cover_sizes_share_a_distribution() {
    let g = GeneratorSpec::Gnp { n: 30, p: 0.12 }.generate(7).unwrap();
    let k = 3;
    let seeds = 0..1500u64;
    let eager: Vec<f64> = seeds
        .clone()
        .map(|s| cover_size(&g, k, RankMode::Eager, s) as f64)
        .collect();
    let lazy: Vec<f64> = seeds
        .map(|s| cover_size(&g, k, RankMode::Lazy, s ^ 0x5eed) as f64)
        .collect();
    let ks = ks_two_sample(&eager, &lazy).unwrap();
    assert!(ks.p_value > 0.01, "KS statistic {} p = {}", ks.statistic, ks.p_value);
}
