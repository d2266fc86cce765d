use crate::error::{Error, Result};
use crate::graph::TspInstance;

pub const MAX_TSP_N: usize = 15;

/// Optimal tour cost by the Held–Karp subset DP. Reads distances without
/// charging the ledger.
pub fn exact_tsp(inst: &TspInstance) -> Result<u64> {
    let n = inst.n();
    if n > MAX_TSP_N {
        return Err(Error::SizeGuard(format!("exact TSP needs n <= {MAX_TSP_N}, got {n}")));
    }
    if n <= 1 {
        return Ok(0);
    }
    let d: Vec<Vec<u32>> = (0..n)
        .map(|u| (0..n).map(|v| inst.peek_distance(u, v)).collect())
        .collect();
    if n == 2 {
        return Ok(2 * d[0][1] as u64);
    }
    // Vertex 0 is the fixed start; masks range over vertices 1..n.
    let m = n - 1;
    let full = 1usize << m;
    const INF: u32 = u32::MAX / 2;
    let mut dp = vec![INF; full * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = d[0][j + 1];
    }
    for mask in 1..full {
        for j in 0..m {
            let cur = dp[mask * m + j];
            if cur == INF || mask >> j & 1 == 0 {
                continue;
            }
            let mut rest = !mask & (full - 1);
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next = mask | 1 << k;
                let cand = cur + d[j + 1][k + 1];
                if cand < dp[next * m + k] {
                    dp[next * m + k] = cand;
                }
            }
        }
    }
    let best = (0..m).map(|j| dp[(full - 1) * m + j] + d[j + 1][0]).min().unwrap();
    Ok(best as u64)
}
