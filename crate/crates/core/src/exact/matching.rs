use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub const MAX_GENERAL_MATCHING_N: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub size: usize,
    /// `mate[v]` is the partner of `v`, if matched.
    pub mate: Vec<Option<usize>>,
    /// A vertex cover of the same size, for bipartite inputs.
    pub cover: Option<Vec<usize>>,
}

impl MatchingResult {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| (v, w)))
            .collect()
    }
}

/// Maximum matching. Bipartite graphs of any size use Hopcroft–Karp and
/// also return a König vertex cover; other graphs use Edmonds' blossom
/// algorithm up to [`MAX_GENERAL_MATCHING_N`] vertices.
pub fn exact_max_matching(g: &SimpleGraph) -> Result<MatchingResult> {
    if let Some(side) = g.bipartition() {
        return Ok(hopcroft_karp(g, &side));
    }
    if g.n() > MAX_GENERAL_MATCHING_N {
        return Err(Error::SizeGuard(format!(
            "general matching needs n <= {MAX_GENERAL_MATCHING_N}, got {}",
            g.n()
        )));
    }
    Ok(blossom(g))
}

fn hopcroft_karp(g: &SimpleGraph, side: &[bool]) -> MatchingResult {
    let n = g.n();
    let left: Vec<usize> = (0..n).filter(|&v| !side[v]).collect();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    let mut dist = vec![usize::MAX; n];
    loop {
        // Layer the left side from free left vertices.
        let mut queue = VecDeque::new();
        for &u in &left {
            if mate[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                match mate[w] {
                    None => found = true,
                    Some(x) if dist[x] == usize::MAX => {
                        dist[x] = dist[u] + 1;
                        queue.push_back(x);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for &u in &left {
            if mate[u].is_none() {
                augment(g, u, &mut mate, &mut dist);
            }
        }
    }
    let size = left.iter().filter(|&&u| mate[u].is_some()).count();
    // König: alternate from free left vertices.
    let mut reached = vec![false; n];
    let mut queue: VecDeque<usize> = left.iter().copied().filter(|&u| mate[u].is_none()).collect();
    for &u in &queue {
        reached[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !reached[w] && mate[u] != Some(w) {
                reached[w] = true;
                if let Some(x) = mate[w] {
                    if !reached[x] {
                        reached[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
    }
    let cover = (0..n)
        .filter(|&v| {
            if side[v] {
                reached[v]
            } else {
                !reached[v] && g.degree(v) > 0
            }
        })
        .collect();
    MatchingResult {
        size,
        mate,
        cover: Some(cover),
    }
}

fn augment(g: &SimpleGraph, root: usize, mate: &mut [Option<usize>], dist: &mut [usize]) -> bool {
    // Iterative DFS along the layered graph.
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    let mut path: Vec<(usize, usize)> = Vec::new();
    while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
        let nbrs = g.neighbors(u);
        if *idx == nbrs.len() {
            dist[u] = usize::MAX;
            stack.pop();
            path.pop();
            continue;
        }
        let w = nbrs[*idx];
        *idx += 1;
        match mate[w] {
            None => {
                path.push((u, w));
                for &(a, b) in &path {
                    mate[a] = Some(b);
                    mate[b] = Some(a);
                }
                return true;
            }
            Some(x) if dist[x] == dist[u].wrapping_add(1) => {
                path.push((u, w));
                stack.push((x, 0));
            }
            Some(_) => {}
        }
    }
    false
}

fn blossom(g: &SimpleGraph) -> MatchingResult {
    let n = g.n();
    const NONE: usize = usize::MAX;
    let mut mate = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut in_blossom = vec![false; n];

    fn lca(a: usize, b: usize, mate: &[usize], parent: &[usize], base: &[usize]) -> usize {
        let mut seen = vec![false; mate.len()];
        let mut a = a;
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = parent[mate[a]];
        }
        let mut b = b;
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    }

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        parent.fill(NONE);
        used.fill(false);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut end = NONE;
        'bfs: while let Some(v) = queue.pop_front() {
            for &to in g.neighbors(v) {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                    let cur = lca(v, to, &mate, &parent, &base);
                    in_blossom.fill(false);
                    for (start, child) in [(v, to), (to, v)] {
                        let mut x = start;
                        let mut c = child;
                        while base[x] != cur {
                            in_blossom[base[x]] = true;
                            in_blossom[base[mate[x]]] = true;
                            parent[x] = c;
                            c = mate[x];
                            x = parent[mate[x]];
                        }
                    }
                    for i in 0..n {
                        if in_blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == NONE {
                    parent[to] = v;
                    if mate[to] == NONE {
                        end = to;
                        break 'bfs;
                    }
                    used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        let mut v = end;
        while v != NONE {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    let mate: Vec<Option<usize>> = mate.into_iter().map(|m| (m != NONE).then_some(m)).collect();
    let size = mate.iter().filter(|m| m.is_some()).count() / 2;
    MatchingResult {
        size,
        mate,
        cover: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_valid(g: &SimpleGraph, r: &MatchingResult) {
        for (v, m) in r.mate.iter().enumerate() {
            if let Some(w) = *m {
                assert!(g.has_edge(v, w));
                assert_eq!(r.mate[w], Some(v));
            }
        }
        assert_eq!(r.pairs().len(), r.size);
        if let Some(cover) = &r.cover {
            assert_eq!(cover.len(), r.size);
            assert!(g.edges().iter().all(|(a, b)| cover.contains(a) || cover.contains(b)));
        }
    }

    #[test]
    fn odd_cycle_and_perfect() {
        let c5 = SimpleGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let r = exact_max_matching(&c5).unwrap();
        assert_eq!(r.size, 2);
        check_valid(&c5, &r);
        let pm = SimpleGraph::from_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        let r = exact_max_matching(&pm).unwrap();
        assert_eq!(r.size, 4);
        check_valid(&pm, &r);
    }

    #[test]
    fn blossom_needed() {
        // Triangle with a pendant on each corner: perfect matching of size 3.
        let g = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        let r = exact_max_matching(&g).unwrap();
        assert_eq!(r.size, 3);
        check_valid(&g, &r);
        let petersen_like = SimpleGraph::from_edges(
            10,
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]),
        )
        .unwrap();
        assert_eq!(exact_max_matching(&petersen_like).unwrap().size, 5);
    }

    #[test]
    fn bipartite_cover() {
        let g = SimpleGraph::from_edges(7, [(0, 4), (0, 5), (1, 4), (2, 4), (3, 6), (2, 6)]).unwrap();
        let r = exact_max_matching(&g).unwrap();
        assert_eq!(r.size, 3);
        check_valid(&g, &r);
    }

    #[test]
    fn general_size_guard() {
        let g = SimpleGraph::from_edges(61, (0..61).map(|i| (i, (i + 1) % 61))).unwrap();
        assert!(matches!(exact_max_matching(&g), Err(Error::SizeGuard(_))));
    }
}
