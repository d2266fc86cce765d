use crate::graph::SimpleGraph;

struct LowLink {
    bridges: Vec<(usize, usize)>,
    cut: Vec<bool>,
}

fn low_link(g: &SimpleGraph) -> LowLink {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = LowLink {
        bridges: Vec::new(),
        cut: vec![false; n],
    };
    let mut timer = 0;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*idx) {
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.bridges.push((parent.min(v), parent.max(v)));
                    }
                    if parent != root && low[v] >= disc[parent] {
                        out.cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            out.cut[root] = true;
        }
    }
    out.bridges.sort_unstable();
    out
}

/// Bridges as canonical `(lo, hi)` pairs, sorted.
pub fn exact_bridges(g: &SimpleGraph) -> Vec<(usize, usize)> {
    low_link(g).bridges
}

/// Articulation points, sorted.
pub fn exact_cut_vertices(g: &SimpleGraph) -> Vec<usize> {
    let cut = low_link(g).cut;
    (0..g.n()).filter(|&v| cut[v]).collect()
}

/// Bridges by deleting each edge and recounting components. Quadratic reference.
pub fn bridges_by_deletion(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let base = g.components().1;
    g.edges()
        .iter()
        .copied()
        .filter(|&e| {
            let rest = g.edges().iter().copied().filter(|&f| f != e);
            SimpleGraph::from_edges(g.n(), rest).unwrap().components().1 > base
        })
        .collect()
}

/// Cut vertices by deleting each vertex and recounting components. Quadratic reference.
pub fn cut_vertices_by_deletion(g: &SimpleGraph) -> Vec<usize> {
    let base = g.components().1;
    (0..g.n())
        .filter(|&v| {
            let rest = g.edges().iter().copied().filter(|&(a, b)| a != v && b != v);
            // Removing v also removes its own component slot.
            SimpleGraph::from_edges(g.n(), rest).unwrap().components().1 > base + 1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_and_cycle() {
        let tree = SimpleGraph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(exact_bridges(&tree), tree.edges());
        assert_eq!(exact_cut_vertices(&tree), vec![1, 3]);
        let cycle = SimpleGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(exact_bridges(&cycle).is_empty());
        assert!(exact_cut_vertices(&cycle).is_empty());
    }

    #[test]
    fn barbell_matches_deletion() {
        let g = SimpleGraph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
        assert_eq!(exact_bridges(&g), vec![(2, 3), (3, 4)]);
        assert_eq!(exact_bridges(&g), bridges_by_deletion(&g));
        assert_eq!(exact_cut_vertices(&g), vec![2, 3, 4]);
        assert_eq!(exact_cut_vertices(&g), cut_vertices_by_deletion(&g));
    }
}
