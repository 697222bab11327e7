//! Standard graphs and the acceptance corpus.

use std::collections::HashSet;

use crate::graph::{canonical_form, MultiGraph};

pub fn path(n: usize) -> MultiGraph {
    let ends: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
    MultiGraph::from_edges(n + 1, &ends)
}

/// Cycle of length `n ≥ 1`; length 1 is a loop and length 2 a double edge.
pub fn cycle(n: usize) -> MultiGraph {
    assert!(n >= 1, "cycles have at least one edge");
    let ends: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::from_edges(n, &ends)
}

/// Star with `n` leaves, centre first.
pub fn star(n: usize) -> MultiGraph {
    let ends: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    MultiGraph::from_edges(n + 1, &ends)
}

pub fn rose(g: usize) -> MultiGraph {
    MultiGraph::from_edges(1, &vec![(0, 0); g])
}

pub fn melon() -> MultiGraph {
    MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)])
}

pub fn complete(n: usize) -> MultiGraph {
    let mut ends = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            ends.push((a, b));
        }
    }
    MultiGraph::from_edges(n, &ends)
}

pub fn complete_bipartite(p: usize, q: usize) -> MultiGraph {
    let mut ends = Vec::new();
    for a in 0..p {
        for b in 0..q {
            ends.push((a, p + b));
        }
    }
    MultiGraph::from_edges(p + q, &ends)
}

/// Wheel: an `n`-cycle plus a hub joined to every rim vertex.
pub fn wheel(n: usize) -> MultiGraph {
    let mut ends: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    ends.extend((0..n).map(|i| (n, i)));
    MultiGraph::from_edges(n + 1, &ends)
}

pub fn cube() -> MultiGraph {
    let mut ends = Vec::new();
    for a in 0..8usize {
        for bit in [1, 2, 4] {
            if a & bit == 0 {
                ends.push((a, a | bit));
            }
        }
    }
    MultiGraph::from_edges(8, &ends)
}

pub fn petersen() -> MultiGraph {
    let mut ends: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    ends.extend((0..5).map(|i| (i, i + 5)));
    ends.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    MultiGraph::from_edges(10, &ends)
}

/// Two vertices joined by internally disjoint paths of lengths `a_1, a_2, ...`.
/// With `k` paths the genus is `k − 1`.
pub fn theta(lengths: &[usize]) -> MultiGraph {
    assert!(lengths.iter().all(|&a| a >= 1));
    let mut n = 2;
    let mut ends = Vec::new();
    for &a in lengths {
        let mut prev = 0;
        for _ in 1..a {
            ends.push((prev, n));
            prev = n;
            n += 1;
        }
        ends.push((prev, 1));
    }
    MultiGraph::from_edges(n, &ends)
}

/// All trees with `k` edges up to isomorphism.
pub fn trees(k: usize) -> Vec<MultiGraph> {
    let mut level = vec![MultiGraph::point()];
    for _ in 0..k {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.vertex_count() {
                let mut ends: Vec<_> = t.edges().iter().map(|e| (e.ends[0], e.ends[1])).collect();
                ends.push((v, t.vertex_count()));
                let grown = MultiGraph::from_edges(t.vertex_count() + 1, &ends);
                if seen.insert(canonical_form(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// Multisets of size `k` from `lo..=hi`, non-decreasing.
pub fn multisets(k: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in multisets(k - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: MultiGraph,
}

/// The acceptance corpus: trees with 1–6 edges, cycles 3..8, stars 3..8, K4,
/// K5, K3,3, the melon, roses R1–R3 and theta graphs `G_g(a)` for `g ≤ 3`,
/// `a_i ∈ 1..4`. Isomorphic duplicates keep their first id.
pub fn acceptance_corpus() -> Vec<CorpusEntry> {
    let mut raw: Vec<(String, MultiGraph)> = Vec::new();
    for k in 1..=6 {
        for (i, t) in trees(k).into_iter().enumerate() {
            raw.push((format!("tree-{k}-{i}"), t));
        }
    }
    for n in 3..=8 {
        raw.push((format!("cycle-{n}"), cycle(n)));
    }
    for n in 3..=8 {
        raw.push((format!("star-{n}"), star(n)));
    }
    raw.push(("K4".into(), complete(4)));
    raw.push(("K5".into(), complete(5)));
    raw.push(("K3_3".into(), complete_bipartite(3, 3)));
    raw.push(("melon".into(), melon()));
    for g in 1..=3 {
        raw.push((format!("rose-{g}"), rose(g)));
    }
    for g in 1..=3 {
        for a in multisets(g + 1, 1, 4) {
            let tag: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            raw.push((format!("theta-{g}-{}", tag.join("")), theta(&a)));
        }
    }
    let mut seen = HashSet::new();
    raw.into_iter()
        .filter(|(_, g)| seen.insert(canonical_form(g)))
        .map(|(id, graph)| CorpusEntry {
            id,
            graph: graph.with_default_names(),
        })
        .collect()
}

pub fn find(entries: &[CorpusEntry], id: &str) -> Option<MultiGraph> {
    entries.iter().find(|e| e.id == id).map(|e| e.graph.clone())
}
