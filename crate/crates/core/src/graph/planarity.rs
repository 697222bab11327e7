//! Blocks (biconnected components) and a planarity test.
//!
//! Planarity uses the Demoucron–Malgrange–Pertuiset face-embedding algorithm
//! on each block of the underlying simple graph.

use std::collections::{BTreeSet, VecDeque};

use super::MultiGraph;

/// Edge sets of the blocks of `g`. Parallel edges share a block; every loop
/// is a block of its own. Order follows the depth-first search from vertex 0
/// onwards, loops last.
pub fn blocks(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, edge) in g.edges().iter().enumerate() {
        let [a, b] = edge.ends;
        if a != b {
            adj[a].push((e, b));
            adj[b].push((e, a));
        }
    }
    struct State {
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    fn dfs(u: usize, parent: usize, adj: &[Vec<(usize, usize)>], st: &mut State) {
        st.disc[u] = st.time;
        st.low[u] = st.time;
        st.time += 1;
        for &(e, w) in &adj[u] {
            if e == parent {
                continue;
            }
            if st.disc[w] == usize::MAX {
                st.stack.push(e);
                dfs(w, e, adj, st);
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(f) = st.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    st.out.push(block);
                }
            } else if st.disc[w] < st.disc[u] {
                st.stack.push(e);
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }
    let mut st = State {
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if st.disc[v] == usize::MAX {
            dfs(v, usize::MAX, &adj, &mut st);
        }
    }
    let mut out = st.out;
    out.extend(
        (0..g.edge_count())
            .filter(|&e| g.edge(e).is_loop())
            .map(|e| vec![e]),
    );
    out
}

pub fn is_planar(g: &MultiGraph) -> bool {
    blocks(g).iter().all(|block| {
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &e in block {
            let [a, b] = g.edge(e).ends;
            if a != b {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
        let mut verts: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() < 5 || pairs.len() < 9 {
            return true;
        }
        if pairs.len() > 3 * verts.len() - 6 {
            return false;
        }
        let local: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| {
                (
                    verts.binary_search(&a).unwrap(),
                    verts.binary_search(&b).unwrap(),
                )
            })
            .collect();
        block_is_planar(verts.len(), &local)
    })
}

/// DMP on a biconnected simple graph.
fn block_is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; n];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (k, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        let w = cycle[(k + 1) % cycle.len()];
        h_edges.insert((v.min(w), v.max(w)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    loop {
        let fragments = fragments(&adj, edges, &in_h, &h_edges);
        if fragments.is_empty() {
            return true;
        }
        let mut choice = None;
        for (k, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((k, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((k, admissible[0]));
                    }
                }
            }
        }
        let (k, f) = choice.expect("some fragment");
        let path = fragment_path(&adj, &fragments[k], &in_h);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(f);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&v| v == a).unwrap();
        let ib = face.iter().position(|&v| v == b).unwrap();
        let len = face.len();
        let arc = |from: usize, to: usize| {
            let mut out = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % len;
                out.push(face[i]);
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut f1 = arc(ia, ib);
        f1.extend(interior.iter().rev());
        let mut f2 = arc(ib, ia);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    // drop one edge ab and close a shortest a–b path with it
    let a = 0;
    let b = adj[0][0];
    let mut prev = vec![usize::MAX; adj.len()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if (u == a && w == b) || prev[w] != usize::MAX {
                continue;
            }
            prev[w] = u;
            if w == b {
                let mut cyc = vec![b];
                let mut x = b;
                while x != a {
                    x = prev[x];
                    cyc.push(x);
                }
                return cyc;
            }
            queue.push_back(w);
        }
    }
    unreachable!("blocks with three or more vertices contain a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior vertices; empty for a chord.
    interior: Vec<usize>,
}

fn fragments(
    adj: &[Vec<usize>],
    edges: &[(usize, usize)],
    in_h: &[bool],
    h_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for &(a, b) in edges {
        if in_h[a] && in_h[b] && !h_edges.contains(&(a.min(b), a.max(b))) {
            out.push(Fragment {
                attachments: vec![a, b],
                interior: Vec::new(),
            });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut interior = Vec::new();
        let mut att = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            interior.push(u);
            for &w in &adj[u] {
                if in_h[w] {
                    att.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment {
            attachments: att.into_iter().collect(),
            interior,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let a = frag.attachments[0];
    let b = frag.attachments[1];
    let inside = |v: usize| !in_h[v] && frag.interior.contains(&v);
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &w in &adj[a] {
        if inside(w) && prev[w] == usize::MAX {
            prev[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if adj[u].contains(&b) {
            let mut path = vec![b, u];
            let mut x = u;
            while prev[x] != a {
                x = prev[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[u] {
            if inside(w) && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected graph are connected to every attachment")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn kuratowski_graphs() {
        assert!(!is_planar(&corpus::complete(5)));
        assert!(!is_planar(&corpus::complete_bipartite(3, 3)));
        assert!(is_planar(&corpus::complete(4)));
        assert!(is_planar(&corpus::complete_bipartite(2, 5)));
        assert!(!is_planar(&corpus::petersen()));
        assert!(!is_planar(&corpus::complete(6)));
    }

    #[test]
    fn planar_families() {
        for n in 3..9 {
            assert!(is_planar(&corpus::cycle(n)));
            assert!(is_planar(&corpus::star(n)));
            assert!(is_planar(&corpus::wheel(n)));
        }
        assert!(is_planar(&corpus::melon()));
        assert!(is_planar(&corpus::rose(3)));
        assert!(is_planar(&corpus::cube()));
    }

    #[test]
    fn subdivided_k5_is_not_planar() {
        // K5 with one edge subdivided twice
        let mut ends: Vec<(usize, usize)> = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                if (a, b) != (0, 1) {
                    ends.push((a, b));
                }
            }
        }
        ends.extend([(0, 5), (5, 6), (6, 1)]);
        assert!(!is_planar(&MultiGraph::from_edges(7, &ends)));
    }

    #[test]
    fn block_decomposition() {
        // two triangles sharing a vertex, plus a pendant edge and a loop
        let g = MultiGraph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 2),
                (4, 5),
                (5, 5),
            ],
        );
        let mut b = blocks(&g);
        b.sort();
        assert_eq!(b, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6], vec![7]]);
        assert_eq!(blocks(&corpus::melon()), vec![vec![0, 1, 2]]);
    }
}
