//! Canonical forms, isomorphisms and automorphism groups of multigraphs.
//!
//! Individualization-refinement: colour refinement to an equitable partition,
//! then branching on the first non-singleton cell. Twins (vertices whose
//! transposition is an automorphism) are branched on only once, which keeps
//! stars and complete graphs cheap.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Contraction, EdgeImage, MultiGraph};

/// Vertex count, edge count, then the upper triangle (diagonal = loops) of the
/// adjacency-count matrix under the canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u32>);

struct Colouring<'a> {
    adj: &'a [Vec<u32>],
}

impl<'a> Colouring<'a> {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn initial(&self) -> Vec<u32> {
        let keys: Vec<(u32, u32)> = (0..self.n())
            .map(|v| {
                (
                    self.adj[v][v],
                    self.adj[v].iter().sum::<u32>() + self.adj[v][v],
                )
            })
            .collect();
        rank(&keys)
    }

    /// Refine to the coarsest equitable partition below `colours`. Colour
    /// numbers are ranks of canonical signatures, so the result only depends
    /// on the colouring up to isomorphism.
    fn refine(&self, colours: &mut Vec<u32>) {
        let n = self.n();
        let mut classes = count_classes(colours);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u32, u32)> = (0..n)
                        .filter(|&w| w != v && self.adj[v][w] > 0)
                        .map(|w| (colours[w], self.adj[v][w]))
                        .collect();
                    s.sort_unstable();
                    (colours[v], s)
                })
                .collect();
            let next = rank(&sigs);
            let k = count_classes(&next);
            *colours = next;
            if k == classes {
                return;
            }
            classes = k;
        }
    }

    fn individualize(&self, colours: &[u32], v: usize) -> Vec<u32> {
        let c = colours[v];
        let keys: Vec<(u32, bool)> = colours
            .iter()
            .enumerate()
            .map(|(u, &cu)| (cu, !(cu == c && u == v)))
            .collect();
        let mut out = rank(&keys);
        self.refine(&mut out);
        out
    }

    /// First non-singleton cell, as a sorted vertex list.
    fn target_cell(&self, colours: &[u32]) -> Option<Vec<usize>> {
        let mut size = vec![0usize; self.n()];
        for &c in colours {
            size[c as usize] += 1;
        }
        let c = (0..self.n()).find(|&c| size[c] > 1)?;
        Some(
            (0..self.n())
                .filter(|&v| colours[v] as usize == c)
                .collect(),
        )
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        self.adj[u][u] == self.adj[v][v]
            && (0..self.n()).all(|w| w == u || w == v || self.adj[u][w] == self.adj[v][w])
    }

    /// One representative per run of twins, in cell order.
    fn branch_set(&self, cell: &[usize]) -> Vec<usize> {
        let mut reps: Vec<usize> = Vec::new();
        for &v in cell {
            if !reps.iter().any(|&u| self.twins(u, v)) {
                reps.push(v);
            }
        }
        reps
    }

    fn certificate(&self, colours: &[u32], edge_count: usize) -> Vec<u32> {
        let n = self.n();
        let mut inv = vec![0; n];
        for (v, &c) in colours.iter().enumerate() {
            inv[c as usize] = v;
        }
        let mut cert = Vec::with_capacity(2 + n * (n + 1) / 2);
        cert.push(n as u32);
        cert.push(edge_count as u32);
        for i in 0..n {
            for j in i..n {
                cert.push(self.adj[inv[i]][inv[j]]);
            }
        }
        cert
    }

    fn search(&self, colours: Vec<u32>, m: usize, best: &mut Option<(Vec<u32>, Vec<u32>)>) {
        match self.target_cell(&colours) {
            None => {
                let cert = self.certificate(&colours, m);
                if best.as_ref().is_none_or(|(b, _)| cert < *b) {
                    *best = Some((cert, colours));
                }
            }
            Some(cell) => {
                for v in self.branch_set(&cell) {
                    self.search(self.individualize(&colours, v), m, best);
                }
            }
        }
    }

    /// Some colour-preserving automorphism mapping the individualized
    /// colouring `a` onto `b`, if one exists.
    fn find_mapping(&self, a: Vec<u32>, b: Vec<u32>) -> Option<Vec<usize>> {
        if cell_sizes(&a) != cell_sizes(&b) {
            return None;
        }
        match self.target_cell(&a) {
            None => {
                let n = self.n();
                let mut inv_b = vec![0; n];
                for (v, &c) in b.iter().enumerate() {
                    inv_b[c as usize] = v;
                }
                let perm: Vec<usize> = (0..n).map(|v| inv_b[a[v] as usize]).collect();
                let ok =
                    (0..n).all(|u| (u..n).all(|w| self.adj[u][w] == self.adj[perm[u]][perm[w]]));
                ok.then_some(perm)
            }
            Some(cell) => {
                let x = cell[0];
                let c = a[x];
                let a1 = self.individualize(&a, x);
                (0..self.n())
                    .filter(|&y| b[y] == c)
                    .find_map(|y| self.find_mapping(a1.clone(), self.individualize(&b, y)))
            }
        }
    }

    /// Size of the colour-preserving automorphism group, by orbit-stabilizer.
    fn group_order(&self, colours: Vec<u32>) -> u128 {
        let Some(cell) = self.target_cell(&colours) else {
            return 1;
        };
        let v = cell[0];
        let fixed = self.individualize(&colours, v);
        let mut orbit: Vec<usize> = vec![v];
        for &u in &cell[1..] {
            if orbit.iter().any(|&w| self.twins(w, u))
                || self
                    .find_mapping(fixed.clone(), self.individualize(&colours, u))
                    .is_some()
            {
                orbit.push(u);
            }
        }
        orbit.len() as u128 * self.group_order(fixed)
    }

    /// Every colour-preserving vertex automorphism, in lexicographic order.
    fn all_automorphisms(&self, colours: &[u32]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(0, colours, &mut image, &mut used, &mut out);
        out
    }

    fn extend(
        &self,
        v: usize,
        colours: &[u32],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.n();
        if v == n {
            out.push(image.clone());
            return;
        }
        for w in 0..n {
            if used[w] || colours[w] != colours[v] || self.adj[v][v] != self.adj[w][w] {
                continue;
            }
            if (0..v).any(|u| self.adj[u][v] != self.adj[image[u]][w]) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            self.extend(v + 1, colours, image, used, out);
            used[w] = false;
        }
        image[v] = usize::MAX;
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present") as u32)
        .collect()
}

fn count_classes(colours: &[u32]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn cell_sizes(colours: &[u32]) -> Vec<usize> {
    let mut size = vec![0usize; colours.len()];
    for &c in colours {
        size[c as usize] += 1;
    }
    size
}

/// Canonical form plus the canonical position of every vertex.
pub fn canonical_labeling(g: &MultiGraph) -> (CanonicalForm, Vec<usize>) {
    let adj = g.adjacency_counts();
    let col = Colouring { adj: &adj };
    let mut start = col.initial();
    col.refine(&mut start);
    let mut best = None;
    col.search(start, g.edge_count(), &mut best);
    let (cert, colours) = best.expect("search visits a leaf");
    (
        CanonicalForm(cert),
        colours.iter().map(|&c| c as usize).collect(),
    )
}

pub fn canonical_form(g: &MultiGraph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn are_isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// Bundles of parallel edges keyed by their (sorted) endpoint pair.
fn bundles(g: &MultiGraph) -> Vec<((usize, usize), Vec<usize>)> {
    let mut map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let [a, b] = edge.ends;
        map.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let mut out: Vec<_> = map.into_iter().collect();
    out.sort();
    out
}

fn edge_image(g: &MultiGraph, h: &MultiGraph, perm: &[usize], e: usize, f: usize) -> EdgeImage {
    let [x, _] = g.edge(e).ends;
    let [p, _] = h.edge(f).ends;
    EdgeImage::Edge {
        edge: f,
        reversed: !g.edge(e).is_loop() && perm[x] != p,
    }
}

/// An isomorphism `a → b`, if one exists.
pub fn isomorphism(a: &Arc<MultiGraph>, b: &Arc<MultiGraph>) -> Option<Contraction> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (ca, la) = canonical_labeling(a);
    let (cb, lb) = canonical_labeling(b);
    if ca != cb {
        return None;
    }
    let mut inv_b = vec![0; lb.len()];
    for (v, &pos) in lb.iter().enumerate() {
        inv_b[pos] = v;
    }
    let perm: Vec<usize> = la.iter().map(|&pos| inv_b[pos]).collect();
    let mut target_bundles: HashMap<(usize, usize), Vec<usize>> = bundles(b).into_iter().collect();
    for list in target_bundles.values_mut() {
        list.reverse();
    }
    let mut edge_map = vec![EdgeImage::Contracted; a.edge_count()];
    for (e, edge) in a.edges().iter().enumerate() {
        let (p, q) = (perm[edge.ends[0]], perm[edge.ends[1]]);
        let f = target_bundles.get_mut(&(p.min(q), p.max(q)))?.pop()?;
        edge_map[e] = edge_image(a, b, &perm, e, f);
    }
    Contraction::new(a.clone(), b.clone(), perm, edge_map).ok()
}

/// All vertex permutations preserving edge multiplicities and loop counts.
pub fn vertex_automorphisms(g: &MultiGraph) -> Vec<Vec<usize>> {
    let adj = g.adjacency_counts();
    let col = Colouring { adj: &adj };
    let mut colours = col.initial();
    col.refine(&mut colours);
    col.all_automorphisms(&colours)
}

fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

/// Order of the automorphism group, counting permutations of parallel edges
/// and orientation flips of loops.
pub fn automorphism_count(g: &MultiGraph) -> u128 {
    let adj = g.adjacency_counts();
    let col = Colouring { adj: &adj };
    let mut colours = col.initial();
    col.refine(&mut colours);
    let mut order = col.group_order(colours);
    let n = g.vertex_count();
    for u in 0..n {
        order *= factorial(adj[u][u]) << adj[u][u];
        for w in u + 1..n {
            order *= factorial(adj[u][w]);
        }
    }
    order
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// The full automorphism group as self-contractions with nothing contracted.
pub fn automorphisms(g: &Arc<MultiGraph>) -> Vec<Contraction> {
    let target: HashMap<(usize, usize), Vec<usize>> = bundles(g).into_iter().collect();
    let source = bundles(g);
    let mut out = Vec::new();
    for perm in vertex_automorphisms(g) {
        // per bundle: every bijection onto the image bundle, with loop flips
        let mut choices: Vec<Vec<Vec<EdgeImage>>> = Vec::new();
        for ((a, b), edges) in &source {
            let (p, q) = (perm[*a], perm[*b]);
            let image = &target[&(p.min(q), p.max(q))];
            let mut opts = Vec::new();
            for assignment in permutations(image) {
                let base: Vec<EdgeImage> = edges
                    .iter()
                    .zip(&assignment)
                    .map(|(&e, &f)| edge_image(g, g, &perm, e, f))
                    .collect();
                if a == b {
                    for mask in 0..(1u32 << edges.len()) {
                        opts.push(
                            base.iter()
                                .enumerate()
                                .map(|(k, img)| match *img {
                                    EdgeImage::Edge { edge, .. } => EdgeImage::Edge {
                                        edge,
                                        reversed: mask >> k & 1 == 1,
                                    },
                                    EdgeImage::Contracted => EdgeImage::Contracted,
                                })
                                .collect(),
                        );
                    }
                } else {
                    opts.push(base);
                }
            }
            choices.push(opts);
        }
        let mut edge_map = vec![EdgeImage::Contracted; g.edge_count()];
        expand(g, &perm, &source, &choices, 0, &mut edge_map, &mut out);
    }
    out
}

fn expand(
    g: &Arc<MultiGraph>,
    perm: &[usize],
    source: &[((usize, usize), Vec<usize>)],
    choices: &[Vec<Vec<EdgeImage>>],
    k: usize,
    edge_map: &mut Vec<EdgeImage>,
    out: &mut Vec<Contraction>,
) {
    if k == choices.len() {
        out.push(
            Contraction::new(g.clone(), g.clone(), perm.to_vec(), edge_map.clone())
                .expect("automorphisms are valid contractions"),
        );
        return;
    }
    for opt in &choices[k] {
        for (&e, &img) in source[k].1.iter().zip(opt) {
            edge_map[e] = img;
        }
        expand(g, perm, source, choices, k + 1, edge_map, out);
    }
}
