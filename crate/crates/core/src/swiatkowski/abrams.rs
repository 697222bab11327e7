//! Abrams' discrete model: the cube complex of `n` cells with pairwise
//! disjoint closures in a subdivision of the graph. Used as an independent
//! check on the Świątkowski computation.

use std::collections::HashMap;

use crate::graph::MultiGraph;
use crate::linalg::{homology_auto, HomologySummary, SparseMatrix};

use super::SwError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct AbramsComplex {
    pub graph: MultiGraph,
    pub n: usize,
}

/// Every edge cut into `n + 1` segments, which is enough for the cube
/// complex to be a deformation retract of `UConf_n`.
pub fn abrams_complex(g: &MultiGraph, n: usize) -> AbramsComplex {
    let pieces = n + 1;
    let mut count = g.vertex_count();
    let mut ends = Vec::new();
    for e in g.edges() {
        let [a, b] = e.ends;
        let mut prev = a;
        for _ in 1..pieces {
            ends.push((prev, count));
            prev = count;
            count += 1;
        }
        ends.push((prev, b));
    }
    AbramsComplex {
        graph: MultiGraph::from_edges(count, &ends),
        n,
    }
}

impl AbramsComplex {
    /// Cells with exactly `k` edge members, sorted.
    pub fn cells(&self, k: usize) -> Vec<Cell> {
        let g = &self.graph;
        if k > self.n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut blocked = vec![0u32; g.vertex_count()];
        let mut edges = Vec::new();
        self.pick_edges(k, 0, &mut blocked, &mut edges, &mut out);
        out.sort();
        out
    }

    fn pick_edges(
        &self,
        k: usize,
        start: usize,
        blocked: &mut [u32],
        edges: &mut Vec<usize>,
        out: &mut Vec<Cell>,
    ) {
        let g = &self.graph;
        if edges.len() == k {
            let mut vertices = Vec::new();
            self.pick_vertices(self.n - k, 0, blocked, &mut vertices, edges, out);
            return;
        }
        for e in start..g.edge_count() {
            let [a, b] = g.edge(e).ends;
            if blocked[a] > 0 || blocked[b] > 0 || a == b {
                continue;
            }
            blocked[a] += 1;
            blocked[b] += 1;
            edges.push(e);
            self.pick_edges(k, e + 1, blocked, edges, out);
            edges.pop();
            blocked[a] -= 1;
            blocked[b] -= 1;
        }
    }

    fn pick_vertices(
        &self,
        left: usize,
        start: usize,
        blocked: &[u32],
        vertices: &mut Vec<usize>,
        edges: &[usize],
        out: &mut Vec<Cell>,
    ) {
        if left == 0 {
            out.push(Cell {
                edges: edges.to_vec(),
                vertices: vertices.clone(),
            });
            return;
        }
        for v in start..blocked.len() {
            if blocked[v] == 0 {
                vertices.push(v);
                self.pick_vertices(left - 1, v + 1, blocked, vertices, edges, out);
                vertices.pop();
            }
        }
    }

    /// Cubical boundary `C_k → C_{k-1}`; the `j`-th edge contributes
    /// `(-1)^j (head face - tail face)`.
    pub fn boundary(&self, k: usize) -> SparseMatrix<i64> {
        let src = self.cells(k);
        if k == 0 {
            return SparseMatrix::zeros(0, src.len());
        }
        let dst = self.cells(k - 1);
        let index: HashMap<&Cell, usize> = dst.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut triplets = Vec::new();
        for (col, c) in src.iter().enumerate() {
            for (j, &e) in c.edges.iter().enumerate() {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let mut edges = c.edges.clone();
                edges.remove(j);
                for (side, s) in [(1, sign), (0, -sign)] {
                    let x = self.graph.edge(e).ends[side];
                    let mut vertices = c.vertices.clone();
                    let pos = vertices.binary_search(&x).unwrap_err();
                    vertices.insert(pos, x);
                    let face = Cell {
                        edges: edges.clone(),
                        vertices,
                    };
                    triplets.push((index[&face], col, s));
                }
            }
        }
        SparseMatrix::from_triplets(dst.len(), src.len(), triplets).expect("unit coefficients")
    }
}

/// `H_i(UConf_n(G); Z)` from the cube complex.
pub fn abrams_homology(g: &MultiGraph, i: usize, n: usize) -> Result<HomologySummary, SwError> {
    if !g.is_connected() {
        return Err(SwError::Disconnected);
    }
    let c = abrams_complex(g, n);
    Ok(homology_auto(&c.boundary(i), &c.boundary(i + 1))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn one_point_is_the_graph() {
        for g in [
            corpus::cycle(3),
            corpus::melon(),
            corpus::rose(2),
            corpus::star(3),
        ] {
            let genus = g.genus().unwrap() as usize;
            assert_eq!(abrams_homology(&g, 1, 1).unwrap().betti, genus);
            assert_eq!(abrams_homology(&g, 0, 1).unwrap().betti, 1);
        }
    }

    #[test]
    fn star_two_points() {
        let h = abrams_homology(&corpus::star(3), 1, 2).unwrap();
        assert_eq!((h.betti, h.torsion.len()), (1, 0));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = abrams_complex(&corpus::complete(4), 3);
        assert!(c.boundary(2).mul(&c.boundary(3)).unwrap().is_zero());
    }
}
