//! Finite multigraphs with loops and parallel edges.

pub mod canon;
pub mod enumerate;
pub mod families;
pub mod io;
pub mod morphism;
pub mod planarity;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use canon::{automorphism_count, automorphisms, canonical_form, isomorphism, CanonicalForm};
pub use enumerate::{count_contractions, enumerate_contractions, enumerate_reduced_graphs};
pub use families::{
    sprout, subdivide, DirectedEdge, Family, FamilyKind, FamilyMember, OrderedInjection,
    OrderedInjectionTuple,
};
pub use morphism::{Contraction, EdgeImage, Smooshing};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {edge}: unknown endpoint {vertex}")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("graph is empty")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("contracted edges contain a cycle")]
    CycleContracted,
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(i64, i64),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("malformed graph input: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub ends: [usize; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

/// An end of an edge. Ordered by `(edge, side)`, which is the canonical
/// half-edge order used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub side: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(vertex_names: Vec<String>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        for v in &vertex_names {
            if !seen.insert(v.as_str()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if !seen.insert(e.name.as_str()) {
                return Err(GraphError::DuplicateEdge(e.name.clone()));
            }
            for &x in &e.ends {
                if x >= vertex_names.len() {
                    return Err(GraphError::UnknownEndpoint {
                        edge: e.name.clone(),
                        vertex: format!("#{x}"),
                    });
                }
            }
        }
        Ok(Self {
            vertex_names,
            edges,
        })
    }

    /// Graph on vertices `v0..v{n-1}` with edges `e0, e1, ...` in the given order.
    pub fn from_edges(vertex_count: usize, ends: &[(usize, usize)]) -> Self {
        let names = (0..vertex_count).map(|i| format!("v{i}")).collect();
        let edges = ends
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Edge {
                name: format!("e{i}"),
                ends: [a, b],
            })
            .collect();
        Self::new(names, edges).expect("endpoints in range")
    }

    pub fn point() -> Self {
        Self::from_edges(1, &[])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.edges[h.edge].ends[h.side as usize]
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..self.edges.len()).flat_map(|edge| (0..2).map(move |side| HalfEdge { edge, side }))
    }

    /// Half-edges at `v` in canonical order.
    pub fn half_edges_at(&self, v: usize) -> Vec<HalfEdge> {
        self.half_edges()
            .filter(|&h| self.vertex_of(h) == v)
            .collect()
    }

    /// Half-edges grouped by vertex, each list in canonical order.
    pub fn incidence(&self) -> Vec<Vec<HalfEdge>> {
        let mut inc = vec![Vec::new(); self.vertex_count()];
        for h in self.half_edges() {
            inc[self.vertex_of(h)].push(h);
        }
        inc
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|&&x| x == v).count())
            .sum()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertex_count()];
        for e in &self.edges {
            val[e.ends[0]] += 1;
            val[e.ends[1]] += 1;
        }
        val
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Connected-component label per vertex, labels numbered by first vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.ends[0], e.ends[1]);
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for v in 0..n {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.component_count() == 1
    }

    pub fn genus(&self) -> Result<i64, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.edge_count() as i64 - self.vertex_count() as i64 + 1)
    }

    /// Edges whose removal disconnects their endpoints.
    pub fn bridges(&self) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| {
                let [a, b] = self.edges[e].ends;
                if a == b {
                    return false;
                }
                let mut uf = UnionFind::new(self.vertex_count());
                for (f, edge) in self.edges.iter().enumerate() {
                    if f != e {
                        uf.union(edge.ends[0], edge.ends[1]);
                    }
                }
                uf.find(a) != uf.find(b)
            })
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        if self.vertex_count() == 1 && self.edge_count() == 1 {
            return true;
        }
        self.bridges().is_empty() && self.valences().iter().all(|&d| d != 2)
    }

    /// True when the listed edges span a forest with no loops.
    pub fn is_forest(&self, edges: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.vertex_count());
        edges
            .iter()
            .all(|&e| uf.union(self.edges[e].ends[0], self.edges[e].ends[1]))
    }

    /// Same graph with vertices and edges renamed `v*` / `e*` by index.
    pub fn with_default_names(&self) -> Self {
        let ends: Vec<_> = self.edges.iter().map(|e| (e.ends[0], e.ends[1])).collect();
        Self::from_edges(self.vertex_count(), &ends)
    }

    /// Multiplicity table: `adj[u][v]` counts edges between `u != v`, the
    /// diagonal counts loops.
    pub fn adjacency_counts(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count();
        let mut adj = vec![vec![0u32; n]; n];
        for e in &self.edges {
            let [a, b] = e.ends;
            adj[a][b] += 1;
            if a != b {
                adj[b][a] += 1;
            }
        }
        adj
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn genus_examples() {
        assert_eq!(MultiGraph::point().genus(), Ok(0));
        assert_eq!(corpus::rose(2).genus(), Ok(2));
        assert_eq!(corpus::melon().genus(), Ok(2));
        let two = MultiGraph::from_edges(2, &[]);
        assert_eq!(two.genus(), Err(GraphError::Disconnected));
        assert_eq!(MultiGraph::default().genus(), Err(GraphError::Empty));
    }

    #[test]
    fn reducedness() {
        assert!(corpus::melon().is_reduced());
        assert!(corpus::rose(1).is_reduced());
        assert!(corpus::rose(3).is_reduced());
        assert!(!corpus::path(2).is_reduced());
        assert!(!corpus::cycle(3).is_reduced());
        assert!(corpus::complete(4).is_reduced());
        assert!(MultiGraph::point().is_reduced());
    }

    #[test]
    fn half_edges_and_valence() {
        let g = corpus::rose(2);
        assert_eq!(g.half_edges_at(0).len(), 4);
        assert_eq!(g.valence(0), 4);
        let p = corpus::path(2);
        assert_eq!(p.valences(), vec![1, 2, 1]);
        assert_eq!(p.bridges(), vec![0, 1]);
        assert!(corpus::melon().bridges().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let e = Edge {
            name: "x".into(),
            ends: [0, 3],
        };
        assert!(matches!(
            MultiGraph::new(vec!["a".into()], vec![e]),
            Err(GraphError::UnknownEndpoint { .. })
        ));
    }
}
