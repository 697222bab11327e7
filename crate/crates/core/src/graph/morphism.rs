//! Smooshings and contractions between multigraphs.

use std::ops::Deref;
use std::sync::Arc;

use super::{Edge, GraphError, MultiGraph, UnionFind};

/// Where a source edge goes. `reversed` records that the edge is traversed
/// against the stored orientation of its image; for loops this is free data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeImage {
    Contracted,
    Edge { edge: usize, reversed: bool },
}

impl EdgeImage {
    pub fn edge(self) -> Option<usize> {
        match self {
            EdgeImage::Contracted => None,
            EdgeImage::Edge { edge, .. } => Some(edge),
        }
    }
}

/// Surjective morphism with connected fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smooshing {
    source: Arc<MultiGraph>,
    target: Arc<MultiGraph>,
    vertex_map: Vec<usize>,
    edge_map: Vec<EdgeImage>,
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidMorphism(msg.into())
}

impl Smooshing {
    pub fn new(
        source: Arc<MultiGraph>,
        target: Arc<MultiGraph>,
        vertex_map: Vec<usize>,
        edge_map: Vec<EdgeImage>,
    ) -> Result<Self, GraphError> {
        if vertex_map.len() != source.vertex_count() || edge_map.len() != source.edge_count() {
            return Err(invalid("map sizes do not match the source"));
        }
        let mut hit = vec![false; target.vertex_count()];
        for &v in &vertex_map {
            *hit.get_mut(v)
                .ok_or_else(|| invalid(format!("vertex image {v} out of range")))? = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(invalid("vertex map is not surjective"));
        }
        let mut edge_hit = vec![false; target.edge_count()];
        let mut uf = UnionFind::new(source.vertex_count());
        for (e, img) in edge_map.iter().enumerate() {
            let [a, b] = source.edge(e).ends;
            let (fa, fb) = (vertex_map[a], vertex_map[b]);
            match *img {
                EdgeImage::Contracted => {
                    if fa != fb {
                        return Err(invalid(format!(
                            "contracted edge {} joins two fibers",
                            source.edge(e).name
                        )));
                    }
                    uf.union(a, b);
                }
                EdgeImage::Edge { edge, reversed } => {
                    let slot = edge_hit
                        .get_mut(edge)
                        .ok_or_else(|| invalid(format!("edge image {edge} out of range")))?;
                    if *slot {
                        return Err(invalid(format!("target edge {edge} hit twice")));
                    }
                    *slot = true;
                    let [p, q] = target.edge(edge).ends;
                    let ok = if reversed {
                        fa == q && fb == p
                    } else {
                        fa == p && fb == q
                    };
                    if !ok {
                        return Err(invalid(format!(
                            "edge {} does not respect endpoints",
                            source.edge(e).name
                        )));
                    }
                }
            }
        }
        if edge_hit.iter().any(|h| !h) {
            return Err(invalid("edge map misses a target edge"));
        }
        let mut root_of_fiber = vec![usize::MAX; target.vertex_count()];
        for (v, &w) in vertex_map.iter().enumerate() {
            let r = uf.find(v);
            if root_of_fiber[w] == usize::MAX {
                root_of_fiber[w] = r;
            } else if root_of_fiber[w] != r {
                return Err(invalid(format!(
                    "fiber over {} is disconnected",
                    target.vertex_name(w)
                )));
            }
        }
        Ok(Self {
            source,
            target,
            vertex_map,
            edge_map,
        })
    }

    pub fn identity(g: Arc<MultiGraph>) -> Self {
        let vertex_map = (0..g.vertex_count()).collect();
        let edge_map = (0..g.edge_count())
            .map(|edge| EdgeImage::Edge {
                edge,
                reversed: false,
            })
            .collect();
        Self {
            source: g.clone(),
            target: g,
            vertex_map,
            edge_map,
        }
    }

    pub fn source(&self) -> &Arc<MultiGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MultiGraph> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[EdgeImage] {
        &self.edge_map
    }

    pub fn map_vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn map_edge(&self, e: usize) -> EdgeImage {
        self.edge_map[e]
    }

    pub fn contracted_edges(&self) -> Vec<usize> {
        (0..self.edge_map.len())
            .filter(|&e| self.edge_map[e] == EdgeImage::Contracted)
            .collect()
    }

    /// Preimage of each target vertex, in increasing order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); self.target.vertex_count()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            f[w].push(v);
        }
        f
    }

    /// Preimage of each target edge.
    pub fn edge_preimages(&self) -> Vec<usize> {
        let mut pre = vec![0; self.target.edge_count()];
        for (e, img) in self.edge_map.iter().enumerate() {
            if let Some(f) = img.edge() {
                pre[f] = e;
            }
        }
        pre
    }

    /// True when every fiber is a tree.
    pub fn has_tree_fibers(&self) -> bool {
        self.source.is_forest(&self.contracted_edges())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Smooshing) -> Result<Smooshing, GraphError> {
        if !Arc::ptr_eq(&first.target, &self.source) && *first.target != *self.source {
            return Err(invalid("composition of non-matching morphisms"));
        }
        let vertex_map = first
            .vertex_map
            .iter()
            .map(|&v| self.vertex_map[v])
            .collect();
        let edge_map = first
            .edge_map
            .iter()
            .map(|img| match *img {
                EdgeImage::Contracted => EdgeImage::Contracted,
                EdgeImage::Edge { edge, reversed } => match self.edge_map[edge] {
                    EdgeImage::Contracted => EdgeImage::Contracted,
                    EdgeImage::Edge {
                        edge: e2,
                        reversed: r2,
                    } => EdgeImage::Edge {
                        edge: e2,
                        reversed: reversed ^ r2,
                    },
                },
            })
            .collect();
        Ok(Smooshing {
            source: first.source.clone(),
            target: self.target.clone(),
            vertex_map,
            edge_map,
        })
    }

    /// Replace the target by an equal graph (same structure), keeping maps.
    pub fn retarget(mut self, target: Arc<MultiGraph>) -> Self {
        debug_assert_eq!(*self.target, *target);
        self.target = target;
        self
    }
}

/// Smooshing whose fibers are trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction(Smooshing);

impl Deref for Contraction {
    type Target = Smooshing;

    fn deref(&self) -> &Smooshing {
        &self.0
    }
}

impl Contraction {
    pub fn new(
        source: Arc<MultiGraph>,
        target: Arc<MultiGraph>,
        vertex_map: Vec<usize>,
        edge_map: Vec<EdgeImage>,
    ) -> Result<Self, GraphError> {
        Self::try_from(Smooshing::new(source, target, vertex_map, edge_map)?)
    }

    pub fn identity(g: Arc<MultiGraph>) -> Self {
        Contraction(Smooshing::identity(g))
    }

    pub fn as_smooshing(&self) -> &Smooshing {
        &self.0
    }

    pub fn into_smooshing(self) -> Smooshing {
        self.0
    }

    pub fn compose(&self, first: &Contraction) -> Result<Contraction, GraphError> {
        Ok(Contraction(self.0.compose(&first.0)?))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.edge_map.iter().all(|e| *e != EdgeImage::Contracted)
    }

    pub fn is_identity(&self) -> bool {
        *self == Contraction::identity(self.source.clone())
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Contraction> {
        if !self.is_isomorphism() || self.source.vertex_count() != self.target.vertex_count() {
            return None;
        }
        let mut vertex_map = vec![0; self.target.vertex_count()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            vertex_map[w] = v;
        }
        let mut edge_map = vec![EdgeImage::Contracted; self.target.edge_count()];
        for (e, img) in self.edge_map.iter().enumerate() {
            if let EdgeImage::Edge { edge, reversed } = *img {
                edge_map[edge] = EdgeImage::Edge { edge: e, reversed };
            }
        }
        Contraction::new(
            self.target.clone(),
            self.source.clone(),
            vertex_map,
            edge_map,
        )
        .ok()
    }

    pub fn retarget(self, target: Arc<MultiGraph>) -> Self {
        Contraction(self.0.retarget(target))
    }
}

impl Contraction {
    /// The `ψ` with `self = ψ ∘ first`, given that `first` contracts a subset
    /// of the edges `self` contracts.
    pub fn descend(&self, first: &Contraction) -> Result<Contraction, GraphError> {
        if first.source() != self.source() {
            return Err(invalid("contractions start at different graphs"));
        }
        let mid = first.target().clone();
        let mut vertex_map = vec![usize::MAX; mid.vertex_count()];
        for v in 0..first.source().vertex_count() {
            vertex_map[first.map_vertex(v)] = self.map_vertex(v);
        }
        let mut edge_map = vec![EdgeImage::Contracted; mid.edge_count()];
        for e in 0..first.source().edge_count() {
            match (first.map_edge(e), self.map_edge(e)) {
                (
                    EdgeImage::Edge { edge, reversed },
                    EdgeImage::Edge {
                        edge: t,
                        reversed: r,
                    },
                ) => {
                    edge_map[edge] = EdgeImage::Edge {
                        edge: t,
                        reversed: r ^ reversed,
                    };
                }
                (EdgeImage::Contracted, EdgeImage::Edge { .. }) => {
                    return Err(invalid("first contracts an edge that survives"));
                }
                _ => {}
            }
        }
        let s = Smooshing::new(mid, self.target().clone(), vertex_map, edge_map)?;
        Contraction::try_from(s)
    }
}

impl TryFrom<Smooshing> for Contraction {
    type Error = GraphError;

    fn try_from(s: Smooshing) -> Result<Self, GraphError> {
        if s.has_tree_fibers() {
            Ok(Contraction(s))
        } else {
            Err(GraphError::CycleContracted)
        }
    }
}

/// Quotient by the given edge set. Target vertices are the classes ordered by
/// least member and named after it; surviving edges keep their order and names.
pub fn smoosh_edges(g: &Arc<MultiGraph>, edges: &[usize]) -> Result<Smooshing, GraphError> {
    let mut contracted = vec![false; g.edge_count()];
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in edges {
        if e >= g.edge_count() {
            return Err(GraphError::EdgeOutOfRange(e));
        }
        contracted[e] = true;
        uf.union(g.edge(e).ends[0], g.edge(e).ends[1]);
    }
    let mut class_index = vec![usize::MAX; g.vertex_count()];
    let mut names = Vec::new();
    let mut vertex_map = vec![0; g.vertex_count()];
    for v in 0..g.vertex_count() {
        let r = uf.find(v);
        if class_index[r] == usize::MAX {
            class_index[r] = names.len();
            names.push(g.vertex_name(v).to_owned());
        }
        vertex_map[v] = class_index[r];
    }
    let mut target_edges = Vec::new();
    let mut edge_map = Vec::with_capacity(g.edge_count());
    for (e, edge) in g.edges().iter().enumerate() {
        if contracted[e] {
            edge_map.push(EdgeImage::Contracted);
        } else {
            edge_map.push(EdgeImage::Edge {
                edge: target_edges.len(),
                reversed: false,
            });
            target_edges.push(Edge {
                name: edge.name.clone(),
                ends: [vertex_map[edge.ends[0]], vertex_map[edge.ends[1]]],
            });
        }
    }
    let target = Arc::new(MultiGraph::new(names, target_edges)?);
    Ok(Smooshing {
        source: g.clone(),
        target,
        vertex_map,
        edge_map,
    })
}

/// Contract a forest of edges. Loops and cycles are rejected.
pub fn contract_edges(g: &Arc<MultiGraph>, edges: &[usize]) -> Result<Contraction, GraphError> {
    if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
        return Err(GraphError::EdgeOutOfRange(e));
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !g.is_forest(&sorted) {
        return Err(GraphError::CycleContracted);
    }
    Ok(Contraction(smoosh_edges(g, &sorted)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::isomorphism;

    fn arc(g: MultiGraph) -> Arc<MultiGraph> {
        Arc::new(g)
    }

    #[test]
    fn melon_to_rose() {
        let m = arc(corpus::melon());
        let c = contract_edges(&m, &[0]).unwrap();
        assert_eq!(c.target().vertex_count(), 1);
        assert_eq!(c.target().edge_count(), 2);
        assert!(isomorphism(c.target(), &arc(corpus::rose(2))).is_some());
    }

    #[test]
    fn empty_contraction_is_identity() {
        let g = arc(corpus::complete(4));
        assert!(contract_edges(&g, &[]).unwrap().is_identity());
    }

    #[test]
    fn cycles_and_loops_rejected() {
        let c3 = arc(corpus::cycle(3));
        assert_eq!(
            contract_edges(&c3, &[0, 1, 2]),
            Err(GraphError::CycleContracted)
        );
        let r = arc(corpus::rose(1));
        assert_eq!(contract_edges(&r, &[0]), Err(GraphError::CycleContracted));
        assert!(smoosh_edges(&c3, &[0, 1, 2]).is_ok());
    }

    #[test]
    fn path_collapses_in_two_steps() {
        let p = arc(corpus::path(2));
        let first = contract_edges(&p, &[0]).unwrap();
        let second = contract_edges(first.target(), &[0]).unwrap();
        let both = second.compose(&first).unwrap();
        assert_eq!(both.target().vertex_count(), 1);
        assert_eq!(both.target().edge_count(), 0);
        assert_eq!(both.contracted_edges(), vec![0, 1]);
        assert_eq!(
            both,
            contract_edges(&p, &[0, 1])
                .unwrap()
                .retarget(both.target().clone())
        );
    }

    #[test]
    fn composite_matches_direct_contraction() {
        // melon with one edge subdivided, then down to the rose
        let sub = arc(MultiGraph::from_edges(3, &[(0, 2), (2, 1), (0, 1), (0, 1)]));
        let to_melon = contract_edges(&sub, &[1]).unwrap();
        let to_rose = contract_edges(to_melon.target(), &[0]).unwrap();
        let composite = to_rose.compose(&to_melon).unwrap();
        let direct = contract_edges(&sub, &[0, 1]).unwrap();
        assert_eq!(composite.vertex_map(), direct.vertex_map());
        assert_eq!(composite.edge_map(), direct.edge_map());
        assert_eq!(**composite.target(), **direct.target());
    }

    #[test]
    fn validation_catches_bad_maps() {
        let p = arc(corpus::path(1));
        let pt = arc(MultiGraph::point());
        assert!(Smooshing::new(
            p.clone(),
            pt.clone(),
            vec![0, 0],
            vec![EdgeImage::Contracted]
        )
        .is_ok());
        let e = EdgeImage::Edge {
            edge: 0,
            reversed: false,
        };
        assert!(Smooshing::new(p.clone(), p.clone(), vec![0, 0], vec![e]).is_err());
        assert!(Smooshing::new(p.clone(), p.clone(), vec![1, 0], vec![e]).is_err());
        let r = EdgeImage::Edge {
            edge: 0,
            reversed: true,
        };
        assert!(Smooshing::new(p.clone(), p, vec![1, 0], vec![r]).is_ok());
    }
}
