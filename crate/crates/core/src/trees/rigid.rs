//! Rigidified graphs: a graph with a planar rooted spanning tree and an
//! ordered, oriented list of the extra edges.

use std::collections::VecDeque;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    enumerate_planar_trees, is_labeled_contraction, is_planar_contraction, planar_contractions,
};
use super::{PlanarRootedTree, TreeError, TreeLabel};
use crate::graph::morphism::contract_edges;
use crate::graph::{Contraction, DirectedEdge, EdgeImage, GraphError, MultiGraph};

/// An element of `{0,1}^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitLabel(pub Vec<bool>);

impl TreeLabel for BitLabel {
    fn text(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidifiedGraph {
    graph: Arc<MultiGraph>,
    tree: PlanarRootedTree,
    /// Edge joining each vertex to its parent.
    tree_edge: Vec<Option<usize>>,
    extra: Vec<DirectedEdge>,
}

impl RigidifiedGraph {
    /// The spanning tree's vertex ids are the graph's.
    pub fn new(
        graph: Arc<MultiGraph>,
        tree: PlanarRootedTree,
        tree_edge: Vec<Option<usize>>,
        extra: Vec<DirectedEdge>,
    ) -> Result<Self, GraphError> {
        let bad = |m: &str| Err(GraphError::InvalidMorphism(format!("rigidification: {m}")));
        let n = graph.vertex_count();
        if tree.vertex_count() != n || tree_edge.len() != n {
            return bad("tree does not span the graph");
        }
        let mut used = vec![false; graph.edge_count()];
        for v in 0..n {
            match (tree.parent(v), tree_edge[v]) {
                (None, None) => {}
                (Some(p), Some(e)) if e < graph.edge_count() && !used[e] => {
                    let [a, b] = graph.edge(e).ends;
                    if !((a == v && b == p) || (a == p && b == v)) {
                        return bad("tree edge does not join a vertex to its parent");
                    }
                    used[e] = true;
                }
                _ => return bad("tree edges do not match the parent structure"),
            }
        }
        for d in &extra {
            if d.edge >= graph.edge_count() || used[d.edge] {
                return bad("extra edge is repeated or in the tree");
            }
            used[d.edge] = true;
        }
        if used.iter().any(|u| !u) {
            return bad("some edge is neither in the tree nor extra");
        }
        Ok(Self {
            graph,
            tree,
            tree_edge,
            extra,
        })
    }

    /// Graph with one edge from each non-root vertex to its parent, in
    /// depth-first order, followed by the extra edges `w_{2i-1} → w_{2i}`.
    pub fn from_tree(
        tree: PlanarRootedTree,
        extras: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let n = tree.vertex_count();
        let mut ends = Vec::new();
        let mut tree_edge = vec![None; n];
        for &v in tree.depth_first_order() {
            if let Some(p) = tree.parent(v) {
                tree_edge[v] = Some(ends.len());
                ends.push((p, v));
            }
        }
        let mut extra = Vec::new();
        for &(a, b) in extras {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a.max(b)));
            }
            extra.push(DirectedEdge::forward(ends.len()));
            ends.push((a, b));
        }
        Self::new(
            Arc::new(MultiGraph::from_edges(n, &ends)),
            tree,
            tree_edge,
            extra,
        )
    }

    /// Breadth-first spanning tree from `root`, children and extra edges in
    /// index order, extra edges read forward.
    pub fn rigidify(graph: Arc<MultiGraph>, root: usize) -> Result<Self, GraphError> {
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = graph.vertex_count();
        if root >= n {
            return Err(GraphError::VertexOutOfRange(root));
        }
        let mut tree_edge = vec![None; n];
        let mut seen = vec![false; n];
        let mut children = vec![Vec::new(); n];
        let mut in_tree = vec![false; graph.edge_count()];
        let inc = graph.incidence();
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for h in &inc[v] {
                let w = graph.edge(h.edge).ends[1 - h.side as usize];
                if !seen[w] {
                    seen[w] = true;
                    tree_edge[w] = Some(h.edge);
                    in_tree[h.edge] = true;
                    children[v].push(w);
                    queue.push_back(w);
                }
            }
        }
        let tree = PlanarRootedTree::unlabeled(root, children)
            .map_err(|e| GraphError::Parse(e.to_string()))?;
        let extra = (0..graph.edge_count())
            .filter(|&e| !in_tree[e])
            .map(DirectedEdge::forward)
            .collect();
        Self::new(graph, tree, tree_edge, extra)
    }

    pub fn graph(&self) -> &Arc<MultiGraph> {
        &self.graph
    }

    pub fn tree(&self) -> &PlanarRootedTree {
        &self.tree
    }

    pub fn tree_edge(&self, v: usize) -> Option<usize> {
        self.tree_edge[v]
    }

    pub fn extra_edges(&self) -> &[DirectedEdge] {
        &self.extra
    }

    pub fn genus(&self) -> usize {
        self.extra.len()
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edge.contains(&Some(e))
    }

    /// `w_j` for `j` in `0..2g`: origin of extra edge `j/2` when `j` is even,
    /// terminus when odd.
    pub fn attachment(&self, j: usize) -> usize {
        let d = self.extra[j / 2];
        let [a, b] = self.graph.edge(d.edge).ends;
        let (origin, terminus) = if d.reversed { (b, a) } else { (a, b) };
        if j.is_multiple_of(2) {
            origin
        } else {
            terminus
        }
    }
}

/// Bit `j` of `ℓ(w)` is set when `w ≥ w_j`.
pub fn rigidification_labels(r: &RigidifiedGraph) -> PlanarRootedTree<BitLabel> {
    let labels = (0..r.graph.vertex_count())
        .map(|w| {
            BitLabel(
                (0..2 * r.genus())
                    .map(|j| r.tree.leq(r.attachment(j), w))
                    .collect(),
            )
        })
        .collect();
    r.tree.with_labels(labels)
}

/// The graph contraction extending a planar tree contraction, when it is
/// compatible with the extra edges. Validity is decided by the general
/// contraction constructor, so this is independent of the labels.
pub fn induced_contraction(
    r: &RigidifiedGraph,
    r2: &RigidifiedGraph,
    map: &[usize],
) -> Option<Contraction> {
    if r.genus() != r2.genus() || !is_planar_contraction(&r.tree, &r2.tree, map) {
        return None;
    }
    let mut edge_map = vec![EdgeImage::Contracted; r.graph.edge_count()];
    for v in 0..r.graph.vertex_count() {
        let (Some(p), Some(e)) = (r.tree.parent(v), r.tree_edge[v]) else {
            continue;
        };
        if map[v] == map[p] {
            continue;
        }
        let t = r2.tree_edge[map[v]]?;
        let [a, _] = r.graph.edge(e).ends;
        let [c, _] = r2.graph.edge(t).ends;
        edge_map[e] = EdgeImage::Edge {
            edge: t,
            reversed: map[a] != c,
        };
    }
    for (d, d2) in r.extra.iter().zip(&r2.extra) {
        edge_map[d.edge] = EdgeImage::Edge {
            edge: d2.edge,
            reversed: d.reversed != d2.reversed,
        };
    }
    Contraction::new(r.graph.clone(), r2.graph.clone(), map.to_vec(), edge_map).ok()
}

/// Contracts only tree edges, restricts to a planar tree contraction, and
/// carries extra edge `i` onto extra edge `i` with its orientation.
pub fn is_rigidified_contraction(
    r: &RigidifiedGraph,
    r2: &RigidifiedGraph,
    phi: &Contraction,
) -> bool {
    if phi.source() != &r.graph || phi.target() != &r2.graph || r.genus() != r2.genus() {
        return false;
    }
    if !phi.contracted_edges().iter().all(|&e| r.is_tree_edge(e)) {
        return false;
    }
    if !is_planar_contraction(&r.tree, &r2.tree, phi.vertex_map()) {
        return false;
    }
    r.extra.iter().zip(&r2.extra).all(|(d, d2)| {
        phi.map_edge(d.edge)
            == EdgeImage::Edge {
                edge: d2.edge,
                reversed: d.reversed != d2.reversed,
            }
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraLabelsReport {
    pub rigidified_graphs: usize,
    pub cases: usize,
    pub induced: usize,
    pub agreements: usize,
}

impl ExtraLabelsReport {
    pub fn holds(&self) -> bool {
        self.cases == self.agreements
    }
}

/// All rigidified graphs of genus `g` whose spanning tree has at most
/// `max_tree_edges` edges.
pub fn enumerate_rigidified(genus: usize, max_tree_edges: usize) -> Vec<RigidifiedGraph> {
    let mut out = Vec::new();
    for k in 0..=max_tree_edges {
        for t in enumerate_planar_trees(k) {
            let n = t.vertex_count();
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
            let mut choice = vec![0usize; genus];
            loop {
                let extras: Vec<(usize, usize)> = choice.iter().map(|&c| pairs[c]).collect();
                out.push(
                    RigidifiedGraph::from_tree(t.clone(), &extras).expect("valid attachments"),
                );
                let mut i = 0;
                while i < genus && choice[i] + 1 == pairs.len() {
                    choice[i] = 0;
                    i += 1;
                }
                if i == genus {
                    break;
                }
                choice[i] += 1;
            }
        }
    }
    out
}

/// For every pair of rigidified graphs and every planar tree contraction
/// between their trees, compare "extends to a rigidified contraction" with
/// "respects the extra-edge labels".
pub fn extra_labels_check(genus: usize, max_tree_edges: usize) -> ExtraLabelsReport {
    let all = enumerate_rigidified(genus, max_tree_edges);
    let labeled: Vec<PlanarRootedTree<BitLabel>> = all.iter().map(rigidification_labels).collect();
    let mut report = (0..all.len())
        .into_par_iter()
        .map(|i| {
            let mut r = ExtraLabelsReport::default();
            for j in 0..all.len() {
                if all[j].tree.vertex_count() > all[i].tree.vertex_count() {
                    continue;
                }
                for map in planar_contractions(&all[i].tree, &all[j].tree) {
                    r.cases += 1;
                    let induced = induced_contraction(&all[i], &all[j], &map);
                    let lhs = induced
                        .as_ref()
                        .is_some_and(|c| is_rigidified_contraction(&all[i], &all[j], c));
                    let rhs = is_labeled_contraction(&labeled[i], &labeled[j], &map);
                    r.induced += lhs as usize;
                    r.agreements += (lhs == rhs) as usize;
                }
            }
            r
        })
        .reduce(ExtraLabelsReport::default, |a, b| ExtraLabelsReport {
            rigidified_graphs: 0,
            cases: a.cases + b.cases,
            induced: a.induced + b.induced,
            agreements: a.agreements + b.agreements,
        });
    report.rigidified_graphs = all.len();
    report
}

/// `φ = rest ∘ psi` with `psi` contracting the tree edges `φ` contracts.
#[derive(Clone, Debug)]
pub struct TreeEdgeFactor {
    pub middle: RigidifiedGraph,
    pub psi: Contraction,
    pub rest: Contraction,
}

pub fn factor_tree_edges(
    r: &RigidifiedGraph,
    phi: &Contraction,
) -> Result<TreeEdgeFactor, GraphError> {
    if phi.source() != &r.graph {
        return Err(GraphError::InvalidMorphism(
            "contraction does not start at the rigidified graph".into(),
        ));
    }
    let tree_part: Vec<usize> = phi
        .contracted_edges()
        .into_iter()
        .filter(|&e| r.is_tree_edge(e))
        .collect();
    let psi = contract_edges(&r.graph, &tree_part)?;
    let mid = psi.target().clone();
    let mut children = vec![Vec::new(); mid.vertex_count()];
    let mut tree_edge = vec![None; mid.vertex_count()];
    for &v in r.tree.depth_first_order() {
        let (Some(p), Some(e)) = (r.tree.parent(v), r.tree_edge[v]) else {
            continue;
        };
        if let EdgeImage::Edge { edge, .. } = psi.map_edge(e) {
            children[psi.map_vertex(p)].push(psi.map_vertex(v));
            tree_edge[psi.map_vertex(v)] = Some(edge);
        }
    }
    let tree = PlanarRootedTree::unlabeled(psi.map_vertex(r.tree.root()), children)
        .map_err(|e: TreeError| GraphError::InvalidMorphism(e.to_string()))?;
    let extra = r
        .extra
        .iter()
        .map(|d| match psi.map_edge(d.edge) {
            EdgeImage::Edge { edge, reversed } => Ok(DirectedEdge {
                edge,
                reversed: d.reversed != reversed,
            }),
            EdgeImage::Contracted => {
                Err(GraphError::InvalidMorphism("extra edge contracted".into()))
            }
        })
        .collect::<Result<_, _>>()?;
    let middle = RigidifiedGraph::new(mid, tree, tree_edge, extra)?;
    let rest = phi.descend(&psi)?;
    Ok(TreeEdgeFactor { middle, psi, rest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::enumerate_contractions;
    use crate::trees::parse_tree;

    #[test]
    fn genus_zero_labels_are_empty() {
        let t = parse_tree("(r (a) (b))").unwrap().forget_labels();
        let r = RigidifiedGraph::from_tree(t, &[]).unwrap();
        assert!(rigidification_labels(&r)
            .labels()
            .iter()
            .all(|l| l.0.is_empty()));
    }

    #[test]
    fn rose_label() {
        let r = RigidifiedGraph::from_tree(PlanarRootedTree::point(), &[(0, 0)]).unwrap();
        assert_eq!(
            rigidification_labels(&r).labels(),
            &[BitLabel(vec![true, true])]
        );
    }

    #[test]
    fn rigidify_corpus_graph() {
        let g = Arc::new(corpus::complete(4));
        let r = RigidifiedGraph::rigidify(g.clone(), 0).unwrap();
        assert_eq!(r.genus(), 3);
        assert_eq!(r.tree().vertex_count(), 4);
        let l = rigidification_labels(&r);
        // the root is above every attachment vertex
        assert!(l.label(0).0.iter().all(|&b| b));
    }

    #[test]
    fn extra_labels_genus_one_small() {
        let rep = extra_labels_check(1, 3);
        assert!(rep.holds(), "{rep:?}");
        assert!(rep.induced > 0 && rep.induced < rep.cases);
    }

    #[test]
    fn tree_edge_factor_on_theta() {
        let g = Arc::new(corpus::theta(&[2, 2, 3]));
        let r = RigidifiedGraph::rigidify(g.clone(), 0).unwrap();
        for target in [corpus::melon(), corpus::theta(&[1, 2, 2])] {
            for phi in enumerate_contractions(&g, &Arc::new(target.clone())).unwrap() {
                let f = factor_tree_edges(&r, &phi).unwrap();
                assert!(f.middle.graph().edge_count() <= target.edge_count() + 2);
                assert!(is_rigidified_contraction(&r, &f.middle, &f.psi));
                assert_eq!(f.rest.compose(&f.psi).unwrap(), phi);
            }
        }
        let id = Contraction::identity(g.clone());
        let f = factor_tree_edges(&r, &id).unwrap();
        assert_eq!(f.middle.graph().as_ref(), g.as_ref());
    }
}
