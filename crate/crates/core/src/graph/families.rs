//! Subdivision and sprouting families indexed by ordered injections.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::morphism::contract_edges;
use super::{Contraction, Edge, EdgeImage, GraphError, MultiGraph};

/// An edge read from `ends[0]` to `ends[1]`, or the other way when `reversed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub edge: usize,
    pub reversed: bool,
}

impl DirectedEdge {
    pub fn forward(edge: usize) -> Self {
        Self {
            edge,
            reversed: false,
        }
    }
}

/// Strictly increasing map `{1..m} → {1..n}`, stored as its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedInjection {
    codomain: usize,
    values: Vec<usize>,
}

impl OrderedInjection {
    pub fn new(values: Vec<usize>, codomain: usize) -> Result<Self, GraphError> {
        let increasing = values.windows(2).all(|w| w[0] < w[1]);
        let in_range = values.iter().all(|&v| (1..=codomain).contains(&v));
        if !increasing || !in_range {
            return Err(GraphError::InvalidFamily(format!(
                "{values:?} is not an ordered injection into [{codomain}]"
            )));
        }
        Ok(Self { codomain, values })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            codomain: m,
            values: (1..=m).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.values.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at `j` (1-based).
    pub fn apply(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.domain() == self.codomain
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &OrderedInjection) -> Result<Self, GraphError> {
        if first.codomain != self.domain() {
            return Err(GraphError::InvalidFamily(
                "non-composable injections".into(),
            ));
        }
        Ok(Self {
            codomain: self.codomain,
            values: first.values.iter().map(|&j| self.apply(j)).collect(),
        })
    }

    /// All ordered injections `[m] → [n]`, lexicographically.
    pub fn all(m: usize, n: usize) -> Vec<Self> {
        fn go(
            m: usize,
            n: usize,
            start: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<OrderedInjection>,
        ) {
            if cur.len() == m {
                out.push(OrderedInjection {
                    codomain: n,
                    values: cur.clone(),
                });
                return;
            }
            for v in start..=n {
                if n - v + 1 < m - cur.len() {
                    break;
                }
                cur.push(v);
                go(m, n, v + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m, n, 1, &mut Vec::new(), &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedInjectionTuple(pub Vec<OrderedInjection>);

impl OrderedInjectionTuple {
    pub fn identity(sizes: &[usize]) -> Self {
        Self(
            sizes
                .iter()
                .map(|&m| OrderedInjection::identity(m))
                .collect(),
        )
    }

    pub fn domains(&self) -> Vec<usize> {
        self.0.iter().map(OrderedInjection::domain).collect()
    }

    pub fn codomains(&self) -> Vec<usize> {
        self.0.iter().map(OrderedInjection::codomain).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(OrderedInjection::is_identity)
    }

    pub fn compose(&self, first: &OrderedInjectionTuple) -> Result<Self, GraphError> {
        if self.0.len() != first.0.len() {
            return Err(GraphError::InvalidFamily(
                "tuples of different length".into(),
            ));
        }
        Ok(Self(
            self.0
                .iter()
                .zip(&first.0)
                .map(|(a, b)| a.compose(b))
                .collect::<Result<_, _>>()?,
        ))
    }

    /// All tuples with the given domains and codomains.
    pub fn all(domains: &[usize], codomains: &[usize]) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for (&m, &n) in domains.iter().zip(codomains) {
            let opts = OrderedInjection::all(m, n);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<OrderedInjection>| {
                    opts.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.push(o.clone());
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Self).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Subdivision(Vec<DirectedEdge>),
    Sprout(Vec<usize>),
}

/// A graph with sites; members replace each site by a path (subdivision) or
/// attach leaves to it (sprouting).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    base: Arc<MultiGraph>,
    kind: FamilyKind,
}

/// A member `G(e, m)` or `G(v, m)` with index tables back to the base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub graph: Arc<MultiGraph>,
    pub sizes: Vec<usize>,
    /// Image of each base vertex.
    pub base_vertices: Vec<usize>,
    /// Image of each base edge that is not a site.
    pub base_edges: Vec<Option<usize>>,
    /// Subdivision: path vertices `v^0..v^m`. Sprouting: the site, then leaves `1..m`.
    pub site_vertices: Vec<Vec<usize>>,
    /// Path edges `1..m`, or leaf edges `1..m`.
    pub site_edges: Vec<Vec<usize>>,
    /// Whether each site edge is stored against the path direction.
    against: Vec<Vec<bool>>,
}

impl FamilyMember {
    /// Edges created by the family construction.
    pub fn family_edges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.site_edges.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }
}

fn fresh_name(taken: &[String], stem: String) -> String {
    let mut name = stem;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

impl Family {
    pub fn subdivision(
        base: Arc<MultiGraph>,
        sites: Vec<DirectedEdge>,
    ) -> Result<Self, GraphError> {
        for (k, s) in sites.iter().enumerate() {
            if s.edge >= base.edge_count() {
                return Err(GraphError::EdgeOutOfRange(s.edge));
            }
            if sites[..k].iter().any(|t| t.edge == s.edge) {
                return Err(GraphError::InvalidFamily(format!(
                    "edge {} repeated",
                    base.edge(s.edge).name
                )));
            }
        }
        Ok(Self {
            base,
            kind: FamilyKind::Subdivision(sites),
        })
    }

    pub fn sprout(base: Arc<MultiGraph>, sites: Vec<usize>) -> Result<Self, GraphError> {
        for (k, &v) in sites.iter().enumerate() {
            if v >= base.vertex_count() {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if sites[..k].contains(&v) {
                return Err(GraphError::InvalidFamily(format!(
                    "vertex {} repeated",
                    base.vertex_name(v)
                )));
            }
        }
        Ok(Self {
            base,
            kind: FamilyKind::Sprout(sites),
        })
    }

    pub fn base(&self) -> &Arc<MultiGraph> {
        &self.base
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn arity(&self) -> usize {
        match &self.kind {
            FamilyKind::Subdivision(s) => s.len(),
            FamilyKind::Sprout(s) => s.len(),
        }
    }

    pub fn member(&self, sizes: &[usize]) -> Result<FamilyMember, GraphError> {
        if sizes.len() != self.arity() {
            return Err(GraphError::InvalidFamily(format!(
                "expected {} sizes, got {}",
                self.arity(),
                sizes.len()
            )));
        }
        match &self.kind {
            FamilyKind::Subdivision(sites) => self.subdivided(sites, sizes),
            FamilyKind::Sprout(sites) => self.sprouted(sites, sizes),
        }
    }

    fn subdivided(
        &self,
        sites: &[DirectedEdge],
        sizes: &[usize],
    ) -> Result<FamilyMember, GraphError> {
        let g = &self.base;
        let mut names: Vec<String> = g.vertex_names().to_vec();
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for (s, &m) in sites.iter().zip(sizes) {
            let [a, b] = g.edge(s.edge).ends;
            let (a, b) = if s.reversed { (b, a) } else { (a, b) };
            let mut path = vec![a];
            for t in 1..m.max(1) {
                path.push(names.len());
                names.push(fresh_name(&names, format!("{}^{t}", g.edge(s.edge).name)));
            }
            path.push(b);
            paths.push(path);
        }
        let mut edges: Vec<Edge> = Vec::new();
        let mut base_edges = vec![None; g.edge_count()];
        let mut site_edges = vec![Vec::new(); sites.len()];
        let mut against = vec![Vec::new(); sites.len()];
        let edge_names: Vec<String> = g.edges().iter().map(|e| e.name.clone()).collect();
        for (e, edge) in g.edges().iter().enumerate() {
            match sites.iter().position(|s| s.edge == e) {
                None => {
                    base_edges[e] = Some(edges.len());
                    edges.push(edge.clone());
                }
                Some(i) if paths[i].len() == 2 => {
                    site_edges[i].push(edges.len());
                    against[i].push(sites[i].reversed);
                    edges.push(edge.clone());
                }
                Some(i) => {
                    for j in 1..paths[i].len() {
                        site_edges[i].push(edges.len());
                        against[i].push(false);
                        let taken: Vec<String> = edge_names
                            .iter()
                            .cloned()
                            .chain(edges.iter().map(|e| e.name.clone()))
                            .collect();
                        edges.push(Edge {
                            name: fresh_name(&taken, format!("{}.{j}", edge.name)),
                            ends: [paths[i][j - 1], paths[i][j]],
                        });
                    }
                }
            }
        }
        let graph = Arc::new(MultiGraph::new(names, edges)?);
        let mut member = FamilyMember {
            graph,
            sizes: sizes.to_vec(),
            base_vertices: (0..g.vertex_count()).collect(),
            base_edges,
            site_vertices: paths,
            site_edges,
            against,
        };
        let zero: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] == 0).collect();
        if zero.is_empty() {
            return Ok(member);
        }
        let collapse: Vec<usize> = zero.iter().map(|&i| member.site_edges[i][0]).collect();
        let c = contract_edges(&member.graph, &collapse).map_err(|_| {
            GraphError::InvalidFamily(
                "zero-length subdivision of a loop or a cycle of sites".into(),
            )
        })?;
        let edge_to = |e: usize| c.map_edge(e).edge();
        member.base_vertices = member
            .base_vertices
            .iter()
            .map(|&v| c.map_vertex(v))
            .collect();
        member.base_edges = member
            .base_edges
            .iter()
            .map(|e| e.and_then(edge_to))
            .collect();
        member.site_vertices = member
            .site_vertices
            .iter()
            .map(|p| p.iter().map(|&v| c.map_vertex(v)).collect())
            .collect();
        for &i in &zero {
            member.site_vertices[i].pop();
            member.site_edges[i].clear();
            member.against[i].clear();
        }
        member.site_edges = member
            .site_edges
            .iter()
            .map(|es| {
                es.iter()
                    .map(|&e| edge_to(e).expect("surviving edge"))
                    .collect()
            })
            .collect();
        member.graph = c.target().clone();
        Ok(member)
    }

    fn sprouted(&self, sites: &[usize], sizes: &[usize]) -> Result<FamilyMember, GraphError> {
        let g = &self.base;
        let mut names: Vec<String> = g.vertex_names().to_vec();
        let mut edges: Vec<Edge> = g.edges().to_vec();
        let mut site_vertices = Vec::new();
        let mut site_edges = Vec::new();
        for (&v, &m) in sites.iter().zip(sizes) {
            let mut vs = vec![v];
            let mut es = Vec::new();
            for t in 1..=m {
                let leaf = names.len();
                names.push(fresh_name(&names, format!("{}+{t}", g.vertex_name(v))));
                es.push(edges.len());
                let taken: Vec<String> = edges.iter().map(|e| e.name.clone()).collect();
                edges.push(Edge {
                    name: fresh_name(&taken, format!("{}~{t}", g.vertex_name(v))),
                    ends: [v, leaf],
                });
                vs.push(leaf);
            }
            site_vertices.push(vs);
            site_edges.push(es);
        }
        let against = site_edges
            .iter()
            .map(|es: &Vec<usize>| vec![false; es.len()])
            .collect();
        Ok(FamilyMember {
            graph: Arc::new(MultiGraph::new(names, edges)?),
            sizes: sizes.to_vec(),
            base_vertices: (0..g.vertex_count()).collect(),
            base_edges: (0..g.edge_count()).map(Some).collect(),
            site_vertices,
            site_edges,
            against,
        })
    }

    /// The contraction `G(·, n) → G(·, m)` induced by `f : [m] → [n]`.
    pub fn morphism(&self, f: &OrderedInjectionTuple) -> Result<Contraction, GraphError> {
        let src = self.member(&f.codomains())?;
        let tgt = self.member(&f.domains())?;
        self.morphism_between(f, &src, &tgt)
    }

    /// As [`Family::morphism`] with both members already built.
    pub fn morphism_between(
        &self,
        f: &OrderedInjectionTuple,
        src: &FamilyMember,
        tgt: &FamilyMember,
    ) -> Result<Contraction, GraphError> {
        if src.sizes != f.codomains() || tgt.sizes != f.domains() {
            return Err(GraphError::InvalidFamily(
                "members do not match the injection tuple".into(),
            ));
        }
        let mut vertex_map = vec![usize::MAX; src.graph.vertex_count()];
        let mut edge_map = vec![EdgeImage::Contracted; src.graph.edge_count()];
        for v in 0..self.base.vertex_count() {
            vertex_map[src.base_vertices[v]] = tgt.base_vertices[v];
        }
        for (e, img) in src.base_edges.iter().enumerate() {
            if let Some(se) = img {
                let te = tgt.base_edges[e].expect("non-site edges survive");
                edge_map[*se] = EdgeImage::Edge {
                    edge: te,
                    reversed: false,
                };
            }
        }
        for (i, fi) in f.0.iter().enumerate() {
            let n = fi.codomain();
            match self.kind {
                FamilyKind::Subdivision(_) => {
                    for t in 0..=n {
                        let s = fi.values().iter().filter(|&&v| v <= t).count();
                        vertex_map[src.site_vertices[i][t]] = tgt.site_vertices[i][s];
                    }
                    for (j, &k) in fi.values().iter().enumerate() {
                        edge_map[src.site_edges[i][k - 1]] = EdgeImage::Edge {
                            edge: tgt.site_edges[i][j],
                            reversed: src.against[i][k - 1] != tgt.against[i][j],
                        };
                    }
                }
                FamilyKind::Sprout(_) => {
                    for t in 1..=n {
                        vertex_map[src.site_vertices[i][t]] = tgt.site_vertices[i][0];
                    }
                    for (j, &k) in fi.values().iter().enumerate() {
                        vertex_map[src.site_vertices[i][k]] = tgt.site_vertices[i][j + 1];
                        edge_map[src.site_edges[i][k - 1]] = EdgeImage::Edge {
                            edge: tgt.site_edges[i][j],
                            reversed: false,
                        };
                    }
                }
            }
        }
        Contraction::new(src.graph.clone(), tgt.graph.clone(), vertex_map, edge_map)
    }
}

/// `G(e, m)`: each site edge replaced by a path of `m_i` edges (`0` contracts it).
pub fn subdivide(
    g: &Arc<MultiGraph>,
    sites: &[DirectedEdge],
    sizes: &[usize],
) -> Result<FamilyMember, GraphError> {
    Family::subdivision(g.clone(), sites.to_vec())?.member(sizes)
}

/// `G(v, m)`: `m_i` new leaves attached at each site vertex.
pub fn sprout(
    g: &Arc<MultiGraph>,
    sites: &[usize],
    sizes: &[usize],
) -> Result<FamilyMember, GraphError> {
    Family::sprout(g.clone(), sites.to_vec())?.member(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::canon::are_isomorphic;

    fn arc(g: MultiGraph) -> Arc<MultiGraph> {
        Arc::new(g)
    }

    #[test]
    fn sizes_add_up() {
        let g = arc(corpus::complete(4));
        let sites = [
            DirectedEdge::forward(0),
            DirectedEdge {
                edge: 3,
                reversed: true,
            },
        ];
        let m = subdivide(&g, &sites, &[3, 2]).unwrap();
        assert_eq!(m.graph.edge_count(), 6 + 5 - 2);
        assert_eq!(m.graph.genus(), g.genus());
        let s = sprout(&g, &[0, 2], &[2, 3]).unwrap();
        assert_eq!(s.graph.edge_count(), 6 + 5);
    }

    #[test]
    fn unit_sizes_give_the_base() {
        let g = arc(corpus::theta(&[1, 2, 2]));
        let sites = [
            DirectedEdge {
                edge: 1,
                reversed: true,
            },
            DirectedEdge::forward(4),
        ];
        assert_eq!(*subdivide(&g, &sites, &[1, 1]).unwrap().graph, *g);
        let fam = Family::subdivision(g.clone(), sites.to_vec()).unwrap();
        assert!(fam
            .morphism(&OrderedInjectionTuple::identity(&[1, 1]))
            .unwrap()
            .is_identity());
        assert_eq!(*sprout(&g, &[0, 1], &[0, 0]).unwrap().graph, *g);
    }

    #[test]
    fn loop_subdivides_to_cycle() {
        let r = arc(corpus::rose(1));
        for n in 1..7 {
            let c = subdivide(&r, &[DirectedEdge::forward(0)], &[n]).unwrap();
            assert!(are_isomorphic(&c.graph, &corpus::cycle(n)));
        }
        assert!(subdivide(&r, &[DirectedEdge::forward(0)], &[0]).is_err());
    }

    #[test]
    fn zero_contracts_the_edge() {
        let g = arc(corpus::cycle(4));
        let m = subdivide(&g, &[DirectedEdge::forward(1)], &[0]).unwrap();
        assert!(are_isomorphic(&m.graph, &corpus::cycle(3)));
    }

    #[test]
    fn sprouting_an_edge_end() {
        let g = arc(corpus::path(1));
        let s = sprout(&g, &[1], &[2]).unwrap();
        assert!(are_isomorphic(&s.graph, &corpus::star(3)));
    }

    #[test]
    fn repeated_sites_rejected() {
        let g = arc(corpus::cycle(4));
        assert!(Family::subdivision(
            g.clone(),
            vec![DirectedEdge::forward(1), DirectedEdge::forward(1)]
        )
        .is_err());
        assert!(Family::sprout(g, vec![2, 2]).is_err());
    }

    fn check_contravariance(fam: &Family, max: usize) {
        let r = fam.arity();
        let grid = |k: usize| -> Vec<Vec<usize>> {
            let mut out = vec![vec![]];
            for _ in 0..r {
                out = out
                    .into_iter()
                    .flat_map(|p| (0..=k).map(move |x| [p.clone(), vec![x]].concat()))
                    .collect();
            }
            out
        };
        for a in grid(max) {
            for b in grid(max) {
                if a.iter().zip(&b).any(|(x, y)| x > y) {
                    continue;
                }
                for c in grid(max) {
                    if b.iter().zip(&c).any(|(x, y)| x > y) {
                        continue;
                    }
                    for f1 in OrderedInjectionTuple::all(&a, &b) {
                        for f2 in OrderedInjectionTuple::all(&b, &c) {
                            let direct = fam.morphism(&f2.compose(&f1).unwrap()).unwrap();
                            let via = fam
                                .morphism(&f1)
                                .unwrap()
                                .compose(&fam.morphism(&f2).unwrap())
                                .unwrap();
                            assert_eq!(direct, via);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subdivision_is_contravariant() {
        let g = arc(corpus::theta(&[1, 1, 2]));
        let fam = Family::subdivision(
            g,
            vec![
                DirectedEdge {
                    edge: 0,
                    reversed: true,
                },
                DirectedEdge::forward(2),
            ],
        )
        .unwrap();
        check_contravariance(&fam, 3);
        let loop_fam =
            Family::subdivision(arc(corpus::rose(2)), vec![DirectedEdge::forward(1)]).unwrap();
        for a in 1..4 {
            for b in a..5 {
                for c in b..6 {
                    for f1 in OrderedInjection::all(a, b) {
                        for f2 in OrderedInjection::all(b, c) {
                            let t1 = OrderedInjectionTuple(vec![f1.clone()]);
                            let t2 = OrderedInjectionTuple(vec![f2]);
                            let direct = loop_fam.morphism(&t2.compose(&t1).unwrap()).unwrap();
                            let via = loop_fam
                                .morphism(&t1)
                                .unwrap()
                                .compose(&loop_fam.morphism(&t2).unwrap())
                                .unwrap();
                            assert_eq!(direct, via);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sprouting_is_contravariant() {
        let fam = Family::sprout(arc(corpus::cycle(3)), vec![0, 2]).unwrap();
        check_contravariance(&fam, 3);
    }

    #[test]
    fn injection_counts() {
        assert_eq!(OrderedInjection::all(2, 5).len(), 10);
        assert_eq!(OrderedInjection::all(0, 3).len(), 1);
        assert!(OrderedInjection::new(vec![2, 1], 3).is_err());
    }
}
