//! Planar rooted trees, their contractions, and the dual description by
//! pointed order embeddings.
//!
//! Vertices are `0..n` in whatever numbering the caller chose. The partial
//! order has the root on top: `v ≤ w` when `w` lies on the path from `v` to
//! the root. The depth-first order lists a vertex before its descendants,
//! which are visited in child order.

pub mod rigid;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use rigid::{
    factor_tree_edges, rigidification_labels, BitLabel, RigidifiedGraph, TreeEdgeFactor,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("malformed tree: {0}")]
    Parse(String),
    #[error("invalid tree: {0}")]
    Invalid(String),
    #[error("not a contraction of planar rooted trees: {0}")]
    NotAContraction(String),
}

/// Vertex labels that know how to print themselves inside the bracket format.
/// An empty string means no annotation.
pub trait TreeLabel: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    fn text(&self) -> String;
}

impl TreeLabel for () {
    fn text(&self) -> String {
        String::new()
    }
}

impl TreeLabel for bool {
    fn text(&self) -> String {
        (if *self { "1" } else { "0" }).into()
    }
}

impl TreeLabel for String {
    fn text(&self) -> String {
        self.clone()
    }
}

/// `(ℓ(w), φ(w))` on maximal vertices, `(ℓ(w), 0)` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelLabel<L> {
    pub label: L,
    pub image: Option<usize>,
}

impl<L: TreeLabel> TreeLabel for RelLabel<L> {
    fn text(&self) -> String {
        match self.image {
            Some(w) => format!("{}/{}", self.label.text(), w + 1),
            None => format!("{}/0", self.label.text()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarRootedTree<L = ()> {
    root: usize,
    names: Vec<String>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    labels: Vec<L>,
    order: Vec<usize>,
    pos: Vec<usize>,
    size: Vec<usize>,
}

pub type LabeledTree = PlanarRootedTree<String>;

impl PlanarRootedTree<()> {
    pub fn unlabeled(root: usize, children: Vec<Vec<usize>>) -> Result<Self, TreeError> {
        let n = children.len();
        PlanarRootedTree::new(root, children, vec![(); n])
    }

    /// A single vertex.
    pub fn point() -> Self {
        Self::unlabeled(0, vec![Vec::new()]).expect("one vertex")
    }
}

impl<L: TreeLabel> PlanarRootedTree<L> {
    pub fn new(root: usize, children: Vec<Vec<usize>>, labels: Vec<L>) -> Result<Self, TreeError> {
        let n = children.len();
        let names = (0..n).map(|v| v.to_string()).collect();
        Self::with_names(root, children, labels, names)
    }

    pub fn with_names(
        root: usize,
        children: Vec<Vec<usize>>,
        labels: Vec<L>,
        names: Vec<String>,
    ) -> Result<Self, TreeError> {
        let n = children.len();
        if n == 0 || root >= n {
            return Err(TreeError::Invalid("root out of range".into()));
        }
        if labels.len() != n || names.len() != n {
            return Err(TreeError::Invalid(
                "label or name count differs from vertex count".into(),
            ));
        }
        let mut parent = vec![None; n];
        for (v, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n || c == root || parent[c].is_some() {
                    return Err(TreeError::Invalid(format!("vertex {c} has a bad parent")));
                }
                parent[c] = Some(v);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(children[v].iter().rev());
        }
        if order.len() != n {
            return Err(TreeError::Invalid("not connected to the root".into()));
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut size = vec![1; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        Ok(Self {
            root,
            names,
            parent,
            children,
            labels,
            order,
            pos,
            size,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn label(&self, v: usize) -> &L {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn depth_first_order(&self) -> &[usize] {
        &self.order
    }

    /// Position in the depth-first order.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// `v ≤ w`: `w` is on the path from `v` to the root.
    pub fn leq(&self, v: usize, w: usize) -> bool {
        self.pos[w] <= self.pos[v] && self.pos[v] < self.pos[w] + self.size[w]
    }

    pub fn with_labels<M: TreeLabel>(&self, labels: Vec<M>) -> PlanarRootedTree<M> {
        assert_eq!(labels.len(), self.vertex_count());
        PlanarRootedTree {
            root: self.root,
            names: self.names.clone(),
            parent: self.parent.clone(),
            children: self.children.clone(),
            labels,
            order: self.order.clone(),
            pos: self.pos.clone(),
            size: self.size.clone(),
        }
    }

    pub fn map_labels<M: TreeLabel>(&self, f: impl Fn(&L) -> M) -> PlanarRootedTree<M> {
        self.with_labels(self.labels.iter().map(f).collect())
    }

    pub fn forget_labels(&self) -> PlanarRootedTree<()> {
        self.map_labels(|_| ())
    }

    /// Child counts and labels in depth-first order; equal keys mean a
    /// label-preserving planar isomorphism (which is then unique).
    pub fn shape_key(&self) -> Vec<(usize, L)> {
        self.order
            .iter()
            .map(|&v| (self.children[v].len(), self.labels[v].clone()))
            .collect()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.shape_key() == other.shape_key()
    }

    fn write_node(&self, v: usize, out: &mut String) {
        out.push('(');
        out.push_str(&self.names[v]);
        let t = self.labels[v].text();
        if !t.is_empty() {
            out.push(':');
            out.push_str(&t);
        }
        for &c in &self.children[v] {
            out.push(' ');
            self.write_node(c, out);
        }
        out.push(')');
    }
}

impl<L: TreeLabel> fmt::Display for PlanarRootedTree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_node(self.root, &mut s);
        f.write_str(&s)
    }
}

/// Parse `(name:label (child …) …)`. Names and labels are optional; a missing
/// name becomes the depth-first index, a missing label the empty string.
pub fn parse_tree(input: &str) -> Result<LabeledTree, TreeError> {
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut names = Vec::new();
    let mut labels = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        match chars[i] {
            '(' => {
                if stack.is_empty() && !children.is_empty() {
                    return Err(TreeError::Parse("more than one root".into()));
                }
                i += 1;
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && chars[i] != '('
                    && chars[i] != ')'
                {
                    i += 1;
                }
                let token: String = chars[start..i].iter().collect();
                let (name, label) = match token.split_once(':') {
                    Some((a, b)) => (a.to_string(), b.to_string()),
                    None => (token, String::new()),
                };
                let v = children.len();
                children.push(Vec::new());
                names.push(if name.is_empty() { v.to_string() } else { name });
                labels.push(label);
                if let Some(&p) = stack.last() {
                    children[p].push(v);
                }
                stack.push(v);
            }
            ')' => {
                if stack.pop().is_none() {
                    return Err(TreeError::Parse(format!("unbalanced ')' at {i}")));
                }
                i += 1;
            }
            c => return Err(TreeError::Parse(format!("unexpected {c:?} at {i}"))),
        }
    }
    if !stack.is_empty() || children.is_empty() {
        return Err(TreeError::Parse("unbalanced or empty input".into()));
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
        return Err(TreeError::Parse(format!("duplicate vertex name {dup}")));
    }
    PlanarRootedTree::with_names(0, children, labels, names)
}

/// All planar rooted trees with `k` edges, in a fixed order.
pub fn enumerate_planar_trees(k: usize) -> Vec<PlanarRootedTree> {
    // each tree as a list of parent pointers in depth-first order
    fn shapes(k: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(s) = memo.get(&k) {
            return s.clone();
        }
        // child subtree sizes summing to k, each subtree (edges j) costs j + 1
        let mut out = Vec::new();
        if k == 0 {
            out.push(vec![usize::MAX]);
        } else {
            for first in 0..k {
                let head = shapes(first, memo);
                let tail = shapes(k - first - 1, memo);
                for h in &head {
                    for t in &tail {
                        // root, first subtree shifted under the root, then the
                        // remaining subtrees of the tail's root
                        let mut p = vec![usize::MAX];
                        for (i, &x) in h.iter().enumerate() {
                            p.push(if i == 0 { 0 } else { x + 1 });
                        }
                        let off = h.len();
                        for &x in &t[1..] {
                            p.push(if x == 0 { 0 } else { x + off });
                        }
                        out.push(p);
                    }
                }
            }
        }
        memo.insert(k, out.clone());
        out
    }
    shapes(k, &mut HashMap::new())
        .into_iter()
        .map(|p| {
            let mut children = vec![Vec::new(); p.len()];
            for (v, &q) in p.iter().enumerate().skip(1) {
                children[q].push(v);
            }
            PlanarRootedTree::unlabeled(0, children).expect("valid shape")
        })
        .collect()
}

/// Check that a vertex map is a contraction of rooted trees: root to root,
/// surjective, connected fibers, and every surviving edge onto a target edge.
pub fn is_rooted_contraction<L: TreeLabel, M: TreeLabel>(
    t: &PlanarRootedTree<L>,
    t2: &PlanarRootedTree<M>,
    map: &[usize],
) -> bool {
    check_rooted(t, t2, map).is_ok()
}

fn check_rooted<L: TreeLabel, M: TreeLabel>(
    t: &PlanarRootedTree<L>,
    t2: &PlanarRootedTree<M>,
    map: &[usize],
) -> Result<(), TreeError> {
    let bad = |m: &str| Err(TreeError::NotAContraction(m.into()));
    if map.len() != t.vertex_count() || map.iter().any(|&w| w >= t2.vertex_count()) {
        return bad("map has the wrong shape");
    }
    if map[t.root] != t2.root {
        return bad("root not preserved");
    }
    // each fiber has exactly one vertex whose parent lies outside it
    let mut tops = vec![0usize; t2.vertex_count()];
    for v in 0..t.vertex_count() {
        match t.parent[v] {
            Some(p) if map[p] == map[v] => {}
            Some(p) => {
                if t2.parent[map[v]] != Some(map[p]) {
                    return bad("surviving edge does not map onto an edge");
                }
                tops[map[v]] += 1;
            }
            None => tops[map[v]] += 1,
        }
    }
    if tops.iter().any(|&c| c != 1) {
        return bad("a fiber is empty or disconnected");
    }
    Ok(())
}

/// The first vertex of each fiber in depth-first order, which is also its
/// maximum.
pub fn fiber_tops<L: TreeLabel>(
    t: &PlanarRootedTree<L>,
    target_size: usize,
    map: &[usize],
) -> Vec<usize> {
    let mut top = vec![usize::MAX; target_size];
    for &v in &t.order {
        if top[map[v]] == usize::MAX {
            top[map[v]] = v;
        }
    }
    top
}

pub fn is_planar_contraction<L: TreeLabel, M: TreeLabel>(
    t: &PlanarRootedTree<L>,
    t2: &PlanarRootedTree<M>,
    map: &[usize],
) -> bool {
    if check_rooted(t, t2, map).is_err() {
        return false;
    }
    let top = fiber_tops(t, t2.vertex_count(), map);
    t2.order
        .windows(2)
        .all(|w| t.pos[top[w[0]]] < t.pos[top[w[1]]])
}

/// `w` is φ-maximal when every `u` in its fiber satisfies `u ≤ w`.
pub fn is_maximal<L: TreeLabel>(t: &PlanarRootedTree<L>, map: &[usize], w: usize) -> bool {
    (0..t.vertex_count())
        .filter(|&u| map[u] == map[w])
        .all(|u| t.leq(u, w))
}

/// A planar contraction with `ℓ₂(φ(w)) = ℓ(w)` at every φ-maximal `w`.
pub fn is_labeled_contraction<L: TreeLabel>(
    t: &PlanarRootedTree<L>,
    t2: &PlanarRootedTree<L>,
    map: &[usize],
) -> bool {
    is_planar_contraction(t, t2, map)
        && (0..t.vertex_count())
            .filter(|&w| is_maximal(t, map, w))
            .all(|w| t2.labels[map[w]] == t.labels[w])
}

/// `w' ↦ max φ⁻¹(w')`.
pub fn dual_embedding<L: TreeLabel, M: TreeLabel>(
    t: &PlanarRootedTree<L>,
    t2: &PlanarRootedTree<M>,
    map: &[usize],
) -> Result<Vec<usize>, TreeError> {
    if !is_planar_contraction(t, t2, map) {
        return Err(TreeError::NotAContraction("not planar".into()));
    }
    Ok(fiber_tops(t, t2.vertex_count(), map))
}

/// Pointed, injective, `u ≤ w ⟺ e(u) ≤ e(w)`, and increasing in depth-first
/// position.
pub fn is_order_embedding<L: TreeLabel, M: TreeLabel>(
    t2: &PlanarRootedTree<M>,
    t: &PlanarRootedTree<L>,
    e: &[usize],
) -> bool {
    if e.len() != t2.vertex_count()
        || e.iter().any(|&x| x >= t.vertex_count())
        || e[t2.root] != t.root
    {
        return false;
    }
    if !t2.order.windows(2).all(|w| t.pos[e[w[0]]] < t.pos[e[w[1]]]) {
        return false;
    }
    (0..e.len()).all(|u| (0..e.len()).all(|w| t2.leq(u, w) == t.leq(e[u], e[w])))
}

/// Inverse of [`dual_embedding`]: each vertex goes to the nearest image
/// vertex at or above it.
pub fn contraction_from_embedding<L: TreeLabel, M: TreeLabel>(
    t2: &PlanarRootedTree<M>,
    t: &PlanarRootedTree<L>,
    e: &[usize],
) -> Result<Vec<usize>, TreeError> {
    if !is_order_embedding(t2, t, e) {
        return Err(TreeError::Invalid(
            "not a depth-first order embedding".into(),
        ));
    }
    let mut preimage = vec![None; t.vertex_count()];
    for (w, &v) in e.iter().enumerate() {
        preimage[v] = Some(w);
    }
    let mut map = vec![0; t.vertex_count()];
    for &v in &t.order {
        map[v] = match (preimage[v], t.parent[v]) {
            (Some(w), _) => w,
            (None, Some(p)) => map[p],
            (None, None) => unreachable!("root is in the image"),
        };
    }
    Ok(map)
}

/// Every planar contraction `T → T2` as a vertex map. Contracting an edge set
/// determines the quotient planar tree, and planar isomorphisms are unique.
pub fn planar_contractions<L: TreeLabel, M: TreeLabel>(
    t: &PlanarRootedTree<L>,
    t2: &PlanarRootedTree<M>,
) -> Vec<Vec<usize>> {
    let n = t.vertex_count();
    let n2 = t2.vertex_count();
    if n2 > n {
        return Vec::new();
    }
    let edges: Vec<usize> = (0..n).filter(|&v| v != t.root).collect();
    let key2: Vec<usize> = t2.order.iter().map(|&v| t2.children[v].len()).collect();
    let mut out = Vec::new();
    for keep in crate::graph::enumerate::combinations(&(0..edges.len()).collect::<Vec<_>>(), n2 - 1)
    {
        let kept: Vec<bool> = {
            let mut k = vec![false; n];
            for &i in &keep {
                k[edges[i]] = true;
            }
            k
        };
        // quotient vertices are the fiber tops, in depth-first order
        let mut class = vec![usize::MAX; n];
        let mut tops = Vec::new();
        for &v in &t.order {
            match t.parent[v] {
                Some(p) if !kept[v] => class[v] = class[p],
                _ => {
                    class[v] = tops.len();
                    tops.push(v);
                }
            }
        }
        let mut child_count = vec![0; tops.len()];
        for &v in &tops {
            if let Some(p) = t.parent[v] {
                child_count[class[p]] += 1;
            }
        }
        if child_count != key2 {
            continue;
        }
        // depth-first index i of the quotient corresponds to t2.order[i]
        out.push((0..n).map(|v| t2.order[class[v]]).collect());
    }
    out
}

/// Every depth-first preserving pointed order embedding `T2 → T`.
pub fn order_embeddings<L: TreeLabel, M: TreeLabel>(
    t2: &PlanarRootedTree<M>,
    t: &PlanarRootedTree<L>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut e = vec![usize::MAX; t2.vertex_count()];
    embed_search(t2, t, &mut e, 0, 0, &|_, _| true, &mut |e| {
        out.push(e.to_vec());
        false
    });
    out
}

/// Backtracking over depth-first positions. `accept` filters single
/// assignments, `found` returns true to stop.
fn embed_search<L: TreeLabel, M: TreeLabel>(
    t2: &PlanarRootedTree<M>,
    t: &PlanarRootedTree<L>,
    e: &mut [usize],
    i: usize,
    from: usize,
    accept: &dyn Fn(usize, usize) -> bool,
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n2 = t2.vertex_count();
    if i == n2 {
        return found(e);
    }
    let w = t2.order[i];
    let candidates: Vec<usize> = if i == 0 {
        vec![0]
    } else {
        (from..t.vertex_count() - (n2 - 1 - i)).collect()
    };
    for p in candidates {
        let v = t.order[p];
        if !accept(w, v) {
            continue;
        }
        // compare with earlier vertices; later ones check against this one
        let ok = t2.order[..i]
            .iter()
            .all(|&u| t2.leq(w, u) == t.leq(v, e[u]) && t2.leq(u, w) == t.leq(e[u], v));
        if !ok {
            continue;
        }
        e[w] = v;
        if embed_search(t2, t, e, i + 1, p + 1, accept, found) {
            return true;
        }
        e[w] = usize::MAX;
    }
    false
}

/// `a ≤ b`: some labeled contraction `b → a` exists. Searched as a label
/// preserving embedding `a → b`, the fiber maxima of the contraction.
pub fn tree_quasi_leq<L: TreeLabel>(a: &PlanarRootedTree<L>, b: &PlanarRootedTree<L>) -> bool {
    quasi_leq_witness(a, b).is_some()
}

/// The contraction `b → a` witnessing `a ≤ b`.
pub fn quasi_leq_witness<L: TreeLabel>(
    a: &PlanarRootedTree<L>,
    b: &PlanarRootedTree<L>,
) -> Option<Vec<usize>> {
    if a.vertex_count() > b.vertex_count() {
        return None;
    }
    let mut e = vec![usize::MAX; a.vertex_count()];
    let mut hit = None;
    embed_search(
        a,
        b,
        &mut e,
        0,
        0,
        &|w, v| a.labels[w] == b.labels[v],
        &mut |e| {
            hit = Some(e.to_vec());
            true
        },
    );
    hit.map(|e| contraction_from_embedding(a, b, &e).expect("search yields embeddings"))
}

/// Relabel `T'` over `S × (Vert(T) ⊔ {0})` from a labeled contraction `T' → T`.
pub fn relative_labeling<L: TreeLabel>(
    t1: &PlanarRootedTree<L>,
    t: &PlanarRootedTree<L>,
    map: &[usize],
) -> Result<PlanarRootedTree<RelLabel<L>>, TreeError> {
    if !is_labeled_contraction(t1, t, map) {
        return Err(TreeError::NotAContraction(
            "not a labeled contraction".into(),
        ));
    }
    let labels = (0..t1.vertex_count())
        .map(|w| RelLabel {
            label: t1.labels[w].clone(),
            image: is_maximal(t1, map, w).then_some(map[w]),
        })
        .collect();
    Ok(t1.with_labels(labels))
}

/// `(f ∘ g)(v) = f(g(v))`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&v| f[v]).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub pairs: usize,
    pub contractions: usize,
    pub embeddings: usize,
    /// Pairs where a contraction exists but no embedding, or the reverse.
    pub existence_mismatches: usize,
    /// Pairs where duality is not a bijection between the two sets.
    pub bijection_failures: usize,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.existence_mismatches == 0 && self.bijection_failures == 0
    }
}

/// Compare planar contractions and order embeddings over all pairs of planar
/// rooted trees with at most `max_edges` edges.
pub fn duality_check(max_edges: usize) -> DualityReport {
    let trees: Vec<PlanarRootedTree> = (0..=max_edges).flat_map(enumerate_planar_trees).collect();
    trees
        .par_iter()
        .map(|t| {
            let mut r = DualityReport::default();
            for t2 in trees
                .iter()
                .filter(|t2| t2.vertex_count() <= t.vertex_count())
            {
                r.pairs += 1;
                let cs = planar_contractions(t, t2);
                let mut es = order_embeddings(t2, t);
                r.contractions += cs.len();
                r.embeddings += es.len();
                if cs.is_empty() != es.is_empty() {
                    r.existence_mismatches += 1;
                }
                let mut duals: Vec<Vec<usize>> = cs
                    .iter()
                    .filter_map(|c| dual_embedding(t, t2, c).ok())
                    .collect();
                let round_trip = cs
                    .iter()
                    .zip(&duals)
                    .all(|(c, d)| contraction_from_embedding(t2, t, d).ok().as_ref() == Some(c));
                duals.sort();
                es.sort();
                if duals.len() != cs.len() || duals != es || !round_trip {
                    r.bijection_failures += 1;
                }
            }
            r
        })
        .reduce(DualityReport::default, |a, b| DualityReport {
            pairs: a.pairs + b.pairs,
            contractions: a.contractions + b.contractions,
            embeddings: a.embeddings + b.embeddings,
            existence_mismatches: a.existence_mismatches + b.existence_mismatches,
            bijection_failures: a.bijection_failures + b.bijection_failures,
        })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeLabelingReport {
    pub cases: usize,
    pub agreements: usize,
}

impl RelativeLabelingReport {
    pub fn holds(&self) -> bool {
        self.cases == self.agreements
    }
}

/// For all `φ' : T' → T`, `φ'' : T'' → T` and planar `ψ : T'' → T'` with
/// `|T''| ≤ max_edges`, check that `ψ` is a contraction of the relatively
/// labeled trees exactly when `φ'' = φ' ∘ ψ`. Trees are labeled by `labels`
/// applied to each shape.
pub fn relative_labeling_check<L: TreeLabel>(
    max_edges: usize,
    labels: &(dyn Fn(&PlanarRootedTree) -> Vec<Vec<L>> + Sync),
) -> RelativeLabelingReport {
    let labeled: Vec<PlanarRootedTree<L>> = (0..=max_edges)
        .flat_map(enumerate_planar_trees)
        .flat_map(|t| labels(&t).into_iter().map(move |l| t.with_labels(l)))
        .collect();
    labeled
        .par_iter()
        .map(|t2| {
            let mut r = RelativeLabelingReport::default();
            for t1 in labeled
                .iter()
                .filter(|x| x.vertex_count() <= t2.vertex_count())
            {
                let psis: Vec<Vec<usize>> = planar_contractions(t2, t1)
                    .into_iter()
                    .filter(|m| is_labeled_contraction(t2, t1, m))
                    .collect();
                if psis.is_empty() {
                    continue;
                }
                for t in labeled
                    .iter()
                    .filter(|x| x.vertex_count() <= t1.vertex_count())
                {
                    let phi1s: Vec<Vec<usize>> = planar_contractions(t1, t)
                        .into_iter()
                        .filter(|m| is_labeled_contraction(t1, t, m))
                        .collect();
                    let phi2s: Vec<Vec<usize>> = planar_contractions(t2, t)
                        .into_iter()
                        .filter(|m| is_labeled_contraction(t2, t, m))
                        .collect();
                    for phi1 in &phi1s {
                        let u1 = relative_labeling(t1, t, phi1).expect("labeled");
                        for phi2 in &phi2s {
                            let u2 = relative_labeling(t2, t, phi2).expect("labeled");
                            for psi in &psis {
                                r.cases += 1;
                                let lhs = is_labeled_contraction(&u2, &u1, psi);
                                let rhs = *phi2 == compose(phi1, psi);
                                if lhs == rhs {
                                    r.agreements += 1;
                                }
                            }
                        }
                    }
                }
            }
            r
        })
        .reduce(RelativeLabelingReport::default, |a, b| {
            RelativeLabelingReport {
                cases: a.cases + b.cases,
                agreements: a.agreements + b.agreements,
            }
        })
}
