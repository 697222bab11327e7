//! Hom-sets of the contraction category and reduced graphs of small genus.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::canon::{automorphism_count, automorphisms, canonical_form, isomorphism, CanonicalForm};
use super::morphism::contract_edges;
use super::{Contraction, GraphError, MultiGraph, UnionFind};

/// Edge sets of size `k` spanning a forest, in lexicographic order.
pub fn forests(g: &MultiGraph, k: usize) -> Vec<Vec<usize>> {
    fn go(
        g: &MultiGraph,
        k: usize,
        start: usize,
        uf: &UnionFind,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == k {
            out.push(chosen.clone());
            return;
        }
        let m = g.edge_count();
        for e in start..m {
            if m - e < k - chosen.len() {
                break;
            }
            let [a, b] = g.edge(e).ends;
            let mut next = uf.clone();
            if !next.union(a, b) {
                continue;
            }
            chosen.push(e);
            go(g, k, e + 1, &next, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    go(
        g,
        k,
        0,
        &UnionFind::new(g.vertex_count()),
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn check_genus(g: &MultiGraph, g2: &MultiGraph) -> Result<(), GraphError> {
    let (a, b) = (g.genus()?, g2.genus()?);
    if a != b {
        return Err(GraphError::GenusMismatch(a, b));
    }
    Ok(())
}

/// Forests `F` with `G/F ≅ G2`, each with one isomorphism-composed contraction.
fn base_contractions(
    g: &Arc<MultiGraph>,
    g2: &Arc<MultiGraph>,
) -> Result<Vec<Contraction>, GraphError> {
    check_genus(g, g2)?;
    if g.edge_count() < g2.edge_count() {
        return Ok(Vec::new());
    }
    let target_form: CanonicalForm = canonical_form(g2);
    let k = g.edge_count() - g2.edge_count();
    let fs = forests(g, k);
    Ok(fs
        .par_iter()
        .filter_map(|f| {
            let c = contract_edges(g, f).expect("forest");
            if canonical_form(c.target()) != target_form {
                return None;
            }
            let iso = isomorphism(c.target(), g2).expect("equal canonical forms");
            Some(iso.compose(&c).expect("composable"))
        })
        .collect())
}

/// All of `Mor(G, G2)`: forests with quotient isomorphic to `G2`, times `Aut(G2)`.
pub fn enumerate_contractions(
    g: &Arc<MultiGraph>,
    g2: &Arc<MultiGraph>,
) -> Result<Vec<Contraction>, GraphError> {
    let base = base_contractions(g, g2)?;
    let auts = automorphisms(g2);
    Ok(base
        .iter()
        .flat_map(|c| auts.iter().map(move |a| a.compose(c).expect("composable")))
        .collect())
}

/// `|Mor(G, G2)|` without materialising the morphisms.
pub fn count_contractions(g: &MultiGraph, g2: &MultiGraph) -> Result<u128, GraphError> {
    check_genus(g, g2)?;
    if g.edge_count() < g2.edge_count() {
        return Ok(0);
    }
    let target_form = canonical_form(g2);
    let g = Arc::new(g.clone());
    let k = g.edge_count() - g2.edge_count();
    let hits = forests(&g, k)
        .par_iter()
        .filter(|f| canonical_form(contract_edges(&g, f).expect("forest").target()) == target_form)
        .count();
    Ok(hits as u128 * automorphism_count(g2))
}

/// One representative per isomorphism class of reduced graphs of genus `g`.
pub fn enumerate_reduced_graphs(genus: usize) -> Vec<MultiGraph> {
    match genus {
        0 => return vec![MultiGraph::point()],
        1 => return vec![MultiGraph::from_edges(1, &[(0, 0)])],
        _ => {}
    }
    let mut found: BTreeMap<(usize, CanonicalForm), MultiGraph> = BTreeMap::new();
    // all valences ≥ 3 gives 2|E| ≥ 3|V|, i.e. |V| ≤ 2g − 2
    for v in 1..=2 * genus - 2 {
        let e = v + genus - 1;
        let mut slots: Vec<(usize, usize)> = (0..v).map(|x| (x, x)).collect();
        for a in 0..v {
            for b in a + 1..v {
                slots.push((a, b));
            }
        }
        let mut counts = vec![0usize; slots.len()];
        distribute(e, 0, &mut counts, &mut |counts| {
            let ends: Vec<(usize, usize)> = slots
                .iter()
                .zip(counts)
                .flat_map(|(&s, &c)| std::iter::repeat_n(s, c))
                .collect();
            let g = MultiGraph::from_edges(v, &ends);
            if g.valences().iter().all(|&d| d >= 3) && g.is_reduced() {
                found.entry((v, canonical_form(&g))).or_insert(g);
            }
        });
    }
    found.into_values().collect()
}

fn distribute(left: usize, slot: usize, counts: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if slot + 1 == counts.len() {
        counts[slot] = left;
        visit(counts);
        counts[slot] = 0;
        return;
    }
    for c in 0..=left {
        counts[slot] = c;
        distribute(left - c, slot + 1, counts, visit);
    }
    counts[slot] = 0;
}

/// All `k`-subsets of `items`, preserving order.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..items.len() {
            if items.len() - j < k - cur.len() {
                break;
            }
            cur.push(items[j]);
            rec(items, k, j + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `C(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
