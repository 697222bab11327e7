//! The reduced Świątkowski complex of a graph and the homology of unordered
//! configuration spaces it computes.
//!
//! A basis element in bidegree `(i, n)` is a monomial of degree `n - i` in the
//! edges together with `i` distinguished vertices `w`, each carrying a
//! half-edge `h ≠ base(w)` and standing for `h - base(w)`. All other vertices
//! carry `∅`. Tensor factors are ordered by vertex index and half-edge
//! differences have odd degree.

pub mod abrams;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::corpus::CorpusEntry;
use crate::graph::morphism::{contract_edges, EdgeImage};
use crate::graph::planarity::is_planar;
use crate::graph::{Contraction, GraphError, HalfEdge, MultiGraph, Smooshing};
use crate::linalg::{
    homology_auto, invariant_factors, rank, HomologyContext, HomologyError, HomologySummary,
    SparseMatrix,
};

pub use abrams::{abrams_complex, abrams_homology, AbramsComplex};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SwError {
    #[error("the one-point graph is not modelled: its complex misses the H_0 class of UConf_1")]
    PointGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SwBasisElement {
    /// Exponent of each edge.
    pub monomial: Vec<u32>,
    /// Distinguished vertices in increasing order with their half-edges.
    pub distinguished: Vec<(usize, HalfEdge)>,
}

impl SwBasisElement {
    pub fn bidegree(&self) -> (usize, usize) {
        let i = self.distinguished.len();
        (
            i,
            i + self.monomial.iter().map(|&k| k as usize).sum::<usize>(),
        )
    }
}

#[derive(Clone, Debug)]
pub struct SwSlice {
    pub i: usize,
    pub n: usize,
    basis: Vec<SwBasisElement>,
    index: HashMap<SwBasisElement, usize>,
}

impl SwSlice {
    pub fn basis(&self) -> &[SwBasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, x: &SwBasisElement) -> Option<usize> {
        self.index.get(x).copied()
    }
}

/// Least half-edge at each vertex.
fn bases(g: &MultiGraph) -> Vec<Option<HalfEdge>> {
    g.incidence()
        .into_iter()
        .map(|hs| hs.first().copied())
        .collect()
}

fn validate(g: &MultiGraph) -> Result<(), SwError> {
    if g.edge_count() == 0 {
        return Err(SwError::PointGraph);
    }
    if !g.is_connected() {
        return Err(SwError::Disconnected);
    }
    Ok(())
}

/// Exponent vectors of all degree-`d` monomials in `k` variables, in
/// lexicographic order of the sorted variable lists.
fn monomials(k: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, start: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for e in start..k {
            cur[e] += 1;
            rec(k, e, left - 1, cur, out);
            cur[e] -= 1;
        }
    }
    let mut out = Vec::new();
    if k == 0 && d > 0 {
        return out;
    }
    rec(k, 0, d, &mut vec![0; k], &mut out);
    out
}

fn slice_unchecked(g: &MultiGraph, i: usize, n: usize) -> SwSlice {
    let mut basis = Vec::new();
    if i <= n {
        let inc = g.incidence();
        let eligible: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| inc[v].len() >= 2)
            .collect();
        let monos = monomials(g.edge_count(), n - i);
        for w in crate::graph::enumerate::combinations(&eligible, i) {
            let mut choice: Vec<Vec<(usize, HalfEdge)>> = vec![Vec::new()];
            for &v in &w {
                choice = choice
                    .into_iter()
                    .flat_map(|prefix| {
                        inc[v][1..].iter().map(move |&h| {
                            let mut p = prefix.clone();
                            p.push((v, h));
                            p
                        })
                    })
                    .collect();
            }
            for d in choice {
                for m in &monos {
                    basis.push(SwBasisElement {
                        monomial: m.clone(),
                        distinguished: d.clone(),
                    });
                }
            }
        }
    }
    let index = basis
        .iter()
        .enumerate()
        .map(|(k, x)| (x.clone(), k))
        .collect();
    SwSlice { i, n, basis, index }
}

pub fn sw_basis(g: &MultiGraph, i: usize, n: usize) -> Result<SwSlice, SwError> {
    validate(g)?;
    Ok(slice_unchecked(g, i, n))
}

fn differential_between(g: &MultiGraph, src: &SwSlice, dst: &SwSlice) -> SparseMatrix<i64> {
    let base = bases(g);
    let mut triplets = Vec::new();
    for (col, x) in src.basis.iter().enumerate() {
        for (k, &(w, h)) in x.distinguished.iter().enumerate() {
            let b = base[w].expect("distinguished vertex has half-edges");
            if h.edge == b.edge {
                continue;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut rest = x.distinguished.clone();
            rest.remove(k);
            for (edge, coef) in [(h.edge, sign), (b.edge, -sign)] {
                let mut monomial = x.monomial.clone();
                monomial[edge] += 1;
                let y = SwBasisElement {
                    monomial,
                    distinguished: rest.clone(),
                };
                triplets.push((dst.index[&y], col, coef));
            }
        }
    }
    SparseMatrix::from_triplets(dst.len(), src.len(), triplets).expect("unit coefficients")
}

/// Matrix of `∂ : (i, n) → (i - 1, n)`.
pub fn sw_differential(g: &MultiGraph, i: usize, n: usize) -> Result<SparseMatrix<i64>, SwError> {
    validate(g)?;
    let src = slice_unchecked(g, i, n);
    if i == 0 {
        return Ok(SparseMatrix::zeros(0, src.len()));
    }
    let dst = slice_unchecked(g, i - 1, n);
    Ok(differential_between(g, &src, &dst))
}

/// `∂_i` and `∂_{i+1}` around bidegree `(i, n)`.
pub fn sw_differentials(
    g: &MultiGraph,
    i: usize,
    n: usize,
) -> Result<(SparseMatrix<i64>, SparseMatrix<i64>), SwError> {
    Ok((sw_differential(g, i, n)?, sw_differential(g, i + 1, n)?))
}

/// `H_i(UConf_n(G); Z)`.
pub fn uconf_homology(g: &MultiGraph, i: usize, n: usize) -> Result<HomologySummary, SwError> {
    let (d_out, d_in) = sw_differentials(g, i, n)?;
    Ok(homology_auto(&d_out, &d_in)?)
}

/// Homology with cycle representatives, for evaluating maps.
pub fn uconf_homology_context(
    g: &MultiGraph,
    i: usize,
    n: usize,
) -> Result<HomologyContext, SwError> {
    let (d_out, d_in) = sw_differentials(g, i, n)?;
    Ok(HomologyContext::compute_auto(&d_out, &d_in)?)
}

type Chain = HashMap<SwBasisElement, i64>;

/// Pull one basis element back along a morphism with at most one contracted
/// edge (a simple contraction, possibly composed with an isomorphism).
fn pull_simple(phi: &Smooshing, x: &SwBasisElement, out: &mut Chain, coef: i64) {
    let g = phi.source();
    let gt = phi.target();
    let pre_edge = phi.edge_preimages();
    let base = bases(g);
    let base_t = bases(gt);
    let contracted = phi.contracted_edges();
    let lift = |h: HalfEdge| -> HalfEdge {
        let e = pre_edge[h.edge];
        let rev = matches!(phi.map_edge(e), EdgeImage::Edge { reversed: true, .. });
        HalfEdge {
            edge: e,
            side: h.side ^ rev as u8,
        }
    };
    let mut monomial = vec![0u32; g.edge_count()];
    for (e, &k) in x.monomial.iter().enumerate() {
        monomial[pre_edge[e]] = k;
    }
    // `[h - anchor]` written in the base basis at v(h), as signed terms
    let anchored =
        |h: HalfEdge, anchor: HalfEdge, sign: i64, terms: &mut Vec<(i64, usize, HalfEdge)>| {
            let v = g.vertex_of(h);
            let b = base[v].expect("vertex with half-edges");
            if h != b {
                terms.push((sign, v, h));
            }
            if anchor != b {
                terms.push((-sign, v, anchor));
            }
        };
    // each distinguished factor becomes a sum of single-vertex terms
    let mut factors: Vec<Vec<(i64, usize, HalfEdge)>> = Vec::new();
    for &(w, h) in &x.distinguished {
        let (hh, bb) = (lift(h), lift(base_t[w].expect("vertex with half-edges")));
        let mut terms = Vec::new();
        let anchor_of = |k: HalfEdge| -> HalfEdge {
            let v = g.vertex_of(k);
            match contracted.first() {
                Some(&c) if g.edge(c).ends.contains(&v) && phi.map_vertex(v) == w => {
                    let side = if g.edge(c).ends[0] == v { 0 } else { 1 };
                    HalfEdge { edge: c, side }
                }
                _ => base[v].expect("vertex with half-edges"),
            }
        };
        anchored(hh, anchor_of(hh), 1, &mut terms);
        anchored(bb, anchor_of(bb), -1, &mut terms);
        // collect like terms
        let mut merged: Vec<(i64, usize, HalfEdge)> = Vec::new();
        for t in terms {
            match merged.iter_mut().find(|m| m.1 == t.1 && m.2 == t.2) {
                Some(m) => m.0 += t.0,
                None => merged.push(t),
            }
        }
        merged.retain(|m| m.0 != 0);
        if merged.is_empty() {
            return;
        }
        factors.push(merged);
    }
    let mut pick = vec![0usize; factors.len()];
    loop {
        let mut c = coef;
        let mut dist: Vec<(usize, HalfEdge)> = Vec::with_capacity(factors.len());
        for (f, &p) in factors.iter().zip(&pick) {
            let (s, v, h) = f[p];
            c *= s;
            dist.push((v, h));
        }
        // Koszul sign of sorting the odd factors into vertex order
        let mut inversions = 0;
        for a in 0..dist.len() {
            for b in a + 1..dist.len() {
                if dist[a].0 > dist[b].0 {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 1 {
            c = -c;
        }
        dist.sort_unstable();
        let y = SwBasisElement {
            monomial: monomial.clone(),
            distinguished: dist,
        };
        let slot = out.entry(y).or_insert(0);
        *slot += c;
        // next combination
        let mut k = 0;
        while k < pick.len() {
            pick[k] += 1;
            if pick[k] < factors[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if k == pick.len() {
            break;
        }
    }
}

/// Factor a contraction into single-edge steps, contracting edges in `order`.
pub fn simple_factorization(phi: &Contraction, order: &[usize]) -> Result<Vec<Smooshing>, SwError> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != phi.contracted_edges() {
        return Err(
            GraphError::InvalidMorphism("order must list the contracted edges".into()).into(),
        );
    }
    let g = phi.source().clone();
    if order.is_empty() {
        return Ok(vec![phi.as_smooshing().clone()]);
    }
    let mut steps = Vec::new();
    let mut cur: Arc<MultiGraph> = g.clone();
    // position of every original edge and vertex in the current graph
    let mut edge_pos: Vec<Option<usize>> = (0..g.edge_count()).map(Some).collect();
    let mut vertex_pos: Vec<usize> = (0..g.vertex_count()).collect();
    for &e in &order[..order.len() - 1] {
        let step = contract_edges(&cur, &[edge_pos[e].expect("not yet contracted")])?;
        for p in edge_pos.iter_mut() {
            *p = p.and_then(|x| step.map_edge(x).edge());
        }
        for v in vertex_pos.iter_mut() {
            *v = step.map_vertex(*v);
        }
        cur = step.target().clone();
        steps.push(step.into_smooshing());
    }
    let mut vertex_map = vec![0; cur.vertex_count()];
    for (v, &p) in vertex_pos.iter().enumerate() {
        vertex_map[p] = phi.map_vertex(v);
    }
    let mut edge_map = vec![EdgeImage::Contracted; cur.edge_count()];
    for (e, p) in edge_pos.iter().enumerate() {
        if let Some(p) = p {
            edge_map[*p] = phi.map_edge(e);
        }
    }
    steps.push(Smooshing::new(
        cur,
        phi.target().clone(),
        vertex_map,
        edge_map,
    )?);
    Ok(steps)
}

/// Matrix of `φ̃* : S̃(target)_{i,n} → S̃(source)_{i,n}`, contracting edges
/// in the given order.
pub fn sw_chain_map_with_order(
    phi: &Contraction,
    order: &[usize],
    i: usize,
    n: usize,
) -> Result<SparseMatrix<i64>, SwError> {
    validate(phi.source())?;
    validate(phi.target())?;
    let steps = simple_factorization(phi, order)?;
    let src = slice_unchecked(phi.source(), i, n);
    let tgt = slice_unchecked(phi.target(), i, n);
    let mut triplets = Vec::new();
    for (col, x) in tgt.basis.iter().enumerate() {
        let mut chain: Chain = HashMap::from([(x.clone(), 1)]);
        for step in steps.iter().rev() {
            let mut next = Chain::new();
            for (y, c) in chain {
                pull_simple(step, &y, &mut next, c);
            }
            next.retain(|_, c| *c != 0);
            chain = next;
        }
        for (y, c) in chain {
            triplets.push((src.index[&y], col, c));
        }
    }
    Ok(SparseMatrix::from_triplets(src.len(), tgt.len(), triplets).expect("small coefficients"))
}

/// [`sw_chain_map_with_order`] with edges contracted in increasing order.
pub fn sw_chain_map(phi: &Contraction, i: usize, n: usize) -> Result<SparseMatrix<i64>, SwError> {
    sw_chain_map_with_order(phi, &phi.contracted_edges(), i, n)
}

/// How the pullbacks along simple contractions `G → G/e` sit inside `H_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub contractions: usize,
    pub image_vectors: usize,
    pub rational: bool,
    pub integral_mod_torsion: bool,
    pub integral: bool,
}

impl SpanReport {
    pub fn spans(&self) -> bool {
        self.rational && self.integral_mod_torsion
    }
}

pub fn pullback_report(g: &MultiGraph, i: usize, n: usize) -> Result<SpanReport, SwError> {
    if g.edge_count() < 2 {
        return Err(SwError::Graph(GraphError::InvalidMorphism(
            "need at least two edges".into(),
        )));
    }
    let ga = Arc::new(g.clone());
    let ctx = uconf_homology_context(g, i, n)?;
    let s = ctx.summary().clone();
    let t = s.torsion.len();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    let mut contractions = 0;
    for e in 0..g.edge_count() {
        if g.edge(e).is_loop() {
            continue;
        }
        contractions += 1;
        let phi = contract_edges(&ga, &[e])?;
        let sub = uconf_homology_context(phi.target(), i, n)?;
        if sub.generator_count() == 0 {
            continue;
        }
        let m = sw_chain_map(&phi, i, n)?.to_big();
        for j in 0..sub.generator_count() {
            let z = m
                .mul_vec(&sub.generator(j))
                .expect("BigInt never overflows");
            let c = ctx.classify(&z)?;
            if c.iter().any(|x| !x.is_zero()) {
                columns.push(c);
            }
        }
    }
    let rows = t + s.betti;
    let mut free = SparseMatrix::<BigInt>::zeros(s.betti, columns.len());
    let mut full = SparseMatrix::<BigInt>::zeros(rows, columns.len() + t);
    for (j, c) in columns.iter().enumerate() {
        for (r, x) in c.iter().enumerate() {
            full.set(r, j, x.clone());
            if r >= t {
                free.set(r - t, j, x.clone());
            }
        }
    }
    for (k, d) in s.torsion.iter().enumerate() {
        full.set(k, columns.len() + k, d.clone());
    }
    let rk = rank(&free).map_err(HomologyError::from)?;
    let free_factors = invariant_factors(&free).map_err(HomologyError::from)?;
    let full_factors = invariant_factors(&full).map_err(HomologyError::from)?;
    Ok(SpanReport {
        betti: s.betti,
        torsion: s.torsion,
        contractions,
        image_vectors: columns.len(),
        rational: rk == s.betti,
        integral_mod_torsion: free_factors.len() == s.betti && free_factors.iter().all(One::is_one),
        integral: full_factors.len() == rows && full_factors.iter().all(One::is_one),
    })
}

/// True when pullbacks along simple contractions span `H_i(UConf_n(G))`
/// rationally and integrally modulo torsion.
pub fn pullback_spans(g: &MultiGraph, i: usize, n: usize) -> Result<bool, SwError> {
    Ok(pullback_report(g, i, n)?.spans())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionRow {
    pub graph: String,
    pub genus: i64,
    pub planar: bool,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionExponent {
    pub genus: i64,
    pub i: usize,
    pub n: usize,
    /// Least common multiple of all torsion invariant factors seen.
    pub exponent: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub rows: Vec<TorsionRow>,
    pub exponents: Vec<TorsionExponent>,
}

pub fn torsion_scan(corpus: &[CorpusEntry], i: usize, n: usize) -> Result<TorsionReport, SwError> {
    use rayon::prelude::*;
    let rows = corpus
        .par_iter()
        .map(|entry| {
            let h = uconf_homology(&entry.graph, i, n)?;
            Ok(TorsionRow {
                graph: entry.id.clone(),
                genus: entry.graph.genus()?,
                planar: is_planar(&entry.graph),
                betti: h.betti,
                torsion: h.torsion,
            })
        })
        .collect::<Result<Vec<_>, SwError>>()?;
    let mut by_genus: std::collections::BTreeMap<i64, BigInt> = Default::default();
    for r in &rows {
        let e = by_genus.entry(r.genus).or_insert_with(BigInt::one);
        for d in &r.torsion {
            *e = e.lcm(d);
        }
    }
    let exponents = by_genus
        .into_iter()
        .map(|(genus, exponent)| TorsionExponent {
            genus,
            i,
            n,
            exponent,
        })
        .collect();
    Ok(TorsionReport { rows, exponents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::enumerate::binomial;

    #[test]
    fn slice_sizes() {
        let y = corpus::star(3);
        assert_eq!(sw_basis(&y, 1, 2).unwrap().len(), 6);
        let c = corpus::cycle(4);
        for n in 0..4 {
            assert_eq!(
                sw_basis(&c, 0, n).unwrap().len() as u128,
                binomial(n + 3, n)
            );
        }
        assert!(sw_basis(&c, 3, 2).unwrap().is_empty());
        assert_eq!(
            sw_basis(&MultiGraph::point(), 0, 0).unwrap_err(),
            SwError::PointGraph
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s4 = corpus::star(4);
        let d3 = sw_differential(&s4, 3, 3).unwrap();
        let d2 = sw_differential(&s4, 2, 3).unwrap();
        assert!(d2.mul(&d3).unwrap().is_zero());
        assert!(sw_differential(&s4, 0, 2).unwrap().is_zero());
    }

    #[test]
    fn small_homology() {
        let y = corpus::star(3);
        let h = uconf_homology(&y, 1, 2).unwrap();
        assert_eq!((h.betti, h.torsion.len()), (1, 0));
        let c = corpus::cycle(5);
        assert_eq!(uconf_homology(&c, 0, 1).unwrap().betti, 1);
        assert_eq!(uconf_homology(&c, 1, 1).unwrap().betti, 1);
    }

    #[test]
    fn identity_chain_map() {
        let g = Arc::new(corpus::theta(&[1, 2, 2]));
        let id = Contraction::identity(g.clone());
        let m = sw_chain_map(&id, 1, 2).unwrap();
        assert_eq!(m, SparseMatrix::identity(m.nrows()));
    }
}
