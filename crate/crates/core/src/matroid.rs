//! Graphic matroids: flats, characteristic polynomials, Orlik–Solomon
//! dimensions and Kazhdan–Lusztig polynomials.
//!
//! Flats are vertex partitions into connected blocks. The interval below a
//! flat is the product of the lattices of its blocks, so Möbius values and
//! characteristic polynomials of restrictions factor over blocks and are
//! memoized per isomorphism class of block.

use std::collections::{BTreeSet, HashMap};
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{canonical_form, CanonicalForm, MultiGraph};

pub use crate::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("graph has a loop")]
    Loop,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rank {0} is below 3, so the linear coefficient is forced to vanish")]
    RankTooSmall(usize),
    #[error("Kazhdan–Lusztig recursion is inconsistent for this graph")]
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    pub rank: usize,
    pub edges: Vec<usize>,
    /// Blocks of the vertex partition, each sorted, ordered by least vertex.
    pub blocks: Vec<Vec<usize>>,
    pub corank: usize,
}

fn neighbours(g: &MultiGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![BTreeSet::new(); g.vertex_count()];
    for e in g.edges() {
        let [a, b] = e.ends;
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    adj.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Connected vertex sets containing `v` inside the `free` vertices.
fn connected_sets_from(adj: &[Vec<usize>], v: usize, free: &[bool]) -> Vec<Vec<usize>> {
    fn rec(
        adj: &[Vec<usize>],
        free: &[bool],
        set: &mut Vec<usize>,
        ext: Vec<usize>,
        taken: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(set.clone());
        let mut banned: Vec<usize> = Vec::new();
        for (k, &x) in ext.iter().enumerate() {
            // include x, exclude ext[..k]
            taken[x] = true;
            set.push(x);
            let mut next: Vec<usize> = ext[k + 1..].to_vec();
            for &y in &adj[x] {
                if free[y] && !taken[y] && !ext.contains(&y) && !next.contains(&y) {
                    next.push(y);
                }
            }
            rec(adj, free, set, next, taken, out);
            set.pop();
            // x stays marked as taken while later branches run, which bans it
            banned.push(x);
        }
        for x in banned {
            taken[x] = false;
        }
    }
    let mut taken = vec![false; free.len()];
    taken[v] = true;
    let ext: Vec<usize> = adj[v].iter().copied().filter(|&y| free[y]).collect();
    let mut out = Vec::new();
    rec(adj, free, &mut vec![v], ext, &mut taken, &mut out);
    for s in out.iter_mut() {
        s.sort_unstable();
    }
    out
}

/// Partitions of the vertex set into blocks inducing connected subgraphs.
pub fn connected_partitions(g: &MultiGraph) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        adj: &[Vec<usize>],
        free: &mut Vec<bool>,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some(v) = free.iter().position(|&f| f) else {
            out.push(cur.clone());
            return;
        };
        for block in connected_sets_from(adj, v, free) {
            for &x in &block {
                free[x] = false;
            }
            cur.push(block);
            rec(adj, free, cur, out);
            let block = cur.pop().expect("pushed above");
            for x in block {
                free[x] = true;
            }
        }
    }
    let adj = neighbours(g);
    let mut out = Vec::new();
    rec(
        &adj,
        &mut vec![true; g.vertex_count()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// All flats, sorted by rank and then edge set.
pub fn flats(g: &MultiGraph) -> Vec<Flat> {
    let components = g.component_count();
    let mut out: Vec<Flat> = connected_partitions(g)
        .into_iter()
        .map(|blocks| {
            let mut label = vec![0; g.vertex_count()];
            for (k, b) in blocks.iter().enumerate() {
                for &v in b {
                    label[v] = k;
                }
            }
            let edges = (0..g.edge_count())
                .filter(|&e| label[g.edge(e).ends[0]] == label[g.edge(e).ends[1]])
                .collect();
            Flat {
                rank: g.vertex_count() - blocks.len(),
                edges,
                corank: blocks.len() - components,
                blocks,
            }
        })
        .collect();
    out.sort();
    out
}

/// Rank of the graphic matroid: vertices minus components.
pub fn rank(g: &MultiGraph) -> usize {
    g.vertex_count() - g.component_count()
}

/// Loops removed and parallel classes collapsed; same lattice of flats.
pub fn simplify(g: &MultiGraph) -> MultiGraph {
    let pairs: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])))
        .collect();
    MultiGraph::from_edges(g.vertex_count(), &pairs.into_iter().collect::<Vec<_>>())
}

fn induced(g: &MultiGraph, block: &[usize]) -> MultiGraph {
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (k, &v) in block.iter().enumerate() {
        pos[v] = k;
    }
    let ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| pos[e.ends[0]] != usize::MAX && pos[e.ends[1]] != usize::MAX && !e.is_loop())
        .map(|e| (pos[e.ends[0]], pos[e.ends[1]]))
        .collect();
    simplify(&MultiGraph::from_edges(block.len(), &ends))
}

fn quotient(g: &MultiGraph, flat: &Flat) -> MultiGraph {
    let mut label = vec![0; g.vertex_count()];
    for (k, b) in flat.blocks.iter().enumerate() {
        for &v in b {
            label[v] = k;
        }
    }
    let ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (label[e.ends[0]], label[e.ends[1]]))
        .filter(|(a, b)| a != b)
        .collect();
    simplify(&MultiGraph::from_edges(flat.blocks.len(), &ends))
}

type Cache = LazyLock<RwLock<HashMap<CanonicalForm, IntPolynomial>>>;
static CHI_CACHE: Cache = LazyLock::new(Default::default);
static KL_CACHE: Cache = LazyLock::new(Default::default);

fn cached(
    cache: &Cache,
    key: &CanonicalForm,
    compute: impl FnOnce() -> IntPolynomial,
) -> IntPolynomial {
    if let Some(p) = cache.read().get(key) {
        return p.clone();
    }
    let p = compute();
    cache.write().entry(key.clone()).or_insert(p).clone()
}

/// χ of each distinct block appearing in `flats`, keyed by vertex list.
fn block_chis(g: &MultiGraph, flats: &[Flat]) -> HashMap<Vec<usize>, IntPolynomial> {
    let distinct: BTreeSet<&Vec<usize>> = flats
        .iter()
        .flat_map(|f| f.blocks.iter())
        .filter(|b| b.len() > 1)
        .collect();
    distinct
        .into_par_iter()
        .map(|b| (b.clone(), chi_simple_connected(&induced(g, b))))
        .collect()
}

fn restriction_chi(flat: &Flat, chis: &HashMap<Vec<usize>, IntPolynomial>) -> IntPolynomial {
    flat.blocks
        .iter()
        .filter(|b| b.len() > 1)
        .fold(IntPolynomial::one(), |acc, b| &acc * &chis[b])
}

/// χ of a connected simple graph by Möbius summation over its flats.
fn chi_simple_connected(h: &MultiGraph) -> IntPolynomial {
    if h.vertex_count() == 1 {
        return IntPolynomial::one();
    }
    cached(&CHI_CACHE, &canonical_form(h), || {
        let fl = flats(h);
        let r = h.vertex_count() - 1;
        let proper: Vec<Flat> = fl.into_iter().filter(|f| f.rank < r).collect();
        let chis = block_chis(h, &proper);
        let mut coeffs = vec![BigInt::zero(); r + 1];
        let mut total = BigInt::zero();
        for f in &proper {
            // μ(∅, F) = χ_{M|F}(0)
            let mu = restriction_chi(f, &chis).coeff(0);
            coeffs[r - f.rank] += &mu;
            total += mu;
        }
        coeffs[0] -= total;
        IntPolynomial::new(coeffs)
    })
}

/// Characteristic polynomial of the graphic matroid; zero when there is a
/// loop. Parallel edges do not matter.
pub fn characteristic_polynomial(g: &MultiGraph) -> IntPolynomial {
    if g.has_loop() {
        return IntPolynomial::zero();
    }
    let comp = g.components();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); g.component_count()];
    for (v, &c) in comp.iter().enumerate() {
        blocks[c].push(v);
    }
    blocks.iter().fold(IntPolynomial::one(), |acc, b| {
        &acc * &chi_simple_connected(&induced(g, b))
    })
}

/// Dimension of the degree-`i` part of the Orlik–Solomon algebra. Loops map
/// to zero there, so they are deleted first.
pub fn os_dimension(g: &MultiGraph, i: usize) -> BigInt {
    let loopless = simplify(g);
    let chi = characteristic_polynomial(&loopless);
    let r = rank(&loopless);
    if i > r {
        return BigInt::zero();
    }
    chi.coeff(r - i).abs()
}

fn kl_simple_connected(h: &MultiGraph) -> Result<IntPolynomial, MatroidError> {
    let r = h.vertex_count() - 1;
    if r <= 1 {
        return Ok(IntPolynomial::one());
    }
    let key = canonical_form(h);
    if let Some(p) = KL_CACHE.read().get(&key) {
        return Ok(p.clone());
    }
    let fl: Vec<Flat> = flats(h).into_iter().filter(|f| f.rank > 0).collect();
    let chis = block_chis(h, &fl);
    let terms: Vec<IntPolynomial> = fl
        .par_iter()
        .map(|f| Ok(&restriction_chi(f, &chis) * &kl_simple_connected(&quotient(h, f))?))
        .collect::<Result<_, MatroidError>>()?;
    let rhs = terms.iter().fold(IntPolynomial::zero(), |acc, t| &acc + t);
    let p = IntPolynomial::new(
        (0..r)
            .filter(|&k| 2 * k < r)
            .map(|k| -rhs.coeff(k))
            .collect(),
    );
    // the upper half of the identity is a consistency check
    if &p.reverse(r) - &p != rhs {
        return Err(MatroidError::Inconsistent);
    }
    Ok(KL_CACHE.write().entry(key).or_insert(p).clone())
}

/// Kazhdan–Lusztig polynomial of the graphic matroid of a connected,
/// loop-free graph.
pub fn kl_polynomial(g: &MultiGraph) -> Result<IntPolynomial, MatroidError> {
    if g.has_loop() {
        return Err(MatroidError::Loop);
    }
    if !g.is_connected() {
        return Err(MatroidError::Disconnected);
    }
    kl_simple_connected(&simplify(g))
}

/// Number of corank-1 flats minus number of rank-1 flats.
pub fn first_kl_coefficient(g: &MultiGraph) -> Result<BigInt, MatroidError> {
    if g.has_loop() {
        return Err(MatroidError::Loop);
    }
    if !g.is_connected() {
        return Err(MatroidError::Disconnected);
    }
    let r = rank(g);
    if r < 3 {
        return Err(MatroidError::RankTooSmall(r));
    }
    let fl = flats(g);
    let corank1 = fl.iter().filter(|f| f.corank == 1).count();
    let rank1 = fl.iter().filter(|f| f.rank == 1).count();
    Ok(BigInt::from(corank1) - BigInt::from(rank1))
}

/// Number of flats of each rank.
pub fn whitney_second_kind(g: &MultiGraph) -> Vec<usize> {
    let mut w = vec![0; rank(g) + 1];
    for f in flats(g) {
        w[f.rank] += 1;
    }
    w
}

pub fn to_i64_coeffs(p: &IntPolynomial) -> Option<Vec<i64>> {
    p.coeffs().iter().map(ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn coeffs(p: &IntPolynomial) -> Vec<i64> {
        to_i64_coeffs(p).unwrap()
    }

    #[test]
    fn small_lattices() {
        assert_eq!(flats(&corpus::cycle(3)).len(), 5);
        assert_eq!(flats(&corpus::rose(2)).len(), 1);
        assert_eq!(flats(&corpus::star(4)).len(), 16);
        assert_eq!(flats(&corpus::complete(4)).len(), 15);
    }

    #[test]
    fn characteristic() {
        assert_eq!(
            coeffs(&characteristic_polynomial(&corpus::cycle(3))),
            vec![2, -3, 1]
        );
        assert_eq!(
            coeffs(&characteristic_polynomial(&corpus::path(3))),
            vec![-1, 3, -3, 1]
        );
        assert!(characteristic_polynomial(&corpus::rose(1)).is_zero());
        assert_eq!(
            coeffs(&characteristic_polynomial(&corpus::melon())),
            vec![-1, 1]
        );
    }

    #[test]
    fn orlik_solomon() {
        let c3 = corpus::cycle(3);
        let dims: Vec<BigInt> = (0..3).map(|i| os_dimension(&c3, i)).collect();
        assert_eq!(dims, vec![1.into(), 3.into(), 2.into()]);
        assert_eq!(os_dimension(&corpus::melon(), 1), 1.into());
        assert_eq!(os_dimension(&corpus::rose(1), 1), 0.into());
        assert_eq!(os_dimension(&corpus::rose(1), 0), 1.into());
    }

    #[test]
    fn kazhdan_lusztig() {
        assert_eq!(
            coeffs(&kl_polynomial(&corpus::cycle(5)).unwrap()),
            vec![1, 5]
        );
        assert_eq!(coeffs(&kl_polynomial(&corpus::path(4)).unwrap()), vec![1]);
        assert_eq!(kl_polynomial(&corpus::rose(1)), Err(MatroidError::Loop));
        assert_eq!(first_kl_coefficient(&corpus::cycle(5)).unwrap(), 5.into());
        assert_eq!(
            first_kl_coefficient(&corpus::theta(&[2, 2, 2])).unwrap(),
            5.into()
        );
        assert_eq!(
            first_kl_coefficient(&corpus::cycle(3)),
            Err(MatroidError::RankTooSmall(2))
        );
    }
}
