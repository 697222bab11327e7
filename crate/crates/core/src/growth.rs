//! Growth experiments over subdivision and sprouting families: dimension
//! tables, exact polynomial fits, generation checks and morphism counts.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::CorpusEntry;
use crate::graph::enumerate::binomial;
use crate::graph::{
    automorphism_count, count_contractions, Contraction, Family, FamilyMember, GraphError,
    MultiGraph, OrderedInjection, OrderedInjectionTuple,
};
use crate::matroid::{first_kl_coefficient, kl_polynomial, os_dimension, rank};
use crate::poly::{MultiPolynomial, Polynomial};
use crate::swiatkowski::uconf_homology;
use crate::{RatMultiPolynomial, RatPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GrowthError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("axis {axis} has {have} values but degree {degree} needs {}", degree + 1)]
    GridTooSmall {
        axis: usize,
        have: usize,
        degree: usize,
    },
    #[error("interpolation point {0:?} has no value")]
    MissingCell(Vec<usize>),
    #[error("empty grid")]
    EmptyGrid,
}

/// A numerical invariant evaluated on each family member.
#[derive(Clone, Debug)]
pub enum Functional {
    /// Rank of `H_i(UConf_n(G); Z)`.
    UconfBetti {
        i: usize,
        n: usize,
    },
    /// Coefficient of `t^i` in the Kazhdan–Lusztig polynomial. The linear
    /// coefficient is read off flat counts.
    KlCoefficient {
        i: usize,
    },
    OsDimension {
        i: usize,
    },
    /// Number of contractions onto a fixed graph.
    HomCount {
        target: Arc<MultiGraph>,
    },
}

impl Functional {
    pub fn name(&self) -> String {
        match self {
            Functional::UconfBetti { i, n } => format!("betti({i},{n})"),
            Functional::KlCoefficient { i } => format!("kl coefficient c_{i}"),
            Functional::OsDimension { i } => format!("os dimension {i}"),
            Functional::HomCount { target } => {
                format!(
                    "hom count to {}v/{}e graph",
                    target.vertex_count(),
                    target.edge_count()
                )
            }
        }
    }

    /// `None` where the invariant is undefined.
    pub fn evaluate(&self, g: &MultiGraph) -> Option<BigInt> {
        match self {
            Functional::UconfBetti { i, n } => uconf_homology(g, *i, *n)
                .ok()
                .map(|h| BigInt::from(h.betti)),
            Functional::KlCoefficient { i } => {
                if *i == 1 && rank(g) >= 3 {
                    first_kl_coefficient(g).ok()
                } else {
                    kl_polynomial(g).ok().map(|p| p.coeff(*i))
                }
            }
            Functional::OsDimension { i } => Some(os_dimension(g, *i)),
            Functional::HomCount { target } => count_contractions(g, target).ok().map(BigInt::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCell {
    pub sizes: Vec<usize>,
    pub value: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub functional: String,
    /// Inclusive range per coordinate.
    pub axes: Vec<(usize, usize)>,
    /// Cells in lexicographic order of sizes.
    pub cells: Vec<GrowthCell>,
}

impl GrowthTable {
    pub fn get(&self, sizes: &[usize]) -> Option<&BigInt> {
        let mut idx = 0;
        for (k, &(lo, hi)) in self.axes.iter().enumerate() {
            if sizes[k] < lo || sizes[k] > hi {
                return None;
            }
            idx = idx * (hi - lo + 1) + (sizes[k] - lo);
        }
        self.cells[idx].value.as_ref()
    }
}

/// All points of a box, lexicographically.
pub fn grid_points(axes: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &(lo, hi) in axes {
        out = out
            .into_iter()
            .flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

pub fn dimension_table(
    functional: &Functional,
    family: &Family,
    axes: &[(usize, usize)],
) -> Result<GrowthTable, GrowthError> {
    if axes.len() != family.arity() {
        return Err(GraphError::InvalidFamily(format!(
            "{} axes for {} sites",
            axes.len(),
            family.arity()
        ))
        .into());
    }
    if axes.iter().any(|&(lo, hi)| lo > hi) {
        return Err(GrowthError::EmptyGrid);
    }
    let cells = grid_points(axes)
        .into_par_iter()
        .map(|sizes| {
            let value = family
                .member(&sizes)
                .ok()
                .and_then(|m| functional.evaluate(&m.graph));
            GrowthCell { sizes, value }
        })
        .collect();
    Ok(GrowthTable {
        functional: functional.name(),
        axes: axes.to_vec(),
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub polynomial: RatMultiPolynomial,
    pub degree: Option<usize>,
    /// Cells where the table and the polynomial differ, with the difference.
    pub residuals: Vec<(Vec<usize>, BigRational)>,
    pub checked_cells: usize,
    /// Least uniform lower corner of a box reaching the top corner on which
    /// every residual vanishes. The box must extend at least one value past
    /// the interpolation nodes on each axis, so that it tests something.
    pub threshold: Option<Vec<usize>>,
}

impl FitReport {
    pub fn exact_everywhere(&self) -> bool {
        self.residuals.is_empty()
    }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// `C(x + c, k)` as a polynomial in `x`.
fn shifted_binomial(c: i64, k: usize) -> RatPolynomial {
    let mut p = RatPolynomial::one();
    let mut fact = BigInt::one();
    for s in 0..k {
        p = &p * &RatPolynomial::linear_root(rat(&BigInt::from(s as i64 - c)));
        fact *= BigInt::from(s + 1);
    }
    p.map(|x| x / rat(&fact))
}

fn mul_univariate(m: &RatMultiPolynomial, var: usize, p: &RatPolynomial) -> RatMultiPolynomial {
    let mut out = MultiPolynomial::zero(m.vars);
    for (exps, c) in &m.terms {
        for (k, a) in p.coeffs().iter().enumerate() {
            let mut e = exps.clone();
            e[var] += k as u32;
            out.add_term(e, c * a);
        }
    }
    out
}

fn bounded_tuples(r: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| {
                let used: usize = p.iter().sum();
                (0..=d - used).map(move |x| [p.clone(), vec![x]].concat())
            })
            .collect();
    }
    out
}

/// Exact Newton interpolation of total degree `≤ degree_cap` through the
/// simplex of cells at the top corner of the grid, then residuals everywhere.
pub fn fit_polynomial(table: &GrowthTable, degree_cap: usize) -> Result<FitReport, GrowthError> {
    let r = table.axes.len();
    for (axis, &(lo, hi)) in table.axes.iter().enumerate() {
        if hi - lo < degree_cap {
            return Err(GrowthError::GridTooSmall {
                axis,
                have: hi - lo + 1,
                degree: degree_cap,
            });
        }
    }
    let top: Vec<usize> = table.axes.iter().map(|a| a.1).collect();
    let value = |p: &[usize]| {
        table
            .get(p)
            .ok_or_else(|| GrowthError::MissingCell(p.to_vec()))
    };
    let mut poly = MultiPolynomial::zero(r);
    for k in bounded_tuples(r, degree_cap) {
        // backward difference ∇^k f(top)
        let mut diff = BigInt::zero();
        for l in grid_points(&k.iter().map(|&x| (0, x)).collect::<Vec<_>>()) {
            let point: Vec<usize> = top.iter().zip(&l).map(|(t, x)| t - x).collect();
            let mut c = value(&point)?.clone();
            for (kj, lj) in k.iter().zip(&l) {
                c *= BigInt::from(binomial(*kj, *lj));
            }
            if l.iter().sum::<usize>() % 2 == 1 {
                c = -c;
            }
            diff += c;
        }
        if diff.is_zero() {
            continue;
        }
        let mut term = MultiPolynomial::zero(r);
        term.add_term(vec![0; r], rat(&diff));
        for j in 0..r {
            let c = k[j] as i64 - 1 - top[j] as i64;
            term = mul_univariate(&term, j, &shifted_binomial(c, k[j]));
        }
        for (e, c) in term.terms {
            poly.add_term(e, c);
        }
    }
    let mut residuals = Vec::new();
    let mut checked = 0;
    for cell in &table.cells {
        let Some(v) = &cell.value else { continue };
        checked += 1;
        let x: Vec<BigRational> = cell.sizes.iter().map(|&s| rat(&BigInt::from(s))).collect();
        let res = rat(v) - poly.eval(&x);
        if !res.is_zero() {
            residuals.push((cell.sizes.clone(), res));
        }
    }
    // a box only counts when every axis has a value beyond the nodes
    let max_shift = table
        .axes
        .iter()
        .map(|a| (a.1 - a.0) as isize - degree_cap as isize - 1)
        .min()
        .unwrap_or(-1);
    let threshold = (0..=max_shift)
        .map(|s| {
            table
                .axes
                .iter()
                .map(|&(lo, _)| lo + s as usize)
                .collect::<Vec<usize>>()
        })
        .find(|corner| {
            !residuals
                .iter()
                .any(|(p, _)| p.iter().zip(corner).all(|(x, c)| x >= c))
        });
    Ok(FitReport {
        degree: poly.total_degree(),
        polynomial: poly,
        residuals,
        checked_cells: checked,
        threshold,
    })
}

/// Convert an integer univariate polynomial to the multivariate type.
pub fn univariate(p: &Polynomial<BigInt>) -> RatMultiPolynomial {
    let mut m = MultiPolynomial::zero(1);
    for (k, c) in p.coeffs().iter().enumerate() {
        m.add_term(vec![k as u32], rat(c));
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationRow {
    pub graph: String,
    pub genus: i64,
    pub edges: usize,
    /// `|G| > g + i`, where every tuple should pull back.
    pub in_hypothesis: bool,
    pub tuples: usize,
    pub stuck_tuples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub i: usize,
    pub rows: Vec<GenerationRow>,
    /// Stuck tuples on graphs inside the hypothesis.
    pub violations: usize,
}

/// For each graph, count ordered `i`-tuples of edges that contain every
/// contractible (non-loop) edge, so that no simple contraction pulls them back.
pub fn check_generation_e(
    i: usize,
    corpus: &[CorpusEntry],
) -> Result<GenerationReport, GrowthError> {
    let rows = corpus
        .par_iter()
        .map(|entry| {
            let g = &entry.graph;
            let genus = g.genus()?;
            let m = g.edge_count();
            let contractible: Vec<usize> = (0..m).filter(|&e| !g.edge(e).is_loop()).collect();
            let mut tuples = 0;
            let mut stuck = 0;
            for t in grid_points(&vec![(0, m.saturating_sub(1)); if m == 0 { 0 } else { i }]) {
                tuples += 1;
                if contractible.iter().all(|e| t.contains(e)) {
                    stuck += 1;
                }
            }
            Ok(GenerationRow {
                graph: entry.id.clone(),
                genus,
                edges: m,
                in_hypothesis: m as i64 > genus + i as i64,
                tuples,
                stuck_tuples: stuck,
            })
        })
        .collect::<Result<Vec<_>, GrowthError>>()?;
    let violations = rows
        .iter()
        .filter(|r| r.in_hypothesis)
        .map(|r| r.stuck_tuples)
        .sum();
    Ok(GenerationReport {
        i,
        rows,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveRow {
    pub graph: String,
    pub morphisms: u128,
    pub automorphisms: u128,
    pub bound: u128,
    pub holds: bool,
}

/// `|Mor(G, G2)|` against `|Aut(G2)| · C(|G|, |G2|)` for each same-genus `G`.
pub fn principal_projective_growth(
    g2: &MultiGraph,
    corpus: &[CorpusEntry],
) -> Result<Vec<ProjectiveRow>, GrowthError> {
    let genus = g2.genus()?;
    let aut = automorphism_count(g2);
    corpus
        .par_iter()
        .filter(|e| e.graph.genus().ok() == Some(genus))
        .map(|entry| {
            let g = &entry.graph;
            let morphisms = count_contractions(g, g2)?;
            let bound = aut * binomial(g.edge_count(), g2.edge_count());
            Ok(ProjectiveRow {
                graph: entry.id.clone(),
                morphisms,
                automorphisms: aut,
                bound,
                holds: morphisms <= bound,
            })
        })
        .collect()
}

/// `φ = ψ ∘ Φ(f)` with `f` a one-step reduction in one coordinate.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub coordinate: usize,
    /// The element of `[n_i]` missed by `f`.
    pub skipped: usize,
    pub step: Contraction,
    pub rest: Contraction,
}

/// Search for a factorization of `φ` (out of the member) through a family
/// morphism given by a non-identity ordered-injection tuple. One-step
/// reductions suffice because every non-identity tuple factors through one.
pub fn factor_through_family(
    family: &Family,
    member: &FamilyMember,
    phi: &Contraction,
) -> Result<Option<Factorization>, GrowthError> {
    if phi.source().as_ref() != member.graph.as_ref() {
        return Err(
            GraphError::InvalidMorphism("contraction does not start at the member".into()).into(),
        );
    }
    let contracted = phi.contracted_edges();
    for coordinate in 0..member.sizes.len() {
        let n = member.sizes[coordinate];
        for skipped in 1..=n {
            let mut maps: Vec<OrderedInjection> = member
                .sizes
                .iter()
                .map(|&m| OrderedInjection::identity(m))
                .collect();
            maps[coordinate] =
                OrderedInjection::new((1..=n).filter(|&x| x != skipped).collect(), n)?;
            let f = OrderedInjectionTuple(maps);
            let smaller = match family.member(&f.domains()) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let step = family.morphism_between(&f, member, &smaller)?;
            if !step
                .contracted_edges()
                .iter()
                .all(|e| contracted.contains(e))
            {
                continue;
            }
            let rest = phi.descend(&step)?;
            return Ok(Some(Factorization {
                coordinate,
                skipped,
                step,
                rest,
            }));
        }
    }
    Ok(None)
}

pub fn factors_nontrivially(
    family: &Family,
    member: &FamilyMember,
    phi: &Contraction,
) -> Result<bool, GrowthError> {
    Ok(factor_through_family(family, member, phi)?.is_some())
}
