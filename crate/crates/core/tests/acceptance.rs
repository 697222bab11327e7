//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use graphcat::corpus::{self, acceptance_corpus, CorpusEntry};
use graphcat::graph::morphism::contract_edges;
use graphcat::graph::planarity::is_planar;
use graphcat::graph::{
    automorphism_count, count_contractions, enumerate_contractions, enumerate_reduced_graphs,
    subdivide, DirectedEdge, Family,
};
use graphcat::growth::{
    check_generation_e, dimension_table, fit_polynomial, principal_projective_growth, Functional,
};
use graphcat::linalg::smith_normal_form;
use graphcat::matroid::{first_kl_coefficient, kl_polynomial, rank};
use graphcat::poly::MultiPolynomial;
use graphcat::swiatkowski::abrams::abrams_homology;
use graphcat::swiatkowski::{
    pullback_report, sw_chain_map, sw_chain_map_with_order, sw_differential, uconf_homology,
};
use graphcat::trees::{duality_check, relative_labeling_check, rigid::extra_labels_check};
use graphcat::{MultiGraph, RatMultiPolynomial, SparseMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Check = Result<String, String>;

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    r
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_up_to(max_edges: usize) -> Vec<CorpusEntry> {
    acceptance_corpus()
        .into_iter()
        .filter(|e| e.graph.edge_count() <= max_edges)
        .collect()
}

fn genus(g: &MultiGraph) -> usize {
    g.genus().expect("corpus graphs are connected") as usize
}

// 1
fn cycle_kl() -> Check {
    let mut checked = 0;
    for n in 4..=12i64 {
        let p = kl_polynomial(&corpus::cycle(n as usize)).map_err(|e| e.to_string())?;
        for i in 1..=2i64 {
            let expected = binom(n - i - 2, i) * binom(n, i) / BigInt::from(i + 1);
            ensure(p.coeff(i as usize) == expected, || {
                format!(
                    "C{n}: [t^{i}] = {} but formula gives {expected}",
                    p.coeff(i as usize)
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} coefficients"))
}

fn tuples(len: usize, values: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat()))
            .collect();
    }
    out
}

// 2
fn theta_first_coefficient() -> Check {
    let mut checked = 0;
    for g in [2, 3] {
        for a in tuples(g + 1, &[2, 3, 4]) {
            let prod: i64 = a.iter().map(|&x| x as i64).product();
            let pairs: BigInt = a.iter().map(|&x| binom(x as i64, 2)).sum();
            let sum: i64 = a.iter().map(|&x| x as i64).sum();
            let expected = BigInt::from(prod) + pairs - BigInt::from(sum);
            let got = first_kl_coefficient(&corpus::theta(&a)).map_err(|e| e.to_string())?;
            ensure(got == expected, || {
                format!("theta {a:?}: {got} vs {expected}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} theta graphs"))
}

fn connected_within(g: &MultiGraph, keep: &[bool]) -> bool {
    let n = g.vertex_count();
    let Some(start) = (0..n).find(|&v| keep[v]) else {
        return false;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in g.edges() {
            let [a, b] = e.ends;
            for (x, y) in [(a, b), (b, a)] {
                if x == v && keep[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    (0..n).all(|v| !keep[v] || seen[v])
}

/// Hyperplanes of a connected graphic matroid are complements of bonds,
/// i.e. splits of the vertex set into two connected sides.
fn hyperplane_count(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    (0u64..1 << (n - 1))
        .filter(|mask| {
            // vertex n-1 always on the "in" side
            let side: Vec<bool> = (0..n).map(|v| v == n - 1 || mask >> v & 1 == 1).collect();
            let other: Vec<bool> = side.iter().map(|s| !s).collect();
            other.iter().any(|&x| x) && connected_within(g, &side) && connected_within(g, &other)
        })
        .count()
}

fn parallel_class_count(g: &MultiGraph) -> usize {
    g.edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])))
        .collect::<BTreeSet<_>>()
        .len()
}

// 3
fn recursion_vs_flats() -> Check {
    let entries: Vec<CorpusEntry> = acceptance_corpus()
        .into_iter()
        .filter(|e| !e.graph.has_loop() && rank(&e.graph) >= 3)
        .collect();
    let failures: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let c1 = kl_polynomial(&e.graph).map(|p| p.coeff(1));
            let expected = BigInt::from(
                hyperplane_count(&e.graph) as i64 - parallel_class_count(&e.graph) as i64,
            );
            match c1 {
                Ok(c) if c == expected => None,
                other => Some(format!("{}: {other:?} vs {expected}", e.id)),
            }
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} loop-free graphs of rank >= 3", entries.len()))
}

// 4
fn oracle_equivalence() -> Check {
    let entries = corpus_up_to(8);
    let cases: Vec<(usize, usize, usize)> = (0..entries.len())
        .flat_map(|k| (1..=3).flat_map(move |n| (0..=2).map(move |i| (k, i, n))))
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(k, i, n)| {
            let g = &entries[k].graph;
            let a = uconf_homology(g, i, n).map_err(|e| e.to_string());
            let b = abrams_homology(g, i, n).map_err(|e| e.to_string());
            match (a, b) {
                (Ok(a), Ok(b)) if a.betti == b.betti && a.torsion == b.torsion => None,
                (a, b) => Some(format!("{} (i={i}, n={n}): {a:?} vs {b:?}", entries[k].id)),
            }
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "{} graphs, {} (graph, i, n) cases",
        entries.len(),
        cases.len()
    ))
}

/// Case name, non-planarity, torsion of H_1.
type TorsionRow = (String, bool, Vec<BigInt>);

// 5
fn torsion_planarity() -> Check {
    let entries = acceptance_corpus();
    let nonplanar: BTreeSet<String> = entries
        .iter()
        .filter(|e| !is_planar(&e.graph))
        .map(|e| e.id.clone())
        .collect();
    ensure(
        nonplanar == BTreeSet::from(["K3_3".to_string(), "K5".to_string()]),
        || format!("unexpected non-planar set {nonplanar:?}"),
    )?;
    let cases: Vec<(usize, usize)> = (0..entries.len()).flat_map(|k| [(k, 2), (k, 3)]).collect();
    let rows: Vec<Result<TorsionRow, String>> = cases
        .par_iter()
        .map(|&(k, n)| {
            let e = &entries[k];
            let h = uconf_homology(&e.graph, 1, n).map_err(|x| x.to_string())?;
            Ok((
                format!("{} n={n}", e.id),
                nonplanar.contains(&e.id),
                h.torsion,
            ))
        })
        .collect();
    let mut torsion_seen = 0;
    for row in rows {
        let (id, np, torsion) = row?;
        if np {
            ensure(torsion.contains(&BigInt::from(2)), || {
                format!("{id}: no Z/2 in {torsion:?}")
            })?;
            torsion_seen += 1;
        } else {
            ensure(torsion.is_empty(), || {
                format!("{id} is planar but has torsion {torsion:?}")
            })?;
        }
        ensure(torsion.iter().all(|d| *d == BigInt::from(2)), || {
            format!("{id}: torsion factors {torsion:?}")
        })?;
    }
    Ok(format!(
        "{} (graph, n) cases, {torsion_seen} with 2-torsion",
        cases.len()
    ))
}

fn mul(a: &SparseMatrix<i64>, b: &SparseMatrix<i64>) -> SparseMatrix<BigInt> {
    a.to_big()
        .mul(&b.to_big())
        .expect("big integers do not overflow")
}

const CHAIN_DEGREES: [(usize, usize); 4] = [(1, 2), (2, 2), (1, 3), (2, 3)];

// 6
fn differential_and_functoriality() -> Check {
    let entries = acceptance_corpus();
    // boundary squares to zero everywhere in the corpus
    let square_failures: Vec<String> = entries
        .par_iter()
        .flat_map(|e| {
            (1..=3)
                .flat_map(|n| (1..n).map(move |i| (i, n)))
                .filter_map(|(i, n)| {
                    let d1 = sw_differential(&e.graph, i, n).ok()?;
                    let d2 = sw_differential(&e.graph, i + 1, n).ok()?;
                    (!mul(&d1, &d2).is_zero()).then(|| format!("{} d^2 at ({i},{n})", e.id))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    ensure(square_failures.is_empty(), || square_failures.join("; "))?;
    // contractions between corpus graphs of equal genus
    let small: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| (1..=6).contains(&e.graph.edge_count()))
        .collect();
    let mut pairs = Vec::new();
    for a in &small {
        for b in &small {
            if genus(&a.graph) == genus(&b.graph) && b.graph.edge_count() <= a.graph.edge_count() {
                pairs.push((*a, *b));
            }
        }
    }
    let results: Vec<Result<usize, String>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let ga = Arc::new(a.graph.clone());
            let gb = Arc::new(b.graph.clone());
            let phis = enumerate_contractions(&ga, &gb).map_err(|e| e.to_string())?;
            // a single edge would contract to the point, which has no complex
            let simple: Vec<_> = (0..gb.edge_count())
                .filter(|&e| gb.edge_count() > 1 && !gb.edge(e).is_loop())
                .map(|e| contract_edges(&gb, &[e]).unwrap())
                .collect();
            let mut checked = 0;
            for phi in &phis {
                for &(i, n) in &CHAIN_DEGREES {
                    let tag = || format!("{} -> {} at ({i},{n})", a.id, b.id);
                    let m = sw_chain_map(phi, i, n).map_err(|e| e.to_string())?;
                    let m_lower = sw_chain_map(phi, i - 1, n).map_err(|e| e.to_string())?;
                    let d_src = sw_differential(&ga, i, n).map_err(|e| e.to_string())?;
                    let d_tgt = sw_differential(&gb, i, n).map_err(|e| e.to_string())?;
                    ensure(mul(&d_src, &m) == mul(&m_lower, &d_tgt), || {
                        format!("{}: not a chain map", tag())
                    })?;
                    let mut order = phi.contracted_edges();
                    order.reverse();
                    let m_rev =
                        sw_chain_map_with_order(phi, &order, i, n).map_err(|e| e.to_string())?;
                    ensure(m_rev == m, || {
                        format!("{}: depends on contraction order", tag())
                    })?;
                    if order.len() > 2 {
                        order.rotate_left(1);
                        let m_rot = sw_chain_map_with_order(phi, &order, i, n)
                            .map_err(|e| e.to_string())?;
                        ensure(m_rot == m, || {
                            format!("{}: depends on contraction order", tag())
                        })?;
                    }
                    for psi in &simple {
                        let comp = psi.compose(phi).map_err(|e| e.to_string())?;
                        let lhs = sw_chain_map(&comp, i, n).map_err(|e| e.to_string())?;
                        let rhs = mul(&m, &sw_chain_map(psi, i, n).map_err(|e| e.to_string())?);
                        ensure(lhs.to_big() == rhs, || {
                            format!("{}: composition fails", tag())
                        })?;
                    }
                    checked += 1;
                }
            }
            Ok(checked)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!(
        "d^2 = 0 on {} graphs; {total} chain-map checks over {} graph pairs",
        entries.len(),
        pairs.len()
    ))
}

// 7
fn subdivision_invariance() -> Check {
    let entries = corpus_up_to(10);
    let degrees = [(0, 2), (1, 2), (2, 2), (1, 3), (2, 3)];
    let failures: Vec<String> = entries
        .par_iter()
        .flat_map(|e| {
            let g = Arc::new(e.graph.clone());
            let base: Vec<_> = degrees
                .iter()
                .map(|&(i, n)| uconf_homology(&g, i, n).unwrap())
                .collect();
            let mut bad = Vec::new();
            for edge in 0..g.edge_count() {
                for pieces in 2..=4 {
                    let m = subdivide(&g, &[DirectedEdge::forward(edge)], &[pieces]).unwrap();
                    for (k, &(i, n)) in degrees.iter().enumerate() {
                        let h = uconf_homology(&m.graph, i, n).unwrap();
                        if h != base[k] {
                            bad.push(format!("{} edge {edge} x{pieces} at ({i},{n})", e.id));
                        }
                    }
                }
            }
            bad
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "{} graphs with <= 10 edges, pieces 2..4, (i,n) in {degrees:?}",
        entries.len()
    ))
}

// 8
fn generation_check() -> Check {
    let entries = acceptance_corpus();
    let mut cases = Vec::new();
    for e in &entries {
        for (i, n) in [(1, 2), (1, 3), (2, 2)] {
            if e.graph.edge_count() > genus(&e.graph) + i + n {
                cases.push((e, i, n));
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(e, i, n)| match pullback_report(&e.graph, i, n) {
            Ok(r) if r.spans() => None,
            other => Some(format!("{} ({i},{n}): {other:?}", e.id)),
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} (graph, i, n) cases", cases.len()))
}

// 9
fn edge_tuples() -> Check {
    let entries: Vec<CorpusEntry> = acceptance_corpus()
        .into_iter()
        .filter(|e| genus(&e.graph) <= 2)
        .collect();
    let mut rows = 0;
    for i in 0..=3 {
        let rep = check_generation_e(i, &entries).map_err(|e| e.to_string())?;
        ensure(rep.violations == 0, || {
            format!("i={i}: {} violations", rep.violations)
        })?;
        rows += rep.rows.iter().filter(|r| r.in_hypothesis).count();
    }
    Ok(format!(
        "{} graphs, {rows} (graph, i) rows inside the hypothesis",
        entries.len()
    ))
}

// 10
fn projective_bound() -> Check {
    let melon = corpus::melon();
    let rose = corpus::rose(2);
    let hom = count_contractions(&melon, &rose).map_err(|e| e.to_string())?;
    ensure(hom == 24, || format!("|Hom(melon, R2)| = {hom}"))?;
    ensure(automorphism_count(&rose) == 8, || "|Aut(R2)| != 8".into())?;
    ensure(automorphism_count(&melon) == 12, || {
        "|Aut(melon)| != 12".into()
    })?;
    ensure(hom == automorphism_count(&rose) * 3, || {
        "24 != 8 C(3,2)".into()
    })?;
    let entries = acceptance_corpus();
    let mut rows = 0;
    for g2 in &entries {
        for row in principal_projective_growth(&g2.graph, &entries).map_err(|e| e.to_string())? {
            ensure(row.holds, || {
                format!(
                    "{} -> {}: {} > {}",
                    row.graph, g2.id, row.morphisms, row.bound
                )
            })?;
            rows += 1;
        }
    }
    Ok(format!(
        "counts 24/8/12; bound holds on {rows} same-genus pairs"
    ))
}

// 11
fn reduced_enumeration() -> Check {
    let g1 = enumerate_reduced_graphs(1);
    let g2 = enumerate_reduced_graphs(2);
    ensure(g1.len() == 1, || format!("{} classes at genus 1", g1.len()))?;
    ensure(g2.len() == 2, || format!("{} classes at genus 2", g2.len()))?;
    let iso = graphcat::graph::canon::are_isomorphic;
    ensure(iso(&g1[0], &corpus::rose(1)), || {
        "genus 1 class is not the loop".into()
    })?;
    let has = |h: &MultiGraph| g2.iter().any(|g| iso(g, h));
    ensure(has(&corpus::rose(2)) && has(&corpus::melon()), || {
        "genus 2 classes are not rose and melon".into()
    })?;
    Ok("1 class at genus 1, rose and melon at genus 2".into())
}

// 12
fn tree_duality() -> Check {
    let d = duality_check(6);
    ensure(d.holds(), || format!("{d:?}"))?;
    let plain = relative_labeling_check::<()>(5, &|t| vec![vec![(); t.vertex_count()]]);
    ensure(plain.holds(), || format!("{plain:?}"))?;
    let two_labels = relative_labeling_check::<String>(4, &|t| {
        let n = t.vertex_count();
        (0..1u32 << n)
            .map(|m| (0..n).map(|v| (m >> v & 1).to_string()).collect())
            .collect()
    });
    ensure(two_labels.holds(), || format!("{two_labels:?}"))?;
    let extra = extra_labels_check(1, 4);
    ensure(extra.holds(), || format!("{extra:?}"))?;
    Ok(format!(
        "{} tree pairs, {} contractions; relative labeling {} + {} cases; extra labels {} cases",
        d.pairs, d.contractions, plain.cases, two_labels.cases, extra.cases
    ))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// 13
fn growth_fits() -> Check {
    // cycles from the subdivided loop
    let loop_family =
        Family::subdivision(Arc::new(corpus::rose(1)), vec![DirectedEdge::forward(0)]).unwrap();
    let table = dimension_table(
        &Functional::KlCoefficient { i: 1 },
        &loop_family,
        &[(3, 10)],
    )
    .map_err(|e| e.to_string())?;
    let fit = fit_polynomial(&table, 2).map_err(|e| e.to_string())?;
    let mut expected = MultiPolynomial::zero(1);
    expected.add_term(vec![2], rat(1, 2));
    expected.add_term(vec![1], rat(-3, 2));
    ensure(fit.exact_everywhere() && fit.polynomial == expected, || {
        format!("cycle fit {}", fit.polynomial)
    })?;
    let cycle_threshold = fit.threshold.clone();

    // theta graphs G_2(a) from the subdivided melon
    let melon_family = Family::subdivision(
        Arc::new(corpus::melon()),
        (0..3).map(DirectedEdge::forward).collect(),
    )
    .unwrap();
    let axes = [(2, 6); 3];
    let table = dimension_table(&Functional::KlCoefficient { i: 1 }, &melon_family, &axes)
        .map_err(|e| e.to_string())?;
    let fit = fit_polynomial(&table, 3).map_err(|e| e.to_string())?;
    let mut expected: RatMultiPolynomial = MultiPolynomial::zero(3);
    expected.add_term(vec![1, 1, 1], rat(1, 1));
    for k in 0..3 {
        let mut sq = vec![0; 3];
        sq[k] = 2;
        expected.add_term(sq, rat(1, 2));
        let mut lin = vec![0; 3];
        lin[k] = 1;
        expected.add_term(lin, rat(-3, 2));
    }
    ensure(
        fit.exact_everywhere() && fit.polynomial == expected && fit.degree == Some(3),
        || format!("theta fit {} residuals {:?}", fit.polynomial, fit.residuals),
    )?;
    ensure(fit.threshold.is_some(), || {
        "theta fit has no verified box".into()
    })?;

    // sprouting leaves at the centre of a star, H_1(UConf_2)
    let star_family = Family::sprout(Arc::new(corpus::star(3)), vec![0]).unwrap();
    let table = dimension_table(
        &Functional::UconfBetti { i: 1, n: 2 },
        &star_family,
        &[(1, 8)],
    )
    .map_err(|e| e.to_string())?;
    let values: Vec<BigInt> = table
        .cells
        .iter()
        .map(|c| c.value.clone().expect("defined"))
        .collect();
    ensure(values.windows(2).all(|w| w[0] < w[1]), || {
        format!("star row not increasing: {values:?}")
    })?;
    let fit = fit_polynomial(&table, 3).map_err(|e| e.to_string())?;
    ensure(
        fit.threshold.is_some() && fit.degree.unwrap_or(0) <= 3,
        || {
            format!(
                "star fit {} degree {:?} residuals {:?}",
                fit.polynomial, fit.degree, fit.residuals
            )
        },
    )?;
    Ok(format!(
        "cycle c1 exact from m >= {:?}; theta c1 degree 3 on [2,6]^3; star H1 fit {} (degree {:?}) from m >= {:?}",
        cycle_threshold.unwrap_or_default(),
        fit.polynomial,
        fit.degree,
        fit.threshold.unwrap_or_default()
    ))
}

/// Determinant by fraction-free elimination.
fn bareiss_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

// 14
fn snf_random() -> Check {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut max_dim = 0;
    for trial in 0..1000 {
        let r = rng.gen_range(1..=30);
        let c = rng.gen_range(1..=30);
        let density: f64 = rng.gen_range(0.05..0.5);
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            BigInt::from(rng.gen_range(-9i64..=9))
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let a = SparseMatrix::from_dense(&rows);
        let s = smith_normal_form(&a).map_err(|e| e.to_string())?;
        let tag = |m: &str| format!("trial {trial} ({r}x{c}): {m}");
        let uav =
            s.u.mul(&a)
                .and_then(|x| x.mul(&s.v))
                .map_err(|e| e.to_string())?;
        ensure(uav == s.diagonal(), || tag("U A V != S"))?;
        ensure(
            s.u.mul(&s.u_inv).map_err(|e| e.to_string())? == SparseMatrix::identity(r),
            || tag("U not invertible"),
        )?;
        ensure(
            s.v.mul(&s.v_inv).map_err(|e| e.to_string())? == SparseMatrix::identity(c),
            || tag("V not invertible"),
        )?;
        if r <= 12 {
            let d = bareiss_det(&s.u.to_dense());
            ensure(d == BigInt::one() || d == -BigInt::one(), || {
                tag("det U is not a unit")
            })?;
        }
        ensure(s.factors.iter().all(|d| *d > BigInt::zero()), || {
            tag("non-positive factor")
        })?;
        ensure(
            s.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            || tag("divisibility chain broken"),
        )?;
        max_dim = max_dim.max(r.max(c));
    }
    Ok(format!("1000 matrices up to {max_dim}x{max_dim}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "cycle KL formula",
            limit: Some(Duration::from_secs(60)),
            run: cycle_kl,
        },
        Criterion {
            id: 2,
            name: "theta first coefficient",
            limit: Some(Duration::from_secs(60)),
            run: theta_first_coefficient,
        },
        Criterion {
            id: 3,
            name: "recursion vs flat counts",
            limit: None,
            run: recursion_vs_flats,
        },
        Criterion {
            id: 4,
            name: "Swiatkowski vs Abrams",
            limit: Some(Duration::from_secs(1800)),
            run: oracle_equivalence,
        },
        Criterion {
            id: 5,
            name: "torsion and planarity",
            limit: None,
            run: torsion_planarity,
        },
        Criterion {
            id: 6,
            name: "differential and functoriality",
            limit: None,
            run: differential_and_functoriality,
        },
        Criterion {
            id: 7,
            name: "subdivision invariance",
            limit: None,
            run: subdivision_invariance,
        },
        Criterion {
            id: 8,
            name: "generation by simple contractions",
            limit: None,
            run: generation_check,
        },
        Criterion {
            id: 9,
            name: "edge tuples pull back",
            limit: None,
            run: edge_tuples,
        },
        Criterion {
            id: 10,
            name: "principal projective bound",
            limit: None,
            run: projective_bound,
        },
        Criterion {
            id: 11,
            name: "reduced graphs",
            limit: None,
            run: reduced_enumeration,
        },
        Criterion {
            id: 12,
            name: "tree duality and relative labels",
            limit: None,
            run: tree_duality,
        },
        Criterion {
            id: 13,
            name: "growth fits",
            limit: None,
            run: growth_fits,
        },
        Criterion {
            id: 14,
            name: "Smith normal form",
            limit: None,
            run: snf_random,
        },
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|s| s.parse().ok());
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.is_none_or(|k| k == c.id)) {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.1?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("[PASS] {:>2} {}: {detail} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {}: {why} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
