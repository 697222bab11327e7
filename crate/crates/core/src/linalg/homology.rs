//! Homology of `C_in → C_mid → C_out` with torsion and explicit cycles.
//!
//! Unit pivots of either differential are cancelled first (a discrete Morse
//! reduction), recording how a middle chain is projected to the reduced
//! complex and how reduced cycles lift back. The small remaining core is
//! handled with two dense Smith normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::elimination::{eliminate_units, invariant_factors, rank, ColMatrix};
use super::snf::{dense_snf, Dense};
use super::sparse::{vec_axpy, vec_convert, vec_dot, SparseMatrix, SparseVector};
use crate::scalar::{convert, Overflow, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("differentials do not compose: {0}x{1} after {2}x{3}")]
    NonComposable(usize, usize, usize, usize),
    #[error("composite of the differentials is not zero")]
    NonzeroComposite,
    #[error("map is not a chain map")]
    NotChainMap,
    #[error("vector is not a cycle")]
    NotACycle,
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// `Z^betti ⊕ ⊕ Z/d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    /// Torsion generators (in the order of `torsion`) followed by free ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<SparseVector<BigInt>>>,
}

impl HomologySummary {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Same group, generators dropped.
    pub fn group(&self) -> (usize, Vec<BigInt>) {
        (self.betti, self.torsion.clone())
    }
}

fn check_shapes<T: Scalar>(
    d_out: &SparseMatrix<T>,
    d_in: &SparseMatrix<T>,
) -> Result<(), HomologyError> {
    if d_out.ncols() != d_in.nrows() {
        return Err(HomologyError::NonComposable(
            d_out.nrows(),
            d_out.ncols(),
            d_in.nrows(),
            d_in.ncols(),
        ));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(HomologyError::NonzeroComposite);
    }
    Ok(())
}

/// Betti number and torsion of `ker d_out / im d_in`.
pub fn homology<T: Scalar>(
    d_out: &SparseMatrix<T>,
    d_in: &SparseMatrix<T>,
) -> Result<HomologySummary, HomologyError> {
    check_shapes(d_out, d_in)?;
    let r_out = rank(d_out)?;
    let factors = invariant_factors(d_in)?;
    let torsion = factors
        .iter()
        .filter(|d| !d.is_one())
        .map(Scalar::to_big)
        .collect();
    Ok(HomologySummary {
        betti: d_out.ncols() - r_out - factors.len(),
        torsion,
        generators: None,
    })
}

/// [`homology`] over `i64`, redone over `BigInt` if anything overflows.
pub fn homology_auto(
    d_out: &SparseMatrix<i64>,
    d_in: &SparseMatrix<i64>,
) -> Result<HomologySummary, HomologyError> {
    match homology(d_out, d_in) {
        Err(HomologyError::Overflow(_)) => homology(&d_out.to_big(), &d_in.to_big()),
        r => r,
    }
}

#[derive(Clone, Debug)]
enum Step {
    /// Cancelled with a `d_out` pivot: projection drops `a`; lift sets
    /// `x_a = -eps (beta · x)`.
    Drop {
        a: usize,
        eps: BigInt,
        beta: SparseVector<BigInt>,
    },
    /// Cancelled with a `d_in` pivot: projection replaces `e_b` by `image`.
    Subst {
        b: usize,
        image: SparseVector<BigInt>,
    },
}

/// Everything needed to name homology classes and evaluate maps on them.
#[derive(Clone, Debug)]
pub struct HomologyContext {
    d_out: SparseMatrix<BigInt>,
    d_in: SparseMatrix<BigInt>,
    steps: Vec<Step>,
    /// Mid index → core position.
    core_pos: Vec<Option<usize>>,
    core_mids: Vec<usize>,
    /// Core positions of zero columns of the core `d_out`.
    free_cols: Vec<usize>,
    /// Core positions entering the first Smith form.
    snf_cols: Vec<usize>,
    r1: usize,
    v1: Dense<BigInt>,
    v1_inv: Dense<BigInt>,
    factors: Vec<BigInt>,
    u2: Dense<BigInt>,
    u2_inv: Dense<BigInt>,
    summary: HomologySummary,
}

struct Raw<T> {
    steps: Vec<Step>,
    out_m: ColMatrix<T>,
    in_m: ColMatrix<T>,
}

fn reduce<T: Scalar>(d_out: &SparseMatrix<T>, d_in: &SparseMatrix<T>) -> Result<Raw<T>, Overflow> {
    let mut steps = Vec::new();
    let mut out_m = ColMatrix::from_sparse(d_out);
    let mut in_m = ColMatrix::from_sparse(d_in);
    // d_out pivots (row b ∈ out, column a ∈ mid)
    let mut dropped = Vec::new();
    eliminate_units(&mut out_m, |m, b, a| {
        let eps = m.get(b, a).expect("pivot").to_big();
        let beta = m.rows[b]
            .iter()
            .filter(|&&x| x != a)
            .map(|&x| (x, m.cols[x][&b].to_big()))
            .collect();
        steps.push(Step::Drop { a, eps, beta });
        dropped.push(a);
        Ok(())
    })?;
    for a in dropped {
        in_m.remove_row(a);
    }
    // d_in pivots (row b ∈ mid, column a ∈ in)
    let mut substituted = Vec::new();
    eliminate_units(&mut in_m, |m, b, a| {
        let eps = m.get(b, a).expect("pivot").clone();
        let mut image = SparseVector::new();
        for (&r, v) in &m.cols[a] {
            if r != b {
                image.insert(r, (-(eps.clone()) * v.clone()).to_big());
            }
        }
        steps.push(Step::Subst { b, image });
        substituted.push(b);
        Ok(())
    })?;
    for b in substituted {
        out_m.remove_col(b);
    }
    Ok(Raw { steps, out_m, in_m })
}

fn to_big_dense<T: Scalar>(d: Dense<T>) -> Dense<BigInt> {
    d.into_iter()
        .map(|row| row.iter().map(Scalar::to_big).collect())
        .collect()
}

fn dense_mul_vec(a: &Dense<BigInt>, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(p, q)| !p.is_zero() && !q.is_zero())
                .map(|(p, q)| p * q)
                .sum()
        })
        .collect()
}

impl HomologyContext {
    /// Full homology computation with generators, over `T` where possible.
    pub fn compute<T: Scalar>(
        d_out: &SparseMatrix<T>,
        d_in: &SparseMatrix<T>,
    ) -> Result<Self, HomologyError> {
        check_shapes(d_out, d_in)?;
        let mid = d_out.ncols();
        let Raw { steps, out_m, in_m } = reduce(d_out, d_in)?;
        let core_mids: Vec<usize> = out_m.live_cols.iter().copied().collect();
        debug_assert_eq!(
            core_mids,
            in_m.live_rows.iter().copied().collect::<Vec<_>>()
        );
        let mut core_pos = vec![None; mid];
        for (p, &x) in core_mids.iter().enumerate() {
            core_pos[x] = Some(p);
        }
        let (_, out_cols, out_dense) = out_m.dense_core();
        let snf_cols: Vec<usize> = out_cols
            .iter()
            .map(|&c| core_pos[c].expect("live"))
            .collect();
        let in_snf: std::collections::BTreeSet<usize> = snf_cols.iter().copied().collect();
        let free_cols: Vec<usize> = (0..core_mids.len())
            .filter(|p| !in_snf.contains(p))
            .collect();
        let s1 = dense_snf(out_dense, snf_cols.len(), true)?;
        let r1 = s1.factors.len();
        let v1 = to_big_dense(s1.v.expect("tracked"));
        let v1_inv = to_big_dense(s1.v_inv.expect("tracked"));
        let mut ctx = HomologyContext {
            d_out: d_out.to_big(),
            d_in: d_in.to_big(),
            steps,
            core_pos,
            core_mids,
            free_cols,
            snf_cols,
            r1,
            v1,
            v1_inv,
            factors: Vec::new(),
            u2: Vec::new(),
            u2_inv: Vec::new(),
            summary: HomologySummary {
                betti: 0,
                torsion: Vec::new(),
                generators: None,
            },
        };
        // kernel coordinates of the core boundaries
        let k = ctx.kernel_dim();
        let mut m_cols: Vec<Vec<BigInt>> = Vec::new();
        for &c in &in_m.live_cols {
            if in_m.cols[c].is_empty() {
                continue;
            }
            let mut x = vec![BigInt::zero(); ctx.core_mids.len()];
            for (&r, v) in &in_m.cols[c] {
                x[ctx.core_pos[r].expect("live")] = v.to_big();
            }
            m_cols.push(
                ctx.kernel_coords(&x)
                    .ok_or(HomologyError::NonzeroComposite)?,
            );
        }
        let m_dense: Dense<BigInt> = (0..k)
            .map(|i| m_cols.iter().map(|col| col[i].clone()).collect())
            .collect();
        let s2 = dense_snf(m_dense, m_cols.len(), true)?;
        ctx.factors = s2.factors;
        ctx.u2 = s2.u.expect("tracked");
        ctx.u2_inv = s2.u_inv.expect("tracked");
        let torsion: Vec<BigInt> = ctx
            .factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        let betti = k - ctx.factors.len();
        ctx.summary = HomologySummary {
            betti,
            torsion,
            generators: None,
        };
        let gens = (0..ctx.generator_count())
            .map(|j| ctx.generator(j))
            .collect::<Vec<_>>();
        ctx.summary.generators = Some(gens);
        Ok(ctx)
    }

    /// [`HomologyContext::compute`] over `i64`, retried over `BigInt` on overflow.
    pub fn compute_auto(
        d_out: &SparseMatrix<i64>,
        d_in: &SparseMatrix<i64>,
    ) -> Result<Self, HomologyError> {
        match Self::compute(d_out, d_in) {
            Err(HomologyError::Overflow(_)) => Self::compute(&d_out.to_big(), &d_in.to_big()),
            r => r,
        }
    }

    pub fn summary(&self) -> &HomologySummary {
        &self.summary
    }

    pub fn mid_dim(&self) -> usize {
        self.d_out.ncols()
    }

    pub fn d_out(&self) -> &SparseMatrix<BigInt> {
        &self.d_out
    }

    pub fn d_in(&self) -> &SparseMatrix<BigInt> {
        &self.d_in
    }

    fn kernel_dim(&self) -> usize {
        self.free_cols.len() + self.snf_cols.len() - self.r1
    }

    /// Index of the first invariant factor that is not 1.
    fn first_torsion(&self) -> usize {
        self.factors.iter().take_while(|d| d.is_one()).count()
    }

    pub fn generator_count(&self) -> usize {
        self.summary.torsion.len() + self.summary.betti
    }

    /// Coordinates of a core cycle in the kernel basis; `None` if not a cycle.
    fn kernel_coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut y: Vec<BigInt> = self.free_cols.iter().map(|&p| x[p].clone()).collect();
        let xs: Vec<BigInt> = self.snf_cols.iter().map(|&p| x[p].clone()).collect();
        let w = dense_mul_vec(&self.v1_inv, &xs);
        if w[..self.r1].iter().any(|v| !v.is_zero()) {
            return None;
        }
        y.extend(w[self.r1..].iter().cloned());
        Some(y)
    }

    /// Core vector of the `j`-th kernel basis element.
    fn kernel_vector(&self, y: &[BigInt]) -> Vec<BigInt> {
        let mut x = vec![BigInt::zero(); self.core_mids.len()];
        let nf = self.free_cols.len();
        for (i, &p) in self.free_cols.iter().enumerate() {
            x[p] = y[i].clone();
        }
        for (l, coef) in y[nf..].iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let col = self.r1 + l;
            for (s, &p) in self.snf_cols.iter().enumerate() {
                let v = &self.v1[s][col];
                if !v.is_zero() {
                    x[p] += coef * v;
                }
            }
        }
        x
    }

    fn project(&self, z: &SparseVector<BigInt>) -> Vec<BigInt> {
        let mut z = z.clone();
        for step in &self.steps {
            match step {
                Step::Drop { a, .. } => {
                    z.remove(a);
                }
                Step::Subst { b, image } => {
                    if let Some(c) = z.remove(b) {
                        vec_axpy(&mut z, &c, image).expect("BigInt never overflows");
                    }
                }
            }
        }
        let mut x = vec![BigInt::zero(); self.core_mids.len()];
        for (i, v) in z {
            x[self.core_pos[i].expect("projection lands in the core")] = v;
        }
        x
    }

    fn lift(&self, x: &[BigInt]) -> SparseVector<BigInt> {
        let mut z: SparseVector<BigInt> = SparseVector::new();
        for (p, v) in x.iter().enumerate() {
            if !v.is_zero() {
                z.insert(self.core_mids[p], v.clone());
            }
        }
        for step in self.steps.iter().rev() {
            if let Step::Drop { a, eps, beta } = step {
                let dot = vec_dot(beta, &z).expect("BigInt never overflows");
                if !dot.is_zero() {
                    z.insert(*a, -(eps * dot));
                }
            }
        }
        z
    }

    /// Generator `j`: torsion generators first, then free ones.
    pub fn generator(&self, j: usize) -> SparseVector<BigInt> {
        let t0 = self.first_torsion();
        let col = if j < self.summary.torsion.len() {
            t0 + j
        } else {
            self.factors.len() + j - self.summary.torsion.len()
        };
        let y: Vec<BigInt> = self.u2_inv.iter().map(|row| row[col].clone()).collect();
        self.lift(&self.kernel_vector(&y))
    }

    pub fn is_cycle(&self, z: &SparseVector<BigInt>) -> bool {
        self.d_out
            .mul_vec(z)
            .expect("BigInt never overflows")
            .is_empty()
    }

    /// Coordinates of the class of a cycle: torsion coordinates reduced into
    /// `[0, d_j)`, then free coordinates.
    pub fn classify(&self, z: &SparseVector<BigInt>) -> Result<Vec<BigInt>, HomologyError> {
        if !self.is_cycle(z) {
            return Err(HomologyError::NotACycle);
        }
        let y = self
            .kernel_coords(&self.project(z))
            .ok_or(HomologyError::NotACycle)?;
        let c = dense_mul_vec(&self.u2, &y);
        let t0 = self.first_torsion();
        let mut out: Vec<BigInt> = (t0..self.factors.len())
            .map(|j| c[j].mod_floor(&self.factors[j]))
            .collect();
        out.extend(c[self.factors.len()..].iter().cloned());
        Ok(out)
    }

    /// True when the cycle is a boundary.
    pub fn is_boundary(&self, z: &SparseVector<BigInt>) -> Result<bool, HomologyError> {
        Ok(self.classify(z)?.iter().all(Zero::is_zero))
    }
}

/// Matrix of the map induced on homology by a middle-degree map `f`
/// (rows: target mid, columns: source mid), in generator coordinates.
pub fn induced_map_on_homology<T: Scalar>(
    f: &SparseMatrix<T>,
    source: &HomologyContext,
    target: &HomologyContext,
) -> Result<SparseMatrix<BigInt>, HomologyError> {
    if f.nrows() != target.mid_dim() || f.ncols() != source.mid_dim() {
        return Err(HomologyError::NonComposable(
            f.nrows(),
            f.ncols(),
            target.mid_dim(),
            source.mid_dim(),
        ));
    }
    let f = f.to_big();
    let image = |z: &SparseVector<BigInt>| f.mul_vec(z).expect("BigInt never overflows");
    for col in source.d_in().columns() {
        let w = image(&col);
        if !target.is_cycle(&w) || !target.is_boundary(&w)? {
            return Err(HomologyError::NotChainMap);
        }
    }
    let n = source.generator_count();
    let mut out = SparseMatrix::zeros(target.generator_count(), n);
    for j in 0..n {
        let w = image(&source.generator(j));
        if !target.is_cycle(&w) {
            return Err(HomologyError::NotChainMap);
        }
        for (i, c) in target.classify(&w)?.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// Apply a map given in generator coordinates to a class, reducing torsion
/// coordinates of the target.
pub fn reduce_class(target: &HomologyContext, coords: Vec<BigInt>) -> Vec<BigInt> {
    let t = target.summary.torsion.len();
    coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if i < t {
                c.mod_floor(&target.summary.torsion[i])
            } else {
                c
            }
        })
        .collect()
}

pub fn convert_vector<T: Scalar>(v: &SparseVector<T>) -> SparseVector<BigInt> {
    vec_convert(v).expect("widening never overflows")
}

pub fn narrow<T: Scalar>(x: &BigInt) -> Result<T, Overflow> {
    convert::<BigInt, T>(x)
}
