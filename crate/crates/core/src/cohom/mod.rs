//! Exact linear algebra over a classical Lie algebra: the coboundary
//! (classical r-matrix) problem, the cocycle condition on a cocommutator,
//! and the second cohomology with trivial coefficients.

mod lie;
mod linalg;

use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};

pub use lie::{LieData, Tensor2};
pub use linalg::{dot, Echelon, Matrix};

use crate::error::{Error, Result};
use crate::hopf::{classical_limit, cocommutator};
use crate::ncalg::Presentation;
use crate::report::{Check, Report};
use crate::scalars::GaussQ;

/// Classical Lie algebra of a deformed presentation (its `h -> 0` limit).
pub fn classical_lie(p: &Presentation) -> Result<LieData> {
    LieData::from_presentation(&classical_limit(p, &format!("{}_classical", p.name))?)
}

/// The cocommutator of every basis element of `lie`, extracted from the
/// coproduct of the generator of the same name in `p`.
pub fn sigma_from_hopf(p: &Arc<Presentation>, lie: &LieData) -> Result<Vec<Tensor2>> {
    let slots = vec![p.clone(), p.clone()];
    lie.labels
        .iter()
        .map(|label| {
            let g = p
                .gen_by_name(label)
                .ok_or_else(|| Error::PresentationMismatch(label.clone(), p.name.clone()))?;
            Tensor2::from_element(lie, &cocommutator(p, g)?.elem, &slots)
        })
        .collect()
}

/// `x -> x . r` on every basis element: the coboundary of `r`.
pub fn coboundary(lie: &LieData, r: &Tensor2) -> Vec<Tensor2> {
    (0..lie.dim()).map(|x| r.ad(lie, x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Coefficients of `r = sum r_ab e_a ^ e_b` over the unknown pairs.
    Solution(Vec<GaussQ>),
    /// `y` with `y A = 0` and `y b = 1`: no `x` can satisfy `A x = b`.
    Infeasible { left_null: Vec<GaussQ> },
}

/// The linear system `A x = b` of a coboundary problem with its verdict.
#[derive(Clone, Debug)]
pub struct LinearCertificate {
    pub unknowns: Vec<(usize, usize)>,
    /// Equation `k` is entry `(i, j)`, `i < j`, of `sigma(e_x) - e_x . r`.
    pub equations: Vec<(usize, usize, usize)>,
    pub a: Matrix,
    pub b: Vec<GaussQ>,
    pub rank_a: usize,
    pub rank_ab: usize,
    pub outcome: Outcome,
}

impl LinearCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Solution(_))
    }

    /// Re-checks the verdict from the stored system alone: a solution by
    /// substitution; infeasibility by the left null vector and by freshly
    /// computed ranks.
    pub fn revalidate(&self) -> bool {
        let rank_a = self.a.rank();
        let rank_ab = self.a.augment(&self.b).rank();
        if rank_a != self.rank_a || rank_ab != self.rank_ab {
            return false;
        }
        match &self.outcome {
            Outcome::Solution(x) => rank_a == rank_ab && self.a.mul_vec(x) == self.b,
            Outcome::Infeasible { left_null } => {
                rank_a < rank_ab
                    && self.a.left_mul_vec(left_null).iter().all(Zero::is_zero)
                    && dot(left_null, &self.b).is_one()
            }
        }
    }

    /// The r-matrix of a feasible problem.
    pub fn r_matrix(&self, n: usize) -> Option<Tensor2> {
        let Outcome::Solution(x) = &self.outcome else {
            return None;
        };
        let mut r = Tensor2::zero(n);
        for ((a, b), c) in self.unknowns.iter().zip(x) {
            r = r.add(&Tensor2::wedge(n, *a, *b, c));
        }
        Some(r)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} unknowns, {} equations, rank(A) = {}, rank(A|b) = {}: {}",
            self.unknowns.len(),
            self.equations.len(),
            self.rank_a,
            self.rank_ab,
            if self.is_feasible() { "solvable" } else { "infeasible" }
        )
    }
}

/// Solves `sigma(x) = x . r` for `r` in the exterior square of `lie`.
pub fn solve_coboundary(lie: &LieData, sigma: &[Tensor2]) -> Result<LinearCertificate> {
    let n = lie.dim();
    if sigma.len() != n {
        return Err(Error::Malformed(format!("cocommutator table has {} entries for {n} basis elements", sigma.len())));
    }
    if let Some(x) = sigma.iter().position(|s| s.dim() != n || !s.is_antisymmetric()) {
        return Err(Error::Malformed(format!("cocommutator of {} is not antisymmetric", lie.labels[x])));
    }
    let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let equations: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|x| unknowns.iter().map(move |&(i, j)| (x, i, j))).collect();
    let one = GaussQ::one();
    let columns: Vec<Vec<Tensor2>> = unknowns.iter().map(|&(a, b)| coboundary(lie, &Tensor2::wedge(n, a, b, &one))).collect();
    let mut a = Matrix::zeros(equations.len(), unknowns.len());
    let mut b = Vec::with_capacity(equations.len());
    for (row, &(x, i, j)) in equations.iter().enumerate() {
        for (col, cob) in columns.iter().enumerate() {
            let v = cob[x].get(i, j);
            if !v.is_zero() {
                a.set(row, col, v.clone());
            }
        }
        b.push(sigma[x].get(i, j).clone());
    }
    let rank_a = a.rank();
    let rank_ab = a.augment(&b).rank();
    let outcome = match a.solve(&b) {
        Ok(x) => Outcome::Solution(x),
        Err(_) => {
            // y^T [A | b] = (0, ..., 0, 1)
            let mut target = vec![GaussQ::zero(); unknowns.len()];
            target.push(GaussQ::one());
            let system = Matrix::from_rows(
                (0..unknowns.len()).map(|c| (0..equations.len()).map(|r| a.get(r, c).clone()).collect()).chain(std::iter::once(b.clone())).collect(),
            );
            let left_null = system
                .solve(&target)
                .map_err(|_| Error::Domain("inconsistent system without a left null vector".into()))?;
            Outcome::Infeasible { left_null }
        }
    };
    Ok(LinearCertificate { unknowns, equations, a, b, rank_a, rank_ab, outcome })
}

/// `sigma([x, y]) = x . sigma(y) - y . sigma(x)` on every pair of basis
/// elements.
pub fn co_jacobi_check(lie: &LieData, sigma: &[Tensor2]) -> Report {
    let n = lie.dim();
    let anchor = format!("{}: cocommutator cocycle condition", lie.name);
    let mut report = Report::new(lie.name.clone());
    for x in 0..n {
        for y in x + 1..n {
            let t0 = Instant::now();
            let mut lhs = Tensor2::zero(n);
            for (k, c) in lie.bracket(x, y).iter().enumerate() {
                if !c.is_zero() {
                    lhs = lhs.add(&sigma[k].scale(c));
                }
            }
            let res = lhs.sub(&sigma[y].ad(lie, x)).add(&sigma[x].ad(lie, y));
            report.push(
                Check::pass_if(format!("co-jacobi/{},{}", lie.labels[x], lie.labels[y]), anchor.clone(), res.is_zero(), res.render(lie))
                    .took(t0),
            );
        }
    }
    report
}

/// Second cohomology with trivial coefficients.
#[derive(Clone, Debug)]
pub struct H2 {
    pub dim: usize,
    /// Dimension of the closed 2-cochains.
    pub closed: usize,
    /// Dimension of the coboundaries.
    pub exact: usize,
    /// Closed antisymmetric forms `w(e_a, e_b)` spanning a complement of
    /// the coboundaries.
    pub representatives: Vec<Tensor2>,
}

/// Coordinates of an antisymmetric form over pairs `a < b`.
fn form_vector(w: &Tensor2) -> Vec<GaussQ> {
    let n = w.dim();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| w.get(a, b).clone())).collect()
}

fn form_from_vector(n: usize, v: &[GaussQ]) -> Tensor2 {
    let mut w = Tensor2::zero(n);
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            w = w.add(&Tensor2::wedge(n, a, b, &v[k]));
            k += 1;
        }
    }
    w
}

/// `(d w)(x, y, z) = -w([x,y], z) + w([x,z], y) - w([y,z], x)`.
pub fn d2(lie: &LieData, w: &Tensor2) -> Vec<GaussQ> {
    let n = lie.dim();
    let pair = |u: &[GaussQ], z: usize| -> GaussQ {
        let mut acc = GaussQ::zero();
        for (k, c) in u.iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * w.get(k, z));
            }
        }
        acc
    };
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let v = &(&pair(lie.bracket(x, z), y) - &pair(lie.bracket(x, y), z)) - &pair(lie.bracket(y, z), x);
                out.push(v);
            }
        }
    }
    out
}

/// `(d phi)(x, y) = -phi([x, y])` as an antisymmetric form.
pub fn d1(lie: &LieData, phi: &[GaussQ]) -> Tensor2 {
    let n = lie.dim();
    let mut w = Tensor2::zero(n);
    for a in 0..n {
        for b in a + 1..n {
            let v = -dot(lie.bracket(a, b), phi);
            w = w.add(&Tensor2::wedge(n, a, b, &v));
        }
    }
    w
}

pub fn lie_h2(lie: &LieData) -> H2 {
    let n = lie.dim();
    let pairs = n * (n - 1) / 2;
    let basis_forms: Vec<Tensor2> = (0..pairs)
        .map(|k| {
            let mut v = vec![GaussQ::zero(); pairs];
            v[k] = GaussQ::one();
            form_from_vector(n, &v)
        })
        .collect();
    // d2 as a matrix: rows are triples, columns pairs
    let cols: Vec<Vec<GaussQ>> = basis_forms.iter().map(|w| d2(lie, w)).collect();
    let triples = cols.first().map_or(0, Vec::len);
    let d2m = Matrix::from_rows((0..triples).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
    let closed_basis = if triples == 0 {
        (0..pairs).map(|k| form_vector(&basis_forms[k])).collect()
    } else {
        d2m.kernel()
    };
    let exact_span: Vec<Vec<GaussQ>> = (0..n)
        .map(|i| form_vector(&d1(lie, &lie::unit(n, i))))
        .collect();
    let exact = if exact_span.is_empty() { 0 } else { Matrix::from_rows(exact_span.clone()).rank() };
    let mut span = exact_span;
    let mut rank = exact;
    let mut representatives = Vec::new();
    for v in &closed_basis {
        span.push(v.clone());
        let r = Matrix::from_rows(span.clone()).rank();
        if r > rank {
            rank = r;
            representatives.push(form_from_vector(n, v));
        } else {
            span.pop();
        }
    }
    H2 { dim: closed_basis.len() - exact, closed: closed_basis.len(), exact, representatives }
}

/// Coordinates of a form along `h2.representatives` modulo coboundaries;
/// `None` when the form is not closed.
pub fn h2_class(lie: &LieData, h2: &H2, w: &Tensor2) -> Option<Vec<GaussQ>> {
    let n = lie.dim();
    let mut columns: Vec<Vec<GaussQ>> = (0..n).map(|i| form_vector(&d1(lie, &lie::unit(n, i)))).collect();
    columns.extend(h2.representatives.iter().map(form_vector));
    let target = form_vector(w);
    let a = Matrix::from_rows((0..target.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect());
    a.solve(&target).ok().map(|x| x[n..].to_vec())
}
