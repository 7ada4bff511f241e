//! Expression evaluation with Einstein summation over repeated indices.
//!
//! Summation scopes are the whole expression, every summand, every
//! parenthesized group and every power base. An index occurring twice in a
//! scope (counting an index exported by a nested scope once) is summed
//! there; one occurring once is exported to the enclosing scope; the
//! outermost level must export exactly the declaration's free indices.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::ast::{Expr, ExprKind, Index};
use super::diag::Diagnostic;
use super::lexer::Span;
use crate::ncalg::{Ctx, Element, Letter, Presentation};
use crate::scalars::{GaussQ, Poly, Sym};

pub type Env = BTreeMap<String, u8>;

pub(crate) fn diag(span: Span, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(span.line, span.col, msg)
}

type DResult<T> = Result<T, Diagnostic>;

pub(crate) fn levi_civita(a: u8, b: u8, c: u8) -> i64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Evaluates expressions into elements of a tensor context. In free mode
/// (used while a presentation's relations are collected) products are plain
/// concatenations; otherwise they are normal-ordered.
pub struct Evaluator {
    slots: Vec<Arc<Presentation>>,
    ctx: Option<Ctx>,
    factors: Vec<Evaluator>,
    params: BTreeSet<String>,
}

impl Evaluator {
    pub fn new(slots: Vec<Arc<Presentation>>, free: bool) -> Evaluator {
        let mut params: BTreeSet<String> = BTreeSet::new();
        for p in &slots {
            params.extend(p.params.iter().map(|s| s.name().to_string()));
        }
        let factors = if slots.len() > 1 {
            slots.iter().map(|p| Evaluator::new(vec![p.clone()], free)).collect()
        } else {
            Vec::new()
        };
        let ctx = (!free).then(|| Ctx::new(slots.clone()));
        Evaluator { slots, ctx, factors, params }
    }

    /// Accepts additional commuting symbols, in every tensor factor.
    pub fn with_params(mut self, extra: &[&str]) -> Evaluator {
        self.params.extend(extra.iter().map(|s| s.to_string()));
        self.factors = self.factors.into_iter().map(|f| f.with_params(extra)).collect();
        self
    }

    pub fn ctx(&self) -> Option<&Ctx> {
        self.ctx.as_ref()
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    fn family_dims(&self, name: &str) -> Option<Vec<u8>> {
        self.slots
            .iter()
            .find_map(|p| p.families.iter().find(|f| f.name == name).map(|f| f.dims.clone()))
    }

    /// Index occurrence counts of unbound variables at the scope of `e`.
    pub fn occurrences(&self, e: &Expr, bound: &BTreeSet<String>) -> DResult<BTreeMap<String, usize>> {
        let mut occ = BTreeMap::new();
        self.count(e, bound, &mut occ)?;
        if let Some((v, _)) = occ.iter().find(|(_, &n)| n > 2) {
            return Err(diag(e.span, format!("index `{v}` appears more than twice in one term")));
        }
        Ok(occ)
    }

    /// Indices a scope leaves unsummed.
    pub fn exported(&self, e: &Expr, bound: &BTreeSet<String>) -> DResult<BTreeSet<String>> {
        Ok(self
            .occurrences(e, bound)?
            .into_iter()
            .filter(|(_, n)| *n == 1)
            .map(|(v, _)| v)
            .collect())
    }

    fn count(&self, e: &Expr, bound: &BTreeSet<String>, occ: &mut BTreeMap<String, usize>) -> DResult<()> {
        let leaf = |idx: &[Index], occ: &mut BTreeMap<String, usize>| {
            for i in idx {
                if let Index::Var(v) = i {
                    if !bound.contains(v) {
                        *occ.entry(v.clone()).or_insert(0) += 1;
                    }
                }
            }
        };
        match &e.kind {
            ExprKind::Int(_) => {}
            ExprKind::Name(_, idx) | ExprKind::Eps(idx) | ExprKind::Delta(idx) => leaf(idx, occ),
            ExprKind::Neg(a) => self.count(a, bound, occ)?,
            ExprKind::Mul(a, b) | ExprKind::Div(a, b) | ExprKind::Bracket(a, b) => {
                self.count(a, bound, occ)?;
                self.count(b, bound, occ)?;
            }
            ExprKind::Tensor(parts) => {
                for p in parts {
                    self.count(p, bound, occ)?;
                }
            }
            ExprKind::Group(a) | ExprKind::Pow(a, _) => {
                for v in self.exported(a, bound)? {
                    *occ.entry(v).or_insert(0) += 1;
                }
            }
            ExprKind::Sum(terms) => {
                let mut first: Option<BTreeSet<String>> = None;
                for t in terms {
                    let ex = self.exported(t, bound)?;
                    match &first {
                        None => first = Some(ex),
                        Some(f) if *f != ex => {
                            let fs: Vec<_> = f.iter().cloned().collect();
                            let es: Vec<_> = ex.iter().cloned().collect();
                            return Err(diag(
                                t.span,
                                format!("unbalanced indices: summands carry free indices {fs:?} and {es:?}"),
                            ));
                        }
                        _ => {}
                    }
                }
                for v in first.unwrap_or_default() {
                    *occ.entry(v).or_insert(0) += 1;
                }
            }
        }
        Ok(())
    }

    /// Range of an index variable, from the family it indexes (default 3).
    pub fn var_range(&self, e: &Expr, var: &str) -> u8 {
        fn find(ev: &Evaluator, e: &Expr, var: &str) -> Option<u8> {
            match &e.kind {
                ExprKind::Name(n, idx) => idx.iter().enumerate().find_map(|(k, i)| match i {
                    Index::Var(v) if v == var => ev.family_dims(n).and_then(|d| d.get(k).copied()),
                    _ => None,
                }),
                ExprKind::Neg(a) | ExprKind::Group(a) | ExprKind::Pow(a, _) => find(ev, a, var),
                ExprKind::Mul(a, b) | ExprKind::Div(a, b) | ExprKind::Bracket(a, b) => {
                    find(ev, a, var).or_else(|| find(ev, b, var))
                }
                ExprKind::Sum(v) | ExprKind::Tensor(v) => v.iter().find_map(|x| find(ev, x, var)),
                _ => None,
            }
        }
        find(self, e, var).unwrap_or(3)
    }

    /// Evaluates `e` as a summation scope.
    pub fn eval(&self, e: &Expr, env: &Env) -> DResult<Element> {
        let bound: BTreeSet<String> = env.keys().cloned().collect();
        let occ = self.occurrences(e, &bound)?;
        let summed: Vec<String> = occ.iter().filter(|(_, &n)| n == 2).map(|(v, _)| v.clone()).collect();
        if summed.is_empty() {
            return self.node(e, env);
        }
        let ranges: Vec<u8> = summed.iter().map(|v| self.var_range(e, v)).collect();
        let mut acc = Element::zero();
        for assignment in assignments(&ranges) {
            let mut env2 = env.clone();
            for (v, x) in summed.iter().zip(assignment) {
                env2.insert(v.clone(), x);
            }
            acc.add_assign(&self.node(e, &env2)?);
        }
        Ok(acc)
    }

    fn resolve(&self, idx: &[Index], env: &Env, span: Span) -> DResult<Vec<u8>> {
        idx.iter()
            .map(|i| match i {
                Index::Lit(n) => Ok(*n),
                Index::Var(v) => env
                    .get(v)
                    .copied()
                    .ok_or_else(|| diag(span, format!("unbalanced index `{v}`: it occurs once and is not free in the declaration"))),
            })
            .collect()
    }

    fn mul(&self, a: &Element, b: &Element, span: Span) -> DResult<Element> {
        if a.is_zero() || b.is_zero() {
            return Ok(Element::zero());
        }
        match &self.ctx {
            Some(ctx) => ctx.mul(a, b).map_err(|err| diag(span, err.to_string())),
            None => Ok(a.free_mul(b)),
        }
    }

    fn node(&self, e: &Expr, env: &Env) -> DResult<Element> {
        let span = e.span;
        match &e.kind {
            ExprKind::Int(n) => Ok(Element::scalar(Poly::constant(GaussQ::real(num_bigint::BigInt::from(*n).into())))),
            ExprKind::Name(name, idx) => self.name(name, idx, env, span),
            ExprKind::Eps(idx) => {
                let v = self.resolve(idx, env, span)?;
                check_range(&v, 3, span)?;
                Ok(Element::scalar(Poly::int(levi_civita(v[0], v[1], v[2]))))
            }
            ExprKind::Delta(idx) => {
                let v = self.resolve(idx, env, span)?;
                check_range(&v, 3, span)?;
                Ok(Element::scalar(Poly::int((v[0] == v[1]) as i64)))
            }
            ExprKind::Neg(a) => Ok(self.node(a, env)?.neg()),
            ExprKind::Sum(terms) => {
                let mut acc = Element::zero();
                for t in terms {
                    acc.add_assign(&self.eval(t, env)?);
                }
                Ok(acc)
            }
            ExprKind::Group(a) => self.eval(a, env),
            ExprKind::Mul(a, b) => {
                let x = self.node(a, env)?;
                if x.is_zero() {
                    return Ok(x);
                }
                let y = self.node(b, env)?;
                self.mul(&x, &y, span)
            }
            ExprKind::Div(a, b) => {
                let y = self.node(b, env)?;
                let inv = y
                    .as_scalar()
                    .and_then(|p| p.inv_monomial())
                    .ok_or_else(|| diag(span, "division is only allowed by a nonzero scalar monomial"))?;
                Ok(self.node(a, env)?.scale(&inv))
            }
            ExprKind::Pow(base, n) => {
                let b = self.eval(base, env)?;
                self.power(&b, *n, span)
            }
            ExprKind::Tensor(parts) => {
                if parts.len() != self.slots.len() {
                    return Err(diag(
                        span,
                        format!("tensor with {} factors in a {}-slot context", parts.len(), self.slots.len()),
                    ));
                }
                let mut acc = Element::one();
                for (s, p) in parts.iter().enumerate() {
                    let f = self.factors[s].node(p, env)?.map_slots(|_| s as u8);
                    acc = acc.free_mul(&f);
                }
                Ok(acc)
            }
            ExprKind::Bracket(a, b) => {
                let x = self.node(a, env)?;
                let y = self.node(b, env)?;
                Ok(self.mul(&x, &y, span)?.sub(&self.mul(&y, &x, span)?))
            }
        }
    }

    fn power(&self, b: &Element, n: i32, span: Span) -> DResult<Element> {
        if n >= 0 {
            let mut acc = Element::one();
            for _ in 0..n {
                acc = self.mul(&acc, b, span)?;
            }
            return Ok(acc);
        }
        if let Some(p) = b.as_scalar() {
            let inv = p.inv_monomial().ok_or_else(|| diag(span, "negative power of a non-monomial scalar"))?;
            return Ok(Element::scalar(inv.pow(n.unsigned_abs())));
        }
        let mut terms = b.terms();
        if let (Some((w, c)), None) = (terms.next(), terms.next()) {
            if w.len() == 1 && c.is_one() && self.slots[w[0].slot as usize].is_grouplike(w[0].gen) {
                let l = w[0];
                return Ok(Element::letter(Letter::with_pow(l.slot, l.gen, l.pow * n)));
            }
        }
        Err(diag(span, "negative powers are only defined for grouplike generators and scalar monomials"))
    }

    fn name(&self, name: &str, idx: &[Index], env: &Env, span: Span) -> DResult<Element> {
        let scalar = |p: Poly| -> DResult<Element> {
            if !idx.is_empty() {
                return Err(diag(span, format!("`{name}` takes no indices")));
            }
            Ok(Element::scalar(p))
        };
        match name {
            "I" => return scalar(Poly::i()),
            "h" => return scalar(Poly::h_pow(1)),
            "kappa" => return scalar(Poly::h_pow(-1)),
            _ => {}
        }
        if self.params.contains(name) {
            return scalar(Poly::var(Sym::new(name)));
        }
        if self.slots.len() == 1 {
            let p = &self.slots[0];
            if let Some(fam) = p.families.iter().find(|f| f.name == name) {
                let v = self.resolve(idx, env, span)?;
                if v.len() != fam.dims.len() {
                    return Err(diag(
                        span,
                        format!("`{name}` takes {} indices, got {}", fam.dims.len(), v.len()),
                    ));
                }
                for (x, d) in v.iter().zip(&fam.dims) {
                    if *x < 1 || x > d {
                        return Err(diag(span, format!("index {x} of `{name}` out of range 1..{d}")));
                    }
                }
                let id = p
                    .gen_id(name, &v)
                    .ok_or_else(|| diag(span, format!("generator `{name}` is missing from the order")))?;
                return Ok(Element::letter(Letter::new(0, id)));
            }
        } else if self.family_dims(name).is_some() {
            return Err(diag(span, format!("generator `{name}` used outside a tensor factor")));
        }
        Err(diag(span, format!("unknown symbol `{name}`")))
    }
}

fn check_range(v: &[u8], d: u8, span: Span) -> DResult<()> {
    match v.iter().find(|&&x| x < 1 || x > d) {
        Some(x) => Err(diag(span, format!("index {x} out of range 1..{d}"))),
        None => Ok(()),
    }
}

/// All tuples `(x_1..x_k)` with `1 <= x_j <= ranges[j]`, lexicographic.
pub fn assignments(ranges: &[u8]) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for &r in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
