//! Turns parsed declarations into validated structures.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::ast::*;
use super::diag::Diagnostic;
use super::eval::{assignments, diag, Env, Evaluator};
use super::lexer::Span;
use crate::ncalg::{Element, Family, GenId, Presentation};
use crate::scalars::{Poly, Sym};

type DResult<T> = Result<T, Diagnostic>;

/// Named list of elements of one presentation (e.g. Casimir operators).
#[derive(Clone, Debug)]
pub struct ElementSet {
    pub name: String,
    pub over: Arc<Presentation>,
    pub items: Vec<(String, Element)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BicrossKind {
    /// Right coaction `U -> U (x) T`; `Delta(x) = delta(x) + 1 (x) x`.
    Algebra,
    /// Left coaction `T* -> C (x) T*`; `Delta(g) = g (x) 1 + beta(g)`.
    Group,
}

/// A generator of one of the two bicrossproduct factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorGen {
    /// 0 = coacted factor, 1 = the other factor.
    pub factor: u8,
    pub gen: GenId,
}

#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub left: FactorGen,
    pub op: &'static str,
    pub right: FactorGen,
    /// Value of the commutator `[left, right]`, an element of `value_factor`.
    pub value: Element,
    pub value_factor: u8,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct BicrossSpec {
    pub name: String,
    pub kind: BicrossKind,
    pub base: Arc<Presentation>,
    /// `[coacted, other]`.
    pub factors: [Arc<Presentation>; 2],
    /// Images of factor generators in the base presentation.
    pub map: BTreeMap<FactorGen, Element>,
    pub actions: Vec<ActionSpec>,
    /// Coaction on coacted generators, in slots `[coacted, other]` for
    /// `Algebra` and `[other, coacted]` for `Group`.
    pub coaction: BTreeMap<GenId, Element>,
}

impl BicrossSpec {
    /// Slot presentations of the coaction values.
    pub fn coaction_slots(&self) -> Vec<Arc<Presentation>> {
        match self.kind {
            BicrossKind::Algebra => vec![self.factors[0].clone(), self.factors[1].clone()],
            BicrossKind::Group => vec![self.factors[1].clone(), self.factors[0].clone()],
        }
    }
}

/// Left coaction of a group on a space: `x -> sum g (x) y`.
#[derive(Clone, Debug)]
pub struct ComoduleSpec {
    pub name: String,
    pub group: Arc<Presentation>,
    pub space: Arc<Presentation>,
    pub coaction: BTreeMap<GenId, Element>,
}

/// Finite-dimensional Lie algebra given by brackets of basis elements.
#[derive(Clone, Debug)]
pub struct LieSpec {
    pub name: String,
    pub basis: Vec<String>,
    /// `[e_a, e_b] = sum c * e_c` for `a < b` as listed.
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, Poly)>>,
    /// Group coordinate dual to each basis element.
    pub dual: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub presentations: Vec<Arc<Presentation>>,
    pub elements: Vec<ElementSet>,
    pub bicross: Vec<BicrossSpec>,
    pub comodules: Vec<ComoduleSpec>,
    pub lies: Vec<LieSpec>,
}

/// Builds every declaration of a parsed file. Presentations may refer to
/// ones declared earlier in the file or supplied in `known`.
pub fn build_document(decls: &[Decl], known: &BTreeMap<String, Arc<Presentation>>) -> Result<Document, Vec<Diagnostic>> {
    let mut doc = Document::default();
    let mut scope = known.clone();
    let mut names = BTreeSet::new();
    for d in decls {
        if !names.insert(d.name.clone()) {
            return Err(vec![diag(d.span, format!("duplicate declaration `{}`", d.name))]);
        }
        match d.kind {
            DeclKind::Presentation => {
                let p = Arc::new(build_presentation(d)?);
                scope.insert(d.name.clone(), p.clone());
                doc.presentations.push(p);
            }
            DeclKind::Elements => doc.elements.push(build_elements(d, &scope).map_err(|e| vec![e])?),
            DeclKind::Bicross => doc.bicross.push(build_bicross(d, &scope).map_err(|e| vec![e])?),
            DeclKind::Comodule => doc.comodules.push(build_comodule(d, &scope).map_err(|e| vec![e])?),
            DeclKind::Lie => doc.lies.push(build_lie(d).map_err(|e| vec![e])?),
        }
    }
    Ok(doc)
}

fn lookup(scope: &BTreeMap<String, Arc<Presentation>>, name: &str, span: Span) -> DResult<Arc<Presentation>> {
    scope
        .get(name)
        .cloned()
        .ok_or_else(|| diag(span, format!("unknown presentation `{name}`")))
}

/// Free index variables of a generator reference with their ranges.
fn genref_vars(g: &GenRef, p: &Presentation) -> DResult<Vec<(String, u8)>> {
    let fam = p
        .families
        .iter()
        .find(|f| f.name == g.name)
        .ok_or_else(|| diag(g.span, format!("unknown generator `{}` in `{}`", g.name, p.name)))?;
    if fam.dims.len() != g.indices.len() {
        return Err(diag(g.span, format!("`{}` takes {} indices, got {}", g.name, fam.dims.len(), g.indices.len())));
    }
    let mut out: Vec<(String, u8)> = Vec::new();
    for (i, d) in g.indices.iter().zip(&fam.dims) {
        match i {
            Index::Var(v) => {
                if out.iter().any(|(w, _)| w == v) {
                    return Err(diag(g.span, format!("index `{v}` repeated in a generator reference")));
                }
                out.push((v.clone(), *d));
            }
            Index::Lit(n) if *n < 1 || n > d => {
                return Err(diag(g.span, format!("index {n} of `{}` out of range 1..{d}", g.name)))
            }
            Index::Lit(_) => {}
        }
    }
    Ok(out)
}

fn genref_id(g: &GenRef, p: &Presentation, env: &Env) -> DResult<GenId> {
    let idx: Vec<u8> = g
        .indices
        .iter()
        .map(|i| match i {
            Index::Lit(n) => *n,
            Index::Var(v) => env[v],
        })
        .collect();
    p.gen_id(&g.name, &idx)
        .ok_or_else(|| diag(g.span, format!("generator `{}` is missing from the order", g.name)))
}

fn envs(vars: &[(String, u8)]) -> Vec<Env> {
    let ranges: Vec<u8> = vars.iter().map(|(_, r)| *r).collect();
    assignments(&ranges)
        .into_iter()
        .map(|a| vars.iter().map(|(v, _)| v.clone()).zip(a).collect())
        .collect()
}

/// Checks that every unsummed index of the expression is free on the left.
fn check_free(ev: &Evaluator, e: &Expr, vars: &[(String, u8)]) -> DResult<()> {
    let exported = ev.exported(e, &BTreeSet::new())?;
    let want: BTreeSet<String> = vars.iter().map(|(v, _)| v.clone()).collect();
    let extra: Vec<_> = exported.difference(&want).cloned().collect();
    if !extra.is_empty() {
        return Err(diag(
            e.span,
            format!("unbalanced indices: {extra:?} occur once on the right but are not free on the left"),
        ));
    }
    Ok(())
}

fn build_presentation(d: &Decl) -> Result<Presentation, Vec<Diagnostic>> {
    let one = |e: Diagnostic| vec![e];
    let mut params = Vec::new();
    let mut families: Vec<Family> = Vec::new();
    let mut order: Option<Vec<String>> = None;
    let mut seen = BTreeSet::new();
    for (sec, span) in &d.sections {
        let key = match sec {
            Section::Params(_) => "params",
            Section::Generators(_) => "generators",
            Section::Order(_) => "order",
            _ => continue,
        };
        if !seen.insert(key) {
            return Err(one(diag(*span, format!("duplicate `{key}:` section"))));
        }
        match sec {
            Section::Params(ps) => {
                for (n, sp) in ps {
                    if matches!(n.as_str(), "I" | "h" | "kappa" | "eps" | "delta") {
                        return Err(one(diag(*sp, format!("`{n}` is reserved"))));
                    }
                    params.push(Sym::new(n));
                }
            }
            Section::Generators(fs) => {
                for f in fs {
                    if families.iter().any(|g| g.name == f.name) {
                        return Err(one(diag(f.span, format!("duplicate generator `{}`", f.name))));
                    }
                    families.push(Family { name: f.name.clone(), dims: f.dims.clone(), grouplike: f.grouplike });
                }
            }
            Section::Order(o) => order = Some(o.iter().map(|(n, _)| n.clone()).collect()),
            _ => unreachable!(),
        }
    }
    for f in &families {
        if params.iter().any(|s| s.name() == f.name) {
            return Err(one(diag(d.span, format!("`{}` is both a parameter and a generator", f.name))));
        }
    }
    let order = order.unwrap_or_else(|| families.iter().map(|f| f.name.clone()).collect());
    let mut p = Presentation::new(&d.name, params, families, &order).map_err(|e| one(diag(d.span, e.to_string())))?;

    // relations
    let mut diags = Vec::new();
    {
        let ev = Evaluator::new(vec![Arc::new(p.clone())], true);
        for (sec, span) in &d.sections {
            let Section::Relation(lhs, rhs) = sec else { continue };
            let res = (|| -> DResult<()> {
                let free = ev.exported(lhs, &BTreeSet::new())?;
                let vars: Vec<(String, u8)> = free.iter().map(|v| (v.clone(), ev.var_range(lhs, v))).collect();
                check_free(&ev, rhs, &vars)?;
                for env in envs(&vars) {
                    let l = ev.eval(lhs, &env)?;
                    let r = ev.eval(rhs, &env)?;
                    p.add_relation(&l, &r).map_err(|m| diag(*span, m))?;
                }
                Ok(())
            })();
            if let Err(e) = res {
                diags.push(e);
            }
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let missing = p.missing_rules();
    if !missing.is_empty() {
        let shown: Vec<String> = missing
            .iter()
            .take(6)
            .map(|(hi, lo)| format!("{}*{}", p.gens[*hi as usize].name, p.gens[*lo as usize].name))
            .collect();
        return Err(one(diag(
            d.span,
            format!(
                "{} out-of-order digram(s) have no relation, e.g. {}",
                missing.len(),
                shown.join(", ")
            ),
        )));
    }
    p.normalize_rules()
        .map_err(|e| one(diag(d.span, format!("unorientable relations: {e}"))))?;
    p.derive_conjugations().map_err(|e| one(diag(d.span, e.to_string())))?;

    // Hopf data and annotations
    let arc = Arc::new(p.clone());
    let ev1 = Evaluator::new(vec![arc.clone()], false);
    let ev2 = Evaluator::new(vec![arc.clone(), arc.clone()], false);
    for (sec, span) in &d.sections {
        let res = (|| -> DResult<()> {
            match sec {
                Section::Coproduct(g, e) => each_gen(&arc, g, e, &ev2, |id, v| {
                    insert_once(&mut p.coproduct, id, v, "coproduct", &arc, *span)
                }),
                Section::Antipode(g, e) => each_gen(&arc, g, e, &ev1, |id, v| {
                    insert_once(&mut p.antipode, id, v, "antipode", &arc, *span)
                }),
                Section::Expansion(g, e) => {
                    each_gen(&arc, g, e, &ev1, |id, v| {
                        if !arc.is_grouplike(id) {
                            return Err(diag(*span, "expansions are declared for grouplike generators only"));
                        }
                        insert_once(&mut p.expansions, id, v, "expansion", &arc, *span)
                    })
                }
                Section::Counit(g, e) => each_gen(&arc, g, e, &ev1, |id, v| {
                    let s = v
                        .as_scalar()
                        .ok_or_else(|| diag(e.span, "counit values must be scalars"))?;
                    if p.counit.insert(id, s).is_some() {
                        return Err(diag(*span, format!("counit of {} given twice", arc.gens[id as usize].name)));
                    }
                    Ok(())
                }),
                Section::Orthogonal(name, sp) => {
                    let fam = arc
                        .families
                        .iter()
                        .find(|f| &f.name == name)
                        .ok_or_else(|| diag(*sp, format!("unknown generator `{name}`")))?;
                    if fam.dims.len() != 2 || fam.dims[0] != fam.dims[1] {
                        return Err(diag(*sp, "orthogonal needs a square matrix family"));
                    }
                    p.orthogonal.push(name.clone());
                    Ok(())
                }
                Section::Params(_) | Section::Generators(_) | Section::Order(_) | Section::Relation(..) => Ok(()),
                _ => Err(diag(*span, "section not allowed in a presentation")),
            }
        })();
        if let Err(e) = res {
            diags.push(e);
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    Ok(p)
}

fn insert_once(
    map: &mut BTreeMap<GenId, Element>,
    id: GenId,
    v: Element,
    what: &str,
    p: &Presentation,
    span: Span,
) -> DResult<()> {
    if map.insert(id, v).is_some() {
        return Err(diag(span, format!("{what} of {} given twice", p.gens[id as usize].name)));
    }
    Ok(())
}

/// Instantiates `g = e` for every value of the free indices of `g`.
fn each_gen(
    p: &Presentation,
    g: &GenRef,
    e: &Expr,
    ev: &Evaluator,
    mut f: impl FnMut(GenId, Element) -> DResult<()>,
) -> DResult<()> {
    let vars = genref_vars(g, p)?;
    check_free(ev, e, &vars)?;
    for env in envs(&vars) {
        let id = genref_id(g, p, &env)?;
        f(id, ev.eval(e, &env)?)?;
    }
    Ok(())
}

fn build_elements(d: &Decl, scope: &BTreeMap<String, Arc<Presentation>>) -> DResult<ElementSet> {
    let (over, sp) = d.over.clone().expect("elements declarations carry `over`");
    let p = lookup(scope, &over, sp)?;
    let ev = Evaluator::new(vec![p.clone()], false);
    let mut items = Vec::new();
    for (sec, span) in &d.sections {
        let Section::Item(name, e, _) = sec else {
            return Err(diag(*span, "only `NAME = expr;` items are allowed in an elements block"));
        };
        if items.iter().any(|(n, _)| n == name) {
            return Err(diag(*span, format!("duplicate element `{name}`")));
        }
        check_free(&ev, e, &[])?;
        items.push((name.clone(), ev.eval(e, &Env::new())?));
    }
    Ok(ElementSet { name: d.name.clone(), over: p, items })
}

fn settings(d: &Decl) -> DResult<BTreeMap<String, (Vec<(String, Span)>, Span)>> {
    let mut out = BTreeMap::new();
    for (sec, span) in &d.sections {
        if let Section::Setting(k, v, _) = sec {
            if out.insert(k.clone(), (v.clone(), *span)).is_some() {
                return Err(diag(*span, format!("duplicate `{k}:` setting")));
            }
        }
    }
    Ok(out)
}

fn setting_one(
    s: &BTreeMap<String, (Vec<(String, Span)>, Span)>,
    key: &str,
    d: &Decl,
) -> DResult<(String, Span)> {
    match s.get(key) {
        Some((v, sp)) if v.len() == 1 => Ok(v[0].clone()),
        Some((_, sp)) => Err(diag(*sp, format!("`{key}:` takes exactly one name"))),
        None => Err(diag(d.span, format!("missing `{key}:` setting"))),
    }
}

fn build_bicross(d: &Decl, scope: &BTreeMap<String, Arc<Presentation>>) -> DResult<BicrossSpec> {
    let s = settings(d)?;
    let (kind_name, ksp) = setting_one(&s, "kind", d)?;
    let kind = match kind_name.as_str() {
        "algebra" => BicrossKind::Algebra,
        "group" => BicrossKind::Group,
        _ => return Err(diag(ksp, "kind must be `algebra` or `group`")),
    };
    let (base_name, bsp) = setting_one(&s, "base", d)?;
    let base = lookup(scope, &base_name, bsp)?;
    let (fnames, fsp) = s.get("factors").cloned().ok_or_else(|| diag(d.span, "missing `factors:` setting"))?;
    if fnames.len() != 2 {
        return Err(diag(fsp, "`factors:` lists the coacted factor and the other factor"));
    }
    let factors = [lookup(scope, &fnames[0].0, fnames[0].1)?, lookup(scope, &fnames[1].0, fnames[1].1)?];
    let resolve_factor = |g: &GenRef| -> DResult<u8> {
        let hits: Vec<u8> = (0..2u8)
            .filter(|&k| factors[k as usize].families.iter().any(|f| f.name == g.name))
            .collect();
        match hits.as_slice() {
            [k] => Ok(*k),
            [] => Err(diag(g.span, format!("`{}` is not a generator of either factor", g.name))),
            _ => Err(diag(g.span, format!("`{}` is ambiguous between the factors", g.name))),
        }
    };
    let base_ev = Evaluator::new(vec![base.clone()], false);
    let factor_ev = [
        Evaluator::new(vec![factors[0].clone()], false),
        Evaluator::new(vec![factors[1].clone()], false),
    ];
    let spec_slots = match kind {
        BicrossKind::Algebra => vec![factors[0].clone(), factors[1].clone()],
        BicrossKind::Group => vec![factors[1].clone(), factors[0].clone()],
    };
    let co_ev = Evaluator::new(spec_slots, false);
    let mut map = BTreeMap::new();
    let mut actions = Vec::new();
    let mut coaction = BTreeMap::new();
    for (sec, span) in &d.sections {
        match sec {
            Section::Setting(..) => {}
            Section::Map(g, e) => {
                let k = resolve_factor(g)?;
                let fp = &factors[k as usize];
                each_gen(fp, g, e, &base_ev, |id, v| {
                    if map.insert(FactorGen { factor: k, gen: id }, v).is_some() {
                        return Err(diag(*span, format!("map of {} given twice", fp.gens[id as usize].name)));
                    }
                    Ok(())
                })?;
            }
            Section::Action(a, op, b, e) => {
                let ka = resolve_factor(a)?;
                let kb = resolve_factor(b)?;
                if ka == kb {
                    return Err(diag(*span, "an action relates generators of different factors"));
                }
                let value_factor = if *op == "|>" { kb } else { ka };
                let ev = &factor_ev[value_factor as usize];
                let pa = &factors[ka as usize];
                let pb = &factors[kb as usize];
                let mut vars = genref_vars(a, pa)?;
                for v in genref_vars(b, pb)? {
                    if vars.iter().any(|(w, _)| *w == v.0) {
                        return Err(diag(b.span, format!("index `{}` repeated", v.0)));
                    }
                    vars.push(v);
                }
                check_free(ev, e, &vars)?;
                for env in envs(&vars) {
                    let ia = genref_id(a, pa, &env)?;
                    let ib = genref_id(b, pb, &env)?;
                    let label = format!(
                        "{} {op} {}",
                        pa.gens[ia as usize].name, pb.gens[ib as usize].name
                    );
                    actions.push(ActionSpec {
                        left: FactorGen { factor: ka, gen: ia },
                        op,
                        right: FactorGen { factor: kb, gen: ib },
                        value: ev.eval(e, &env)?,
                        value_factor,
                        label,
                    });
                }
            }
            Section::Coaction(g, e) => {
                if resolve_factor(g)? != 0 {
                    return Err(diag(g.span, "the coaction is defined on the first (coacted) factor"));
                }
                let fp = &factors[0];
                each_gen(fp, g, e, &co_ev, |id, v| {
                    if coaction.insert(id, v).is_some() {
                        return Err(diag(*span, "coaction given twice"));
                    }
                    Ok(())
                })?;
            }
            _ => return Err(diag(*span, "section not allowed in a bicross declaration")),
        }
    }
    for (k, fp) in factors.iter().enumerate() {
        for (id, g) in fp.gens.iter().enumerate() {
            if !map.contains_key(&FactorGen { factor: k as u8, gen: id as GenId }) {
                return Err(diag(d.span, format!("no `map` for factor generator {}", g.name)));
            }
        }
    }
    for (id, g) in factors[0].gens.iter().enumerate() {
        if !factors[0].is_grouplike(id as GenId) && !coaction.contains_key(&(id as GenId)) {
            return Err(diag(d.span, format!("no coaction for {}", g.name)));
        }
    }
    Ok(BicrossSpec { name: d.name.clone(), kind, base, factors, map, actions, coaction })
}

fn build_comodule(d: &Decl, scope: &BTreeMap<String, Arc<Presentation>>) -> DResult<ComoduleSpec> {
    let s = settings(d)?;
    let (gname, gsp) = setting_one(&s, "group", d)?;
    let (sname, ssp) = setting_one(&s, "space", d)?;
    let group = lookup(scope, &gname, gsp)?;
    let space = lookup(scope, &sname, ssp)?;
    let ev = Evaluator::new(vec![group.clone(), space.clone()], false);
    let mut coaction = BTreeMap::new();
    for (sec, span) in &d.sections {
        match sec {
            Section::Setting(..) => {}
            Section::Coaction(g, e) => each_gen(&space, g, e, &ev, |id, v| {
                if coaction.insert(id, v).is_some() {
                    return Err(diag(*span, "coaction given twice"));
                }
                Ok(())
            })?,
            _ => return Err(diag(*span, "section not allowed in a comodule declaration")),
        }
    }
    for (id, g) in space.gens.iter().enumerate() {
        if !coaction.contains_key(&(id as GenId)) {
            return Err(diag(d.span, format!("no coaction for {}", g.name)));
        }
    }
    Ok(ComoduleSpec { name: d.name.clone(), group, space, coaction })
}

fn build_lie(d: &Decl) -> DResult<LieSpec> {
    let s = settings(d)?;
    let (basis, bsp) = s.get("basis").cloned().ok_or_else(|| diag(d.span, "missing `basis:` setting"))?;
    let names: Vec<String> = basis.iter().map(|(n, _)| n.clone()).collect();
    let fams: Vec<Family> = names.iter().map(|n| Family { name: n.clone(), dims: vec![], grouplike: false }).collect();
    let pres = Presentation::new(&d.name, vec![], fams, &names).map_err(|e| diag(bsp, e.to_string()))?;
    let ev = Evaluator::new(vec![Arc::new(pres.clone())], true);
    let index_of = |g: &GenRef| -> DResult<usize> {
        if !g.indices.is_empty() {
            return Err(diag(g.span, "Lie basis elements take no indices"));
        }
        names
            .iter()
            .position(|n| *n == g.name)
            .ok_or_else(|| diag(g.span, format!("`{}` is not a basis element", g.name)))
    };
    let mut brackets = BTreeMap::new();
    let mut dual = BTreeMap::new();
    for (sec, span) in &d.sections {
        match sec {
            Section::Setting(..) => {}
            Section::Bracket(a, b, e) => {
                let (ia, ib) = (index_of(a)?, index_of(b)?);
                if ia == ib {
                    return Err(diag(*span, "bracket of an element with itself is zero"));
                }
                let v = ev.eval(e, &Env::new())?;
                let mut lin = Vec::new();
                for (w, c) in v.terms() {
                    if w.len() != 1 {
                        return Err(diag(e.span, "bracket values must be linear in the basis"));
                    }
                    lin.push((w[0].gen as usize, c.clone()));
                }
                let (key, lin) = if ia < ib {
                    ((ia, ib), lin)
                } else {
                    ((ib, ia), lin.into_iter().map(|(k, c)| (k, -&c)).collect())
                };
                if brackets.insert(key, lin).is_some() {
                    return Err(diag(*span, "bracket given twice"));
                }
            }
            Section::Dual(g, coord, _) => {
                dual.insert(index_of(g)?, coord.clone());
            }
            _ => return Err(diag(*span, "section not allowed in a lie declaration")),
        }
    }
    Ok(LieSpec { name: d.name.clone(), basis: names, brackets, dual })
}
