//! Classical duality between the Galilei group and its Lie algebra, through
//! a faithful 5x5 matrix model, and the Poisson brackets induced on group
//! coordinates by the cocommutator.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::cohom::LieData;
use crate::error::{Error, Result};
use crate::hopf::{classical_limit, cocommutator};
use crate::models::Catalog;
use crate::ncalg::{Ctx, Element, GenId, Letter, Presentation};
use crate::report::{Check, Report};
use crate::scalars::{GaussQ, Poly};

type Mask = u32;

/// Multilinear polynomial in formal parameters `t_0, t_1, ...` with
/// `t_k^2 = 0`, keyed by the set of parameters in each monomial.
#[derive(Clone, Debug, Default, PartialEq)]
struct Ml(BTreeMap<Mask, GaussQ>);

impl Ml {
    fn constant(c: GaussQ) -> Ml {
        let mut m = Ml::default();
        if !c.is_zero() {
            m.0.insert(0, c);
        }
        m
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_assign(&mut self, o: &Ml) {
        for (k, c) in &o.0 {
            add_into(&mut self.0, *k, c.clone());
        }
    }

    fn mul(&self, o: &Ml) -> Ml {
        let mut out = BTreeMap::new();
        for (ka, ca) in &self.0 {
            for (kb, cb) in &o.0 {
                if ka & kb == 0 {
                    add_into(&mut out, ka | kb, ca * cb);
                }
            }
        }
        Ml(out)
    }

    fn scale(&self, c: &GaussQ) -> Ml {
        if c.is_zero() {
            return Ml::default();
        }
        Ml(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    /// Multiplies by `t_bit`.
    fn shift(&self, bit: u32) -> Ml {
        Ml(self.0.iter().filter(|(k, _)| *k & (1 << bit) == 0).map(|(k, v)| (k | (1 << bit), v.clone())).collect())
    }

    fn coeff(&self, mask: Mask) -> GaussQ {
        self.0.get(&mask).cloned().unwrap_or_else(GaussQ::zero)
    }
}

fn add_into(map: &mut BTreeMap<Mask, GaussQ>, k: Mask, c: GaussQ) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k).or_insert_with(GaussQ::zero);
    *slot += &c;
    if slot.is_zero() {
        map.remove(&k);
    }
}

/// Constant 5x5 matrix, row-major.
type Mat5 = Vec<GaussQ>;

fn mat_zero() -> Mat5 {
    vec![GaussQ::zero(); 25]
}

/// 5x5 matrix of multilinear polynomials.
#[derive(Clone, Debug)]
struct MlMat(Vec<Ml>);

impl MlMat {
    fn identity() -> MlMat {
        MlMat((0..25).map(|k| if k % 6 == 0 { Ml::constant(GaussQ::one()) } else { Ml::default() }).collect())
    }

    fn get(&self, i: usize, j: usize) -> &Ml {
        &self.0[i * 5 + j]
    }

    /// `self * x`.
    fn times_const(&self, x: &Mat5) -> MlMat {
        let mut out = vec![Ml::default(); 25];
        for i in 0..5 {
            for l in 0..5 {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..5 {
                    let c = &x[l * 5 + j];
                    if !c.is_zero() {
                        out[i * 5 + j].add_assign(&a.scale(c));
                    }
                }
            }
        }
        MlMat(out)
    }

    /// `self * (1 + t_bit x)`.
    fn times_factor(&self, x: &Mat5, bit: u32) -> MlMat {
        let tail = self.times_const(x);
        let mut out = self.clone();
        for (o, t) in out.0.iter_mut().zip(&tail.0) {
            o.add_assign(&t.shift(bit));
        }
        out
    }

    fn times(&self, o: &MlMat) -> MlMat {
        let mut out = vec![Ml::default(); 25];
        for i in 0..5 {
            for l in 0..5 {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..5 {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        out[i * 5 + j].add_assign(&a.mul(b));
                    }
                }
            }
        }
        MlMat(out)
    }
}

/// Family name and 1-based indices of a generator name such as `R[1,2]`.
fn split_name(name: &str) -> (&str, Vec<usize>) {
    match name.find('[') {
        Some(k) => (
            &name[..k],
            name[k + 1..name.len() - 1].split(',').map(|s| s.trim().parse::<usize>().unwrap_or(0)).collect(),
        ),
        None => (name, Vec::new()),
    }
}

pub(crate) fn eps(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn neg_i_pow(k: usize) -> GaussQ {
    GaussQ::i_pow(-(k as i64))
}

/// Group element `[[R, v, a], [0, 1, tau], [0, 0, 1]]` acting on
/// `(x1, x2, x3, t, 1)`; generator matrices fixed by the single-generator
/// pairing table.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub group: Arc<Presentation>,
    pub algebra: Arc<Presentation>,
    gens: Vec<Mat5>,
    coords: Vec<(usize, usize)>,
}

impl MatrixModel {
    pub fn new(group: Arc<Presentation>, algebra: Arc<Presentation>) -> Result<MatrixModel> {
        let mut gens = Vec::new();
        for g in &algebra.gens {
            let mut m = mat_zero();
            let bad = || Error::Malformed(format!("{} has no matrix in the Galilei model", g.name));
            match split_name(&g.name) {
                ("M", ix) if ix.len() == 1 && (1..=3).contains(&ix[0]) => {
                    for i in 0..3 {
                        for j in 0..3 {
                            m[i * 5 + j] = GaussQ::from_int(eps(i, j, ix[0] - 1));
                        }
                    }
                }
                ("L", ix) if ix.len() == 1 && (1..=3).contains(&ix[0]) => m[(ix[0] - 1) * 5 + 3] = GaussQ::one(),
                ("P", ix) if ix.len() == 1 && (1..=3).contains(&ix[0]) => m[(ix[0] - 1) * 5 + 4] = GaussQ::one(),
                ("P0", ix) if ix.is_empty() => m[3 * 5 + 4] = GaussQ::from_int(-1),
                _ => return Err(bad()),
            }
            gens.push(m);
        }
        let mut coords = Vec::new();
        for g in &group.gens {
            let c = match split_name(&g.name) {
                ("R", ix) if ix.len() == 2 && ix.iter().all(|i| (1..=3).contains(i)) => (ix[0] - 1, ix[1] - 1),
                ("v", ix) if ix.len() == 1 && (1..=3).contains(&ix[0]) => (ix[0] - 1, 3),
                ("a", ix) if ix.len() == 1 && (1..=3).contains(&ix[0]) => (ix[0] - 1, 4),
                ("tau", ix) if ix.is_empty() => (3, 4),
                _ => return Err(Error::Malformed(format!("{} is not a Galilei group coordinate", g.name))),
            };
            coords.push(c);
        }
        let model = MatrixModel { group, algebra, gens, coords };
        let table = model.pairing_table()?;
        if !table.passed() {
            let bad: Vec<String> = table.failures().map(|c| format!("{}: {}", c.id, c.residual)).collect();
            return Err(Error::Domain(format!("matrix model disagrees with the duality table: {}", bad.join("; "))));
        }
        Ok(model)
    }

    /// Classical group (the `h -> 0` limit of the deformed group) and the
    /// classical algebra, from the shipped models.
    pub fn galilei(cat: &Catalog) -> Result<MatrixModel> {
        let group = classical_limit(&*cat.presentation("galilei_group_kappa")?, "galilei_group_classical")?;
        MatrixModel::new(Arc::new(group), cat.presentation("galilei_algebra_classical")?)
    }

    /// `(1 + t_0 X_0) ... (1 + t_{k-1} X_{k-1})`.
    fn product(&self, x: &[GenId]) -> MlMat {
        let mut m = MlMat::identity();
        for (k, g) in x.iter().enumerate() {
            m = m.times_factor(&self.gens[*g as usize], k as u32);
        }
        m
    }

    fn check_phi(&self, phi: &Element) -> Result<()> {
        for (w, _) in phi.terms() {
            if let Some(l) = w.iter().find(|l| l.slot != 0 || l.gen as usize >= self.coords.len()) {
                return Err(Error::Argument(format!("letter {l:?} is not a group coordinate")));
            }
        }
        Ok(())
    }

    fn eval_top(&self, phi: &Element, m: &MlMat, full: Mask) -> Poly {
        let mut out = Poly::zero();
        for (w, coef) in phi.terms() {
            let mut v = Ml::constant(GaussQ::one());
            for l in w {
                let (r, c) = self.coords[l.gen as usize];
                v = v.mul(m.get(r, c));
                if v.is_zero() {
                    break;
                }
            }
            let top = v.coeff(full);
            if !top.is_zero() {
                out.add_assign_ref(&coef.scale(&top));
            }
        }
        out
    }

    /// `<phi, X_0 ... X_{k-1}>`: `(-i)^k` times the coefficient of
    /// `t_0 ... t_{k-1}` in `phi((1 + t_0 X_0) ... (1 + t_{k-1} X_{k-1}))`.
    /// Group words are read as commuting coordinate functions.
    pub fn pair(&self, phi: &Element, x: &[GenId]) -> Result<Poly> {
        self.check_phi(phi)?;
        if let Some(g) = x.iter().find(|g| **g as usize >= self.gens.len()) {
            return Err(Error::Argument(format!("generator id {g} is not in {}", self.algebra.name)));
        }
        let full = (1u32 << x.len()) - 1;
        Ok(self.eval_top(phi, &self.product(x), full).scale(&neg_i_pow(x.len())))
    }

    pub fn coordinate(&self, name: &str) -> Result<Element> {
        let g = self
            .group
            .gen_by_name(name)
            .ok_or_else(|| Error::PresentationMismatch(name.to_string(), self.group.name.clone()))?;
        Ok(Element::letter(Letter::new(0, g)))
    }

    pub fn generator(&self, name: &str) -> Result<GenId> {
        self.algebra
            .gen_by_name(name)
            .ok_or_else(|| Error::PresentationMismatch(name.to_string(), self.algebra.name.clone()))
    }

    /// An element of another presentation with the same coordinate names,
    /// rewritten over the model's group.
    pub fn import(&self, e: &Element, from: &Presentation) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut word = Vec::with_capacity(w.len());
            for l in w {
                let name = &from.gens[l.gen as usize].name;
                let g = self
                    .group
                    .gen_by_name(name)
                    .ok_or_else(|| Error::PresentationMismatch(name.clone(), self.group.name.clone()))?;
                for _ in 0..l.pow {
                    word.push(Letter::new(0, g));
                }
            }
            word.sort();
            out.add_term(word, c.clone());
        }
        Ok(out)
    }

    /// Single-generator pairings against the table: `<tau, P0> = i`,
    /// `<v^i, L_k> = -i delta`, `<a^i, P_k> = -i delta`,
    /// `<R^i_j, M_k> = -i eps_ijk`, all others zero.
    pub fn pairing_table(&self) -> Result<Report> {
        let mut report = Report::new("duality");
        let anchor = "classical duality table";
        for (gi, g) in self.group.gens.iter().enumerate() {
            for (xi, x) in self.algebra.gens.iter().enumerate() {
                let t0 = Instant::now();
                let expected = expected_pairing(&g.name, &x.name);
                let got = self.pair(&Element::letter(Letter::new(0, gi as GenId)), &[xi as GenId])?;
                let diff = &got - &Poly::constant(expected);
                report.push(
                    Check::pass_if(format!("pairing/{},{}", g.name, x.name), anchor, diff.is_zero(), diff.to_string()).took(t0),
                );
            }
        }
        Ok(report)
    }

    /// The generator matrices satisfy `[X_a, X_b] = i sum_k c_abk X_k`, so
    /// the pairing is well defined on the enveloping algebra.
    pub fn bracket_consistency(&self) -> Result<Report> {
        let lie = LieData::from_presentation(&self.algebra)?;
        let mut report = Report::new("duality");
        let anchor = "classical duality table";
        let n = lie.dim();
        let mul = |a: &Mat5, b: &Mat5| -> Mat5 {
            let mut m = mat_zero();
            for i in 0..5 {
                for l in 0..5 {
                    for j in 0..5 {
                        let v = &a[i * 5 + l] * &b[l * 5 + j];
                        m[i * 5 + j] += &v;
                    }
                }
            }
            m
        };
        for a in 0..n {
            for b in a + 1..n {
                let t0 = Instant::now();
                let (xa, xb) = (&self.gens[a], &self.gens[b]);
                let mut res: Mat5 = mul(xa, xb).iter().zip(mul(xb, xa)).map(|(p, q)| p - &q).collect();
                for (k, c) in lie.bracket(a, b).iter().enumerate() {
                    let s = c * &GaussQ::i();
                    for (r, x) in res.iter_mut().zip(&self.gens[k]) {
                        *r -= &(&s * x);
                    }
                }
                let ok = res.iter().all(Zero::is_zero);
                report.push(
                    Check::pass_if(format!("representation/{},{}", lie.labels[a], lie.labels[b]), anchor, ok, if ok { "0" } else { "nonzero" })
                        .took(t0),
                );
            }
        }
        Ok(report)
    }
}

fn expected_pairing(coord: &str, gen: &str) -> GaussQ {
    let mi = -GaussQ::i();
    let delta = |a: &[usize], b: &[usize]| if a == b { mi.clone() } else { GaussQ::zero() };
    match (split_name(coord), split_name(gen)) {
        (("tau", _), ("P0", _)) => GaussQ::i(),
        (("v", i), ("L", k)) => delta(&i, &k),
        (("a", i), ("P", k)) => delta(&i, &k),
        (("R", ij), ("M", k)) => mi.scale(&crate::scalars::rat_int(eps(ij[0] - 1, ij[1] - 1, k[0] - 1))),
        _ => GaussQ::zero(),
    }
}

/// Cocommutator of each algebra generator as `sum c s' (x) s''`, with the
/// factor `h` of the deformation included.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    pub terms: Vec<Vec<(GenId, GenId, Poly)>>,
}

impl SigmaTable {
    /// From the coproduct of the deformed algebra, matched to the classical
    /// algebra by generator name.
    pub fn from_hopf(deformed: &Arc<Presentation>, classical: &Presentation) -> Result<SigmaTable> {
        let h = Poly::h_pow(1);
        let mut terms = Vec::new();
        for g in &classical.gens {
            let id = deformed
                .gen_by_name(&g.name)
                .ok_or_else(|| Error::PresentationMismatch(g.name.clone(), deformed.name.clone()))?;
            let w = cocommutator(deformed, id)?;
            let mut row = Vec::new();
            for (word, c) in w.elem.terms() {
                let ok = word.len() == 2 && word[0].slot == 0 && word[1].slot == 1;
                if !ok {
                    return Err(Error::Malformed(format!("cocommutator of {} is not in g (x) g", g.name)));
                }
                let to_classical = |l: &Letter| -> Result<GenId> {
                    let name = &deformed.gens[l.gen as usize].name;
                    classical
                        .gen_by_name(name)
                        .ok_or_else(|| Error::PresentationMismatch(name.clone(), classical.name.clone()))
                };
                row.push((to_classical(&word[0])?, to_classical(&word[1])?, c * &h));
            }
            terms.push(row);
        }
        Ok(SigmaTable { terms })
    }

    /// `sigma(X)` for a word, by `sigma(xy) = sigma(x) Delta(y) + Delta(x)
    /// sigma(y)` with primitive `Delta`, normal-ordered in two slots.
    pub fn of_word(&self, x: &[GenId], ctx2: &Ctx) -> Result<Element> {
        let mut out = Element::zero();
        for j in 0..x.len() {
            let prim = |g: GenId| Element::letter(Letter::new(0, g)).add(&Element::letter(Letter::new(1, g)));
            let mut factors: Vec<Element> = x[..j].iter().map(|g| prim(*g)).collect();
            let mut s = Element::zero();
            for (a, b, c) in &self.terms[x[j] as usize] {
                s.add_term(vec![Letter::new(0, *a), Letter::new(1, *b)], c.clone());
            }
            factors.push(s);
            factors.extend(x[j + 1..].iter().map(|g| prim(*g)));
            let refs: Vec<&Element> = factors.iter().collect();
            out.add_assign(&ctx2.mul_all(&refs)?);
        }
        Ok(out)
    }
}

/// PBW monomials (non-decreasing generator sequences) over `n` generators
/// of length at most `max_degree`, by length.
pub fn pbw_monomials(n: usize, max_degree: usize) -> Vec<Vec<GenId>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<GenId>> = vec![Vec::new()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for g in start..n as GenId {
                let mut w = m.clone();
                w.push(g);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Right side `-i <f (x) g, sigma(X)>` of the Poisson pairing for
/// coordinates, evaluated for a batch of coordinate pairs.
fn sigma_pairings(model: &MatrixModel, sigma: &SigmaTable, x: &[GenId], pairs: &[(usize, usize)]) -> Vec<Poly> {
    let k = x.len();
    let mut out = vec![Poly::zero(); pairs.len()];
    let prefix: Vec<MlMat> = (0..=k).scan(MlMat::identity(), |m, j| {
        let cur = m.clone();
        if j < k {
            *m = m.times_factor(&model.gens[x[j] as usize], j as u32);
        }
        Some(cur)
    }).collect();
    let mut suffix = vec![MlMat::identity(); k + 1];
    for j in (0..k).rev() {
        let mut m = MlMat::identity().times_factor(&model.gens[x[j] as usize], j as u32);
        m = m.times(&suffix[j + 1]);
        suffix[j] = m;
    }
    let all = if k == 0 { 0 } else { (1u32 << k) - 1 };
    let scale = neg_i_pow(k + 1) * (-GaussQ::i());
    for j in 0..k {
        let full = all & !(1 << j);
        let mut cache: BTreeMap<GenId, MlMat> = BTreeMap::new();
        let mut slot = |s: GenId| -> MlMat {
            cache
                .entry(s)
                .or_insert_with(|| prefix[j].times_const(&model.gens[s as usize]).times(&suffix[j + 1]))
                .clone()
        };
        for (a, b, c) in &sigma.terms[x[j] as usize] {
            let (p1, p2) = (slot(*a), slot(*b));
            for (n, (f, g)) in pairs.iter().enumerate() {
                let (rf, cf) = model.coords[*f];
                let (rg, cg) = model.coords[*g];
                let (e1, e2) = (p1.get(rf, cf), p2.get(rg, cg));
                if e1.is_zero() || e2.is_zero() {
                    continue;
                }
                let top = e1.mul(e2).coeff(full);
                if !top.is_zero() {
                    out[n].add_assign_ref(&c.scale(&(&top * &scale)));
                }
            }
        }
    }
    out
}

/// `-i <f (x) g, sigma(X)>` for two coordinates, by name.
pub fn sigma_side(model: &MatrixModel, sigma: &SigmaTable, x: &[GenId], f: &str, g: &str) -> Result<Poly> {
    let fi = model.group.gen_by_name(f).ok_or_else(|| Error::PresentationMismatch(f.into(), model.group.name.clone()))?;
    let gi = model.group.gen_by_name(g).ok_or_else(|| Error::PresentationMismatch(g.into(), model.group.name.clone()))?;
    Ok(sigma_pairings(model, sigma, x, &[(fi as usize, gi as usize)]).remove(0))
}

struct Sweep {
    checked: usize,
    mismatch: Option<(Vec<GenId>, Poly, Poly)>,
}

fn poisson_sweep(model: &MatrixModel, sigma: &SigmaTable, pairs: &[(usize, usize, Element)], degree_bound: usize) -> Vec<Sweep> {
    let coords: Vec<(usize, usize)> = pairs.iter().map(|(f, g, _)| (*f, *g)).collect();
    let mut out: Vec<Sweep> = pairs.iter().map(|_| Sweep { checked: 0, mismatch: None }).collect();
    for x in pbw_monomials(model.gens.len(), degree_bound) {
        let rhs = sigma_pairings(model, sigma, &x, &coords);
        let prod = model.product(&x);
        let full = if x.is_empty() { 0 } else { (1u32 << x.len()) - 1 };
        let sign = neg_i_pow(x.len());
        for (n, (_, _, cand)) in pairs.iter().enumerate() {
            let lhs = model.eval_top(cand, &prod, full).scale(&sign);
            out[n].checked += 1;
            if lhs != rhs[n] && out[n].mismatch.is_none() {
                out[n].mismatch = Some((x.clone(), lhs, rhs[n].clone()));
            }
        }
    }
    out
}

fn render_monomial(model: &MatrixModel, x: &[GenId]) -> String {
    if x.is_empty() {
        return "1".into();
    }
    x.iter().map(|g| model.algebra.gens[*g as usize].name.as_str()).collect::<Vec<_>>().join("*")
}

fn sweep_check(model: &MatrixModel, f: usize, g: usize, s: Sweep, degree_bound: usize, anchor: &str, t0: Instant) -> Check {
    let id = format!("poisson/{},{}", model.group.gens[f].name, model.group.gens[g].name);
    let residual = match &s.mismatch {
        None => "0".to_string(),
        Some((x, l, r)) => format!("at {}: candidate pairs to {l}, cocommutator side {r}", render_monomial(model, x)),
    };
    Check::pass_if(id, anchor, s.mismatch.is_none(), residual)
        .degree(degree_bound as u32)
        .detail(format!("{} PBW monomials up to degree {degree_bound}", s.checked))
        .took(t0)
}

/// Checks `<candidate, X> = -i <f (x) g, sigma(X)>` on every PBW monomial
/// of degree at most `degree_bound`.
pub fn poisson_verify(
    model: &MatrixModel,
    sigma: &SigmaTable,
    f: &str,
    g: &str,
    candidate: &Element,
    degree_bound: usize,
) -> Result<Report> {
    poisson_verify_all(model, sigma, &[(f, g, candidate.clone())], degree_bound)
}

/// [`poisson_verify`] for several brackets, sharing one sweep over the
/// monomials.
pub fn poisson_verify_all(
    model: &MatrixModel,
    sigma: &SigmaTable,
    brackets: &[(&str, &str, Element)],
    degree_bound: usize,
) -> Result<Report> {
    let mut pairs = Vec::with_capacity(brackets.len());
    for (f, g, candidate) in brackets {
        model.check_phi(candidate)?;
        let need = candidate.degree() + 1;
        if degree_bound < need {
            return Err(Error::Argument(format!(
                "degree bound {degree_bound} cannot decide a candidate of degree {}: at least {need} is needed",
                candidate.degree()
            )));
        }
        let fi = model.group.gen_by_name(f).ok_or_else(|| Error::PresentationMismatch(f.to_string(), model.group.name.clone()))?;
        let gi = model.group.gen_by_name(g).ok_or_else(|| Error::PresentationMismatch(g.to_string(), model.group.name.clone()))?;
        pairs.push((fi as usize, gi as usize, candidate.clone()));
    }
    let t0 = Instant::now();
    let sweeps = poisson_sweep(model, sigma, &pairs, degree_bound);
    let mut report = Report::new("duality");
    for ((f, g, _), s) in pairs.iter().zip(sweeps) {
        report.push(sweep_check(model, *f, *g, s, degree_bound, "Poisson bracket from the cocommutator", t0));
    }
    Ok(report)
}

/// For every pair of coordinates, the candidate `{f, g} = -i [f, g]` read
/// off the deformed group is checked against the Poisson structure of the
/// cocommutator. `degree_bound` defaults to the largest candidate degree
/// plus two.
pub fn quantization_crosscheck(
    model: &MatrixModel,
    sigma: &SigmaTable,
    deformed: &Arc<Presentation>,
    degree_bound: Option<usize>,
) -> Result<Report> {
    let ctx = Ctx::tensor_power(deformed, 1);
    let n = deformed.gens.len();
    let mut pairs = Vec::new();
    for f in 0..n {
        for g in f + 1..n {
            let (x, y) = (Element::letter(Letter::new(0, f as GenId)), Element::letter(Letter::new(0, g as GenId)));
            let cand = ctx.commutator(&x, &y)?.scale(&Poly::constant(-GaussQ::i()));
            let fm = model.group.gen(&deformed.gens[f].name) as usize;
            let gm = model.group.gen(&deformed.gens[g].name) as usize;
            pairs.push((fm, gm, model.import(&cand, deformed)?));
        }
    }
    let max_deg = pairs.iter().map(|(_, _, c)| c.degree()).max().unwrap_or(0);
    let bound = degree_bound.unwrap_or(max_deg + 2);
    if bound < max_deg + 1 {
        return Err(Error::Argument(format!("degree bound {bound} is below {}", max_deg + 1)));
    }
    let t0 = Instant::now();
    let sweeps = poisson_sweep(model, sigma, &pairs, bound);
    let mut report = Report::new("duality");
    for ((f, g, _), s) in pairs.iter().zip(sweeps) {
        report.push(sweep_check(model, *f, *g, s, bound, "group relations as quantized Poisson brackets", t0));
    }
    Ok(report)
}

/// `eps_{i l1 n1} eps_{l1 l2 n2} ... eps_{l(k-1) j nk}`, `delta_ij` for `k = 0`.
fn eps_chain(i: usize, j: usize, ns: &[usize]) -> i64 {
    match ns {
        [] => (i == j) as i64,
        [n] => eps(i, j, *n),
        [n, rest @ ..] => (0..3).map(|l| eps(i, l, *n) * eps_chain(l, j, rest)).sum(),
    }
}

fn index_tuples(len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..3).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Closed-form pairings of coordinates with words in `k` rotations, taken
/// as displayed with `J = M` and `H = P0`, for `k <= kmax`. A mismatch
/// is reported as INFO, with the first offending instance.
pub fn rotation_power_identities(model: &MatrixModel, kmax: usize) -> Result<Report> {
    let mut report = Report::new("duality");
    let anchor = "closed-form pairings with powers of rotations";
    let m_ids: Vec<GenId> = (1..=3).map(|k| model.generator(&format!("M[{k}]"))).collect::<Result<_>>()?;
    let l_ids: Vec<GenId> = (1..=3).map(|k| model.generator(&format!("L[{k}]"))).collect::<Result<_>>()?;
    let p_ids: Vec<GenId> = (1..=3).map(|k| model.generator(&format!("P[{k}]"))).collect::<Result<_>>()?;
    let p0 = model.generator("P0")?;
    let r = |i: usize, j: usize| model.coordinate(&format!("R[{},{}]", i + 1, j + 1));
    let chain_value = |i: usize, j: usize, ns: &[usize]| -> Poly {
        Poly::constant(neg_i_pow(ns.len()).scale(&crate::scalars::rat_int(eps_chain(i, j, ns))))
    };
    let mut emit = |id: String, cases: usize, mismatch: Option<String>, t0: Instant| {
        let c = match mismatch {
            None => Check::pass_if(id, anchor, true, "0"),
            Some(m) => Check::info(id, anchor, m),
        };
        report.push(c.detail(format!("{cases} index assignments")).took(t0));
    };
    let js = |ns: &[usize]| -> Vec<GenId> { ns.iter().map(|n| m_ids[*n]).collect() };
    for k in 0..=kmax {
        // <R_ij, J...J X> = (-i)^k delta_XI eps-chain
        let t0 = Instant::now();
        let mut cases = 0;
        let mut mismatch = None;
        for ns in index_tuples(k) {
            for i in 0..3 {
                for j in 0..3 {
                    for tail in [None, Some(l_ids[0]), Some(p_ids[1]), Some(p0)] {
                        let mut x = js(&ns);
                        x.extend(tail);
                        let want = if tail.is_none() { chain_value(i, j, &ns) } else { Poly::zero() };
                        let got = model.pair(&r(i, j)?, &x)?;
                        cases += 1;
                        if got != want && mismatch.is_none() {
                            mismatch = Some(format!("R[{},{}] on {}: {got} vs {want}", i + 1, j + 1, render_monomial(model, &x)));
                        }
                    }
                }
            }
        }
        emit(format!("rotation-powers/R/k={k}"), cases, mismatch, t0);

        // <tau, X H^k> = i delta_XI delta_k1
        let t0 = Instant::now();
        let mut cases = 0;
        let mut mismatch = None;
        let tau = model.coordinate("tau")?;
        for head in [None, Some(m_ids[0]), Some(l_ids[1]), Some(p_ids[2])] {
            let mut x: Vec<GenId> = head.into_iter().collect();
            x.extend(std::iter::repeat_n(p0, k));
            let want = if head.is_none() && k == 1 { Poly::i() } else { Poly::zero() };
            let got = model.pair(&tau, &x)?;
            cases += 1;
            if got != want && mismatch.is_none() {
                mismatch = Some(format!("tau on {}: {got} vs {want}", render_monomial(model, &x)));
            }
        }
        emit(format!("rotation-powers/tau/k={k}"), cases, mismatch, t0);

        // <v_i, J...J L_m> = -i <R_im, J...J>, and the two lines for a
        let lines: [(&str, &str, Vec<GenId>, GaussQ); 3] = [
            ("v", "L", vec![], -GaussQ::i()),
            ("a", "P", vec![], -GaussQ::i()),
            ("a", "L", vec![p0], GaussQ::one()),
        ];
        for (coord, last, extra, factor) in lines {
            let t0 = Instant::now();
            let mut cases = 0;
            let mut mismatch = None;
            let last_ids = if last == "L" { &l_ids } else { &p_ids };
            for ns in index_tuples(k) {
                for i in 0..3 {
                    for m in 0..3 {
                        let mut x = js(&ns);
                        x.push(last_ids[m]);
                        x.extend(extra.iter().copied());
                        let phi = model.coordinate(&format!("{coord}[{}]", i + 1))?;
                        let got = model.pair(&phi, &x)?;
                        let want = model.pair(&r(i, m)?, &js(&ns))?.scale(&factor);
                        cases += 1;
                        if got != want && mismatch.is_none() {
                            mismatch = Some(format!("{coord}[{}] on {}: {got} vs {want}", i + 1, render_monomial(model, &x)));
                        }
                    }
                }
            }
            let tag = if extra.is_empty() { format!("{coord}{last}") } else { format!("{coord}{last}P0") };
            emit(format!("rotation-powers/{tag}/k={k}"), cases, mismatch, t0);
        }
    }
    Ok(report)
}
