use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use super::element::{min_trunc, Element, Letter, Word};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::scalars::Poly;

const STEP_BUDGET: usize = 20_000_000;
const DEPTH_LIMIT: usize = 600;

type Terms = Rc<Vec<(Word, Poly)>>;

/// Tensor context: one presentation per slot. Owns the normal-ordering
/// memo table, so it is cheap to reuse and not shared across threads.
pub struct Ctx {
    slots: Vec<Arc<Presentation>>,
    cache: RefCell<HashMap<(Word, Letter), Terms>>,
    steps: Cell<usize>,
}

impl Ctx {
    pub fn new(slots: Vec<Arc<Presentation>>) -> Ctx {
        assert!(!slots.is_empty(), "tensor context needs at least one slot");
        Ctx { slots, cache: RefCell::new(HashMap::new()), steps: Cell::new(0) }
    }

    /// `n` copies of the same presentation.
    pub fn tensor_power(p: &Arc<Presentation>, n: usize) -> Ctx {
        Ctx::new(vec![p.clone(); n])
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn pres(&self, slot: u8) -> &Arc<Presentation> {
        &self.slots[slot as usize]
    }

    pub fn presentations(&self) -> &[Arc<Presentation>] {
        &self.slots
    }

    /// Same presentations with slot `at` duplicated.
    pub fn with_slot_split(&self, at: u8) -> Ctx {
        let mut slots = self.slots.clone();
        slots.insert(at as usize + 1, self.slots[at as usize].clone());
        Ctx::new(slots)
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        for (w, _) in e.terms() {
            for l in w {
                let p = self
                    .slots
                    .get(l.slot as usize)
                    .ok_or_else(|| Error::Context(format!("letter in slot {} but context has {} slots", l.slot + 1, self.slots.len())))?;
                let g = p
                    .gens
                    .get(l.gen as usize)
                    .ok_or_else(|| Error::PresentationMismatch(format!("#{}", l.gen), p.name.clone()))?;
                if l.pow != 1 && !g.grouplike {
                    return Err(Error::Context(format!("power {} on non-grouplike {}", l.pow, g.name)));
                }
                if l.pow == 0 {
                    return Err(Error::Context("zero power letter".into()));
                }
            }
        }
        Ok(())
    }

    fn in_order(&self, y: Letter, x: Letter) -> bool {
        y.slot < x.slot
            || (y.slot == x.slot
                && (y.gen < x.gen || (y.gen == x.gen && !self.slots[y.slot as usize].is_grouplike(y.gen))))
    }

    fn tick(&self, y: Letter, x: Letter) -> Result<()> {
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if s > STEP_BUDGET {
            return Err(self.divergence(s, y, x));
        }
        Ok(())
    }

    fn divergence(&self, steps: usize, y: Letter, x: Letter) -> Error {
        let p = &self.slots[y.slot as usize];
        Error::Divergence {
            steps,
            digram: format!("{}*{}", p.gens[y.gen as usize].name, p.gens[x.gen as usize].name),
        }
    }

    /// Normal form of `w * x` for a normal word `w`.
    fn word_times_letter(&self, w: &[Letter], x: Letter, depth: usize) -> Result<Terms> {
        let Some((&y, rest)) = w.split_last() else {
            return Ok(Rc::new(vec![(vec![x], Poly::one())]));
        };
        if self.in_order(y, x) {
            let mut out = w.to_vec();
            out.push(x);
            return Ok(Rc::new(vec![(out, Poly::one())]));
        }
        let p = &self.slots[y.slot as usize];
        if y.slot == x.slot && y.gen == x.gen {
            let pow = y.pow + x.pow;
            let mut out = rest.to_vec();
            if pow != 0 {
                out.push(Letter { pow, ..y });
            }
            return Ok(Rc::new(vec![(out, Poly::one())]));
        }
        let key = (w.to_vec(), x);
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        if depth > DEPTH_LIMIT {
            return Err(self.divergence(self.steps.get(), y, x));
        }
        self.tick(y, x)?;
        let mut acc: BTreeMap<Word, Poly> = BTreeMap::new();
        if y.slot > x.slot || (p.is_grouplike(y.gen) && p.is_grouplike(x.gen)) {
            // letters commute: move x past y
            let inner = self.word_times_letter(rest, x, depth + 1)?;
            for (u, c) in inner.iter() {
                for (u2, c2) in self.word_times_letter(u, y, depth + 1)?.iter() {
                    add_into(&mut acc, u2.clone(), c * c2);
                }
            }
        } else if p.is_grouplike(y.gen) {
            // g^n x = g^(n-s) phi_s(x) g^s
            let s: i8 = if y.pow > 0 { 1 } else { -1 };
            let mut base = rest.to_vec();
            if y.pow - s as i32 != 0 {
                base.push(Letter { pow: y.pow - s as i32, ..y });
            }
            let phi = p
                .conj(y.gen, x.gen, s)
                .ok_or_else(|| self.divergence(self.steps.get(), y, x))?;
            let g = Letter { pow: s as i32, ..y };
            for (u, c) in phi.terms() {
                let u: Word = u.iter().map(|l| Letter { slot: y.slot, ..*l }).collect();
                let mut partial = self.word_times_word(&base, &u, depth + 1)?;
                partial = self.terms_times_letter(partial, g, depth + 1)?;
                for (u2, c2) in partial {
                    add_into(&mut acc, u2, c * &c2);
                }
            }
        } else {
            let rhs = p.rule(y.gen, x.gen).ok_or_else(|| {
                Error::Malformed(format!(
                    "presentation `{}` has no rule for {}*{}",
                    p.name, p.gens[y.gen as usize].name, p.gens[x.gen as usize].name
                ))
            })?;
            for (u, c) in rhs.terms() {
                let u: Word = u.iter().map(|l| Letter { slot: y.slot, ..*l }).collect();
                for (u2, c2) in self.word_times_word(rest, &u, depth + 1)? {
                    add_into(&mut acc, u2, c * &c2);
                }
            }
        }
        let terms: Terms = Rc::new(acc.into_iter().collect());
        self.cache.borrow_mut().insert(key, terms.clone());
        Ok(terms)
    }

    fn terms_times_letter(&self, terms: Vec<(Word, Poly)>, x: Letter, depth: usize) -> Result<Vec<(Word, Poly)>> {
        let mut acc: BTreeMap<Word, Poly> = BTreeMap::new();
        for (u, c) in terms {
            for (u2, c2) in self.word_times_letter(&u, x, depth)?.iter() {
                add_into(&mut acc, u2.clone(), &c * c2);
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// Normal form of `w * u` for normal `w` and arbitrary `u`.
    fn word_times_word(&self, w: &[Letter], u: &[Letter], depth: usize) -> Result<Vec<(Word, Poly)>> {
        let mut cur = vec![(w.to_vec(), Poly::one())];
        for &x in u {
            cur = self.terms_times_letter(cur, x, depth)?;
        }
        Ok(cur)
    }

    /// Unique PBW normal form.
    pub fn normal_order(&self, e: &Element) -> Result<Element> {
        self.check(e)?;
        let mut out = Element::zero().with_trunc(e.trunc());
        for (w, c) in e.terms() {
            for (u, c2) in self.word_times_word(&[], w, 0)? {
                out.add_term(u, c * &c2);
            }
        }
        Ok(out)
    }

    /// Product of a normal-ordered `a` with any `b`.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut out = Element::zero().with_trunc(min_trunc(a.trunc(), b.trunc()));
        let t = out.trunc();
        for (w1, c1) in a.terms() {
            for (w2, c2) in b.terms() {
                let mut c = c1 * c2;
                if let Some(n) = t {
                    c = c.truncate_h(n);
                    if c.is_zero() {
                        continue;
                    }
                }
                for (u, c3) in self.word_times_word(w1, w2, 0)? {
                    out.add_term(u, &c * &c3);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[&Element]) -> Result<Element> {
        let mut acc = Element::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `xy - yx`, normal-ordered.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        let x = self.normal_order(x)?;
        let y = self.normal_order(y)?;
        Ok(self.mul(&x, &y)?.sub(&self.mul(&y, &x)?))
    }

    pub fn pow(&self, e: &Element, n: u32) -> Result<Element> {
        let e = self.normal_order(e)?;
        let mut acc = Element::one().with_trunc(e.trunc());
        for _ in 0..n {
            acc = self.mul(&acc, &e)?;
        }
        Ok(acc)
    }

    /// Applies a letter-wise map as an algebra homomorphism (or
    /// anti-homomorphism) into this context. `image` receives letters with
    /// power `+1` or `-1`.
    pub fn apply_hom(
        &self,
        e: &Element,
        image: &dyn Fn(Letter) -> Result<Element>,
        anti: bool,
    ) -> Result<Element> {
        let mut memo: HashMap<Letter, Element> = HashMap::new();
        let mut out = Element::zero().with_trunc(e.trunc());
        for (w, c) in e.terms() {
            let mut acc = Element::scalar(c.clone()).with_trunc(e.trunc());
            let letters: Vec<Letter> = if anti { w.iter().rev().copied().collect() } else { w.clone() };
            for l in letters {
                let unit = Letter { pow: l.pow.signum(), ..l };
                if let std::collections::hash_map::Entry::Vacant(e) = memo.entry(unit) {
                    let img = self.normal_order(&image(unit)?)?;
                    e.insert(img);
                }
                let img = &memo[&unit];
                for _ in 0..l.pow.unsigned_abs() {
                    acc = self.mul(&acc, img)?;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// `phi_g` (conjugation by grouplike `g`) on a single-slot element.
    pub(crate) fn apply_conj(&self, e: &Element, g: u16) -> Result<Element> {
        let p = self.slots[0].clone();
        self.apply_hom(
            e,
            &|l: Letter| {
                if l.gen < g {
                    p.conj(g, l.gen, 1)
                        .cloned()
                        .ok_or_else(|| Error::Malformed("missing conjugation".into()))
                } else {
                    Ok(Element::letter(l))
                }
            },
            false,
        )
    }

    pub fn render(&self, e: &Element) -> String {
        render(e, &self.slots)
    }
}

fn add_into(acc: &mut BTreeMap<Word, Poly>, w: Word, c: Poly) {
    if c.is_zero() {
        return;
    }
    match acc.entry(w) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            o.get_mut().add_assign_ref(&c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Inverse of a single term whose word is made of grouplike letters.
pub fn invert_grouplike_monomial(e: &Element, slots: &[Arc<Presentation>]) -> Option<Element> {
    let (w, c) = {
        let mut it = e.terms();
        let first = it.next()?;
        if it.next().is_some() {
            return None;
        }
        first
    };
    if w.iter().any(|l| !slots[l.slot as usize].is_grouplike(l.gen)) {
        return None;
    }
    let inv_c = c.inv_monomial()?;
    let inv_w: Word = w.iter().rev().map(|l| Letter { pow: -l.pow, ..*l }).collect();
    Some(Element::term(inv_w, inv_c))
}

pub fn render_letter(l: &Letter, p: &Presentation) -> String {
    let name = &p.gens[l.gen as usize].name;
    if l.pow == 1 {
        name.clone()
    } else {
        format!("{name}^{}", l.pow)
    }
}

pub fn render_word(w: &Word, slots: &[Arc<Presentation>]) -> String {
    let n = slots.len();
    let mut parts: Vec<Vec<String>> = vec![Vec::new(); n];
    for l in w {
        parts[l.slot as usize].push(render_letter(l, &slots[l.slot as usize]));
    }
    parts
        .into_iter()
        .map(|p| if p.is_empty() { "1".to_string() } else { p.join("*") })
        .collect::<Vec<_>>()
        .join(" (x) ")
}

/// Canonical, parseable rendering.
pub fn render(e: &Element, slots: &[Arc<Presentation>]) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (w, c)) in e.terms().enumerate() {
        let word = render_word(w, slots);
        let scalar_only = w.is_empty() && slots.len() == 1;
        let (neg, mag) = match c.as_monomial() {
            Some((_, q)) if q.is_negative_real() || (q.re == num_traits::Zero::zero() && q.im < num_traits::Zero::zero()) => (true, -c),
            _ => (false, c.clone()),
        };
        let coef = if mag.is_compound() { format!("({mag})") } else { mag.to_string() };
        let body = if scalar_only {
            coef
        } else if mag.is_one() {
            word
        } else {
            format!("{coef}*{word}")
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}
