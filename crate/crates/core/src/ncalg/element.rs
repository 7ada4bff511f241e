use std::collections::BTreeMap;

use crate::scalars::{GaussQ, Poly, Sym};

pub type GenId = u16;

/// One generator occurrence: tensor slot, generator index in that slot's
/// presentation (equal to its PBW rank), and power. Only grouplike
/// generators carry powers other than 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub slot: u8,
    pub gen: GenId,
    pub pow: i32,
}

impl Letter {
    pub fn new(slot: u8, gen: GenId) -> Letter {
        Letter { slot, gen, pow: 1 }
    }

    pub fn with_pow(slot: u8, gen: GenId, pow: i32) -> Letter {
        Letter { slot, gen, pow }
    }
}

pub type Word = Vec<Letter>;

/// Finite sum of coefficient times word. Coefficients are polynomials in
/// commuting symbols (including `h`); `trunc`, when set, discards every term
/// of h-degree above it.
#[derive(Clone, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Word, Poly>,
    trunc: Option<i32>,
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::scalar(Poly::one())
    }

    pub fn scalar(p: Poly) -> Element {
        Element::term(Vec::new(), p)
    }

    pub fn term(w: Word, p: Poly) -> Element {
        let mut e = Element::zero();
        e.add_term(w, p);
        e
    }

    pub fn letter(l: Letter) -> Element {
        Element::term(vec![l], Poly::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Poly)>, trunc: Option<i32>) -> Element {
        let mut e = Element { terms: BTreeMap::new(), trunc };
        for (w, p) in terms {
            e.add_term(w, p);
        }
        e
    }

    pub fn trunc(&self) -> Option<i32> {
        self.trunc
    }

    /// Sets the truncation order and drops terms above it.
    pub fn with_trunc(mut self, t: Option<i32>) -> Element {
        self.trunc = match (self.trunc, t) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(n) = self.trunc {
            let terms = std::mem::take(&mut self.terms);
            for (w, p) in terms {
                let q = p.truncate_h(n);
                if !q.is_zero() {
                    self.terms.insert(w, q);
                }
            }
        }
        self
    }

    /// Drops the truncation marker without touching terms.
    pub fn exact(mut self) -> Element {
        self.trunc = None;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Poly)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Poly {
        self.terms.get(w).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn as_scalar(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => {
                let (w, p) = self.terms.iter().next().unwrap();
                w.is_empty().then(|| p.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, p: Poly) {
        let p = match self.trunc {
            Some(n) => p.truncate_h(n),
            None => p,
        };
        if p.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Element) {
        if let Some(t) = o.trunc {
            *self = std::mem::take(self).with_trunc(Some(t));
        }
        for (w, p) in &o.terms {
            self.add_term(w.clone(), p.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Element, s: &Poly) {
        if let Some(t) = o.trunc {
            *self = std::mem::take(self).with_trunc(Some(t));
        }
        for (w, p) in &o.terms {
            self.add_term(w.clone(), p * s);
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign(o);
        e
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(o, &Poly::int(-1));
        e
    }

    pub fn neg(&self) -> Element {
        self.scale(&Poly::int(-1))
    }

    pub fn scale(&self, s: &Poly) -> Element {
        let mut e = Element { terms: BTreeMap::new(), trunc: self.trunc };
        for (w, p) in &self.terms {
            e.add_term(w.clone(), p * s);
        }
        e
    }

    pub fn scale_c(&self, c: &GaussQ) -> Element {
        self.scale(&Poly::constant(c.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Element {
        let mut e = Element { terms: BTreeMap::new(), trunc: self.trunc };
        for (w, p) in &self.terms {
            e.add_term(w.clone(), f(p));
        }
        e
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Element {
        let mut e = Element { terms: BTreeMap::new(), trunc: self.trunc };
        for (w, p) in &self.terms {
            e.add_term(f(w), p.clone());
        }
        e
    }

    /// Renumbers slots: letter in slot `s` moves to `f(s)`.
    pub fn map_slots(&self, f: impl Fn(u8) -> u8) -> Element {
        self.map_words(|w| {
            w.iter()
                .map(|l| Letter { slot: f(l.slot), ..*l })
                .collect()
        })
    }

    /// Coefficient of `h^k`, as an element with h-free coefficients.
    pub fn coeff_h(&self, k: i32) -> Element {
        self.map_coeffs(|p| p.coeff_h(k)).exact()
    }

    pub fn h_range(&self) -> Option<(i32, i32)> {
        self.terms
            .values()
            .filter_map(|p| p.h_range())
            .fold(None, |acc, (lo, hi)| match acc {
                None => Some((lo, hi)),
                Some((a, b)) => Some((a.min(lo), b.max(hi))),
            })
    }

    pub fn max_slot(&self) -> Option<u8> {
        self.terms.keys().flat_map(|w| w.iter().map(|l| l.slot)).max()
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Sym> {
        self.terms.values().flat_map(|p| p.symbols()).collect()
    }

    /// Maximum word length.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|w| w.iter().map(|l| l.pow.unsigned_abs() as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Concatenation product without normal ordering.
    pub fn free_mul(&self, o: &Element) -> Element {
        let mut e = Element::zero();
        e.trunc = min_trunc(self.trunc, o.trunc);
        for (w1, p1) in &self.terms {
            for (w2, p2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                e.add_term(w, p1 * p2);
            }
        }
        e
    }
}

pub(crate) fn min_trunc(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}
