use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncalg::{h_expand, invert_grouplike_monomial, Ctx, Element, GenId, Letter, Presentation, Word};
use crate::scalars::Poly;

/// Coproduct, counit and antipode of a presentation extended to whole
/// elements, over tensor powers of up to four slots. In series mode every
/// grouplike generator is replaced by its exponential series, so nothing
/// downstream ever uses the grouplike rewrite rules.
pub struct HopfMaps {
    pub p: Arc<Presentation>,
    pub series: Option<u32>,
    ctxs: Vec<Ctx>,
    delta_memo: RefCell<HashMap<(GenId, i32), Element>>,
    s_memo: RefCell<HashMap<(GenId, i32), Element>>,
}

impl HopfMaps {
    pub fn new(p: &Arc<Presentation>) -> HopfMaps {
        HopfMaps::with_series(p, None)
    }

    pub fn with_series(p: &Arc<Presentation>, series: Option<u32>) -> HopfMaps {
        HopfMaps {
            p: p.clone(),
            series,
            ctxs: (1..=4).map(|n| Ctx::tensor_power(p, n)).collect(),
            delta_memo: RefCell::new(HashMap::new()),
            s_memo: RefCell::new(HashMap::new()),
        }
    }

    /// Context of `n` tensor slots, `1 <= n <= 4`.
    pub fn ctx(&self, n: usize) -> &Ctx {
        &self.ctxs[n - 1]
    }

    fn name(&self, g: GenId) -> String {
        self.p.gens[g as usize].name.clone()
    }

    /// The element as used by this mode: unchanged, or with grouplike
    /// generators expanded.
    pub fn embed(&self, e: &Element, slots: usize) -> Result<Element> {
        match self.series {
            None => self.ctx(slots).normal_order(e),
            Some(n) => h_expand(self.ctx(slots), e, n),
        }
    }

    fn finish(&self, e: Element, slots: usize) -> Result<Element> {
        match self.series {
            None => Ok(e),
            Some(n) => h_expand(self.ctx(slots), &e, n),
        }
    }

    fn delta_image(&self, g: GenId, pow: i32) -> Result<Element> {
        if let Some(e) = self.delta_memo.borrow().get(&(g, pow)) {
            return Ok(e.clone());
        }
        let d = self
            .p
            .coproduct
            .get(&g)
            .ok_or_else(|| Error::MissingHopfData(self.p.name.clone(), format!("coproduct of {}", self.name(g))))?;
        let d = if pow > 0 {
            d.clone()
        } else {
            invert_grouplike_monomial(d, self.ctx(2).presentations())
                .ok_or_else(|| Error::Argument(format!("coproduct of {} is not grouplike", self.name(g))))?
        };
        let d = self.finish(d, 2)?;
        self.delta_memo.borrow_mut().insert((g, pow), d.clone());
        Ok(d)
    }

    fn s_image(&self, g: GenId, pow: i32) -> Result<Element> {
        if let Some(e) = self.s_memo.borrow().get(&(g, pow)) {
            return Ok(e.clone());
        }
        let s = self
            .p
            .antipode
            .get(&g)
            .ok_or_else(|| Error::MissingHopfData(self.p.name.clone(), format!("antipode of {}", self.name(g))))?;
        let s = if pow > 0 {
            s.clone()
        } else {
            invert_grouplike_monomial(s, self.ctx(1).presentations())
                .ok_or_else(|| Error::Argument(format!("antipode of {} is not invertible", self.name(g))))?
        };
        let s = self.finish(s, 1)?;
        self.s_memo.borrow_mut().insert((g, pow), s.clone());
        Ok(s)
    }

    fn eps(&self, g: GenId, pow: i32) -> Result<Poly> {
        let c = self
            .p
            .counit
            .get(&g)
            .ok_or_else(|| Error::MissingHopfData(self.p.name.clone(), format!("counit of {}", self.name(g))))?;
        if pow > 0 {
            Ok(c.clone())
        } else {
            c.inv_monomial()
                .ok_or_else(|| Error::Argument(format!("counit of {} is not invertible", self.name(g))))
        }
    }

    /// `Delta` on a single-slot element.
    pub fn coproduct(&self, e: &Element) -> Result<Element> {
        self.delta_at(e, 0, 1)
    }

    /// `id^k (x) Delta (x) id^(n-k-1)` on an `n`-slot element.
    pub fn delta_at(&self, e: &Element, k: u8, n: usize) -> Result<Element> {
        self.ctx(n + 1).apply_hom(
            e,
            &|l: Letter| {
                if l.slot < k {
                    Ok(Element::letter(l))
                } else if l.slot == k {
                    Ok(self.delta_image(l.gen, l.pow)?.map_slots(|s| s + k))
                } else {
                    Ok(Element::letter(Letter { slot: l.slot + 1, ..l }))
                }
            },
            false,
        )
    }

    /// Counit on a single-slot element.
    pub fn counit(&self, e: &Element) -> Result<Poly> {
        let mut out = Poly::zero();
        for (w, c) in e.terms() {
            let mut v = c.clone();
            for l in w {
                let x = self.eps(l.gen, l.pow.signum())?;
                v = &v * &x.pow(l.pow.unsigned_abs());
            }
            out.add_assign_ref(&v);
        }
        Ok(out)
    }

    /// `id^k (x) eps (x) id^(n-k-1)` on an `n`-slot element, `n >= 2`.
    pub fn counit_at(&self, e: &Element, k: u8, n: usize) -> Result<Element> {
        self.ctx(n - 1).apply_hom(
            e,
            &|l: Letter| {
                if l.slot < k {
                    Ok(Element::letter(l))
                } else if l.slot == k {
                    Ok(Element::scalar(self.eps(l.gen, l.pow)?))
                } else {
                    Ok(Element::letter(Letter { slot: l.slot - 1, ..l }))
                }
            },
            false,
        )
    }

    /// Antipode (anti-homomorphism) on a single-slot element.
    pub fn antipode(&self, e: &Element) -> Result<Element> {
        self.ctx(1).apply_hom(e, &|l: Letter| self.s_image(l.gen, l.pow), true)
    }

    /// Multiplication of the two slots of a 2-slot element.
    pub fn mult(&self, e: &Element) -> Result<Element> {
        self.ctx(1).normal_order(&e.map_slots(|_| 0))
    }

    /// `m (S (x) id)` when `left`, `m (id (x) S)` otherwise.
    pub fn antipode_mult(&self, e: &Element, left: bool) -> Result<Element> {
        let c = self.ctx(1);
        let mut out = Element::zero().with_trunc(e.trunc());
        for (w, coef) in e.terms() {
            let (w0, w1): (Word, Word) = w.iter().partition(|l| l.slot == 0);
            let a = Element::term(w0, Poly::one()).with_trunc(e.trunc());
            let b = Element::term(w1.iter().map(|l| Letter { slot: 0, ..*l }).collect(), Poly::one())
                .with_trunc(e.trunc());
            let prod = if left {
                c.mul(&self.antipode(&a)?, &b)?
            } else {
                c.mul(&c.normal_order(&a)?, &self.antipode(&b)?)?
            };
            out.add_scaled(&prod, coef);
        }
        Ok(out)
    }

    /// Slot swap of a 2-slot element.
    pub fn flip(&self, e: &Element) -> Result<Element> {
        self.ctx(2).normal_order(&e.map_slots(|s| 1 - s))
    }
}
