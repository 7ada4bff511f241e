//! Hopf structure extended from generators to elements, the axiom checks,
//! central elements, the cocommutator, the classical limit, and the
//! bicrossproduct and comodule reconstructions.

mod bicross;
mod maps;
mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use bicross::{verify_bicross, verify_comodule};
pub use maps::HopfMaps;
pub use verify::{verify_bialgebra, verify_casimir, CheckOpts, Mode};

use crate::error::{Error, Result};
use crate::ncalg::{Ctx, Element, GenId, Letter, Presentation, Word};
use crate::scalars::Poly;

/// `Delta(e)` in the two-slot context.
pub fn coproduct(e: &Element, p: &Arc<Presentation>) -> Result<Element> {
    HopfMaps::new(p).coproduct(e)
}

/// Antisymmetric two-slot element, `a ^ b = a (x) b - b (x) a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub elem: Element,
}

impl Wedge {
    pub fn zero() -> Wedge {
        Wedge { elem: Element::zero() }
    }

    /// `a ^ b` for single-slot `a`, `b`.
    pub fn of(a: &Element, b: &Element, ctx2: &Ctx) -> Result<Wedge> {
        let ab = ctx2.mul(&ctx2.normal_order(a)?, &b.map_slots(|_| 1))?;
        let ba = ctx2.mul(&ctx2.normal_order(b)?, &a.map_slots(|_| 1))?;
        Ok(Wedge { elem: ab.sub(&ba) })
    }

    pub fn is_antisymmetric(&self, ctx2: &Ctx) -> Result<bool> {
        let flipped = ctx2.normal_order(&self.elem.map_slots(|s| 1 - s))?;
        Ok(flipped.add(&self.elem).is_zero())
    }
}

/// `Delta - tau o Delta` expanded to `h^order`.
pub fn antisymmetrized_coproduct(maps: &HopfMaps, g: GenId) -> Result<Element> {
    let x = maps.embed(&Element::letter(Letter::new(0, g)), 1)?;
    let d = maps.coproduct(&x)?;
    Ok(d.sub(&maps.flip(&d)?))
}

/// Classical cocommutator: the `h^1` coefficient of `Delta(g) - tau Delta(g)`.
pub fn cocommutator(p: &Arc<Presentation>, g: GenId) -> Result<Wedge> {
    let maps = HopfMaps::with_series(p, Some(1));
    Ok(Wedge { elem: antisymmetrized_coproduct(&maps, g)?.coeff_h(1) })
}

fn limit_coeff(c: &Poly, what: &str) -> Result<Poly> {
    if let Some((lo, _)) = c.h_range() {
        if lo < 0 {
            return Err(Error::Limit(format!("{what} has a pole at h = 0")));
        }
    }
    Ok(c.coeff_h(0))
}

/// `h -> 0`, with every grouplike generator set to 1 (they are exponentials
/// of h times something). Generators keep their names; ids are remapped.
pub fn classical_limit(p: &Presentation, name: &str) -> Result<Presentation> {
    let families: Vec<_> = p.families.iter().filter(|f| !f.grouplike).cloned().collect();
    let mut order: Vec<String> = Vec::new();
    for g in &p.gens {
        let f = &p.families[g.family];
        if !f.grouplike && !order.contains(&f.name) {
            order.push(f.name.clone());
        }
    }
    let mut out = Presentation::new(name, p.params.clone(), families, &order)?;
    out.orthogonal = p.orthogonal.clone();
    let remap: BTreeMap<GenId, GenId> = p
        .gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.grouplike)
        .map(|(i, g)| (i as GenId, out.gen(&g.name)))
        .collect();
    let lim = |e: &Element, what: &str| -> Result<Element> {
        let mut r = Element::zero();
        for (w, c) in e.terms() {
            let w: Word = w
                .iter()
                .filter(|l| !p.is_grouplike(l.gen))
                .map(|l| Letter { gen: remap[&l.gen], ..*l })
                .collect();
            r.add_term(w, limit_coeff(c, what)?);
        }
        Ok(r)
    };
    for ((hi, lo), rhs) in p.rules() {
        if let (Some(a), Some(b)) = (remap.get(hi), remap.get(lo)) {
            let what = format!("relation {}*{}", p.gens[*hi as usize].name, p.gens[*lo as usize].name);
            out.rules.insert((*a, *b), lim(rhs, &what)?);
        }
    }
    for (g, d) in &p.coproduct {
        if let Some(a) = remap.get(g) {
            out.coproduct.insert(*a, lim(d, &format!("coproduct of {}", p.gens[*g as usize].name))?);
        }
    }
    for (g, c) in &p.counit {
        if let Some(a) = remap.get(g) {
            out.counit.insert(*a, limit_coeff(c, "counit")?);
        }
    }
    for (g, s) in &p.antipode {
        if let Some(a) = remap.get(g) {
            out.antipode.insert(*a, lim(s, &format!("antipode of {}", p.gens[*g as usize].name))?);
        }
    }
    Ok(out)
}
