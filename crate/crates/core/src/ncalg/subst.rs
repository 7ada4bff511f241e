use std::collections::BTreeMap;

use super::ctx::{invert_grouplike_monomial, Ctx};
use super::element::{Element, GenId, Letter};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::scalars::{GaussQ, Poly};

/// Homomorphic image of a single-slot element under a generator map,
/// normal-ordered in `target`. Inverse powers of a grouplike generator need
/// an image that is itself an invertible grouplike monomial.
pub fn substitute(e: &Element, source: &Presentation, map: &BTreeMap<GenId, Element>, target: &Ctx) -> Result<Element> {
    target.apply_hom(
        e,
        &|l: Letter| {
            let img = map
                .get(&l.gen)
                .ok_or_else(|| Error::Unmapped(source.gens[l.gen as usize].name.clone()))?;
            if l.pow > 0 {
                Ok(img.clone())
            } else {
                invert_grouplike_monomial(img, target.presentations()).ok_or_else(|| {
                    Error::Argument(format!(
                        "image of {} is not invertible",
                        source.gens[l.gen as usize].name
                    ))
                })
            }
        },
        false,
    )
}

/// `exp(x)` truncated at `h^order`; `x` must carry at least one power of h.
pub fn exp_series(ctx: &Ctx, x: &Element, order: u32) -> Result<Element> {
    if let Some((lo, _)) = x.h_range() {
        if lo < 1 {
            return Err(Error::Argument("exponent must be of positive h-order".into()));
        }
    }
    let t = Some(order as i32);
    let x = ctx.normal_order(&x.clone().with_trunc(t))?;
    let mut out = Element::one().with_trunc(t);
    let mut term = Element::one().with_trunc(t);
    for k in 1..=order {
        term = ctx.mul(&term, &x)?.scale_c(&GaussQ::from_ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        out.add_assign(&term);
    }
    Ok(out)
}

/// Replaces every grouplike generator with a declared expansion `g = exp(X)`
/// by the series of `exp(+-X)` truncated at `h^order`.
pub fn h_expand(ctx: &Ctx, e: &Element, order: u32) -> Result<Element> {
    let mut images: BTreeMap<Letter, Element> = BTreeMap::new();
    for (w, _) in e.terms() {
        for l in w {
            let p = ctx.pres(l.slot);
            let unit = Letter { pow: l.pow.signum(), ..*l };
            if images.contains_key(&unit) {
                continue;
            }
            if let Some(x) = p.expansions.get(&l.gen) {
                let x = x.map_slots(|_| l.slot).scale(&Poly::int(unit.pow as i64));
                images.insert(unit, exp_series(ctx, &x, order)?);
            }
        }
    }
    ctx.apply_hom(
        &e.clone().with_trunc(Some(order as i32)),
        &|l: Letter| Ok(images.get(&l).cloned().unwrap_or_else(|| Element::letter(l))),
        false,
    )
}
