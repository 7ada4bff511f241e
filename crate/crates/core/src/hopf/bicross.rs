use std::time::Instant;

use super::maps::HopfMaps;
use super::verify::{gen_element, run_identities, CheckOpts, Identity};
use crate::dsl::{BicrossKind, BicrossSpec, ComoduleSpec, FactorGen};
use crate::error::{Error, Result};
use crate::ncalg::{invert_grouplike_monomial, Ctx, Element, Letter};
use crate::report::{Check, Prefilter, Report};

/// Image in the base algebra of an element whose slot `s` lives in factor
/// `factor_of[s]`, computed with the mode's images of the factor generators.
fn to_base(m: &HopfMaps, spec: &BicrossSpec, e: &Element, factor_of: &[u8]) -> Result<Element> {
    let n = factor_of.len();
    m.ctx(n).apply_hom(
        e,
        &|l: Letter| {
            let factor = factor_of[l.slot as usize];
            let fp = &spec.factors[factor as usize];
            let img = spec
                .map
                .get(&FactorGen { factor, gen: l.gen })
                .ok_or_else(|| Error::Unmapped(fp.gens[l.gen as usize].name.clone()))?;
            let img = if l.pow > 0 {
                img.clone()
            } else {
                invert_grouplike_monomial(img, m.ctx(1).presentations()).ok_or_else(|| {
                    Error::Argument(format!("image of {} is not invertible", fp.gens[l.gen as usize].name))
                })?
            };
            Ok(m.embed(&img, 1)?.map_slots(|_| l.slot))
        },
        false,
    )
}

/// Reconstruction of the base Hopf algebra from the two factors: factor
/// relations hold for the images of the factor generators; cross
/// commutators equal the action table; the base coproduct of each image
/// equals the one assembled from factor coproducts and the coaction.
pub fn verify_bicross(spec: &BicrossSpec, opts: CheckOpts, pf: &mut Prefilter) -> Result<Report> {
    let mut ids: Vec<Identity> = Vec::new();
    for (k, fp) in spec.factors.iter().enumerate() {
        let k = k as u8;
        for ((hi, lo), rhs) in fp.rules() {
            let lhs = gen_element(*hi).free_mul(&gen_element(*lo));
            let rhs = rhs.clone();
            ids.push(Identity {
                id: format!("relation/{}*{}", fp.gens[*hi as usize].name, fp.gens[*lo as usize].name),
                slots: 1,
                residual: Box::new(move |m| Ok(to_base(m, spec, &lhs, &[k])?.sub(&to_base(m, spec, &rhs, &[k])?))),
            });
        }
    }
    for a in &spec.actions {
        ids.push(Identity {
            id: format!("action/{}", a.label),
            slots: 1,
            residual: Box::new(move |m| {
                let x = to_base(m, spec, &gen_element(a.left.gen), &[a.left.factor])?;
                let y = to_base(m, spec, &gen_element(a.right.gen), &[a.right.factor])?;
                let v = to_base(m, spec, &a.value, &[a.value_factor])?;
                Ok(m.ctx(1).commutator(&x, &y)?.sub(&v))
            }),
        });
    }
    // assembled coproducts: algebra kind `delta(x) + 1 (x) x` with delta in
    // slots [coacted, other]; group kind `x (x) 1 + beta(x)` with beta in
    // slots [other, coacted]
    let coacted = &spec.factors[0];
    let other = &spec.factors[1];
    let beta_factors: Vec<u8> = match spec.kind {
        BicrossKind::Algebra => vec![0, 1],
        BicrossKind::Group => vec![1, 0],
    };
    for (g, beta) in &spec.coaction {
        let g = *g;
        let pure = match spec.kind {
            BicrossKind::Algebra => gen_element(g).map_slots(|_| 1),
            BicrossKind::Group => gen_element(g),
        };
        let beta_factors = beta_factors.clone();
        ids.push(Identity {
            id: format!("coproduct/{}", coacted.gens[g as usize].name),
            slots: 2,
            residual: Box::new(move |m| {
                let lhs = m.coproduct(&to_base(m, spec, &gen_element(g), &[0])?)?;
                let rhs = to_base(m, spec, beta, &beta_factors)?.add(&to_base(m, spec, &pure, &[0, 0])?);
                Ok(lhs.sub(&rhs))
            }),
        });
    }
    for (g, d) in &other.coproduct {
        let d = d.clone();
        ids.push(Identity {
            id: format!("coproduct/{}", other.gens[*g as usize].name),
            slots: 2,
            residual: Box::new(move |m| {
                let lhs = m.coproduct(&to_base(m, spec, &gen_element(*g), &[1])?)?;
                Ok(lhs.sub(&to_base(m, spec, &d, &[1, 1])?))
            }),
        });
    }
    let anchor = format!("{}: bicrossproduct reconstruction", spec.name);
    let mut r = run_identities(&spec.base, &anchor, &ids, opts, pf)?;
    r.suite = spec.name.clone();
    Ok(r)
}

/// Covariance of a left coaction `rho: X -> G (x) X`: the images satisfy
/// the relations of X, and `rho` is coassociative and counital.
pub fn verify_comodule(spec: &ComoduleSpec, pf: &mut Prefilter) -> Result<Report> {
    let g = &spec.group;
    let x = &spec.space;
    let c1 = Ctx::new(vec![x.clone()]);
    let c2 = Ctx::new(vec![g.clone(), x.clone()]);
    let c3 = Ctx::new(vec![g.clone(), g.clone(), x.clone()]);
    let anchor = format!("{}: covariant coaction", spec.name);
    let mut report = Report::new(spec.name.clone());
    let rho = |l: Letter| -> Result<Element> {
        spec.coaction
            .get(&l.gen)
            .cloned()
            .ok_or_else(|| Error::Unmapped(x.gens[l.gen as usize].name.clone()))
    };
    let g_maps = HopfMaps::new(g);
    for ((hi, lo), rhs) in x.rules() {
        let t0 = Instant::now();
        let lhs = gen_element(*hi).free_mul(&gen_element(*lo));
        let res = c2.apply_hom(&lhs, &|l| rho(l), false)?.sub(&c2.apply_hom(rhs, &|l| rho(l), false)?);
        report.push(
            Check::pass_if(
                format!("relation/{}*{}", x.gens[*hi as usize].name, x.gens[*lo as usize].name),
                anchor.clone(),
                pf.zero(&res),
                c2.render(&res),
            )
            .took(t0),
        );
    }
    for (id, info) in x.gens.iter().enumerate() {
        let t0 = Instant::now();
        let r = c2.normal_order(&rho(Letter::new(0, id as u16))?)?;
        // (Delta (x) id) rho
        let left = c3.apply_hom(
            &r,
            &|l: Letter| {
                if l.slot == 0 {
                    g_maps.coproduct(&Element::letter(Letter { slot: 0, ..l }))
                } else {
                    Ok(Element::letter(Letter { slot: 2, ..l }))
                }
            },
            false,
        )?;
        // (id (x) rho) rho
        let right = c3.apply_hom(
            &r,
            &|l: Letter| {
                if l.slot == 0 {
                    Ok(Element::letter(l))
                } else {
                    Ok(rho(Letter { slot: 0, ..l })?.map_slots(|s| s + 1))
                }
            },
            false,
        )?;
        let res = left.sub(&right);
        report.push(
            Check::pass_if(format!("coassociativity/{}", info.name), anchor.clone(), pf.zero(&res), c3.render(&res)).took(t0),
        );
        let t1 = Instant::now();
        let counit = c1.apply_hom(
            &r,
            &|l: Letter| {
                if l.slot == 0 {
                    let e = g
                        .counit
                        .get(&l.gen)
                        .ok_or_else(|| Error::MissingHopfData(g.name.clone(), g.gens[l.gen as usize].name.clone()))?;
                    Ok(Element::scalar(e.clone()))
                } else {
                    Ok(Element::letter(Letter { slot: 0, ..l }))
                }
            },
            false,
        )?;
        let res = counit.sub(&gen_element(id as u16));
        report.push(
            Check::pass_if(format!("counit/{}", info.name), anchor.clone(), pf.zero(&res), c1.render(&res)).took(t1),
        );
    }
    Ok(report)
}
