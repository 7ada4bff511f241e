use std::sync::Arc;
use std::time::Instant;

use super::maps::HopfMaps;
use crate::error::Result;
use crate::ncalg::{h_expand, vanishes_mod_orthogonal, Element, GenId, Letter, Presentation};
use crate::report::{Check, Prefilter, Report};

/// Evaluation mode: formal grouplike generators, their exponential series
/// truncated at `order`, or both with a cross-comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Formal,
    Series,
    Both,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOpts {
    pub mode: Mode,
    pub order: u32,
    /// Test residuals modulo the orthogonality relations of the presentation.
    pub ortho: bool,
}

impl Default for CheckOpts {
    fn default() -> Self {
        CheckOpts { mode: Mode::Formal, order: 4, ortho: false }
    }
}

/// An identity `residual = 0` over `slots` tensor slots, computed from the
/// Hopf maps of one mode.
pub(crate) struct Identity<'a> {
    pub id: String,
    pub slots: usize,
    pub residual: Box<dyn Fn(&HopfMaps) -> Result<Element> + 'a>,
}

pub(crate) fn gen_element(g: GenId) -> Element {
    Element::letter(Letter::new(0, g))
}

/// Runs identities in the requested modes. In `Both`, a third check per
/// identity requires the series residual to equal the expanded formal one.
pub(crate) fn run_identities(
    p: &Arc<Presentation>,
    anchor: &str,
    identities: &[Identity],
    opts: CheckOpts,
    pf: &mut Prefilter,
) -> Result<Report> {
    let mut report = Report::new(p.name.clone());
    let has_series = !p.expansions.is_empty();
    let formal = HopfMaps::new(p);
    let series = HopfMaps::with_series(p, Some(opts.order));
    let run_formal = opts.mode != Mode::Series || !has_series;
    let run_series = opts.mode != Mode::Formal && has_series;
    let prefix = |kind: &str, id: &str| {
        if opts.mode == Mode::Both && has_series {
            format!("{kind}/{id}")
        } else {
            id.to_string()
        }
    };
    for ident in identities {
        let mut formal_res = None;
        if run_formal {
            let t0 = Instant::now();
            let res = (ident.residual)(&formal)?;
            let ok = is_zero(&res, &formal, ident.slots, opts.ortho, pf)?;
            report.push(
                Check::pass_if(prefix("formal", &ident.id), anchor, ok, formal.ctx(ident.slots).render(&res)).took(t0),
            );
            formal_res = Some(res);
        }
        if run_series {
            let t0 = Instant::now();
            let res = (ident.residual)(&series)?;
            let ok = is_zero(&res, &series, ident.slots, opts.ortho, pf)?;
            report.push(
                Check::pass_if(prefix("series", &ident.id), anchor, ok, series.ctx(ident.slots).render(&res))
                    .order(opts.order)
                    .took(t0),
            );
            if let Some(f) = formal_res {
                let t1 = Instant::now();
                let expanded = h_expand(series.ctx(ident.slots), &f, opts.order)?;
                let diff = expanded.sub(&res);
                report.push(
                    Check::pass_if(
                        prefix("agree", &ident.id),
                        anchor,
                        pf.zero(&diff),
                        series.ctx(ident.slots).render(&diff),
                    )
                    .order(opts.order)
                    .took(t1),
                );
            }
        }
    }
    Ok(report)
}

fn is_zero(res: &Element, maps: &HopfMaps, slots: usize, ortho: bool, pf: &mut Prefilter) -> Result<bool> {
    if ortho {
        vanishes_mod_orthogonal(res, maps.ctx(slots).presentations())
    } else {
        Ok(pf.zero(res))
    }
}

/// Bialgebra and antipode axioms on generators and relations:
/// `Delta`, `eps` respect every relation; coassociativity; counit;
/// antipode; `S` respects every relation as an anti-homomorphism.
pub fn verify_bialgebra(p: &Arc<Presentation>, opts: CheckOpts, pf: &mut Prefilter) -> Result<Report> {
    let mut ids: Vec<Identity> = Vec::new();
    for ((hi, lo), rhs) in p.rules() {
        let (hi, lo) = (*hi, *lo);
        let lhs = gen_element(hi).free_mul(&gen_element(lo));
        let label = format!("{}*{}", p.gens[hi as usize].name, p.gens[lo as usize].name);
        let (l1, r1) = (lhs.clone(), rhs.clone());
        ids.push(Identity {
            id: format!("coproduct-respects/{label}"),
            slots: 2,
            residual: Box::new(move |m| Ok(m.coproduct(&l1)?.sub(&m.coproduct(&r1)?))),
        });
        let (l2, r2) = (lhs.clone(), rhs.clone());
        ids.push(Identity {
            id: format!("counit-respects/{label}"),
            slots: 1,
            residual: Box::new(move |m| Ok(Element::scalar(&m.counit(&l2)? - &m.counit(&r2)?))),
        });
        let (l3, r3) = (lhs, rhs.clone());
        ids.push(Identity {
            id: format!("antipode-respects/{label}"),
            slots: 1,
            residual: Box::new(move |m| Ok(m.antipode(&l3)?.sub(&m.antipode(&r3)?))),
        });
    }
    for g in 0..p.gens.len() as GenId {
        let name = &p.gens[g as usize].name;
        ids.push(Identity {
            id: format!("coassociativity/{name}"),
            slots: 3,
            residual: Box::new(move |m| {
                let d = m.coproduct(&m.embed(&gen_element(g), 1)?)?;
                Ok(m.delta_at(&d, 0, 2)?.sub(&m.delta_at(&d, 1, 2)?))
            }),
        });
        for (side, k) in [("left", 0u8), ("right", 1u8)] {
            ids.push(Identity {
                id: format!("counit-{side}/{name}"),
                slots: 1,
                residual: Box::new(move |m| {
                    let x = m.embed(&gen_element(g), 1)?;
                    Ok(m.counit_at(&m.coproduct(&x)?, k, 2)?.sub(&x))
                }),
            });
        }
        for (side, left) in [("left", true), ("right", false)] {
            ids.push(Identity {
                id: format!("antipode-{side}/{name}"),
                slots: 1,
                residual: Box::new(move |m| {
                    let x = m.embed(&gen_element(g), 1)?;
                    let eps = Element::scalar(m.counit(&x)?);
                    Ok(m.antipode_mult(&m.coproduct(&x)?, left)?.sub(&eps))
                }),
            });
        }
    }
    let anchor = format!("{}: Hopf structure", p.name);
    run_identities(p, &anchor, &ids, opts, pf)
}

/// Commutator of `c` with every generator.
pub fn verify_casimir(name: &str, c: &Element, p: &Arc<Presentation>, opts: CheckOpts, pf: &mut Prefilter) -> Result<Report> {
    let ids: Vec<Identity> = (0..p.gens.len() as GenId)
        .filter(|&g| !p.is_grouplike(g))
        .map(|g| {
            let c = c.clone();
            Identity {
                id: format!("{name}/{}", p.gens[g as usize].name),
                slots: 1,
                residual: Box::new(move |m: &HopfMaps| {
                    m.ctx(1).commutator(&m.embed(&c, 1)?, &m.embed(&gen_element(g), 1)?)
                }),
            }
        })
        .collect();
    let anchor = format!("{}: central element {name}", p.name);
    run_identities(p, &anchor, &ids, opts, pf)
}
