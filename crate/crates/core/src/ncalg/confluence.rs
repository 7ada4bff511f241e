use std::sync::Arc;
use std::time::Instant;

use super::ctx::Ctx;
use super::element::{Element, Letter};
use super::ortho::vanishes_mod_orthogonal;
use super::presentation::Presentation;
use crate::error::Result;
use crate::report::{Check, Prefilter, Report};

/// Diamond-lemma overlap check: every out-of-order triple `z*y*x` is reduced
/// as `(z*y)*x` and as `z*(y*x)`; the difference of the two normal forms is
/// the residual. Grouplike generators also contribute `g*g^-1*x` overlaps.
/// With `ortho`, residuals are tested modulo the orthogonality relations.
pub fn confluence_check(p: &Arc<Presentation>, ortho: bool, pf: &mut Prefilter) -> Result<Report> {
    let ctx = Ctx::new(vec![p.clone()]);
    let mut report = Report::new(format!("confluence {}", p.name));
    let n = p.gens.len() as u16;
    let anchor = format!("{}: relation table", p.name);
    let letter = |g: u16, pow: i32| Element::letter(Letter::with_pow(0, g, pow));
    for z in 0..n {
        let z_pows: &[i32] = if p.is_grouplike(z) { &[1, -1] } else { &[1] };
        for &zp in z_pows {
            for y in 0..z {
                if p.is_grouplike(y) && p.is_grouplike(z) {
                    continue;
                }
                for x in 0..y {
                    let t0 = Instant::now();
                    let left = ctx.mul(&ctx.normal_order(&letter(z, zp).free_mul(&letter(y, 1)))?, &letter(x, 1))?;
                    let right = ctx.mul(&letter(z, zp), &ctx.normal_order(&letter(y, 1).free_mul(&letter(x, 1)))?)?;
                    let res = left.sub(&right);
                    let ok = zero(&res, &ctx, ortho, pf)?;
                    let name = |g: u16, pw: i32| {
                        if pw == 1 {
                            p.gens[g as usize].name.clone()
                        } else {
                            format!("{}^{pw}", p.gens[g as usize].name)
                        }
                    };
                    report.push(
                        Check::pass_if(
                            format!("{}*{}*{}", name(z, zp), name(y, 1), name(x, 1)),
                            anchor.clone(),
                            ok,
                            ctx.render(&res),
                        )
                        .took(t0),
                    );
                }
            }
        }
        if p.is_grouplike(z) {
            for x in 0..z {
                if p.is_grouplike(x) {
                    continue;
                }
                for s in [1, -1] {
                    let t0 = Instant::now();
                    let inner = ctx.normal_order(&letter(z, -s).free_mul(&letter(x, 1)))?;
                    let res = ctx.mul(&letter(z, s), &inner)?.sub(&letter(x, 1));
                    let ok = zero(&res, &ctx, ortho, pf)?;
                    let g = &p.gens[z as usize].name;
                    report.push(
                        Check::pass_if(
                            format!("{g}^{s}*{g}^{}*{}", -s, p.gens[x as usize].name),
                            anchor.clone(),
                            ok,
                            ctx.render(&res),
                        )
                        .took(t0),
                    );
                }
            }
        }
    }
    Ok(report)
}

fn zero(res: &Element, ctx: &Ctx, ortho: bool, pf: &mut Prefilter) -> Result<bool> {
    if ortho {
        vanishes_mod_orthogonal(res, ctx.presentations())
    } else {
        Ok(pf.zero(res))
    }
}
