//! Projective representations of the two-dimensional deformed Galilei
//! group: the multiplier `omega`, its consistency condition, the
//! first-order cohomological equation, the classical class of the
//! multiplier, and the composition law of the induced representation.
//!
//! Exponentials are never expanded. A product of exponentials is reduced to
//! a single exponent by BCH and two products are equal when their exponents
//! agree through the working order of `h`. The state space is modelled by
//! the commuting symbol `p`, so the representation lives in the group
//! slots alone.

mod bch;

use std::sync::Arc;
use std::time::Instant;


pub use bch::{h_floor, Bch, ExpProduct, MAX_ORDER};

use crate::cohom::{h2_class, lie_h2, LieData, Tensor2};
use crate::dsl::LieSpec;
use crate::error::{Error, Result};
use crate::hopf::HopfMaps;
use crate::models::Catalog;
use crate::ncalg::{Ctx, Element, GenId, Letter, Presentation};
use crate::report::{Check, Prefilter, Report};
use crate::scalars::{series_log1p, GaussQ, HSeries, Mono, Poly, Sym};

/// Largest monomial degree and h-order accepted by [`Galilei2d::rep_compose_check`].
pub const COMPOSE_CAP: u32 = 4;

/// Placeholder for the boost velocity inside scalar series, replaced by a
/// group letter afterwards.
fn w_sym() -> Sym {
    Sym::new("_w")
}

pub fn p_sym() -> Sym {
    Sym::new("p")
}

/// `(1/h) ln(1 + x)` through `h^order`, for `x` divisible by `h`.
fn log1p_over_h(x: &Poly, order: u32) -> Result<Poly> {
    let s = series_log1p(&HSeries::from_poly(x, order + 1)?, order + 1)?;
    Ok(s.to_poly().mul_mono(&Mono::var(Sym::h(), -1)).truncate_h(order as i32))
}

/// `1 / (1 + x)` through `h^order`, for `x` divisible by `h`.
fn inv1p(x: &Poly, order: u32) -> Poly {
    let mut out = Poly::zero();
    let mut power = Poly::one();
    for _ in 0..=order {
        out.add_assign_ref(&power);
        power = (&power * &(-x)).truncate_h(order as i32);
    }
    out.truncate_h(order as i32)
}

/// Replaces a coefficient symbol by an element: `sum_k c_k s^k w` becomes
/// `sum_k c_k value^k w`. `value` must commute with the words it meets.
pub fn substitute_symbol(ctx: &Ctx, e: &Element, s: Sym, value: &Element) -> Result<Element> {
    let mut out = Element::zero().with_trunc(e.trunc());
    let mut powers: Vec<Element> = vec![Element::one()];
    for (w, c) in e.terms() {
        let (lo, hi) = c.degree_in(s).unwrap_or((0, 0));
        if lo < 0 {
            return Err(Error::Domain(format!("negative power of {} in {c}", s.name())));
        }
        for k in 0..=hi {
            let ck = c.coeff_of(s, k);
            if ck.is_zero() {
                continue;
            }
            while powers.len() <= k as usize {
                let next = ctx.mul(powers.last().expect("nonempty"), value)?;
                powers.push(next);
            }
            out.add_assign(&ctx.mul(&powers[k as usize], &Element::term(w.clone(), ck))?);
        }
    }
    ctx.normal_order(&out)
}

/// The two-dimensional group with a mass parameter.
pub struct Galilei2d {
    pub pres: Arc<Presentation>,
    pub lie: LieData,
    lie_spec: LieSpec,
    maps: HopfMaps,
    v: GenId,
    a: GenId,
    tau: GenId,
    pub mass: Poly,
}

impl Galilei2d {
    pub fn new(cat: &Catalog, mass: Poly) -> Result<Galilei2d> {
        let pres = cat.presentation("galilei_group_2d")?;
        let lie_spec = cat.lie("galilei_2d_classical")?.clone();
        let lie = LieData::from_spec(&lie_spec)?;
        let gen = |n: &str| pres.gen_by_name(n).ok_or_else(|| Error::PresentationMismatch(n.into(), pres.name.clone()));
        let (v, a, tau) = (gen("v")?, gen("a")?, gen("tau")?);
        let maps = HopfMaps::new(&pres);
        Ok(Galilei2d { pres, lie, lie_spec, maps, v, a, tau, mass })
    }

    pub fn ctx(&self, n: usize) -> &Ctx {
        self.maps.ctx(n)
    }

    fn letter(&self, slot: u8, g: GenId) -> Element {
        Element::letter(Letter::new(slot, g))
    }

    pub fn v(&self, slot: u8) -> Element {
        self.letter(slot, self.v)
    }

    pub fn a(&self, slot: u8) -> Element {
        self.letter(slot, self.a)
    }

    pub fn tau(&self, slot: u8) -> Element {
        self.letter(slot, self.tau)
    }

    /// `coeff(v_0) * x`, where `coeff` is a polynomial in the placeholder
    /// velocity and `x` lives in slot 1.
    fn with_boost_coefficient(&self, coeff: &Poly, x: &Element) -> Result<Element> {
        let ctx = self.ctx(2);
        substitute_symbol(ctx, &x.scale(coeff), w_sym(), &self.v(0))
    }

    /// Classical multiplier `phi0 = -m (v^2/2 (x) tau + v (x) a)`.
    pub fn phi0(&self) -> Result<Element> {
        let ctx = self.ctx(2);
        let v2 = ctx.mul(&self.v(0), &self.v(0))?;
        let e = ctx.mul(&v2, &self.tau(1))?.scale(&Poly::ratio(1, 2)).add(&ctx.mul(&self.v(0), &self.a(1))?);
        Ok(e.scale(&-&self.mass))
    }

    /// First-order solution `phi1 = (-m v^2/4 (x) 1) phi0`.
    pub fn phi1_particular(&self) -> Result<Element> {
        let ctx = self.ctx(2);
        let v2 = ctx.mul(&self.v(0), &self.v(0))?;
        ctx.mul(&v2.scale(&(&self.mass * &Poly::ratio(-1, 4))), &self.phi0()?)
    }

    /// Two-factor multiplier
    /// `exp(-i kappa ln(1 + m v^2/2kappa) (x) tau) exp(-i m v/(1 + m v^2/2kappa) (x) a)`
    /// through `h^order`.
    pub fn build_omega(&self, order: u32) -> Result<ExpProduct> {
        let w = Poly::var(w_sym());
        let x = (&(&self.mass * &w.pow(2)) * &Poly::h_pow(1)).scale(&GaussQ::from_ratio(1, 2));
        let alpha = log1p_over_h(&x, order)?.scale(&-GaussQ::i());
        let beta = (&(&self.mass * &w) * &inv1p(&x, order)).scale(&-GaussQ::i()).truncate_h(order as i32);
        Ok(ExpProduct::new(vec![
            self.with_boost_coefficient(&alpha, &self.tau(1))?,
            self.with_boost_coefficient(&beta, &self.a(1))?,
        ]))
    }

    /// Single-exponent multiplier
    /// `exp(-i (2 kappa/v^2) ln(1 + m v^2/2kappa) (x) 1 (v^2/2 (x) tau + v (x) a))`
    /// through `h^order`.
    pub fn omega_single_exponent(&self, order: u32) -> Result<ExpProduct> {
        let w = Poly::var(w_sym());
        let x = (&(&self.mass * &w.pow(2)) * &Poly::h_pow(1)).scale(&GaussQ::from_ratio(1, 2));
        // (2/(h w^2)) ln(1 + x): every term of the logarithm carries h w^2
        let f = log1p_over_h(&x, order)?.mul_mono(&Mono::var(w_sym(), -2)).scale(&GaussQ::from_int(2));
        let ctx = self.ctx(2);
        let inner = ctx
            .mul(&self.v(0), &self.v(0))?
            .scale(&Poly::ratio(1, 2))
            .free_mul(&self.tau(1))
            .add(&self.v(0).free_mul(&self.a(1)));
        let inner = ctx.normal_order(&inner)?;
        let e = ctx.mul(&self.with_boost_coefficient(&f, &Element::one())?, &inner)?.scale_c(&-GaussQ::i());
        Ok(ExpProduct::new(vec![e.with_trunc(Some(order as i32))]))
    }

    /// `exp(i phi)` for a given exponent.
    pub fn omega_from_phi(&self, phi: &Element) -> ExpProduct {
        ExpProduct::new(vec![phi.scale_c(&GaussQ::i())])
    }

    /// `log[((omega (x) 1)(Delta (x) 1) omega)^{-1} (1 (x) omega)(1 (x) Delta) omega]`
    /// through `h^order`; zero when `omega` is a multiplier.
    pub fn cocycle_residual(&self, omega: &ExpProduct, order: u32) -> Result<Element> {
        let bch = Bch::new(self.ctx(3), order)?;
        let left = omega.then(&omega.map(|f| self.maps.delta_at(f, 0, 2))?);
        let right = omega.map(|f| Ok(f.map_slots(|s| s + 1)))?.then(&omega.map(|f| self.maps.delta_at(f, 1, 2))?);
        bch.combine(&bch.log(&left)?.neg(), &bch.log(&right)?)
    }

    /// Left side minus right side of the equation for the first-order term
    /// of `phi`, after the commutators of `phi0` are evaluated:
    /// `phi1 (x) 1 - 1 (x) phi1 + (Delta (x) 1) phi1 - (1 (x) Delta) phi1`
    /// against `(i kappa/2)([1 (x) phi0, (1 (x) Delta) phi0] - [phi0 (x) 1, (Delta (x) 1) phi0])`.
    pub fn phi1_residual(&self, phi1: &Element) -> Result<Element> {
        if phi1.h_range().is_some_and(|(lo, hi)| lo != 0 || hi != 0) {
            return Err(Error::Argument("the first-order candidate must not depend on h".into()));
        }
        let ctx = self.ctx(3);
        let shift = |e: &Element| e.map_slots(|s| s + 1);
        let lhs = phi1
            .sub(&shift(phi1))
            .add(&self.maps.delta_at(phi1, 0, 2)?)
            .sub(&self.maps.delta_at(phi1, 1, 2)?);
        let phi0 = self.phi0()?;
        let right = ctx.commutator(&shift(&phi0), &self.maps.delta_at(&phi0, 1, 2)?)?;
        let left = ctx.commutator(&phi0, &self.maps.delta_at(&phi0, 0, 2)?)?;
        let rhs = right.sub(&left).coeff_h(1).scale_c(&(GaussQ::from_ratio(1, 2) * GaussQ::i()));
        Ok(ctx.normal_order(&lhs)?.coeff_h(0).sub(&rhs))
    }

    /// Antisymmetrised bilinear part of the classical multiplier
    /// `-i log(omega)` at `h^0`, as 2-cochains on the classical Lie algebra,
    /// one per monomial of the (possibly symbolic) coefficients:
    /// `c(X, Y) = B(X, Y) - B(Y, X)` with `B` the coefficient of
    /// `x_X (x) x_Y` for the dual coordinates.
    pub fn classical_cocycle(&self, omega: &ExpProduct) -> Result<Vec<(Mono, Tensor2)>> {
        let bch = Bch::new(self.ctx(2), 0)?;
        let phi0 = bch.log(omega)?.coeff_h(0).scale_c(&-GaussQ::i());
        let n = self.lie.dim();
        let mut coord_of = vec![None; self.pres.gens.len()];
        for (ix, name) in &self.lie_spec.dual {
            let g = self.pres.gen_by_name(name).ok_or_else(|| Error::PresentationMismatch(name.clone(), self.pres.name.clone()))?;
            coord_of[g as usize] = Some(*ix);
        }
        let mut parts: Vec<(Mono, Tensor2)> = Vec::new();
        for (w, coef) in phi0.terms() {
            if w.len() != 2 || w[0].slot != 0 || w[1].slot != 1 || w[0].pow != 1 || w[1].pow != 1 {
                continue;
            }
            let (Some(x), Some(y)) = (coord_of[w[0].gen as usize], coord_of[w[1].gen as usize]) else {
                continue;
            };
            for (mono, value) in coef.terms() {
                let k = match parts.iter().position(|(m, _)| m == mono) {
                    Some(k) => k,
                    None => {
                        parts.push((mono.clone(), Tensor2::zero(n)));
                        parts.len() - 1
                    }
                };
                parts[k].1.add_at(x, y, value);
                parts[k].1.add_at(y, x, &-value);
            }
        }
        Ok(parts)
    }

    /// Class of the infinitesimal multiplier along the representatives of
    /// the second cohomology, with polynomial coordinates.
    pub fn classical_class(&self, omega: &ExpProduct) -> Result<Vec<Poly>> {
        let h2 = lie_h2(&self.lie);
        let mut class = vec![Poly::zero(); h2.representatives.len()];
        for (mono, c) in self.classical_cocycle(omega)? {
            let coords = h2_class(&self.lie, &h2, &c)
                .ok_or_else(|| Error::Domain("the infinitesimal multiplier is not a 2-cocycle".into()))?;
            for (acc, x) in class.iter_mut().zip(coords) {
                acc.add_assign_ref(&Poly::term(x, mono.clone()));
            }
        }
        Ok(class)
    }

    /// Classical obstruction to triviality: the class of the infinitesimal
    /// multiplier in the second cohomology of the classical algebra. Only
    /// the classical order is decided.
    pub fn triviality_probe(&self, omega: &ExpProduct, order: u32, pf: &mut Prefilter) -> Result<Report> {
        let mut report = Report::new("projrep");
        let t0 = Instant::now();
        let z = self.cocycle_residual(omega, order)?;
        let ok = pf.zero(&z);
        report.push(
            Check::pass_if("triviality/multiplier", "multiplier consistency condition", ok, self.ctx(3).render(&z))
                .order(order)
                .took(t0),
        );
        if !ok {
            return Ok(report);
        }
        let t0 = Instant::now();
        let anchor = "classical class of the multiplier";
        if omega.is_identity() {
            report.push(Check::pass_if("triviality/class", anchor, true, "trivial: the multiplier is the identity").took(t0));
            return Ok(report);
        }
        let class = self.classical_class(omega)?;
        let coords = class.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        let check = if class.iter().any(|x| !x.is_zero()) {
            Check::pass_if("triviality/class", anchor, true, "nontrivial at classical order").detail(format!("class coordinates [{coords}]"))
        } else {
            Check::info("triviality/class", anchor, "undetermined: the classical class vanishes")
        };
        report.push(check.took(t0));
        report.push(Check::info(
            "triviality/scope",
            anchor,
            "classical order only; the logarithms need kappa > 0 analytically, the formal checks do not",
        ));
        Ok(report)
    }

    /// Prefactor of the representation,
    /// `exp(-i kappa ln(1 + p^2/2m kappa) tau) exp(i p/(1 + p^2/2m kappa) a)`,
    /// in slot 0.
    pub fn rep_prefactor(&self, order: u32) -> Result<ExpProduct> {
        let inv_m = self
            .mass
            .inv_monomial()
            .ok_or_else(|| Error::Domain(format!("the representation needs an invertible mass, got {}", self.mass)))?;
        let p = Poly::var(p_sym());
        let x = (&(&p.pow(2) * &inv_m) * &Poly::h_pow(1)).scale(&GaussQ::from_ratio(1, 2));
        let alpha = log1p_over_h(&x, order)?.scale(&-GaussQ::i());
        let beta = (&p * &inv1p(&x, order)).scale(&GaussQ::i()).truncate_h(order as i32);
        Ok(ExpProduct::new(vec![self.tau(0).scale(&alpha), self.a(0).scale(&beta)]))
    }

    /// Image of `p^n`: prefactor and the tail `(p - m v)^n`, normal-ordered.
    pub fn rep_apply(&self, n: u32, order: u32) -> Result<(ExpProduct, Element)> {
        let ctx = self.ctx(1);
        let shift = Element::scalar(Poly::var(p_sym())).sub(&self.v(0).scale(&self.mass));
        Ok((self.rep_prefactor(order)?, ctx.pow(&shift, n)?))
    }

    /// Composition law `(rho (x) 1) rho(p^n) = (1 (x) omega)(1 (x) Delta) rho(p^n)`
    /// through `h^order`, for the given multiplier.
    pub fn rep_compose_check(&self, n: u32, order: u32, omega: &ExpProduct, pf: &mut Prefilter) -> Result<Report> {
        if n > COMPOSE_CAP || order > COMPOSE_CAP {
            return Err(Error::Cap(format!("composition check is limited to n, order <= {COMPOSE_CAP}")));
        }
        let ctx = self.ctx(2);
        let bch = Bch::new(ctx, order)?;
        let (pre, tail) = self.rep_apply(n, order)?;
        // rho applied to the state factor: the old group factor moves to
        // slot 1 and p becomes p - m v_0
        let moved = Element::scalar(Poly::var(p_sym())).sub(&self.v(0).scale(&self.mass));
        let act = |e: &Element| substitute_symbol(ctx, &e.map_slots(|s| s + 1), p_sym(), &moved);
        let left = pre.then(&pre.map(act)?);
        let left_tail = act(&tail)?;
        let right = omega.then(&pre.map(|f| self.maps.delta_at(f, 0, 1))?);
        let right_tail = self.maps.delta_at(&tail, 0, 1)?;

        let mut report = Report::new("projrep");
        let anchor = "representation composition law";
        let t0 = Instant::now();
        let z = bch.combine(&bch.log(&left)?.neg(), &bch.log(&right)?)?;
        report.push(
            Check::pass_if(format!("compose/n={n}/exponent"), anchor, pf.zero(&z), ctx.render(&z)).order(order).took(t0),
        );
        let t0 = Instant::now();
        let d = ctx.normal_order(&left_tail.sub(&right_tail))?;
        report.push(Check::pass_if(format!("compose/n={n}/tail"), anchor, pf.zero(&d), ctx.render(&d)).order(order).took(t0));
        Ok(report)
    }

    /// Consistency, first-order equation, equivalence of the two printed
    /// forms of the multiplier, classical class, and the composition law
    /// for `n <= n_max`, all through `h^order`.
    pub fn verify(&self, order: u32, n_max: u32, pf: &mut Prefilter) -> Result<Report> {
        let mut report = Report::new("projrep");
        let omega = self.build_omega(order)?;
        let t0 = Instant::now();
        let z = self.cocycle_residual(&omega, order)?;
        report.push(
            Check::pass_if("multiplier/consistency", "multiplier consistency condition", pf.zero(&z), self.ctx(3).render(&z))
                .order(order)
                .took(t0),
        );
        let t0 = Instant::now();
        let r = self.phi1_residual(&self.phi1_particular()?)?;
        report.push(
            Check::pass_if("multiplier/first-order", "first-order cohomological equation", pf.zero(&r), self.ctx(3).render(&r))
                .took(t0),
        );
        let t0 = Instant::now();
        let bch = Bch::new(self.ctx(2), order)?;
        let diff = bch.log(&omega)?.sub(&bch.log(&self.omega_single_exponent(order)?)?);
        report.push(
            Check::pass_if("multiplier/forms-agree", "two-factor and single-exponent multiplier forms", pf.zero(&diff), self.ctx(2).render(&diff))
                .order(order)
                .took(t0),
        );
        let t0 = Instant::now();
        let expected = self.phi0()?.add(&self.phi1_particular()?.scale(&Poly::h_pow(1))).scale_c(&GaussQ::i());
        let low = bch.log(&omega)?.with_trunc(Some(1)).sub(&expected.with_trunc(Some(1)));
        report.push(
            Check::pass_if("multiplier/expansion", "classical multiplier and its first correction", pf.zero(&low), self.ctx(2).render(&low))
                .order(1)
                .took(t0),
        );
        report.absorb("", self.triviality_probe(&omega, order, pf)?);
        for n in 0..=n_max {
            report.absorb("", self.rep_compose_check(n, order, &omega, pf)?);
        }
        Ok(report)
    }
}
