//! Structural properties of the scalar layer, the normal-ordering engine,
//! the Hopf maps and the parser, on random inputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use kappa_hopf::dsl::{parse_document, parse_file};
use kappa_hopf::hopf::{HopfMaps, Wedge};
use kappa_hopf::models::{shipped_source, Catalog};
use kappa_hopf::ncalg::{Ctx, Element, GenId, Letter, Presentation};
use kappa_hopf::scalars::{rat, series_exp, series_log1p, GaussQ, HSeries, Mono, Poly, RationalFn, Sym};
use kappa_hopf::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussQ> {
    (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6).prop_map(|(a, b, c, d)| GaussQ::new(rat(a, b), rat(c, d)))
}

/// Laurent polynomials in `x`, `y` and `h`.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((gauss(), -2i32..=2, 0i32..=2, -1i32..=2), 0..5).prop_map(|terms| {
        let (x, y) = (Sym::new("x"), Sym::new("y"));
        let mut p = Poly::zero();
        for (c, ex, ey, eh) in terms {
            p.add_term(Mono::var(x, ex).mul(&Mono::var(y, ey)).mul(&Mono::var(Sym::h(), eh)), c);
        }
        p
    })
}

thread_local! {
    // the maps cache products internally and are not shared across threads
    static KAPPA: &'static (Arc<Presentation>, HopfMaps) = {
        let p = Catalog::shipped().unwrap().presentation("galilei_algebra_kappa").unwrap();
        let maps = HopfMaps::new(&p);
        Box::leak(Box::new((p, maps)))
    };
}

fn kappa() -> &'static (Arc<Presentation>, HopfMaps) {
    KAPPA.with(|k| *k)
}

/// Random element of the kappa-deformed algebra: short words over the
/// generators (with `E^-1` allowed), small Gaussian coefficients, normal
/// ordered.
fn algebra_element() -> impl Strategy<Value = Element> {
    let letter = (0u16..11, prop::bool::ANY).prop_map(|(g, inv)| (g, if g == 10 && inv { -1 } else { 1 }));
    prop::collection::vec((prop::collection::vec(letter, 0..3), -3i64..=3, prop::bool::ANY), 1..3).prop_map(|terms| {
        let ctx = kappa().1.ctx(1);
        let mut e = Element::zero();
        for (word, c, with_h) in terms {
            let mut w = Element::one();
            for (g, pow) in word {
                w = ctx.mul(&w, &Element::letter(Letter::with_pow(0, g as GenId, pow))).unwrap();
            }
            let coeff = if with_h { Poly::int(c) * Poly::h_pow(1) } else { Poly::int(c) };
            e.add_assign(&w.scale(&coeff));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_rationals_form_a_field(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_none());
        }
        prop_assert_eq!(&GaussQ::i() * &GaussQ::i(), -GaussQ::one());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &a.conj()).is_real(), true);
    }

    #[test]
    fn laurent_polynomials_form_a_ring(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        // cancellation never leaves zero coefficients behind
        for p in [&a * &b, &(&a + &b) - &b] {
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), x in 1i64..=7, y in -5i64..=5, h in 1i64..=4) {
        let point: BTreeMap<Sym, GaussQ> =
            [(Sym::new("x"), GaussQ::from_int(x)), (Sym::new("y"), GaussQ::from_int(y)), (Sym::h(), GaussQ::from_ratio(1, h))]
                .into_iter()
                .collect();
        let at = |p: &Poly| p.eval_partial(&point).unwrap().as_constant().unwrap();
        prop_assert_eq!(at(&(&a * &b)), &at(&a) * &at(&b));
        prop_assert_eq!(at(&(&a + &b)), &at(&a) + &at(&b));
    }

    #[test]
    fn rational_functions_are_canonical(a in poly(), b in poly(), c in poly()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let plain = RationalFn::new(a.clone(), b.clone()).unwrap();
        let expanded = RationalFn::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(plain, expanded);
        prop_assert!(matches!(RationalFn::new(a, Poly::zero()), Err(Error::Domain(_)) | Err(Error::Argument(_))));
    }

    #[test]
    fn series_truncation_and_inverse_functions(
        c in prop::collection::vec(-4i64..=4, 1..5),
        o1 in 1u32..5,
        o2 in 1u32..5,
    ) {
        let coeffs: Vec<Poly> = std::iter::once(Poly::zero()).chain(c.iter().map(|k| Poly::int(*k))).collect();
        let a = HSeries::from_coeffs(coeffs.clone(), o1);
        let b = HSeries::from_coeffs(coeffs, o2);
        prop_assert_eq!(a.mul(&b).order(), o1.min(o2));
        prop_assert_eq!(a.add(&b).order(), o1.min(o2));
        let order = o1.min(o2);
        let x = a.with_order(order);
        let back = series_exp(&series_log1p(&x, order).unwrap(), order).unwrap();
        let one_plus_x = HSeries::constant(Poly::one(), order).add(&x);
        prop_assert_eq!(back.coeffs(), one_plus_x.coeffs());
    }

    #[test]
    fn normal_ordering_is_idempotent(a in algebra_element(), b in algebra_element()) {
        let ctx = kappa().1.ctx(1);
        let free = a.free_mul(&b);
        let once = ctx.normal_order(&free).unwrap();
        prop_assert_eq!(ctx.normal_order(&once).unwrap(), once.clone());
        prop_assert_eq!(ctx.mul(&a, &b).unwrap(), once.clone());
        prop_assert!(once.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn multiplication_is_associative(a in algebra_element(), b in algebra_element(), c in algebra_element()) {
        let ctx = kappa().1.ctx(1);
        let left = ctx.mul(&ctx.mul(&a, &b).unwrap(), &c).unwrap();
        let right = ctx.mul(&a, &ctx.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn different_slots_commute(a in algebra_element(), b in algebra_element()) {
        let ctx2 = kappa().1.ctx(2);
        let b1 = b.map_slots(|_| 1);
        prop_assert_eq!(ctx2.mul(&a, &b1).unwrap(), ctx2.mul(&ctx2.normal_order(&b1).unwrap(), &a).unwrap());
    }

    #[test]
    fn hopf_maps_respect_products(a in algebra_element(), b in algebra_element()) {
        let maps = &kappa().1;
        let (ctx1, ctx2) = (maps.ctx(1), maps.ctx(2));
        let ab = ctx1.mul(&a, &b).unwrap();
        let delta = ctx2.mul(&maps.coproduct(&a).unwrap(), &maps.coproduct(&b).unwrap()).unwrap();
        prop_assert_eq!(maps.coproduct(&ab).unwrap(), delta);
        prop_assert_eq!(maps.counit(&ab).unwrap(), &maps.counit(&a).unwrap() * &maps.counit(&b).unwrap());
        let s = ctx1.mul(&maps.antipode(&b).unwrap(), &maps.antipode(&a).unwrap()).unwrap();
        prop_assert_eq!(maps.antipode(&ab).unwrap(), s);
    }

    #[test]
    fn wedges_are_antisymmetric(a in algebra_element(), b in algebra_element()) {
        let ctx2 = kappa().1.ctx(2);
        let ab = Wedge::of(&a, &b, ctx2).unwrap();
        let ba = Wedge::of(&b, &a, ctx2).unwrap();
        prop_assert!(ab.is_antisymmetric(ctx2).unwrap());
        prop_assert_eq!(ab.elem.add(&ba.elem), Element::zero());
    }

    #[test]
    fn parsing_is_total(text in "[ -~\n]{0,80}") {
        if let Err(d) = parse_file(&text) {
            prop_assert!(d.line >= 1 && d.col >= 1);
        }
    }

    #[test]
    fn damaged_model_files_are_diagnosed(cut in 0usize..2000, len in 1usize..6) {
        let src = shipped_source("spacetime.hopf").unwrap();
        let start = cut % src.len();
        let end = (start + len).min(src.len());
        prop_assume!(src.is_char_boundary(start) && src.is_char_boundary(end));
        let damaged = format!("{}{}", &src[..start], &src[end..]);
        let known = Catalog::shipped().unwrap().presentations;
        match parse_document(&damaged, &known) {
            Ok(_) => {}
            Err(Error::Parse(diags)) => {
                prop_assert!(!diags.is_empty());
                prop_assert!(diags.iter().all(|d| d.line >= 1 && d.col >= 1));
            }
            Err(e) => prop_assert!(false, "non-diagnostic rejection: {e}"),
        }
    }
}

#[test]
fn ctx_rejects_foreign_slots() {
    let ctx = Ctx::tensor_power(&kappa().0, 1);
    let stray = Element::letter(Letter::new(1, 0));
    assert!(ctx.normal_order(&stray).is_err());
}
