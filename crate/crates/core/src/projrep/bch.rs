//! Baker–Campbell–Hausdorff combination and adjoint push-through in an
//! algebra whose commutators all carry a positive power of `h`, so that a
//! nested commutator of depth `d` only contributes from `h^d` on.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{Ctx, Element, Letter, Presentation};
use crate::scalars::{GaussQ, Poly, Rational};

/// Largest h-order accepted by [`Bch`].
pub const MAX_ORDER: u32 = 6;

/// Smallest power of `h` carried by the commutator of two generators, from
/// the rewriting rules; `None` when all generators commute.
pub fn h_floor(p: &Presentation) -> Option<i32> {
    let mut floor: Option<i32> = None;
    for ((hi, lo), rhs) in p.rules() {
        let swapped = Element::term(vec![Letter::new(0, *lo), Letter::new(0, *hi)], Poly::one());
        let comm = rhs.sub(&swapped);
        for (_, c) in comm.terms() {
            if let Some((lo_h, _)) = c.h_range() {
                floor = Some(floor.map_or(lo_h, |f| f.min(lo_h)));
            }
        }
    }
    floor
}

/// Words over `{X, Y}` (false = X) with the coefficient of their
/// right-nested commutator in `log(e^X e^Y)`, up to length `len_max`, by
/// the Dynkin projection of the free-algebra logarithm.
fn dynkin_words(len_max: usize) -> Vec<(Vec<bool>, Rational)> {
    type Free = BTreeMap<Vec<bool>, Rational>;
    let fact = |n: usize| -> Rational { (1..=n as i64).fold(Rational::one(), |a, k| a * Rational::from_integer(k.into())) };
    let mut w: Free = BTreeMap::new();
    for p in 0..=len_max {
        for q in 0..=len_max - p {
            if p + q == 0 {
                continue;
            }
            let word: Vec<bool> = std::iter::repeat_n(false, p).chain(std::iter::repeat_n(true, q)).collect();
            w.insert(word, Rational::one() / (fact(p) * fact(q)));
        }
    }
    let mul = |a: &Free, b: &Free| -> Free {
        let mut out = Free::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                if wa.len() + wb.len() <= len_max {
                    let mut u = wa.clone();
                    u.extend(wb);
                    *out.entry(u).or_insert_with(Rational::zero) += ca * cb;
                }
            }
        }
        out
    };
    let mut log = Free::new();
    let mut power = w.clone();
    for k in 1..=len_max {
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        for (u, c) in &power {
            *log.entry(u.clone()).or_insert_with(Rational::zero) += &sign * c / Rational::from_integer((k as i64).into());
        }
        power = mul(&power, &w);
    }
    log.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(u, c)| {
            let n = Rational::from_integer((u.len() as i64).into());
            (u, c / n)
        })
        .collect()
}

/// Ordered product `e^{X_1} e^{X_2} ... e^{X_n}` of exponentials, kept as
/// its list of exponents.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExpProduct {
    pub factors: Vec<Element>,
}

impl ExpProduct {
    pub fn identity() -> ExpProduct {
        ExpProduct::default()
    }

    pub fn new(factors: Vec<Element>) -> ExpProduct {
        ExpProduct { factors: factors.into_iter().filter(|f| !f.is_zero()).collect() }
    }

    pub fn then(&self, o: &ExpProduct) -> ExpProduct {
        ExpProduct { factors: self.factors.iter().chain(&o.factors).cloned().collect() }
    }

    pub fn inverse(&self) -> ExpProduct {
        ExpProduct { factors: self.factors.iter().rev().map(Element::neg).collect() }
    }

    pub fn map(&self, f: impl Fn(&Element) -> Result<Element>) -> Result<ExpProduct> {
        Ok(ExpProduct::new(self.factors.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(Element::is_zero)
    }
}

/// BCH engine for one tensor context, truncated at `h^order`.
pub struct Bch<'a> {
    pub ctx: &'a Ctx,
    pub order: u32,
    words: Vec<(Vec<bool>, Rational)>,
}

impl<'a> Bch<'a> {
    pub fn new(ctx: &'a Ctx, order: u32) -> Result<Bch<'a>> {
        if order > MAX_ORDER {
            return Err(Error::Cap(format!("BCH order {order} exceeds {MAX_ORDER}")));
        }
        for p in ctx.presentations() {
            if let Some(f) = h_floor(p) {
                if f < 1 {
                    return Err(Error::Domain(format!(
                        "{} has commutators without a factor h; exponentials cannot be combined order by order",
                        p.name
                    )));
                }
            }
        }
        Ok(Bch { ctx, order, words: dynkin_words(order as usize + 1) })
    }

    fn prepare(&self, x: &Element) -> Result<Element> {
        if let Some((lo, _)) = x.h_range() {
            if lo < 0 {
                return Err(Error::Domain("exponent has a negative power of h".into()));
            }
        }
        self.ctx.normal_order(&x.clone().with_trunc(Some(self.order as i32)))
    }

    /// `log(e^a e^b)` through `h^order`.
    pub fn combine(&self, a: &Element, b: &Element) -> Result<Element> {
        let (a, b) = (self.prepare(a)?, self.prepare(b)?);
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        let mut nested: HashMap<Vec<bool>, Element> = HashMap::new();
        let mut out = Element::zero().with_trunc(Some(self.order as i32));
        for (w, c) in &self.words {
            let v = self.nested(w, &a, &b, &mut nested)?;
            out.add_assign(&v.scale_c(&GaussQ::real(c.clone())));
        }
        Ok(out)
    }

    /// `[w_0, [w_1, ... [w_{n-2}, w_{n-1}]]]`, memoised by suffix.
    fn nested(&self, w: &[bool], a: &Element, b: &Element, memo: &mut HashMap<Vec<bool>, Element>) -> Result<Element> {
        if let Some(v) = memo.get(w) {
            return Ok(v.clone());
        }
        let head = if w[0] { b } else { a };
        let v = if w.len() == 1 {
            head.clone()
        } else {
            let tail = self.nested(&w[1..], a, b, memo)?;
            if tail.is_zero() {
                tail
            } else {
                self.ctx.commutator(head, &tail)?
            }
        };
        memo.insert(w.to_vec(), v.clone());
        Ok(v)
    }

    /// Single exponent of a product, combining left to right.
    pub fn log(&self, p: &ExpProduct) -> Result<Element> {
        let mut acc = Element::zero().with_trunc(Some(self.order as i32));
        for f in &p.factors {
            acc = self.combine(&acc, f)?;
        }
        Ok(acc)
    }

    /// `e^a x e^{-a} = sum_d ad_a^d(x) / d!` through `h^order`.
    pub fn conjugate(&self, a: &Element, x: &Element) -> Result<Element> {
        let a = self.prepare(a)?;
        let mut term = self.prepare(x)?;
        let mut out = term.clone();
        for d in 1..=self.order as i64 {
            if a.is_zero() {
                break;
            }
            term = self.ctx.commutator(&a, &term)?.scale(&Poly::ratio(1, d));
            if term.is_zero() {
                break;
            }
            out.add_assign(&term);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(words: &[(Vec<bool>, Rational)], w: &[bool]) -> Rational {
        words.iter().find(|(u, _)| u == w).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    #[test]
    fn low_order_bch_coefficients() {
        // log(e^X e^Y) = X + Y + [X,Y]/2 + ([X,[X,Y]] + [Y,[Y,X]])/12 + ...
        // evaluated on the free Lie algebra through the Dynkin words
        let words = dynkin_words(3);
        let (x, y) = (false, true);
        assert_eq!(coeff(&words, &[x]), Rational::one());
        assert_eq!(coeff(&words, &[y]), Rational::one());
        // [X,Y]/2 appears as XY/2 * 1/2 - YX/2 * 1/2 in nested form: the
        // right-nested brackets [X,Y] and [Y,X] carry 1/4 and -1/4
        assert_eq!(&coeff(&words, &[x, y]) - &coeff(&words, &[y, x]), Rational::new(1.into(), 2.into()));
    }
}
