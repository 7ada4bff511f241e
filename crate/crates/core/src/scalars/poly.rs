use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::{GaussQ, Rational};
use super::symbol::Sym;

/// Monomial in commuting symbols with integer (possibly negative) exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono(Vec<(Sym, i32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(s: Sym, e: i32) -> Mono {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(s, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: Sym) -> i32 {
        self.0.iter().find(|(t, _)| *t == s).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(Sym, i32)] {
        &self.0
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = o.0[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if ea + eb != 0 {
                        out.push((a, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Mono(out)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.iter().map(|&(s, e)| (s, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono(self.0.iter().map(|&(s, e)| (s, e * k)).collect())
    }

    /// Drops the factor in `s`, returning its exponent.
    pub fn split(&self, s: Sym) -> (i32, Mono) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(t, x)| {
                if *t == s {
                    e = *x;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Mono(rest))
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| e).sum()
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Laurent polynomial in commuting symbols over Q(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, GaussQ>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(GaussQ::one())
    }

    pub fn constant(c: GaussQ) -> Poly {
        Poly::term(c, Mono::one())
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(GaussQ::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Poly {
        Poly::constant(GaussQ::from_ratio(n, d))
    }

    pub fn i() -> Poly {
        Poly::constant(GaussQ::i())
    }

    pub fn term(c: GaussQ, m: Mono) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(s: Sym) -> Poly {
        Poly::term(GaussQ::one(), Mono::var(s, 1))
    }

    pub fn var_pow(s: Sym, e: i32) -> Poly {
        Poly::term(GaussQ::one(), Mono::var(s, e))
    }

    /// `h^k`.
    pub fn h_pow(k: i32) -> Poly {
        Poly::var_pow(Sym::h(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussQ)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<GaussQ> {
        match self.terms.len() {
            0 => Some(GaussQ::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term of a monomial polynomial.
    pub fn as_monomial(&self) -> Option<(&Mono, &GaussQ)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Mono, c: GaussQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Poly, s: &Poly) {
        for (m1, c1) in &o.terms {
            for (m2, c2) in &s.terms {
                self.add_term(m1.mul(m2), c1 * c2);
            }
        }
    }

    pub fn scale(&self, c: &GaussQ) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Poly {
        self.scale(&GaussQ::real(r.clone()))
    }

    pub fn mul_mono(&self, mono: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single-term polynomial.
    pub fn inv_monomial(&self) -> Option<Poly> {
        let (m, c) = self.as_monomial()?;
        Some(Poly::term(c.inv()?, m.inv()))
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| *s))
            .collect()
    }

    pub fn degree_in(&self, s: Sym) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exponent(s));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Range of h exponents present.
    pub fn h_range(&self) -> Option<(i32, i32)> {
        self.degree_in(Sym::h())
    }

    /// Drops all terms with h-exponent above `order`.
    pub fn truncate_h(&self, order: i32) -> Poly {
        let h = Sym::h();
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(h) <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `s^k` (an `s`-free polynomial).
    pub fn coeff_of(&self, s: Sym, k: i32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            if e == k {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn coeff_h(&self, k: i32) -> Poly {
        self.coeff_of(Sym::h(), k)
    }

    /// Replaces symbol `s` by the polynomial `value`; negative powers need a
    /// monomial value.
    pub fn substitute(&self, s: Sym, value: &Poly) -> Option<Poly> {
        let mut out = Poly::zero();
        let inv = value.inv_monomial();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            let p = if e >= 0 {
                value.pow(e as u32)
            } else {
                inv.as_ref()?.pow((-e) as u32)
            };
            out.add_scaled(&p, &Poly::term(c.clone(), rest));
        }
        Some(out)
    }

    /// Evaluates with the given symbol values; unassigned symbols stay.
    pub fn eval_partial(&self, values: &BTreeMap<Sym, GaussQ>) -> Option<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for &(s, e) in &m.0 {
                match values.get(&s) {
                    Some(v) => {
                        let base = if e >= 0 { v.clone() } else { v.inv()? };
                        coef = &coef * &base.pow(e.unsigned_abs());
                    }
                    None => rest.push((s, e)),
                }
            }
            out.add_term(Mono(rest), coef);
        }
        Some(out)
    }

    /// Leading term in the internal monomial order (the largest).
    pub fn leading(&self) -> Option<(&Mono, &GaussQ)> {
        self.terms.iter().next_back()
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussQ) -> GaussQ) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn conj(&self) -> Poly {
        self.map_coeffs(|c| c.conj())
    }

    /// True if rendering as a factor needs parentheses.
    pub fn is_compound(&self) -> bool {
        match self.as_monomial() {
            Some((_, c)) => c.is_compound(),
            None => self.terms.len() > 1,
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, o);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Parseable rendering, highest monomials last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative_real() || (c.re.is_zero() && c.im < Rational::zero()) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
