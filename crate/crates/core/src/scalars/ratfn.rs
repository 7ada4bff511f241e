use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use super::series::HSeries;
use crate::error::{Error, Result};

/// Quotient of two polynomials in commuting symbols.
///
/// Stored with the denominator's leading coefficient normalized to 1 and
/// monomial denominators folded into the (Laurent) numerator. Equality is
/// decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFn> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let mut r = RationalFn { num, den };
        r.canonicalize();
        Ok(r)
    }

    pub fn from_poly(p: Poly) -> RationalFn {
        RationalFn { num: p, den: Poly::one() }
    }

    fn canonicalize(&mut self) {
        if let Some(inv) = self.den.inv_monomial() {
            self.num = &self.num * &inv;
            self.den = Poly::one();
            return;
        }
        let (_, lc) = self.den.leading().expect("nonzero denominator");
        let inv = lc.inv().expect("nonzero leading coefficient");
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        if self.den == o.den {
            return RationalFn::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        RationalFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero rational function".into()));
        }
        RationalFn::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// Expansion in `h` up to `h^order`. The `h^0` part of the denominator
    /// must be a single (Laurent-invertible) monomial.
    pub fn to_hseries(&self, order: u32) -> Result<HSeries> {
        let d0 = self.den.coeff_h(0);
        let d0_inv = d0.inv_monomial().ok_or_else(|| {
            Error::Domain(format!("denominator {} is not invertible at h = 0", self.den))
        })?;
        if self.den.h_range().is_some_and(|(lo, _)| lo < 0) {
            return Err(Error::Domain("negative h power in denominator".into()));
        }
        // 1/den = d0^-1 * sum_k (-u)^k with u = (den - d0)/d0 of h-order >= 1
        let u = &(&self.den - &d0) * &d0_inv;
        let u = HSeries::from_poly(&u, order)?;
        let mut inv = HSeries::constant(Poly::one(), order);
        let mut power = HSeries::constant(Poly::one(), order);
        for _ in 1..=order {
            power = power.mul(&u.neg());
            inv = inv.add(&power);
        }
        let num = HSeries::from_poly(&(&self.num * &d0_inv), order)?;
        Ok(num.mul(&inv))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &Self) -> bool {
        (&(&self.num * &o.den) - &(&o.num * &self.den)).is_zero()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        RationalFn::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl std::ops::Add for RationalFn {
    type Output = RationalFn;
    fn add(self, o: RationalFn) -> RationalFn {
        RationalFn::add(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaussQ, Sym};

    #[test]
    fn cross_multiplication_equality() {
        let x = Poly::var(Sym::new("x"));
        let a = RationalFn::new(x.pow(2) - Poly::one(), &x - &Poly::one()).unwrap();
        let b = RationalFn::from_poly(&x + &Poly::one());
        assert_eq!(a, b);
    }

    #[test]
    fn geometric_expansion() {
        // m v / (1 + m v^2 h / 2) = m v - m^2 v^3 h / 2 + ...
        let m = Poly::var(Sym::new("m"));
        let v = Poly::var(Sym::new("v"));
        let den = &Poly::one() + &(&(&m * &v.pow(2)) * &Poly::h_pow(1)).scale(&GaussQ::from_ratio(1, 2));
        let f = RationalFn::new(&m * &v, den).unwrap();
        let s = f.to_hseries(2).unwrap();
        assert_eq!(s.coeff(0), &m * &v);
        assert_eq!(s.coeff(1), (&m.pow(2) * &v.pow(3)).scale(&GaussQ::from_ratio(-1, 2)));
        assert_eq!(s.coeff(2), (&m.pow(3) * &v.pow(5)).scale(&GaussQ::from_ratio(1, 4)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFn::new(Poly::one(), Poly::zero()).is_err());
    }
}
