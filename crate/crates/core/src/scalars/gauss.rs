use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GaussQ {
    pub re: Rational,
    pub im: Rational,
}

impl GaussQ {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussQ { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ::new(rat_int(n), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussQ::new(rat(n, d), Rational::zero())
    }

    pub fn real(r: Rational) -> Self {
        GaussQ::new(r, Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussQ::new(Rational::zero(), Rational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussQ::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussQ::new(&self.re / &n, -&self.im / &n))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self * &inv)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussQ::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussQ::one(),
            1 => GaussQ::i(),
            2 => -GaussQ::one(),
            _ => -GaussQ::i(),
        }
    }

    /// True when printing needs parentheses to be used as a factor.
    pub fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }

    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

impl Zero for GaussQ {
    fn zero() -> Self {
        GaussQ::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussQ {
    fn one() -> Self {
        GaussQ::new(Rational::one(), Rational::zero())
    }
}

impl<'a> Add<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, o: GaussQ) -> GaussQ {
        GaussQ::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign<&GaussQ> for GaussQ {
    fn add_assign(&mut self, o: &GaussQ) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussQ> for GaussQ {
    fn sub_assign(&mut self, o: &GaussQ) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl<'a> Sub<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn sub(self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, o: GaussQ) -> GaussQ {
        GaussQ::new(self.re - o.re, self.im - o.im)
    }
}

impl<'a> Mul<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussQ::real(&self.re * &o.re);
        }
        GaussQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, o: GaussQ) -> GaussQ {
        &self * &o
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ::new(-self.re, -self.im)
    }
}

impl Neg for &GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ::new(-&self.re, -&self.im)
    }
}

fn fmt_rat(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussQ {
    /// Parseable rendering: `3/2`, `-1/2*I`, `(1 + 2*I)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |f: &mut fmt::Formatter<'_>, im: &Rational| -> fmt::Result {
            if im.is_one() {
                write!(f, "I")
            } else if (-im).is_one() {
                write!(f, "-I")
            } else {
                fmt_rat(im, f)?;
                write!(f, "*I")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rat(&self.re, f),
            (true, false) => im_part(f, &self.im),
            (false, false) => {
                write!(f, "(")?;
                fmt_rat(&self.re, f)?;
                if self.im.is_negative() {
                    write!(f, " - ")?;
                    im_part(f, &-self.im.clone())?;
                } else {
                    write!(f, " + ")?;
                    im_part(f, &self.im)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&GaussQ::i() * &GaussQ::i(), -GaussQ::one());
        assert_eq!(GaussQ::i_pow(-1), -GaussQ::i());
        assert_eq!(GaussQ::i_pow(6), -GaussQ::one());
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussQ::new(rat(3, 4), rat(-5, 7));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussQ::one());
        assert!(GaussQ::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussQ::from_ratio(3, 2).to_string(), "3/2");
        assert_eq!((-GaussQ::i()).to_string(), "-I");
        assert_eq!(GaussQ::new(rat(1, 1), rat(-2, 1)).to_string(), "(1 - 2*I)");
    }
}
