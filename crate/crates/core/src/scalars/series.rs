use std::fmt;

use num_bigint::BigInt;

use super::gauss::{GaussQ, Rational};
use super::poly::Poly;
use super::symbol::Sym;
use crate::error::{Error, Result};

/// Truncated power series in `h = 1/kappa` with h-free polynomial coefficients.
///
/// Terms beyond `h^order` are discarded. `exact` stays true while no
/// nonzero term has been dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    coeffs: Vec<Poly>,
    order: u32,
    exact: bool,
}

impl HSeries {
    pub fn zero(order: u32) -> HSeries {
        HSeries { coeffs: Vec::new(), order, exact: true }
    }

    pub fn constant(p: Poly, order: u32) -> HSeries {
        HSeries::from_coeffs(vec![p], order)
    }

    /// Builds from coefficients; anything past `order` is cut.
    pub fn from_coeffs(mut coeffs: Vec<Poly>, order: u32) -> HSeries {
        let mut exact = true;
        if coeffs.len() > order as usize + 1 {
            exact = coeffs[order as usize + 1..].iter().all(Poly::is_zero);
            coeffs.truncate(order as usize + 1);
        }
        let mut s = HSeries { coeffs, order, exact };
        s.trim();
        s
    }

    /// Splits a polynomial containing non-negative powers of `h`.
    pub fn from_poly(p: &Poly, order: u32) -> Result<HSeries> {
        let (lo, hi) = p.h_range().unwrap_or((0, 0));
        if lo < 0 {
            return Err(Error::Domain(format!("negative power of h in {p}")));
        }
        let coeffs = (0..=hi).map(|k| p.coeff_h(k)).collect();
        Ok(HSeries::from_coeffs(coeffs, order))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Poly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.add_assign_ref(&c.mul_mono(&super::poly::Mono::var(Sym::h(), k as i32)));
        }
        out
    }

    pub fn with_order(&self, order: u32) -> HSeries {
        let mut s = HSeries::from_coeffs(self.coeffs.clone(), order);
        s.exact &= self.exact;
        s
    }

    pub fn add(&self, o: &HSeries) -> HSeries {
        let order = self.order.min(o.order);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        let mut s = HSeries::from_coeffs(coeffs, order);
        s.exact &= self.exact && o.exact;
        s
    }

    pub fn neg(&self) -> HSeries {
        HSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
            exact: self.exact,
        }
    }

    pub fn sub(&self, o: &HSeries) -> HSeries {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &HSeries) -> HSeries {
        let order = self.order.min(o.order);
        let mut coeffs = vec![Poly::zero(); self.coeffs.len() + o.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j].add_scaled(a, b);
            }
        }
        let mut s = HSeries::from_coeffs(coeffs, order);
        s.exact &= self.exact && o.exact;
        s
    }

    pub fn scale(&self, c: &Poly) -> HSeries {
        let mut s = HSeries::from_coeffs(self.coeffs.iter().map(|x| x * c).collect(), self.order);
        s.exact &= self.exact;
        s
    }

    fn require_no_constant(&self, what: &str) -> Result<()> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Domain(format!(
                "{what} needs a series without h^0 term, got constant part {}",
                self.coeff(0)
            )));
        }
        Ok(())
    }
}

/// `ln(1 + x)` truncated at `h^order`; `x` must vanish at `h = 0`.
pub fn series_log1p(x: &HSeries, order: u32) -> Result<HSeries> {
    if order < 1 {
        return Err(Error::Argument("series_log1p needs order >= 1".into()));
    }
    x.require_no_constant("series_log1p")?;
    let x = x.with_order(order);
    let mut out = HSeries::zero(order);
    let mut power = x.clone();
    for k in 1..=order {
        let c = Rational::new(BigInt::from(if k % 2 == 1 { 1 } else { -1 }), BigInt::from(k));
        out = out.add(&power.scale(&Poly::constant(GaussQ::real(c))));
        power = power.mul(&x);
    }
    out.exact = false;
    if x.is_zero() {
        out.exact = true;
    }
    Ok(out)
}

/// `exp(x) = sum x^k/k!` truncated at `h^order`; `x` must vanish at `h = 0`.
pub fn series_exp(x: &HSeries, order: u32) -> Result<HSeries> {
    x.require_no_constant("series_exp")?;
    let x = x.with_order(order);
    let mut out = HSeries::constant(Poly::one(), order);
    let mut term = HSeries::constant(Poly::one(), order);
    for k in 1..=order {
        term = term.mul(&x).scale(&Poly::ratio(1, k as i64));
        out = out.add(&term);
    }
    out.exact = x.is_zero();
    Ok(out)
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())?;
        if !self.exact {
            write!(f, " + O(h^{})", self.order + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv2_half_h() -> HSeries {
        let m = Poly::var(Sym::new("m"));
        let v = Poly::var(Sym::new("v"));
        let c = (&m * &v.pow(2)).scale(&GaussQ::from_ratio(1, 2));
        HSeries::from_coeffs(vec![Poly::zero(), c], 8)
    }

    /// Taylor coefficients of ln(1+u) by repeated exact differentiation:
    /// d^k/du^k ln(1+u) at 0 equals (-1)^(k+1) (k-1)!.
    fn log1p_taylor_oracle(k: u32) -> Rational {
        let mut fact = BigInt::from(1);
        for j in 1..k {
            fact *= j;
        }
        let deriv = if k % 2 == 1 { fact.clone() } else { -fact };
        let mut kfact = BigInt::from(1);
        for j in 1..=k {
            kfact *= j;
        }
        Rational::new(deriv, kfact)
    }

    #[test]
    fn log1p_order_two_matches_taylor_oracle() {
        let x = mv2_half_h();
        let got = series_log1p(&x, 2).unwrap();
        let u = x.coeff(1);
        let expect1 = u.scale_rat(&log1p_taylor_oracle(1));
        let expect2 = u.pow(2).scale_rat(&log1p_taylor_oracle(2));
        assert_eq!(got.coeff(1), expect1);
        assert_eq!(got.coeff(2), expect2);
        let m = Poly::var(Sym::new("m"));
        let v = Poly::var(Sym::new("v"));
        assert_eq!(got.coeff(2), (&m.pow(2) * &v.pow(4)).scale(&GaussQ::from_ratio(-1, 8)));
    }

    #[test]
    fn log1p_of_zero() {
        let z = series_log1p(&HSeries::zero(3), 3).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn exp_inverts_log1p() {
        let x = mv2_half_h().with_order(4);
        let back = series_exp(&series_log1p(&x, 4).unwrap(), 4).unwrap();
        let one = HSeries::constant(Poly::one(), 4);
        assert_eq!(back.coeffs(), one.add(&x).with_order(4).coeffs());
    }

    #[test]
    fn exp_of_placeholder() {
        let p0 = Poly::var(Sym::new("P0"));
        let x = HSeries::from_coeffs(vec![Poly::zero(), p0.scale(&GaussQ::from_ratio(1, 2))], 2);
        let e = series_exp(&x, 2).unwrap();
        assert_eq!(e.coeff(0), Poly::one());
        assert_eq!(e.coeff(1), p0.scale(&GaussQ::from_ratio(1, 2)));
        assert_eq!(e.coeff(2), p0.pow(2).scale(&GaussQ::from_ratio(1, 8)));
        assert_eq!(series_exp(&HSeries::zero(2), 2).unwrap(), HSeries::constant(Poly::one(), 2));
    }

    #[test]
    fn exp_group_property() {
        let mv = Poly::var(Sym::new("m")) * Poly::var(Sym::new("v"));
        let a = HSeries::from_coeffs(vec![Poly::zero(), mv], 3);
        let prod = series_exp(&a, 3).unwrap().mul(&series_exp(&a.neg(), 3).unwrap());
        assert_eq!(prod.to_poly(), Poly::one());
    }

    #[test]
    fn errors() {
        let c = HSeries::constant(Poly::one(), 2);
        assert!(matches!(series_log1p(&c, 2), Err(Error::Domain(_))));
        assert!(matches!(series_exp(&c, 2), Err(Error::Domain(_))));
        assert!(matches!(series_log1p(&HSeries::zero(2), 0), Err(Error::Argument(_))));
    }
}
