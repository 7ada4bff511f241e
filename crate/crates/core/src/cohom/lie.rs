use std::fmt::Write as _;

use num_traits::Zero;

use crate::dsl::LieSpec;
use crate::error::{Error, Result};
use crate::ncalg::{Element, Presentation};
use crate::scalars::{GaussQ, Poly};

/// Finite-dimensional Lie algebra given by exact structure constants
/// `[e_a, e_b] = sum_k c(a,b,k) e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    pub name: String,
    pub labels: Vec<String>,
    c: Vec<GaussQ>,
}

impl LieData {
    /// Builds the algebra from the brackets of pairs `a < b`; the rest
    /// follows by antisymmetry. Fails unless the Jacobi identity holds.
    pub fn new(name: &str, labels: Vec<String>, brackets: &[(usize, usize, Vec<(usize, GaussQ)>)]) -> Result<LieData> {
        let n = labels.len();
        let mut lie = LieData { name: name.to_string(), labels, c: vec![GaussQ::zero(); n * n * n] };
        for (a, b, value) in brackets {
            let (a, b) = (*a, *b);
            if a >= n || b >= n || a == b {
                return Err(Error::Malformed(format!("bracket of basis elements {a}, {b} out of range")));
            }
            for (k, v) in value {
                let old = lie.c[(a * n + b) * n + k].clone();
                lie.c[(a * n + b) * n + k] = &old + v;
                lie.c[(b * n + a) * n + k] = -&lie.c[(a * n + b) * n + k];
            }
        }
        if let Some((a, b, c)) = lie.jacobi_violation() {
            return Err(Error::Malformed(format!(
                "{}: Jacobi identity fails on {}, {}, {}",
                lie.name, lie.labels[a], lie.labels[b], lie.labels[c]
            )));
        }
        Ok(lie)
    }

    /// Reads the structure constants off a presentation whose relations are
    /// all linear with h-independent coefficients.
    pub fn from_presentation(p: &Presentation) -> Result<LieData> {
        if p.gens.iter().any(|g| g.grouplike) {
            return Err(Error::Malformed(format!("{} has grouplike generators", p.name)));
        }
        let labels: Vec<String> = p.gens.iter().map(|g| g.name.clone()).collect();
        let mut brackets = Vec::new();
        for ((hi, lo), rhs) in p.rules() {
            let mut value = Vec::new();
            for (w, coef) in rhs.terms() {
                if w.len() == 2 && w[0].gen == *lo && w[1].gen == *hi {
                    continue;
                }
                let bad = || Error::Malformed(format!("{}: [{}, {}] is not linear", p.name, labels[*hi as usize], labels[*lo as usize]));
                if w.len() != 1 {
                    return Err(bad());
                }
                let c = coef.as_constant().ok_or_else(bad)?;
                value.push((w[0].gen as usize, c));
            }
            brackets.push((*hi as usize, *lo as usize, value));
        }
        LieData::new(&p.name, labels, &brackets)
    }

    pub fn from_spec(s: &LieSpec) -> Result<LieData> {
        let mut brackets = Vec::new();
        for ((a, b), value) in &s.brackets {
            let mut v = Vec::new();
            for (k, coef) in value {
                let c = coef
                    .as_constant()
                    .ok_or_else(|| Error::Malformed(format!("{}: structure constant {coef} is not a number", s.name)))?;
                v.push((*k, c));
            }
            brackets.push((*a, *b, v));
        }
        LieData::new(&s.name, s.basis.clone(), &brackets)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Coordinates of `[e_a, e_b]`.
    pub fn bracket(&self, a: usize, b: usize) -> &[GaussQ] {
        let n = self.dim();
        &self.c[(a * n + b) * n..(a * n + b + 1) * n]
    }

    /// Coordinates of `[x, y]` for coordinate vectors.
    pub fn bracket_vec(&self, x: &[GaussQ], y: &[GaussQ]) -> Vec<GaussQ> {
        let n = self.dim();
        let mut out = vec![GaussQ::zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let s = &x[a] * &y[b];
                for (k, c) in self.bracket(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&s * c);
                    }
                }
            }
        }
        out
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let e = |i: usize| unit(n, i);
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let t1 = self.bracket_vec(self.bracket(a, b), &e(c));
                    let t2 = self.bracket_vec(self.bracket(b, c), &e(a));
                    let t3 = self.bracket_vec(self.bracket(c, a), &e(b));
                    if (0..n).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// The same algebra in the basis `e'_i = e_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> LieData {
        let n = self.dim();
        let inv = inverse(perm);
        let mut c = vec![GaussQ::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for (k, v) in self.bracket(perm[a], perm[b]).iter().enumerate() {
                    c[(a * n + b) * n + inv[k]] = v.clone();
                }
            }
        }
        LieData { name: self.name.clone(), labels: perm.iter().map(|&i| self.labels[i].clone()).collect(), c }
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<GaussQ> {
    let mut v = vec![GaussQ::zero(); n];
    v[i] = GaussQ::from_int(1);
    v
}

pub(crate) fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Element of `g (x) g` in the basis `e_i (x) e_j`; also used for
/// antisymmetric bilinear forms on `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    n: usize,
    data: Vec<GaussQ>,
}

impl Tensor2 {
    pub fn zero(n: usize) -> Tensor2 {
        Tensor2 { n, data: vec![GaussQ::zero(); n * n] }
    }

    /// `e_a ^ e_b = e_a (x) e_b - e_b (x) e_a`, scaled by `c`.
    pub fn wedge(n: usize, a: usize, b: usize, c: &GaussQ) -> Tensor2 {
        let mut t = Tensor2::zero(n);
        t.add_at(a, b, c);
        t.add_at(b, a, &-c);
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussQ {
        &self.data[i * self.n + j]
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &GaussQ) {
        self.data[i * self.n + j] += c;
    }

    pub fn add(&self, o: &Tensor2) -> Tensor2 {
        Tensor2 { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Tensor2) -> Tensor2 {
        Tensor2 { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &GaussQ) -> Tensor2 {
        Tensor2 { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Tensor2 {
        let mut t = Tensor2::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.data[j * self.n + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.add(&self.transpose()).is_zero()
    }

    /// Adjoint action `x . t = (ad_x (x) id + id (x) ad_x) t` of a basis element.
    pub fn ad(&self, lie: &LieData, x: usize) -> Tensor2 {
        let n = self.n;
        let mut out = Tensor2::zero(n);
        for k in 0..n {
            let bk = lie.bracket(x, k);
            for (i, c) in bk.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t_kj = self.get(k, j);
                    if !t_kj.is_zero() {
                        out.add_at(i, j, &(c * t_kj));
                    }
                    let t_jk = self.get(j, k);
                    if !t_jk.is_zero() {
                        out.add_at(j, i, &(c * t_jk));
                    }
                }
            }
        }
        out
    }

    /// Reads a two-slot element whose words are `g (x) g'` with constant
    /// coefficients, matching generators to basis labels by name.
    pub fn from_element(lie: &LieData, e: &Element, slots: &[std::sync::Arc<Presentation>]) -> Result<Tensor2> {
        let mut t = Tensor2::zero(lie.dim());
        for (w, coef) in e.terms() {
            let bad = || Error::Malformed(format!("term {coef} * {} is not of the form g (x) g'", crate::ncalg::render_word(w, slots)));
            if w.len() != 2 || w[0].slot != 0 || w[1].slot != 1 || w[0].pow != 1 || w[1].pow != 1 {
                return Err(bad());
            }
            let index = |slot: usize, g: u16| {
                let name = &slots[slot].gens[g as usize].name;
                lie.index(name).ok_or_else(|| Error::Malformed(format!("{name} is not a basis element of {}", lie.name)))
            };
            let (i, j) = (index(0, w[0].gen)?, index(1, w[1].gen)?);
            let c = coef.as_constant().ok_or_else(bad)?;
            t.add_at(i, j, &c);
        }
        Ok(t)
    }

    /// The same tensor in the basis of `LieData::permuted(perm)`.
    pub fn permuted(&self, perm: &[usize]) -> Tensor2 {
        let mut t = Tensor2::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.data[i * self.n + j] = self.get(perm[i], perm[j]).clone();
            }
        }
        t
    }

    /// `c a^b + ...` over pairs `a < b` when antisymmetric, `c a(x)b + ...`
    /// otherwise.
    pub fn render(&self, lie: &LieData) -> String {
        let anti = self.is_antisymmetric();
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.get(i, j);
                if c.is_zero() || (anti && j <= i) {
                    continue;
                }
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                let op = if anti { "^" } else { " (x) " };
                let _ = write!(out, "{}*{}{op}{}", Poly::constant(c.clone()), lie.labels[i], lie.labels[j]);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
