//! Zero test modulo orthogonality of matrix generators.
//!
//! Entries of a family declared `orthogonal` commute with each other, so an
//! element is a sum of (polynomial in the entries) times (remaining word).
//! It vanishes modulo `R R^T = R^T R = 1` iff every such polynomial vanishes
//! on O(3). Both components of O(3) are covered by `±` the Cayley
//! parametrisation `R = ((1-|q|^2) 1 + 2 q q^T + 2 [q]x) / (1+|q|^2)`, which
//! is dense in SO(3); the ideal is radical, so vanishing there is
//! membership.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::{Element, Letter, Word};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::scalars::{GaussQ, Poly, Sym};

type Entry = (u8, u8, u8);

fn orthogonal_entry(l: &Letter, slots: &[Arc<Presentation>]) -> Result<Option<Entry>> {
    let p = &slots[l.slot as usize];
    let g = &p.gens[l.gen as usize];
    let fam = &p.families[g.family];
    if !p.orthogonal.contains(&fam.name) {
        return Ok(None);
    }
    if fam.dims != [3, 3] {
        return Err(Error::Argument(format!("orthogonal family `{}` must be 3x3", fam.name)));
    }
    Ok(Some((l.slot, g.indices[0] - 1, g.indices[1] - 1)))
}

fn params(slot: u8) -> [Poly; 3] {
    ["a", "b", "c"].map(|n| Poly::var(Sym::new(&format!("cayley{n}{slot}"))))
}

/// Numerator of the Cayley rotation matrix and its common denominator.
pub fn cayley_matrix(q: &[Poly; 3]) -> ([[Poly; 3]; 3], Poly) {
    let sq = &(&(&q[0] * &q[0]) + &(&q[1] * &q[1])) + &(&q[2] * &q[2]);
    let n = &Poly::one() + &sq;
    let diag = &Poly::one() - &sq;
    let two = Poly::int(2);
    let mut m: [[Poly; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut e = &two * &(&q[i] * &q[j]);
            if i == j {
                e = &e + &diag;
            }
            m[i][j] = e;
        }
    }
    // 2 [q]x with [q]x = [[0,-c,b],[c,0,-a],[-b,a,0]]
    let cross = [(0, 1, 2, -1), (0, 2, 1, 1), (1, 0, 2, 1), (1, 2, 0, -1), (2, 0, 1, -1), (2, 1, 0, 1)];
    for (i, j, k, s) in cross {
        m[i][j] = &m[i][j] + &(&Poly::int(2 * s) * &q[k]);
    }
    (m, n)
}

/// Whether `e` vanishes modulo the orthogonality relations of every slot.
/// Without orthogonal families this is the plain zero test.
pub fn vanishes_mod_orthogonal(e: &Element, slots: &[Arc<Presentation>]) -> Result<bool> {
    let mut groups: BTreeMap<Word, Vec<(Vec<Entry>, Poly)>> = BTreeMap::new();
    let mut ortho_slots: Vec<u8> = Vec::new();
    for (w, c) in e.terms() {
        let mut rest = Word::new();
        let mut entries = Vec::new();
        for l in w {
            match orthogonal_entry(l, slots)? {
                Some(en) => {
                    entries.push(en);
                    if !ortho_slots.contains(&en.0) {
                        ortho_slots.push(en.0);
                    }
                }
                None => rest.push(*l),
            }
        }
        groups.entry(rest).or_default().push((entries, c.clone()));
    }
    if ortho_slots.is_empty() {
        return Ok(e.is_zero());
    }
    let mats: BTreeMap<u8, ([[Poly; 3]; 3], Poly)> =
        ortho_slots.iter().map(|&s| (s, cayley_matrix(&params(s)))).collect();
    for signs in 0u32..(1 << ortho_slots.len()) {
        let sign_of = |slot: u8| {
            let k = ortho_slots.iter().position(|&s| s == slot).unwrap();
            if signs >> k & 1 == 1 {
                -1
            } else {
                1
            }
        };
        for terms in groups.values() {
            // clear denominators slot by slot
            let mut top: BTreeMap<u8, usize> = BTreeMap::new();
            for (entries, _) in terms {
                for &s in &ortho_slots {
                    let k = entries.iter().filter(|e| e.0 == s).count();
                    let t = top.entry(s).or_insert(0);
                    *t = (*t).max(k);
                }
            }
            let mut total = Poly::zero();
            for (entries, c) in terms {
                let mut v = c.clone();
                for &(s, i, j) in entries {
                    let m = &mats[&s].0;
                    v = &v * &m[i as usize][j as usize].scale(&GaussQ::from_int(sign_of(s)));
                }
                for &s in &ortho_slots {
                    let k = entries.iter().filter(|e| e.0 == s).count();
                    v = &v * &mats[&s].1.pow((top[&s] - k) as u32);
                }
                total.add_assign_ref(&v);
            }
            if !total.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_matrix_is_orthogonal() {
        let (m, n) = cayley_matrix(&params(0));
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Poly::zero();
                for k in 0..3 {
                    s.add_assign_ref(&(&m[i][k] * &m[j][k]));
                }
                let expect = if i == j { n.pow(2) } else { Poly::zero() };
                assert_eq!(s, expect);
            }
        }
    }
}
