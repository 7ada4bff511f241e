use std::collections::BTreeMap;
use std::sync::Arc;

use super::ctx::Ctx;
use super::element::{Element, GenId, Letter, Word};
use crate::error::{Error, Result};
use crate::scalars::{Poly, Sym};

/// A generator family such as `M[3]`, `R[3,3]`, `P0` or `E grouplike`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub dims: Vec<u8>,
    pub grouplike: bool,
}

/// A concrete generator (`M[2]`, `P0`, `E`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInfo {
    pub family: usize,
    pub indices: Vec<u8>,
    pub grouplike: bool,
    pub name: String,
}

/// Finitely presented algebra with PBW order, oriented rewrite rules and
/// Hopf data on generators. Generator ids are PBW ranks.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub params: Vec<Sym>,
    pub families: Vec<Family>,
    pub gens: Vec<GenInfo>,
    /// `(hi, lo)`: the out-of-order digram `hi*lo` rewrites to the element.
    pub(crate) rules: BTreeMap<(GenId, GenId), Element>,
    /// `(g, x, s)`: `g^s * x * g^-s` for grouplike `g`, `s = +-1`.
    pub(crate) conj: BTreeMap<(GenId, GenId, i8), Element>,
    pub coproduct: BTreeMap<GenId, Element>,
    pub counit: BTreeMap<GenId, Poly>,
    pub antipode: BTreeMap<GenId, Element>,
    /// Grouplike `g` equals `exp(element)` in series mode.
    pub expansions: BTreeMap<GenId, Element>,
    /// Families constrained to be orthogonal matrices (`R R^T = R^T R = 1`).
    pub orthogonal: Vec<String>,
}

pub(crate) fn family_instances(dims: &[u8]) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=d).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

pub(crate) fn gen_display(name: &str, indices: &[u8]) -> String {
    if indices.is_empty() {
        name.to_string()
    } else {
        let idx: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
        format!("{name}[{}]", idx.join(","))
    }
}

impl Presentation {
    /// Declares families and the PBW order (a permutation of family names).
    pub fn new(name: &str, params: Vec<Sym>, families: Vec<Family>, order: &[String]) -> Result<Presentation> {
        let mut gens = Vec::new();
        for fname in order {
            let (fi, fam) = families
                .iter()
                .enumerate()
                .find(|(_, f)| &f.name == fname)
                .ok_or_else(|| Error::Malformed(format!("order names unknown generator `{fname}`")))?;
            for idx in family_instances(&fam.dims) {
                gens.push(GenInfo {
                    family: fi,
                    name: gen_display(&fam.name, &idx),
                    indices: idx,
                    grouplike: fam.grouplike,
                });
            }
        }
        if order.len() != families.len() {
            return Err(Error::Malformed("order must list every generator family exactly once".into()));
        }
        let mut seen_grouplike = false;
        for g in &gens {
            if g.grouplike {
                seen_grouplike = true;
            } else if seen_grouplike {
                return Err(Error::Malformed(format!(
                    "grouplike generators must follow all others in the order (`{}` comes after one)",
                    g.name
                )));
            }
        }
        if gens.len() > u16::MAX as usize {
            return Err(Error::Malformed("too many generators".into()));
        }
        Ok(Presentation {
            name: name.to_string(),
            params,
            families,
            gens,
            rules: BTreeMap::new(),
            conj: BTreeMap::new(),
            coproduct: BTreeMap::new(),
            counit: BTreeMap::new(),
            antipode: BTreeMap::new(),
            expansions: BTreeMap::new(),
            orthogonal: Vec::new(),
        })
    }

    pub fn gen_id(&self, family: &str, indices: &[u8]) -> Option<GenId> {
        self.gens
            .iter()
            .position(|g| self.families[g.family].name == family && g.indices == indices)
            .map(|i| i as GenId)
    }

    /// Looks up `"M[1]"`, `"P0"`, `"R[1,2]"`.
    pub fn gen_by_name(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as GenId)
    }

    pub fn gen(&self, name: &str) -> GenId {
        self.gen_by_name(name)
            .unwrap_or_else(|| panic!("no generator {name} in {}", self.name))
    }

    pub fn family_of(&self, id: GenId) -> &Family {
        &self.families[self.gens[id as usize].family]
    }

    pub fn is_grouplike(&self, id: GenId) -> bool {
        self.gens[id as usize].grouplike
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(GenId, GenId), &Element)> {
        self.rules.iter()
    }

    pub fn rule(&self, hi: GenId, lo: GenId) -> Option<&Element> {
        self.rules.get(&(hi, lo))
    }

    pub fn has_hopf_data(&self) -> bool {
        !self.coproduct.is_empty()
    }

    /// `(disorder, length)`: inversions within a word and its length.
    pub fn disorder(&self, w: &Word) -> usize {
        let mut d = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i].slot == w[j].slot && w[i].gen > w[j].gen {
                    d += 1;
                }
            }
        }
        for pair in w.windows(2) {
            if pair[0].slot == pair[1].slot && pair[0].gen == pair[1].gen && self.is_grouplike(pair[0].gen) {
                d += 1;
            }
        }
        d
    }

    /// Orients the relation `lhs = rhs` (slot 0) into a rewrite rule. The
    /// left side must contain exactly one word out of PBW order, a digram of
    /// two generators; every other word moves to the rule's right side,
    /// which is normal-ordered once all rules are known.
    pub fn add_relation(&mut self, lhs: &Element, rhs: &Element) -> std::result::Result<(), String> {
        let difference = lhs.sub(rhs);
        if difference.is_zero() {
            return Ok(());
        }
        let mut lead: Option<(&Word, &Poly)> = None;
        for (w, p) in lhs.terms() {
            if self.disorder(w) > 0 {
                if lead.is_some() {
                    return Err("unorientable relation: more than one out-of-order word on the left side".into());
                }
                lead = Some((w, p));
            }
        }
        let (w, c) = lead.ok_or_else(|| {
            "unorientable relation: the left side has no word out of PBW order".to_string()
        })?;
        if w.len() != 2 || w.iter().any(|l| l.pow != 1) || w[0].gen == w[1].gen {
            return Err(format!(
                "unorientable relation: the out-of-order word must be a digram of two distinct generators, found length {}",
                w.len()
            ));
        }
        let inv = c
            .inv_monomial()
            .ok_or_else(|| format!("leading coefficient {c} is not invertible"))?;
        let key = (w[0].gen, w[1].gen);
        let mut rule = difference.clone();
        rule.add_term(w.clone(), -c);
        let rule = rule.scale(&(-&inv));
        if !rule.coeff(w).is_zero() {
            return Err(format!(
                "unorientable relation: right side of {}*{} contains the word itself",
                self.gens[key.0 as usize].name, self.gens[key.1 as usize].name
            ));
        }
        if let Some(old) = self.rules.get(&key) {
            if *old != rule {
                return Err(format!(
                    "conflicting relations for {}*{}",
                    self.gens[key.0 as usize].name, self.gens[key.1 as usize].name
                ));
            }
        }
        self.rules.insert(key, rule);
        Ok(())
    }

    /// Replaces every rule right side by its normal form.
    pub fn normalize_rules(&mut self) -> Result<()> {
        let ctx = Ctx::new(vec![Arc::new(self.clone())]);
        let mut out = BTreeMap::new();
        for (k, r) in &self.rules {
            out.insert(*k, ctx.normal_order(r)?);
        }
        self.rules = out;
        Ok(())
    }

    /// Pairs `(hi, lo)` that still lack a rewrite rule.
    pub fn missing_rules(&self) -> Vec<(GenId, GenId)> {
        let n = self.gens.len() as GenId;
        let mut out = Vec::new();
        for hi in 0..n {
            for lo in 0..hi {
                if !self.rules.contains_key(&(hi, lo)) {
                    out.push((hi, lo));
                }
            }
        }
        out
    }

    /// Derives the conjugation tables of grouplike generators from their
    /// rules: `g x = phi(x) g` gives `phi`, and `phi^-1` follows by the
    /// Neumann series `sum (id - phi)^k`.
    pub fn derive_conjugations(&mut self) -> Result<()> {
        self.conj.clear();
        let grouplikes: Vec<GenId> = (0..self.gens.len() as GenId).filter(|&g| self.is_grouplike(g)).collect();
        for &g in &grouplikes {
            for x in 0..g {
                let rhs = self.rules.get(&(g, x)).ok_or_else(|| {
                    Error::Malformed(format!("no relation for {}*{}", self.gens[g as usize].name, self.gens[x as usize].name))
                })?;
                let mut phi = Element::zero();
                for (w, p) in rhs.terms() {
                    match w.split_last() {
                        Some((last, rest)) if *last == Letter::new(0, g) => {
                            phi.add_term(rest.to_vec(), p.clone());
                        }
                        _ => {
                            return Err(Error::Malformed(format!(
                                "relation for {}*{} must have the form phi(x)*{}",
                                self.gens[g as usize].name,
                                self.gens[x as usize].name,
                                self.gens[g as usize].name
                            )))
                        }
                    }
                }
                if self.is_grouplike(x) && phi != Element::letter(Letter::new(0, x)) {
                    return Err(Error::Malformed("grouplike generators must commute with each other".into()));
                }
                self.conj.insert((g, x, 1), phi);
            }
        }
        let snapshot = Arc::new(self.clone());
        let ctx = Ctx::new(vec![snapshot]);
        for &g in &grouplikes {
            for x in 0..g {
                let letter = Element::letter(Letter::new(0, x));
                let mut inv = letter.clone();
                let mut delta_k = letter;
                let mut converged = false;
                for _ in 0..64 {
                    // delta_k <- (id - phi)(delta_k)
                    let image = ctx.apply_conj(&delta_k, g)?;
                    delta_k = delta_k.sub(&image);
                    if delta_k.is_zero() {
                        converged = true;
                        break;
                    }
                    inv.add_assign(&delta_k);
                }
                if !converged {
                    return Err(Error::Divergence {
                        steps: 64,
                        digram: format!("inverse conjugation of {} by {}", self.gens[x as usize].name, self.gens[g as usize].name),
                    });
                }
                self.conj.insert((g, x, -1), inv);
            }
        }
        Ok(())
    }

    pub(crate) fn conj(&self, g: GenId, x: GenId, sign: i8) -> Option<&Element> {
        self.conj.get(&(g, x, sign))
    }
}
