//! The shipped model files and the catalog built from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dsl::{parse_document, BicrossSpec, ComoduleSpec, ElementSet, LieSpec};
use crate::error::{Error, Result};
use crate::ncalg::Presentation;

/// `(file name, text)` in dependency order.
pub const SHIPPED: &[(&str, &str)] = &[
    ("galilei_algebra_kappa.hopf", include_str!("../models/galilei_algebra_kappa.hopf")),
    ("galilei_algebra_classical.hopf", include_str!("../models/galilei_algebra_classical.hopf")),
    ("casimirs.hopf", include_str!("../models/casimirs.hopf")),
    ("tilde_bicross.hopf", include_str!("../models/tilde_bicross.hopf")),
    ("galilei_group_kappa.hopf", include_str!("../models/galilei_group_kappa.hopf")),
    ("group_bicross.hopf", include_str!("../models/group_bicross.hopf")),
    ("spacetime.hopf", include_str!("../models/spacetime.hopf")),
    ("galilei_group_2d.hopf", include_str!("../models/galilei_group_2d.hopf")),
];

/// Names accepted by [`Catalog::load`].
pub const MODEL_NAMES: &[&str] = &[
    "galilei_algebra_kappa",
    "galilei_algebra_classical",
    "casimirs",
    "tilde_bicross",
    "galilei_group_kappa",
    "group_bicross",
    "spacetime",
    "galilei_group_2d",
];

#[derive(Clone, Debug)]
pub enum Model {
    Presentation(Arc<Presentation>),
    Elements(ElementSet),
    Bicross(BicrossSpec),
    Comodule(ComoduleSpec),
    Lie(LieSpec),
}

/// Every declaration of a set of model files, by name.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub presentations: BTreeMap<String, Arc<Presentation>>,
    pub elements: BTreeMap<String, ElementSet>,
    pub bicross: BTreeMap<String, BicrossSpec>,
    pub comodules: BTreeMap<String, ComoduleSpec>,
    pub lies: BTreeMap<String, LieSpec>,
}

impl Catalog {
    pub fn shipped() -> Result<Catalog> {
        Catalog::from_sources(SHIPPED.iter().map(|(n, t)| (n.to_string(), t.to_string())))
    }

    /// Shipped files with user files substituted: a user file whose name
    /// matches a shipped file replaces it, others are appended.
    pub fn with_overrides(files: &[(String, String)]) -> Result<Catalog> {
        let mut sources: Vec<(String, String)> =
            SHIPPED.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
        for (name, text) in files {
            let base = std::path::Path::new(name)
                .file_name()
                .map(|s| s.to_string_lossy().to_string())
                .unwrap_or_else(|| name.clone());
            match sources.iter_mut().find(|(n, _)| *n == base) {
                Some(slot) => slot.1 = text.clone(),
                None => sources.push((base, text.clone())),
            }
        }
        Catalog::from_sources(sources)
    }

    pub fn from_sources(sources: impl IntoIterator<Item = (String, String)>) -> Result<Catalog> {
        let mut cat = Catalog::default();
        for (name, text) in sources {
            let doc = parse_document(&text, &cat.presentations).map_err(|e| match e {
                Error::Parse(diags) => Error::Parse(
                    diags
                        .into_iter()
                        .map(|mut d| {
                            d.message = format!("{name}: {}", d.message);
                            d
                        })
                        .collect(),
                ),
                other => other,
            })?;
            for p in doc.presentations {
                cat.presentations.insert(p.name.clone(), p);
            }
            for e in doc.elements {
                cat.elements.insert(e.name.clone(), e);
            }
            for b in doc.bicross {
                cat.bicross.insert(b.name.clone(), b);
            }
            for c in doc.comodules {
                cat.comodules.insert(c.name.clone(), c);
            }
            for l in doc.lies {
                cat.lies.insert(l.name.clone(), l);
            }
        }
        Ok(cat)
    }

    pub fn load(&self, name: &str) -> Result<Model> {
        if let Some(p) = self.presentations.get(name) {
            return Ok(Model::Presentation(p.clone()));
        }
        if let Some(e) = self.elements.get(name) {
            return Ok(Model::Elements(e.clone()));
        }
        if let Some(b) = self.bicross.get(name) {
            return Ok(Model::Bicross(b.clone()));
        }
        if let Some(c) = self.comodules.get(name) {
            return Ok(Model::Comodule(c.clone()));
        }
        if let Some(l) = self.lies.get(name) {
            return Ok(Model::Lie(l.clone()));
        }
        Err(Error::UnknownModel(name.to_string()))
    }

    pub fn presentation(&self, name: &str) -> Result<Arc<Presentation>> {
        self.presentations
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownModel(name.to_string()))
    }

    pub fn element_set(&self, name: &str) -> Result<&ElementSet> {
        self.elements.get(name).ok_or_else(|| Error::UnknownModel(name.to_string()))
    }

    pub fn bicross_spec(&self, name: &str) -> Result<&BicrossSpec> {
        self.bicross.get(name).ok_or_else(|| Error::UnknownModel(name.to_string()))
    }

    pub fn comodule(&self, name: &str) -> Result<&ComoduleSpec> {
        self.comodules.get(name).ok_or_else(|| Error::UnknownModel(name.to_string()))
    }

    pub fn lie(&self, name: &str) -> Result<&LieSpec> {
        self.lies.get(name).ok_or_else(|| Error::UnknownModel(name.to_string()))
    }
}

/// Loads one model from the shipped catalog.
pub fn load_model(name: &str) -> Result<Model> {
    Catalog::shipped()?.load(name)
}

/// Text of a shipped model file, by file name.
pub fn shipped_source(file: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == file).map(|(_, t)| *t)
}
