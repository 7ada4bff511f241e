use std::collections::HashSet;
use std::fmt;
use std::sync::Mutex;

/// An interned commuting symbol (`h`, `m`, `p`, ...).
///
/// Ordering is by name, so every map keyed by symbols iterates in the same
/// order no matter which thread interned the name first.
#[derive(Clone, Copy)]
pub struct Sym(&'static str);

static INTERNER: Mutex<Option<HashSet<&'static str>>> = Mutex::new(None);

impl Sym {
    pub fn new(name: &str) -> Sym {
        let mut guard = INTERNER.lock().expect("symbol interner poisoned");
        let set = guard.get_or_insert_with(HashSet::new);
        if let Some(s) = set.get(name) {
            return Sym(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Sym(leaked)
    }

    /// The deformation parameter `h = 1/kappa`.
    pub fn h() -> Sym {
        Sym::new("h")
    }

    pub fn name(&self) -> &'static str {
        self.0
    }

    pub fn is_h(&self) -> bool {
        self.0 == "h"
    }
}

impl PartialEq for Sym {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0) || self.0 == other.0
    }
}

impl Eq for Sym {}

impl std::hash::Hash for Sym {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialOrd for Sym {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sym {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if std::ptr::eq(self.0, other.0) {
            return std::cmp::Ordering::Equal;
        }
        self.0.cmp(other.0)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}
