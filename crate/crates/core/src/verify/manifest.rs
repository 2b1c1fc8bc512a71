use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use super::TheoremId;

const MANIFEST: &str = include_str!("manifest.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    pub max_exhaustive_n: usize,
    pub max_random_n: usize,
    pub default_samples: usize,
}

fn table() -> &'static BTreeMap<String, Limits> {
    static TABLE: OnceLock<BTreeMap<String, Limits>> = OnceLock::new();
    TABLE.get_or_init(|| toml::from_str(MANIFEST).expect("bundled manifest parses"))
}

/// Sweep limits for a theorem.
pub fn limits(id: TheoremId) -> Limits {
    table()[id.name()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_theorem_has_limits() {
        assert_eq!(table().len(), TheoremId::all().len());
        for t in TheoremId::all() {
            let l = limits(t);
            assert!(l.max_exhaustive_n <= l.max_random_n);
            assert!(l.default_samples > 0);
        }
    }
}
