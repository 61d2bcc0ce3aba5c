use std::collections::BTreeMap;

use crate::triangulate::Simplex3;

/// A finite set of lattice tetrahedra, each tagged with the recursion path
/// that produced it. Iteration order is canonical (sorted vertex lists).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover {
    entries: BTreeMap<Simplex3, String>,
    pub target: String,
    pub max_depth: usize,
}

impl Cover {
    pub fn new(target: impl Into<String>) -> Cover {
        Cover { entries: BTreeMap::new(), target: target.into(), max_depth: 0 }
    }

    /// Inserts a simplex; the first provenance recorded for it is kept.
    pub fn insert(&mut self, s: Simplex3, provenance: impl Into<String>) {
        self.entries.entry(s).or_insert_with(|| provenance.into());
    }

    pub fn merge(&mut self, other: Cover) {
        self.max_depth = self.max_depth.max(other.max_depth);
        for (s, p) in other.entries {
            self.insert(s, p);
        }
    }

    /// Applies `f` to every simplex and prefixes every provenance tag.
    pub fn map(&self, prefix: &str, f: impl Fn(&Simplex3) -> Simplex3) -> Cover {
        let mut out = Cover::new(self.target.clone());
        out.max_depth = self.max_depth;
        for (s, p) in &self.entries {
            out.insert(f(s), format!("{prefix}{p}"));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn simplices(&self) -> Vec<Simplex3> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex3, &str)> {
        self.entries.iter().map(|(s, p)| (s, p.as_str()))
    }

    pub fn provenance(&self, s: &Simplex3) -> Option<&str> {
        self.entries.get(s).map(String::as_str)
    }

    pub fn all_unimodular(&self) -> bool {
        self.entries.keys().all(Simplex3::is_unimodular)
    }

    pub fn total_volume(&self) -> i128 {
        self.entries.keys().map(Simplex3::normalized_volume).sum()
    }
}
