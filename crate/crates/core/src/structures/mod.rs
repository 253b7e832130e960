//! Suns, stars, units, webs and nakjis: validators and best-effort builders.

pub mod nakji;
pub mod stars;
pub mod sun;
pub mod unit;
pub mod web;

use serde::{Deserialize, Serialize};

pub use nakji::{build_nakjis, validate_nakji, Nakji, NakjiBuild, NakjiParams};
pub use stars::{find_disjoint_stars, Star, StarHarvest};
pub use sun::{find_sun, validate_sun, Sun, SunSearch};
pub use unit::{build_unit, validate_unit, Unit, UnitParams};
pub use web::{build_web, validate_web, Web, WebParams, WebParts};

pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Outcome of a best-effort builder, with the steps it took.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Built<T> {
    Found { structure: T, trace: Vec<String> },
    Failed { reason: String, budget_exhausted: bool, trace: Vec<String> },
}

impl<T> Built<T> {
    pub fn structure(&self) -> Option<&T> {
        match self {
            Built::Found { structure, .. } => Some(structure),
            Built::Failed { .. } => None,
        }
    }

    pub fn into_structure(self) -> Option<T> {
        match self {
            Built::Found { structure, .. } => Some(structure),
            Built::Failed { .. } => None,
        }
    }

    pub fn trace(&self) -> &[String] {
        match self {
            Built::Found { trace, .. } | Built::Failed { trace, .. } => trace,
        }
    }
}

/// Counts vertex visits across searches.
#[derive(Clone, Debug)]
pub(crate) struct Budget {
    pub limit: usize,
    pub spent: usize,
}

impl Budget {
    pub fn new(limit: usize) -> Self {
        Budget { limit, spent: 0 }
    }

    /// Charges `visits`; false once the limit is passed.
    pub fn charge(&mut self, visits: usize) -> bool {
        self.spent = self.spent.saturating_add(visits);
        self.spent <= self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.spent > self.limit
    }
}

/// Whether the interiors of `paths` are pairwise disjoint and avoid every
/// endpoint.
pub(crate) fn internally_disjoint(paths: &[&[usize]]) -> Option<(usize, usize, usize)> {
    let mut owner = std::collections::HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        for &v in &p[1..p.len().saturating_sub(1)] {
            if let Some(j) = owner.insert(v, i) {
                return Some((j, i, v));
            }
        }
    }
    for (i, p) in paths.iter().enumerate() {
        for &end in [p[0], p[p.len() - 1]].iter() {
            if let Some(&j) = owner.get(&end) {
                if j != i {
                    return Some((j, i, end));
                }
            }
        }
    }
    None
}
