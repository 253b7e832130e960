//! Vertex-disjoint stars pulled greedily from a host.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl Star {
    pub fn vertices(&self) -> VertexSet {
        std::iter::once(self.center).chain(self.leaves.iter().copied()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarHarvest {
    pub stars: Vec<Star>,
    pub requested: usize,
    pub leaf_count: usize,
    /// Stars still missing.
    pub deficiency: usize,
}

impl StarHarvest {
    pub fn complete(&self) -> bool {
        self.deficiency == 0
    }
}

/// Pulls up to `k` disjoint stars with exactly `leaf_count` leaves from
/// `g - avoid`, taking the centre of highest residual degree first.
pub fn find_disjoint_stars(g: &Graph, avoid: &VertexSet, k: usize, leaf_count: usize) -> StarHarvest {
    let stars = harvest(g, &avoid.mask(g.n()), leaf_count, leaf_count, k);
    StarHarvest { deficiency: k - stars.len(), stars, requested: k, leaf_count }
}

/// Greedy disjoint stars with between `min_leaves` and `max_leaves` leaves.
/// Centres go by highest residual degree, then smallest id; leaves by
/// lowest residual degree, then smallest id.
pub(crate) fn harvest(g: &Graph, blocked: &[bool], min_leaves: usize, max_leaves: usize, limit: usize) -> Vec<Star> {
    let n = g.n();
    let mut used = blocked.to_vec();
    let mut residual: Vec<usize> = (0..n).map(|v| g.neighbors(v).iter().filter(|&&w| !used[w]).count()).collect();
    let mut stars = Vec::new();
    while stars.len() < limit {
        let Some(center) = (0..n).filter(|&v| !used[v] && residual[v] >= min_leaves).max_by_key(|&v| (residual[v], std::cmp::Reverse(v)))
        else {
            break;
        };
        let mut nb: Vec<usize> = g.neighbors(center).iter().copied().filter(|&w| !used[w]).collect();
        nb.sort_by_key(|&w| (residual[w], w));
        nb.truncate(max_leaves);
        let star = Star { center, leaves: nb };
        for v in star.vertices().iter() {
            used[v] = true;
            for &w in g.neighbors(v) {
                residual[w] -= 1;
            }
        }
        stars.push(star);
    }
    stars
}
