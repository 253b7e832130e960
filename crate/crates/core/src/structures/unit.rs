//! Units: a core joined by short spokes to the centres of disjoint stars.

use serde::{Deserialize, Serialize};

use super::stars::{harvest, Star};
use super::{internally_disjoint, Budget, Built};
use crate::error::Violation;
use crate::graph::{Graph, Path, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitParams {
    /// Number of spokes.
    pub h1: usize,
    /// Leaves per star.
    pub h2: usize,
    /// Longest spoke.
    pub h3: usize,
}

/// Spoke `i` runs from `core` to the centre of `stars[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unit {
    pub params: UnitParams,
    pub core: usize,
    pub spokes: Vec<Path>,
    pub stars: Vec<Star>,
}

impl Unit {
    pub fn vertices(&self) -> VertexSet {
        self.spokes
            .iter()
            .flat_map(|p| p.vertices().iter().copied())
            .chain(self.stars.iter().flat_map(|s| s.vertices().into_vec()))
            .chain(std::iter::once(self.core))
            .collect()
    }

    /// Star leaves.
    pub fn exterior(&self) -> VertexSet {
        self.stars.iter().flat_map(|s| s.leaves.iter().copied()).collect()
    }

    pub fn interior(&self) -> VertexSet {
        self.vertices().difference(&self.exterior())
    }

    /// The path from the core to an exterior vertex.
    pub fn path_to(&self, w: usize) -> Option<Path> {
        let i = self.stars.iter().position(|s| s.leaves.contains(&w))?;
        let mut v = self.spokes[i].vertices().to_vec();
        v.push(w);
        Some(Path::unchecked(v))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> =
            self.spokes.iter().flat_map(|p| p.vertices().windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()).collect();
        for s in &self.stars {
            e.extend(s.leaves.iter().map(|&l| (s.center, l)));
        }
        e
    }
}

pub fn validate_unit(host: &Graph, unit: &Unit) -> Result<(), Violation> {
    let UnitParams { h1, h2, h3 } = unit.params;
    if let Some(v) = unit.vertices().iter().find(|&v| v >= host.n()) {
        return Err(Violation::new("vertex range", format!("vertex {v} is not in the host")));
    }
    if unit.spokes.len() != h1 || unit.stars.len() != h1 {
        return Err(Violation::new(
            "branch count",
            format!("{} spokes and {} stars, expected {h1}", unit.spokes.len(), unit.stars.len()),
        ));
    }
    for (i, p) in unit.spokes.iter().enumerate() {
        if !host.is_path(p.vertices()) || p.start() != unit.core {
            return Err(Violation::new("spoke path", format!("spoke {i} is not a path from the core in the host")));
        }
        if p.len() == 0 || p.len() > h3 {
            return Err(Violation::new("spoke length", format!("spoke {i} has length {}, allowed 1..={h3}", p.len())));
        }
    }
    let ends: VertexSet = unit.spokes.iter().map(|p| p.end()).collect();
    if ends.len() != h1 {
        return Err(Violation::new("distinct branch ends", "two spokes end at the same vertex"));
    }
    let spokes: Vec<&[usize]> = unit.spokes.iter().map(|p| p.vertices()).collect();
    if let Some((i, j, v)) = internally_disjoint(&spokes) {
        return Err(Violation::new("spokes internally disjoint", format!("spokes {i} and {j} share {v}")));
    }
    let mut seen = VertexSet::new();
    let on_spokes: VertexSet = spokes.iter().flat_map(|p| p.iter().copied()).collect();
    for (i, s) in unit.stars.iter().enumerate() {
        if s.center != unit.spokes[i].end() {
            return Err(Violation::new("star centre", format!("star {i} is not centred at the end of spoke {i}")));
        }
        let vs = s.vertices();
        if s.leaves.len() != h2 || vs.len() != h2 + 1 {
            return Err(Violation::new("star size", format!("star {i} has {} distinct leaves, expected {h2}", vs.len() - 1)));
        }
        if let Some(&l) = s.leaves.iter().find(|&&l| !host.has_edge(s.center, l)) {
            return Err(Violation::new("star in host", format!("({}, {l}) is not an edge", s.center)));
        }
        if !vs.is_disjoint(&seen) {
            return Err(Violation::new("star disjointness", format!("star {i} meets an earlier star")));
        }
        if let Some(&l) = s.leaves.iter().find(|&&l| on_spokes.contains(l)) {
            return Err(Violation::new("star disjointness", format!("leaf {l} of star {i} lies on a spoke")));
        }
        seen = seen.union(&vs);
    }
    Ok(())
}

/// Harvests disjoint stars with `h2` to `2 h2` leaves from `g - avoid`, then
/// for every hub joins it to star centres by successive shortest paths that
/// avoid all other centres and reserved leaves. The hub with the smallest
/// total spoke length wins, then the smallest id.
pub fn build_unit(g: &Graph, avoid: &VertexSet, params: UnitParams, budget: usize) -> Built<Unit> {
    let mut budget = Budget::new(budget);
    build_unit_with(g, &avoid.mask(g.n()), params, &mut budget)
}

pub(crate) fn build_unit_with(g: &Graph, blocked: &[bool], params: UnitParams, budget: &mut Budget) -> Built<Unit> {
    let UnitParams { h1, h2, h3 } = params;
    let mut trace = Vec::new();
    let fail = |reason: String, budget: &Budget, trace: Vec<String>| Built::Failed {
        reason,
        budget_exhausted: budget.exhausted(),
        trace,
    };
    if h1 == 0 {
        return fail("a unit needs at least one spoke".into(), budget, trace);
    }
    let pool = harvest(g, blocked, h2, (2 * h2).max(h2 + 1), usize::MAX);
    trace.push(format!("pool of {} stars with at least {h2} leaves", pool.len()));
    if pool.len() < h1 {
        return fail(format!("pool exhausted: {} stars, need {h1}", pool.len()), budget, trace);
    }
    let mut best: Option<(usize, Unit)> = None;
    for hub in (0..g.n()).filter(|&v| !blocked[v]) {
        if !budget.charge(g.n()) {
            trace.push(format!("budget exhausted at hub {hub}"));
            break;
        }
        if let Some(unit) = spokes_from(g, blocked, &pool, hub, params, budget) {
            let total: usize = unit.spokes.iter().map(Path::len).sum();
            if best.as_ref().is_none_or(|(t, _)| total < *t) {
                best = Some((total, unit));
            }
        }
    }
    match best {
        Some((total, unit)) => {
            trace.push(format!("hub {} with total spoke length {total}", unit.core));
            if let Err(v) = validate_unit(g, &unit) {
                return fail(format!("internal: built unit fails validation: {v}"), budget, trace);
            }
            Built::Found { structure: unit, trace }
        }
        None => fail(format!("no hub reaches {h1} stars within length {h3}"), budget, trace),
    }
}

/// A unit with core `hub` in `g - blocked`, if the greedy spokes reach one.
pub(crate) fn unit_at(g: &Graph, blocked: &[bool], hub: usize, params: UnitParams, budget: &mut Budget) -> Option<Unit> {
    if !budget.charge(g.n() + g.m()) {
        return None;
    }
    let pool = harvest(g, blocked, params.h2, (2 * params.h2).max(params.h2 + 1), usize::MAX);
    spokes_from(g, blocked, &pool, hub, params, budget)
}

fn spokes_from(g: &Graph, blocked: &[bool], pool: &[Star], hub: usize, params: UnitParams, budget: &mut Budget) -> Option<Unit> {
    let UnitParams { h1, h2, h3 } = params;
    let n = g.n();
    let mut used = blocked.to_vec();
    let mut centre = vec![false; n];
    let mut target = vec![false; n];
    let mut star_at = vec![usize::MAX; n];
    for (i, s) in pool.iter().enumerate() {
        centre[s.center] = true;
        star_at[s.center] = i;
        if s.center != hub && s.leaves.iter().filter(|&&l| l != hub).count() >= h2 {
            target[s.center] = true;
        }
    }
    let mut spokes = Vec::new();
    let mut stars = Vec::new();
    while spokes.len() < h1 {
        if !budget.charge(n) {
            return None;
        }
        let wall: Vec<bool> = (0..n).map(|v| v != hub && (used[v] || (centre[v] && !target[v]))).collect();
        let path = g.shortest_path(&[hub], &target, &wall)?;
        if path.len() - 1 > h3 {
            return None;
        }
        let c = *path.last().unwrap();
        target[c] = false;
        let leaves: Vec<usize> =
            pool[star_at[c]].leaves.iter().copied().filter(|&l| l != hub && !used[l] && !path.contains(&l)).take(h2).collect();
        if leaves.len() < h2 {
            continue;
        }
        for &v in path.iter().chain(&leaves) {
            used[v] = true;
        }
        spokes.push(Path::unchecked(path));
        stars.push(Star { center: c, leaves });
    }
    Some(Unit { params, core: hub, spokes, stars })
}
