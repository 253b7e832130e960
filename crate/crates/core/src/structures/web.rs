//! Webs: a core joined by short arms to the cores of disjoint units.

use serde::{Deserialize, Serialize};

use super::unit::{build_unit_with, unit_at, validate_unit, Unit, UnitParams};
use super::{internally_disjoint, Budget, Built};
use crate::error::Violation;
use crate::graph::{Graph, Path, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebParams {
    /// Number of arms.
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    /// Longest arm, and longest spoke inside each unit.
    pub h3: usize,
}

impl WebParams {
    pub fn unit(&self) -> UnitParams {
        UnitParams { h1: self.h1, h2: self.h2, h3: self.h3 }
    }
}

/// Arm `i` runs from `core` to the core of `units[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Web {
    pub params: WebParams,
    pub core: usize,
    pub arms: Vec<Path>,
    pub units: Vec<Unit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebParts {
    pub exterior: VertexSet,
    pub interior: VertexSet,
    pub centre: VertexSet,
}

impl Web {
    pub fn vertices(&self) -> VertexSet {
        self.arms
            .iter()
            .flat_map(|p| p.vertices().iter().copied())
            .chain(self.units.iter().flat_map(|u| u.vertices().into_vec()))
            .chain(std::iter::once(self.core))
            .collect()
    }

    pub fn parts(&self) -> WebParts {
        let exterior: VertexSet = self.units.iter().flat_map(|u| u.exterior().into_vec()).collect();
        WebParts {
            interior: self.vertices().difference(&exterior),
            centre: self.arms.iter().flat_map(|p| p.vertices().iter().copied()).chain(std::iter::once(self.core)).collect(),
            exterior,
        }
    }

    /// The path from the core to an exterior vertex.
    pub fn path_to(&self, w: usize) -> Option<Path> {
        self.units.iter().zip(&self.arms).find_map(|(u, arm)| u.path_to(w).map(|p| arm.join(&p)))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> =
            self.arms.iter().flat_map(|p| p.vertices().windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()).collect();
        for u in &self.units {
            e.extend(u.edges());
        }
        e
    }
}

pub fn validate_web(host: &Graph, web: &Web) -> Result<(), Violation> {
    let p = web.params;
    if let Some(v) = web.vertices().iter().find(|&v| v >= host.n()) {
        return Err(Violation::new("vertex range", format!("vertex {v} is not in the host")));
    }
    if web.arms.len() != p.h0 || web.units.len() != p.h0 {
        return Err(Violation::new(
            "branch count",
            format!("{} arms and {} units, expected {}", web.arms.len(), web.units.len(), p.h0),
        ));
    }
    for (i, u) in web.units.iter().enumerate() {
        if u.params != p.unit() {
            return Err(Violation::new("unit params", format!("unit {i} has parameters {:?}", u.params)));
        }
        validate_unit(host, u).map_err(|v| Violation::new("unit", format!("unit {i}: {}: {}", v.clause, v.detail)))?;
    }
    for (i, a) in web.arms.iter().enumerate() {
        if !host.is_path(a.vertices()) || a.start() != web.core || a.end() != web.units[i].core {
            return Err(Violation::new("arm path", format!("arm {i} is not a path from the core to unit {i}")));
        }
        if a.len() == 0 || a.len() > p.h3 {
            return Err(Violation::new("arm length", format!("arm {i} has length {}, allowed 1..={}", a.len(), p.h3)));
        }
    }
    let arms: Vec<&[usize]> = web.arms.iter().map(|a| a.vertices()).collect();
    if let Some((i, j, v)) = internally_disjoint(&arms) {
        return Err(Violation::new("arms internally disjoint", format!("arms {i} and {j} share {v}")));
    }
    let on_arms: VertexSet = arms.iter().flat_map(|a| a.iter().copied()).collect();
    let mut seen = VertexSet::new();
    for (i, u) in web.units.iter().enumerate() {
        let body = u.vertices();
        if !body.is_disjoint(&seen) {
            return Err(Violation::new("units disjoint", format!("unit {i} meets an earlier unit")));
        }
        if let Some(v) = body.iter().find(|&v| v != u.core && on_arms.contains(v)) {
            return Err(Violation::new("units off arms", format!("vertex {v} of unit {i} lies on an arm")));
        }
        seen = seen.union(&body);
    }
    let parts = web.parts();
    if !parts.exterior.is_disjoint(&parts.interior)
        || parts.exterior.union(&parts.interior) != web.vertices()
        || !parts.centre.difference(&parts.interior).is_empty()
    {
        return Err(Violation::new("parts", "exterior, interior and centre do not split the web"));
    }
    Ok(())
}

/// Harvests disjoint units from `g - avoid`, then for every candidate core
/// outside them joins it to unit cores by successive shortest paths that
/// avoid every unit body. The core with the smallest total arm length wins,
/// then the smallest id.
pub fn build_web(g: &Graph, avoid: &VertexSet, params: WebParams, budget: usize) -> Built<Web> {
    let mut budget = Budget::new(budget);
    let mut trace = Vec::new();
    let fail = |reason: String, budget: &Budget, trace: Vec<String>| Built::Failed {
        reason,
        budget_exhausted: budget.exhausted(),
        trace,
    };
    if params.h0 == 0 {
        return fail("a web needs at least one arm".into(), &budget, trace);
    }
    let mut blocked = avoid.mask(g.n());
    let mut pool = Vec::new();
    while pool.len() < 2 * params.h0 + 1 {
        match build_unit_with(g, &blocked, params.unit(), &mut budget) {
            Built::Found { structure, .. } => {
                trace.push(format!("unit at {}", structure.core));
                for v in structure.vertices().iter() {
                    blocked[v] = true;
                }
                pool.push(structure);
            }
            Built::Failed { reason, .. } => {
                trace.push(format!("unit harvest stopped: {reason}"));
                break;
            }
        }
    }
    if pool.len() < params.h0 {
        return fail(format!("pool exhausted: {} units, need {}", pool.len(), params.h0), &budget, trace);
    }
    // Fewer units leave more room for a core and its arms.
    for size in [pool.len(), params.h0] {
        let units = &pool[..size];
        let mut best: Option<(usize, Web)> = None;
        for core in (0..g.n()).filter(|&v| !avoid.contains(v) && !units.iter().any(|u| u.vertices().contains(v))) {
            if !budget.charge(g.n()) {
                trace.push(format!("budget exhausted at core {core}"));
                break;
            }
            if let Some(web) = arms_from(g, avoid, units, core, params, &mut budget) {
                let total: usize = web.arms.iter().map(Path::len).sum();
                if best.as_ref().is_none_or(|(t, _)| total < *t) {
                    best = Some((total, web));
                }
            }
        }
        if let Some((total, web)) = best {
            trace.push(format!("core {} with total arm length {total}", web.core));
            if let Err(v) = validate_web(g, &web) {
                return fail(format!("internal: built web fails validation: {v}"), &budget, trace);
            }
            return Built::Found { structure: web, trace };
        }
        trace.push(format!("no core reaches {} of {size} units within length {}", params.h0, params.h3));
        if budget.exhausted() {
            break;
        }
    }
    for core in (0..g.n()).filter(|&v| !avoid.contains(v)) {
        if budget.exhausted() {
            break;
        }
        if let Some(web) = units_around(g, avoid, core, params, &mut budget) {
            trace.push(format!("core {core} found by laying arms first"));
            if let Err(v) = validate_web(g, &web) {
                return fail(format!("internal: built web fails validation: {v}"), &budget, trace);
            }
            return Built::Found { structure: web, trace };
        }
    }
    fail(format!("no core reaches {} units", params.h0), &budget, trace)
}

/// Lays an arm from `core` to each nearby vertex in turn, nearest first, and
/// keeps it when a unit can be built there off every arm and earlier unit.
fn units_around(g: &Graph, avoid: &VertexSet, core: usize, params: WebParams, budget: &mut Budget) -> Option<Web> {
    let n = g.n();
    let mut blocked = avoid.mask(n);
    blocked[core] = true;
    let mut near = vec![false; n];
    let dist = g.bfs(&[core], &avoid.mask(n), params.h3);
    let mut hubs: Vec<usize> = (0..n).filter(|&v| v != core && dist[v] <= params.h3).collect();
    hubs.sort_by_key(|&v| (dist[v], v));
    let (mut arms, mut units) = (Vec::new(), Vec::new());
    for hub in hubs {
        if units.len() == params.h0 {
            break;
        }
        if blocked[hub] || !budget.charge(n) {
            continue;
        }
        near.iter_mut().for_each(|x| *x = false);
        near[hub] = true;
        let wall: Vec<bool> = (0..n).map(|v| v != core && blocked[v]).collect();
        let Some(path) = g.shortest_path(&[core], &near, &wall) else { continue };
        if path.len() - 1 > params.h3 {
            continue;
        }
        let mut trial = blocked.clone();
        for &v in &path[..path.len() - 1] {
            trial[v] = true;
        }
        if let Some(unit) = unit_at(g, &trial, hub, params.unit(), budget) {
            for v in unit.vertices().iter() {
                trial[v] = true;
            }
            blocked = trial;
            arms.push(Path::unchecked(path));
            units.push(unit);
        }
        if budget.exhausted() {
            return None;
        }
    }
    (units.len() == params.h0).then_some(Web { params, core, arms, units })
}

fn arms_from(g: &Graph, avoid: &VertexSet, units: &[Unit], core: usize, params: WebParams, budget: &mut Budget) -> Option<Web> {
    let n = g.n();
    let mut wall = avoid.mask(n);
    let mut target = vec![false; n];
    let mut unit_at = vec![usize::MAX; n];
    for (i, u) in units.iter().enumerate() {
        for v in u.vertices().iter() {
            wall[v] = true;
        }
        target[u.core] = true;
        unit_at[u.core] = i;
    }
    let mut arms = Vec::new();
    let mut chosen = Vec::new();
    while arms.len() < params.h0 {
        if !budget.charge(n) {
            return None;
        }
        let open: Vec<bool> = (0..n).map(|v| v != core && wall[v] && !target[v]).collect();
        let path = g.shortest_path(&[core], &target, &open)?;
        if path.len() - 1 > params.h3 {
            return None;
        }
        let end = *path.last().unwrap();
        target[end] = false;
        for &v in &path {
            wall[v] = true;
        }
        chosen.push(units[unit_at[end]].clone());
        arms.push(Path::unchecked(path));
    }
    Some(Web { params, core, arms, units: chosen })
}
