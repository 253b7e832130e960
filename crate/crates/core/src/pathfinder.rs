//! Short connections avoiding a set, consecutive shortest path systems and
//! ball growth after deleting them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::expander::{ExpanderCertificate, ExpanderParams};
use crate::graph::{Graph, Path, VertexSet};

/// Length bound `m = (2/eps1) ln^3(15n/t)` for connections in an expander.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionBudget {
    pub n: usize,
    pub params: ExpanderParams,
    pub m: f64,
}

impl ConnectionBudget {
    pub fn new(n: usize, params: ExpanderParams) -> Result<Self> {
        let m = 2.0 / params.eps1 * (15.0 * n as f64 / params.t).ln().powi(3);
        if !(m > 0.0) {
            return Err(Error::Invalid(format!("connection budget {m} is not positive for n={n}, t={}", params.t)));
        }
        Ok(ConnectionBudget { n, params, m })
    }
}

/// Shortest path from `x1` to `x2` in `g - w`; ties go to smallest ids.
pub fn connect_avoiding(g: &Graph, x1: &VertexSet, x2: &VertexSet, w: &VertexSet) -> Option<Path> {
    let blocked = w.mask(g.n());
    let to = x2.mask(g.n());
    g.shortest_path(x1.as_slice(), &to, &blocked).map(Path::unchecked)
}

/// [`connect_avoiding`] on a certified expander. When the size conditions
/// of the short-path bound hold, a path longer than the budget, or a
/// missing path, is an error.
pub fn connect_certified(
    g: &Graph,
    cert: &ExpanderCertificate,
    x1: &VertexSet,
    x2: &VertexSet,
    w: &VertexSet,
) -> Result<Option<Path>> {
    if !x1.is_disjoint(w) || !x2.is_disjoint(w) {
        return Err(Error::Precondition("endpoint sets must avoid w".into()));
    }
    let path = connect_avoiding(g, x1, x2, w);
    let p = &cert.params;
    let x = x1.len().min(x2.len()) as f64;
    let applies = cert.passed && cert.is_exhaustive() && cert.n == g.n() && x >= p.t / 2.0 && (w.len() as f64) <= p.rho(x) * x / 4.0;
    if applies {
        let budget = ConnectionBudget::new(g.n(), *p)?;
        match &path {
            None => return Err(Error::Internal(format!("no path between sets of size {x} in a certified expander"))),
            Some(q) if q.len() as f64 > budget.m => {
                return Err(Error::Internal(format!("path of length {} exceeds the bound {:.3}", q.len(), budget.m)))
            }
            _ => {}
        }
    }
    Ok(path)
}

/// Paths built one at a time from `source` inside `within`, avoiding
/// `avoided` and every earlier path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub source: VertexSet,
    pub paths: Vec<Path>,
    pub within: VertexSet,
    pub avoided: VertexSet,
    pub requested: usize,
}

impl PathSystem {
    pub fn empty(source: VertexSet, within: VertexSet, avoided: VertexSet) -> Self {
        PathSystem { source, paths: Vec::new(), within, avoided, requested: 0 }
    }

    pub fn stopped_early(&self) -> bool {
        self.paths.len() < self.requested
    }

    /// Vertices used by the paths.
    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect()
    }

    /// Checks that path `i` is a shortest path from `source` to its end in
    /// `within` minus the earlier paths (sources stay usable).
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), Violation> {
        let n = g.n();
        let mut blocked = vec![true; n];
        for v in self.within.iter() {
            blocked[v] = false;
        }
        for v in self.avoided.iter() {
            blocked[v] = true;
        }
        for (i, p) in self.paths.iter().enumerate() {
            if !g.is_path(p.vertices()) {
                return Err(Violation::new("path in host", format!("path {i} is not a path of the graph")));
            }
            if !self.source.contains(p.start()) || self.source.contains(p.end()) {
                return Err(Violation::new("ends", format!("path {i} must run from the source to a new vertex")));
            }
            if let Some(&v) = p.vertices().iter().find(|&&v| blocked[v]) {
                return Err(Violation::new("avoidance", format!("path {i} uses unavailable vertex {v}")));
            }
            let dist = g.bfs(self.source.as_slice(), &blocked, usize::MAX);
            if dist[p.end()] != p.len() {
                return Err(Violation::new(
                    "shortest",
                    format!("path {i} has length {} but its end lies at distance {}", p.len(), dist[p.end()]),
                ));
            }
            for &v in p.vertices() {
                if !self.source.contains(v) {
                    blocked[v] = true;
                }
            }
        }
        Ok(())
    }
}

/// Builds up to `q` consecutive shortest paths from `x` within the ball of
/// radius `r` around `x` in `g - y`. Each path ends at a vertex of maximum
/// distance in what remains (smallest id on ties), which keeps the paths
/// long and the search deterministic.
pub fn consecutive_shortest_paths(g: &Graph, x: &VertexSet, r: usize, y: &VertexSet, q: usize) -> Result<PathSystem> {
    if !x.is_disjoint(y) {
        return Err(Error::Precondition("source must avoid y".into()));
    }
    let n = g.n();
    let within = g.ball(x, r, y);
    let mut ps = PathSystem::empty(x.clone(), within.clone(), y.clone());
    ps.requested = q;
    let mut blocked = vec![true; n];
    for v in within.iter() {
        blocked[v] = false;
    }
    for _ in 0..q {
        let dist = g.bfs(x.as_slice(), &blocked, usize::MAX);
        let target = (0..n)
            .filter(|&v| dist[v] != usize::MAX && dist[v] > 0)
            .max_by(|&a, &b| dist[a].cmp(&dist[b]).then(b.cmp(&a)));
        let Some(target) = target else { break };
        let mut to = vec![false; n];
        to[target] = true;
        let path = g
            .shortest_path(x.as_slice(), &to, &blocked)
            .ok_or_else(|| Error::Internal("reachable target without a path".into()))?;
        for &v in &path {
            if !x.contains(v) {
                blocked[v] = true;
            }
        }
        ps.paths.push(Path::unchecked(path));
    }
    Ok(ps)
}

/// Ball sizes around `x` in `g - (P \ x) - y`, with flagged radii where the
/// growth falls below `exp(i^{1/4})` while the growth conditions hold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub sizes: Vec<usize>,
    pub preconditions_hold: bool,
    pub anomalies: Vec<usize>,
}

fn path_blocking(g: &Graph, x: &VertexSet, y: &VertexSet, ps: &PathSystem) -> Vec<bool> {
    let mut blocked = y.mask(g.n());
    for v in ps.vertices().iter() {
        if !x.contains(v) {
            blocked[v] = true;
        }
    }
    blocked
}

pub fn growth_profile(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    ps: &PathSystem,
    r: usize,
    cert: Option<&ExpanderCertificate>,
) -> GrowthProfile {
    let blocked = path_blocking(g, x, y, ps);
    let dist = g.bfs(x.as_slice(), &blocked, r);
    let mut sizes = vec![0; r + 1];
    for &d in &dist {
        if d <= r {
            sizes[d] += 1;
        }
    }
    for i in 1..=r {
        sizes[i] += sizes[i - 1];
    }
    let xs = x.len() as f64;
    let preconditions_hold = cert.is_some_and(|c| {
        let p = &c.params;
        c.passed
            && c.is_exhaustive()
            && c.n == g.n()
            && xs >= p.t
            && (y.len() as f64) <= p.rho(xs) * xs / 4.0
            && (ps.paths.len() as f64) < xs / xs.ln().powi(8)
            && r as f64 <= (g.n() as f64).ln()
    });
    let anomalies = if preconditions_hold {
        (1..=r).filter(|&i| (sizes[i] as f64) < (i as f64).powf(0.25).exp()).collect()
    } else {
        Vec::new()
    };
    GrowthProfile { sizes, preconditions_hold, anomalies }
}

/// Counts `|V(P_j) ∩ N_{g-y}(Z_i)|` with `Z_i` the radius-`i` ball around `x`
/// in `g - (P \ x) - y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    /// `counts[i][j]`.
    pub counts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("path {j} meets the boundary of the radius-{i} ball in {count} vertices, more than {bound}")]
pub struct IntersectionViolation {
    pub i: usize,
    pub j: usize,
    pub count: usize,
    pub bound: usize,
    pub report: IntersectionReport,
}

pub fn check_path_intersection_bound(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    ps: &PathSystem,
    r: usize,
) -> std::result::Result<IntersectionReport, IntersectionViolation> {
    let n = g.n();
    let blocked = path_blocking(g, x, y, ps);
    let dist = g.bfs(x.as_slice(), &blocked, r);
    let in_y = y.mask(n);
    let mut counts = Vec::with_capacity(r + 1);
    let mut first = None;
    for i in 0..=r {
        let z: Vec<bool> = (0..n).map(|v| dist[v] <= i).collect();
        let boundary: Vec<bool> =
            (0..n).map(|v| !z[v] && !in_y[v] && g.neighbors(v).iter().any(|&u| z[u])).collect();
        let row: Vec<usize> =
            ps.paths.iter().map(|p| p.vertices().iter().filter(|&&v| boundary[v]).count()).collect();
        if first.is_none() {
            if let Some(j) = row.iter().position(|&c| c > i + 2) {
                first = Some((i, j, row[j]));
            }
        }
        counts.push(row);
    }
    let report = IntersectionReport { counts };
    match first {
        Some((i, j, count)) => Err(IntersectionViolation { i, j, count, bound: i + 2, report }),
        None => Ok(report),
    }
}
