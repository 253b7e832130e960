//! Exact subdivision and minor search with explicit budgets, plus validators.

use serde::{Deserialize, Serialize};

use crate::error::Violation;
use crate::graph::{Graph, Path, VertexSet};

/// Result of a budgeted exact search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "witness", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted: no witness exists.
    Absent,
    /// The node budget ran out first.
    Timeout,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::Absent => "absent",
            SearchOutcome::Timeout => "timeout",
        }
    }
}

/// Budget for the exact searches, counted in search-tree nodes.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SearchLimits {
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: 50_000_000 }
    }
}

/// Host path realising one pattern edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPath {
    pub edge: (usize, usize),
    pub path: Path,
}

/// Anchors for the pattern vertices and one host path per pattern edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionMap {
    pub anchors: Vec<usize>,
    pub paths: Vec<BranchPath>,
}

impl SubdivisionMap {
    /// `paths[i]` realises the `i`-th edge of `h.edges()`.
    pub fn new(h: &Graph, anchors: Vec<usize>, paths: Vec<Path>) -> Self {
        let paths = h.edges().into_iter().zip(paths).map(|(edge, path)| BranchPath { edge, path }).collect();
        SubdivisionMap { anchors, paths }
    }

    /// Every host vertex used by the subdivision.
    pub fn vertices(&self) -> VertexSet {
        self.anchors
            .iter()
            .copied()
            .chain(self.paths.iter().flat_map(|p| p.path.vertices().iter().copied()))
            .collect()
    }
}

/// Branch sets for the pattern vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorMap {
    pub branch_sets: Vec<VertexSet>,
}

pub fn validate_subdivision(g: &Graph, h: &Graph, map: &SubdivisionMap) -> Result<(), Violation> {
    if map.anchors.len() != h.n() {
        return Err(Violation::new("anchor count", format!("{} anchors for {} vertices", map.anchors.len(), h.n())));
    }
    let mut is_anchor = vec![false; g.n()];
    for &a in &map.anchors {
        if a >= g.n() {
            return Err(Violation::new("anchor range", format!("anchor {a} outside host")));
        }
        if is_anchor[a] {
            return Err(Violation::new("anchors distinct", format!("vertex {a} used twice")));
        }
        is_anchor[a] = true;
    }
    let mut expected = h.edges();
    let mut got: Vec<(usize, usize)> =
        map.paths.iter().map(|p| (p.edge.0.min(p.edge.1), p.edge.0.max(p.edge.1))).collect();
    got.sort_unstable();
    expected.sort_unstable();
    if got != expected {
        return Err(Violation::new("one path per edge", "branch paths do not match the pattern edges"));
    }
    let mut interior_owner = vec![usize::MAX; g.n()];
    for (i, bp) in map.paths.iter().enumerate() {
        let p = bp.path.vertices();
        if !g.is_path(p) || p.len() < 2 {
            return Err(Violation::new("path in host", format!("branch path {:?} is not a host path", bp.edge)));
        }
        let (a, b) = (map.anchors[bp.edge.0], map.anchors[bp.edge.1]);
        let ends = (bp.path.start(), bp.path.end());
        if ends != (a, b) && ends != (b, a) {
            return Err(Violation::new("path endpoints", format!("edge {:?} does not join its anchors", bp.edge)));
        }
        for &v in bp.path.interior() {
            if is_anchor[v] {
                return Err(Violation::new("anchor interior", format!("anchor {v} inside path {:?}", bp.edge)));
            }
            if interior_owner[v] != usize::MAX {
                return Err(Violation::new(
                    "internally disjoint",
                    format!("vertex {v} shared by paths {:?} and {:?}", map.paths[interior_owner[v]].edge, bp.edge),
                ));
            }
            interior_owner[v] = i;
        }
    }
    Ok(())
}

pub fn validate_minor(g: &Graph, h: &Graph, map: &MinorMap) -> Result<(), Violation> {
    if map.branch_sets.len() != h.n() {
        return Err(Violation::new("branch set count", format!("{} sets for {} vertices", map.branch_sets.len(), h.n())));
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, s) in map.branch_sets.iter().enumerate() {
        if s.is_empty() {
            return Err(Violation::new("non-empty", format!("branch set {i} is empty")));
        }
        for v in s.iter() {
            if v >= g.n() {
                return Err(Violation::new("range", format!("vertex {v} outside host")));
            }
            if owner[v] != usize::MAX {
                return Err(Violation::new("disjoint", format!("vertex {v} in sets {} and {i}", owner[v])));
            }
            owner[v] = i;
        }
        if !g.induced_subgraph(s).graph.is_connected() {
            return Err(Violation::new("connected", format!("branch set {i} is disconnected")));
        }
    }
    for (a, b) in h.edges() {
        let joined = map.branch_sets[a].iter().any(|u| g.neighbors(u).iter().any(|&w| owner[w] == b));
        if !joined {
            return Err(Violation::new("edge realised", format!("no host edge between sets {a} and {b}")));
        }
    }
    Ok(())
}

enum Flow {
    Found,
    Exhausted,
    Timeout,
}

struct SubSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    cands: Vec<usize>,
    anchor: Vec<usize>,
    used: Vec<bool>,
    paths: Vec<Option<Vec<usize>>>,
    h_edge_id: Vec<Vec<(usize, usize)>>,
    path_adj: Vec<u32>,
    nodes: u64,
    budget: u64,
}

const NONE: usize = usize::MAX;

impl<'a> SubSearch<'a> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > self.budget
    }

    fn place(&mut self, i: usize) -> Flow {
        if i == self.order.len() {
            return Flow::Found;
        }
        let hv = self.order[i];
        let need = self.h.degree(hv);
        let pending: Vec<(usize, usize)> =
            self.h_edge_id[hv].iter().copied().filter(|&(hw, _)| self.anchor[hw] != NONE).collect();
        let free = self.used.iter().filter(|&&u| !u).count();
        if free < self.order.len() - i {
            return Flow::Exhausted;
        }
        for ci in 0..self.cands.len() {
            let gv = self.cands[ci];
            if self.used[gv] || self.g.degree(gv) < need {
                continue;
            }
            if self.tick() {
                return Flow::Timeout;
            }
            self.anchor[hv] = gv;
            self.used[gv] = true;
            match self.route(i, &pending, 0) {
                Flow::Exhausted => {}
                other => return other,
            }
            self.used[gv] = false;
            self.anchor[hv] = NONE;
        }
        Flow::Exhausted
    }

    fn feasible(&self) -> bool {
        for hv in 0..self.h.n() {
            let a = self.anchor[hv];
            if a == NONE {
                continue;
            }
            let mut open = 0;
            let mut direct = 0;
            for &(hw, e) in &self.h_edge_id[hv] {
                if self.paths[e].is_some() {
                    continue;
                }
                open += 1;
                if self.anchor[hw] != NONE && self.g.has_edge(a, self.anchor[hw]) {
                    direct += 1;
                }
            }
            if open == 0 {
                continue;
            }
            let free = self.g.neighbors(a).iter().filter(|&&w| !self.used[w]).count();
            if free + direct < open {
                return false;
            }
        }
        true
    }

    fn route(&mut self, i: usize, pending: &[(usize, usize)], j: usize) -> Flow {
        if !self.feasible() {
            return Flow::Exhausted;
        }
        if j == pending.len() {
            return self.place(i + 1);
        }
        let (hw, e) = pending[j];
        let a = self.anchor[self.order[i]];
        let b = self.anchor[hw];
        if self.g.has_edge(a, b) {
            self.paths[e] = Some(vec![a, b]);
            let r = self.route(i, pending, j + 1);
            if matches!(r, Flow::Exhausted) {
                self.paths[e] = None;
            }
            return r;
        }
        let mut path = vec![a];
        self.mark(a, 1);
        let r = self.extend(i, pending, j, e, b, &mut path);
        self.mark(a, -1);
        r
    }

    fn mark(&mut self, v: usize, delta: i32) {
        for k in 0..self.g.neighbors(v).len() {
            let w = self.g.neighbors(v)[k];
            self.path_adj[w] = (self.path_adj[w] as i32 + delta) as u32;
        }
    }

    /// Depth-first enumeration of chordless paths to `b`; shortcuts of a
    /// path leave strictly more room, so chordless paths suffice.
    fn extend(&mut self, i: usize, pending: &[(usize, usize)], j: usize, e: usize, b: usize, path: &mut Vec<usize>) -> Flow {
        if self.tick() {
            return Flow::Timeout;
        }
        let cur = *path.last().unwrap();
        if path.len() > 1 && self.g.has_edge(cur, b) {
            path.push(b);
            self.paths[e] = Some(path.clone());
            for &v in &path[1..path.len() - 1] {
                self.used[v] = true;
            }
            let marked: Vec<usize> = path[..path.len() - 1].to_vec();
            marked.iter().for_each(|&v| self.mark(v, -1));
            let r = self.route(i, pending, j + 1);
            marked.iter().for_each(|&v| self.mark(v, 1));
            if matches!(r, Flow::Exhausted) {
                for &v in &path[1..path.len() - 1] {
                    self.used[v] = false;
                }
                self.paths[e] = None;
            }
            path.pop();
            return r;
        }
        let nbrs = self.g.neighbors(cur).to_vec();
        for w in nbrs {
            if self.used[w] || self.path_adj[w] != 1 {
                continue;
            }
            path.push(w);
            self.mark(w, 1);
            let r = self.extend(i, pending, j, e, b, path);
            self.mark(w, -1);
            path.pop();
            if !matches!(r, Flow::Exhausted) {
                return r;
            }
        }
        Flow::Exhausted
    }
}

/// Searches for a subdivision of `h` in `g`. `Absent` is a proof of absence.
pub fn find_subdivision(g: &Graph, h: &Graph, limits: SearchLimits) -> SearchOutcome<SubdivisionMap> {
    if h.n() > g.n() || h.m() > g.m() {
        return SearchOutcome::Absent;
    }
    // Pattern order: high degree first, preferring neighbours of placed vertices.
    let mut order = Vec::new();
    let mut placed = vec![false; h.n()];
    while order.len() < h.n() {
        let next = (0..h.n())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (linked, h.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut cands: Vec<usize> = (0..g.n()).collect();
    cands.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let edges = h.edges();
    let mut h_edge_id = vec![Vec::new(); h.n()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        h_edge_id[u].push((v, e));
        h_edge_id[v].push((u, e));
    }
    let mut s = SubSearch {
        g,
        h,
        order,
        cands,
        anchor: vec![NONE; h.n()],
        used: vec![false; g.n()],
        paths: vec![None; edges.len()],
        h_edge_id,
        path_adj: vec![0; g.n()],
        nodes: 0,
        budget: limits.node_budget,
    };
    match s.place(0) {
        Flow::Found => {
            let paths = s.paths.into_iter().map(|p| Path::unchecked(p.unwrap())).collect();
            SearchOutcome::Found(SubdivisionMap::new(h, s.anchor, paths))
        }
        Flow::Exhausted => SearchOutcome::Absent,
        Flow::Timeout => SearchOutcome::Timeout,
    }
}

/// Groups vertices with equal open or equal closed neighbourhoods. Permuting
/// a class is an automorphism of the host.
fn twin_classes(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut class = vec![NONE; n];
    let mut next = 0;
    for v in 0..n {
        if class[v] != NONE {
            continue;
        }
        class[v] = next;
        let closed_v = |x: usize| {
            let mut c = g.neighbors(x).to_vec();
            c.push(x);
            c.sort_unstable();
            c
        };
        let mut false_twins = Vec::new();
        let mut true_twins = Vec::new();
        for w in v + 1..n {
            if class[w] != NONE {
                continue;
            }
            if g.neighbors(v) == g.neighbors(w) {
                false_twins.push(w);
            } else if g.has_edge(v, w) && closed_v(v) == closed_v(w) {
                true_twins.push(w);
            }
        }
        let group = if false_twins.is_empty() { true_twins } else { false_twins };
        for w in group {
            class[w] = next;
        }
        next += 1;
    }
    class
}

struct MinorSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    taken: Vec<usize>,
    owner: Vec<usize>,
    sets: Vec<Vec<usize>>,
    free: usize,
    nodes: u64,
    budget: u64,
}

impl<'a> MinorSearch<'a> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > self.budget
    }

    fn first_free(&self, v: usize) -> bool {
        let c = self.class_of[v];
        self.members[c].get(self.taken[c]) == Some(&v)
    }

    fn take(&mut self, hv: usize, v: usize) {
        self.taken[self.class_of[v]] += 1;
        self.owner[v] = hv;
        self.sets[hv].push(v);
        self.free -= 1;
    }

    fn release(&mut self, hv: usize, v: usize) {
        self.taken[self.class_of[v]] -= 1;
        self.owner[v] = NONE;
        self.sets[hv].pop();
        self.free += 1;
    }

    fn place(&mut self, i: usize) -> Flow {
        if i == self.order.len() {
            return Flow::Found;
        }
        if self.free < self.order.len() - i {
            return Flow::Exhausted;
        }
        let hv = self.order[i];
        for r in 0..self.g.n() {
            if self.owner[r] != NONE || !self.first_free(r) {
                continue;
            }
            if self.tick() {
                return Flow::Timeout;
            }
            self.take(hv, r);
            let frontier = self.g.neighbors(r).iter().copied().filter(|&w| w > r && self.owner[w] == NONE).collect();
            let res = self.grow(i, r, frontier, Vec::new());
            if !matches!(res, Flow::Exhausted) {
                return res;
            }
            self.release(hv, r);
        }
        Flow::Exhausted
    }

    fn touches(&self, hv: usize, hw: usize) -> bool {
        self.sets[hv].iter().any(|&u| self.g.neighbors(u).iter().any(|&w| self.owner[w] == hw))
    }

    fn viable(&self, i: usize) -> bool {
        let hv = self.order[i];
        let placed = |x: usize| !self.sets[x].is_empty();
        if !self.h.neighbors(hv).iter().all(|&hw| !placed(hw) || self.touches(hv, hw)) {
            return false;
        }
        // Every placed vertex still waiting for a neighbour needs free room next to it.
        self.order[..=i].iter().all(|&x| {
            let waiting = self.h.neighbors(x).iter().any(|&y| !placed(y));
            !waiting || self.sets[x].iter().any(|&u| self.g.neighbors(u).iter().any(|&w| self.owner[w] == NONE))
        })
    }

    /// Enumerates connected sets rooted at their minimum vertex, each once,
    /// taking twins in class order.
    fn grow(&mut self, i: usize, root: usize, frontier: Vec<usize>, mut excluded: Vec<usize>) -> Flow {
        if self.viable(i) {
            let r = self.place(i + 1);
            if !matches!(r, Flow::Exhausted) {
                return r;
            }
        }
        let hv = self.order[i];
        let later = self.order.len() - i - 1;
        for idx in 0..frontier.len() {
            let w = frontier[idx];
            if self.free <= later {
                break;
            }
            if excluded.contains(&w) || !self.first_free(w) {
                excluded.push(w);
                continue;
            }
            if self.tick() {
                return Flow::Timeout;
            }
            self.take(hv, w);
            let mut next: Vec<usize> = frontier[idx + 1..].to_vec();
            for &x in self.g.neighbors(w) {
                if x > root && self.owner[x] == NONE && !next.contains(&x) && !excluded.contains(&x) {
                    next.push(x);
                }
            }
            let r = self.grow(i, root, next, excluded.clone());
            if !matches!(r, Flow::Exhausted) {
                return r;
            }
            self.release(hv, w);
            excluded.push(w);
        }
        Flow::Exhausted
    }
}

/// Searches for `h` as a minor of `g`, growing one connected branch set per
/// pattern vertex. Twin host vertices are used in a fixed order, which is
/// safe because permuting twins is an automorphism. `Absent` is a proof of
/// absence.
pub fn find_minor(g: &Graph, h: &Graph, limits: SearchLimits) -> SearchOutcome<MinorMap> {
    let k = h.n();
    if k == 0 {
        return SearchOutcome::Found(MinorMap { branch_sets: Vec::new() });
    }
    if k > g.n() || h.m() > g.m() {
        return SearchOutcome::Absent;
    }
    let mut order = Vec::new();
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (linked, h.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let class_of = twin_classes(g);
    let classes = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut members = vec![Vec::new(); classes];
    for v in 0..g.n() {
        members[class_of[v]].push(v);
    }
    let mut s = MinorSearch {
        g,
        h,
        order,
        class_of,
        members,
        taken: vec![0; classes],
        owner: vec![NONE; g.n()],
        sets: vec![Vec::new(); k],
        free: g.n(),
        nodes: 0,
        budget: limits.node_budget,
    };
    match s.place(0) {
        Flow::Found => SearchOutcome::Found(MinorMap {
            branch_sets: s.sets.iter().map(|v| VertexSet::from_iter(v.iter().copied())).collect(),
        }),
        Flow::Exhausted => SearchOutcome::Absent,
        Flow::Timeout => SearchOutcome::Timeout,
    }
}

/// Series-parallel reduction: a graph has no `K_4` minor iff repeatedly
/// deleting vertices of degree at most 1 and suppressing degree-2 vertices
/// empties it.
pub fn is_k4_minor_free(g: &Graph) -> bool {
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        alive[v] = false;
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if nbrs.len() == 2 {
            let (a, b) = (nbrs[0], nbrs[1]);
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        stack.extend(nbrs);
    }
    alive.iter().all(|&a| !a)
}
