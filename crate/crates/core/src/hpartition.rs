//! Bandwidth orderings, separators, and balanced homomorphisms of a
//! bipartite pattern onto an odd cycle or a sun.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::graph::{Graph, VertexSet};
use crate::structures::sun::{validate_sun, Sun};

pub const BANDWIDTH_EXACT_CAP: usize = 12;
pub const SEPARABLE_EXACT_CAP: usize = 14;
pub const DEFAULT_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandwidthOrder {
    pub order: Vec<usize>,
    pub b: usize,
    pub exact: bool,
}

impl BandwidthOrder {
    /// Position of each vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Largest `|pos(u) - pos(v)|` over the edges.
pub fn bandwidth_of(h: &Graph, order: &[usize]) -> usize {
    let mut pos = vec![0; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    h.edges().into_iter().map(|(u, v)| pos[u].abs_diff(pos[v])).max().unwrap_or(0)
}

/// Exact by branch and bound for `|h| <= 12`, Cuthill–McKee above.
pub fn bandwidth_order(h: &Graph) -> BandwidthOrder {
    let order = cuthill_mckee(h);
    let b = bandwidth_of(h, &order);
    if h.n() > BANDWIDTH_EXACT_CAP {
        return BandwidthOrder { order, b, exact: false };
    }
    let lower = if h.m() == 0 { 0 } else { h.max_degree().div_ceil(2).max(1) };
    for k in lower..b {
        if let Some(o) = order_within(h, k) {
            return BandwidthOrder { b: bandwidth_of(h, &o), order: o, exact: true };
        }
    }
    BandwidthOrder { order, b, exact: true }
}

/// An order of bandwidth at most `k`, if one exists.
fn order_within(h: &Graph, k: usize) -> Option<Vec<usize>> {
    struct Search<'a> {
        h: &'a Graph,
        k: usize,
        pos: Vec<usize>,
        order: Vec<usize>,
        failed: HashSet<(u32, Vec<usize>)>,
    }
    impl Search<'_> {
        fn key(&self) -> (u32, Vec<usize>) {
            let mask = self.order.iter().fold(0u32, |m, &v| m | 1 << v);
            let start = self.order.len().saturating_sub(self.k);
            (mask, self.order[start..].to_vec())
        }

        fn go(&mut self) -> bool {
            let n = self.h.n();
            let p = self.order.len();
            if p == n {
                return true;
            }
            // Every unplaced vertex with a placed neighbour has a deadline.
            let mut deadlines: Vec<usize> = Vec::new();
            for v in 0..n {
                if self.pos[v] == usize::MAX {
                    if let Some(q) = self.h.neighbors(v).iter().filter(|&&w| self.pos[w] != usize::MAX).map(|&w| self.pos[w]).min() {
                        let d = q + self.k;
                        if d < p {
                            return false;
                        }
                        deadlines.push(d);
                    }
                }
            }
            deadlines.sort_unstable();
            for (i, &d) in deadlines.iter().enumerate() {
                if i + 1 > d + 1 - p {
                    return false;
                }
            }
            let key = self.key();
            if self.failed.contains(&key) {
                return false;
            }
            let urgent = deadlines.first().copied();
            for v in 0..n {
                if self.pos[v] != usize::MAX {
                    continue;
                }
                let ok = self.h.neighbors(v).iter().all(|&w| self.pos[w] == usize::MAX || p - self.pos[w] <= self.k);
                if !ok {
                    continue;
                }
                // A vertex due now must go first.
                if urgent == Some(p) {
                    let due = self.h.neighbors(v).iter().filter(|&&w| self.pos[w] != usize::MAX).map(|&w| self.pos[w]).min();
                    if due.map(|q| q + self.k) != Some(p) {
                        continue;
                    }
                }
                self.pos[v] = p;
                self.order.push(v);
                if self.go() {
                    return true;
                }
                self.order.pop();
                self.pos[v] = usize::MAX;
            }
            self.failed.insert(key);
            false
        }
    }
    let mut s = Search { h, k, pos: vec![usize::MAX; h.n()], order: Vec::new(), failed: HashSet::new() };
    s.go().then_some(s.order)
}

/// Breadth-first order from a pseudo-peripheral vertex of each component,
/// visiting neighbours by increasing degree. Small graphs try every start.
fn cuthill_mckee(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut order = Vec::with_capacity(n);
    for comp in h.components() {
        let starts: Vec<usize> = if comp.len() <= 64 { comp.clone() } else { vec![pseudo_peripheral(h, comp[0])] };
        let mut best: Option<(usize, Vec<usize>)> = None;
        for s in starts {
            let o = bfs_order(h, s);
            let b = bandwidth_of_partial(h, &o);
            if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
                best = Some((b, o));
            }
        }
        order.extend(best.unwrap().1);
    }
    order
}

fn bandwidth_of_partial(h: &Graph, order: &[usize]) -> usize {
    let mut pos = vec![usize::MAX; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .flat_map(|&u| h.neighbors(u).iter().map(move |&w| (u, w)))
        .filter(|&(_, w)| pos[w] != usize::MAX)
        .map(|(u, w)| pos[u].abs_diff(pos[w]))
        .max()
        .unwrap_or(0)
}

fn bfs_order(h: &Graph, s: usize) -> Vec<usize> {
    let mut seen = vec![false; h.n()];
    let mut out = vec![s];
    seen[s] = true;
    let mut i = 0;
    while i < out.len() {
        let u = out[i];
        i += 1;
        let mut nb: Vec<usize> = h.neighbors(u).iter().copied().filter(|&w| !seen[w]).collect();
        nb.sort_by_key(|&w| (h.degree(w), w));
        for w in nb {
            seen[w] = true;
            out.push(w);
        }
    }
    out
}

fn pseudo_peripheral(h: &Graph, start: usize) -> usize {
    let none = vec![false; h.n()];
    let mut v = start;
    let mut ecc = 0;
    loop {
        let dist = h.bfs(&[v], &none, usize::MAX);
        let far = (0..h.n())
            .filter(|&u| dist[u] != usize::MAX)
            .max_by(|&a, &b| dist[a].cmp(&dist[b]).then(h.degree(b).cmp(&h.degree(a))))
            .unwrap();
        if dist[far] <= ecc {
            return v;
        }
        ecc = dist[far];
        v = far;
    }
}

/// A separator `S` with `|S| <= alpha|H|` leaving components of size at
/// most `alpha|H|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub separator: Option<VertexSet>,
    pub cap: usize,
    pub exact: bool,
}

pub fn separator_ok(h: &Graph, s: &VertexSet, cap: usize) -> bool {
    s.len() <= cap && h.remove_vertices(s).graph.components().iter().all(|c| c.len() <= cap)
}

/// Exact smallest-first enumeration for `|H| <= 14`; above that, repeated
/// level cuts through the largest component.
pub fn check_separable(h: &Graph, alpha: f64) -> Result<Separation> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Precondition(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let n = h.n();
    let cap = (alpha * n as f64 + 1e-9).floor() as usize;
    if n <= SEPARABLE_EXACT_CAP {
        for size in 0..=cap.min(n) {
            let mut found = None;
            for_each_subset(n, size, &mut |s| {
                if found.is_none() && separator_ok(h, s, cap) {
                    found = Some(s.clone());
                }
                found.is_some()
            });
            if let Some(s) = found {
                return Ok(Separation { separator: Some(s), cap, exact: true });
            }
        }
        return Ok(Separation { separator: None, cap, exact: true });
    }
    let mut s = VertexSet::new();
    loop {
        let rest = h.remove_vertices(&s);
        let comps = rest.graph.components();
        let Some(big) = comps.into_iter().filter(|c| c.len() > cap).max_by_key(|c| c.len()) else { break };
        if s.len() >= cap {
            return Ok(Separation { separator: None, cap, exact: false });
        }
        let host: Vec<usize> = big.iter().map(|&v| rest.to_host[v]).collect();
        s = s.union(&level_cut(h, &host, &s));
    }
    let ok = separator_ok(h, &s, cap);
    Ok(Separation { separator: ok.then_some(s), cap, exact: false })
}

/// The BFS level through the middle of a component, measured by vertex count.
fn level_cut(h: &Graph, comp: &[usize], removed: &VertexSet) -> VertexSet {
    let mut blocked = vec![true; h.n()];
    for &v in comp {
        blocked[v] = false;
    }
    for v in removed.iter() {
        blocked[v] = true;
    }
    let sub = h.induced_subgraph(&comp.iter().copied().collect());
    let start = sub.to_host[pseudo_peripheral(&sub.graph, 0)];
    let dist = h.bfs(&[start], &blocked, usize::MAX);
    let depth = comp.iter().map(|&v| dist[v]).max().unwrap();
    let mut seen = 0;
    let half = comp.len() / 2;
    for level in 0..=depth {
        let layer: Vec<usize> = comp.iter().copied().filter(|&v| dist[v] == level).collect();
        seen += layer.len();
        if seen >= half {
            return layer.into_iter().collect();
        }
    }
    VertexSet::singleton(start)
}

/// Calls `f` on each `size`-subset of `0..n` in lexicographic order until it
/// returns true.
fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(&VertexSet) -> bool) {
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if f(&VertexSet::from_sorted(idx.clone())) {
            return;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else { return };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// What the pattern is mapped onto. Class ids are `0..r` around the cycle,
/// or for a sun the cycle positions followed by the leaves in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionTarget {
    OddCycle { r: usize },
    Sun { sun: Sun },
}

impl PartitionTarget {
    pub fn shape(&self) -> Graph {
        match self {
            PartitionTarget::OddCycle { r } => Graph::from_edges_dedup(*r, (0..*r).map(|i| (i, (i + 1) % r))),
            PartitionTarget::Sun { sun } => sun.shape(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub target: PartitionTarget,
    /// Class of each pattern vertex.
    pub classes: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub cap: usize,
    pub block_width: usize,
    pub park_blocks: usize,
    /// Vertices placed while moving between parking states.
    pub w_mass: usize,
    pub w_bound: f64,
    /// Single-vertex moves made after the block walk to meet the caps.
    pub repair_moves: usize,
    pub seed: u64,
    pub attempts: usize,
}

pub fn validate_plan(h: &Graph, plan: &PartitionPlan) -> std::result::Result<(), Violation> {
    let shape = plan.target.shape();
    if plan.classes.len() != h.n() {
        return Err(Violation::new("class map", format!("{} classes for {} vertices", plan.classes.len(), h.n())));
    }
    if let Some(v) = (0..h.n()).find(|&v| plan.classes[v] >= shape.n()) {
        return Err(Violation::new("class map", format!("vertex {v} maps outside the target")));
    }
    let mut sizes = vec![0; shape.n()];
    for &c in &plan.classes {
        sizes[c] += 1;
    }
    if let Some(c) = (0..shape.n()).find(|&c| sizes[c] > plan.cap) {
        return Err(Violation::new("class cap", format!("class {c} has {} vertices, cap {}", sizes[c], plan.cap)));
    }
    for (u, v) in h.edges() {
        if !shape.has_edge(plan.classes[u], plan.classes[v]) {
            return Err(Violation::new(
                "edges follow target",
                format!("edge ({u}, {v}) maps to non-adjacent classes {} and {}", plan.classes[u], plan.classes[v]),
            ));
        }
    }
    Ok(())
}

/// Balanced map of a bipartite `h` onto `C_r` with classes of size at most
/// `floor(d/r)`.
pub fn partition_onto_odd_cycle(h: &Graph, r: usize, d: f64, bw: &BandwidthOrder, seed: u64) -> Result<PartitionPlan> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::Precondition(format!("r must be odd and at least 3, got {r}")));
    }
    leapfrog(h, PartitionTarget::OddCycle { r }, r, d, bw, seed, DEFAULT_RETRIES)
}

/// Balanced map of a bipartite `h` onto a `(2s, q)`-sun with `s >= q` and
/// `s + q >= r`, classes of size at most `floor(d/r)`.
pub fn partition_onto_sun(h: &Graph, sun: &Sun, r: usize, d: f64, bw: &BandwidthOrder, seed: u64) -> Result<PartitionPlan> {
    let own = Graph::from_edges_dedup(
        sun.vertices().iter().max().map_or(0, |m| m + 1),
        (0..sun.cycle.len())
            .map(|i| (sun.cycle[i], sun.cycle[(i + 1) % sun.cycle.len()]))
            .chain(sun.leaves.iter().filter(|&&(_, i)| i < sun.cycle.len()).map(|&(l, i)| (l, sun.cycle[i]))),
    );
    validate_sun(&own, sun).map_err(|v| Error::Precondition(format!("not a sun: {v}")))?;
    let (s, q) = (sun.a(), sun.b());
    if s + q < r {
        return Err(Error::Precondition(format!("sun has s + q = {} < r = {r}", s + q)));
    }
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    leapfrog(h, PartitionTarget::Sun { sun: sun.clone() }, r, d, bw, seed, DEFAULT_RETRIES)
}

/// Walks the ordered blocks of `h` through oriented target edges: a block
/// whose sides sit on `(a, b)` may be followed by one on `(a', b')` when
/// `a ~ b'` and `b ~ a'`, so every edge inside or between consecutive
/// blocks lands on a target edge. Each segment walks to a parking state
/// one block per step, then parks a fixed number of blocks there. Parking
/// states are chosen by a randomised depth-first search that prefers the
/// least loaded outcome and never lets a class exceed the cap.
fn leapfrog(
    h: &Graph,
    target: PartitionTarget,
    r: usize,
    d: f64,
    bw: &BandwidthOrder,
    seed: u64,
    retries: usize,
) -> Result<PartitionPlan> {
    if !(d > 0.0) {
        return Err(Error::Precondition(format!("d must be positive, got {d}")));
    }
    let colour = h.bipartition().ok_or_else(|| Error::Precondition("pattern must be bipartite".into()))?;
    if bw.order.len() != h.n() || bandwidth_of(h, &bw.order) > bw.b {
        return Err(Error::Precondition("bandwidth order does not match the pattern".into()));
    }
    let shape = target.shape();
    let cap = (d / r as f64 + 1e-9).floor() as usize;
    if h.n() > cap * shape.n() {
        return Err(Error::Precondition(format!("{} vertices cannot fit {} classes of size {cap}", h.n(), shape.n())));
    }
    let width = bw.b.max(1);
    let beta = width as f64 / d;
    let t = beta.powf(-0.5).ceil() as usize;
    let park = t.saturating_sub(r).max(1);
    let w_bound = r as f64 * beta.sqrt() * d;
    let blocks: Vec<[usize; 2]> = bw
        .order
        .chunks(width)
        .map(|c| {
            let mut sides = [0, 0];
            for &v in c {
                sides[colour[v] as usize] += 1;
            }
            sides
        })
        .collect();
    let states: Vec<(usize, usize)> = shape.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    let moves: Vec<Vec<usize>> = states
        .iter()
        .map(|&(a, b)| {
            (0..states.len())
                .filter(|&j| {
                    let (a2, b2) = states[j];
                    shape.has_edge(a, b2) && shape.has_edge(b, a2)
                })
                .collect()
        })
        .collect();
    let walks: Vec<Vec<Option<Vec<usize>>>> = (0..states.len()).map(|s| walks_from(s, &moves)).collect();
    let mut search = Leapfrog {
        blocks: &blocks,
        states: &states,
        walks: &walks,
        park,
        cap,
        w_bound,
        total: h.n(),
        load: vec![0; shape.n()],
        assigned: Vec::with_capacity(blocks.len()),
        w_mass: 0,
        nodes: 0,
        best_overflow: usize::MAX,
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    for attempt in 0..retries {
        let attempt_seed = seed.wrapping_add(attempt as u64);
        search.rng = ChaCha8Rng::seed_from_u64(attempt_seed);
        search.nodes = 0;
        let fitted = search.run(None);
        if !fitted {
            search.greedy();
        }
        let mut classes = vec![usize::MAX; h.n()];
        for (chunk, &(step, _)) in bw.order.chunks(width).zip(&search.assigned) {
            let (a, b) = states[step];
            for &v in chunk {
                classes[v] = if colour[v] == 0 { a } else { b };
            }
        }
        let w_mass = search.w_mass;
        search.reset();
        let repair_moves = if fitted {
            0
        } else {
            let walked = classes.clone();
            match rebalance(h, &shape, &mut classes, cap, &mut search.rng)
                .or_else(|o| place_vertices(h, &shape, &bw.order, &walked, cap, &mut search.rng).map(|c| {
                    let moved = c.iter().zip(&walked).filter(|(a, b)| a != b).count();
                    classes = c;
                    moved
                }).ok_or(o))
            {
                Ok(moves) if w_mass as f64 <= w_bound => moves,
                Ok(_) => continue,
                Err(overflow) => {
                    search.best_overflow = search.best_overflow.min(overflow);
                    continue;
                }
            }
        };
        let mut class_sizes = vec![0; shape.n()];
        for &c in &classes {
            class_sizes[c] += 1;
        }
        let plan = PartitionPlan {
            target,
            classes,
            class_sizes,
            cap,
            block_width: width,
            park_blocks: park,
            w_mass,
            w_bound,
            repair_moves,
            seed: attempt_seed,
            attempts: attempt + 1,
        };
        validate_plan(h, &plan).map_err(|v| Error::Internal(format!("partition fails validation: {v}")))?;
        return Ok(plan);
    }
    Err(Error::RetriesExhausted { retries, overflow: search.best_overflow })
}

const SEARCH_NODES: usize = 4_000;

struct Leapfrog<'a> {
    blocks: &'a [[usize; 2]],
    states: &'a [(usize, usize)],
    walks: &'a [Vec<Option<Vec<usize>>>],
    park: usize,
    cap: usize,
    w_bound: f64,
    total: usize,
    load: Vec<usize>,
    /// State of each placed block, and whether it was placed while walking.
    assigned: Vec<(usize, bool)>,
    w_mass: usize,
    nodes: usize,
    best_overflow: usize,
    rng: ChaCha8Rng,
}

impl Leapfrog<'_> {
    /// Steps of one segment ending at `s`, cut off at the last block.
    fn segment(&self, from: Option<usize>, s: usize) -> Vec<(usize, bool)> {
        let walk: &[usize] = match from {
            None => &[],
            Some(c) => self.walks[c][s].as_deref().unwrap_or(&[]),
        };
        let k = self.assigned.len();
        walk.iter()
            .map(|&x| (x, true))
            .chain(std::iter::repeat_n((s, false), self.park))
            .take(self.blocks.len() - k)
            .collect()
    }

    fn apply(&mut self, steps: &[(usize, bool)]) {
        for &(step, walking) in steps {
            let blk = self.blocks[self.assigned.len()];
            let (a, b) = self.states[step];
            self.load[a] += blk[0];
            self.load[b] += blk[1];
            if walking {
                self.w_mass += blk[0] + blk[1];
            }
            self.assigned.push((step, walking));
        }
    }

    fn undo(&mut self, count: usize) {
        for _ in 0..count {
            let (step, walking) = self.assigned.pop().unwrap();
            let blk = self.blocks[self.assigned.len()];
            let (a, b) = self.states[step];
            self.load[a] -= blk[0];
            self.load[b] -= blk[1];
            if walking {
                self.w_mass -= blk[0] + blk[1];
            }
        }
    }

    fn reset(&mut self) {
        self.assigned.clear();
        self.load.iter_mut().for_each(|x| *x = 0);
        self.w_mass = 0;
    }

    /// Completes the walk choosing the least overflowing segment each time.
    fn greedy(&mut self) {
        let mut current = None;
        while self.assigned.len() < self.blocks.len() {
            let mut best: Option<((usize, usize, u64), usize, Vec<(usize, bool)>)> = None;
            for s in 0..self.states.len() {
                if current.is_some_and(|c: usize| self.walks[c][s].is_none()) {
                    continue;
                }
                let steps = self.segment(current, s);
                self.apply(&steps);
                let overflow: usize = self.load.iter().map(|&x| x.saturating_sub(self.cap)).sum();
                let peak = self.load.iter().max().copied().unwrap_or(0);
                let key = (overflow, peak, rand::Rng::gen(&mut self.rng));
                self.undo(steps.len());
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, s, steps));
                }
            }
            let (_, s, steps) = best.expect("some state is reachable");
            self.apply(&steps);
            current = Some(s);
        }
    }

    fn run(&mut self, current: Option<usize>) -> bool {
        if self.assigned.len() == self.blocks.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > SEARCH_NODES {
            return false;
        }
        let reachable: Vec<usize> = (0..self.states.len())
            .filter(|&s| current.is_none_or(|c| self.walks[c][s].is_some()))
            .collect();
        let mut options: Vec<(usize, u64, usize, Vec<(usize, bool)>)> = Vec::new();
        for s in reachable {
            let steps = self.segment(current, s);
            self.apply(&steps);
            let overflow = self.load.iter().map(|&x| x.saturating_sub(self.cap)).max().unwrap_or(0);
            let placed: usize = self.load.iter().sum();
            let room: usize = self.load.iter().map(|&x| self.cap.saturating_sub(x)).sum();
            let fits = overflow == 0 && self.w_mass as f64 <= self.w_bound && room >= self.total - placed;
            if overflow > 0 {
                self.best_overflow = self.best_overflow.min(overflow);
            }
            let peak = self.load.iter().max().copied().unwrap_or(0);
            self.undo(steps.len());
            if fits {
                options.push((peak, rand::Rng::gen(&mut self.rng), s, steps));
            }
        }
        options.sort_by_key(|o| (o.0, o.1));
        for (_, _, s, steps) in options {
            self.apply(&steps);
            if self.run(Some(s)) {
                return true;
            }
            self.undo(steps.len());
            if self.nodes > SEARCH_NODES {
                return false;
            }
        }
        false
    }
}

/// Moves single vertices out of overfull classes along augmenting chains,
/// keeping every edge on a target edge. Returns the number of moves, or the
/// remaining worst overflow when no chain exists.
fn rebalance(
    h: &Graph,
    shape: &Graph,
    classes: &mut [usize],
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<usize, usize> {
    let k = shape.n();
    let mut load = vec![0; k];
    for &c in classes.iter() {
        load[c] += 1;
    }
    let fits = |v: usize, c: usize, classes: &[usize]| h.neighbors(v).iter().all(|&w| shape.has_edge(c, classes[w]));
    let mut moves = 0;
    let mut banned = vec![false; h.n()];
    for _ in 0..4 * h.n() * k.max(1) {
        let Some(over) = (0..k).filter(|&c| load[c] > cap).max_by_key(|&c| load[c]) else {
            return Ok(moves);
        };
        // Breadth-first over classes; an arc X -> Y carries a vertex of X
        // that may sit in Y given its neighbours' current classes.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; k];
        let mut seen = vec![false; k];
        seen[over] = true;
        let mut queue = VecDeque::from([over]);
        let mut end = None;
        'bfs: while let Some(x) = queue.pop_front() {
            let mut members: Vec<usize> = (0..h.n()).filter(|&v| classes[v] == x && !banned[v]).collect();
            members.shuffle(rng);
            for v in members {
                for y in 0..k {
                    if seen[y] || !fits(v, y, classes) {
                        continue;
                    }
                    seen[y] = true;
                    parent[y] = Some((x, v));
                    if load[y] < cap {
                        end = Some(y);
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        let Some(mut y) = end else {
            return Err(load.iter().map(|&x| x.saturating_sub(cap)).max().unwrap_or(0));
        };
        let mut chain = Vec::new();
        while let Some((x, v)) = parent[y] {
            chain.push((v, x, y));
            y = x;
        }
        for &(v, _, to) in &chain {
            classes[v] = to;
        }
        if chain.iter().all(|&(v, _, _)| fits(v, classes[v], classes)) {
            for &(_, from, to) in &chain {
                load[from] -= 1;
                load[to] += 1;
            }
            moves += chain.len();
            banned.iter_mut().for_each(|b| *b = false);
        } else {
            for &(v, from, _) in &chain {
                classes[v] = from;
            }
            banned[chain.last().unwrap().0] = true;
        }
    }
    Err(load.iter().map(|&x| x.saturating_sub(cap)).max().unwrap_or(0))
}

const PLACEMENT_NODES: usize = 200_000;

/// Backtracking placement of single vertices in bandwidth order, trying the
/// walked class first and then the emptiest classes.
fn place_vertices(
    h: &Graph,
    shape: &Graph,
    order: &[usize],
    walked: &[usize],
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    struct Place<'a> {
        h: &'a Graph,
        shape: &'a Graph,
        order: &'a [usize],
        walked: &'a [usize],
        cap: usize,
        classes: Vec<usize>,
        load: Vec<usize>,
        nodes: usize,
        tie: Vec<u64>,
    }
    impl Place<'_> {
        fn allowed(&self, v: usize, c: usize) -> bool {
            self.load[c] < self.cap
                && self.h.neighbors(v).iter().all(|&w| self.classes[w] == usize::MAX || self.shape.has_edge(c, self.classes[w]))
        }

        fn go(&mut self, i: usize) -> bool {
            if i == self.order.len() {
                return true;
            }
            self.nodes += 1;
            if self.nodes > PLACEMENT_NODES {
                return false;
            }
            let v = self.order[i];
            let mut options: Vec<usize> = (0..self.shape.n()).filter(|&c| self.allowed(v, c)).collect();
            options.sort_by_key(|&c| (c != self.walked[v], self.load[c], self.tie[c]));
            for c in options {
                self.classes[v] = c;
                self.load[c] += 1;
                let open = self.h.neighbors(v).iter().all(|&w| {
                    self.classes[w] != usize::MAX || (0..self.shape.n()).any(|c2| self.allowed(w, c2))
                });
                if open && self.go(i + 1) {
                    return true;
                }
                self.load[c] -= 1;
                self.classes[v] = usize::MAX;
                if self.nodes > PLACEMENT_NODES {
                    return false;
                }
            }
            false
        }
    }
    let tie = (0..shape.n()).map(|_| rand::Rng::gen(rng)).collect();
    let mut p = Place {
        h,
        shape,
        order,
        walked,
        cap,
        classes: vec![usize::MAX; h.n()],
        load: vec![0; shape.n()],
        nodes: 0,
        tie,
    };
    p.go(0).then_some(p.classes)
}

/// Shortest state walks from `from` (excluding it) to every reachable state.
fn walks_from(from: usize, moves: &[Vec<usize>]) -> Vec<Option<Vec<usize>>> {
    let mut parent = vec![usize::MAX; moves.len()];
    let mut seen = vec![false; moves.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in &moves[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (0..moves.len())
        .map(|s| {
            if !seen[s] {
                return None;
            }
            let mut path = Vec::new();
            let mut c = s;
            while c != from {
                path.push(c);
                c = parent[c];
            }
            path.reverse();
            Some(path)
        })
        .collect()
}
