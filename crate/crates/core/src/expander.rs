//! Robust sublinear expanders: the density function, adversarial edge
//! deletion, exhaustive and sampled certification, and extraction by a
//! `phi`-increasing local search.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::vertex_connectivity;
use crate::graph::{Graph, Subgraph, VertexSet};

pub const DEFAULT_C: f64 = 31.0;
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 18;
const HARD_CAP: usize = 26;

/// Expansion parameters. Logarithms are natural.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderParams {
    pub eps1: f64,
    pub t: f64,
    pub c: f64,
}

impl ExpanderParams {
    /// Parameters for certification; only positivity is required.
    pub fn new(eps1: f64, t: f64) -> Result<Self> {
        if !(eps1 > 0.0 && eps1.is_finite() && t > 0.0 && t.is_finite()) {
            return Err(Error::Invalid(format!("need eps1 > 0 and t > 0, got eps1={eps1}, t={t}")));
        }
        Ok(ExpanderParams { eps1, t, c: DEFAULT_C })
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    /// Constraints under which extraction keeps its degree guarantee.
    pub fn check_extraction(&self) -> Result<()> {
        if self.c <= 30.0 {
            return Err(Error::Precondition(format!("C must exceed 30, got {}", self.c)));
        }
        if self.eps1 > 1.0 / (10.0 * self.c) + 1e-15 {
            return Err(Error::Precondition(format!("eps1 must be at most 1/(10C) = {}", 1.0 / (10.0 * self.c))));
        }
        Ok(())
    }

    /// `rho(x) = eps1 / ln^2(15x/t)` for `x >= t/5`, else 0.
    pub fn rho(&self, x: f64) -> f64 {
        if x < self.t / 5.0 {
            0.0
        } else {
            let l = (15.0 * x / self.t).ln();
            self.eps1 / (l * l)
        }
    }

    /// `gamma(x) = C * integral_x^inf rho(u)/u du`.
    pub fn gamma(&self, x: f64) -> f64 {
        let x = x.max(self.t / 5.0);
        self.c * self.eps1 / (15.0 * x / self.t).ln()
    }

    /// Largest value of `gamma`, also the relative degree loss bound.
    pub fn delta(&self) -> f64 {
        self.c * self.eps1 / 3f64.ln()
    }
}

/// `nu = eps1 / (6 ln^2(5/eps2))`.
pub fn nu(eps1: f64, eps2: f64) -> f64 {
    let l = (5.0 / eps2).ln();
    eps1 / (6.0 * l * l)
}

/// `phi(G) = d(G) (1 + gamma(|G|))`; zero for the empty graph.
pub fn phi_score(g: &Graph, params: &ExpanderParams) -> f64 {
    if g.n() == 0 {
        return 0.0;
    }
    g.avg_degree_f64() * (1.0 + params.gamma(g.n() as f64))
}

/// Edge budget `floor(d * rho(|X|) * |X|)`.
pub fn deletion_budget(d: f64, params: &ExpanderParams, size: usize) -> usize {
    (d * params.rho(size as f64) * size as f64).floor() as usize
}

/// Optimal adversary against `N(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deletion {
    pub deleted: Vec<(usize, usize)>,
    pub surviving: usize,
}

/// Deletes up to `budget` edges to shrink `N(X)` as much as possible.
/// Cutting a boundary vertex off costs its number of edges into `X`, so
/// taking the cheapest vertices first is optimal.
pub fn adversarial_boundary_deletion(g: &Graph, x: &VertexSet, budget: usize) -> Deletion {
    let inside = x.mask(g.n());
    let mut costs: Vec<(usize, usize)> = g
        .neighborhood(x)
        .iter()
        .map(|w| (g.neighbors(w).iter().filter(|&&u| inside[u]).count(), w))
        .collect();
    costs.sort_unstable();
    let total = costs.len();
    let mut spent = 0;
    let mut deleted = Vec::new();
    let mut cut = 0;
    for (cost, w) in costs {
        if spent + cost > budget {
            break;
        }
        spent += cost;
        cut += 1;
        for &u in g.neighbors(w) {
            if inside[u] {
                deleted.push((u.min(w), u.max(w)));
            }
        }
    }
    Deletion { deleted, surviving: total - cut }
}

/// Certification mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive { cap: usize },
    Sampled { trials: usize, seed: u64 },
}

/// A checked set with the adversary's best response.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: VertexSet,
    pub deleted: Vec<(usize, usize)>,
    pub budget: usize,
    pub surviving: usize,
    pub required: f64,
}

impl Witness {
    pub fn margin(&self) -> f64 {
        self.surviving as f64 - self.required
    }

    pub fn violated(&self) -> bool {
        (self.surviving as f64) < self.required
    }
}

/// Outcome of certification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderCertificate {
    pub params: ExpanderParams,
    pub log_base: String,
    pub mode: VerifyMode,
    pub n: usize,
    pub avg_degree: f64,
    pub checked_sets: u64,
    pub passed: bool,
    pub counterexample: Option<Witness>,
    /// Checked sets with the smallest margins.
    pub worst: Vec<Witness>,
}

impl ExpanderCertificate {
    pub fn is_exhaustive(&self) -> bool {
        matches!(self.mode, VerifyMode::Exhaustive { .. })
    }
}

const WORST_KEPT: usize = 3;

fn evaluate(g: &Graph, d: f64, params: &ExpanderParams, x: VertexSet) -> Witness {
    let budget = deletion_budget(d, params, x.len());
    let del = adversarial_boundary_deletion(g, &x, budget);
    Witness { required: params.rho(x.len() as f64) * x.len() as f64, x, deleted: del.deleted, budget, surviving: del.surviving }
}

fn keep_worst(worst: &mut Vec<Witness>, w: Witness) {
    worst.push(w);
    worst.sort_by(|a, b| a.margin().total_cmp(&b.margin()));
    worst.truncate(WORST_KEPT);
}

fn size_range(n: usize, params: &ExpanderParams) -> (usize, usize) {
    ((params.t / 2.0).ceil().max(1.0) as usize, n / 2)
}

/// Checks robust expansion of `g`: every `X` with `t/2 <= |X| <= |G|/2`
/// keeps `|N(X)| >= rho(|X|)|X|` after the optimal deletion of
/// `floor(d rho(|X|) |X|)` edges. Exhaustive mode enumerates every `X`.
pub fn verify_robust_expander(g: &Graph, params: &ExpanderParams, mode: VerifyMode) -> Result<ExpanderCertificate> {
    let n = g.n();
    let d = g.avg_degree_f64();
    let (lo, hi) = size_range(n, params);
    let mut cert = ExpanderCertificate {
        params: *params,
        log_base: "e".into(),
        mode,
        n,
        avg_degree: d,
        checked_sets: 0,
        passed: true,
        counterexample: None,
        worst: Vec::new(),
    };
    match mode {
        VerifyMode::Exhaustive { cap } => {
            if n > cap.min(HARD_CAP) {
                return Err(Error::CapExceeded { cap: cap.min(HARD_CAP), n });
            }
            if lo > hi {
                return Ok(cert);
            }
            let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
            let budgets: Vec<usize> = (0..=n).map(|s| deletion_budget(d, params, s)).collect();
            let required: Vec<f64> = (0..=n).map(|s| params.rho(s as f64) * s as f64).collect();
            let total: u64 = 1 << n;
            let chunk: u64 = 1 << 12;
            let chunks = total.div_ceil(chunk);
            // (first violating mask, worst masks by margin, checked count)
            let results: Vec<(Option<u32>, Vec<(f64, u32)>, u64)> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut first = None;
                    let mut worst: Vec<(f64, u32)> = Vec::new();
                    let mut checked = 0;
                    let mut costs = Vec::with_capacity(n);
                    for mask in c * chunk..((c + 1) * chunk).min(total) {
                        let mask = mask as u32;
                        let size = mask.count_ones() as usize;
                        if size < lo || size > hi {
                            continue;
                        }
                        checked += 1;
                        costs.clear();
                        for (w, &a) in adj.iter().enumerate() {
                            if mask >> w & 1 == 0 {
                                let k = (a & mask).count_ones();
                                if k > 0 {
                                    costs.push(k as usize);
                                }
                            }
                        }
                        costs.sort_unstable();
                        let mut spent = 0;
                        let mut cut = 0;
                        for &k in &costs {
                            if spent + k > budgets[size] {
                                break;
                            }
                            spent += k;
                            cut += 1;
                        }
                        let margin = (costs.len() - cut) as f64 - required[size];
                        if margin < 0.0 && first.is_none() {
                            first = Some(mask);
                        }
                        if worst.len() < WORST_KEPT || margin < worst.last().unwrap().0 {
                            worst.push((margin, mask));
                            worst.sort_by(|a, b| a.0.total_cmp(&b.0));
                            worst.truncate(WORST_KEPT);
                        }
                    }
                    (first, worst, checked)
                })
                .collect();
            let to_set = |mask: u32| VertexSet::from_iter((0..n).filter(|&v| mask >> v & 1 == 1));
            let mut all_worst: Vec<(f64, u32)> = Vec::new();
            for (first, worst, checked) in results {
                cert.checked_sets += checked;
                if cert.counterexample.is_none() {
                    if let Some(mask) = first {
                        cert.counterexample = Some(evaluate(g, d, params, to_set(mask)));
                    }
                }
                all_worst.extend(worst);
            }
            all_worst.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            all_worst.truncate(WORST_KEPT);
            cert.worst = all_worst.into_iter().map(|(_, m)| evaluate(g, d, params, to_set(m))).collect();
        }
        VerifyMode::Sampled { trials, seed } => {
            if lo > hi {
                return Ok(cert);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for x in candidate_sets(g, lo, hi, trials, &mut rng) {
                cert.checked_sets += 1;
                let w = evaluate(g, d, params, x);
                if w.violated() && cert.counterexample.is_none() {
                    cert.counterexample = Some(w.clone());
                }
                keep_worst(&mut cert.worst, w);
            }
        }
    }
    cert.passed = cert.counterexample.is_none();
    Ok(cert)
}

/// Candidate sets for sampled checking: small components, BFS balls,
/// truncated BFS orders from random roots and random subsets.
fn candidate_sets(g: &Graph, lo: usize, hi: usize, trials: usize, rng: &mut ChaCha8Rng) -> Vec<VertexSet> {
    let n = g.n();
    let mut out: Vec<VertexSet> = Vec::new();
    let ok = |s: usize| s >= lo && s <= hi;
    for comp in g.components() {
        if ok(comp.len()) {
            out.push(VertexSet::from_sorted(comp));
        }
    }
    let mut roots: Vec<usize> = (0..n).collect();
    roots.shuffle(rng);
    let none = vec![false; n];
    for &r in &roots {
        if out.len() >= trials {
            break;
        }
        let dist = g.bfs(&[r], &none, usize::MAX);
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[v] != usize::MAX).collect();
        order.sort_by_key(|&v| (dist[v], v));
        let mut layer_end = 0;
        while layer_end < order.len() {
            let dl = dist[order[layer_end]];
            while layer_end < order.len() && dist[order[layer_end]] == dl {
                layer_end += 1;
            }
            if ok(layer_end) {
                out.push(VertexSet::from_iter(order[..layer_end].iter().copied()));
            }
            if layer_end > hi {
                break;
            }
        }
        let top = hi.min(order.len());
        if top >= lo {
            let size = rng.gen_range(lo..=top);
            out.push(VertexSet::from_iter(order[..size].iter().copied()));
        }
    }
    while out.len() < trials && hi >= lo && n > 0 {
        let size = rng.gen_range(lo..=hi);
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(rng);
        out.push(VertexSet::from_iter(all[..size].iter().copied()));
    }
    out.truncate(trials.max(1));
    out
}

/// Tuning for [`extract_expander`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExtractOptions {
    pub c: f64,
    pub exhaustive_cap: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { c: DEFAULT_C, exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP, trials: 96, seed: 0 }
    }
}

/// Extracted expander with its certificate and bookkeeping.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Extraction {
    pub subgraph: Subgraph,
    pub params: ExpanderParams,
    pub eps2: f64,
    pub host_avg_degree: f64,
    pub avg_degree: f64,
    pub min_degree: usize,
    pub delta: f64,
    pub phi: f64,
    pub connected: bool,
    pub vertex_connectivity: Option<usize>,
    pub certificate: ExpanderCertificate,
    pub moves: Vec<String>,
}

impl Extraction {
    pub fn vertices(&self) -> VertexSet {
        self.subgraph.host_set()
    }

    /// `d(H) >= (1 - delta) d(G)`.
    pub fn meets_degree_bound(&self) -> bool {
        self.avg_degree >= (1.0 - self.delta) * self.host_avg_degree
    }

    /// `delta(H) >= d(H)/2`.
    pub fn meets_min_degree_bound(&self) -> bool {
        let h = &self.subgraph.graph;
        self.min_degree * h.n() >= h.m()
    }
}

fn phi_of(g: &Graph, keep: &VertexSet, params: &ExpanderParams) -> f64 {
    phi_score(&g.induced_subgraph(keep).graph, params)
}

fn improves(new: f64, old: f64) -> bool {
    new > old * (1.0 + 1e-12) + 1e-15
}

/// Finds an induced subgraph `H` that is a robust expander with
/// `d(H) >= (1 - delta) d(G)` and `delta(H) >= d(H)/2`. Every move strictly
/// increases `phi`, which is what the degree guarantee rests on.
pub fn extract_expander(g: &Graph, eps1: f64, eps2: f64, opts: ExtractOptions) -> Result<Extraction> {
    let d0 = g.avg_degree_f64();
    if g.m() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    if !(eps2 > 0.0 && eps2 < 0.5) {
        return Err(Error::Precondition(format!("eps2 must lie in (0, 1/2), got {eps2}")));
    }
    let params = ExpanderParams::new(eps1, eps2 * d0)?.with_c(opts.c);
    params.check_extraction()?;
    let mut cur = VertexSet::from_iter(0..g.n());
    let mut moves = Vec::new();
    let mut round = 0u64;
    let certificate = loop {
        round += 1;
        cur = peel_low_degree(g, cur, &mut moves);
        let sub = g.induced_subgraph(&cur);
        let h = &sub.graph;
        let phi = phi_score(h, &params);
        // Cheap candidates: k-cores and components.
        let mut best: Option<(f64, VertexSet, String)> = None;
        for (label, local) in cheap_candidates(h) {
            let host: VertexSet = local.iter().map(|v| sub.to_host[v]).collect();
            let p = phi_of(g, &host, &params);
            if improves(p, phi) && best.as_ref().is_none_or(|b| improves(p, b.0)) {
                best = Some((p, host, label));
            }
        }
        if let Some((p, host, label)) = best {
            moves.push(format!("restrict to {label} ({} vertices, phi {p:.6})", host.len()));
            cur = host;
            continue;
        }
        let mode = if h.n() <= opts.exhaustive_cap {
            VerifyMode::Exhaustive { cap: opts.exhaustive_cap }
        } else {
            VerifyMode::Sampled { trials: opts.trials, seed: opts.seed.wrapping_add(round) }
        };
        let cert = verify_robust_expander(h, &params, mode)?;
        let Some(w) = cert.counterexample.clone() else {
            break cert;
        };
        // Split along the violating set: keep X plus its surviving
        // neighbourhood, or drop X, whichever scores higher.
        let pruned = h.remove_edges(&w.deleted)?;
        let y = w.x.union(&pruned.neighborhood(&w.x));
        let rest = VertexSet::from_iter((0..h.n()).filter(|&v| !w.x.contains(v)));
        let to_host = |s: &VertexSet| -> VertexSet { s.iter().map(|v| sub.to_host[v]).collect() };
        let (py, pr) = (phi_of(g, &to_host(&y), &params), phi_of(g, &to_host(&rest), &params));
        let (p, next, label) = if py >= pr { (py, y, "X with its surviving neighbourhood") } else { (pr, rest, "complement of X") };
        if !improves(p, phi) {
            moves.push(format!("stalled: violating set of size {} gives no phi gain", w.x.len()));
            break cert;
        }
        moves.push(format!("restrict to {label} ({} vertices, phi {p:.6})", next.len()));
        cur = to_host(&next);
    };
    let subgraph = g.induced_subgraph(&cur);
    let h = &subgraph.graph;
    let vertex_connectivity = (h.n() <= opts.exhaustive_cap).then(|| vertex_connectivity(h));
    Ok(Extraction {
        params,
        eps2,
        host_avg_degree: d0,
        avg_degree: h.avg_degree_f64(),
        min_degree: h.min_degree(),
        delta: params.delta(),
        phi: phi_score(h, &params),
        connected: h.is_connected(),
        vertex_connectivity,
        certificate,
        moves,
        subgraph,
    })
}

/// Repeatedly deletes a minimum-degree vertex while its degree is below
/// half the current average degree.
fn peel_low_degree(g: &Graph, cur: VertexSet, moves: &mut Vec<String>) -> VertexSet {
    let mut alive = cur.mask(g.n());
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| if alive[v] { g.neighbors(v).iter().filter(|&&w| alive[w]).count() } else { 0 })
        .collect();
    let mut n = cur.len();
    let mut twice_m: usize = deg.iter().sum();
    let mut removed = 0;
    loop {
        let Some(v) = (0..g.n()).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) else { break };
        // deg(v) < d/2  <=>  2 n deg(v) < 2m
        if 2 * n * deg[v] >= twice_m || n <= 1 {
            break;
        }
        alive[v] = false;
        n -= 1;
        twice_m -= 2 * deg[v];
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
        deg[v] = 0;
        removed += 1;
    }
    if removed > 0 {
        moves.push(format!("deleted {removed} vertices of degree below d/2"));
    }
    VertexSet::from_mask(&alive)
}

fn cheap_candidates(h: &Graph) -> Vec<(String, VertexSet)> {
    let mut out = Vec::new();
    let comps = h.components();
    if comps.len() > 1 {
        for c in comps {
            out.push((format!("a component of size {}", c.len()), VertexSet::from_sorted(c)));
        }
    }
    let mut k = h.min_degree() + 1;
    loop {
        let core = k_core(h, k);
        if core.is_empty() {
            break;
        }
        out.push((format!("the {k}-core"), core));
        k += 1;
    }
    out
}

/// Vertices of the `k`-core.
pub fn k_core(g: &Graph, k: usize) -> VertexSet {
    let mut alive = vec![true; g.n()];
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| deg[v] < k).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < k {
                    stack.push(w);
                }
            }
        }
    }
    VertexSet::from_mask(&alive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::gen;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_iter(v.iter().copied())
    }

    /// `C * integral_x^inf rho(u)/u du` by Simpson's rule. With
    /// `u = (t/15) e^s` and `s = a + z/(1-z)`, `a = ln(15x/t)`, the integrand
    /// becomes `eps1 / (a(1-z) + z)^2` on `[0, 1]`.
    fn gamma_by_quadrature(p: &ExpanderParams, x: f64) -> f64 {
        let start = x.max(p.t / 5.0);
        let a = (15.0 * start / p.t).ln();
        let f = |z: f64| p.eps1 / (a * (1.0 - z) + z).powi(2);
        let steps = 20_000;
        let h = 1.0 / steps as f64;
        let mut acc = f(0.0) + f(1.0);
        for i in 1..steps {
            acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        p.c * acc * h / 3.0
    }

    #[test]
    fn gamma_matches_quadrature() {
        let p = ExpanderParams::new(0.003, 4.0).unwrap();
        for &x in &[0.1, 0.8, 1.0, 2.0, 5.0, 40.0, 1000.0] {
            let q = gamma_by_quadrature(&p, x);
            assert!((p.gamma(x) - q).abs() < 1e-9, "x={x}: {} vs {q}", p.gamma(x));
        }
        assert!((p.gamma(0.1) - p.delta()).abs() < 1e-15);
    }

    #[test]
    fn rho_values() {
        let p = ExpanderParams::new(0.1, 2.0).unwrap();
        assert_eq!(p.rho(0.3), 0.0);
        let l = (15.0f64 * 4.0 / 2.0).ln();
        assert!((p.rho(4.0) - 0.1 / (l * l)).abs() < 1e-15);
        assert!(p.rho(10.0) < p.rho(4.0));
    }

    #[test]
    fn adversary_examples() {
        let k23 = gen::gen_complete_bipartite(2, 5).unwrap();
        // X = the two-vertex side; every boundary vertex costs 2.
        assert_eq!(adversarial_boundary_deletion(&k23, &set(&[0, 1]), 2).surviving, 2);
        let k15 = gen::star(5);
        assert_eq!(adversarial_boundary_deletion(&k15, &set(&[0]), 2).surviving, 3);
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn certification_examples() {
        let ex = VerifyMode::Exhaustive { cap: 18 };
        let k6 = gen::complete(6);
        let c = verify_robust_expander(&k6, &ExpanderParams::new(0.01, 2.0).unwrap(), ex).unwrap();
        assert!(c.passed);
        let p20 = gen::path(20);
        // rho(x) x stays below 0.06, so every budget is zero and a connected
        // host keeps |N(X)| >= 1.
        let p = ExpanderParams::new(0.1, 2.0).unwrap();
        assert!((1..=10).all(|x| deletion_budget(p20.avg_degree_f64(), &p, x) == 0));
        let c = verify_robust_expander(&p20, &p, VerifyMode::Exhaustive { cap: 20 }).unwrap();
        assert!(c.passed);
        assert_eq!(c.checked_sets, (1..=10).map(|k| binomial(20, k)).sum::<u64>());
        let two_k5 = gen::gen_disjoint_cliques(5, 2);
        let c = verify_robust_expander(&two_k5, &ExpanderParams::new(0.01, 2.0).unwrap(), ex).unwrap();
        assert!(!c.passed);
        let big = gen::complete(30);
        assert!(matches!(
            verify_robust_expander(&big, &ExpanderParams::new(0.01, 2.0).unwrap(), ex),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn extraction_examples() {
        let e1 = 1.0 / 310.0;
        let k8 = gen::complete(8);
        let r = extract_expander(&k8, e1, 0.25, ExtractOptions::default()).unwrap();
        assert_eq!(r.vertices().len(), 8);
        let mut edges = k8.edges();
        edges.push((7, 8));
        let pend = Graph::from_edges(9, &edges).unwrap();
        let r = extract_expander(&pend, e1, 0.25, ExtractOptions::default()).unwrap();
        assert_eq!(r.vertices(), VertexSet::from_iter(0..8));
        let mut e = gen::complete(6).edges();
        for (u, v) in gen::complete(4).edges() {
            e.push((u + 6, v + 6));
        }
        let k6k4 = Graph::from_edges(10, &e).unwrap();
        let r = extract_expander(&k6k4, e1, 0.25, ExtractOptions::default()).unwrap();
        assert_eq!(r.vertices(), VertexSet::from_iter(0..6));
        assert!(r.certificate.passed && r.certificate.is_exhaustive());
    }

    #[test]
    fn extraction_rejects_bad_params() {
        let k4 = gen::complete(4);
        assert!(extract_expander(&k4, 0.1, 0.25, ExtractOptions::default()).is_err());
        assert!(extract_expander(&Graph::empty(3), 0.001, 0.25, ExtractOptions::default()).is_err());
    }

    fn max_phi_brute(g: &Graph, p: &ExpanderParams) -> f64 {
        let n = g.n();
        (1u32..1 << n)
            .map(|m| phi_of(g, &VertexSet::from_iter((0..n).filter(|&v| m >> v & 1 == 1)), p))
            .fold(0.0, f64::max)
    }

    #[test]
    fn examples_reach_global_phi_maximum() {
        let e1 = 1.0 / 310.0;
        let mut e = gen::complete(6).edges();
        e.push((5, 6));
        e.push((6, 7));
        let g = Graph::from_edges(8, &e).unwrap();
        let r = extract_expander(&g, e1, 0.25, ExtractOptions::default()).unwrap();
        let best = max_phi_brute(&g, &r.params);
        assert!((r.phi - best).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn extraction_guarantees(n in 4usize..=14, p in 0.2f64..0.9, seed in 0u64..10_000) {
            let g = gen::gnp(n, p, seed);
            prop_assume!(g.m() > 0);
            let r = extract_expander(&g, 1.0 / 310.0, 0.25, ExtractOptions::default()).unwrap();
            prop_assert!(r.meets_degree_bound());
            prop_assert!(r.meets_min_degree_bound());
            prop_assert!(r.certificate.passed && r.certificate.is_exhaustive());
            prop_assert!(r.phi + 1e-12 >= phi_score(&g, &r.params));
        }

        #[test]
        fn adversary_is_optimal(n in 3usize..=8, p in 0.3f64..0.9, seed in 0u64..10_000, budget in 0usize..5) {
            let g = gen::gnp(n, p, seed);
            let x = set(&[0, 1]);
            let del = adversarial_boundary_deletion(&g, &x, budget);
            let boundary: Vec<(usize, usize)> = g.edge_boundary(&x);
            let mut best = usize::MAX;
            for mask in 0u32..1 << boundary.len() {
                if mask.count_ones() as usize > budget {
                    continue;
                }
                let f: Vec<_> = (0..boundary.len()).filter(|&i| mask >> i & 1 == 1).map(|i| boundary[i]).collect();
                let pruned = g.remove_edges(&f).unwrap();
                best = best.min(pruned.neighborhood(&x).len());
            }
            prop_assert_eq!(del.surviving, best);
            prop_assert!(del.deleted.len() <= budget);
        }
    }
}
