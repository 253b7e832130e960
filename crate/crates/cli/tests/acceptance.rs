//! Acceptance criteria, one pass/fail line each. Every check is exact.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subdiv_core::expander::{extract_expander, verify_robust_expander, ExpanderParams, ExtractOptions, VerifyMode};
use subdiv_core::extremal::gen::{complete, gnp, hypercube, random_connected};
use subdiv_core::extremal::{gen_complete_bipartite, gen_planar_with_k4s, graph_stats, minor_degree_bounds};
use subdiv_core::hpartition::{bandwidth_of, partition_onto_odd_cycle, partition_onto_sun, BandwidthOrder, PartitionPlan};
use subdiv_core::oracle::{find_minor, find_subdivision, SearchLimits, SearchOutcome, SubdivisionMap};
use subdiv_core::pathfinder::{check_path_intersection_bound, consecutive_shortest_paths, PathSystem};
use subdiv_core::pipeline::{embed_subdivision, EmbedOutcome, PipelineConfig};
use subdiv_core::planar::{random_triangulation, write_embedding, SubdivisionResult};
use subdiv_core::structures::Sun;
use subdiv_core::transforms::{bipartite_double, color_classes, split_high_degree};
use subdiv_core::{write_edge_list, Graph, VertexSet};

type Verdict = Result<String, String>;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subdiv"))
}

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().into_iter().collect()
}

fn two_colouring(g: &Graph) -> Option<Vec<u8>> {
    let mut colour = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                } else if colour[w] == colour[v] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

// Criterion 1 -----------------------------------------------------------

fn planar_subdivision() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut corpus = 0;
    for t in 4..=10 {
        for seed in 0..8u64 {
            let emb = random_triangulation(t, 1000 * t as u64 + seed).map_err(|e| e.to_string())?;
            let path = dir.path().join(format!("t{t}_{seed}.emb"));
            std::fs::write(&path, write_embedding(&emb)).unwrap();
            let out = bin().arg("planar-subdivide").arg("--embedding").arg(&path).output().unwrap();
            if out.status.code() != Some(0) {
                return Err(format!("t={t} seed={seed}: exit {:?}", out.status.code()));
            }
            let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
            let sub: SubdivisionResult = serde_json::from_value(v["result"]["subdivision"].clone()).map_err(|e| e.to_string())?;
            let r = &sub.result;
            if r.n() != 2 * t - 2 || v["result"]["vertices"] != 2 * t - 2 {
                return Err(format!("t={t} seed={seed}: {} vertices, want {}", r.n(), 2 * t - 2));
            }
            if sub.coloring.len() != r.n() || r.edges().iter().any(|&(a, b)| sub.coloring[a] == sub.coloring[b]) {
                return Err(format!("t={t} seed={seed}: colouring is not proper"));
            }
            // Contract every degree-2 midpoint added after the original vertices.
            let mut contracted = BTreeSet::new();
            for (a, b) in r.edges() {
                if a < t && b < t {
                    contracted.insert((a, b));
                }
            }
            for m in t..r.n() {
                let nb = r.neighbors(m);
                if nb.len() != 2 || nb.iter().any(|&x| x >= t) {
                    return Err(format!("t={t} seed={seed}: vertex {m} is not a midpoint"));
                }
                if !contracted.insert((nb[0].min(nb[1]), nb[0].max(nb[1]))) {
                    return Err(format!("t={t} seed={seed}: midpoint {m} duplicates an edge"));
                }
            }
            if contracted != edge_set(&emb.graph) {
                return Err(format!("t={t} seed={seed}: contraction differs from the input"));
            }
            let map = sub.as_subdivision_map();
            if !independent_subdivision_check(r, &emb.graph, &map) {
                return Err(format!("t={t} seed={seed}: subdivision witness rejected"));
            }
            corpus += 1;
        }
    }
    Ok(format!("{corpus} triangulations, t = 4..10"))
}

/// Anchors distinct, one path per pattern edge joining its anchors,
/// interiors avoid anchors and each other.
fn independent_subdivision_check(g: &Graph, h: &Graph, map: &SubdivisionMap) -> bool {
    if map.anchors.len() != h.n() || map.paths.len() != h.m() {
        return false;
    }
    let anchors: HashSet<usize> = map.anchors.iter().copied().collect();
    if anchors.len() != h.n() || anchors.iter().any(|&a| a >= g.n()) {
        return false;
    }
    let mut used = HashSet::new();
    let mut pattern_edges: HashSet<(usize, usize)> = h.edges().into_iter().collect();
    for bp in &map.paths {
        let p = bp.path.vertices();
        if p.len() < 2 || p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
        let (s, e) = (p[0], p[p.len() - 1]);
        let Some(x) = map.anchors.iter().position(|&a| a == s) else { return false };
        let Some(y) = map.anchors.iter().position(|&a| a == e) else { return false };
        if !pattern_edges.remove(&(x.min(y), x.max(y))) {
            return false;
        }
        for &v in &p[1..p.len() - 1] {
            if anchors.contains(&v) || !used.insert(v) {
                return false;
            }
        }
    }
    pattern_edges.is_empty()
}

// Criterion 2 -----------------------------------------------------------

fn expander_guarantees() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (eps1, eps2) = (0.003, 0.25);
    let delta = subdiv_core::expander::DEFAULT_C * eps1 / 3f64.ln();
    let mut worst_ratio = f64::INFINITY;
    for run in 0..100 {
        let n = rng.gen_range(10..=200);
        let avg = [2.5, 4.0, 8.0, 16.0, 0.5 * n as f64][run % 5];
        let g = random_graph(&mut rng, n, (avg / (n - 1) as f64).min(1.0));
        if g.m() == 0 {
            continue;
        }
        let opts = ExtractOptions { seed: run as u64, ..ExtractOptions::default() };
        let x = extract_expander(&g, eps1, eps2, opts).map_err(|e| format!("run {run}: {e}"))?;
        let h = &x.subgraph.graph;
        for (a, b) in h.edges() {
            if !g.has_edge(x.subgraph.to_host[a], x.subgraph.to_host[b]) {
                return Err(format!("run {run}: extracted edge missing from the host"));
            }
        }
        let (nh, mh) = (h.n() as f64, h.m() as f64);
        let dg = 2.0 * g.m() as f64 / g.n() as f64;
        let dh = 2.0 * mh / nh;
        if dh < (1.0 - delta) * dg {
            return Err(format!("run {run}: d(H) = {dh} < (1 - {delta}) * {dg}"));
        }
        let min_deg = (0..h.n()).map(|v| h.neighbors(v).len()).min().unwrap();
        if min_deg * h.n() < h.m() {
            return Err(format!("run {run}: minimum degree {min_deg} < d(H)/2 = {}", dh / 2.0));
        }
        worst_ratio = worst_ratio.min(dh / dg);
    }
    Ok(format!("100 hosts, delta = {delta:.5}, smallest d(H)/d(G) = {worst_ratio:.4}"))
}

// Criterion 3 -----------------------------------------------------------

fn rho(eps1: f64, t: f64, x: f64) -> f64 {
    if x < t / 5.0 {
        0.0
    } else {
        eps1 / (15.0 * x / t).ln().powi(2)
    }
}

/// Literal check: every X in range against every deletion of at most
/// `budget` edges leaving X. Edges not leaving X cannot change `N(X)`.
fn brute_force_robust(g: &Graph, eps1: f64, t: f64) -> bool {
    let n = g.n();
    let d = 2.0 * g.m() as f64 / n as f64;
    let lo = (t / 2.0).ceil().max(1.0) as usize;
    for mask in 0u32..1 << n {
        let size = mask.count_ones() as usize;
        if size < lo || size > n / 2 {
            continue;
        }
        let inside = |v: usize| mask >> v & 1 == 1;
        let cut: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(a, b)| inside(a) != inside(b)).collect();
        let need = rho(eps1, t, size as f64) * size as f64;
        let budget = (d * need).floor() as usize;
        let mut ok = true;
        for_each_subset(cut.len(), budget.min(cut.len()), &mut |chosen: &[usize]| {
            if !ok {
                return;
            }
            let mut reached = 0u32;
            for (k, &(a, b)) in cut.iter().enumerate() {
                if chosen.contains(&k) {
                    continue;
                }
                let out = if inside(a) { b } else { a };
                reached |= 1 << out;
            }
            if (reached.count_ones() as f64) < need {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

fn for_each_subset(n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        f(cur);
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, max, cur, f);
            cur.pop();
        }
    }
    go(0, n, max, &mut Vec::new(), f);
}

/// Every X in range, with the adversary's best deletion found by a 0/1
/// knapsack over boundary vertices (cost = edges into X, value = 1).
fn knapsack_robust(g: &Graph, eps1: f64, t: f64) -> bool {
    let n = g.n();
    let d = 2.0 * g.m() as f64 / n as f64;
    let lo = (t / 2.0).ceil().max(1.0) as usize;
    for mask in 0u32..1 << n {
        let size = mask.count_ones() as usize;
        if size < lo || size > n / 2 {
            continue;
        }
        let costs: Vec<usize> = (0..n)
            .filter(|&w| mask >> w & 1 == 0)
            .map(|w| g.neighbors(w).iter().filter(|&&u| mask >> u & 1 == 1).count())
            .filter(|&c| c > 0)
            .collect();
        let need = rho(eps1, t, size as f64) * size as f64;
        let budget = (d * need).floor() as usize;
        let mut best = vec![0usize; budget + 1];
        for &c in &costs {
            for b in (c..=budget).rev() {
                best[b] = best[b].max(best[b - c] + 1);
            }
        }
        if ((costs.len() - best[budget]) as f64) < need {
            return false;
        }
    }
    true
}

fn robust_verification() -> Verdict {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for n in 3..=8 {
        corpus.push((format!("K{n}"), complete(n)));
    }
    corpus.push(("K12".into(), complete(12)));
    corpus.push(("K16".into(), complete(16)));
    corpus.push(("Q3".into(), hypercube(3)));
    corpus.push(("Q4".into(), hypercube(4)));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..24 {
        let n = if i < 16 { rng.gen_range(4..=8) } else { rng.gen_range(9..=16) };
        let p = rng.gen_range(0.15..0.9);
        corpus.push((format!("G({n},{p:.2})#{i}"), random_graph(&mut rng, n, p)));
    }
    let grid = [(0.003, 1.0), (0.003, 4.0), (0.1, 2.0), (1.0, 1.0), (1.0, 4.0), (4.0, 2.0), (8.0, 1.0)];
    let (mut checks, mut brute, mut passes) = (0, 0, 0);
    for (name, g) in &corpus {
        if g.m() == 0 {
            continue;
        }
        for &(eps1, t) in &grid {
            let params = ExpanderParams::new(eps1, t).unwrap();
            let cert = verify_robust_expander(g, &params, VerifyMode::Exhaustive { cap: 18 }).map_err(|e| e.to_string())?;
            let reference = if g.n() <= 8 {
                brute += 1;
                let b = brute_force_robust(g, eps1, t);
                if b != knapsack_robust(g, eps1, t) {
                    return Err(format!("{name} eps1={eps1} t={t}: references disagree"));
                }
                b
            } else {
                knapsack_robust(g, eps1, t)
            };
            if cert.passed != reference {
                return Err(format!("{name} eps1={eps1} t={t}: verifier {} vs reference {reference}", cert.passed));
            }
            checks += 1;
            passes += usize::from(reference);
        }
    }
    Ok(format!("{checks} verdicts agree ({brute} against full (X, F) enumeration, {passes} certified, {} refuted)", checks - passes))
}

// Criterion 4 -----------------------------------------------------------

/// Bipartite by parity, every edge spans at most `b` positions.
fn banded_bipartite(rng: &mut ChaCha8Rng, n: usize, b: usize) -> Graph {
    loop {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..=(i + b).min(n - 1) {
                if (j - i) % 2 == 1 && rng.gen_bool(0.6) {
                    e.push((i, j));
                }
            }
        }
        if !e.is_empty() {
            return Graph::from_edges(n, &e).unwrap();
        }
    }
}

/// Every class within the cap, every edge on a target edge.
fn plan_ok(h: &Graph, plan: &PartitionPlan, target: &Graph, cap: usize) -> Result<(), String> {
    if plan.classes.len() != h.n() || plan.classes.iter().any(|&c| c >= target.n()) {
        return Err("class map has the wrong shape".into());
    }
    let mut sizes = vec![0; target.n()];
    for &c in &plan.classes {
        sizes[c] += 1;
    }
    if let Some(c) = sizes.iter().position(|&s| s > cap) {
        return Err(format!("class {c} holds {} > {cap}", sizes[c]));
    }
    for (a, b) in h.edges() {
        if !target.has_edge(plan.classes[a], plan.classes[b]) {
            return Err(format!("edge ({a}, {b}) lands on classes {} and {}", plan.classes[a], plan.classes[b]));
        }
    }
    Ok(())
}

fn partition_postconditions() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sun = Sun { cycle: (0..6).collect(), leaves: vec![(6, 1), (7, 3)] };
    let sun_shape = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (6, 1), (7, 3)]).unwrap();
    let mut plans = 0;
    for case in 0..50 {
        let d = rng.gen_range(20..=60usize);
        let b = rng.gen_range(1..=d / 10);
        let capacity = [3usize, 5, 7].iter().map(|&r| r * (d / r)).min().unwrap();
        let n_max = (0.9 * capacity as f64).floor() as usize;
        let n = rng.gen_range(n_max / 2..=n_max);
        let h = banded_bipartite(&mut rng, n, b);
        let order: Vec<usize> = (0..n).collect();
        let achieved = bandwidth_of(&h, &order);
        if achieved > b || achieved > d / 10 {
            return Err(format!("case {case}: bandwidth {achieved} exceeds {b}"));
        }
        let bw = BandwidthOrder { order, b: achieved, exact: false };
        let seed = rng.gen();
        for r in [3usize, 5, 7] {
            let cycle = Graph::from_edges(r, &(0..r).map(|i| (i, (i + 1) % r)).collect::<Vec<_>>()).unwrap();
            let plan = partition_onto_odd_cycle(&h, r, d as f64, &bw, seed)
                .map_err(|e| format!("case {case} (d={d}, b={b}, |H|={n}) cycle r={r}: {e}"))?;
            plan_ok(&h, &plan, &cycle, d / r).map_err(|e| format!("case {case} cycle r={r}: {e}"))?;
            plans += 1;
        }
        let plan = partition_onto_sun(&h, &sun, 5, d as f64, &bw, seed)
            .map_err(|e| format!("case {case} (d={d}, b={b}, |H|={n}) sun: {e}"))?;
        plan_ok(&h, &plan, &sun_shape, d / 5).map_err(|e| format!("case {case} sun: {e}"))?;
        plans += 1;
    }
    Ok(format!("{plans} plans over 50 patterns, all within 64 retries"))
}

// Criterion 5 -----------------------------------------------------------

/// `|V(P_j) ∩ N_{G-Y}(Z_i)|` with `Z_i` the radius-`i` ball around `X` in
/// `G - (P - X) - Y`.
fn intersection_counts(g: &Graph, x: &VertexSet, y: &VertexSet, ps: &PathSystem, r: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    for v in y.iter() {
        blocked[v] = true;
    }
    for p in &ps.paths {
        for &v in p.vertices() {
            if !x.contains(v) {
                blocked[v] = true;
            }
        }
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for v in x.iter() {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !blocked[w] && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    (0..=r)
        .map(|i| {
            let boundary: HashSet<usize> = (0..n)
                .filter(|&v| dist[v] > i && !y.contains(v) && g.neighbors(v).iter().any(|&u| dist[u] <= i))
                .collect();
            ps.paths.iter().map(|p| p.vertices().iter().filter(|v| boundary.contains(v)).count()).collect()
        })
        .collect()
}

fn intersection_law() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut expanders, mut systems, mut checks) = (0, 0, 0);
    let mut attempt = 0u64;
    while expanders < 30 {
        attempt += 1;
        if attempt > 2000 {
            return Err(format!("only {expanders} certified expanders found"));
        }
        let n = rng.gen_range(8..=18);
        let p = rng.gen_range(0.2..0.6);
        let g = random_graph(&mut rng, n, p);
        if g.m() == 0 {
            continue;
        }
        let Ok(x) = extract_expander(&g, 0.003, 0.25, ExtractOptions { seed: attempt, ..ExtractOptions::default() }) else {
            continue;
        };
        if !x.certificate.passed || !x.certificate.is_exhaustive() || x.subgraph.graph.n() < 4 {
            continue;
        }
        expanders += 1;
        let h = &x.subgraph.graph;
        let m = h.n();
        for _ in 0..8 {
            let size = rng.gen_range(1..=2.min(m - 1));
            let mut verts: Vec<usize> = (0..m).collect();
            rand::seq::SliceRandom::shuffle(&mut verts[..], &mut rng);
            let xs: VertexSet = verts[..size].iter().copied().collect();
            let ys: VertexSet = verts[size..size + rng.gen_range(0..=1usize)].iter().copied().collect();
            let r = rng.gen_range(1..=4);
            let q = rng.gen_range(1..=m);
            let ps = consecutive_shortest_paths(h, &xs, r, &ys, q).map_err(|e| e.to_string())?;
            let ours = intersection_counts(h, &xs, &ys, &ps, r);
            for (i, row) in ours.iter().enumerate() {
                if let Some(j) = row.iter().position(|&c| c > i + 2) {
                    return Err(format!("expander {expanders}: path {j} meets N(Z_{i}) in {} vertices", row[j]));
                }
                checks += row.len();
            }
            match check_path_intersection_bound(h, &xs, &ys, &ps, r) {
                Ok(report) if report.counts == ours => {}
                Ok(_) => return Err(format!("expander {expanders}: library counts differ from the reference")),
                Err(v) => return Err(format!("expander {expanders}: library reports {v}")),
            }
            systems += 1;
        }
    }
    Ok(format!("{expanders} certified expanders, {systems} path systems, {checks} (i, path) counts, 0 violations"))
}

// Criterion 6 -----------------------------------------------------------

fn extremal_absences() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let k4 = dir.path().join("k4.el");
    std::fs::write(&k4, write_edge_list(&complete(4))).unwrap();
    for n in 1..=6 {
        let host = dir.path().join(format!("k2_{n}.el"));
        std::fs::write(&host, write_edge_list(&gen_complete_bipartite(n.min(2), n.max(2)).unwrap())).unwrap();
        let free = bin().args(["oracle", "k4free", "--host"]).arg(&host).output().unwrap();
        let minor = bin().args(["oracle", "minor", "--pattern"]).arg(&k4).arg("--host").arg(&host).output().unwrap();
        if free.status.code() != Some(1) || minor.status.code() != Some(1) {
            return Err(format!("K_2,{n}: exits {:?} / {:?}, want 1", free.status.code(), minor.status.code()));
        }
    }
    let pattern = gen_planar_with_k4s(8).map_err(|e| e.to_string())?.graph;
    let s = 3 * (8 / 4) - 1;
    let pat = dir.path().join("planar8.el");
    std::fs::write(&pat, write_edge_list(&pattern)).unwrap();
    for n in 1..=8 {
        let host = dir.path().join(format!("k{s}_{n}.el"));
        std::fs::write(&host, write_edge_list(&gen_complete_bipartite(s.min(n), s.max(n)).unwrap())).unwrap();
        let out = bin().args(["oracle", "minor", "--budget", "2000000000", "--pattern"]).arg(&pat).arg("--host").arg(&host).output().unwrap();
        if out.status.code() != Some(1) {
            return Err(format!("K_{s},{n}: exit {:?}, want 1 (proven absent)", out.status.code()));
        }
    }
    Ok(format!("K_2,n K4-minor-free for n <= 6; K_{s},n has no minor of the 8-vertex K4 chain for n <= 8"))
}

// Criterion 7 -----------------------------------------------------------

fn pipeline_agreement() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut embedded, mut absent, mut missed) = (0, 0, 0);
    for case in 0..100u64 {
        let hn = rng.gen_range(2..=6);
        let h = random_connected(hn, rng.gen_range(0..=hn), rng.gen());
        let gn = rng.gen_range(hn.max(4)..=14);
        let g = gnp(gn, rng.gen_range(0.2..0.8), rng.gen());
        let cfg = PipelineConfig { seed: case, ..PipelineConfig::default() };
        let out = embed_subdivision(&g, &h, &cfg).map_err(|e| format!("case {case}: {e}"))?;
        let truth = find_subdivision(&g, &h, SearchLimits::default());
        match (&out, &truth) {
            (EmbedOutcome::Embedded(c), _) => {
                if !independent_subdivision_check(&g, &h, &c.map) {
                    return Err(format!("case {case}: witness from {:?} does not validate", c.strategy));
                }
                if matches!(truth, SearchOutcome::Absent) {
                    return Err(format!("case {case}: pipeline embedded what the oracle proved absent"));
                }
                embedded += 1;
            }
            (EmbedOutcome::Failed(_), SearchOutcome::Found(_)) => missed += 1,
            (EmbedOutcome::Failed(_), _) => absent += 1,
        }
    }
    Ok(format!("100 pairs: {embedded} embedded and validated, {absent} agreed absent, {missed} missed, 0 contradictions"))
}

// Criterion 8 -----------------------------------------------------------

/// Contracts `merge` edges with a union-find and maps the classes through
/// `origin`; the result must be exactly `h`.
fn contracts_to(result: &Graph, merge: &[(usize, usize)], origin: &[usize], h: &Graph) -> Result<(), String> {
    let mut parent: Vec<usize> = (0..result.n()).collect();
    fn find(p: &mut Vec<usize>, v: usize) -> usize {
        if p[v] != v {
            let r = find(p, p[v]);
            p[v] = r;
        }
        p[v]
    }
    for &(a, b) in merge {
        if !result.has_edge(a, b) {
            return Err(format!("merge edge ({a}, {b}) is not in the result"));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut class_origin = vec![usize::MAX; result.n()];
    for v in 0..result.n() {
        let r = find(&mut parent, v);
        if class_origin[r] == usize::MAX {
            class_origin[r] = origin[v];
        } else if class_origin[r] != origin[v] {
            return Err("a contracted class mixes original vertices".into());
        }
    }
    let classes: HashSet<usize> = (0..result.n()).map(|v| find(&mut parent, v)).collect();
    if classes.len() != h.n() {
        return Err(format!("{} classes for {} vertices", classes.len(), h.n()));
    }
    let mut edges = BTreeSet::new();
    for (a, b) in result.edges() {
        let (x, y) = (origin[a], origin[b]);
        if x != y {
            edges.insert((x.min(y), x.max(y)));
        }
    }
    if edges != edge_set(h) {
        return Err("contracted edges differ from the pattern".into());
    }
    Ok(())
}

fn transform_round_trips() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut minors = 0;
    for case in 0..50 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..0.9);
        let h = random_graph(&mut rng, n, p);
        let cap = rng.gen_range(3..=4);
        let split = split_high_degree(&h, cap).map_err(|e| format!("case {case}: {e}"))?;
        if split.result.max_degree() > cap {
            return Err(format!("case {case}: split leaves degree {} > {cap}", split.result.max_degree()));
        }
        contracts_to(&split.result, &split.merge_edges, &split.origin, &h).map_err(|e| format!("case {case} split: {e}"))?;
        let classes = color_classes(&h, 18).map_err(|e| e.to_string())?;
        let doubled = bipartite_double(&h, &classes.a, &classes.b).map_err(|e| format!("case {case}: {e}"))?;
        if two_colouring(&doubled.result).is_none() {
            return Err(format!("case {case}: doubled graph is not bipartite"));
        }
        contracts_to(&doubled.result, &doubled.merge_edges, &doubled.origin, &h).map_err(|e| format!("case {case} double: {e}"))?;
        let host = doubled.contracted();
        match find_minor(&host, &h, SearchLimits::default()) {
            SearchOutcome::Found(_) => minors += 1,
            other => return Err(format!("case {case}: oracle says {} for h in the contracted host", other.label())),
        }
    }
    Ok(format!("50 patterns: splits contract back exactly, doubles bipartite, {minors} minors confirmed"))
}

// Criterion 9 -----------------------------------------------------------

fn brute_stats(g: &Graph) -> (usize, usize, usize) {
    let n = g.n();
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let independent = |s: u32| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0);
    let sets: Vec<u32> = (0u32..1 << n).filter(|&s| independent(s)).collect();
    let alpha = sets.iter().map(|s| s.count_ones()).max().unwrap() as usize;
    let mut alpha2 = 0;
    for &a in &sets {
        for &b in &sets {
            if a & b == 0 {
                alpha2 = alpha2.max((a | b).count_ones() as usize);
            }
        }
    }
    let chi = (1..=n)
        .find(|&k| {
            let mut colour = vec![0usize; n];
            fn go(v: usize, k: usize, colour: &mut Vec<usize>, adj: &[u32]) -> bool {
                if v == colour.len() {
                    return true;
                }
                for c in 0..k {
                    if (0..v).all(|u| adj[v] >> u & 1 == 0 || colour[u] != c) {
                        colour[v] = c;
                        if go(v + 1, k, colour, adj) {
                            return true;
                        }
                    }
                }
                false
            }
            go(0, k, &mut colour, &adj)
        })
        .unwrap_or(0);
    (alpha, alpha2, chi)
}

fn stats_sanity() -> Verdict {
    let mut corpus: Vec<Graph> = Vec::new();
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::from_edges(n, &e).unwrap();
            if g.is_connected() {
                corpus.push(g);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..300 {
        let n = rng.gen_range(6..=8);
        corpus.push(random_connected(n, rng.gen_range(0..=2 * n), rng.gen()));
    }
    for (i, f) in corpus.iter().enumerate() {
        let s = graph_stats(f, 18).map_err(|e| format!("graph {i}: {e}"))?;
        let (alpha, alpha2, chi) = brute_stats(f);
        let n = f.n();
        if (s.alpha, s.alpha2, s.chi) != (alpha, alpha2, chi) || !s.exact {
            return Err(format!("graph {i}: stats {s:?} vs brute force ({alpha}, {alpha2}, {chi})"));
        }
        if !(alpha <= alpha2 && alpha2 <= 2 * alpha && alpha2 <= n && chi * alpha >= n) {
            return Err(format!("graph {i}: invariants fail for {s:?}"));
        }
        let b = minor_degree_bounds(f, 18).map_err(|e| format!("graph {i}: {e}"))?;
        let t = n as i64;
        if b.lower != 2 * t - 2 * alpha as i64 - 2 || b.upper != 2 * t - alpha2 as i64 {
            return Err(format!("graph {i}: bounds {b:?} disagree with the formulas"));
        }
        if b.lower > b.upper {
            return Err(format!("graph {i}: bounds inverted: {b:?}"));
        }
    }
    Ok(format!("{} connected graphs on at most 8 vertices", corpus.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict, Duration); 9] = [
        ("planar bipartite subdivision exactness", planar_subdivision, Duration::from_secs(60)),
        ("expander extraction guarantees", expander_guarantees, Duration::MAX),
        ("exhaustive robust-expansion verification", robust_verification, Duration::from_secs(600)),
        ("partition postconditions", partition_postconditions, Duration::MAX),
        ("consecutive-shortest-path intersection law", intersection_law, Duration::MAX),
        ("extremal absences", extremal_absences, Duration::from_secs(300)),
        ("pipeline/oracle agreement", pipeline_agreement, Duration::MAX),
        ("transform round-trips", transform_round_trips, Duration::MAX),
        ("stats bound sanity", stats_sanity, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(s) if took > *limit => Err(format!("{s}; took {took:.1?}, limit {limit:?}")),
            v => v,
        };
        match verdict {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{took:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} [{took:.1?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
