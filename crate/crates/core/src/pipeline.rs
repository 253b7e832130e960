//! End-to-end subdivision embedding: extract an expander, then anchor on
//! high-degree vertices, webs or nakjis, and fall back to the exact search.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expander::{extract_expander, ExpanderCertificate, ExtractOptions, DEFAULT_C, DEFAULT_EXHAUSTIVE_CAP};
use crate::flow::disjoint_paths;
use crate::graph::{Graph, Path, VertexSet};
use crate::oracle::{find_subdivision, validate_subdivision, SearchLimits, SearchOutcome, SubdivisionMap};
use crate::structures::{build_nakjis, build_web, Built, Nakji, NakjiParams, Web, WebParams};

pub const EMBED_SCHEMA: &str = "subdiv.embed/1";

/// Every dial of the pipeline. The asymptotic couplings are replaced by
/// small explicit values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub eps1: f64,
    pub eps2: f64,
    pub c: f64,
    /// Largest pattern degree accepted.
    pub max_pattern_degree: usize,
    /// A vertex is high-degree when its degree is at least this multiple of
    /// the expander's average degree.
    pub high_degree_factor: f64,
    /// Anchor assignments tried by the high-degree strategy.
    pub routing_attempts: usize,
    pub web_h1: usize,
    pub web_h2: usize,
    pub web_h3: usize,
    /// Webs built beyond one per pattern vertex.
    pub spare_webs: usize,
    /// A web stays good while at most this many interior vertices are used.
    pub good_threshold: usize,
    pub nakji_s: usize,
    pub nakji_r: usize,
    pub nakji_tau: usize,
    /// Members of the subexpander family need at least this average degree.
    pub subexpander_min_degree: f64,
    pub structure_budget: usize,
    pub oracle_budget: u64,
    pub exhaustive_cap: usize,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            eps1: 0.003,
            eps2: 0.25,
            c: DEFAULT_C,
            max_pattern_degree: 8,
            high_degree_factor: 1.0,
            routing_attempts: 8,
            web_h1: 2,
            web_h2: 2,
            web_h3: 2,
            spare_webs: 2,
            good_threshold: 0,
            nakji_s: 6,
            nakji_r: 1,
            nakji_tau: 2,
            subexpander_min_degree: 2.0,
            structure_budget: 2_000_000,
            oracle_budget: 20_000_000,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn check(&self) -> Result<()> {
        let positive = [self.eps1, self.eps2, self.c, self.high_degree_factor, self.subexpander_min_degree];
        if positive.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::Invalid("pipeline parameters must be positive".into()));
        }
        if self.max_pattern_degree == 0 || self.web_h3 == 0 || self.nakji_s == 0 || self.routing_attempts == 0 {
            return Err(Error::Invalid("pipeline counts must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    HighDegree,
    Web,
    Nakji,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub strategy: Strategy,
    pub succeeded: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderSummary {
    pub vertices: VertexSet,
    pub avg_degree: f64,
    pub min_degree: usize,
    pub passed: bool,
    pub exhaustive: bool,
    /// Witness sets are in ids of the extracted subgraph.
    pub certificate: ExpanderCertificate,
}

/// One member of a separated family of expanders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subexpander {
    pub vertices: VertexSet,
    pub avg_degree: f64,
    /// Witness sets are in ids of the member itself.
    pub certificate: ExpanderCertificate,
}

/// Structures the winning strategy was built on, in host ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifacts {
    pub anchors: Vec<usize>,
    pub webs: Vec<Web>,
    pub evicted_webs: Vec<usize>,
    pub nakjis: Vec<Nakji>,
    /// Times the avoidance set was re-derived and matched.
    pub avoidance_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedCertificate {
    pub schema: String,
    pub config: PipelineConfig,
    pub strategy: Strategy,
    pub expander: Option<ExpanderSummary>,
    pub artifacts: Artifacts,
    pub map: SubdivisionMap,
    pub reports: Vec<StrategyReport>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedFailure {
    pub schema: String,
    pub reports: Vec<StrategyReport>,
    /// `absent`, `timeout` or `skipped`.
    pub oracle: String,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EmbedOutcome {
    Embedded(Box<EmbedCertificate>),
    Failed(EmbedFailure),
}

impl EmbedOutcome {
    pub fn certificate(&self) -> Option<&EmbedCertificate> {
        match self {
            EmbedOutcome::Embedded(c) => Some(c),
            EmbedOutcome::Failed(_) => None,
        }
    }

    /// The exact search proved there is no subdivision.
    pub fn proven_absent(&self) -> bool {
        matches!(self, EmbedOutcome::Failed(f) if f.oracle == "absent")
    }
}

/// A strategy's embedding in local ids of the graph it ran on.
#[derive(Debug)]
struct Local {
    anchors: Vec<usize>,
    paths: Vec<Vec<usize>>,
    artifacts: Artifacts,
}

pub fn embed_subdivision(g: &Graph, h: &Graph, config: &PipelineConfig) -> Result<EmbedOutcome> {
    config.check()?;
    if h.n() == 0 {
        return Err(Error::Invalid("pattern has no vertices".into()));
    }
    if h.max_degree() > config.max_pattern_degree {
        return Err(Error::Precondition(format!(
            "pattern maximum degree {} exceeds the cap {}",
            h.max_degree(),
            config.max_pattern_degree
        )));
    }
    let mut warnings = Vec::new();
    if !h.is_bipartite() {
        warnings.push("pattern is not bipartite; only the exact search is guaranteed to apply".into());
    }
    let mut reports = Vec::new();
    let opts = ExtractOptions { c: config.c, exhaustive_cap: config.exhaustive_cap, trials: 96, seed: config.seed };
    let extraction = if g.m() == 0 { None } else { extract_expander(g, config.eps1, config.eps2, opts).ok() };
    let summary = extraction.as_ref().map(|x| ExpanderSummary {
        vertices: x.vertices(),
        avg_degree: x.avg_degree,
        min_degree: x.min_degree,
        passed: x.certificate.passed,
        exhaustive: x.certificate.is_exhaustive(),
        certificate: x.certificate.clone(),
    });
    if let Some(x) = &extraction {
        let local = &x.subgraph.graph;
        let to_host = &x.subgraph.to_host;
        let attempts: [(Strategy, &dyn Fn() -> std::result::Result<Local, String>); 3] = [
            (Strategy::HighDegree, &|| high_degree(local, h, config)),
            (Strategy::Web, &|| web_anchoring(local, h, config)),
            (Strategy::Nakji, &|| nakji_wiring(local, h, config)),
        ];
        for (strategy, run) in attempts {
            match run() {
                Ok(found) => {
                    let map = to_host_map(h, &found, to_host);
                    match validate_subdivision(g, h, &map) {
                        Ok(()) => {
                            reports.push(StrategyReport { strategy, succeeded: true, detail: "validated against the host".into() });
                            let mut artifacts = found.artifacts;
                            relabel_artifacts(&mut artifacts, to_host);
                            return Ok(EmbedOutcome::Embedded(Box::new(EmbedCertificate {
                                schema: EMBED_SCHEMA.into(),
                                config: config.clone(),
                                strategy,
                                expander: summary,
                                artifacts,
                                map,
                                reports,
                                warnings,
                            })));
                        }
                        Err(v) => return Err(Error::Internal(format!("{strategy:?} produced an invalid subdivision: {v}"))),
                    }
                }
                Err(detail) => reports.push(StrategyReport { strategy, succeeded: false, detail }),
            }
        }
    } else {
        reports.push(StrategyReport {
            strategy: Strategy::HighDegree,
            succeeded: false,
            detail: "no expander could be extracted".into(),
        });
    }
    match find_subdivision(g, h, SearchLimits { node_budget: config.oracle_budget }) {
        SearchOutcome::Found(map) => {
            validate_subdivision(g, h, &map).map_err(|v| Error::Internal(format!("oracle witness invalid: {v}")))?;
            reports.push(StrategyReport { strategy: Strategy::Oracle, succeeded: true, detail: "exact search".into() });
            Ok(EmbedOutcome::Embedded(Box::new(EmbedCertificate {
                schema: EMBED_SCHEMA.into(),
                config: config.clone(),
                strategy: Strategy::Oracle,
                expander: summary,
                artifacts: Artifacts { anchors: map.anchors.clone(), ..Artifacts::default() },
                map,
                reports,
                warnings,
            })))
        }
        outcome => {
            let label = outcome.label();
            reports.push(StrategyReport { strategy: Strategy::Oracle, succeeded: false, detail: label.into() });
            Ok(EmbedOutcome::Failed(EmbedFailure { schema: EMBED_SCHEMA.into(), reports, oracle: label.into(), warnings }))
        }
    }
}

impl Default for Artifacts {
    fn default() -> Self {
        Artifacts { anchors: Vec::new(), webs: Vec::new(), evicted_webs: Vec::new(), nakjis: Vec::new(), avoidance_checks: 0 }
    }
}

fn to_host_map(h: &Graph, found: &Local, to_host: &[usize]) -> SubdivisionMap {
    let anchors = found.anchors.iter().map(|&v| to_host[v]).collect();
    let paths = found.paths.iter().map(|p| Path::unchecked(p.iter().map(|&v| to_host[v]).collect())).collect();
    SubdivisionMap::new(h, anchors, paths)
}

fn relabel_artifacts(a: &mut Artifacts, to_host: &[usize]) {
    let set = |s: &VertexSet| -> VertexSet { s.iter().map(|v| to_host[v]).collect() };
    let path = |p: &Path| Path::unchecked(p.vertices().iter().map(|&v| to_host[v]).collect());
    a.anchors.iter_mut().for_each(|v| *v = to_host[*v]);
    for w in &mut a.webs {
        w.core = to_host[w.core];
        w.arms = w.arms.iter().map(path).collect();
        for u in &mut w.units {
            u.core = to_host[u.core];
            u.spokes = u.spokes.iter().map(path).collect();
            for s in &mut u.stars {
                s.center = to_host[s.center];
                s.leaves.iter_mut().for_each(|v| *v = to_host[*v]);
            }
        }
    }
    for nk in &mut a.nakjis {
        nk.head = set(&nk.head);
        nk.legs = nk.legs.iter().map(set).collect();
        nk.arms = nk.arms.iter().map(path).collect();
    }
}

/// Anchors the pattern at high-degree vertices and routes each pattern
/// edge in turn, avoiding the anchors and every earlier path's interior.
fn high_degree(g: &Graph, h: &Graph, config: &PipelineConfig) -> std::result::Result<Local, String> {
    let d = g.avg_degree_f64();
    let mut high: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) as f64 >= config.high_degree_factor * d).collect();
    if high.len() < h.n() {
        return Err(format!("{} high-degree vertices for {} pattern vertices", high.len(), h.n()));
    }
    high.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = 0;
    let mut last = String::new();
    for attempt in 0..config.routing_attempts {
        let mut pool = high.clone();
        if attempt > 0 {
            pool.shuffle(&mut rng);
        }
        let mut anchors = vec![0; h.n()];
        for (i, &x) in order.iter().enumerate() {
            anchors[x] = pool[i];
        }
        match route_all(g, h, &anchors, &mut checks) {
            Ok(paths) => {
                return Ok(Local {
                    artifacts: Artifacts { anchors: anchors.clone(), avoidance_checks: checks, ..Artifacts::default() },
                    anchors,
                    paths,
                })
            }
            Err(e) => last = e,
        }
    }
    Err(format!("routing failed in {} assignments: {last}", config.routing_attempts))
}

fn route_all(g: &Graph, h: &Graph, anchors: &[usize], checks: &mut usize) -> std::result::Result<Vec<Vec<usize>>, String> {
    let n = g.n();
    let mut avoid = vec![false; n];
    for &z in anchors {
        avoid[z] = true;
    }
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for (a, b) in h.edges() {
        let (za, zb) = (anchors[a], anchors[b]);
        let mut wall = avoid.clone();
        wall[za] = false;
        wall[zb] = false;
        let mut to = vec![false; n];
        to[zb] = true;
        let p = g.shortest_path(&[za], &to, &wall).ok_or_else(|| format!("no path for pattern edge ({a}, {b})"))?;
        for &v in &p[1..p.len() - 1] {
            avoid[v] = true;
        }
        paths.push(p);
        let mut derived = vec![false; n];
        for &z in anchors {
            derived[z] = true;
        }
        for q in &paths {
            for &v in &q[1..q.len() - 1] {
                derived[v] = true;
            }
        }
        if derived != avoid {
            return Err("avoidance set drifted from anchors plus path interiors".into());
        }
        *checks += 1;
    }
    Ok(paths)
}

/// Embeds the pattern one vertex at a time on good webs. A new vertex takes
/// the first good unused web and links to its embedded neighbours through
/// web exteriors, never touching a web centre or an anchored web's
/// interior. Webs whose interior is used beyond the threshold are evicted.
fn web_anchoring(g: &Graph, h: &Graph, config: &PipelineConfig) -> std::result::Result<Local, String> {
    let n = g.n();
    let params = WebParams { h0: h.max_degree().max(1), h1: config.web_h1, h2: config.web_h2, h3: config.web_h3 };
    let mut webs: Vec<Web> = Vec::new();
    let mut taken = VertexSet::new();
    while webs.len() < h.n() + config.spare_webs {
        match build_web(g, &taken, params, config.structure_budget) {
            Built::Found { structure, .. } => {
                taken = taken.union(&structure.vertices());
                webs.push(structure);
            }
            Built::Failed { reason, .. } => {
                if webs.len() < h.n() {
                    return Err(format!("built {} of {} webs: {reason}", webs.len(), h.n()));
                }
                break;
            }
        }
    }
    let interiors: Vec<VertexSet> = webs.iter().map(|w| w.parts().interior).collect();
    let mut centre = vec![false; n];
    for w in &webs {
        for v in w.parts().centre.iter() {
            centre[v] = true;
        }
    }
    let mut used = vec![false; n];
    let mut evicted = vec![false; webs.len()];
    let mut web_of = vec![usize::MAX; h.n()];
    let mut free_arms: Vec<Vec<bool>> = webs.iter().map(|w| vec![true; w.arms.len()]).collect();
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; h.m()];
    let edges = h.edges();
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    for &x in &order {
        let Some(k) = (0..webs.len()).find(|&k| !evicted[k] && !web_of.contains(&k)) else {
            return Err(format!("no good web left for pattern vertex {x}"));
        };
        web_of[x] = k;
        for (e, &(a, b)) in edges.iter().enumerate() {
            let y = if a == x { b } else if b == x { a } else { continue };
            if web_of[y] == usize::MAX || y == x {
                continue;
            }
            let (ka, kb) = (k, web_of[y]);
            let anchored: Vec<bool> = (0..webs.len()).map(|i| web_of.contains(&i)).collect();
            let mut wall = used.clone();
            for (i, int) in interiors.iter().enumerate() {
                for v in int.iter() {
                    if centre[v] || anchored[i] {
                        wall[v] = true;
                    }
                }
            }
            let ends_a = open_exterior(&webs[ka], &free_arms[ka], &used);
            let ends_b = open_exterior(&webs[kb], &free_arms[kb], &used);
            let mut to = vec![false; n];
            for &(v, _) in &ends_b {
                to[v] = true;
                wall[v] = false;
            }
            let sources: Vec<usize> = ends_a.iter().map(|&(v, _)| v).collect();
            for &v in &sources {
                wall[v] = false;
            }
            let link = g
                .shortest_path(&sources, &to, &wall)
                .ok_or_else(|| format!("no exterior link between webs {ka} and {kb} for pattern edge ({a}, {b})"))?;
            let (w0, w1) = (link[0], *link.last().unwrap());
            let arm_a = ends_a.iter().find(|&&(v, _)| v == w0).unwrap().1;
            let arm_b = ends_b.iter().find(|&&(v, _)| v == w1).unwrap().1;
            let mut full = webs[ka].path_to(w0).unwrap().into_vec();
            full.extend_from_slice(&link[1..]);
            let back = webs[kb].path_to(w1).unwrap().into_vec();
            full.extend(back.iter().rev().skip(1));
            free_arms[ka][arm_a] = false;
            free_arms[kb][arm_b] = false;
            for &v in &full {
                used[v] = true;
            }
            if a == x {
                paths[e] = Some(full);
            } else {
                full.reverse();
                paths[e] = Some(full);
            }
            for i in 0..webs.len() {
                let hit = interiors[i].iter().filter(|&v| used[v]).count();
                if !anchored[i] && !evicted[i] && hit > config.good_threshold {
                    evicted[i] = true;
                }
            }
        }
    }
    let anchors: Vec<usize> = (0..h.n()).map(|x| webs[web_of[x]].core).collect();
    let paths: Vec<Vec<usize>> = paths.into_iter().map(|p| p.expect("every edge routed")).collect();
    let paths = orient(h, &anchors, paths);
    Ok(Local {
        artifacts: Artifacts {
            anchors: anchors.clone(),
            evicted_webs: (0..webs.len()).filter(|&i| evicted[i]).collect(),
            webs,
            ..Artifacts::default()
        },
        anchors,
        paths,
    })
}

/// Exterior vertices reachable through a free arm whose path from the core
/// is untouched, with the arm index.
fn open_exterior(web: &Web, free: &[bool], used: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, unit) in web.units.iter().enumerate() {
        if !free[i] {
            continue;
        }
        for w in unit.exterior().iter() {
            let p = web.path_to(w).unwrap();
            if p.vertices()[1..].iter().all(|&v| !used[v]) {
                out.push((w, i));
            }
        }
    }
    out
}

/// Puts each path in the direction of its pattern edge.
fn orient(h: &Graph, anchors: &[usize], paths: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    h.edges()
        .into_iter()
        .zip(paths)
        .map(|((a, _), mut p)| {
            if p[0] != anchors[a] {
                p.reverse();
            }
            p
        })
        .collect()
}

/// Separated expanders grown one after another: each is extracted from
/// `g - avoid` minus the `separation`-balls of earlier members, until a
/// member's average degree drops below `min_avg_degree`.
pub fn subexpander_family(
    g: &Graph,
    avoid: &VertexSet,
    min_avg_degree: f64,
    separation: usize,
    config: &PipelineConfig,
) -> Vec<Subexpander> {
    let mut out: Vec<Subexpander> = Vec::new();
    let mut blocked = avoid.clone();
    loop {
        let rest = g.remove_vertices(&blocked);
        if rest.graph.m() == 0 {
            return out;
        }
        let opts = ExtractOptions {
            c: config.c,
            exhaustive_cap: config.exhaustive_cap,
            trials: 48,
            seed: config.seed.wrapping_add(out.len() as u64),
        };
        let Ok(x) = extract_expander(&rest.graph, config.eps1, config.eps2, opts) else {
            return out;
        };
        if x.avg_degree < min_avg_degree || x.subgraph.graph.n() == 0 {
            return out;
        }
        let member: VertexSet = x.vertices().iter().map(|v| rest.to_host[v]).collect();
        blocked = blocked.union(&g.ball(&member, separation, &VertexSet::new()));
        out.push(Subexpander { vertices: member, avg_degree: x.avg_degree, certificate: x.certificate });
    }
}

/// Nakjis as anchors: legs of different nakjis are linked by avoidance
/// paths, then each head realises a star from one of its vertices to the
/// arms it uses.
fn nakji_wiring(g: &Graph, h: &Graph, config: &PipelineConfig) -> std::result::Result<Local, String> {
    let n = g.n();
    let params = NakjiParams { t: h.max_degree().max(1), s: config.nakji_s, r: config.nakji_r, tau: config.nakji_tau };
    let family = subexpander_family(g, &VertexSet::new(), config.subexpander_min_degree, 2 * params.tau, config);
    if family.len() < h.n() * (params.t + 1) {
        return Err(format!("{} subexpanders, need {}", family.len(), h.n() * (params.t + 1)));
    }
    let family: Vec<VertexSet> = family.into_iter().map(|f| f.vertices).collect();
    let built = build_nakjis(g, &VertexSet::new(), params, h.n(), &family);
    if built.nakjis.len() < h.n() {
        return Err(format!("built {} of {} nakjis", built.nakjis.len(), h.n()));
    }
    let nakjis = built.nakjis;
    let mut used = vec![false; n];
    let mut frame = vec![false; n];
    for nk in &nakjis {
        for v in nk.vertices().iter() {
            frame[v] = true;
        }
    }
    let mut free_legs: Vec<Vec<bool>> = nakjis.iter().map(|nk| vec![true; nk.legs.len()]).collect();
    // Per edge: the arm used at each end and the walk from arm end to arm end.
    let mut links: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (a, b) in h.edges() {
        let leg_ends = |k: usize, free: &[bool]| -> Vec<(usize, usize)> {
            (0..nakjis[k].legs.len()).filter(|&i| free[i]).flat_map(|i| nakjis[k].legs[i].iter().map(move |v| (v, i))).collect()
        };
        let (ea, eb) = (leg_ends(a, &free_legs[a]), leg_ends(b, &free_legs[b]));
        let mut wall: Vec<bool> = (0..n).map(|v| used[v] || frame[v]).collect();
        let mut to = vec![false; n];
        for &(v, _) in &eb {
            to[v] = true;
            wall[v] = false;
        }
        let sources: Vec<usize> = ea.iter().map(|&(v, _)| v).collect();
        for &v in &sources {
            wall[v] = false;
        }
        let link = g.shortest_path(&sources, &to, &wall).ok_or_else(|| format!("no leg link for pattern edge ({a}, {b})"))?;
        if link.len() - 1 > 10 * params.r.max(1) {
            return Err(format!("leg link for pattern edge ({a}, {b}) has length {}", link.len() - 1));
        }
        let ia = ea.iter().find(|&&(v, _)| v == link[0]).unwrap().1;
        let ib = eb.iter().find(|&&(v, _)| v == *link.last().unwrap()).unwrap().1;
        let inside = |k: usize, i: usize, from: usize, to_v: usize| -> Option<Vec<usize>> {
            let leg = &nakjis[k].legs[i];
            let wall: Vec<bool> = (0..n).map(|v| !leg.contains(v)).collect();
            let mut t = vec![false; n];
            t[to_v] = true;
            g.shortest_path(&[from], &t, &wall)
        };
        let arm_a = nakjis[a].arms[ia].vertices();
        let arm_b = nakjis[b].arms[ib].vertices();
        let la = inside(a, ia, *arm_a.last().unwrap(), link[0]).ok_or("leg is not internally connected")?;
        let lb = inside(b, ib, *link.last().unwrap(), *arm_b.last().unwrap()).ok_or("leg is not internally connected")?;
        let mut walk: Vec<usize> = arm_a.to_vec();
        walk.extend_from_slice(&la[1..]);
        walk.extend_from_slice(&link[1..]);
        walk.extend_from_slice(&lb[1..]);
        walk.extend(arm_b.iter().rev().skip(1));
        for &v in &link {
            used[v] = true;
        }
        free_legs[a][ia] = false;
        free_legs[b][ib] = false;
        links.push((ia, ib, walk));
    }
    // Stars inside each head, from one head vertex to the arm starts used.
    let mut anchors = vec![usize::MAX; h.n()];
    let mut star_paths: Vec<std::collections::HashMap<usize, Vec<usize>>> = vec![Default::default(); h.n()];
    for x in 0..h.n() {
        let head = &nakjis[x].head;
        let starts: Vec<usize> = h
            .edges()
            .iter()
            .zip(&links)
            .filter_map(|(&(a, b), &(ia, ib, _))| {
                if a == x {
                    Some(nakjis[x].arms[ia].start())
                } else if b == x {
                    Some(nakjis[x].arms[ib].start())
                } else {
                    None
                }
            })
            .collect();
        let allowed: Vec<bool> = (0..n).map(|v| head.contains(v)).collect();
        let found = head.iter().find_map(|u| {
            let targets: Vec<usize> = starts.iter().copied().filter(|&s| s != u).collect();
            let distinct: VertexSet = targets.iter().copied().collect();
            if distinct.len() != targets.len() || starts.iter().filter(|&&s| s == u).count() > 1 {
                return None;
            }
            let ps = disjoint_paths(g, u, &targets, &allowed);
            (ps.len() == targets.len()).then(|| (u, ps))
        });
        let Some((u, ps)) = found else {
            return Err(format!("head of nakji {x} has no star to its arms"));
        };
        anchors[x] = u;
        star_paths[x].insert(u, vec![u]);
        for p in ps {
            star_paths[x].insert(*p.last().unwrap(), p);
        }
    }
    let mut paths = Vec::new();
    for (&(a, b), (_, _, walk)) in h.edges().iter().zip(&links) {
        let mut full = star_paths[a][&walk[0]].clone();
        full.extend_from_slice(&walk[1..]);
        let back = &star_paths[b][walk.last().unwrap()];
        full.extend(back.iter().rev().skip(1));
        paths.push(full);
    }
    Ok(Local {
        artifacts: Artifacts { anchors: anchors.clone(), nakjis, ..Artifacts::default() },
        anchors,
        paths,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorPacking {
    pub anchors: VertexSet,
    pub requested: usize,
    pub deficiency: usize,
}

/// Greedy packing of anchors at pairwise distance at least `min_dist`:
/// repeatedly the smallest vertex outside the open `min_dist`-balls of the
/// anchors chosen so far.
pub fn far_apart_anchors(g: &Graph, count: usize, min_dist: usize) -> AnchorPacking {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut anchors = Vec::new();
    let none = vec![false; n];
    while anchors.len() < count {
        let Some(v) = (0..n).find(|&v| !covered[v]) else { break };
        anchors.push(v);
        covered[v] = true;
        if min_dist > 0 {
            let dist = g.bfs(&[v], &none, min_dist - 1);
            for (u, &d) in dist.iter().enumerate() {
                if d < min_dist {
                    covered[u] = true;
                }
            }
        }
    }
    AnchorPacking { deficiency: count - anchors.len(), anchors: anchors.into_iter().collect(), requested: count }
}
