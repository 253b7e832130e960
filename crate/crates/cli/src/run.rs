use std::fmt::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use subdiv_core::dot;
use subdiv_core::expander::{extract_expander, verify_robust_expander, ExpanderParams, ExtractOptions, VerifyMode};
use subdiv_core::extremal::{gen_complete_bipartite, gen_disjoint_cliques, gen_grid, gen_planar_with_k4s, graph_stats, minor_degree_bounds};
use subdiv_core::hpartition::{bandwidth_order, check_separable, partition_onto_odd_cycle, partition_onto_sun, validate_plan, PartitionPlan};
use subdiv_core::oracle::{find_minor, find_subdivision, is_k4_minor_free, validate_minor, validate_subdivision, SearchLimits, SearchOutcome};
use subdiv_core::pathfinder::{check_path_intersection_bound, connect_avoiding, consecutive_shortest_paths, growth_profile};
use subdiv_core::pipeline::{embed_subdivision, subexpander_family, EmbedOutcome, PipelineConfig};
use subdiv_core::planar::{bipartite_subdivision, one_sided_subdivision, write_embedding, SubdivisionResult};
use subdiv_core::structures::{
    build_nakjis, build_unit, build_web, find_disjoint_stars, validate_nakji, validate_unit, validate_web, Built, NakjiParams, Sun,
    UnitParams, WebParams, DEFAULT_BUDGET,
};
use subdiv_core::transforms::{bipartite_double, color_classes, split_high_degree, ReductionTrace};
use subdiv_core::{write_edge_list, Graph, VertexSet};

use crate::args::{Build, Command, Format, Gen, Global, Oracle, Partition, Transform};
use crate::io::{lib_error, list, vertex_set, CliError, Inputs, Report, Status};

pub fn dispatch(command: &Command, global: &Global, inputs: &mut Inputs) -> Result<Report, CliError> {
    match command {
        Command::ExtractExpander { host, eps1, eps2, c, trials } => {
            let g = inputs.graph(&host.host)?;
            let opts = ExtractOptions { c: *c, exhaustive_cap: global.exhaustive_cap, trials: *trials, seed: global.seed };
            let x = extract_expander(&g, *eps1, *eps2, opts).map_err(|e| lib_error("extract-expander", e))?;
            let status = if x.certificate.passed { Status::Found } else { Status::Absent };
            let vertices = x.vertices();
            let text = format!(
                "vertices {}\naverage degree {:.4} (host {:.4})\nminimum degree {}\ndelta {:.6}\nverified {} ({})\n",
                vertices.len(),
                x.avg_degree,
                x.host_avg_degree,
                x.min_degree,
                x.delta,
                x.certificate.passed,
                if x.certificate.is_exhaustive() { "exhaustive" } else { "sampled" },
            );
            let mut d = dot::Dot::new();
            d.vertices(vertices.iter(), &format!("fillcolor={}", dot::CENTRE));
            for (u, v) in x.subgraph.graph.edges() {
                d.edge(x.subgraph.to_host[u], x.subgraph.to_host[v], "color=black, penwidth=2.5");
            }
            Ok(Report::new("subdiv.expander.extract/1", status, &x, text).with_dot(d.render(&g, "expander")))
        }
        Command::VerifyExpander { host, eps1, t, c, sampled } => {
            let g = inputs.graph(&host.host)?;
            let params = ExpanderParams::new(*eps1, *t).map_err(|e| lib_error("verify-expander", e))?.with_c(*c);
            let mode = match sampled {
                Some(trials) => VerifyMode::Sampled { trials: *trials, seed: global.seed },
                None => VerifyMode::Exhaustive { cap: global.exhaustive_cap },
            };
            let cert = verify_robust_expander(&g, &params, mode).map_err(|e| lib_error("verify-expander", e))?;
            let status = if cert.passed { Status::Found } else { Status::Absent };
            let text = match &cert.counterexample {
                None => format!("passed after {} sets\n", cert.checked_sets),
                Some(w) => format!("failed at X = {{{}}}\n", list(w.x.iter())),
            };
            Ok(Report::new("subdiv.expander.verify/1", status, &cert, text))
        }
        Command::Connect { host, from, to, avoid } => {
            let g = inputs.graph(&host.host)?;
            let x1 = vertex_set(&g, from, "from")?;
            let x2 = vertex_set(&g, to, "to")?;
            let w = vertex_set(&g, avoid, "avoid")?;
            let path = connect_avoiding(&g, &x1, &x2, &w);
            let mut d = dot::Dot::new();
            if let Some(p) = &path {
                d.walk(p.vertices(), "color=royalblue, penwidth=2.5");
            }
            d.vertices(w.iter(), "fillcolor=grey60");
            let (status, text) = match &path {
                Some(p) => (Status::Found, format!("{}\n", list(p.vertices().iter().copied()))),
                None => (Status::Absent, "no path\n".into()),
            };
            Ok(Report::new("subdiv.connect/1", status, json!({ "path": path }), text).with_dot(d.render(&g, "connect")))
        }
        Command::Grow { host, source, avoid, radius, count } => {
            let g = inputs.graph(&host.host)?;
            let x = vertex_set(&g, source, "source")?;
            let y = vertex_set(&g, avoid, "avoid")?;
            let ps = consecutive_shortest_paths(&g, &x, *radius, &y, *count).map_err(|e| lib_error("grow", e))?;
            let profile = growth_profile(&g, &x, &y, &ps, *radius, None);
            let check = check_path_intersection_bound(&g, &x, &y, &ps, *radius);
            let mut text = format!("{} of {} paths\nball sizes {}\n", ps.paths.len(), ps.requested, list(profile.sizes.iter().copied()));
            let (status, report, violation) = match check {
                Ok(r) => (Status::Found, r, None),
                Err(v) => {
                    writeln!(text, "{v}").unwrap();
                    (Status::Absent, v.report.clone(), Some(v))
                }
            };
            let result = json!({ "paths": ps, "profile": profile, "intersections": report, "violation": violation });
            Ok(Report::new("subdiv.grow/1", status, result, text))
        }
        Command::Build { kind } => build(kind, global, inputs),
        Command::Partition { target } => partition(target, global, inputs),
        Command::Separable { pattern, alpha } => {
            let h = inputs.graph(&pattern.pattern)?;
            let sep = check_separable(&h, *alpha).map_err(|e| lib_error("separable", e))?;
            let (status, text) = match (&sep.separator, sep.exact) {
                (Some(s), _) => (Status::Found, format!("separator {{{}}} (cap {})\n", list(s.iter()), sep.cap)),
                (None, true) => (Status::Absent, format!("no separator within cap {}\n", sep.cap)),
                (None, false) => (Status::Timeout, "no separator found by the heuristic search\n".into()),
            };
            Ok(Report::new("subdiv.separable/1", status, &sep, text))
        }
        Command::Transform { kind } => {
            let (h, trace) = match kind {
                Transform::Split { pattern, max_degree } => {
                    let h = inputs.graph(&pattern.pattern)?;
                    let t = split_high_degree(&h, *max_degree).map_err(|e| lib_error("transform split", e))?;
                    (h, t)
                }
                Transform::Double { pattern, a, b } => {
                    let h = inputs.graph(&pattern.pattern)?;
                    let (a, b) = match (a, b) {
                        (Some(a), Some(b)) => (vertex_set(&h, a, "a")?, vertex_set(&h, b, "b")?),
                        (None, None) => {
                            let c = color_classes(&h, global.exhaustive_cap).map_err(|e| lib_error("transform double", e))?;
                            (c.a, c.b)
                        }
                        _ => return Err(CliError::input("give both --a and --b or neither")),
                    };
                    let t = bipartite_double(&h, &a, &b).map_err(|e| lib_error("transform double", e))?;
                    (h, t)
                }
            };
            Ok(trace_report(&h, trace))
        }
        Command::PlanarSubdivide { embedding } => {
            let emb = inputs.embedding(embedding)?;
            let sub = bipartite_subdivision(&emb).map_err(|e| lib_error("planar-subdivide", e))?;
            Ok(subdivision_report("subdiv.planar.subdivide/1", sub))
        }
        Command::OneSidedSubdivide { pattern, x } => {
            let h = inputs.graph(&pattern.pattern)?;
            vertex_set(&h, x, "x")?;
            let sub = one_sided_subdivision(&h, x).map_err(|e| lib_error("one-sided-subdivide", e))?;
            Ok(subdivision_report("subdiv.planar.one_sided/1", sub))
        }
        Command::Gen { kind } => generate(kind),
        Command::Stats { host } => {
            let g = inputs.graph(&host.host)?;
            let s = graph_stats(&g, global.exhaustive_cap).map_err(|e| lib_error("stats", e))?;
            let text = format!("n {}\nalpha {}\nalpha2 {}\nchi {}\nexact {}\n", s.n, s.alpha, s.alpha2, s.chi, s.exact);
            Ok(Report::new("subdiv.stats/1", Status::Found, s, text))
        }
        Command::Bounds { pattern } => {
            let f = inputs.graph(&pattern.pattern)?;
            let b = minor_degree_bounds(&f, global.exhaustive_cap).map_err(|e| lib_error("bounds", e))?;
            let text = format!("lower {}\nupper {}\nexact {}\n", b.lower, b.upper, b.exact);
            Ok(Report::new("subdiv.bounds/1", Status::Found, b, text))
        }
        Command::Oracle { kind } => oracle(kind, global, inputs),
        Command::Embed { host, pattern, config, emit_dot } => {
            let g = inputs.graph(&host.host)?;
            let h = inputs.graph(&pattern.pattern)?;
            let mut cfg: PipelineConfig = match config {
                Some(p) => inputs.json(p)?,
                None => PipelineConfig::default(),
            };
            cfg.seed = global.seed;
            cfg.exhaustive_cap = global.exhaustive_cap;
            if let Some(b) = global.budget {
                cfg.oracle_budget = b;
                cfg.structure_budget = b as usize;
            }
            let out = embed_subdivision(&g, &h, &cfg).map_err(|e| lib_error("embed", e))?;
            let (status, text, dot) = match &out {
                EmbedOutcome::Embedded(c) => {
                    let mut text = format!("embedded by {:?}\n", c.strategy);
                    for (e, bp) in c.map.paths.iter().enumerate() {
                        writeln!(text, "edge {e}: {}", list(bp.path.vertices().iter().copied())).unwrap();
                    }
                    (Status::Found, text, Some(dot::subdivision_dot(&g, &c.map)))
                }
                EmbedOutcome::Failed(f) => {
                    let status = if f.oracle == "absent" { Status::Absent } else { Status::Timeout };
                    let mut text = format!("no embedding; exact search {}\n", f.oracle);
                    for r in &f.reports {
                        writeln!(text, "{:?}: {}", r.strategy, r.detail).unwrap();
                    }
                    (status, text, None)
                }
            };
            if let (Some(path), Some(d)) = (emit_dot, &dot) {
                write_file(path, d)?;
            }
            let report = Report::new("subdiv.embed/1", status, &out, text);
            Ok(match dot {
                Some(d) => report.with_dot(d),
                None => report,
            })
        }
        Command::Replay { .. } => unreachable!("handled by the manifest layer"),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn structure_budget(global: &Global) -> usize {
    global.budget.map_or(DEFAULT_BUDGET, |b| b as usize)
}

fn built_status<T>(b: &Built<T>) -> Status {
    match b {
        Built::Found { .. } => Status::Found,
        Built::Failed { budget_exhausted: true, .. } => Status::Timeout,
        Built::Failed { .. } => Status::Absent,
    }
}

fn built_text<T>(b: &Built<T>, summary: impl Fn(&T) -> String) -> String {
    match b {
        Built::Found { structure, .. } => summary(structure),
        Built::Failed { reason, .. } => format!("failed: {reason}\n"),
    }
}

fn build(kind: &Build, global: &Global, inputs: &mut Inputs) -> Result<Report, CliError> {
    match kind {
        Build::Star { host, avoid, count, leaves } => {
            let g = inputs.graph(&host.host)?;
            let avoid = vertex_set(&g, avoid, "avoid")?;
            let harvest = find_disjoint_stars(&g, &avoid, *count, *leaves);
            let status = if harvest.complete() { Status::Found } else { Status::Absent };
            let mut text = String::new();
            let mut d = dot::Dot::new();
            for s in &harvest.stars {
                writeln!(text, "{}: {}", s.center, list(s.leaves.iter().copied())).unwrap();
                d.vertex(s.center, format!("fillcolor={}", dot::CENTRE));
                for &l in &s.leaves {
                    d.vertex(l, format!("fillcolor={}", dot::EXTERIOR));
                    d.edge(s.center, l, "color=black, penwidth=2.5");
                }
            }
            if harvest.deficiency > 0 {
                writeln!(text, "deficiency {}", harvest.deficiency).unwrap();
            }
            Ok(Report::new("subdiv.build.star/1", status, &harvest, text).with_dot(d.render(&g, "stars")))
        }
        Build::Unit { host, avoid, h1, h2, h3 } => {
            let g = inputs.graph(&host.host)?;
            let avoid = vertex_set(&g, avoid, "avoid")?;
            let built = build_unit(&g, &avoid, UnitParams { h1: *h1, h2: *h2, h3: *h3 }, structure_budget(global));
            let mut report =
                Report::new("subdiv.build.unit/1", built_status(&built), &built, built_text(&built, |u| format!("core {}\nexterior {}\n", u.core, list(u.exterior().iter()))));
            if let Some(u) = built.structure() {
                validate_unit(&g, u).map_err(|v| CliError::input(format!("internal: built unit is invalid: {v:?}")))?;
                report = report.with_dot(dot::unit_dot(&g, u));
            }
            Ok(report)
        }
        Build::Web { host, avoid, h0, h1, h2, h3 } => {
            let g = inputs.graph(&host.host)?;
            let avoid = vertex_set(&g, avoid, "avoid")?;
            let params = WebParams { h0: *h0, h1: *h1, h2: *h2, h3: *h3 };
            let built = build_web(&g, &avoid, params, structure_budget(global));
            let mut report = Report::new(
                "subdiv.build.web/1",
                built_status(&built),
                &built,
                built_text(&built, |w| format!("core {}\nexterior {}\n", w.core, list(w.parts().exterior.iter()))),
            );
            if let Some(w) = built.structure() {
                validate_web(&g, w).map_err(|v| CliError::input(format!("internal: built web is invalid: {v:?}")))?;
                report = report.with_dot(dot::web_dot(&g, w));
            }
            Ok(report)
        }
        Build::Nakji { host, avoid, t, s, r, tau, count, min_degree } => {
            let g = inputs.graph(&host.host)?;
            let avoid = vertex_set(&g, avoid, "avoid")?;
            let params = NakjiParams { t: *t, s: *s, r: *r, tau: *tau };
            let cfg = PipelineConfig { seed: global.seed, exhaustive_cap: global.exhaustive_cap, ..PipelineConfig::default() };
            let family: Vec<VertexSet> = subexpander_family(&g, &avoid, *min_degree, 2 * tau, &cfg).into_iter().map(|f| f.vertices).collect();
            let built = build_nakjis(&g, &avoid, params, *count, &family);
            for nk in &built.nakjis {
                validate_nakji(&g, nk).map_err(|v| CliError::input(format!("internal: built nakji is invalid: {v:?}")))?;
            }
            let status = if built.complete() { Status::Found } else { Status::Absent };
            let mut text = format!("{} of {} nakjis from {} subexpanders\n", built.nakjis.len(), built.requested, family.len());
            for nk in &built.nakjis {
                writeln!(text, "head {}", list(nk.head.iter())).unwrap();
            }
            let dot = dot::nakjis_dot(&g, &built.nakjis);
            Ok(Report::new("subdiv.build.nakji/1", status, json!({ "subexpanders": family, "build": built }), text).with_dot(dot))
        }
    }
}

fn plan_report(h: &Graph, plan: PartitionPlan) -> Result<Report, CliError> {
    validate_plan(h, &plan).map_err(|v| CliError::input(format!("internal: plan is invalid: {v:?}")))?;
    let text = format!("classes {}\nsizes {}\ncap {}\n", list(plan.classes.iter().copied()), list(plan.class_sizes.iter().copied()), plan.cap);
    Ok(Report::new("subdiv.partition/1", Status::Found, &plan, text))
}

fn partition(target: &Partition, global: &Global, inputs: &mut Inputs) -> Result<Report, CliError> {
    match target {
        Partition::Cycle { pattern, r, d } => {
            let h = inputs.graph(&pattern.pattern)?;
            let bw = bandwidth_order(&h);
            let plan = partition_onto_odd_cycle(&h, *r, *d, &bw, global.seed).map_err(|e| lib_error("partition cycle", e))?;
            plan_report(&h, plan)
        }
        Partition::Sun { pattern, sun, r, d } => {
            let h = inputs.graph(&pattern.pattern)?;
            let sun: Sun = inputs.json(sun)?;
            let bw = bandwidth_order(&h);
            let plan = partition_onto_sun(&h, &sun, *r, *d, &bw, global.seed).map_err(|e| lib_error("partition sun", e))?;
            plan_report(&h, plan)
        }
    }
}

fn trace_report(h: &Graph, trace: ReductionTrace) -> Report {
    let text = write_edge_list(&trace.result);
    let mut d = dot::Dot::new();
    for &(u, v) in &trace.merge_edges {
        d.edge(u, v, "color=firebrick, penwidth=2.5, style=dashed");
    }
    let dot = d.render(&trace.result, "transform");
    let result = json!({ "trace": trace, "pattern_vertices": h.n() });
    let mut r = Report::new("subdiv.transform/1", Status::Found, result, text).with_dot(dot);
    r.default_format = Format::Json;
    r
}

fn subdivision_report(schema: &'static str, sub: SubdivisionResult) -> Report {
    let text = write_edge_list(&sub.result);
    let dot = dot::coloring_dot(&sub);
    #[derive(Serialize)]
    struct Out<'a> {
        vertices: usize,
        edges: usize,
        subdivision: &'a SubdivisionResult,
    }
    let out = Out { vertices: sub.result.n(), edges: sub.result.m(), subdivision: &sub };
    Report::new(schema, Status::Found, out, text).with_dot(dot)
}

fn generate(kind: &Gen) -> Result<Report, CliError> {
    let (g, text) = match kind {
        Gen::Bipartite { s, n } => {
            let g = gen_complete_bipartite(*s, *n).map_err(|e| lib_error("gen bipartite", e))?;
            let t = write_edge_list(&g);
            (g, t)
        }
        Gen::Grid { dims } => {
            let g = gen_grid(dims).map_err(|e| lib_error("gen grid", e))?;
            let t = write_edge_list(&g);
            (g, t)
        }
        Gen::Cliques { q, copies } => {
            let g = gen_disjoint_cliques(*q, *copies);
            let t = write_edge_list(&g);
            (g, t)
        }
        Gen::PlanarK4 { t } => {
            let emb = gen_planar_with_k4s(*t).map_err(|e| lib_error("gen planar-k4", e))?;
            let text = write_embedding(&emb);
            (emb.graph, text)
        }
    };
    let dot = dot::graph_dot(&g);
    let mut r = Report::new("subdiv.graph/1", Status::Found, &g, text).with_dot(dot);
    r.default_format = Format::Text;
    Ok(r)
}

fn limits(global: &Global) -> SearchLimits {
    global.budget.map_or_else(SearchLimits::default, |b| SearchLimits { node_budget: b })
}

fn search_status<T>(o: &SearchOutcome<T>) -> Status {
    match o {
        SearchOutcome::Found(_) => Status::Found,
        SearchOutcome::Absent => Status::Absent,
        SearchOutcome::Timeout => Status::Timeout,
    }
}

fn oracle(kind: &Oracle, global: &Global, inputs: &mut Inputs) -> Result<Report, CliError> {
    match kind {
        Oracle::Subdivision { host, pattern } => {
            let h = inputs.graph(&pattern.pattern)?;
            let g = inputs.graph(&host.host)?;
            let out = find_subdivision(&g, &h, limits(global));
            let mut text = format!("{}\n", out.label());
            let mut report_dot = None;
            if let SearchOutcome::Found(map) = &out {
                validate_subdivision(&g, &h, map).map_err(|v| CliError::input(format!("internal: witness is invalid: {v:?}")))?;
                for bp in &map.paths {
                    writeln!(text, "{}", list(bp.path.vertices().iter().copied())).unwrap();
                }
                report_dot = Some(dot::subdivision_dot(&g, map));
            }
            let status = search_status(&out);
            let result = json!({ "outcome": out.label(), "map": out.found() });
            let r = Report::new("subdiv.oracle.subdivision/1", status, result, text);
            Ok(match report_dot {
                Some(d) => r.with_dot(d),
                None => r,
            })
        }
        Oracle::Minor { host, pattern } => {
            let h = inputs.graph(&pattern.pattern)?;
            let g = inputs.graph(&host.host)?;
            let out = find_minor(&g, &h, limits(global));
            let mut text = format!("{}\n", out.label());
            if let SearchOutcome::Found(map) = &out {
                validate_minor(&g, &h, map).map_err(|v| CliError::input(format!("internal: witness is invalid: {v:?}")))?;
                for (i, b) in map.branch_sets.iter().enumerate() {
                    writeln!(text, "{i}: {}", list(b.iter())).unwrap();
                }
            }
            let status = search_status(&out);
            let result = json!({ "outcome": out.label(), "map": out.found() });
            Ok(Report::new("subdiv.oracle.minor/1", status, result, text))
        }
        Oracle::K4free { host } => {
            let g = inputs.graph(&host.host)?;
            let free = is_k4_minor_free(&g);
            let status = if free { Status::Absent } else { Status::Found };
            let text = format!("{}\n", if free { "K4-minor-free" } else { "has a K4 minor" });
            Ok(Report::new("subdiv.oracle.k4free/1", status, json!({ "k4_minor_free": free }), text))
        }
    }
}
