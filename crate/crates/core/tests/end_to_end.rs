use subdiv_core::expander::{extract_expander, verify_robust_expander, ExtractOptions, VerifyMode};
use subdiv_core::extremal::gen::{complete, cycle, gnp, hypercube, path};
use subdiv_core::extremal::{gen_grid, gen_planar_with_k4s};
use subdiv_core::hpartition::{bandwidth_order, partition_onto_sun, validate_plan};
use subdiv_core::oracle::{find_minor, find_subdivision, validate_minor, validate_subdivision, SearchLimits};
use subdiv_core::pathfinder::{check_path_intersection_bound, consecutive_shortest_paths, growth_profile};
use subdiv_core::pipeline::{embed_subdivision, EmbedOutcome, PipelineConfig};
use subdiv_core::planar::{bipartite_subdivision, parse_embedding, random_triangulation, write_embedding};
use subdiv_core::structures::{build_web, find_sun, validate_sun, validate_web, SunSearch, WebParams};
use subdiv_core::transforms::{bipartite_double, color_classes, split_high_degree};
use subdiv_core::{parse_edge_list, write_edge_list, VertexSet};

#[test]
fn certified_expander_supports_path_growth() {
    let g = gnp(16, 0.5, 11);
    let x = extract_expander(&g, 0.003, 0.25, ExtractOptions::default()).unwrap();
    assert!(x.meets_degree_bound() && x.meets_min_degree_bound());
    let h = &x.subgraph.graph;
    let again = verify_robust_expander(h, &x.params, VerifyMode::Exhaustive { cap: 18 }).unwrap();
    assert_eq!(again.passed, x.certificate.passed);

    let src = VertexSet::singleton(0);
    let ps = consecutive_shortest_paths(h, &src, 3, &VertexSet::new(), 4).unwrap();
    ps.validate(h).unwrap();
    let report = check_path_intersection_bound(h, &src, &VertexSet::new(), &ps, 3).unwrap();
    assert_eq!(report.counts.len(), 4);
    let profile = growth_profile(h, &src, &VertexSet::new(), &ps, 3, Some(&x.certificate));
    assert_eq!(profile.sizes.len(), 4);
    assert!(profile.sizes.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn planar_subdivision_survives_file_round_trip() {
    let emb = random_triangulation(9, 5).unwrap();
    let emb = parse_embedding(&write_embedding(&emb)).unwrap();
    let sub = bipartite_subdivision(&emb).unwrap();
    assert_eq!(sub.result.n(), 2 * 9 - 2);
    assert!(sub.result.is_bipartite());
    assert_eq!(sub.contract(), emb.graph);
    validate_subdivision(&sub.result, &emb.graph, &sub.as_subdivision_map()).unwrap();
    let g = parse_edge_list(&write_edge_list(&sub.result)).unwrap();
    let found = find_subdivision(&g, &emb.graph, SearchLimits::default()).found().unwrap();
    validate_subdivision(&g, &emb.graph, &found).unwrap();
}

#[test]
fn transformed_patterns_come_back_as_minors() {
    let h = complete(5);
    let split = split_high_degree(&h, 3).unwrap();
    assert!(split.result.max_degree() <= 3);
    assert_eq!(split.contracted(), h);
    let classes = color_classes(&h, 18).unwrap();
    let doubled = bipartite_double(&h, &classes.a, &classes.b).unwrap();
    assert!(doubled.result.is_bipartite());
    let minor = find_minor(&doubled.result, &h, SearchLimits::default()).found().unwrap();
    validate_minor(&doubled.result, &h, &minor).unwrap();
}

#[test]
fn sun_from_host_takes_a_partition() {
    let host = hypercube(4);
    let SunSearch::Sun { sun, .. } = find_sun(&host, 8, 0).unwrap() else { panic!("hypercube has a sun") };
    validate_sun(&host, &sun).unwrap();
    let pattern = gen_grid(&[2, 6]).unwrap();
    let bw = bandwidth_order(&pattern);
    let plan = partition_onto_sun(&pattern, &sun, 5, 40.0, &bw, 3).unwrap();
    validate_plan(&pattern, &plan).unwrap();
}

#[test]
fn web_in_grid_validates() {
    let g = gen_grid(&[7, 7]).unwrap();
    let web = build_web(&g, &VertexSet::new(), WebParams { h0: 2, h1: 2, h2: 2, h3: 2 }, 10_000_000)
        .into_structure()
        .unwrap();
    validate_web(&g, &web).unwrap();
    let parts = web.parts();
    assert!(parts.exterior.is_disjoint(&parts.interior));
}

#[test]
fn embedding_certificate_round_trips_as_json() {
    let g = hypercube(3);
    let h = cycle(6);
    let out = embed_subdivision(&g, &h, &PipelineConfig::default()).unwrap();
    let cert = out.certificate().unwrap();
    validate_subdivision(&g, &h, &cert.map).unwrap();
    let text = serde_json::to_string(&out).unwrap();
    let back: EmbedOutcome = serde_json::from_str(&text).unwrap();
    assert_eq!(back.certificate().unwrap().map, cert.map);

    let chain = gen_planar_with_k4s(4).unwrap().graph;
    let out = embed_subdivision(&path(6), &chain, &PipelineConfig::default()).unwrap();
    assert!(out.proven_absent());
}
