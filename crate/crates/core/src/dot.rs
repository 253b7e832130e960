//! Graphviz export with highlighted vertices and edges.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use crate::graph::{Graph, VertexSet};
use crate::oracle::SubdivisionMap;
use crate::planar::SubdivisionResult;
use crate::structures::{Nakji, Unit, Web};

pub const EXTERIOR: &str = "forestgreen";
pub const INTERIOR: &str = "orange";
pub const CENTRE: &str = "firebrick";
pub const ANCHOR: &str = "royalblue";
pub const PATH: &str = "royalblue";

/// Styles for a host graph. Unstyled vertices and edges are drawn grey.
#[derive(Clone, Debug, Default)]
pub struct Dot {
    vertices: BTreeMap<usize, String>,
    edges: BTreeMap<(usize, usize), String>,
}

impl Dot {
    pub fn new() -> Self {
        Dot::default()
    }

    pub fn vertex(&mut self, v: usize, attrs: impl Into<String>) -> &mut Self {
        self.vertices.insert(v, attrs.into());
        self
    }

    pub fn vertices(&mut self, vs: impl IntoIterator<Item = usize>, attrs: &str) -> &mut Self {
        for v in vs {
            self.vertex(v, attrs);
        }
        self
    }

    pub fn edge(&mut self, u: usize, v: usize, attrs: impl Into<String>) -> &mut Self {
        self.edges.insert((u.min(v), u.max(v)), attrs.into());
        self
    }

    pub fn walk(&mut self, path: &[usize], attrs: &str) -> &mut Self {
        for w in path.windows(2) {
            self.edge(w[0], w[1], attrs);
        }
        self
    }

    pub fn render(&self, g: &Graph, name: &str) -> String {
        let mut s = format!("graph {name} {{\n  node [shape=circle, style=filled, fillcolor=white, color=grey40];\n  edge [color=grey70];\n");
        for v in 0..g.n() {
            match self.vertices.get(&v) {
                Some(a) => writeln!(s, "  {v} [{a}];").unwrap(),
                None => writeln!(s, "  {v};").unwrap(),
            }
        }
        for (u, v) in g.edges() {
            match self.edges.get(&(u, v)) {
                Some(a) => writeln!(s, "  {u} -- {v} [{a}];").unwrap(),
                None => writeln!(s, "  {u} -- {v};").unwrap(),
            }
        }
        s.push_str("}\n");
        s
    }
}

fn fill(colour: &str) -> String {
    format!("fillcolor={colour}")
}

fn stroke(colour: &str) -> String {
    format!("color={colour}, penwidth=2.5")
}

pub fn graph_dot(g: &Graph) -> String {
    Dot::new().render(g, "G")
}

/// Host with the branch vertices boxed and every branch path drawn bold.
pub fn subdivision_dot(g: &Graph, map: &SubdivisionMap) -> String {
    let mut dot = Dot::new();
    for bp in &map.paths {
        dot.walk(bp.path.vertices(), &stroke(PATH));
        dot.vertices(bp.path.interior().iter().copied(), "fillcolor=lightsteelblue");
    }
    for (i, &a) in map.anchors.iter().enumerate() {
        dot.vertex(a, format!("shape=box, fillcolor={ANCHOR}, fontcolor=white, xlabel=\"h{i}\""));
    }
    dot.render(g, "subdivision")
}

/// Exterior, interior and centre of a structure in their own colours.
pub fn parts_dot(g: &Graph, exterior: &VertexSet, interior: &VertexSet, centre: &VertexSet, edges: &[(usize, usize)]) -> String {
    let mut dot = Dot::new();
    dot.vertices(exterior.iter(), &fill(EXTERIOR));
    dot.vertices(interior.iter(), &fill(INTERIOR));
    dot.vertices(centre.iter(), &fill(CENTRE));
    for &(u, v) in edges {
        dot.edge(u, v, stroke("black"));
    }
    dot.render(g, "structure")
}

pub fn unit_dot(g: &Graph, unit: &Unit) -> String {
    parts_dot(g, &unit.exterior(), &unit.interior(), &VertexSet::singleton(unit.core), &unit.edges())
}

pub fn web_dot(g: &Graph, web: &Web) -> String {
    let p = web.parts();
    parts_dot(g, &p.exterior, &p.interior, &p.centre, &web.edges())
}

/// Heads in the centre colour, legs as exterior, arm interiors as interior.
pub fn nakjis_dot(g: &Graph, nakjis: &[Nakji]) -> String {
    let mut dot = Dot::new();
    for nk in nakjis {
        for arm in &nk.arms {
            dot.walk(arm.vertices(), &stroke("black"));
            dot.vertices(arm.interior().iter().copied(), &fill(INTERIOR));
        }
        for leg in &nk.legs {
            dot.vertices(leg.iter(), &fill(EXTERIOR));
        }
        dot.vertices(nk.head.iter(), &fill(CENTRE));
    }
    dot.render(g, "nakjis")
}

/// The two colour classes of a bipartite subdivision, subdivision vertices drawn small.
pub fn coloring_dot(sub: &SubdivisionResult) -> String {
    let mids: HashSet<usize> = sub.subdivided.iter().map(|e| e.mid).collect();
    let mut dot = Dot::new();
    for (v, &c) in sub.coloring.iter().enumerate() {
        let colour = if c == 0 { "lightskyblue" } else { "gold" };
        let shape = if mids.contains(&v) { "point, width=0.15" } else { "circle" };
        dot.vertex(v, format!("shape={shape}, fillcolor={colour}"));
    }
    dot.render(&sub.result, "subdivision")
}
