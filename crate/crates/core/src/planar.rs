//! Plane embeddings, cubic duals and the two bipartite subdivision tricks.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_with_faces, write_edge_list, Graph, Path};
use crate::matching::perfect_matching;
use crate::oracle::SubdivisionMap;

/// A connected plane graph given by its facial walks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarEmbedding {
    pub graph: Graph,
    pub faces: Vec<Vec<usize>>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl PlanarEmbedding {
    /// Checks facial walks, that every edge is traversed exactly twice, and
    /// Euler's formula.
    pub fn new(graph: Graph, faces: Vec<Vec<usize>>) -> Result<Self> {
        if graph.n() == 0 || !graph.is_connected() {
            return Err(Error::Invalid("embedding needs a connected non-empty graph".into()));
        }
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::Invalid(format!("face {i} is empty")));
            }
            if f.len() == 1 && graph.n() == 1 {
                continue;
            }
            for j in 0..f.len() {
                let (u, v) = (f[j], f[(j + 1) % f.len()]);
                if !graph.has_edge(u, v) {
                    return Err(Error::Invalid(format!("face {i} uses non-edge ({u}, {v})")));
                }
                *count.entry(key(u, v)).or_default() += 1;
            }
        }
        for (u, v) in graph.edges() {
            let c = count.get(&(u, v)).copied().unwrap_or(0);
            if c != 2 {
                return Err(Error::Invalid(format!("edge ({u}, {v}) lies on {c} face sides, expected 2")));
            }
        }
        let euler = graph.n() as i64 - graph.m() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::Invalid(format!("Euler characteristic {euler}, expected 2")));
        }
        Ok(PlanarEmbedding { graph, faces })
    }

    pub fn is_triangulation(&self) -> bool {
        self.graph.n() >= 4 && self.faces.iter().all(|f| f.len() == 3)
    }
}

/// Parses an edge list followed by `f v1 .. vk` lines.
pub fn parse_embedding(text: &str) -> Result<PlanarEmbedding> {
    let (g, faces) = parse_with_faces(text)?;
    PlanarEmbedding::new(g, faces.into_iter().map(|(_, f)| f).collect())
}

pub fn write_embedding(emb: &PlanarEmbedding) -> String {
    let mut s = write_edge_list(&emb.graph);
    for f in &emb.faces {
        s.push('f');
        for v in f {
            s.push_str(&format!(" {v}"));
        }
        s.push('\n');
    }
    s
}

/// Dual of a plane triangulation with the primal edge behind each dual edge.
#[derive(Clone, Debug)]
pub struct Dual {
    pub graph: Graph,
    pub primal_edge: HashMap<(usize, usize), (usize, usize)>,
}

/// Cubic dual of a triangulation: one vertex per face, adjacent faces share an edge.
pub fn dual_graph(emb: &PlanarEmbedding) -> Result<Dual> {
    if !emb.is_triangulation() {
        return Err(Error::Precondition("dual requires a triangulation on at least 4 vertices".into()));
    }
    let mut sides: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in emb.faces.iter().enumerate() {
        for j in 0..3 {
            sides.entry(key(f[j], f[(j + 1) % 3])).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    let mut primal_edge = HashMap::new();
    for (e, fs) in &sides {
        let (a, b) = (fs[0], fs[1]);
        if a == b {
            return Err(Error::Invalid(format!("edge {e:?} borders a single face")));
        }
        edges.push((a, b));
        primal_edge.insert(key(a, b), *e);
    }
    let graph = Graph::from_edges(emb.faces.len(), &edges)
        .map_err(|_| Error::Invalid("two faces share more than one edge".into()))?;
    Ok(Dual { graph, primal_edge })
}

/// An edge replaced by `u - mid - v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdividedEdge {
    pub u: usize,
    pub v: usize,
    pub mid: usize,
}

/// A subdivision of `original` obtained by subdividing some edges once.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionResult {
    pub original: Graph,
    pub result: Graph,
    pub subdivided: Vec<SubdividedEdge>,
    /// Proper 2-colouring of `result`.
    pub coloring: Vec<u8>,
}

impl SubdivisionResult {
    fn build(original: &Graph, split: &[(usize, usize)]) -> Result<Self> {
        let n = original.n();
        let mut to_split: Vec<(usize, usize)> = split.iter().map(|&(u, v)| key(u, v)).collect();
        to_split.sort_unstable();
        let mut edges = Vec::new();
        let mut subdivided = Vec::new();
        for (u, v) in original.edges() {
            if to_split.binary_search(&(u, v)).is_ok() {
                let mid = n + subdivided.len();
                subdivided.push(SubdividedEdge { u, v, mid });
                edges.push((u, mid));
                edges.push((mid, v));
            } else {
                edges.push((u, v));
            }
        }
        let result = Graph::from_edges(n + subdivided.len(), &edges)?;
        let coloring = result
            .bipartition()
            .ok_or_else(|| Error::Internal("subdivision is not bipartite".into()))?;
        Ok(SubdivisionResult { original: original.clone(), result, subdivided, coloring })
    }

    /// Contracts every subdivision vertex back into its edge.
    pub fn contract(&self) -> Graph {
        let n = self.original.n();
        let mut class: Vec<usize> = (0..self.result.n()).collect();
        for s in &self.subdivided {
            class[s.mid] = s.u;
        }
        self.result.quotient(&class, n)
    }

    /// Branch-path certificate that `result` is a subdivision of `original`.
    pub fn as_subdivision_map(&self) -> SubdivisionMap {
        let mids: HashMap<(usize, usize), usize> =
            self.subdivided.iter().map(|s| ((s.u, s.v), s.mid)).collect();
        let paths = self
            .original
            .edges()
            .into_iter()
            .map(|(u, v)| match mids.get(&(u, v)) {
                Some(&m) => Path::unchecked(vec![u, m, v]),
                None => Path::unchecked(vec![u, v]),
            })
            .collect();
        SubdivisionMap::new(&self.original, (0..self.original.n()).collect(), paths)
    }
}

/// Subdivides the primal edges crossed by a perfect matching of the cubic
/// dual. A triangulation on `t` vertices yields a bipartite subdivision on
/// `2t - 2` vertices.
pub fn bipartite_subdivision(emb: &PlanarEmbedding) -> Result<SubdivisionResult> {
    let dual = dual_graph(emb)?;
    let matching = perfect_matching(&dual.graph)
        .ok_or_else(|| Error::Internal("bridgeless cubic dual has no perfect matching".into()))?;
    let split: Vec<(usize, usize)> = matching
        .edges()
        .into_iter()
        .map(|e| dual.primal_edge[&key(e.0, e.1)])
        .collect();
    let res = SubdivisionResult::build(&emb.graph, &split)?;
    let t = emb.graph.n();
    if res.result.n() != 2 * t - 2 {
        return Err(Error::Internal(format!("expected {} vertices, got {}", 2 * t - 2, res.result.n())));
    }
    Ok(res)
}

/// Subdivides every edge that misses the independent set `x`.
pub fn one_sided_subdivision(h: &Graph, x: &[usize]) -> Result<SubdivisionResult> {
    let mut in_x = vec![false; h.n()];
    for &v in x {
        if v >= h.n() {
            return Err(Error::VertexOutOfRange(v));
        }
        in_x[v] = true;
    }
    if let Some((u, v)) = h.edges().into_iter().find(|&(u, v)| in_x[u] && in_x[v]) {
        return Err(Error::Precondition(format!("set is not independent: edge ({u}, {v})")));
    }
    let split: Vec<_> = h.edges().into_iter().filter(|&(u, v)| !in_x[u] && !in_x[v]).collect();
    SubdivisionResult::build(h, &split)
}

/// Triangulates every face by fanning from its first vertex.
pub fn fan_triangulate(emb: &PlanarEmbedding) -> Result<PlanarEmbedding> {
    let mut g = emb.graph.clone();
    let mut faces = Vec::new();
    for f in &emb.faces {
        if f.len() <= 3 {
            faces.push(f.clone());
            continue;
        }
        let mut distinct = f.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != f.len() {
            return Err(Error::Precondition("fan triangulation needs faces bounded by cycles".into()));
        }
        let a = f[0];
        for i in 1..f.len() - 1 {
            faces.push(vec![a, f[i], f[i + 1]]);
        }
        for &c in &f[2..f.len() - 1] {
            g.add_edge(a, c).map_err(|_| Error::Precondition(format!("fan chord ({a}, {c}) already present")))?;
        }
    }
    PlanarEmbedding::new(g, faces)
}

/// Random triangulation on `t >= 4` vertices: stacked insertions followed by
/// random edge flips.
pub fn random_triangulation(t: usize, seed: u64) -> Result<PlanarEmbedding> {
    if t < 4 {
        return Err(Error::Invalid("triangulations need at least 4 vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]];
    for v in 4..t {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    let edge_set = |faces: &[[usize; 3]]| {
        let mut s = std::collections::HashSet::new();
        for f in faces {
            for j in 0..3 {
                s.insert(key(f[j], f[(j + 1) % 3]));
            }
        }
        s
    };
    let flips = 3 * t;
    for _ in 0..flips {
        let i = rng.gen_range(0..faces.len());
        let j = rng.gen_range(0..3);
        let (a, b, c) = (faces[i][j], faces[i][(j + 1) % 3], faces[i][(j + 2) % 3]);
        // Neighbouring face holds the directed edge b -> a.
        let Some(k) = faces.iter().position(|f| (0..3).any(|s| f[s] == b && f[(s + 1) % 3] == a)) else {
            continue;
        };
        let d = *faces[k].iter().find(|&&x| x != a && x != b).unwrap();
        let edges = edge_set(&faces);
        let deg = |x: usize| edges.iter().filter(|e| e.0 == x || e.1 == x).count();
        if c == d || edges.contains(&key(c, d)) || deg(a) < 4 || deg(b) < 4 {
            continue;
        }
        faces[i] = [a, d, c];
        faces[k] = [d, b, c];
    }
    let mut labels: Vec<usize> = (0..t).collect();
    labels.shuffle(&mut rng);
    let faces: Vec<Vec<usize>> = faces.iter().map(|f| f.iter().map(|&v| labels[v]).collect()).collect();
    let edges: Vec<_> = edge_set(
        &faces.iter().map(|f| [f[0], f[1], f[2]]).collect::<Vec<_>>(),
    )
    .into_iter()
    .collect();
    let g = Graph::from_edges(t, &edges)?;
    PlanarEmbedding::new(g, faces)
}

/// Finds a triangulation embedding of a maximal planar graph on at most 10
/// vertices by searching for a set of facial triangles.
pub fn exact_triangulation_embedding(g: &Graph) -> Result<Option<PlanarEmbedding>> {
    let n = g.n();
    if n > 10 {
        return Err(Error::CapExceeded { cap: 10, n });
    }
    if n < 4 || g.m() != 3 * n - 6 || !g.is_connected() {
        return Ok(None);
    }
    let mut tris = Vec::new();
    for (u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                tris.push([u, v, w]);
            }
        }
    }
    let edges = g.edges();
    let eidx: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let tri_edges: Vec<[usize; 3]> = tris
        .iter()
        .map(|t| [eidx[&key(t[0], t[1])], eidx[&key(t[1], t[2])], eidx[&key(t[0], t[2])]])
        .collect();
    let mut cover = vec![0u8; edges.len()];
    let mut chosen = Vec::new();
    fn links_ok(n: usize, tris: &[[usize; 3]], chosen: &[usize]) -> bool {
        for v in 0..n {
            let around: Vec<(usize, usize)> = chosen
                .iter()
                .filter_map(|&i| {
                    let t = tris[i];
                    let others: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
                    (others.len() == 2).then(|| (others[0], others[1]))
                })
                .collect();
            if around.is_empty() {
                return false;
            }
            // The link of v must be one cycle.
            let mut seen = vec![false; around.len()];
            let mut stack = vec![0];
            seen[0] = true;
            let mut count = 1;
            while let Some(i) = stack.pop() {
                for j in 0..around.len() {
                    if !seen[j] {
                        let (a, b) = around[i];
                        let (c, d) = around[j];
                        if a == c || a == d || b == c || b == d {
                            seen[j] = true;
                            count += 1;
                            stack.push(j);
                        }
                    }
                }
            }
            if count != around.len() {
                return false;
            }
        }
        true
    }
    fn go(
        e: usize,
        cover: &mut Vec<u8>,
        chosen: &mut Vec<usize>,
        tri_edges: &[[usize; 3]],
        tris: &[[usize; 3]],
        n: usize,
    ) -> bool {
        let Some(first) = (e..cover.len()).find(|&i| cover[i] < 2) else {
            return links_ok(n, tris, chosen);
        };
        for (i, te) in tri_edges.iter().enumerate() {
            if !te.contains(&first) || chosen.contains(&i) || te.iter().any(|&x| cover[x] >= 2) {
                continue;
            }
            te.iter().for_each(|&x| cover[x] += 1);
            chosen.push(i);
            if go(first, cover, chosen, tri_edges, tris, n) {
                return true;
            }
            chosen.pop();
            te.iter().for_each(|&x| cover[x] -= 1);
        }
        false
    }
    if !go(0, &mut cover, &mut chosen, &tri_edges, &tris, n) {
        return Ok(None);
    }
    // Orient faces consistently by propagation across shared edges.
    let mut oriented: Vec<Option<[usize; 3]>> = vec![None; chosen.len()];
    oriented[0] = Some(tris[chosen[0]]);
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let f = oriented[i].unwrap();
        for j in 0..chosen.len() {
            if oriented[j].is_some() {
                continue;
            }
            let t = tris[chosen[j]];
            for s in 0..3 {
                let (a, b) = (f[s], f[(s + 1) % 3]);
                if t.contains(&a) && t.contains(&b) {
                    let c = *t.iter().find(|&&x| x != a && x != b).unwrap();
                    oriented[j] = Some([b, a, c]);
                    stack.push(j);
                    break;
                }
            }
        }
    }
    let faces = oriented.into_iter().map(|f| f.unwrap().to_vec()).collect();
    PlanarEmbedding::new(g.clone(), faces).map(Some)
}
