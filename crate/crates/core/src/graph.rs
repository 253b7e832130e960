//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact average degree `2m / n`.
pub type AvgDegree = Ratio<u64>;

/// A simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr { n: self.n(), edges: self.edges() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, &repr.edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph, silently dropping loops and repeated edges.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Graph { adj, m: m / 2 }
    }

    /// Adds a new isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n {
            return Err(Error::VertexOutOfRange(u));
        }
        if v >= n {
            return Err(Error::VertexOutOfRange(v));
        }
        if u == v {
            return Err(Error::Invalid(format!("loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::Invalid(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Exact average degree. Errors on the empty graph.
    pub fn average_degree(&self) -> Result<AvgDegree> {
        if self.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Ratio::new(2 * self.m as u64, self.n() as u64))
    }

    /// Average degree as a float, `0.0` for the empty graph.
    pub fn avg_degree_f64(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n() as f64
        }
    }

    /// Validates `vertices` as a path (consecutive vertices adjacent, no repeats).
    pub fn is_path(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() || vertices.iter().any(|&v| v >= self.n()) {
            return false;
        }
        let mut seen = vec![false; self.n()];
        for &v in vertices {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        vertices.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Proper 2-colouring if the graph is bipartite. Each component's
    /// smallest vertex gets colour 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced by `keep`; vertex `i` of the result is `keep[i]` (sorted).
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Subgraph {
        let to_host: Vec<usize> = keep.iter().collect();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); to_host.len()];
        let mut m = 0;
        for (i, &v) in to_host.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                    m += 1;
                }
            }
        }
        Subgraph { graph: Graph { adj, m: m / 2 }, to_host }
    }

    /// Removes the given vertices (keeps the rest, relabelled in order).
    pub fn remove_vertices(&self, drop: &VertexSet) -> Subgraph {
        let keep = VertexSet::from_iter((0..self.n()).filter(|v| !drop.contains(*v)));
        self.induced_subgraph(&keep)
    }

    /// Copy of the graph without the listed edges. Errors on an absent edge.
    pub fn remove_edges(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(Error::MissingEdge(u, v));
            }
            let p = g.adj[u].binary_search(&v).unwrap();
            g.adj[u].remove(p);
            let p = g.adj[v].binary_search(&u).unwrap();
            g.adj[v].remove(p);
            g.m -= 1;
        }
        Ok(g)
    }

    /// Contracts edge `uv`, merging `v` into `u`. Returns the new graph and
    /// the map from old vertex ids to new ids.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(Graph, Vec<usize>)> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut map = Vec::with_capacity(self.n());
        let mut next = 0;
        for x in 0..self.n() {
            if x == v {
                map.push(usize::MAX);
            } else {
                map.push(next);
                next += 1;
            }
        }
        map[v] = map[u];
        Ok((self.quotient(&map, next), map))
    }

    /// Graph on `k` classes where `class_of[x]` is the class of `x`
    /// (`usize::MAX` drops the vertex). Loops and parallel edges collapse.
    pub fn quotient(&self, class_of: &[usize], k: usize) -> Graph {
        let edges = self.edges().into_iter().filter_map(|(a, b)| {
            let (ca, cb) = (class_of[a], class_of[b]);
            (ca != usize::MAX && cb != usize::MAX && ca != cb).then_some((ca, cb))
        });
        Graph::from_edges_dedup(k, edges)
    }

    /// Multi-source BFS distances avoiding `blocked`, up to `limit` layers.
    /// Unreached vertices get `usize::MAX`.
    pub fn bfs(&self, sources: &[usize], blocked: &[bool], limit: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        let mut srcs: Vec<usize> = sources.to_vec();
        srcs.sort_unstable();
        srcs.dedup();
        for s in srcs {
            if !blocked[s] {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            if dist[u] >= limit {
                continue;
            }
            for &w in &self.adj[u] {
                if !blocked[w] && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Ball of radius `radius` around `x` in `G - avoid`.
    pub fn ball(&self, x: &VertexSet, radius: usize, avoid: &VertexSet) -> VertexSet {
        let blocked = avoid.mask(self.n());
        let dist = self.bfs(x.as_slice(), &blocked, radius);
        VertexSet::from_sorted((0..self.n()).filter(|&v| dist[v] <= radius).collect())
    }

    /// Vertices at distance exactly `radius` from `x` in `G - avoid`.
    pub fn sphere(&self, x: &VertexSet, radius: usize, avoid: &VertexSet) -> VertexSet {
        let blocked = avoid.mask(self.n());
        let dist = self.bfs(x.as_slice(), &blocked, radius);
        VertexSet::from_sorted((0..self.n()).filter(|&v| dist[v] == radius).collect())
    }

    /// Edges with exactly one endpoint in `x`, as `(inside, outside)`.
    pub fn edge_boundary(&self, x: &VertexSet) -> Vec<(usize, usize)> {
        let mask = x.mask(self.n());
        let mut out = Vec::new();
        for u in x.iter() {
            for &w in &self.adj[u] {
                if !mask[w] {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Vertices outside `x` with a neighbour in `x`.
    pub fn neighborhood(&self, x: &VertexSet) -> VertexSet {
        let mask = x.mask(self.n());
        VertexSet::from_iter(x.iter().flat_map(|u| self.adj[u].iter().copied()).filter(|&w| !mask[w]))
    }

    /// Distance between two non-empty sets.
    pub fn distance(&self, a: &VertexSet, b: &VertexSet) -> Result<Distance> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Invalid("distance between empty sets".into()));
        }
        let dist = self.bfs(a.as_slice(), &vec![false; self.n()], usize::MAX);
        Ok(b.iter()
            .map(|v| dist[v])
            .min()
            .filter(|&d| d != usize::MAX)
            .map_or(Distance::Infinite, Distance::Finite))
    }

    /// Shortest path from any vertex of `from` to any vertex of `to` avoiding
    /// `blocked`. Ties resolve towards the smallest ids.
    pub fn shortest_path(&self, from: &[usize], to: &[bool], blocked: &[bool]) -> Option<Vec<usize>> {
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut srcs = from.to_vec();
        srcs.sort_unstable();
        srcs.dedup();
        for &s in &srcs {
            if !blocked[s] && to[s] {
                return Some(vec![s]);
            }
        }
        for s in srcs {
            if !blocked[s] && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if blocked[w] || seen[w] {
                    continue;
                }
                seen[w] = true;
                parent[w] = u;
                if to[w] {
                    let mut path = vec![w];
                    let mut cur = w;
                    while parent[cur] != usize::MAX {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }
}

/// Induced subgraph together with the map back to host ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_host: Vec<usize>,
}

impl Subgraph {
    pub fn host_set(&self) -> VertexSet {
        VertexSet::from_sorted(self.to_host.clone())
    }

    /// Maps host ids into local ids (`None` when absent).
    pub fn local_index(&self, host_n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; host_n];
        for (i, &v) in self.to_host.iter().enumerate() {
            out[v] = Some(i);
        }
        out
    }
}

/// Distance with an explicit infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

/// A sorted set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet((0..mask.len()).filter(|&i| mask[i]).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(p) = self.0.binary_search(&v) {
            self.0.insert(p, v);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Boolean membership vector of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for v in self.iter() {
            if v < n {
                m[v] = true;
            }
        }
        m
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::from_iter(v)
    }
}

/// A path given by its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    /// Validates the sequence against `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Path> {
        if g.is_path(&vertices) {
            Ok(Path(vertices))
        } else {
            Err(Error::Invalid(format!("{vertices:?} is not a path")))
        }
    }

    /// Wraps a sequence without checking it.
    pub fn unchecked(vertices: Vec<usize>) -> Path {
        Path(vertices)
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// Vertices other than the two ends.
    pub fn interior(&self) -> &[usize] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Concatenates `self` and `other`, which must share the joining vertex.
    pub fn join(&self, other: &Path) -> Path {
        assert_eq!(self.end(), other.start());
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Path(v)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Shortcuts a walk into a path between the same ends by cutting loops.
pub fn walk_to_path(walk: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(pos) = out.iter().position(|&x| x == v) {
            out.truncate(pos + 1);
        } else {
            out.push(v);
        }
    }
    out
}

/// Parses the edge-list format. Face lines are rejected here.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let (g, faces) = parse_with_faces(text)?;
    if let Some((line, _)) = faces.first() {
        return Err(Error::Parse { line: *line, msg: "face line in a plain edge list".into() });
    }
    Ok(g)
}

/// Parses an edge list optionally followed by `f v1 .. vk` face lines.
/// Faces are returned with their line numbers.
pub fn parse_with_faces(text: &str) -> Result<(Graph, Vec<(usize, Vec<usize>)>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::empty(0);
    let mut faces = Vec::new();
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        let nums: std::result::Result<Vec<usize>, _> = tok.map(str::parse::<usize>).collect();
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "second header".into()));
                }
                let nums = nums.map_err(|e| perr(line, e.to_string()))?;
                if nums.len() != 2 {
                    return Err(perr(line, "header must be `p n m`".into()));
                }
                header = Some((nums[0], nums[1]));
                g = Graph::empty(nums[0]);
            }
            "e" => {
                if header.is_none() {
                    return Err(perr(line, "edge before header".into()));
                }
                let nums = nums.map_err(|e| perr(line, e.to_string()))?;
                if nums.len() != 2 {
                    return Err(perr(line, "edge must be `e u v`".into()));
                }
                g.add_edge(nums[0], nums[1]).map_err(|e| perr(line, e.to_string()))?;
            }
            "f" => {
                if header.is_none() {
                    return Err(perr(line, "face before header".into()));
                }
                let nums = nums.map_err(|e| perr(line, e.to_string()))?;
                if let Some(&bad) = nums.iter().find(|&&v| v >= g.n()) {
                    return Err(perr(line, format!("vertex {bad} out of range")));
                }
                faces.push((line, nums));
            }
            other => return Err(perr(line, format!("unknown line type `{other}`"))),
        }
    }
    let Some((_, m)) = header else {
        return Err(perr(0, "missing `p n m` header".into()));
    };
    if g.m() != m {
        return Err(perr(0, format!("header declares {m} edges, found {}", g.m())));
    }
    Ok((g, faces))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("e {u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_iter(v.iter().copied())
    }

    #[test]
    fn ball_avoiding_vertex() {
        let g = cycle(8);
        assert_eq!(g.ball(&set(&[0]), 2, &set(&[1])), set(&[0, 6, 7]));
    }

    #[test]
    fn sphere_on_cycle() {
        let g = cycle(8);
        assert_eq!(g.sphere(&set(&[0]), 2, &VertexSet::new()), set(&[2, 6]));
    }

    #[test]
    fn boundary_of_arc() {
        let g = cycle(6);
        assert_eq!(g.edge_boundary(&set(&[0, 1, 2])).len(), 2);
    }

    #[test]
    fn average_degree_is_exact() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.average_degree().unwrap(), Ratio::new(3, 1));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.average_degree().unwrap(), Ratio::new(4, 3));
        assert!(Graph::empty(0).average_degree().is_err());
    }

    #[test]
    fn distance_infinite_between_components() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.distance(&set(&[0]), &set(&[3])).unwrap(), Distance::Infinite);
        assert_eq!(g.distance(&set(&[0]), &set(&[1])).unwrap(), Distance::Finite(1));
        assert!(Distance::Finite(usize::MAX - 1) < Distance::Infinite);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(parse_edge_list("p 3 2\ne 0 1\ne 1 0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list("p 3 1\ne 1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("c hi\np 2 1\ne 0 5\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_edge_list("p 2 2\ne 0 1\n").is_err());
        let g = parse_edge_list("c triangle\np 3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn contraction_merges_neighbourhoods() {
        let g = cycle(4);
        let (h, map) = g.contract_edge(0, 1).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 3);
        assert_eq!(map[1], map[0]);
        assert!(g.contract_edge(0, 2).is_err());
    }

    #[test]
    fn remove_edges_checks_presence() {
        let g = cycle(5);
        let h = g.remove_edges(&[(0, 1)]).unwrap();
        assert_eq!(h.m(), 4);
        assert!(matches!(g.remove_edges(&[(0, 2)]), Err(Error::MissingEdge(0, 2))));
    }

    #[test]
    fn walk_shortcut() {
        assert_eq!(walk_to_path(&[0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(walk_to_path(&[4, 5, 6]), vec![4, 5, 6]);
    }

    #[test]
    fn shortest_path_prefers_small_ids() {
        let g = cycle(6);
        let mut to = vec![false; 6];
        to[3] = true;
        let p = g.shortest_path(&[0], &to, &[false; 6]).unwrap();
        assert_eq!(p, vec![0, 1, 2, 3]);
    }
}

#[cfg(test)]
pub(crate) use tests::cycle;

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..30)
                .prop_map(move |e| Graph::from_edges_dedup(n, e))
        })
    }

    proptest! {
        #[test]
        fn ball_monotone_in_radius(g in arb_graph(), r in 0usize..5) {
            let x = VertexSet::singleton(0);
            let a = g.ball(&x, r, &VertexSet::new());
            let b = g.ball(&x, r + 1, &VertexSet::new());
            prop_assert!(a.iter().all(|v| b.contains(v)));
        }

        #[test]
        fn ball_is_union_of_spheres(g in arb_graph(), r in 0usize..5) {
            let x = VertexSet::singleton(0);
            let none = VertexSet::new();
            let mut acc = VertexSet::new();
            for i in 0..=r {
                acc = acc.union(&g.sphere(&x, i, &none));
            }
            prop_assert_eq!(acc, g.ball(&x, r, &none));
        }

        #[test]
        fn degree_sum_is_twice_edges(g in arb_graph()) {
            let s: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(s, 2 * g.m());
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
