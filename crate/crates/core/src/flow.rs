//! Vertex-disjoint path search via unit-capacity max flow on a split graph.

use std::collections::VecDeque;

use crate::graph::Graph;

struct Net {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl Net {
    fn new(nodes: usize) -> Self {
        Net { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, a: usize, b: usize, c: i32) {
        self.adj[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.adj[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let w = self.head[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = e;
                    if w == t {
                        let mut cur = t;
                        while cur != s {
                            let e = via[cur];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            cur = self.head[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// Maximum family of paths from `source` to distinct vertices of `targets`
/// that pairwise share only `source`. Interior vertices must satisfy
/// `allowed`; targets are never used as interior vertices.
pub fn disjoint_paths(g: &Graph, source: usize, targets: &[usize], allowed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let inn = |v: usize| 2 * v;
    let out = |v: usize| 2 * v + 1;
    let sink = 2 * n;
    let mut is_target = vec![false; n];
    for &t in targets {
        if t != source {
            is_target[t] = true;
        }
    }
    let mut net = Net::new(2 * n + 1);
    for v in 0..n {
        if v == source || is_target[v] {
            continue;
        }
        if allowed[v] {
            net.arc(inn(v), out(v), 1);
        }
    }
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if is_target[a] || b == source {
                continue;
            }
            net.arc(out(a), inn(b), 1);
        }
    }
    for v in 0..n {
        if is_target[v] {
            net.arc(inn(v), sink, 1);
        }
    }
    while net.augment(out(source), sink) {}
    // Decompose: follow saturated forward arcs from the source.
    let mut used = vec![false; net.head.len()];
    let mut paths = Vec::new();
    loop {
        let mut path = vec![source];
        let mut node = out(source);
        let mut ok = false;
        'walk: loop {
            for &e in &net.adj[node] {
                if e % 2 == 0 && net.cap[e] == 0 && !used[e] {
                    used[e] = true;
                    let w = net.head[e];
                    if w == sink {
                        ok = true;
                        break 'walk;
                    }
                    if w % 2 == 0 {
                        path.push(w / 2);
                    }
                    node = w;
                    continue 'walk;
                }
            }
            break;
        }
        if !ok {
            break;
        }
        paths.push(path);
    }
    paths
}

/// Vertex connectivity. Complete graphs on `n` vertices give `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    let all = vec![true; n];
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let mut allowed = all.clone();
            allowed[t] = false;
            let k = disjoint_paths(g, s, g.neighbors(t), &allowed).len();
            best = best.min(k);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn connectivity_of_small_graphs() {
        assert_eq!(vertex_connectivity(&complete(5)), 4);
        assert_eq!(vertex_connectivity(&cycle(7)), 2);
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&path), 1);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&two), 0);
    }

    #[test]
    fn star_paths_are_disjoint() {
        let g = cycle(8);
        let paths = disjoint_paths(&g, 0, &[3, 5], &vec![true; 8]);
        assert_eq!(paths.len(), 2);
        for p in &paths {
            assert!(g.is_path(p));
            assert_eq!(p[0], 0);
        }
        let a: Vec<_> = paths[0][1..].to_vec();
        assert!(paths[1][1..].iter().all(|v| !a.contains(v)));
    }

    #[test]
    fn targets_are_not_interior() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(disjoint_paths(&g, 0, &[1, 2], &[true; 3]).len(), 1);
    }
}
