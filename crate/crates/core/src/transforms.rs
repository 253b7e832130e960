//! Pattern reductions: splitting high-degree vertices and doubling the
//! vertices outside two independent sets into edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::stats::two_color_classes;
pub use crate::extremal::stats::ColorClasses;
use crate::graph::{Graph, VertexSet};

/// A reduced pattern with the edges to contract to recover the original.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub original: Graph,
    pub result: Graph,
    pub merge_edges: Vec<(usize, usize)>,
    /// Original vertex each result vertex stands for.
    pub origin: Vec<usize>,
    pub notes: Vec<String>,
}

impl ReductionTrace {
    fn identity(h: &Graph) -> Self {
        ReductionTrace {
            original: h.clone(),
            result: h.clone(),
            merge_edges: Vec::new(),
            origin: (0..h.n()).collect(),
            notes: Vec::new(),
        }
    }

    /// The result with every merge edge contracted.
    pub fn contracted(&self) -> Graph {
        self.result.quotient(&self.origin, self.original.n())
    }
}

/// Splits every vertex of degree above `max_degree` into a path of
/// adjacent copies. Each split moves the `max_degree - 1` lowest-id
/// neighbours to a new vertex joined to the old one.
pub fn split_high_degree(h: &Graph, max_degree: usize) -> Result<ReductionTrace> {
    if max_degree < 3 {
        return Err(Error::Precondition(format!("maximum degree must be at least 3, got {max_degree}")));
    }
    let mut trace = ReductionTrace::identity(h);
    let mut adj: Vec<Vec<usize>> = (0..h.n()).map(|v| h.neighbors(v).to_vec()).collect();
    let mut v = 0;
    while v < adj.len() {
        if adj[v].len() <= max_degree {
            v += 1;
            continue;
        }
        let new = adj.len();
        adj[v].sort_unstable();
        let moved: Vec<usize> = adj[v].drain(..max_degree - 1).collect();
        for &w in &moved {
            let slot = adj[w].iter().position(|&x| x == v).unwrap();
            adj[w][slot] = new;
        }
        trace.notes.push(format!("split {v} (origin {}): moved {moved:?} to {new}", trace.origin[v]));
        let mut nb = moved;
        nb.push(v);
        adj.push(nb);
        adj[v].push(new);
        trace.origin.push(trace.origin[v]);
    }
    let edges = adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().map(move |&w| (u, w)));
    trace.result = Graph::from_edges_dedup(adj.len(), edges);
    // Later splits may hand a connecting edge on to a newer copy.
    trace.merge_edges =
        trace.result.edges().into_iter().filter(|&(u, w)| trace.origin[u] == trace.origin[w]).collect();
    Ok(trace)
}

/// `sum_v d(v) / (max_degree - 1)`, the usual estimate of the vertices added
/// by [`split_high_degree`]. The exact count is
/// `sum_v ceil((d(v) - max_degree) / (max_degree - 2))` over high-degree `v`,
/// which exceeds the estimate when `max_degree` is 3.
pub fn split_growth_bound(h: &Graph, max_degree: usize) -> f64 {
    2.0 * h.m() as f64 / (max_degree as f64 - 1.0)
}

/// Turns each vertex `c` outside `a ∪ b` into an edge `c_A c_B`: `c_A` keeps
/// id `c` and takes the neighbours in `b`, `c_B` is new and takes the
/// neighbours in `a`. For adjacent outside vertices `v < w` the edge becomes
/// `v_A w_B`.
pub fn bipartite_double(h: &Graph, a: &VertexSet, b: &VertexSet) -> Result<ReductionTrace> {
    let n = h.n();
    if let Some(v) = a.iter().chain(b.iter()).find(|&v| v >= n) {
        return Err(Error::VertexOutOfRange(v));
    }
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("A and B must be disjoint".into()));
    }
    for (name, s) in [("A", a), ("B", b)] {
        if let Some((u, w)) = h.edges().into_iter().find(|&(u, w)| s.contains(u) && s.contains(w)) {
            return Err(Error::Precondition(format!("{name} is not independent: edge ({u}, {w})")));
        }
    }
    let mut trace = ReductionTrace::identity(h);
    let (in_a, in_b) = (a.mask(n), b.mask(n));
    let mut b_copy = vec![usize::MAX; n];
    for c in 0..n {
        if !in_a[c] && !in_b[c] {
            b_copy[c] = trace.origin.len();
            trace.origin.push(c);
            trace.merge_edges.push((c, b_copy[c]));
        }
    }
    let mut edges = trace.merge_edges.clone();
    for (u, v) in h.edges() {
        let outside = |x: usize| !in_a[x] && !in_b[x];
        let e = match (outside(u), outside(v)) {
            (false, false) => (u, v),
            (false, true) => {
                if in_a[u] {
                    (u, b_copy[v])
                } else {
                    (u, v)
                }
            }
            (true, false) => {
                if in_a[v] {
                    (v, b_copy[u])
                } else {
                    (v, u)
                }
            }
            (true, true) => {
                trace.notes.push(format!("{u}-{v} oriented as {u}_A-{v}_B"));
                (u, b_copy[v])
            }
        };
        edges.push(e);
    }
    trace.result = Graph::from_edges(trace.origin.len(), &edges)?;
    Ok(trace)
}

/// Whether every result vertex has degree at most that of its origin.
pub fn doubling_keeps_degrees(trace: &ReductionTrace) -> bool {
    (0..trace.result.n()).all(|v| trace.result.degree(v) <= trace.original.degree(trace.origin[v]))
}

/// Two disjoint independent sets with the largest union.
pub fn color_classes(h: &Graph, cap: usize) -> Result<ColorClasses> {
    two_color_classes(h, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::gen;
    use crate::oracle::{find_minor, SearchLimits};
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_iter(v.iter().copied())
    }

    #[test]
    fn split_examples() {
        let c5 = gen::cycle(5);
        let t = split_high_degree(&c5, 3).unwrap();
        assert_eq!(t.result, c5);
        assert!(t.merge_edges.is_empty());

        let t = split_high_degree(&gen::star(5), 4).unwrap();
        assert_eq!(t.result.n(), 7);
        assert_eq!(t.result.max_degree(), 4);
        assert_eq!(t.contracted(), gen::star(5));

        // A degree-9 vertex needs four copies when no copy may exceed degree 4.
        let t = split_high_degree(&gen::star(9), 4).unwrap();
        assert_eq!(t.result.n(), 13);
        assert_eq!(t.result.max_degree(), 4);
        assert!(split_high_degree(&gen::star(9), 2).is_err());
    }

    #[test]
    fn double_examples() {
        let c4 = gen::cycle(4);
        let t = bipartite_double(&c4, &set(&[0, 2]), &set(&[1, 3])).unwrap();
        assert_eq!(t.result, c4);
        assert!(t.merge_edges.is_empty());

        let k3 = gen::complete(3);
        let t = bipartite_double(&k3, &set(&[0]), &set(&[1])).unwrap();
        assert_eq!(t.result.n(), 4);
        assert_eq!(t.result, Graph::from_edges(4, &[(0, 1), (0, 3), (1, 2), (2, 3)]).unwrap());
        assert!(t.result.is_bipartite() && t.result.m() == 4 && t.result.max_degree() == 2);
        assert_eq!(t.contracted(), k3);

        let p = gen::path(4);
        let t = bipartite_double(&p, &set(&[0]), &set(&[3])).unwrap();
        assert!(t.notes.iter().any(|s| s == "1-2 oriented as 1_A-2_B"));
        assert!(t.result.has_edge(1, t.origin.iter().rposition(|&o| o == 2).unwrap()));

        assert!(bipartite_double(&k3, &set(&[0, 1]), &set(&[])).is_err());
    }

    #[test]
    fn color_class_examples() {
        let q3 = gen::hypercube(3);
        assert_eq!(color_classes(&q3, 18).unwrap().size(), 8);
        assert_eq!(color_classes(&gen::complete(5), 18).unwrap().size(), 2);
        assert_eq!(color_classes(&gen::cycle(5), 18).unwrap().size(), 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn split_contracts_back(n in 2usize..=10, p in 0.2f64..0.9, seed in 0u64..5000, cap in 3usize..6) {
            let h = gen::gnp(n, p, seed);
            let t = split_high_degree(&h, cap).unwrap();
            prop_assert!(t.result.max_degree() <= cap);
            prop_assert_eq!(t.contracted(), h.clone());
            let splits: usize = (0..n).map(|v| h.degree(v).saturating_sub(cap).div_ceil(cap - 2)).sum();
            prop_assert_eq!(t.result.n() - n, splits);
            prop_assert_eq!(t.merge_edges.len(), t.result.n() - n);
            for &(u, v) in &t.merge_edges {
                prop_assert!(t.result.has_edge(u, v) && t.origin[u] == t.origin[v]);
            }
        }

        #[test]
        fn double_is_bipartite_and_contracts_back(n in 2usize..=8, p in 0.2f64..0.9, seed in 0u64..5000) {
            let h = gen::gnp(n, p, seed);
            let cc = color_classes(&h, 18).unwrap();
            let t = bipartite_double(&h, &cc.a, &cc.b).unwrap();
            prop_assert!(t.result.is_bipartite());
            prop_assert_eq!(t.contracted(), h.clone());
            let found = find_minor(&t.result, &h, SearchLimits::default());
            prop_assert!(found.is_found());
            let outside: Vec<usize> = (0..n).filter(|&v| !cc.a.contains(v) && !cc.b.contains(v)).collect();
            let all_sided = outside.iter().all(|&v| {
                h.neighbors(v).iter().any(|&w| cc.a.contains(w)) && h.neighbors(v).iter().any(|&w| cc.b.contains(w))
            });
            if all_sided {
                prop_assert!(doubling_keeps_degrees(&t));
            }
        }
    }
}
