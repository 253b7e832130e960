//! Graph generators.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planar::PlanarEmbedding;

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    Graph::from_edges_dedup(n, e)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges_dedup(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

pub fn hypercube(dim: usize) -> Graph {
    let n = 1usize << dim;
    Graph::from_edges_dedup(n, (0..n).flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b)))))
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges_dedup(10, e)
}

/// Complete bipartite graph with parts of sizes `s` and `n - s`.
pub fn gen_complete_bipartite(s: usize, n: usize) -> Result<Graph> {
    if s > n {
        return Err(Error::Invalid(format!("part size {s} exceeds vertex count {n}")));
    }
    Ok(Graph::from_edges_dedup(n, (0..s).flat_map(|a| (s..n).map(move |b| (a, b)))))
}

/// Cartesian product of paths with the given lengths (vertex counts).
pub fn gen_grid(dims: &[usize]) -> Result<Graph> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Invalid("grid dimensions must be positive".into()));
    }
    let n: usize = dims.iter().product();
    let mut edges = Vec::new();
    for v in 0..n {
        let mut stride = 1;
        let mut rest = v;
        for &d in dims {
            let coord = rest % d;
            rest /= d;
            if coord + 1 < d {
                edges.push((v, v + stride));
            }
            stride *= d;
        }
    }
    Ok(Graph::from_edges_dedup(n, edges))
}

/// `copies` disjoint copies of `K_q`.
pub fn gen_disjoint_cliques(q: usize, copies: usize) -> Graph {
    let mut edges = Vec::new();
    for c in 0..copies {
        let base = c * q;
        for i in 0..q {
            for j in i + 1..q {
                edges.push((base + i, base + j));
            }
        }
    }
    Graph::from_edges_dedup(q * copies, edges)
}

/// `floor(t/4)` disjoint `K_4`s plus the leftover vertices, strung into one
/// planar graph by a chain of linking edges. Returns the graph with a face
/// list witnessing planarity.
pub fn gen_planar_with_k4s(t: usize) -> Result<PlanarEmbedding> {
    if t < 4 {
        return Err(Error::Invalid("need at least 4 vertices".into()));
    }
    enum Item {
        K4 { a: usize, b: usize, c: usize },
        Single(usize),
    }
    let k = t / 4;
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    let mut items = Vec::new();
    for i in 0..k {
        let (a, b, c, d) = (4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3);
        for (x, y) in [(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)] {
            edges.push((x, y));
        }
        faces.extend([vec![a, b, d], vec![b, c, d], vec![c, a, d]]);
        items.push(Item::K4 { a, b, c });
    }
    // Leftovers sit between the first clique and the rest.
    let singles: Vec<Item> = (4 * k..t).map(Item::Single).collect();
    let rest = items.split_off(1);
    items.extend(singles);
    items.extend(rest);
    let entry = |it: &Item| match *it {
        Item::K4 { a, .. } => a,
        Item::Single(x) => x,
    };
    let exit = |it: &Item| match *it {
        Item::K4 { b, .. } => b,
        Item::Single(x) => x,
    };
    for w in items.windows(2) {
        edges.push((exit(&w[0]), entry(&w[1])));
    }
    let mut outer = Vec::new();
    for it in &items {
        match *it {
            Item::K4 { a, b, c } => outer.extend([a, c, b]),
            Item::Single(x) => outer.push(x),
        }
    }
    let last = items.len() - 1;
    for (i, it) in items.iter().enumerate().rev() {
        match *it {
            Item::K4 { a, b, .. } => {
                if i != last {
                    outer.push(b);
                }
                outer.push(a);
            }
            Item::Single(x) => {
                if i != last {
                    outer.push(x);
                }
            }
        }
    }
    outer.pop();
    faces.push(outer);
    let g = Graph::from_edges(t, &edges)?;
    PlanarEmbedding::new(g, faces)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                e.push((i, j));
            }
        }
    }
    Graph::from_edges_dedup(n, e)
}

/// Random connected graph: a random spanning tree plus `extra` random edges.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    for v in 1..n {
        e.push((rng.gen_range(0..v), v));
    }
    if n >= 2 {
        for _ in 0..extra {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            e.push((a, b));
        }
    }
    Graph::from_edges_dedup(n, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_average_degree() {
        let g = gen_complete_bipartite(5, 50).unwrap();
        assert_eq!(g.average_degree().unwrap(), num_rational::Ratio::new(9, 1));
        assert!(gen_complete_bipartite(6, 5).is_err());
    }

    #[test]
    fn small_grid_is_square() {
        let g = gen_grid(&[2, 2]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 4);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(gen_grid(&[3, 4]).unwrap().m(), 17);
    }

    #[test]
    fn planar_k4_chain() {
        for t in 4..=14 {
            let emb = gen_planar_with_k4s(t).unwrap();
            let g = &emb.graph;
            assert_eq!(g.n(), t);
            assert!(g.is_connected());
            assert_eq!(g.m(), 6 * (t / 4) + t / 4 + t % 4 - 1);
        }
        let g8 = gen_planar_with_k4s(8).unwrap().graph;
        assert_eq!(g8.m(), 13);
        assert!(gen_planar_with_k4s(3).is_err());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(petersen().m(), 15);
        assert!(petersen().neighbors(0).len() == 3);
        assert_eq!(hypercube(3).m(), 12);
        assert_eq!(star(4).degree(0), 4);
    }
}
