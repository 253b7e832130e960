//! Independence number, largest union of two independent sets, chromatic
//! number, and the minor-degree bounds built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_STATS_CAP: usize = 18;
const MASK_LIMIT: usize = 64;

type Mask = u64;

fn bits(m: Mask) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn adjacency(g: &Graph) -> Vec<Mask> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect()
}

fn full(n: usize) -> Mask {
    if n == 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn to_set(m: Mask) -> VertexSet {
    VertexSet::from_sorted(bits(m).collect())
}

/// Maximum independent set inside `cand`.
fn max_independent(adj: &[Mask], cand: Mask) -> Mask {
    fn go(adj: &[Mask], cand: Mask, cur: Mask, best: &mut Mask) {
        if cand == 0 {
            if cur.count_ones() > best.count_ones() {
                *best = cur;
            }
            return;
        }
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        // Vertices of degree at most one in `cand` can always be taken.
        if let Some(v) = bits(cand).find(|&v| (adj[v] & cand).count_ones() <= 1) {
            go(adj, cand & !(1 << v) & !adj[v], cur | 1 << v, best);
            return;
        }
        let v = bits(cand).max_by_key(|&v| (adj[v] & cand).count_ones()).unwrap();
        go(adj, cand & !(1 << v) & !adj[v], cur | 1 << v, best);
        go(adj, cand & !(1 << v), cur, best);
    }
    let mut best = 0;
    go(adj, cand, 0, &mut best);
    best
}

/// Calls `f` on every maximal independent set (Bron–Kerbosch with pivot on
/// the complement).
fn for_each_maximal_independent(adj: &[Mask], n: usize, f: &mut impl FnMut(Mask)) {
    fn run(adj: &[Mask], n: usize, r: Mask, mut p: Mask, mut x: Mask, f: &mut impl FnMut(Mask)) {
        if p == 0 && x == 0 {
            f(r);
            return;
        }
        let non = |v: usize| !adj[v] & !(1 << v) & full(n);
        let pivot = bits(p | x).max_by_key(|&u| (p & non(u)).count_ones()).unwrap();
        for v in bits(p & !non(pivot)) {
            run(adj, n, r | 1 << v, p & non(v), x & non(v), f);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    run(adj, n, 0, full(n), 0, f);
}

fn is_independent(adj: &[Mask], s: Mask) -> bool {
    bits(s).all(|v| adj[v] & s == 0)
}

fn greedy_independent(adj: &[Mask], mut cand: Mask) -> Mask {
    let mut out = 0;
    while cand != 0 {
        let v = bits(cand).min_by_key(|&v| ((adj[v] & cand).count_ones(), v)).unwrap();
        out |= 1 << v;
        cand &= !(1 << v) & !adj[v];
    }
    out
}

/// Smallest `k` admitting a proper colouring, by backtracking in
/// saturation order.
fn chromatic_exact(adj: &[Mask], n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    fn colourable(adj: &[Mask], n: usize, k: usize, colour: &mut Vec<usize>, done: usize) -> bool {
        if done == n {
            return true;
        }
        // Most saturated uncoloured vertex.
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| {
                let used: u64 = bits(adj[v]).filter(|&w| colour[w] != usize::MAX).fold(0, |m, w| m | 1 << colour[w]);
                (used.count_ones(), adj[v].count_ones(), std::cmp::Reverse(v))
            })
            .unwrap();
        let used: u64 = bits(adj[v]).filter(|&w| colour[w] != usize::MAX).fold(0, |m, w| m | 1 << colour[w]);
        let max_used = (0..n).filter(|&w| colour[w] != usize::MAX).map(|w| colour[w] + 1).max().unwrap_or(0);
        // A fresh colour is interchangeable with any other fresh colour.
        for c in 0..k.min(max_used + 1) {
            if used >> c & 1 == 0 {
                colour[v] = c;
                if colourable(adj, n, k, colour, done + 1) {
                    return true;
                }
                colour[v] = usize::MAX;
            }
        }
        false
    }
    let mut k = 1;
    loop {
        if colourable(adj, n, k, &mut vec![usize::MAX; n], 0) {
            return k;
        }
        k += 1;
    }
}

fn chromatic_greedy(adj: &[Mask], n: usize) -> usize {
    let mut colour = vec![usize::MAX; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| {
                let used: u64 = bits(adj[v]).filter(|&w| colour[w] != usize::MAX).fold(0, |m, w| m | 1 << colour[w]);
                (used.count_ones(), adj[v].count_ones())
            })
            .unwrap();
        let used: u64 = bits(adj[v]).filter(|&w| colour[w] != usize::MAX).fold(0, |m, w| m | 1 << colour[w]);
        colour[v] = (!used).trailing_zeros() as usize;
    }
    colour.iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// Two disjoint independent sets with the largest union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClasses {
    pub a: VertexSet,
    pub b: VertexSet,
    pub exact: bool,
}

impl ColorClasses {
    pub fn size(&self) -> usize {
        self.a.len() + self.b.len()
    }
}

fn check_mask_limit(g: &Graph) -> Result<()> {
    if g.n() > MASK_LIMIT {
        return Err(Error::Invalid(format!("statistics support at most {MASK_LIMIT} vertices, got {}", g.n())));
    }
    Ok(())
}

/// Exact maximum when `|g| <= cap`, greedy otherwise.
pub fn two_color_classes(g: &Graph, cap: usize) -> Result<ColorClasses> {
    check_mask_limit(g)?;
    let n = g.n();
    let adj = adjacency(g);
    let all = full(n);
    if n <= cap {
        // Some optimal pair has a maximal first class.
        let mut best: (Mask, Mask) = (0, 0);
        for_each_maximal_independent(&adj, n, &mut |a| {
            if a.count_ones() + (all & !a).count_ones() <= best.0.count_ones() + best.1.count_ones() {
                return;
            }
            let b = max_independent(&adj, all & !a);
            if a.count_ones() + b.count_ones() > best.0.count_ones() + best.1.count_ones() {
                best = (a, b);
            }
        });
        Ok(ColorClasses { a: to_set(best.0), b: to_set(best.1), exact: true })
    } else {
        let a = greedy_independent(&adj, all);
        let b = greedy_independent(&adj, all & !a);
        Ok(ColorClasses { a: to_set(a), b: to_set(b), exact: false })
    }
}

/// Maximum independent set (exact when `|g| <= cap`).
pub fn independent_set(g: &Graph, cap: usize) -> Result<(VertexSet, bool)> {
    check_mask_limit(g)?;
    let adj = adjacency(g);
    let all = full(g.n());
    Ok(if g.n() <= cap { (to_set(max_independent(&adj, all)), true) } else { (to_set(greedy_independent(&adj, all)), false) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub alpha: usize,
    pub alpha2: usize,
    pub chi: usize,
    pub exact: bool,
}

/// `alpha`, `alpha2` and `chi`. Exact for `|g| <= cap`; above that the
/// values come from greedy constructions.
pub fn graph_stats(g: &Graph, cap: usize) -> Result<GraphStats> {
    check_mask_limit(g)?;
    let n = g.n();
    let adj = adjacency(g);
    let (alpha_set, exact) = independent_set(g, cap)?;
    let classes = two_color_classes(g, cap)?;
    let chi = if exact { chromatic_exact(&adj, n) } else { chromatic_greedy(&adj, n) };
    let s = GraphStats { n, alpha: alpha_set.len(), alpha2: classes.size(), chi, exact };
    if !is_independent(&adj, alpha_set.iter().fold(0, |m, v| m | 1 << v)) {
        return Err(Error::Internal("independent set is not independent".into()));
    }
    if exact && (s.alpha > s.alpha2 || s.alpha2 > 2 * s.alpha || s.alpha2 > n || s.chi * s.alpha < n) {
        return Err(Error::Internal(format!("inconsistent statistics {s:?}")));
    }
    Ok(s)
}

/// Average-degree bounds for forcing `f` as a minor: the lower bound is the
/// limit `2s` of `d(K_{s, n-s})` with `s = t - alpha - 1`; the upper bound is
/// `2t - alpha2` without its lower-order term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorDegreeBounds {
    pub t: usize,
    pub alpha: usize,
    pub alpha2: usize,
    pub lower: i64,
    pub upper: i64,
    pub witness_s: i64,
    pub exact: bool,
}

pub fn minor_degree_bounds(f: &Graph, cap: usize) -> Result<MinorDegreeBounds> {
    let s = graph_stats(f, cap)?;
    let t = f.n() as i64;
    let ws = t - s.alpha as i64 - 1;
    Ok(MinorDegreeBounds {
        t: f.n(),
        alpha: s.alpha,
        alpha2: s.alpha2,
        lower: 2 * ws,
        upper: 2 * t - s.alpha2 as i64,
        witness_s: ws,
        exact: s.exact,
    })
}
