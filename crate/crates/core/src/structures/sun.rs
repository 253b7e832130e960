//! Suns: an even cycle with pendant leaves on every other cycle vertex.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::graph::{Graph, VertexSet};
use crate::matching::maximum_matching;

/// `cycle` lists `x_1 .. x_2a`; each leaf names its cycle index, which is
/// odd when counted from 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sun {
    pub cycle: Vec<usize>,
    pub leaves: Vec<(usize, usize)>,
}

impl Sun {
    /// Half the cycle length.
    pub fn a(&self) -> usize {
        self.cycle.len() / 2
    }

    pub fn b(&self) -> usize {
        self.leaves.len()
    }

    pub fn vertices(&self) -> VertexSet {
        self.cycle.iter().copied().chain(self.leaves.iter().map(|&(l, _)| l)).collect()
    }

    /// The sun as an abstract graph: cycle positions `0..2a`, then leaves in
    /// order.
    pub fn shape(&self) -> Graph {
        let len = self.cycle.len();
        let mut e: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        for (j, &(_, idx)) in self.leaves.iter().enumerate() {
            e.push((len + j, idx));
        }
        Graph::from_edges_dedup(len + self.leaves.len(), e)
    }
}

pub fn validate_sun(host: &Graph, sun: &Sun) -> std::result::Result<(), Violation> {
    let n = host.n();
    let len = sun.cycle.len();
    if len < 4 || len % 2 == 1 {
        return Err(Violation::new("even cycle", format!("cycle length {len} must be even and at least 4")));
    }
    if let Some(&v) = sun.cycle.iter().chain(sun.leaves.iter().map(|(l, _)| l)).find(|&&v| v >= n) {
        return Err(Violation::new("vertex range", format!("vertex {v} is not in the host")));
    }
    let cyc: VertexSet = sun.cycle.iter().copied().collect();
    if cyc.len() != len {
        return Err(Violation::new("cycle distinct", "cycle repeats a vertex"));
    }
    for i in 0..len {
        let (u, v) = (sun.cycle[i], sun.cycle[(i + 1) % len]);
        if !host.has_edge(u, v) {
            return Err(Violation::new("cycle in host", format!("({u}, {v}) is not an edge")));
        }
    }
    let mut used = vec![false; len];
    let mut seen = VertexSet::new();
    for &(leaf, idx) in &sun.leaves {
        if idx >= len || idx % 2 == 0 {
            return Err(Violation::new("attachment parity", format!("leaf {leaf} attaches at index {idx}")));
        }
        if std::mem::replace(&mut used[idx], true) {
            return Err(Violation::new("one leaf per vertex", format!("index {idx} hosts two leaves")));
        }
        if cyc.contains(leaf) || seen.contains(leaf) {
            return Err(Violation::new("leaves distinct", format!("leaf {leaf} repeats or lies on the cycle")));
        }
        seen.insert(leaf);
        if !host.has_edge(leaf, sun.cycle[idx]) {
            return Err(Violation::new("leaf in host", format!("({leaf}, {}) is not an edge", sun.cycle[idx])));
        }
    }
    if sun.b() > sun.a() {
        return Err(Violation::new("a >= b", format!("{} leaves on a cycle of length {len}", sun.b())));
    }
    Ok(())
}

/// Result of [`find_sun`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SunSearch {
    Sun { sun: Sun, heuristic: bool },
    /// The host is not bipartite; an odd cycle of the requested length.
    OddCycle { cycle: Vec<usize>, heuristic: bool },
    Absent { heuristic: bool },
}

pub const LONGEST_CYCLE_CAP: usize = 16;

/// Longest even and longest odd cycle. Exact by subset DP for small hosts,
/// randomised DFS otherwise; the flag is true when exact.
pub fn longest_cycles(g: &Graph, seed: u64) -> (Option<Vec<usize>>, Option<Vec<usize>>, bool) {
    if g.n() <= LONGEST_CYCLE_CAP {
        let (e, o) = longest_cycles_exact(g);
        (e, o, true)
    } else {
        let (e, o) = longest_cycles_dfs(g, seed);
        (e, o, false)
    }
}

fn longest_cycles_exact(g: &Graph) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
    let n = g.n();
    if n < 3 {
        return (None, None);
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    // ends[mask]: vertices v such that a path from the lowest vertex of mask
    // to v visits exactly mask.
    let mut ends = vec![0u32; 1 << n];
    for s in 0..n {
        ends[1 << s] = 1 << s;
    }
    let mut best: [Option<u32>; 2] = [None, None];
    let mut best_end: [usize; 2] = [0, 0];
    for mask in 1u32..1 << n {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        let low = mask.trailing_zeros() as usize;
        let size = mask.count_ones();
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if size >= 3 && adj[v] >> low & 1 == 1 {
                let p = (size % 2) as usize;
                if best[p].is_none_or(|b| size > b.count_ones()) {
                    best[p] = Some(mask);
                    best_end[p] = v;
                }
            }
            // Extend only by vertices above the start.
            let mut ext = adj[v] & !mask & !((1u32 << (low + 1)) - 1);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let rebuild = |mask: u32, end: usize| -> Vec<usize> {
        let mut path = vec![end];
        let (mut m, mut v) = (mask, end);
        while m.count_ones() > 1 {
            let prev_mask = m & !(1 << v);
            let u = (0..n).find(|&u| ends[prev_mask as usize] >> u & 1 == 1 && adj[u] >> v & 1 == 1).unwrap();
            path.push(u);
            m = prev_mask;
            v = u;
        }
        path.reverse();
        path
    };
    let even = best[0].map(|m| rebuild(m, best_end[0]));
    let odd = best[1].map(|m| rebuild(m, best_end[1]));
    (even, odd)
}

fn longest_cycles_dfs(g: &Graph, seed: u64) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: [Option<Vec<usize>>; 2] = [None, None];
    let restarts = 24;
    let step_budget = 20_000usize;
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..restarts {
        order.shuffle(&mut rng);
        let start = order[0];
        let mut pos = vec![usize::MAX; n];
        let mut path = vec![start];
        pos[start] = 0;
        let mut cursor: Vec<Vec<usize>> = vec![shuffled(g.neighbors(start), &mut rng)];
        let mut steps = 0;
        while let Some(cands) = cursor.last_mut() {
            steps += 1;
            if steps > step_budget {
                break;
            }
            let v = *path.last().unwrap();
            match cands.pop() {
                Some(w) if pos[w] == usize::MAX => {
                    pos[w] = path.len();
                    path.push(w);
                    let next = shuffled(g.neighbors(w), &mut rng);
                    cursor.push(next);
                }
                Some(w) => {
                    let i = pos[w];
                    let len = path.len() - i;
                    if len >= 3 && g.has_edge(v, w) {
                        let p = len % 2;
                        if best[p].as_ref().is_none_or(|b| len > b.len()) {
                            best[p] = Some(path[i..].to_vec());
                        }
                    }
                }
                None => {
                    cursor.pop();
                    let v = path.pop().unwrap();
                    pos[v] = usize::MAX;
                }
            }
        }
    }
    let [even, odd] = best;
    (even, odd)
}

fn shuffled(v: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut v = v.to_vec();
    v.shuffle(rng);
    v
}

/// Looks for a sun with `a + b >= r0` in a connected bipartite host, or an
/// odd cycle of length at least `r0` in a non-bipartite one. The sun is a
/// longest cycle plus a matching from the larger side's off-cycle vertices
/// into the smaller side's cycle vertices.
pub fn find_sun(g: &Graph, r0: usize, seed: u64) -> Result<SunSearch> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Precondition("host must be connected and non-empty".into()));
    }
    let (even, odd, exact) = longest_cycles(g, seed);
    let heuristic = !exact;
    let Some(colour) = g.bipartition() else {
        return Ok(match odd {
            Some(c) if c.len() >= r0 => SunSearch::OddCycle { cycle: c, heuristic },
            _ => SunSearch::Absent { heuristic },
        });
    };
    let Some(mut cycle) = even else { return Ok(SunSearch::Absent { heuristic }) };
    let count0 = colour.iter().filter(|&&c| c == 0).count();
    let small = if count0 <= g.n() - count0 { 0 } else { 1 };
    // Put the smaller side at odd indices, where leaves attach.
    if colour[cycle[1]] != small {
        cycle.rotate_left(1);
    }
    let a = cycle.len() / 2;
    let need = r0.saturating_sub(a);
    let mut leaves = Vec::new();
    if need > 0 {
        let on_cycle = VertexSet::from_iter(cycle.iter().copied());
        let index_of = |v: usize| cycle.iter().position(|&x| x == v).unwrap();
        let edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter_map(|(u, v)| {
                let (s, l) = if colour[u] == small { (u, v) } else { (v, u) };
                (on_cycle.contains(s) && !on_cycle.contains(l)).then_some((s, l))
            })
            .collect();
        let bip = Graph::from_edges_dedup(g.n(), edges);
        let m = maximum_matching(&bip);
        let mut pairs: Vec<(usize, usize)> =
            m.edges().into_iter().map(|(u, v)| if colour[u] == small { (v, index_of(u)) } else { (u, index_of(v)) }).collect();
        pairs.sort_by_key(|&(_, idx)| idx);
        if pairs.len() < need {
            return Ok(SunSearch::Absent { heuristic });
        }
        pairs.truncate(need);
        leaves = pairs;
    }
    let sun = Sun { cycle, leaves };
    validate_sun(g, &sun).map_err(|v| Error::Internal(format!("built sun fails validation: {v}")))?;
    Ok(SunSearch::Sun { sun, heuristic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::gen;
    use proptest::prelude::*;

    #[test]
    fn validator_examples() {
        let c6 = gen::cycle(6);
        let sun = Sun { cycle: (0..6).collect(), leaves: vec![] };
        validate_sun(&c6, &sun).unwrap();
        assert_eq!((sun.a(), sun.b()), (3, 0));
        let mut e = c6.edges();
        e.push((0, 6));
        e.push((1, 7));
        let g = Graph::from_edges(8, &e).unwrap();
        let bad = Sun { cycle: (0..6).collect(), leaves: vec![(6, 0)] };
        assert_eq!(validate_sun(&g, &bad).unwrap_err().clause, "attachment parity");
        let good = Sun { cycle: (0..6).collect(), leaves: vec![(7, 1)] };
        validate_sun(&g, &good).unwrap();
        let c5 = gen::cycle(5);
        assert!(validate_sun(&c5, &Sun { cycle: (0..5).collect(), leaves: vec![] }).is_err());
    }

    #[test]
    fn find_examples() {
        let c6 = gen::cycle(6);
        match find_sun(&c6, 3, 0).unwrap() {
            SunSearch::Sun { sun, heuristic } => {
                assert!(!heuristic);
                assert_eq!((sun.cycle.len(), sun.b()), (6, 0));
            }
            other => panic!("{other:?}"),
        }
        let k24 = gen::gen_complete_bipartite(2, 6).unwrap();
        match find_sun(&k24, 3, 0).unwrap() {
            SunSearch::Sun { sun, .. } => {
                assert_eq!((sun.cycle.len(), sun.b()), (4, 1));
                assert!(sun.cycle.contains(&0) && sun.cycle.contains(&1));
            }
            other => panic!("{other:?}"),
        }
        match find_sun(&gen::complete(4), 3, 0).unwrap() {
            SunSearch::OddCycle { cycle, .. } => assert_eq!(cycle.len() % 2, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(find_sun(&gen::path(5), 2, 0).unwrap(), SunSearch::Absent { .. }));
        assert!(matches!(find_sun(&k24, 5, 0).unwrap(), SunSearch::Absent { .. }));
    }

    fn brute_longest(g: &Graph, parity: usize) -> usize {
        fn go(g: &Graph, start: usize, v: usize, used: &mut Vec<bool>, len: usize, parity: usize, best: &mut usize) {
            for &w in g.neighbors(v) {
                if w == start && len >= 3 && len % 2 == parity {
                    *best = (*best).max(len);
                }
                if !used[w] && w > start {
                    used[w] = true;
                    go(g, start, w, used, len + 1, parity, best);
                    used[w] = false;
                }
            }
        }
        let mut best = 0;
        for s in 0..g.n() {
            let mut used = vec![false; g.n()];
            used[s] = true;
            go(g, s, s, &mut used, 1, parity, &mut best);
        }
        best
    }

    fn is_cycle(g: &Graph, c: &[usize]) -> bool {
        let set: VertexSet = c.iter().copied().collect();
        set.len() == c.len() && c.len() >= 3 && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn exact_longest_cycles(n in 3usize..=9, p in 0.2f64..0.8, seed in 0u64..5000) {
            let g = gen::gnp(n, p, seed);
            let (even, odd) = longest_cycles_exact(&g);
            prop_assert_eq!(even.as_ref().map_or(0, |c| c.len()), brute_longest(&g, 0));
            prop_assert_eq!(odd.as_ref().map_or(0, |c| c.len()), brute_longest(&g, 1));
            for c in even.iter().chain(odd.iter()) {
                prop_assert!(is_cycle(&g, c));
            }
        }

        #[test]
        fn found_suns_are_valid(n in 4usize..=14, extra in 0usize..20, seed in 0u64..5000, r0 in 2usize..8) {
            let g = gen::random_connected(n, extra, seed);
            if let SunSearch::Sun { sun, .. } = find_sun(&g, r0, seed).unwrap() {
                prop_assert!(validate_sun(&g, &sun).is_ok());
                prop_assert!(sun.a() + sun.b() >= r0);
            }
        }

        #[test]
        fn dfs_cycles_are_cycles(n in 17usize..=30, extra in 5usize..40, seed in 0u64..5000) {
            let g = gen::random_connected(n, extra, seed);
            let (even, odd) = longest_cycles_dfs(&g, seed);
            for c in even.iter().chain(odd.iter()) {
                prop_assert!(is_cycle(&g, c));
            }
        }
    }
}
