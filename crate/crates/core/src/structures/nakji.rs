//! Nakjis: a small head joined by long arms to small, far-apart legs.

use serde::{Deserialize, Serialize};

use super::internally_disjoint;
use crate::error::Violation;
use crate::graph::{Graph, Path, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NakjiParams {
    /// Number of legs.
    pub t: usize,
    /// Largest head or leg.
    pub s: usize,
    /// Leg diameter; arms have length at most `10 r`.
    pub r: usize,
    /// Separation between legs, and between legs and the head.
    pub tau: usize,
}

/// Arm `i` runs from the head to `legs[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nakji {
    pub params: NakjiParams,
    pub head: VertexSet,
    pub legs: Vec<VertexSet>,
    pub arms: Vec<Path>,
}

impl Nakji {
    pub fn vertices(&self) -> VertexSet {
        self.legs
            .iter()
            .flat_map(|l| l.iter())
            .chain(self.head.iter())
            .chain(self.arms.iter().flat_map(|a| a.vertices().iter().copied()))
            .collect()
    }
}

fn diameter(host: &Graph, set: &VertexSet) -> Option<usize> {
    let none = vec![false; host.n()];
    let mut worst = 0;
    for v in set.iter() {
        let dist = host.bfs(&[v], &none, usize::MAX);
        for w in set.iter() {
            if dist[w] == usize::MAX {
                return None;
            }
            worst = worst.max(dist[w]);
        }
    }
    Some(worst)
}

fn set_distance(host: &Graph, a: &VertexSet, b: &VertexSet) -> usize {
    let dist = host.bfs(a.as_slice(), &vec![false; host.n()], usize::MAX);
    b.iter().map(|v| dist[v]).min().unwrap_or(usize::MAX)
}

pub fn validate_nakji(host: &Graph, nakji: &Nakji) -> Result<(), Violation> {
    let NakjiParams { t, s, r, tau } = nakji.params;
    if let Some(v) = nakji.vertices().iter().find(|&v| v >= host.n()) {
        return Err(Violation::new("vertex range", format!("vertex {v} is not in the host")));
    }
    if nakji.legs.len() != t || nakji.arms.len() != t {
        return Err(Violation::new("leg count", format!("{} legs and {} arms, expected {t}", nakji.legs.len(), nakji.arms.len())));
    }
    for (name, set) in std::iter::once(("head", &nakji.head)).chain(nakji.legs.iter().map(|l| ("leg", l))) {
        if set.is_empty() || set.len() > s {
            return Err(Violation::new("set sizes", format!("a {name} has {} vertices, allowed 1..={s}", set.len())));
        }
    }
    let mut seen = nakji.head.clone();
    for (i, leg) in nakji.legs.iter().enumerate() {
        if !leg.is_disjoint(&seen) {
            return Err(Violation::new("disjoint sets", format!("leg {i} meets the head or an earlier leg")));
        }
        seen = seen.union(leg);
        match diameter(host, leg) {
            Some(d) if d <= r => {}
            d => return Err(Violation::new("leg diameter", format!("leg {i} has diameter {d:?}, allowed {r}"))),
        }
    }
    for (i, leg) in nakji.legs.iter().enumerate() {
        let d = set_distance(host, leg, &nakji.head);
        if d < tau {
            return Err(Violation::new("distance at least τ", format!("leg {i} is at distance {d} from the head")));
        }
        for (j, other) in nakji.legs.iter().enumerate().skip(i + 1) {
            let d = set_distance(host, leg, other);
            if d < tau {
                return Err(Violation::new("distance at least τ", format!("legs {i} and {j} are at distance {d}")));
            }
        }
    }
    for (i, a) in nakji.arms.iter().enumerate() {
        let v = a.vertices();
        let ends_ok = nakji.head.contains(a.start())
            && nakji.legs[i].contains(a.end())
            && !v[1..].iter().any(|&x| nakji.head.contains(x))
            && !v[..v.len() - 1].iter().any(|&x| nakji.legs[i].contains(x));
        if !host.is_path(v) || !ends_ok {
            return Err(Violation::new("arm path", format!("arm {i} is not a path from the head to leg {i}")));
        }
        if a.len() > 10 * r {
            return Err(Violation::new("arm length", format!("arm {i} has length {}, allowed {}", a.len(), 10 * r)));
        }
    }
    let arms: Vec<&[usize]> = nakji.arms.iter().map(|a| a.vertices()).collect();
    if let Some((i, j, v)) = internally_disjoint(&arms) {
        return Err(Violation::new("arms internally disjoint", format!("arms {i} and {j} share {v}")));
    }
    for a in &nakji.arms {
        if let Some(&v) = a.interior().iter().find(|&&v| nakji.legs.iter().any(|l| l.contains(v))) {
            return Err(Violation::new("legs off arms", format!("leg vertex {v} is inside an arm")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NakjiBuild {
    pub nakjis: Vec<Nakji>,
    pub requested: usize,
    /// Pairs of subexpanders closer than `2 tau`, with their distance.
    pub close_pairs: Vec<(usize, usize, usize)>,
    pub trace: Vec<String>,
}

impl NakjiBuild {
    pub fn complete(&self) -> bool {
        self.nakjis.len() >= self.requested
    }
}

/// Tries each subexpander in list order as a head. Legs grow from the
/// remaining subexpanders, starting at the vertex nearest the head, while
/// the diameter stays within `r`. Arms are shortest paths from the head to
/// the union of candidate legs, so each stops at its first leg contact.
/// Nakjis are vertex disjoint. Close subexpander pairs are reported, not
/// rejected.
pub fn build_nakjis(
    g: &Graph,
    avoid: &VertexSet,
    params: NakjiParams,
    count: usize,
    subexpanders: &[VertexSet],
) -> NakjiBuild {
    let n = g.n();
    let NakjiParams { t, s, r, tau } = params;
    let mut out = NakjiBuild { nakjis: Vec::new(), requested: count, close_pairs: Vec::new(), trace: Vec::new() };
    let sets: Vec<VertexSet> = subexpanders.iter().map(|f| f.iter().filter(|&v| v < n).collect()).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].is_empty() || sets[j].is_empty() {
                continue;
            }
            let d = set_distance(g, &sets[i], &sets[j]);
            if d < 2 * tau {
                out.close_pairs.push((i, j, d));
                out.trace.push(format!("subexpanders {i} and {j} are at distance {d} < {}", 2 * tau));
            }
        }
    }
    let mut used = avoid.mask(n);
    let mut consumed = vec![false; sets.len()];
    for h in 0..sets.len() {
        if out.nakjis.len() >= count {
            break;
        }
        if consumed[h] {
            continue;
        }
        let head = grow(g, &sets[h], &used, None, s, usize::MAX);
        if head.is_empty() {
            continue;
        }
        let dist_head = g.bfs(head.as_slice(), &used, usize::MAX);
        let mut candidates: Vec<(usize, VertexSet)> = Vec::new();
        for (j, f) in sets.iter().enumerate() {
            if j == h || consumed[j] {
                continue;
            }
            let leg = grow(g, f, &used, Some(&dist_head), s, r);
            if !leg.is_empty() && set_distance(g, &leg, &head) >= tau && leg.is_disjoint(&head) {
                candidates.push((j, leg));
            }
        }
        match arms_from(g, &used, &head, candidates, params) {
            Some((legs, arms, sources)) => {
                let nakji = Nakji { params, head, legs, arms };
                if let Err(v) = validate_nakji(g, &nakji) {
                    out.trace.push(format!("head {h}: internal: built nakji fails validation: {v}"));
                    continue;
                }
                out.trace.push(format!("head {h}: legs from subexpanders {sources:?}"));
                for v in nakji.vertices().iter() {
                    used[v] = true;
                }
                consumed[h] = true;
                for j in sources {
                    consumed[j] = true;
                }
                out.nakjis.push(nakji);
            }
            None => out.trace.push(format!("head {h}: fewer than {t} legs reachable within length {}", 10 * r)),
        }
    }
    if out.nakjis.len() < count {
        out.trace.push(format!("built {} of {count} nakjis", out.nakjis.len()));
    }
    out
}

/// Up to `limit` vertices of `f - used`, from the one nearest the head (or
/// the smallest) outwards, keeping host diameter at most `max_diam`.
fn grow(g: &Graph, f: &VertexSet, used: &[bool], near: Option<&Vec<usize>>, limit: usize, max_diam: usize) -> VertexSet {
    let free: Vec<usize> = f.iter().filter(|&v| !used[v]).collect();
    let Some(&start) = free.iter().min_by_key(|&&v| (near.map_or(0, |d| d[v]), v)) else {
        return VertexSet::new();
    };
    let none = vec![false; g.n()];
    let from_start = g.bfs(&[start], &none, usize::MAX);
    let mut order = free.clone();
    order.sort_by_key(|&v| (from_start[v], v));
    let mut set: Vec<usize> = Vec::new();
    for v in order {
        if set.len() >= limit {
            break;
        }
        let dv = g.bfs(&[v], &none, usize::MAX);
        if set.iter().all(|&w| dv[w] <= max_diam) {
            set.push(v);
        }
    }
    set.into_iter().collect()
}

type Arms = (Vec<VertexSet>, Vec<Path>, Vec<usize>);

fn arms_from(g: &Graph, used: &[bool], head: &VertexSet, mut candidates: Vec<(usize, VertexSet)>, params: NakjiParams) -> Option<Arms> {
    let n = g.n();
    let NakjiParams { t, r, tau, .. } = params;
    let mut wall = used.to_vec();
    let (mut legs, mut arms, mut sources) = (Vec::new(), Vec::new(), Vec::new());
    while legs.len() < t {
        let mut target = vec![false; n];
        let mut owner = vec![usize::MAX; n];
        for (k, (_, leg)) in candidates.iter().enumerate() {
            for v in leg.iter() {
                target[v] = true;
                owner[v] = k;
            }
        }
        for leg in &legs {
            for v in VertexSet::iter(leg) {
                wall[v] = true;
            }
        }
        let path = g.shortest_path(head.as_slice(), &target, &wall)?;
        if path.len() - 1 > 10 * r {
            return None;
        }
        let (j, leg) = candidates.swap_remove(owner[*path.last().unwrap()]);
        for &v in &path[1..path.len() - 1] {
            wall[v] = true;
        }
        candidates.retain(|(_, other)| set_distance(g, other, &leg) >= tau);
        legs.push(leg);
        arms.push(Path::unchecked(path));
        sources.push(j);
    }
    Some((legs, arms, sources))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::gen;

    /// Central K4 on 0..4 joined by paths of length 5 to three K4s.
    fn octopus() -> (Graph, Vec<VertexSet>) {
        let mut edges = Vec::new();
        let k4 = |base: usize, edges: &mut Vec<(usize, usize)>| {
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push((base + a, base + b));
                }
            }
            VertexSet::from_iter(base..base + 4)
        };
        let mut sets = vec![k4(0, &mut edges)];
        let mut next = 4;
        for arm in 0..3 {
            let mut prev = arm;
            for _ in 0..4 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            let leg = k4(next, &mut edges);
            edges.push((prev, next));
            next += 4;
            sets.push(leg);
        }
        (Graph::from_edges(next, &edges).unwrap(), sets)
    }

    #[test]
    fn validator_examples() {
        let g = gen::path(5);
        let params = NakjiParams { t: 2, s: 1, r: 1, tau: 2 };
        let ok = Nakji {
            params,
            head: VertexSet::singleton(2),
            legs: vec![VertexSet::singleton(0), VertexSet::singleton(4)],
            arms: vec![Path::unchecked(vec![2, 1, 0]), Path::unchecked(vec![2, 3, 4])],
        };
        validate_nakji(&g, &ok).unwrap();

        let g = gen::path(6);
        let params = NakjiParams { t: 2, s: 1, r: 1, tau: 2 };
        let adjacent = Nakji {
            params,
            head: VertexSet::singleton(0),
            legs: vec![VertexSet::singleton(4), VertexSet::singleton(5)],
            arms: vec![Path::unchecked(vec![0, 1, 2, 3, 4]), Path::unchecked(vec![0, 1, 2, 3, 4, 5])],
        };
        assert_eq!(validate_nakji(&g, &adjacent).unwrap_err().clause, "distance at least τ");

        let mut through = ok.clone();
        through.params.tau = 1;
        through.legs[0] = VertexSet::singleton(1);
        through.arms[0] = Path::unchecked(vec![2, 1]);
        through.arms[1] = Path::unchecked(vec![2, 3, 4]);
        validate_nakji(&gen::path(5), &through).unwrap();
        through.legs[1] = VertexSet::singleton(4);
        through.arms[1] = Path::unchecked(vec![2, 1, 0]);
        assert!(validate_nakji(&gen::path(5), &through).is_err());
    }

    #[test]
    fn builder_examples() {
        let (g, sets) = octopus();
        let params = NakjiParams { t: 3, s: 4, r: 1, tau: 3 };
        let built = build_nakjis(&g, &VertexSet::new(), params, 1, &sets);
        assert_eq!(built.nakjis.len(), 1);
        let nakji = &built.nakjis[0];
        assert_eq!(nakji.head, sets[0]);
        assert_eq!(nakji.legs.len(), 3);
        assert!(nakji.arms.iter().all(|a| a.len() == 5));
        validate_nakji(&g, nakji).unwrap();

        let g = gen::path(12);
        let sets = vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([10, 11])];
        let params = NakjiParams { t: 1, s: 2, r: 1, tau: 4 };
        let built = build_nakjis(&g, &VertexSet::new(), params, 1, &sets);
        assert_eq!(built.nakjis[0].arms[0].vertices(), (1..=10).collect::<Vec<_>>());

        let built = build_nakjis(&g, &VertexSet::new(), params, 2, &sets);
        assert!(!built.complete());
        let built = build_nakjis(&g, &VertexSet::new(), NakjiParams { tau: 6, ..params }, 1, &sets);
        assert_eq!(built.close_pairs, vec![(0, 1, 9)]);
    }

    #[test]
    fn recognises_a_bare_nakji() {
        let (g, sets) = octopus();
        let params = NakjiParams { t: 3, s: 4, r: 1, tau: 5 };
        let built = build_nakjis(&g, &VertexSet::new(), params, 1, &sets);
        assert_eq!(built.nakjis.len(), 1);
        assert_eq!(built.nakjis[0].vertices().len(), g.n());
    }

    #[test]
    fn arms_stop_at_first_leg() {
        // Leg 1 sits on the way to leg 2; the arm to leg 2 must not cross it.
        let g = gen::path(20);
        let sets = vec![VertexSet::singleton(0), VertexSet::singleton(6), VertexSet::singleton(12)];
        let params = NakjiParams { t: 2, s: 1, r: 2, tau: 3 };
        let built = build_nakjis(&g, &VertexSet::new(), params, 1, &sets);
        assert_eq!(built.nakjis[0].head, VertexSet::singleton(6));
        assert!(built.trace[0].starts_with("head 0: fewer than 2 legs"));
        let params = NakjiParams { t: 1, ..params };
        let built = build_nakjis(&g, &VertexSet::new(), params, 1, &sets);
        assert_eq!(built.nakjis[0].legs, vec![VertexSet::singleton(6)]);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn built_nakjis_validate(n in 10usize..60, extra in 0usize..30, seed in 0u64..1000, t in 1usize..4, s in 1usize..4, r in 0usize..3, tau in 0usize..4) {
            let g = gen::random_connected(n, extra, seed);
            let sets: Vec<VertexSet> = (0..n).step_by(5).map(|v| g.ball(&VertexSet::singleton(v), 1, &VertexSet::new())).collect();
            let built = build_nakjis(&g, &VertexSet::new(), NakjiParams { t, s, r, tau }, 3, &sets);
            let mut seen = VertexSet::new();
            for nk in &built.nakjis {
                proptest::prop_assert!(validate_nakji(&g, nk).is_ok());
                proptest::prop_assert!(nk.vertices().is_disjoint(&seen));
                seen = seen.union(&nk.vertices());
                for a in &nk.arms {
                    proptest::prop_assert!(a.interior().iter().all(|&v| nk.legs.iter().all(|l| !l.contains(v))));
                }
            }
        }
    }
}
