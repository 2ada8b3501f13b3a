use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub graph: Graph,
    pub added: Vec<(usize, usize)>,
    pub rounds: usize,
}

/// Missing edge `{a, e}` implied by a Y configuration: `c` adjacent to `a`,
/// `b`, `d` and `d` adjacent to `e`, five distinct vertices.
fn y_implies(g: &Graph, a: usize, e: usize) -> bool {
    let n = g.n();
    for c in 0..n {
        if c == e || !g.has_edge(a, c) {
            continue;
        }
        for d in 0..n {
            if d == a || d == e || !g.has_edge(c, d) || !g.has_edge(d, e) {
                continue;
            }
            if (0..n).any(|b| b != a && b != d && b != e && g.has_edge(c, b)) {
                return true;
            }
        }
    }
    false
}

/// Missing edge `{a, d}` implied by a paw: triangle `a b c` with `c` adjacent to `d`.
fn paw_implies(g: &Graph, a: usize, d: usize) -> bool {
    let n = g.n();
    for c in 0..n {
        if c == a || c == d || !g.has_edge(a, c) || !g.has_edge(c, d) {
            continue;
        }
        if (0..n).any(|b| b != a && b != c && b != d && g.has_edge(a, b) && g.has_edge(b, c)) {
            return true;
        }
    }
    false
}

/// Add every edge implied by Y and paw configurations until nothing changes.
/// Each round scans the current graph and adds all implied edges at once.
pub fn saturate_edges(g: &Graph) -> Result<SaturationResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.path_order().is_some() || g.cycle_order().is_some() {
        return Err(Error::Precondition("saturation needs a graph that is neither a path nor a cycle".into()));
    }
    let mut cur = g.clone();
    let mut added = Vec::new();
    let mut rounds = 0;
    loop {
        let n = cur.n();
        let new: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !cur.has_edge(u, v))
            .filter(|&(u, v)| y_implies(&cur, u, v) || y_implies(&cur, v, u) || paw_implies(&cur, u, v) || paw_implies(&cur, v, u))
            .collect();
        if new.is_empty() {
            break;
        }
        rounds += 1;
        for &(u, v) in &new {
            cur.add_edge(u, v);
        }
        added.extend(new);
    }
    added.sort_unstable();
    Ok(SaturationResult { graph: cur, added, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn house_saturates_to_complete() {
        let h = Graph::from_edges_1based(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        assert!(saturate_edges(&h).unwrap().graph.is_complete());
    }

    #[test]
    fn spider_saturates_to_k23() {
        let s = Graph::from_edges_1based(5, &[(1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let r = saturate_edges(&s).unwrap().graph;
        assert!(r.is_complete_bipartite());
        let (a, b) = r.bipartition().unwrap();
        let parts = |m: u64| (0..5).filter(|&u| m >> u & 1 == 1).map(|u| u + 1).collect::<Vec<_>>();
        let mut p = [parts(a), parts(b)];
        p.sort();
        assert_eq!(p, [vec![1, 2, 4], vec![3, 5]]);
    }

    #[test]
    fn fixpoints_and_preconditions() {
        let k = Graph::complete_bipartite(2, 3);
        assert!(saturate_edges(&k).unwrap().added.is_empty());
        assert!(matches!(saturate_edges(&Graph::cycle(5)), Err(Error::Precondition(_))));
    }
}
