//! Simple undirected graphs on at most 62 vertices, stored as adjacency masks.

mod automorphism;
mod enumerate;
mod graph6;
mod saturate;

pub use automorphism::{
    automorphism_group, canonical_form, color_refinement, compose, cycle_type, inverse, is_asymmetric, PermGroup,
};
pub use enumerate::{all_graphs, connected_graphs, random_regular};
pub use saturate::{saturate_edges, SaturationResult};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MAX_VERTICES: usize = 62;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphShape {
    Path,
    Cycle,
    Bipartite,
    Archetypal,
}

#[derive(Serialize, Deserialize)]
struct EdgeListJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Build from 0-based edges. Self-loops and out-of-range endpoints are errors;
    /// repeated edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("vertex count {n} outside 1..={MAX_VERTICES}")));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Build from 1-based edges, the convention of edge-list files.
    pub fn from_edges_1based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let e = edges
            .iter()
            .map(|&(u, v)| {
                if u == 0 || v == 0 {
                    Err(Error::InvalidGraph("vertex labels are 1-based".into()))
                } else {
                    Ok((u - 1, v - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &e)
    }

    pub fn complete(n: usize) -> Self {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::new(n, &e).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (0..n.saturating_sub(1)).map(|u| (u, u + 1)).collect();
        Self::new(n, &e).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut e: Vec<_> = (0..n - 1).map(|u| (u, u + 1)).collect();
        e.push((0, n - 1));
        Self::new(n, &e).expect("valid cycle")
    }

    /// Complete bipartite graph with parts `{0..a}` and `{a..a+b}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let e: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::new(a + b, &e).expect("valid complete bipartite graph")
    }

    pub fn star(leaves: usize) -> Self {
        Self::complete_bipartite(1, leaves)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..self.n {
            let mut m = self.adj[u] >> (u + 1);
            let mut v = u + 1;
            while m != 0 {
                if m & 1 == 1 {
                    e.push((u, v));
                }
                m >>= 1;
                v += 1;
            }
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn is_connected(&self) -> bool {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    /// Two-coloring `(V1, V2)` with vertex 0 in `V1`, for connected bipartite graphs.
    pub fn bipartition(&self) -> Option<(u64, u64)> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in 0..self.n {
                    if self.has_edge(u, v) {
                        if color[v] == u8::MAX {
                            color[v] = 1 - color[u];
                            stack.push(v);
                        } else if color[v] == color[u] {
                            return None;
                        }
                    }
                }
            }
        }
        let v1 = (0..self.n).filter(|&u| color[u] == 0).fold(0u64, |m, u| m | 1 << u);
        let v2 = (0..self.n).filter(|&u| color[u] == 1).fold(0u64, |m, u| m | 1 << u);
        Some((v1, v2))
    }

    /// Vertex order along the path, starting at the smaller-labeled endpoint.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_connected() || self.edge_count() != self.n - 1 {
            return None;
        }
        if self.n == 1 {
            return Some(vec![0]);
        }
        if (0..self.n).any(|u| self.degree(u) > 2) {
            return None;
        }
        let start = (0..self.n).find(|&u| self.degree(u) == 1)?;
        Some(self.walk(start))
    }

    /// Vertex order around the cycle: starts at 0 and steps to its smaller neighbor.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if self.n < 3 || !self.is_connected() || (0..self.n).any(|u| self.degree(u) != 2) {
            return None;
        }
        Some(self.walk(0))
    }

    fn walk(&self, start: usize) -> Vec<usize> {
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = (0..self.n).find(|&v| self.has_edge(cur, v) && v != prev && !order.contains(&v));
            match next {
                Some(v) => {
                    order.push(v);
                    prev = cur;
                    cur = v;
                }
                None => break,
            }
        }
        order
    }

    /// Family used by the free-algebra classification. Paths and cycles take
    /// precedence over bipartiteness.
    pub fn shape(&self) -> Result<GraphShape> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.path_order().is_some() {
            Ok(GraphShape::Path)
        } else if self.cycle_order().is_some() {
            Ok(GraphShape::Cycle)
        } else if self.bipartition().is_some() {
            Ok(GraphShape::Bipartite)
        } else {
            Ok(GraphShape::Archetypal)
        }
    }

    /// Graph with vertex `u` renamed to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let e: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &e).expect("relabeling preserves validity")
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        self.edges().into_iter().all(|(u, v)| self.has_edge(perm[u], perm[v]))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn is_complete_bipartite(&self) -> bool {
        match self.bipartition() {
            Some((a, b)) if self.is_connected() => {
                self.edge_count() == (a.count_ones() * b.count_ones()) as usize
            }
            _ => false,
        }
    }

    /// Parse the 1-based edge-list JSON form `{"n": .., "edges": [[u, v], ..]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let j: EdgeListJson = serde_json::from_str(s).map_err(|e| Error::Parse(format!("edge-list JSON: {e}")))?;
        let e: Vec<_> = j.edges.iter().map(|p| (p[0], p[1])).collect();
        Self::from_edges_1based(j.n, &e)
    }

    pub fn to_json(&self) -> String {
        let j = EdgeListJson { n: self.n, edges: self.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect() };
        serde_json::to_string(&j).expect("serializable")
    }

    /// 1-based edge pairs, as used in reports.
    pub fn edges_1based(&self) -> Vec<[usize; 2]> {
        self.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect()
    }

    /// Auto-detect edge-list JSON (leading `{`) or graph6.
    pub fn parse_any(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            Self::from_json(t)
        } else {
            Self::from_graph6(t)
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges_1based())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn house() -> Graph {
        Graph::from_edges_1based(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(Graph::path(4).shape().unwrap(), GraphShape::Path);
        assert_eq!(Graph::cycle(3).shape().unwrap(), GraphShape::Cycle);
        assert_eq!(Graph::star(3).shape().unwrap(), GraphShape::Bipartite);
        assert_eq!(house().shape().unwrap(), GraphShape::Archetypal);
        let disc = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(disc.shape(), Err(Error::Disconnected)));
    }

    #[test]
    fn path_order_follows_edges() {
        let g = Graph::from_edges_1based(4, &[(2, 4), (4, 1), (1, 3)]).unwrap();
        assert_eq!(g.path_order().unwrap(), vec![1, 3, 0, 2]);
    }

    #[test]
    fn json_round_trip() {
        let g = house();
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }
}
