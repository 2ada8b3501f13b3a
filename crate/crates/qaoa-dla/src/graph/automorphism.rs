use super::Graph;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Largest automorphism group that will be materialized element by element.
pub const MAX_GROUP_ORDER: usize = 2_000_000;

/// Stable vertex coloring by iterated neighbor-color multisets. Colors are
/// ranks of sorted signatures, hence invariant under relabeling.
pub fn color_refinement(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut color: Vec<u32> = (0..n).map(|u| g.degree(u) as u32).collect();
    let mut classes = rank(&color.iter().map(|&c| vec![c]).collect::<Vec<_>>(), &mut color);
    loop {
        let sigs: Vec<Vec<u32>> = (0..n)
            .map(|u| {
                let mut s: Vec<u32> = (0..n).filter(|&v| g.has_edge(u, v)).map(|v| color[v]).collect();
                s.sort_unstable();
                s.insert(0, color[u]);
                s
            })
            .collect();
        let mut next = vec![0; n];
        let k = rank(&sigs, &mut next);
        color = next;
        if k == classes {
            return color;
        }
        classes = k;
    }
}

fn rank(sigs: &[Vec<u32>], out: &mut [u32]) -> usize {
    let distinct: BTreeSet<&Vec<u32>> = sigs.iter().collect();
    let order: Vec<&Vec<u32>> = distinct.into_iter().collect();
    for (u, s) in sigs.iter().enumerate() {
        out[u] = order.binary_search(&s).unwrap() as u32;
    }
    order.len()
}

struct AutSearch<'a> {
    g: &'a Graph,
    color: Vec<u32>,
    image: Vec<usize>,
    used: u64,
    found: Vec<Vec<usize>>,
    limit: usize,
    stop_at_nontrivial: bool,
    overflow: bool,
}

impl AutSearch<'_> {
    fn run(&mut self, u: usize) {
        if self.overflow || (self.stop_at_nontrivial && self.found.iter().any(|p| !is_identity(p))) {
            return;
        }
        let n = self.g.n();
        if u == n {
            if self.found.len() >= self.limit {
                self.overflow = true;
                return;
            }
            self.found.push(self.image.clone());
            return;
        }
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.color[v] != self.color[u] {
                continue;
            }
            if (0..u).any(|w| self.g.has_edge(u, w) != self.g.has_edge(v, self.image[w])) {
                continue;
            }
            self.image[u] = v;
            self.used |= 1 << v;
            self.run(u + 1);
            self.used &= !(1 << v);
        }
    }
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

/// `true` when the only automorphism is the identity.
pub fn is_asymmetric(g: &Graph) -> bool {
    let color = color_refinement(g);
    let distinct: BTreeSet<u32> = color.iter().copied().collect();
    if distinct.len() == g.n() {
        return true;
    }
    let mut s = AutSearch {
        g,
        color,
        image: vec![0; g.n()],
        used: 0,
        found: Vec::new(),
        limit: usize::MAX,
        stop_at_nontrivial: true,
        overflow: false,
    };
    s.run(0);
    s.found.iter().all(|p| is_identity(p))
}

/// Finite permutation group given by its full element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Vec<usize>>,
    generators: Vec<Vec<usize>>,
}

pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    if g.n() > 12 {
        return Err(Error::Resource(format!("automorphism groups are materialized for n <= 12, got {}", g.n())));
    }
    let mut s = AutSearch {
        g,
        color: color_refinement(g),
        image: vec![0; g.n()],
        used: 0,
        found: Vec::new(),
        limit: MAX_GROUP_ORDER,
        stop_at_nontrivial: false,
        overflow: false,
    };
    s.run(0);
    if s.overflow {
        return Err(Error::Resource(format!("automorphism group larger than {MAX_GROUP_ORDER}")));
    }
    let mut elements = s.found;
    elements.sort();
    Ok(PermGroup::from_elements(g.n(), elements))
}

impl PermGroup {
    /// Elements must form a group; they are kept in lexicographic order.
    pub fn from_elements(n: usize, mut elements: Vec<Vec<usize>>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators: Vec<Vec<usize>> = Vec::new();
        let mut span: BTreeSet<Vec<usize>> = BTreeSet::new();
        span.insert((0..n).collect());
        for e in &elements {
            if span.contains(e) {
                continue;
            }
            generators.push(e.clone());
            span = closure(n, &generators);
        }
        PermGroup { n, elements, generators }
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_elements(n, vec![(0..n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }
    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| compose(&g[i], &g[j]) == compose(&g[j], &g[i])))
    }

    /// Vertex orbits, each sorted, ordered by smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for u in 0..self.n {
            if seen[u] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements.iter().map(|p| p[u]).collect();
            for &v in &orbit {
                seen[v] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    /// Edge orbits of `g`, each sorted, ordered by smallest edge.
    pub fn edge_orbits(&self, g: &Graph) -> Vec<Vec<(usize, usize)>> {
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut out = Vec::new();
        for (u, v) in g.edges() {
            if seen.contains(&(u, v)) {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> = self
                .elements
                .iter()
                .map(|p| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            seen.extend(orbit.iter().copied());
            out.push(orbit.into_iter().collect());
        }
        out
    }
}

/// `(a ∘ b)(u) = a(b(u))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&u| a[u]).collect()
}

pub fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (u, &v) in a.iter().enumerate() {
        inv[v] = u;
    }
    inv
}

/// Cycle lengths of a permutation, including fixed points, in descending order.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut u = s;
        while !seen[u] {
            seen[u] = true;
            u = p[u];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn closure(n: usize, gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    let id: Vec<usize> = (0..n).collect();
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g, &x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Canonical relabeling: the least graph6 bit string over all orderings that
/// list the refined color classes in order. Supports `n <= 11`.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if n > 11 {
        return Err(Error::Resource(format!("canonical form supports n <= 11, got {n}")));
    }
    let color = color_refinement(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let ncolors = *color.iter().max().unwrap_or(&0) as usize + 1;
    for c in 0..ncolors {
        cells.push((0..n).filter(|&u| color[u] as usize == c).collect());
    }
    let slot_cell: Vec<usize> = cells.iter().enumerate().flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len())).collect();
    let nbits = n * (n - 1) / 2;
    let mut st = Canon {
        g,
        cells,
        slot_cell,
        nbits,
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
        best_order: Vec::new(),
    };
    st.run(0, 0);
    let mut relabel = vec![0; n];
    for (k, &u) in st.best_order.iter().enumerate() {
        relabel[u] = k;
    }
    Ok(g.relabel(&relabel))
}

struct Canon<'a> {
    g: &'a Graph,
    cells: Vec<Vec<usize>>,
    slot_cell: Vec<usize>,
    nbits: usize,
    order: Vec<usize>,
    used: u64,
    best: Option<u64>,
    best_order: Vec<usize>,
}

impl Canon<'_> {
    fn run(&mut self, acc: u64, len: usize) {
        let j = self.order.len();
        if j == self.g.n() {
            if self.best.is_none_or(|b| acc < b) {
                self.best = Some(acc);
                self.best_order = self.order.clone();
            }
            return;
        }
        let cell = self.cells[self.slot_cell[j]].clone();
        for v in cell {
            if self.used >> v & 1 == 1 {
                continue;
            }
            let mut a = acc;
            for &w in &self.order {
                a = (a << 1) | self.g.has_edge(w, v) as u64;
            }
            let l = len + j;
            if let Some(b) = self.best {
                let prefix = if l == 0 { 0 } else { b >> (self.nbits - l) };
                if a > prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.run(a, l);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}
