//! Classification of connected graphs into the six families of free-ansatz
//! algebras, with closed-form dimensions and the explicit string basis.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphShape};
use crate::pauli::{Letter, PauliString, MAX_QUBITS};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    BipartiteEvenEven,
    BipartiteOddOdd,
    BipartiteEvenOdd,
    Archetypal,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::BipartiteEvenEven => "bipartite_even_even",
            Family::BipartiteOddOdd => "bipartite_odd_odd",
            Family::BipartiteEvenOdd => "bipartite_even_odd",
            Family::Archetypal => "archetypal",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub family: Family,
    pub n: usize,
    pub dim_free: u64,
    pub iso_type: String,
    /// 1-based parts `(V1, V2)` with vertex 1 in `V1`, for bipartite families.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    /// Vertex order along a path or around a cycle (0-based).
    #[serde(skip)]
    pub order: Option<Vec<usize>>,
    #[serde(skip)]
    v1_mask: u32,
}

pub fn free_dim_closed_form(family: Family, n: usize) -> u64 {
    let n = n as u64;
    let half = 1u64 << (n - 1);
    match family {
        Family::Path => 2 * n * n - n,
        Family::Cycle => 4 * n * n - 2 * n,
        Family::BipartiteEvenEven => half * half - half,
        Family::BipartiteOddOdd => half * half + half,
        Family::BipartiteEvenOdd => half * half - 1,
        Family::Archetypal => 2 * half * half - 2,
    }
}

pub fn iso_type(family: Family, n: usize) -> String {
    let h = 1u64 << (n - 1);
    match family {
        Family::Path => format!("so({})", 2 * n),
        Family::Cycle => format!("so({0})+so({0})", 2 * n),
        Family::BipartiteEvenEven => format!("so({h})+so({h})"),
        Family::BipartiteOddOdd => format!("sp({h})+sp({h})"),
        Family::BipartiteEvenOdd => format!("su({h})"),
        Family::Archetypal => format!("su({h})+su({h})"),
    }
}

pub fn classify(g: &Graph) -> Result<Classification> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition("classification needs at least two vertices".into()));
    }
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!("n = {n} exceeds {MAX_QUBITS} qubits")));
    }
    let shape = g.shape()?;
    let mut bipartition = None;
    let mut v1_mask = 0u32;
    let mut order = None;
    let family = match shape {
        GraphShape::Path => {
            order = g.path_order();
            Family::Path
        }
        GraphShape::Cycle => {
            order = g.cycle_order();
            Family::Cycle
        }
        GraphShape::Archetypal => Family::Archetypal,
        GraphShape::Bipartite => {
            let (a, b) = g.bipartition().expect("bipartite shape");
            v1_mask = a as u32;
            let list = |m: u64| (0..n).filter(|&u| m >> u & 1 == 1).map(|u| u + 1).collect::<Vec<_>>();
            bipartition = Some((list(a), list(b)));
            match (a.count_ones() % 2, b.count_ones() % 2) {
                (0, 0) => Family::BipartiteEvenEven,
                (1, 1) => Family::BipartiteOddOdd,
                _ => Family::BipartiteEvenOdd,
            }
        }
    };
    Ok(Classification {
        family,
        n,
        dim_free: free_dim_closed_form(family, n),
        iso_type: iso_type(family, n),
        bipartition,
        order,
        v1_mask,
    })
}

fn is_yz(l: Letter) -> bool {
    matches!(l, Letter::Y | Letter::Z)
}

impl Classification {
    /// Membership of `iP` in the explicit basis of the free-ansatz algebra.
    pub fn in_free_basis(&self, p: &PauliString) -> bool {
        let n = self.n;
        if p.n() != n {
            return false;
        }
        let c = p.counts();
        if (c.y + c.z) % 2 == 1 || c.i as usize == n || c.x as usize == n {
            return false;
        }
        match self.family {
            Family::Archetypal => true,
            Family::BipartiteEvenEven | Family::BipartiteOddOdd | Family::BipartiteEvenOdd => {
                let on = p.counts_on(self.v1_mask);
                (c.x + on.y + on.z) % 2 == 1
            }
            Family::Path => {
                let order = self.order.as_ref().expect("path order");
                let seq: Vec<Letter> = order.iter().map(|&u| p.letter(u)).collect();
                path_pattern(&seq)
            }
            Family::Cycle => {
                let order = self.order.as_ref().expect("cycle order");
                let seq: Vec<Letter> = order.iter().map(|&u| p.letter(u)).collect();
                cycle_pattern(&seq)
            }
        }
    }

    /// Every string of the explicit basis, in ascending order.
    pub fn free_basis_strings(&self) -> Vec<PauliString> {
        PauliString::all(self.n).filter(|p| self.in_free_basis(p)).collect()
    }
}

/// Single `X`, or `{Y,Z} X…X {Y,Z}` on a contiguous stretch with `I` elsewhere.
fn path_pattern(seq: &[Letter]) -> bool {
    let ends: Vec<usize> = (0..seq.len()).filter(|&k| is_yz(seq[k])).collect();
    match ends.len() {
        0 => seq.iter().filter(|&&l| l == Letter::X).count() == 1 && seq.iter().all(|&l| matches!(l, Letter::X | Letter::I)),
        2 => {
            let (j, k) = (ends[0], ends[1]);
            (0..seq.len()).all(|t| {
                if t == j || t == k {
                    true
                } else if t > j && t < k {
                    seq[t] == Letter::X
                } else {
                    seq[t] == Letter::I
                }
            })
        }
        _ => false,
    }
}

/// Single `X`, its complement `X…XIX…X`, or two `{Y,Z}` letters with one
/// connecting arc all `X` and the other all `I`.
fn cycle_pattern(seq: &[Letter]) -> bool {
    let n = seq.len();
    let ends: Vec<usize> = (0..n).filter(|&k| is_yz(seq[k])).collect();
    match ends.len() {
        0 => {
            let xs = seq.iter().filter(|&&l| l == Letter::X).count();
            xs == 1 || xs == n - 1
        }
        2 => {
            let (j, k) = (ends[0], ends[1]);
            let inner: Vec<Letter> = (j + 1..k).map(|t| seq[t]).collect();
            let outer: Vec<Letter> = (k + 1..n).chain(0..j).map(|t| seq[t]).collect();
            let all = |v: &[Letter], l: Letter| v.iter().all(|&x| x == l);
            (all(&inner, Letter::X) && all(&outer, Letter::I)) || (all(&inner, Letter::I) && all(&outer, Letter::X))
        }
        _ => false,
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form dimension of the symmetrized algebra where one is known:
/// paths, cycles and complete graphs.
pub fn nat_dim_closed_form(g: &Graph) -> Option<u64> {
    let n = g.n() as u64;
    if n >= 2 && g.path_order().is_some() {
        return Some(n * n);
    }
    if g.cycle_order().is_some() {
        return Some(3 * (n - 1) + 2);
    }
    if n >= 3 && g.is_complete() {
        let c = binom(n + 3, 3);
        // ½C(n+3,3) − 2 (n odd); ½C(n+3,3) + n/4 − 3/2 (n even). Computed in quarters.
        let q = if n % 2 == 1 { 2 * c - 8 } else { 2 * c + n - 6 };
        debug_assert_eq!(q % 4, 0);
        return Some(q / 4);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn house() -> Graph {
        Graph::from_edges_1based(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn closed_forms() {
        let h = classify(&house()).unwrap();
        assert_eq!((h.family, h.dim_free), (Family::Archetypal, 510));
        let p = classify(&Graph::path(4)).unwrap();
        assert_eq!((p.family, p.dim_free, p.iso_type.as_str()), (Family::Path, 28, "so(8)"));
        let s = classify(&Graph::star(3)).unwrap();
        assert_eq!((s.family, s.dim_free, s.iso_type.as_str()), (Family::BipartiteOddOdd, 72, "sp(8)+sp(8)"));
        assert!(matches!(classify(&Graph::new(3, &[(0, 1)]).unwrap()), Err(Error::Disconnected)));
    }

    #[test]
    fn predicate_examples() {
        let s = classify(&Graph::star(3)).unwrap();
        assert!(!s.in_free_basis(&PauliString::parse("IZZI").unwrap()));
        assert!(s.in_free_basis(&PauliString::parse("ZZII").unwrap()));
        let t = classify(&Graph::complete(3)).unwrap();
        assert!(t.in_free_basis(&PauliString::parse("YYI").unwrap()));
        assert!(!t.in_free_basis(&PauliString::parse("XXX").unwrap()));
    }

    #[test]
    fn predicate_counts_match_closed_forms() {
        for g in [Graph::path(5), Graph::cycle(5), Graph::cycle(4), Graph::star(3), Graph::complete_bipartite(2, 3), house()] {
            let c = classify(&g).unwrap();
            assert_eq!(c.free_basis_strings().len() as u64, c.dim_free, "{g:?}");
        }
    }

    #[test]
    fn nat_closed_forms() {
        let k: Vec<_> = (3..=6).map(|n| nat_dim_closed_form(&Graph::complete(n)).unwrap()).collect();
        assert_eq!(k, vec![8, 17, 26, 42]);
        assert_eq!(nat_dim_closed_form(&Graph::path(4)), Some(16));
        assert_eq!(nat_dim_closed_form(&Graph::cycle(5)), Some(14));
        assert_eq!(nat_dim_closed_form(&house()), None);
    }
}
