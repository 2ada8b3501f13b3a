//! Characters of the natural symmetry group `Z₂ × Aut(G)` acting on qubit
//! bitstrings, with multiplicities from Schur orthogonality.

use crate::error::{Error, Result};
use crate::graph::{compose, cycle_type, PermGroup};
use crate::symmetry::permute_bits;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// `℘(σ)`: every cycle has even length.
pub fn all_cycles_even(sigma: &[usize]) -> bool {
    cycle_type(sigma).iter().all(|&c| c % 2 == 0)
}

/// Trace of `X^{⊗n·flip} ζ[σ]` on `n` qubits.
pub fn chi_nat(flip: bool, sigma: &[usize]) -> u64 {
    let c = cycle_type(sigma).len() as u32;
    if !flip || all_cycles_even(sigma) {
        1u64 << c
    } else {
        0
    }
}

/// `|G_nat| = 2 |Aut(G)|`.
pub fn nat_group_order(grp: &PermGroup) -> u64 {
    2 * grp.order() as u64
}

pub fn trivial_multiplicity(grp: &PermGroup) -> Result<u64> {
    let total: u64 = grp.elements().iter().map(|s| chi_nat(false, s) + chi_nat(true, s)).sum();
    let order = nat_group_order(grp);
    if !total.is_multiple_of(order) {
        return Err(Error::Numerical(format!("character sum {total} not divisible by {order}")));
    }
    Ok(total / order)
}

/// Orbits of `Z₂ × Aut(G)` on `n`-bit strings; by Burnside this is the
/// dimension of the invariant subspace.
pub fn bitstring_orbit_count(n: usize, grp: &PermGroup) -> usize {
    let all = (1u32 << n) - 1;
    let mut seen = vec![false; 1 << n];
    let mut count = 0;
    for b in 0..1u32 << n {
        if seen[b as usize] {
            continue;
        }
        count += 1;
        for s in grp.elements() {
            let t = permute_bits(b, s);
            seen[t as usize] = true;
            seen[(t ^ all) as usize] = true;
        }
    }
    count
}

/// A one-dimensional character of an abelian group, as exponents: the value
/// on element `g` is `exp(2πi · phase[g])` with `phase` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub label: String,
    phases: Vec<(u64, u64)>,
}

impl Character {
    fn value(&self, idx: usize) -> Complex64 {
        let (p, q) = self.phases[idx];
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * p as f64 / q as f64)
    }

    fn is_trivial(&self) -> bool {
        self.phases.iter().all(|&(p, _)| p == 0)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn element_order(sigma: &[usize]) -> u64 {
    cycle_type(sigma).into_iter().fold(1u64, |l, c| l / gcd(l, c as u64) * c as u64)
}

/// All one-dimensional characters of an abelian permutation group, found by
/// assigning roots of unity to the generators and keeping the assignments
/// that extend to homomorphisms.
pub fn abelian_characters(grp: &PermGroup) -> Result<Vec<Character>> {
    if !grp.is_abelian() {
        return Err(Error::Precondition("character table needs an abelian group".into()));
    }
    let elems = grp.elements();
    let index: HashMap<&[usize], usize> = elems.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let gens = grp.generators();
    let orders: Vec<u64> = gens.iter().map(|g| element_order(g)).collect();
    // Exponent vector of each element over the generators, by breadth-first search.
    let id: Vec<usize> = (0..grp.n()).collect();
    let mut word: Vec<Option<Vec<u64>>> = vec![None; elems.len()];
    word[index[id.as_slice()]] = Some(vec![0; gens.len()]);
    let mut queue = vec![id];
    while let Some(e) = queue.pop() {
        let w = word[index[e.as_slice()]].clone().expect("visited");
        for (k, g) in gens.iter().enumerate() {
            let next = compose(g, &e);
            let j = index[next.as_slice()];
            if word[j].is_none() {
                let mut w2 = w.clone();
                w2[k] = (w2[k] + 1) % orders[k];
                word[j] = Some(w2);
                queue.push(next);
            }
        }
    }
    let words: Vec<Vec<u64>> = word.into_iter().map(|w| w.expect("generators generate")).collect();
    let l = orders.iter().fold(1u64, |l, &o| l / gcd(l, o) * o);
    let mut out = Vec::new();
    let mut assign = vec![0u64; gens.len()];
    loop {
        // Generator k maps to exp(2πi · assign[k] / orders[k]); phases kept over l.
        let phase_of = |w: &[u64]| -> u64 {
            w.iter().zip(&assign).zip(&orders).map(|((&e, &a), &o)| e * a * (l / o)).sum::<u64>() % l
        };
        let phases: Vec<u64> = words.iter().map(|w| phase_of(w)).collect();
        let hom = (0..elems.len()).all(|i| {
            (0..elems.len()).all(|j| {
                let k = index[compose(&elems[i], &elems[j]).as_slice()];
                (phases[i] + phases[j]) % l == phases[k]
            })
        });
        if hom {
            out.push(Character { label: String::new(), phases: phases.into_iter().map(|p| (p, l)).collect() });
        }
        // Next assignment.
        let mut k = 0;
        while k < assign.len() {
            assign[k] += 1;
            if assign[k] < orders[k] {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
        if k == assign.len() {
            break;
        }
    }
    if out.len() != elems.len() {
        return Err(Error::Numerical(format!("found {} characters for a group of order {}", out.len(), elems.len())));
    }
    out.sort_by_key(|c| !c.is_trivial());
    let two = out.len() == 2;
    for (i, c) in out.iter_mut().enumerate() {
        c.label = if c.is_trivial() {
            "t".into()
        } else if two {
            "s".into()
        } else {
            format!("c{i}")
        };
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityEntry {
    /// `(flip character, automorphism character)`.
    pub label: (String, String),
    pub multiplicity: u64,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultiplicityTable {
    Full { entries: Vec<MultiplicityEntry> },
    TrivialOnly { trivial: u64 },
}

impl MultiplicityTable {
    pub fn get(&self, flip: &str, aut: &str) -> Option<u64> {
        match self {
            MultiplicityTable::Full { entries } => {
                entries.iter().find(|e| e.label.0 == flip && e.label.1 == aut).map(|e| e.multiplicity)
            }
            MultiplicityTable::TrivialOnly { trivial } => (flip == "t" && aut == "t").then_some(*trivial),
        }
    }
}

pub fn multiplicity_table(grp: &PermGroup) -> Result<MultiplicityTable> {
    if !grp.is_abelian() {
        return Ok(MultiplicityTable::TrivialOnly { trivial: trivial_multiplicity(grp)? });
    }
    let chars = abelian_characters(grp)?;
    let order = nat_group_order(grp) as f64;
    let mut entries = Vec::new();
    for (flip_label, flip_sign) in [("t", 1.0), ("s", -1.0)] {
        for c in &chars {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, s) in grp.elements().iter().enumerate() {
                let v = c.value(i).conj();
                acc += v * chi_nat(false, s) as f64;
                acc += v * flip_sign * chi_nat(true, s) as f64;
            }
            acc /= order;
            let m = acc.re.round();
            if (acc.re - m).abs() > 1e-9 || acc.im.abs() > 1e-9 || m < 0.0 {
                return Err(Error::Numerical(format!("non-integral multiplicity {acc}")));
            }
            entries.push(MultiplicityEntry { label: (flip_label.into(), c.label.clone()), multiplicity: m as u64, degree: 1 });
        }
    }
    Ok(MultiplicityTable::Full { entries })
}

/// Rank of the isotypic projector `|G|⁻¹ Σ χ̄(g) Υ(g)` for each character, by
/// dense eigenvalues. Abelian groups only.
pub fn projector_ranks(n: usize, grp: &PermGroup) -> Result<Vec<((String, String), usize)>> {
    use nalgebra::DMatrix;
    let chars = abelian_characters(grp)?;
    let d = 1usize << n;
    let all = d - 1;
    let order = nat_group_order(grp) as f64;
    let mut out = Vec::new();
    for (flip_label, flip_sign) in [("t", 1.0), ("s", -1.0)] {
        for c in &chars {
            let mut p = DMatrix::<Complex64>::zeros(d, d);
            for (i, s) in grp.elements().iter().enumerate() {
                let v = c.value(i).conj() / order;
                for b in 0..d {
                    let t = permute_bits(b as u32, s) as usize;
                    p[(t, b)] += v;
                    p[(t ^ all, b)] += v * flip_sign;
                }
            }
            let sq = &p * &p;
            if (&sq - &p).norm() > 1e-8 * d as f64 {
                return Err(Error::Numerical("group average is not idempotent".into()));
            }
            // Eigenvalues of an orthogonal projector are 0 or 1.
            let rank = nalgebra::SymmetricEigen::new(p).eigenvalues.iter().filter(|&&e| e > 0.5).count();
            out.push(((flip_label.to_string(), c.label.clone()), rank));
        }
    }
    Ok(out)
}

/// `Σ_{σ∈S_n} 2^{c(σ)}` and, for even `n`, `Σ 2^{c(σ)} ℘(σ)`, by enumerating
/// every permutation.
pub fn cycle_sums(n: usize) -> (u128, Option<u128>) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut total: u128 = 0;
    let mut even: u128 = 0;
    let mut visit = |p: &[usize]| {
        let ct = cycle_type(p);
        let w = 1u128 << ct.len();
        total += w;
        if ct.iter().all(|&l| l % 2 == 0) {
            even += w;
        }
    };
    visit(&perm);
    // Heap's algorithm.
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    (total, n.is_multiple_of(2).then_some(even))
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Multisets `{m_ν repeated d_ν}` and block dimensions, sorted descending.
pub fn duality_multisets(table: &MultiplicityTable, block_dims: &[usize]) -> Option<(Vec<u64>, Vec<u64>)> {
    match table {
        MultiplicityTable::Full { entries } => {
            let mut ms: Vec<u64> = entries
                .iter()
                .filter(|e| e.multiplicity > 0)
                .flat_map(|e| std::iter::repeat_n(e.multiplicity, e.degree as usize))
                .collect();
            ms.sort_unstable_by(|a, b| b.cmp(a));
            let mut ds: Vec<u64> = block_dims.iter().map(|&d| d as u64).collect();
            ds.sort_unstable_by(|a, b| b.cmp(a));
            Some((ms, ds))
        }
        MultiplicityTable::TrivialOnly { .. } => None,
    }
}

/// Distinct cycle types of the group, for reports.
pub fn cycle_type_classes(grp: &PermGroup) -> BTreeSet<Vec<usize>> {
    grp.elements().iter().map(|s| cycle_type(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{automorphism_group, Graph};

    #[test]
    fn chi_examples() {
        assert_eq!(chi_nat(false, &[1, 0, 2, 3]), 8);
        assert_eq!(chi_nat(true, &[1, 2, 0, 3]), 0);
        assert_eq!(chi_nat(true, &[1, 0, 3, 2]), 4);
        assert_eq!(chi_nat(false, &[0, 1, 2, 3]), 16);
    }

    #[test]
    fn house_table() {
        let g = Graph::from_edges_1based(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let grp = automorphism_group(&g).unwrap();
        let t = multiplicity_table(&grp).unwrap();
        let got: Vec<u64> = [("t", "t"), ("s", "t"), ("t", "s"), ("s", "s")].iter().map(|(a, b)| t.get(a, b).unwrap()).collect();
        assert_eq!(got, vec![10, 10, 6, 6]);
        assert_eq!(bitstring_orbit_count(5, &grp), 10);
        for (label, rank) in projector_ranks(5, &grp).unwrap() {
            assert_eq!(Some(rank as u64), t.get(&label.0, &label.1));
        }
    }

    #[test]
    fn empty_component_has_rank_zero() {
        let grp = automorphism_group(&Graph::path(2)).unwrap();
        let t = multiplicity_table(&grp).unwrap();
        let ranks = projector_ranks(2, &grp).unwrap();
        assert_eq!(ranks.iter().map(|r| r.1).sum::<usize>(), 4);
        assert!(ranks.iter().any(|r| r.1 == 0));
        for (label, rank) in ranks {
            assert_eq!(Some(rank as u64), t.get(&label.0, &label.1));
        }
    }

    #[test]
    fn cycle_sum_small() {
        assert_eq!(cycle_sums(3).0, 24);
        assert_eq!(cycle_sums(4), (120, Some(24)));
        assert_eq!(cycle_sums(1).0, 2);
    }
}
