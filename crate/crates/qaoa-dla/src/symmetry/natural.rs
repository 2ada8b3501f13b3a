//! Symmetrization under `X^⊗n` and graph automorphisms, the symmetrized
//! algebras `𝔤_nat ⊆ 𝔲_nat`, and the span of the natural symmetries.

use super::matrix::RealSparse;
use crate::echelon::EchelonBasis;
use crate::error::Result;
use crate::graph::PermGroup;
use crate::pauli::{ExactVector, PauliString, PauliVector};
use crate::rational::Rational;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

/// Keep the terms that commute with `X^⊗n`.
pub fn tau_z2(v: &ExactVector) -> ExactVector {
    let terms = v.terms().iter().filter(|(p, _)| even(p)).cloned();
    PauliVector::from_terms(v.n(), terms).expect("same qubit count")
}

fn even(p: &PauliString) -> bool {
    let c = p.counts();
    (c.y + c.z).is_multiple_of(2)
}

/// Group average of `ζ[σ] v ζ[σ]†`.
pub fn tau_aut(v: &ExactVector, grp: &PermGroup) -> ExactVector {
    let mut acc: BTreeMap<PauliString, Rational> = BTreeMap::new();
    for sigma in grp.elements() {
        for (p, c) in v.terms() {
            let e = acc.entry(p.permuted(sigma)).or_insert(Rational::ZERO);
            *e = e.add(c);
        }
    }
    let inv = Rational::new(1, grp.order() as i64);
    let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p, c.mul(&inv)));
    PauliVector::from_terms(v.n(), terms).expect("same qubit count")
}

pub fn tau_nat(v: &ExactVector, grp: &PermGroup) -> ExactVector {
    tau_aut(&tau_z2(v), grp)
}

/// Sum over the orbit of `p`, sorted.
fn orbit_sum(p: &PauliString, grp: &PermGroup, seen: &mut HashSet<PauliString>) -> ExactVector {
    let mut orbit: Vec<PauliString> = grp.elements().iter().map(|s| p.permuted(s)).collect();
    orbit.sort();
    orbit.dedup();
    seen.extend(orbit.iter().copied());
    PauliVector::from_terms(p.n(), orbit.into_iter().map(|q| (q, Rational::ONE))).expect("same qubit count")
}

/// `span{τ_nat(b)}` over a basis of the free algebra.
pub fn natural_basis(free: &EchelonBasis<Rational>, grp: &PermGroup) -> Result<EchelonBasis<Rational>> {
    let n = free.n();
    let mut out = EchelonBasis::new(n);
    let mut seen = HashSet::new();
    for row in free.sorted_rows() {
        if row.len() == 1 {
            // Single strings: τ_nat is a multiple of the orbit sum, or zero.
            let p = row.terms()[0].0;
            if !even(&p) || seen.contains(&p) {
                continue;
            }
            out.insert(&orbit_sum(&p, grp, &mut seen))?;
        } else {
            let t = tau_nat(&row, grp);
            if !t.is_zero() {
                out.insert(&t)?;
            }
        }
    }
    Ok(out)
}

/// `span{τ_nat(P)}` over every string, identity included.
pub fn u_nat_basis(n: usize, grp: &PermGroup) -> Result<EchelonBasis<Rational>> {
    let mut out = EchelonBasis::new(n);
    let mut seen = HashSet::new();
    for p in PauliString::all(n) {
        if even(&p) && !seen.contains(&p) {
            out.insert(&orbit_sum(&p, grp, &mut seen))?;
        }
    }
    Ok(out)
}

/// Basis-state action `|b⟩ ↦ |σ·b⟩`: the bit of qubit `u` moves to `σ(u)`.
pub fn permute_bits(b: u32, sigma: &[usize]) -> u32 {
    sigma.iter().enumerate().fold(0, |acc, (u, &v)| acc | (b >> u & 1) << v)
}

/// Hermitian span of `{ζ[σ], X^⊗n ζ[σ]}`, which has the complex dimension of
/// the natural symmetry algebra.
pub fn natural_symmetries(n: usize, grp: &PermGroup) -> Result<EchelonBasis<Rational>> {
    let all = (1u32 << n) - 1;
    let mut out = EchelonBasis::new(n);
    for sigma in grp.elements() {
        for flip in [0, all] {
            let m = RealSparse::permutation(n, |b| permute_bits(b, sigma) ^ flip);
            let (s, a) = m.hermitian_parts();
            for v in [s, a] {
                if !v.is_zero() {
                    out.insert(&v)?;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyReport {
    pub dim_standard: usize,
    pub dim_orbit: usize,
    pub dim_nat: usize,
    pub dim_free: usize,
    pub standard_in_orbit: bool,
    pub orbit_in_nat: bool,
    pub nat_in_free: bool,
    /// `span(𝔤_nat ∪ {iP₊, iP₋}) = 𝔲_nat`, checked for archetypal graphs only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projector_span: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_u_nat: Option<usize>,
}

impl HierarchyReport {
    pub fn holds(&self) -> bool {
        self.standard_in_orbit && self.orbit_in_nat && self.nat_in_free && self.projector_span.unwrap_or(true)
    }
}

pub fn hierarchy_check(
    standard: &EchelonBasis<Rational>,
    orbit: &EchelonBasis<Rational>,
    nat: &EchelonBasis<Rational>,
    free: &EchelonBasis<Rational>,
    u_nat: Option<&EchelonBasis<Rational>>,
) -> Result<HierarchyReport> {
    let n = nat.n();
    let projector_span = match u_nat {
        Some(u) => {
            let mut ext = nat.clone();
            ext.insert(&PauliVector::unit(PauliString::identity(n)))?;
            ext.insert(&PauliVector::unit(PauliString::all_x(n)))?;
            Some(ext.same_span(u)?)
        }
        None => None,
    };
    Ok(HierarchyReport {
        dim_standard: standard.dim(),
        dim_orbit: orbit.dim(),
        dim_nat: nat.dim(),
        dim_free: free.dim(),
        standard_in_orbit: orbit.contains_all(standard)?,
        orbit_in_nat: nat.contains_all(orbit)?,
        nat_in_free: free.contains_all(nat)?,
        projector_span,
        dim_u_nat: u_nat.map(|u| u.dim()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{automorphism_group, Graph};

    fn house() -> Graph {
        Graph::from_edges_1based(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn symmetrization_examples() {
        let grp = automorphism_group(&house()).unwrap();
        assert!(tau_z2(&PauliVector::parse("ZI").unwrap()).is_zero());
        let x2 = PauliVector::parse("IXIII").unwrap();
        assert_eq!(tau_aut(&x2, &grp), PauliVector::parse("IXIII:1/2, IIXII:1/2").unwrap());
        let orbit = PauliVector::parse("IXIII, IIXII").unwrap();
        assert_eq!(tau_nat(&x2, &grp).scaled(&Rational::from_int(2)), orbit);
        let t = tau_nat(&PauliVector::parse("ZZIII:3, XYZII:1, IYZII:2").unwrap(), &grp);
        assert_eq!(tau_nat(&t, &grp), t);
    }

    #[test]
    fn natural_symmetries_of_house() {
        let grp = automorphism_group(&house()).unwrap();
        assert_eq!(natural_symmetries(5, &grp).unwrap().dim(), 4);
        let triv = PermGroup::trivial(4);
        let s = natural_symmetries(4, &triv).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&PauliVector::unit(PauliString::all_x(4))).unwrap());
    }
}
