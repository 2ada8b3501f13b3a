//! Lie closure of a generator set by breadth-first commutator expansion.

use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::pauli::{commutator, PauliVector};
use crate::rational::Coeff;
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct ClosureResult<C: Coeff> {
    pub basis: EchelonBasis<C>,
    /// Number of breadth-first rounds until no new element appeared.
    pub rounds: usize,
}

impl<C: Coeff> ClosureResult<C> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Span of all nested commutators of `gens`. Each round brackets every
/// generator with every element added in the previous round; candidates are
/// computed in parallel and inserted in (generator, element) order.
pub fn lie_closure<C: Coeff>(n: usize, gens: &[PauliVector<C>]) -> Result<ClosureResult<C>> {
    lie_closure_capped(n, gens, usize::MAX)
}

pub fn lie_closure_capped<C: Coeff>(n: usize, gens: &[PauliVector<C>], cap: usize) -> Result<ClosureResult<C>> {
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::QubitMismatch(g.n(), n));
    }
    let hard_cap = ((1u64 << (2 * n)) - 1).min(cap as u64) as usize;
    let mut basis = EchelonBasis::new(n);
    let mut frontier: Vec<PauliVector<C>> = Vec::new();
    for g in gens {
        if let Some(row) = basis.insert(g)? {
            frontier.push(row);
        }
    }
    let gens: Vec<PauliVector<C>> = frontier.clone();
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        let pairs: Vec<(usize, usize)> =
            (0..gens.len()).flat_map(|g| (0..frontier.len()).map(move |f| (g, f))).collect();
        let candidates: Vec<PauliVector<C>> = pairs
            .par_iter()
            .map(|&(g, f)| commutator(&gens[g], &frontier[f]))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for c in candidates {
            if c.is_zero() {
                continue;
            }
            if let Some(row) = basis.insert(&c)? {
                next.push(row);
                if basis.dim() > hard_cap {
                    return Err(Error::Resource(format!("closure exceeded {hard_cap} elements")));
                }
            }
        }
        frontier = next;
    }
    Ok(ClosureResult { basis, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;
    use crate::rational::Rational;

    fn pv(s: &str) -> PauliVector<Rational> {
        PauliVector::parse(s).unwrap()
    }

    #[test]
    fn two_qubit_fixtures() {
        let gb = [pv("XI"), pv("IX"), pv("ZI"), pv("IZ")];
        assert_eq!(lie_closure(2, &gb).unwrap().dim(), 6);
        let mut ga = gb.to_vec();
        ga.push(pv("ZZ"));
        assert_eq!(lie_closure(2, &ga).unwrap().dim(), 15);
    }

    #[test]
    fn augmented_path() {
        let p3 = [pv("XII"), pv("IXI"), pv("IIX"), pv("ZZI"), pv("IZZ")];
        assert_eq!(lie_closure(3, &p3).unwrap().dim(), 15);
        let mut a = p3.to_vec();
        a.push(pv("ZII"));
        assert_eq!(lie_closure(3, &a).unwrap().dim(), 21);
        a.push(pv("IIZ"));
        assert_eq!(lie_closure(3, &a).unwrap().dim(), 28);
    }

    #[test]
    fn single_string_and_empty() {
        assert_eq!(lie_closure(2, &[pv("XY")]).unwrap().dim(), 1);
        assert_eq!(lie_closure::<Rational>(2, &[]).unwrap().dim(), 0);
        let x = PauliString::parse("XX").unwrap();
        assert!(lie_closure(3, &[PauliVector::<Rational>::unit(x)]).is_err());
    }
}
