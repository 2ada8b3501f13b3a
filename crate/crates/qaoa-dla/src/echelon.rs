//! Reduced row-echelon basis of a subspace of Pauli-coefficient space.
//!
//! Each row's pivot is its smallest string and carries coefficient one; pivot
//! strings are absent from every other row. Reduction is therefore a linear
//! projection and the stored basis is independent of insertion history only
//! through the spanned subspace.

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliVector};
use crate::rational::Coeff;
use std::collections::HashMap;

/// Relative tolerance deciding float-mode linear dependence.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct EchelonBasis<C: Coeff> {
    n: usize,
    rows: Vec<PauliVector<C>>,
    pivots: HashMap<PauliString, usize>,
}

impl<C: Coeff> EchelonBasis<C> {
    pub fn new(n: usize) -> Self {
        EchelonBasis { n, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[PauliVector<C>] {
        &self.rows
    }
    pub fn is_pivot(&self, p: &PauliString) -> bool {
        self.pivots.contains_key(p)
    }

    /// Rows sorted by pivot, for order-independent output.
    pub fn sorted_rows(&self) -> Vec<PauliVector<C>> {
        let mut r = self.rows.clone();
        r.sort_by(|a, b| a.leading().map(|t| t.0).cmp(&b.leading().map(|t| t.0)));
        r
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &PauliVector<C>) -> Result<PauliVector<C>> {
        if v.n() != self.n {
            return Err(Error::QubitMismatch(v.n(), self.n));
        }
        let hits: Vec<(usize, C)> = v
            .terms()
            .iter()
            .filter_map(|(p, c)| self.pivots.get(p).map(|&r| (r, c.clone())))
            .collect();
        if hits.is_empty() {
            return Ok(v.clone());
        }
        let out = if hits.len() == 1 {
            let (r, c) = &hits[0];
            v.add_scaled(&self.rows[*r], &c.negated())
        } else {
            let mut acc: HashMap<PauliString, C> = v.terms().iter().cloned().collect();
            for (r, c) in &hits {
                let s = c.negated();
                for (p, rc) in self.rows[*r].terms() {
                    let d = rc.times(&s);
                    match acc.get_mut(p) {
                        Some(e) => *e = e.plus(&d),
                        None => {
                            acc.insert(*p, d);
                        }
                    }
                }
            }
            PauliVector::from_map(self.n, acc)
        };
        if C::EXACT {
            Ok(out)
        } else {
            let scale = v.max_abs();
            let mut out = out.pruned(FLOAT_TOL * scale);
            // Pivot coordinates are eliminated exactly up to rounding; clear residue.
            if out.terms().iter().any(|(p, _)| self.pivots.contains_key(p)) {
                let t: Vec<_> = out.terms().iter().filter(|(p, _)| !self.pivots.contains_key(p)).cloned().collect();
                out = PauliVector::from_sorted(self.n, t);
            }
            Ok(out)
        }
    }

    pub fn contains(&self, v: &PauliVector<C>) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Insert `v`; returns the normalized new row when it was independent.
    pub fn insert(&mut self, v: &PauliVector<C>) -> Result<Option<PauliVector<C>>> {
        let r = self.reduce(v)?;
        Ok(self.insert_reduced(r))
    }

    /// Insert a vector already reduced against this basis.
    pub fn insert_reduced(&mut self, r: PauliVector<C>) -> Option<PauliVector<C>> {
        let (pivot, lead) = r.leading()?.clone();
        let row = r.scaled(&C::one().over(&lead));
        for other in self.rows.iter_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                let mut updated = other.add_scaled(&row, &c.negated());
                if !C::EXACT {
                    let t: Vec<_> = updated.terms().iter().filter(|(p, _)| *p != pivot).cloned().collect();
                    updated = PauliVector::from_sorted(self.n, t).pruned(1e-14);
                }
                *other = updated;
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row.clone());
        Some(row)
    }

    /// Dimension of the sum with another basis.
    pub fn span_with(&self, other: &EchelonBasis<C>) -> Result<EchelonBasis<C>> {
        let mut b = self.clone();
        for r in other.rows() {
            b.insert(r)?;
        }
        Ok(b)
    }

    /// `true` when every row of `other` lies in this span.
    pub fn contains_all(&self, other: &EchelonBasis<C>) -> Result<bool> {
        for r in other.rows() {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_span(&self, other: &EchelonBasis<C>) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains_all(other)?)
    }
}
