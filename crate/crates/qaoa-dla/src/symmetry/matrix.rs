//! Exact sparse real matrices in the computational basis and their Pauli
//! expansions.

use crate::pauli::{ExactVector, PauliString, PauliVector};
use crate::rational::Rational;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq)]
pub struct RealSparse {
    n: usize,
    /// Row-major sparse storage: `rows[r]` holds `(c, M[r][c])` sorted by `c`.
    rows: Vec<Vec<(u32, Rational)>>,
}

impl RealSparse {
    pub fn zero(n: usize) -> Self {
        RealSparse { n, rows: vec![Vec::new(); 1 << n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn row(&self, r: usize) -> &[(u32, Rational)] {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut maps: Vec<HashMap<u32, Rational>> = vec![HashMap::new(); 1 << n];
        for (r, c, v) in entries {
            let e = maps[r].entry(c as u32).or_insert(Rational::ZERO);
            *e = e.add(&v);
        }
        let rows = maps
            .into_iter()
            .map(|m| {
                let mut v: Vec<(u32, Rational)> = m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        RealSparse { n, rows }
    }

    /// Matrix of `Σ c_P P`; `None` when some term has an odd number of `Y`
    /// (an imaginary matrix).
    pub fn from_pauli(v: &ExactVector) -> Option<Self> {
        if v.terms().iter().any(|(p, _)| p.num_y() % 2 == 1) {
            return None;
        }
        let d = 1u32 << v.n();
        let mut entries = Vec::with_capacity(v.len() * d as usize);
        for (p, c) in v.terms() {
            for b in 0..d {
                let (k, t) = p.apply_basis(b);
                let val = if k == 0 { c.clone() } else { c.neg() };
                entries.push((t as usize, b as usize, val));
            }
        }
        Some(Self::from_entries(v.n(), entries))
    }

    /// Permutation matrix `|b⟩ ↦ |f(b)⟩`.
    pub fn permutation(n: usize, f: impl Fn(u32) -> u32) -> Self {
        Self::from_entries(n, (0..1u32 << n).map(|b| (f(b) as usize, b as usize, Rational::ONE)))
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.rows[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(i) => self.rows[r][i].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn transpose(&self) -> Self {
        let entries = self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c as usize, r, v.clone())));
        Self::from_entries(self.n, entries)
    }

    pub fn mul(&self, o: &RealSparse) -> Self {
        let d = self.dim();
        let mut rows = Vec::with_capacity(d);
        let mut acc: Vec<Rational> = vec![Rational::ZERO; d];
        let mut touched: Vec<u32> = Vec::new();
        for r in 0..d {
            for (k, a) in &self.rows[r] {
                for (c, b) in &o.rows[*k as usize] {
                    if acc[*c as usize].is_zero() {
                        touched.push(*c);
                    }
                    acc[*c as usize] = acc[*c as usize].add(&a.mul(b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut row = Vec::new();
            for &c in &touched {
                let v = std::mem::take(&mut acc[c as usize]);
                if !v.is_zero() {
                    row.push((c, v));
                }
            }
            touched.clear();
            rows.push(row);
        }
        RealSparse { n: self.n, rows }
    }

    pub fn add_scaled(&self, o: &RealSparse, s: &Rational) -> Self {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v.clone())))
            .chain(o.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v.mul(s)))));
        Self::from_entries(self.n, entries)
    }

    pub fn commutator(&self, o: &RealSparse) -> Self {
        self.mul(o).add_scaled(&o.mul(self), &Rational::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.iter().all(|(c, _)| *c as usize == r))
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m[(r, *c as usize)] = Complex64::new(v.to_f64(), 0.0);
            }
        }
        m
    }

    /// Hermitian operators `(M + Mᵀ)/2` and `i(M − Mᵀ)/2` as Pauli expansions.
    pub fn hermitian_parts(&self) -> (ExactVector, ExactVector) {
        let n = self.n;
        let d = self.dim();
        let mut s: HashMap<u32, Vec<Rational>> = HashMap::new();
        let inv_d = Rational::new(1, d as i64);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let x = r as u32 ^ *c;
                let acc = s.entry(x).or_insert_with(|| vec![Rational::ZERO; d]);
                let v = v.mul(&inv_d);
                let neg = v.neg();
                for (z, a) in acc.iter_mut().enumerate() {
                    let sign = (z as u32 & *c).count_ones() % 2 == 1;
                    *a = a.add(if sign { &neg } else { &v });
                }
            }
        }
        let mut sym = Vec::new();
        let mut anti = Vec::new();
        for (x, zs) in s {
            for (z, val) in zs.into_iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                let p = PauliString::raw(n, x, z as u32);
                match p.num_y() % 4 {
                    0 => sym.push((p, val)),
                    2 => sym.push((p, val.neg())),
                    1 => anti.push((p, val)),
                    _ => anti.push((p, val.neg())),
                }
            }
        }
        (
            PauliVector::from_terms(n, sym).expect("consistent qubit count"),
            PauliVector::from_terms(n, anti).expect("consistent qubit count"),
        )
    }
}
