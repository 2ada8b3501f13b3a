//! Pauli strings in binary symplectic form and real linear combinations of them.
//!
//! A [`PauliVector`] stores the coefficients `c_P` of `Σ c_P P`. Lie-algebra
//! elements are read as `i Σ c_P P`; commutant elements as the Hermitian
//! operator `Σ c_P P`. The same coefficient arithmetic serves both readings.

use crate::error::{Error, Result};
use crate::rational::{Coeff, Rational};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt;

pub const MAX_QUBITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis. Qubit `q` (0-based) is bit `q` of
/// both masks. The derived order is lexicographic in `(n, z, x)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: u8,
    z: u32,
    x: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct LetterCounts {
    pub i: u32,
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl PauliString {
    pub fn new(n: usize, x: u32, z: u32) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitRange(n));
        }
        let m = full_mask(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::BadPauli(format!("mask outside {n} qubits")));
        }
        Ok(PauliString { n: n as u8, z, x })
    }

    /// Unchecked constructor for internal use where masks are known valid.
    pub(crate) fn raw(n: usize, x: u32, z: u32) -> Self {
        debug_assert!((1..=MAX_QUBITS).contains(&n) && x & !full_mask(n) == 0 && z & !full_mask(n) == 0);
        PauliString { n: n as u8, z, x }
    }

    pub fn identity(n: usize) -> Self {
        Self::raw(n, 0, 0)
    }

    pub fn all_x(n: usize) -> Self {
        Self::raw(n, full_mask(n), 0)
    }

    pub fn all_z(n: usize) -> Self {
        Self::raw(n, 0, full_mask(n))
    }

    /// Single letter on qubit `q` (0-based).
    pub fn single(n: usize, q: usize, l: Letter) -> Self {
        let (x, z) = l.bits();
        Self::raw(n, (x as u32) << q, (z as u32) << q)
    }

    pub fn zz(n: usize, a: usize, b: usize) -> Self {
        Self::raw(n, 0, (1 << a) | (1 << b))
    }

    pub fn from_letters(n: usize, letters: &[Letter]) -> Result<Self> {
        if letters.len() != n {
            return Err(Error::QubitMismatch(letters.len(), n));
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (q, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u32) << q;
            z |= (bz as u32) << q;
        }
        Self::new(n, x, z)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                _ => Err(Error::BadPauli(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(letters.len(), &letters)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }
    pub fn x_mask(&self) -> u32 {
        self.x
    }
    pub fn z_mask(&self) -> u32 {
        self.z
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n()).map(|q| self.letter(q)).collect()
    }

    pub fn counts(&self) -> LetterCounts {
        let m = full_mask(self.n());
        LetterCounts {
            i: (!(self.x | self.z) & m).count_ones(),
            x: (self.x & !self.z).count_ones(),
            y: (self.x & self.z).count_ones(),
            z: (!self.x & self.z).count_ones(),
        }
    }

    /// Counts restricted to the qubits in `mask`.
    pub fn counts_on(&self, mask: u32) -> LetterCounts {
        LetterCounts {
            i: (!(self.x | self.z) & mask).count_ones(),
            x: (self.x & !self.z & mask).count_ones(),
            y: (self.x & self.z & mask).count_ones(),
            z: (!self.x & self.z & mask).count_ones(),
        }
    }

    pub fn num_y(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// `#Y + #Z`, i.e. the number of sites anticommuting with `X`.
    pub fn z_weight(&self) -> u32 {
        self.z.count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn commutes(&self, o: &PauliString) -> bool {
        ((self.x & o.z).count_ones() + (self.z & o.x).count_ones()).is_multiple_of(2)
    }

    /// `self · o = i^k · r`; returns `(k mod 4, r)`.
    pub fn product(&self, o: &PauliString) -> (u8, PauliString) {
        let (ax, az) = (self.x, self.z);
        let (bx, bz) = (o.x, o.z);
        let a_x = ax & !az;
        let a_y = ax & az;
        let a_z = !ax & az;
        let b_x = bx & !bz;
        let b_y = bx & bz;
        let b_z = !bx & bz;
        // XY = iZ, YZ = iX, ZX = iY and the reverses carry -i.
        let pos = (a_x & b_y).count_ones() + (a_y & b_z).count_ones() + (a_z & b_x).count_ones();
        let neg = (a_y & b_x).count_ones() + (a_z & b_y).count_ones() + (a_x & b_z).count_ones();
        let k = ((pos + 4 * 32 - neg) % 4) as u8;
        (k, PauliString { n: self.n, z: az ^ bz, x: ax ^ bx })
    }

    /// Apply a vertex permutation: the letter at qubit `u` moves to `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> PauliString {
        let (mut x, mut z) = (0u32, 0u32);
        for (u, &v) in perm.iter().enumerate() {
            x |= (self.x >> u & 1) << v;
            z |= (self.z >> u & 1) << v;
        }
        PauliString { n: self.n, z, x }
    }

    /// Phase and target of the action on a computational basis state:
    /// `P|b⟩ = i^k |b ⊕ x⟩`.
    pub fn apply_basis(&self, b: u32) -> (u8, u32) {
        let k = (self.num_y() + 2 * (self.z & b).count_ones()) % 4;
        (k as u8, b ^ self.x)
    }

    /// Every string on `n` qubits in ascending order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        let m = 1u64 << n;
        (0..m).flat_map(move |z| (0..m).map(move |x| PauliString::raw(n, x as u32, z as u32)))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Sparse real combination of Pauli strings, sorted by string, no zero terms.
#[derive(Clone, PartialEq)]
pub struct PauliVector<C: Coeff> {
    n: usize,
    terms: Vec<(PauliString, C)>,
}

pub type ExactVector = PauliVector<Rational>;

impl<C: Coeff> PauliVector<C> {
    pub fn zero(n: usize) -> Self {
        PauliVector { n, terms: Vec::new() }
    }

    pub fn single(p: PauliString, c: C) -> Self {
        let mut v = Self::zero(p.n());
        if !c.is_zero() {
            v.terms.push((p, c));
        }
        v
    }

    pub fn unit(p: PauliString) -> Self {
        Self::single(p, C::one())
    }

    /// Build from arbitrary terms, merging duplicates.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (PauliString, C)>) -> Result<Self> {
        let mut map: HashMap<PauliString, C> = HashMap::new();
        for (p, c) in terms {
            if p.n() != n {
                return Err(Error::QubitMismatch(p.n(), n));
            }
            map.entry(p).and_modify(|e| *e = e.plus(&c)).or_insert(c);
        }
        Ok(Self::from_map(n, map))
    }

    pub(crate) fn from_map(n: usize, map: HashMap<PauliString, C>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        PauliVector { n, terms }
    }

    /// Terms must already be sorted, unique and nonzero.
    pub(crate) fn from_sorted(n: usize, terms: Vec<(PauliString, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        PauliVector { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn terms(&self) -> &[(PauliString, C)] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(PauliString, C)> {
        self.terms.first()
    }

    pub fn get(&self, p: &PauliString) -> Option<&C> {
        self.terms.binary_search_by(|t| t.0.cmp(p)).ok().map(|i| &self.terms[i].1)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        PauliVector { n: self.n, terms: self.terms.iter().map(|(p, c)| (*p, c.times(s))).collect() }
    }

    /// `self + s · other`, by sorted merge.
    pub fn add_scaled(&self, other: &Self, s: &C) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, b[j].1.times(s)));
                j += 1;
            } else {
                let c = a[i].1.plus(&b[j].1.times(s));
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        PauliVector { n: self.n, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &C::one())
    }

    /// Drop coefficients with `|c| <= tol`.
    pub fn pruned(mut self, tol: f64) -> Self {
        if !C::EXACT {
            self.terms.retain(|(_, c)| c.to_f64().abs() > tol);
        }
        self
    }

    pub fn map_strings(&self, f: impl Fn(&PauliString) -> PauliString) -> Self {
        let mut map: HashMap<PauliString, C> = HashMap::with_capacity(self.terms.len());
        for (p, c) in &self.terms {
            map.entry(f(p)).and_modify(|e| *e = e.plus(c)).or_insert_with(|| c.clone());
        }
        Self::from_map(self.n, map)
    }

    /// Dense matrix of the Hermitian operator `Σ c_P P` in the computational
    /// basis (basis index bit `q` is the state of qubit `q`).
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = 1usize << self.n;
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for (p, c) in &self.terms {
            let cf = c.to_f64();
            for b in 0..d as u32 {
                let (k, t) = p.apply_basis(b);
                m[(t as usize, b as usize)] += i_pow(k) * cf;
            }
        }
        m
    }

    pub fn to_f64(&self) -> PauliVector<f64> {
        PauliVector { n: self.n, terms: self.terms.iter().map(|(p, c)| (*p, c.to_f64())).collect() }
    }

    /// `true` when every term commutes with every other term.
    pub fn terms_commute(&self) -> bool {
        let t = &self.terms;
        (0..t.len()).all(|i| (i + 1..t.len()).all(|j| t[i].0.commutes(&t[j].0)))
    }
}

impl PauliVector<Rational> {
    /// Parse `"XI:1, ZZ:-1/2"` style text; a bare string means coefficient 1.
    pub fn parse(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut n = None;
        for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (ps, cs) = part.split_once(':').unwrap_or((part, "1"));
            let p = PauliString::parse(ps.trim())?;
            let c: Rational = cs.parse().map_err(Error::BadPauli)?;
            match n {
                None => n = Some(p.n()),
                Some(k) if k != p.n() => return Err(Error::QubitMismatch(k, p.n())),
                _ => {}
            }
            terms.push((p, c));
        }
        let n = n.ok_or_else(|| Error::BadPauli("empty vector".into()))?;
        Self::from_terms(n, terms)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for PauliVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}:{c}")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for PauliVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter().map(|(p, c)| (p.to_string(), c))).finish()
    }
}

/// Coefficient of `iR` in `[iP, iQ]`, or `None` when the strings commute.
/// `[iP, iQ] = -(PQ - QP) = -2PQ` for anticommuting strings.
#[inline]
pub fn string_commutator(p: &PauliString, q: &PauliString) -> Option<(i64, PauliString)> {
    if p.commutes(q) {
        return None;
    }
    let (k, r) = p.product(q);
    // PQ = i^k R with k odd; -2 i^k R = -2 i^(k-1) (iR).
    let s = if k == 1 { -2 } else { 2 };
    Some((s, r))
}

/// Lie bracket of `i·a` and `i·b`, returned in the same `i·Σ c P` convention.
pub fn commutator<C: Coeff>(a: &PauliVector<C>, b: &PauliVector<C>) -> Result<PauliVector<C>> {
    if a.n != b.n {
        return Err(Error::QubitMismatch(a.n, b.n));
    }
    let mut map: HashMap<PauliString, C> = HashMap::new();
    for (p, cp) in &a.terms {
        for (q, cq) in &b.terms {
            if let Some((s, r)) = string_commutator(p, q) {
                let v = cp.times(cq).times(&C::from_i64(s));
                match map.get_mut(&r) {
                    Some(e) => *e = e.plus(&v),
                    None => {
                        map.insert(r, v);
                    }
                }
            }
        }
    }
    let out = PauliVector::from_map(a.n, map);
    if C::EXACT {
        Ok(out)
    } else {
        let tol = 1e-14 * (a.max_abs() * b.max_abs()).max(f64::MIN_POSITIVE);
        Ok(out.pruned(tol))
    }
}

/// Pauli expansion of a dense matrix, `c_P = Tr(P M) / 2^n`. Imaginary parts
/// beyond `tol` are reported as an error since only Hermitian input is valid.
pub fn dense_to_pauli(m: &DMatrix<Complex64>, tol: f64) -> Result<PauliVector<f64>> {
    let d = m.nrows();
    if d != m.ncols() || !d.is_power_of_two() || d < 2 {
        return Err(Error::Precondition("matrix must be square with power-of-two size".into()));
    }
    let n = d.trailing_zeros() as usize;
    let mut terms = Vec::new();
    for p in PauliString::all(n) {
        let mut acc = Complex64::new(0.0, 0.0);
        for b in 0..d as u32 {
            let (k, t) = p.apply_basis(b);
            // Tr(P M) = Σ_b ⟨b|P M|b⟩ = Σ_b Σ_t P[b,t] M[t,b]; P[b,t] = conj of P[t,b] for Hermitian P.
            acc += i_pow(k).conj() * m[(t as usize, b as usize)];
        }
        acc /= d as f64;
        if acc.im.abs() > tol {
            return Err(Error::Numerical(format!("non-Hermitian input (imaginary coefficient on {p})")));
        }
        if acc.re.abs() > tol {
            terms.push((p, acc.re));
        }
    }
    Ok(PauliVector::from_sorted(n, terms))
}
