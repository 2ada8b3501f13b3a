//! Exact commutants and centers.
//!
//! Commutant elements are stored as Hermitian operators `Σ c_P P` with real
//! rational coefficients. The commutant of Hermitian generators is closed
//! under adjoints, so the real dimension of its Hermitian part equals its
//! complex dimension.

use super::matrix::RealSparse;
use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::linsolve::{nullspace, SparseSystem};
use crate::pauli::{commutator, string_commutator, ExactVector, PauliString, PauliVector};
use crate::rational::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Which elimination produced the commutant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// All generators are single strings: commuting strings span the answer.
    Strings,
    /// Real generators: unknowns are matrix entries in the computational basis.
    Matrix,
    /// General generators: unknowns are Pauli coefficients.
    Pauli,
}

#[derive(Clone, Debug)]
pub struct Commutant {
    pub n: usize,
    pub basis: EchelonBasis<Rational>,
    pub route: Route,
    /// Real matrices spanning the commutant, when the matrix route was used.
    real: Option<Vec<RealSparse>>,
}

impl Commutant {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

const COMPRESS_ABOVE: usize = 8;
const COMPRESS_COMBOS: usize = 3;

pub fn commutant(n: usize, gens: &[ExactVector]) -> Result<Commutant> {
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::QubitMismatch(g.n(), n));
    }
    let gens: Vec<ExactVector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.iter().all(|g| g.len() == 1) {
        return Ok(string_route(n, &gens));
    }
    if n <= 8 {
        let mats: Option<Vec<RealSparse>> = gens.iter().map(RealSparse::from_pauli).collect();
        if let Some(mats) = mats {
            return matrix_route(n, &mats);
        }
    }
    if gens.len() > COMPRESS_ABOVE {
        let combos = random_combinations(n, &gens, COMPRESS_COMBOS);
        let c = pauli_route(n, &combos)?;
        if verify(&c.basis, &gens)? {
            return Ok(c);
        }
    }
    pauli_route(n, &gens)
}

fn verify(basis: &EchelonBasis<Rational>, gens: &[ExactVector]) -> Result<bool> {
    for s in basis.rows() {
        for g in gens {
            if !commutator(s, g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn random_combinations(n: usize, gens: &[ExactVector], k: usize) -> Vec<ExactVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..k)
        .map(|_| {
            gens.iter().fold(PauliVector::zero(n), |acc, g| acc.add_scaled(g, &Rational::from_int(rng.gen_range(1..=97))))
        })
        .collect()
}

fn string_route(n: usize, gens: &[ExactVector]) -> Commutant {
    let strings: Vec<PauliString> = gens.iter().map(|g| g.terms()[0].0).collect();
    let mut basis = EchelonBasis::new(n);
    for p in PauliString::all(n) {
        if strings.iter().all(|q| p.commutes(q)) {
            basis.insert_reduced(PauliVector::unit(p));
        }
    }
    Commutant { n, basis, route: Route::Strings, real: None }
}

fn matrix_route(n: usize, mats: &[RealSparse]) -> Result<Commutant> {
    let d = 1usize << n;
    let mut sys = SparseSystem::new(d * d);
    for h in mats {
        let ht = h.transpose();
        // ([S, H])[x, y] = Σ_z S[x, z] H[z, y] − H[x, z] S[z, y]
        for x in 0..d {
            for y in 0..d {
                let mut row: Vec<(usize, Rational)> = Vec::new();
                for (z, v) in ht.row(y) {
                    row.push((x * d + *z as usize, v.clone()));
                }
                for (z, v) in h.row(x) {
                    row.push((*z as usize * d + y, v.neg()));
                }
                sys.push(row);
            }
        }
    }
    let null = nullspace(&sys)?;
    let real: Vec<RealSparse> = null
        .iter()
        .map(|v| RealSparse::from_entries(n, v.iter().map(|(k, c)| (k / d, k % d, c.clone()))))
        .collect();
    let basis = hermitian_span(n, &real)?;
    Ok(Commutant { n, basis, route: Route::Matrix, real: Some(real) })
}

/// Real span of the Hermitian parts of a `*`-closed set of real matrices;
/// its dimension must equal the number of matrices.
fn hermitian_span(n: usize, mats: &[RealSparse]) -> Result<EchelonBasis<Rational>> {
    let mut basis = EchelonBasis::new(n);
    for m in mats {
        let (s, a) = m.hermitian_parts();
        for v in [s, a] {
            if !v.is_zero() {
                basis.insert(&v)?;
            }
        }
    }
    if basis.dim() != mats.len() {
        return Err(Error::Numerical(format!(
            "Hermitian span has dimension {} for {} matrices",
            basis.dim(),
            mats.len()
        )));
    }
    Ok(basis)
}

fn pauli_route(n: usize, gens: &[ExactVector]) -> Result<Commutant> {
    let total = 1usize << (2 * n);
    let index = |p: &PauliString| (p.z_mask() as usize) << n | p.x_mask() as usize;
    let mut eqs: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
    for (k, g) in gens.iter().enumerate() {
        for p in PauliString::all(n) {
            for (q, h) in g.terms() {
                if let Some((s, r)) = string_commutator(&p, q) {
                    eqs.entry((k, index(&r))).or_default().push((index(&p), h.mul(&Rational::from_int(s))));
                }
            }
        }
    }
    let mut keys: Vec<_> = eqs.keys().copied().collect();
    keys.sort_unstable();
    let mut sys = SparseSystem::new(total);
    for key in keys {
        sys.push(eqs.remove(&key).expect("key present"));
    }
    let null = nullspace(&sys)?;
    let mut basis = EchelonBasis::new(n);
    for v in null {
        let terms = v.into_iter().map(|(i, c)| (PauliString::raw(n, (i & ((1 << n) - 1)) as u32, (i >> n) as u32), c));
        basis.insert(&PauliVector::from_terms(n, terms)?)?;
    }
    Ok(Commutant { n, basis, route: Route::Pauli, real: None })
}

/// Elements of the commutant that commute with the whole commutant.
pub fn center_of_commutant(c: &Commutant) -> Result<EchelonBasis<Rational>> {
    let n = c.n;
    let k = c.dim();
    if c.route == Route::Strings {
        // A string basis: the center is spanned by strings commuting with all others.
        let rows = c.basis.rows();
        let mut basis = EchelonBasis::new(n);
        for r in rows {
            let p = r.terms()[0].0;
            if rows.iter().all(|o| p.commutes(&o.terms()[0].0)) {
                basis.insert_reduced(r.clone());
            }
        }
        return Ok(basis);
    }
    if let Some(real) = &c.real {
        let d = 1usize << n;
        let mut eqs: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        for (i, ri) in real.iter().enumerate() {
            for (j, rj) in real.iter().enumerate() {
                if i == j {
                    continue;
                }
                let kij = ri.commutator(rj);
                for r in 0..d {
                    for (col, v) in kij.row(r) {
                        eqs.entry((j, r * d + *col as usize)).or_default().push((i, v.clone()));
                    }
                }
            }
        }
        let null = solve_sorted(k, eqs)?;
        let mats: Vec<RealSparse> = null
            .iter()
            .map(|a| {
                a.iter().fold(RealSparse::zero(n), |acc, (i, s)| acc.add_scaled(&real[*i], s))
            })
            .collect();
        return hermitian_span(n, &mats);
    }
    let rows = c.basis.rows();
    let mut eqs: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
    for (i, si) in rows.iter().enumerate() {
        for (j, sj) in rows.iter().enumerate() {
            if i == j {
                continue;
            }
            for (p, v) in commutator(si, sj)?.terms() {
                let key = (p.z_mask() as usize) << n | p.x_mask() as usize;
                eqs.entry((j, key)).or_default().push((i, v.clone()));
            }
        }
    }
    let null = solve_sorted(k, eqs)?;
    combine(n, rows, &null)
}

fn solve_sorted(
    ncols: usize,
    mut eqs: HashMap<(usize, usize), Vec<(usize, Rational)>>,
) -> Result<Vec<Vec<(usize, Rational)>>> {
    let mut keys: Vec<_> = eqs.keys().copied().collect();
    keys.sort_unstable();
    let mut sys = SparseSystem::new(ncols);
    for key in keys {
        sys.push(eqs.remove(&key).expect("key present"));
    }
    nullspace(&sys)
}

fn combine(n: usize, rows: &[ExactVector], null: &[Vec<(usize, Rational)>]) -> Result<EchelonBasis<Rational>> {
    let mut basis = EchelonBasis::new(n);
    for a in null {
        let v = a.iter().fold(PauliVector::zero(n), |acc, (i, s)| acc.add_scaled(&rows[*i], s));
        basis.insert(&v)?;
    }
    Ok(basis)
}

/// `Z(𝔤) = 𝔤 ∩ C`: Hermitian commutant elements whose `i`-multiples lie in
/// the algebra.
pub fn center_of_algebra(alg: &EchelonBasis<Rational>, c: &Commutant) -> Result<EchelonBasis<Rational>> {
    if alg.n() != c.n {
        return Err(Error::QubitMismatch(alg.n(), c.n));
    }
    let n = c.n;
    let rows = c.basis.rows();
    let mut eqs: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
    for (i, s) in rows.iter().enumerate() {
        for (p, v) in alg.reduce(s)?.terms() {
            let key = (p.z_mask() as usize) << n | p.x_mask() as usize;
            eqs.entry((0, key)).or_default().push((i, v.clone()));
        }
    }
    let null = solve_sorted(rows.len(), eqs)?;
    combine(n, rows, &null)
}
