//! Exact nullspaces of sparse rational systems.
//!
//! Singleton equations are peeled first (they pin a variable to zero), the
//! remaining variables are split into independent connected components, and
//! each component is solved modulo word-size primes. Candidate kernel vectors
//! are lifted by rational reconstruction and accepted only after an exact
//! check against every original equation. Since the rank modulo a prime never
//! exceeds the rank over ℚ, a verified set of `k` independent vectors where
//! the modular kernel has dimension `k` is the exact kernel.

use crate::error::Result;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SparseRow = Vec<(usize, Rational)>;

/// Homogeneous system `A x = 0` given by sparse rows.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    pub ncols: usize,
    pub rows: Vec<SparseRow>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    /// Add a row, merging repeated columns and dropping zeros.
    pub fn push(&mut self, mut row: SparseRow) {
        row.sort_by_key(|e| e.0);
        let mut out: SparseRow = Vec::with_capacity(row.len());
        for (c, v) in row {
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 = last.1.add(&v),
                _ => out.push((c, v)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        if !out.is_empty() {
            debug_assert!(out.last().unwrap().0 < self.ncols);
            self.rows.push(out);
        }
    }
}

const PRIMES: [u64; 8] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497,
];

/// Kernel basis; each vector has a unit entry at a distinct free column and
/// the list is sorted by that column.
pub fn nullspace(sys: &SparseSystem) -> Result<Vec<SparseRow>> {
    let n = sys.ncols;
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, row) in sys.rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].push(r);
        }
    }
    let mut live = vec![true; n];
    let mut count: Vec<usize> = sys.rows.iter().map(|r| r.len()).collect();
    let mut queue: Vec<usize> = (0..sys.rows.len()).filter(|&r| count[r] == 1).collect();
    while let Some(r) = queue.pop() {
        if count[r] != 1 {
            continue;
        }
        let Some(&(c, _)) = sys.rows[r].iter().find(|e| live[e.0]) else { continue };
        live[c] = false;
        for &rr in &col_rows[c] {
            count[rr] -= 1;
            if count[rr] == 1 {
                queue.push(rr);
            }
        }
    }

    let mut uf = UnionFind::new(n);
    let active_rows: Vec<usize> = (0..sys.rows.len()).filter(|&r| count[r] >= 2).collect();
    for &r in &active_rows {
        let mut first = None;
        for &(c, _) in &sys.rows[r] {
            if live[c] {
                match first {
                    None => first = Some(c),
                    Some(f) => uf.union(f, c),
                }
            }
        }
    }
    let mut touched = vec![false; n];
    for &r in &active_rows {
        for &(c, _) in &sys.rows[r] {
            if live[c] {
                touched[c] = true;
            }
        }
    }

    let mut out: Vec<SparseRow> = Vec::new();
    let mut comp_cols: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for c in 0..n {
        if !live[c] {
            continue;
        }
        if !touched[c] {
            out.push(vec![(c, Rational::ONE)]);
        } else {
            comp_cols.entry(uf.find(c)).or_default().push(c);
        }
    }
    let mut comp_rows: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &r in &active_rows {
        let c = sys.rows[r].iter().find(|e| live[e.0]).unwrap().0;
        comp_rows.entry(uf.find(c)).or_default().push(r);
    }
    for (root, cols) in comp_cols {
        let mut local = std::collections::HashMap::with_capacity(cols.len());
        for (i, &c) in cols.iter().enumerate() {
            local.insert(c, i);
        }
        let rows: Vec<SparseRow> = comp_rows[&root]
            .iter()
            .map(|&r| sys.rows[r].iter().filter(|e| live[e.0]).map(|(c, v)| (local[c], v.clone())).collect())
            .collect();
        for v in solve_component(&rows, cols.len())? {
            out.push(v.into_iter().map(|(i, x)| (cols[i], x)).collect());
        }
    }
    out.sort_by_key(free_col);
    Ok(out)
}

fn free_col(v: &SparseRow) -> usize {
    v.iter().find(|e| e.1 == Rational::ONE).map(|e| e.0).unwrap_or(usize::MAX)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Modular kernel: pivot columns and, per free column, the vector entries
/// at pivot columns (the free column itself carries 1).
struct ModKernel {
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// `vals[k][j]` is the entry at `pivots[j]` of the `k`-th kernel vector.
    vals: Vec<Vec<u64>>,
}

fn mod_inv<const P: u64>(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rat_mod<const P: u64>(x: &Rational) -> Option<u64> {
    match x {
        Rational::Small(n, d) => {
            let nm = (*n as i128).rem_euclid(P as i128) as u64;
            let dm = (*d as i128).rem_euclid(P as i128) as u64;
            if dm == 0 {
                return None;
            }
            Some(nm * mod_inv::<P>(dm) % P)
        }
        Rational::Big(b) => {
            let p = BigInt::from(P);
            let nm = b.numer().mod_floor(&p).to_u64()?;
            let dm = b.denom().mod_floor(&p).to_u64()?;
            if dm == 0 {
                return None;
            }
            Some(nm * mod_inv::<P>(dm) % P)
        }
    }
}

fn kernel_mod<const P: u64>(rows: &[SparseRow], ncols: usize, seed: u64) -> Option<ModKernel> {
    let target = ncols + 8;
    let compress = rows.len() > target;
    let nr = if compress { target } else { rows.len() };
    let mut m = vec![0u64; nr * ncols];
    if compress {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for row in rows {
            let coeffs: Vec<u64> = row.iter().map(|(_, v)| rat_mod::<P>(v)).collect::<Option<_>>()?;
            for k in 0..nr {
                let r: u64 = rng.gen_range(1..P);
                let base = k * ncols;
                for ((c, _), &v) in row.iter().zip(&coeffs) {
                    let e = &mut m[base + c];
                    *e = (*e + r * v) % P;
                }
            }
        }
    } else {
        for (k, row) in rows.iter().enumerate() {
            for (c, v) in row {
                m[k * ncols + c] = rat_mod::<P>(v)?;
            }
        }
    }
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..ncols {
        if prow == nr {
            break;
        }
        let Some(sel) = (prow..nr).find(|&r| m[r * ncols + c] != 0) else { continue };
        if sel != prow {
            for j in c..ncols {
                m.swap(sel * ncols + j, prow * ncols + j);
            }
        }
        let inv = mod_inv::<P>(m[prow * ncols + c]);
        for j in c..ncols {
            let e = &mut m[prow * ncols + j];
            *e = *e * inv % P;
        }
        let (before, rest) = m.split_at_mut(prow * ncols);
        let (pivot_row, after) = rest.split_at_mut(ncols);
        let pr = &pivot_row[c..];
        for chunk in before.chunks_exact_mut(ncols).chain(after.chunks_exact_mut(ncols)) {
            let f = chunk[c];
            if f == 0 {
                continue;
            }
            let f = P - f;
            for (e, &p) in chunk[c..].iter_mut().zip(pr) {
                *e = (*e + f * p) % P;
            }
        }
        pivots.push(c);
        prow += 1;
    }
    let is_pivot = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let vals = free
        .iter()
        .map(|&f| pivots.iter().enumerate().map(|(r, _)| (P - m[r * ncols + f]) % P).collect())
        .collect();
    Some(ModKernel { pivots, free, vals })
}

fn kernel_for_prime(idx: usize, rows: &[SparseRow], ncols: usize) -> Option<ModKernel> {
    let seed = 0x9e37_79b9 ^ idx as u64;
    match idx {
        0 => kernel_mod::<{ PRIMES[0] }>(rows, ncols, seed),
        1 => kernel_mod::<{ PRIMES[1] }>(rows, ncols, seed),
        2 => kernel_mod::<{ PRIMES[2] }>(rows, ncols, seed),
        3 => kernel_mod::<{ PRIMES[3] }>(rows, ncols, seed),
        4 => kernel_mod::<{ PRIMES[4] }>(rows, ncols, seed),
        5 => kernel_mod::<{ PRIMES[5] }>(rows, ncols, seed),
        6 => kernel_mod::<{ PRIMES[6] }>(rows, ncols, seed),
        _ => kernel_mod::<{ PRIMES[7] }>(rows, ncols, seed),
    }
}

/// Find `r/s ≡ u (mod m)` with `|r|, s ≤ sqrt(m/2)`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::from_big(BigRational::new(r1, s1)))
}

fn verify(rows: &[SparseRow], vecs: &[Vec<Rational>]) -> bool {
    vecs.iter().all(|v| {
        rows.iter().all(|row| {
            let mut acc = Rational::ZERO;
            for (c, a) in row {
                if !v[*c].is_zero() {
                    acc = acc.add(&a.mul(&v[*c]));
                }
            }
            acc.is_zero()
        })
    })
}

fn solve_component(rows: &[SparseRow], ncols: usize) -> Result<Vec<SparseRow>> {
    let mut best: Option<ModKernel> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    for idx in 0..PRIMES.len() {
        let Some(k) = kernel_for_prime(idx, rows, ncols) else { continue };
        let p = BigInt::from(PRIMES[idx]);
        match &best {
            Some(b) if b.pivots.len() > k.pivots.len() => continue,
            Some(b) if b.pivots == k.pivots => {
                // CRT: x ≡ a (mod M), x ≡ v (mod p).
                let m_inv_p = {
                    
                    modulus.mod_floor(&p).modpow(&(&p - 2), &p)
                };
                for (res, kv) in residues.iter_mut().zip(&k.vals) {
                    for (a, &v) in res.iter_mut().zip(kv) {
                        let t = ((BigInt::from(v) - &*a).mod_floor(&p) * &m_inv_p).mod_floor(&p);
                        *a = &*a + &modulus * t;
                    }
                }
                modulus *= &p;
            }
            _ => {
                residues = k.vals.iter().map(|kv| kv.iter().map(|&v| BigInt::from(v)).collect()).collect();
                modulus = p;
                best = Some(k);
            }
        }
        let b = best.as_ref().unwrap();
        if b.free.is_empty() {
            return Ok(Vec::new());
        }
        let mut vecs = Vec::with_capacity(b.free.len());
        let mut ok = true;
        'outer: for (fi, &f) in b.free.iter().enumerate() {
            let mut v = vec![Rational::ZERO; ncols];
            v[f] = Rational::ONE;
            for (j, &pc) in b.pivots.iter().enumerate() {
                match rational_reconstruct(&residues[fi][j], &modulus) {
                    Some(x) => v[pc] = x,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            vecs.push(v);
        }
        if ok && verify(rows, &vecs) {
            return Ok(vecs.into_iter().map(to_sparse).collect());
        }
    }
    Ok(exact_kernel(rows, ncols).into_iter().map(to_sparse).collect())
}

fn to_sparse(v: Vec<Rational>) -> SparseRow {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Dense Gauss-Jordan over ℚ; the slow path of last resort.
fn exact_kernel(rows: &[SparseRow], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![Rational::ZERO; ncols];
            for (c, v) in r {
                d[*c] = v.clone();
            }
            d
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..ncols {
        let Some(sel) = (prow..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(sel, prow);
        let inv = m[prow][c].recip();
        for j in c..ncols {
            m[prow][j] = m[prow][j].mul(&inv);
        }
        let pr = m[prow].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != prow && !row[c].is_zero() {
                let f = row[c].clone();
                for j in c..ncols {
                    if !pr[j].is_zero() {
                        row[j] = row[j].sub(&f.mul(&pr[j]));
                    }
                }
            }
        }
        pivots.push(c);
        prow += 1;
        if prow == m.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::ZERO; ncols];
            v[f] = Rational::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[r][f].neg();
            }
            v
        })
        .collect()
}

/// Rank of a list of dense rational vectors (small inputs only).
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let ncols = vectors[0].len();
    // Rank of V equals ncols minus the kernel dimension of V.
    let rows: Vec<SparseRow> = vectors.iter().map(|v| to_sparse(v.clone())).collect();
    let mut sys = SparseSystem::new(ncols);
    for r in rows {
        sys.push(r);
    }
    ncols - nullspace(&sys).map(|k| k.len()).unwrap_or(0)
}
