//! Isotypical decomposition from the center of the commutant, in floating
//! point with a seeded random element of the center.

use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::pauli::ExactVector;
use crate::rational::Rational;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const EIG_TOL: f64 = 1e-8;
const MAX_ATTEMPTS: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockHalf {
    Plus,
    Minus,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BilinearType {
    Orthogonal,
    Symplectic,
    Unitary,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub d: usize,
    pub m: usize,
    pub half: BlockHalf,
    /// `Tr[P_λ P₊] / rank P_λ`.
    pub plus_weight: f64,
    pub projector: DMatrix<Complex64>,
}

impl Block {
    pub fn rank(&self) -> usize {
        self.d * self.m
    }

    /// Orthonormal basis of the block's range, as columns.
    pub fn range_basis(&self) -> DMatrix<Complex64> {
        let e = SymmetricEigen::new(self.projector.clone());
        let cols: Vec<DVector<Complex64>> = (0..e.eigenvalues.len())
            .filter(|&i| e.eigenvalues[i] > 0.5)
            .map(|i| e.eigenvectors.column(i).into_owned())
            .collect();
        DMatrix::from_columns(&cols)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub n: usize,
    pub blocks: Vec<Block>,
    /// Seeds tried before the multiplicities came out integral.
    pub attempts: u64,
}

pub fn dense(v: &ExactVector) -> DMatrix<Complex64> {
    v.to_dense()
}

/// `Σ m_λ d_λ = 2^n`, `Σ m_λ² = dim C`, and one block per center dimension.
pub fn isotypical_decomposition(
    n: usize,
    commutant: &EchelonBasis<Rational>,
    center: &EchelonBasis<Rational>,
    seed: u64,
) -> Result<Decomposition> {
    let d = 1usize << n;
    let zs: Vec<DMatrix<Complex64>> = center.rows().iter().map(dense).collect();
    let cs: Vec<DMatrix<Complex64>> = commutant.rows().iter().map(dense).collect();
    let mut last_err = None;
    for attempt in 0..MAX_ATTEMPTS {
        match try_decompose(n, d, &zs, &cs, seed.wrapping_add(attempt)) {
            Ok(mut blocks) => {
                sort_blocks(&mut blocks);
                return Ok(Decomposition { n, blocks, attempts: attempt + 1 });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Numerical("decomposition failed".into())))
}

fn sort_blocks(blocks: &mut [Block]) {
    blocks.sort_by(|a, b| {
        b.d.cmp(&a.d).then(b.plus_weight.partial_cmp(&a.plus_weight).unwrap_or(std::cmp::Ordering::Equal))
    });
}

fn try_decompose(
    n: usize,
    d: usize,
    zs: &[DMatrix<Complex64>],
    cs: &[DMatrix<Complex64>],
    seed: u64,
) -> Result<Vec<Block>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = DMatrix::<Complex64>::zeros(d, d);
    for z in zs {
        let r: f64 = rng.gen_range(-1.0..1.0);
        a += z * Complex64::new(r, 0.0);
    }
    let eig = SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).expect("finite eigenvalues"));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if (eig.eigenvalues[i] - eig.eigenvalues[*g.last().expect("nonempty")]).abs() <= EIG_TOL * scale => {
                g.push(i)
            }
            _ => groups.push(vec![i]),
        }
    }
    if groups.len() != zs.len().max(1) {
        return Err(Error::Numerical(format!("{} eigenvalue groups for a {}-dimensional center", groups.len(), zs.len())));
    }
    let all = d - 1;
    let mut blocks = Vec::with_capacity(groups.len());
    for g in groups {
        let v = DMatrix::from_columns(&g.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>());
        let p = &v * v.adjoint();
        let rank = g.len();
        let m2 = compressed_dim(&p, cs);
        let m = (m2 as f64).sqrt().round() as usize;
        if m == 0 || m * m != m2 || rank % m != 0 {
            return Err(Error::Numerical(format!("non-integral multiplicity: rank {rank}, dim P C P = {m2}")));
        }
        let tr_x: Complex64 = (0..d).map(|b| p[(b, b ^ all)]).sum();
        let plus_weight = (rank as f64 + tr_x.re) / (2.0 * rank as f64);
        let half = if plus_weight > 1.0 - 1e-6 {
            BlockHalf::Plus
        } else if plus_weight < 1e-6 {
            BlockHalf::Minus
        } else {
            BlockHalf::Mixed
        };
        blocks.push(Block { d: rank / m, m, half, plus_weight, projector: p });
    }
    let _ = n;
    let sum_dm: usize = blocks.iter().map(|b| b.d * b.m).sum();
    let sum_m2: usize = blocks.iter().map(|b| b.m * b.m).sum();
    if sum_dm != d || (!cs.is_empty() && sum_m2 != cs.len()) {
        return Err(Error::Numerical(format!("bookkeeping failed: Σdm = {sum_dm}, Σm² = {sum_m2}")));
    }
    Ok(blocks)
}

/// `dim(P C P)` from the numerical rank of the Gram matrix of the compressions.
fn compressed_dim(p: &DMatrix<Complex64>, cs: &[DMatrix<Complex64>]) -> usize {
    if cs.is_empty() {
        return 1;
    }
    let ys: Vec<DMatrix<Complex64>> = cs.iter().map(|c| p * c * p).collect();
    let k = ys.len();
    let mut gram = DMatrix::<Complex64>::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v: Complex64 = ys[i].iter().zip(ys[j].iter()).map(|(a, b)| a.conj() * b).sum();
            gram[(i, j)] = v;
            gram[(j, i)] = v.conj();
        }
    }
    numerical_rank(gram)
}

pub fn numerical_rank(h: DMatrix<Complex64>) -> usize {
    let e = SymmetricEigen::new(h);
    let max = e.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    // A relative cutoff alone would count rounding noise of a zero matrix.
    if max <= 1e-12 {
        return 0;
    }
    e.eigenvalues.iter().filter(|v| v.abs() > EIG_TOL * max).count()
}

#[derive(Clone, Debug, Serialize)]
pub struct OneDimVector {
    pub block: usize,
    /// Amplitudes scaled so the entry of largest modulus is real positive and
    /// the smallest nonzero modulus is one.
    #[serde(skip)]
    pub vector: DVector<Complex64>,
    /// Integer form when every entry is an integer after scaling.
    pub integer: Option<Vec<i64>>,
    /// Eigenvalue under each generator.
    pub beta: Vec<f64>,
}

/// Spanning vectors of the one-dimensional blocks and their eigenvalues.
pub fn one_dim_eigenvectors(dec: &Decomposition, gens: &[DMatrix<Complex64>]) -> Vec<OneDimVector> {
    let mut out = Vec::new();
    for (idx, b) in dec.blocks.iter().enumerate() {
        if b.d != 1 {
            continue;
        }
        let basis = b.range_basis();
        for c in 0..basis.ncols() {
            let v = normalize_integer(basis.column(c).into_owned());
            let nn = v.dotc(&v).re;
            let beta = gens.iter().map(|h| (v.dotc(&(h * &v))).re / nn).collect();
            out.push(OneDimVector { block: idx, integer: as_integers(&v), vector: v, beta });
        }
    }
    out
}

fn normalize_integer(v: DVector<Complex64>) -> DVector<Complex64> {
    let big = v.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let lead = v.iter().find(|c| c.norm() > big * (1.0 - 1e-9)).copied().unwrap_or(Complex64::new(1.0, 0.0));
    let phase = lead.conj() / lead.norm();
    let small = v.iter().map(|c| c.norm()).filter(|&x| x > 1e-9 * big).fold(f64::INFINITY, f64::min);
    v.map(|c| c * phase / small)
}

fn as_integers(v: &DVector<Complex64>) -> Option<Vec<i64>> {
    v.iter()
        .map(|c| {
            let r = c.re.round();
            ((c.re - r).abs() < 1e-8 && c.im.abs() < 1e-8).then_some(r as i64)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub holds: bool,
    /// `(plus block, minus block)` index pairs with `Z^⊗n P₊ Z^⊗n = P₋`.
    pub pairs: Vec<(usize, usize)>,
}

/// Odd `n`: `Z^⊗n` carries each plus-half block onto a minus-half block.
pub fn odd_n_pairing(dec: &Decomposition) -> Result<PairingReport> {
    if dec.n.is_multiple_of(2) {
        return Err(Error::Precondition("pairing check needs odd n".into()));
    }
    let d = 1usize << dec.n;
    let sign = |b: usize| if b.count_ones() % 2 == 1 { -1.0 } else { 1.0 };
    let mut pairs = Vec::new();
    let mut holds = true;
    for (i, b) in dec.blocks.iter().enumerate() {
        if b.half == BlockHalf::Minus {
            continue;
        }
        if b.half == BlockHalf::Mixed {
            holds = false;
            continue;
        }
        let conj = DMatrix::from_fn(d, d, |r, c| b.projector[(r, c)] * (sign(r) * sign(c)));
        match dec
            .blocks
            .iter()
            .enumerate()
            .find(|(_, o)| o.half == BlockHalf::Minus && (&o.projector - &conj).norm() < 1e-8 * (d as f64))
        {
            Some((j, _)) => pairs.push((i, j)),
            None => holds = false,
        }
    }
    let minus = dec.blocks.iter().filter(|b| b.half == BlockHalf::Minus).count();
    Ok(PairingReport { holds: holds && pairs.len() == minus, pairs })
}

/// Squared norm of the projection of basis state `b` onto each block.
pub fn basis_state_support(dec: &Decomposition, b: usize) -> Vec<f64> {
    dec.blocks.iter().map(|blk| blk.projector[(b, b)].re).collect()
}
