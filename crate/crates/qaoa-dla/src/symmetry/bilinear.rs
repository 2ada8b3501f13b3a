//! Invariant bilinear forms on irreducible blocks: `XᵀS + SX = 0` for every
//! algebra element `X` acting on the block.

use super::decompose::{BilinearType, Block};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

const SV_CUTOFF: f64 = 1e-8;
const DOMINANCE: f64 = 1e6;

#[derive(Clone, Debug, Serialize)]
pub struct BilinearReport {
    pub kind: BilinearType,
    /// Dimension of the solution space of the invariance equations.
    pub nullity: usize,
    /// Sign of `α` in `S·S̄ = α·1`, when a form exists and the identity holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_sbar_sign: Option<i8>,
}

/// Classify a block from the dense Hermitian generators `H_j` (the algebra
/// elements are `iH_j`). Blocks with multiplicity above one are not
/// irreducible subspaces and come back undetermined.
pub fn block_bilinear_type(block: &Block, gens: &[DMatrix<Complex64>]) -> Result<BilinearReport> {
    if block.m != 1 {
        return Ok(BilinearReport { kind: BilinearType::Undetermined, nullity: 0, s_sbar_sign: None });
    }
    let v = block.range_basis();
    let i = Complex64::new(0.0, 1.0);
    let xs: Vec<DMatrix<Complex64>> = gens.iter().map(|h| v.adjoint() * h * &v * i).collect();
    classify_forms(&xs)
}

/// Solve `X_jᵀ S + S X_j = 0` for all `j` by SVD of the stacked system.
pub fn classify_forms(xs: &[DMatrix<Complex64>]) -> Result<BilinearReport> {
    let d = xs.first().map(|x| x.nrows()).unwrap_or(0);
    if d == 0 {
        return Err(Error::Precondition("empty block".into()));
    }
    let d2 = d * d;
    let rows = xs.len().max(1) * d2;
    let mut a = DMatrix::<Complex64>::zeros(rows.max(d2), d2);
    for (j, x) in xs.iter().enumerate() {
        let base = j * d2;
        for p in 0..d {
            for q in 0..d {
                let col = p * d + q;
                // (Xᵀ E_pq)[r, q] = X[p, r];  (E_pq X)[p, c] = X[q, c]
                for r in 0..d {
                    a[(base + r * d + q, col)] += x[(p, r)];
                }
                for c in 0..d {
                    a[(base + p * d + c, col)] += x[(q, c)];
                }
            }
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.as_ref().expect("requested V");
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    let null: Vec<usize> =
        (0..svd.singular_values.len()).filter(|&k| svd.singular_values[k] <= SV_CUTOFF * smax.max(1e-300)).collect();
    match null.len() {
        0 => Ok(BilinearReport { kind: BilinearType::Unitary, nullity: 0, s_sbar_sign: None }),
        1 => {
            let row = vt.row(null[0]);
            let s = DMatrix::from_fn(d, d, |p, q| row[p * d + q].conj());
            let sym = (&s + s.transpose()) * Complex64::new(0.5, 0.0);
            let skew = (&s - s.transpose()) * Complex64::new(0.5, 0.0);
            let (ns, nk) = (sym.norm(), skew.norm());
            let kind = if ns > DOMINANCE * nk {
                BilinearType::Orthogonal
            } else if nk > DOMINANCE * ns {
                BilinearType::Symplectic
            } else {
                BilinearType::Undetermined
            };
            let ssb = &s * s.map(|c| c.conj());
            let alpha = ssb.trace() / Complex64::new(d as f64, 0.0);
            let resid = (&ssb - DMatrix::<Complex64>::identity(d, d) * alpha).norm();
            let s_sbar_sign = (resid <= 1e-6 * ssb.norm().max(1e-300) && alpha.im.abs() <= 1e-6 * alpha.norm())
                .then_some(if alpha.re > 0.0 { 1 } else { -1 });
            Ok(BilinearReport { kind, nullity: 1, s_sbar_sign })
        }
        k => Err(Error::Numerical(format!("{k} independent invariant forms on an irreducible block"))),
    }
}
