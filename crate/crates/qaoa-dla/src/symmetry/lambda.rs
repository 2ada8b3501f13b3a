//! Block diagonalization of operators commuting with `X^⊗n`.
//!
//! `W = H₁ · Π_{u≥2} CNOT(1→u)` maps `X^⊗n` to `Z₁`, so every string that
//! commutes with `X^⊗n` becomes a signed string whose first letter is `I`
//! (equal action on both eigenblocks) or `Z` (opposite signs). The `+1`
//! eigenspace of `X^⊗n` is the `Z₁ = +1` half.

use crate::error::{Error, Result};
use crate::pauli::{ExactVector, Letter, PauliString, PauliVector};
use crate::rational::Rational;

/// `W P W† = sign · Q`. Errors when `P` anticommutes with `X^⊗n`.
pub fn lambda_transform(p: &PauliString) -> Result<(i8, PauliString)> {
    let n = p.n();
    let c = p.counts();
    if (c.y + c.z) % 2 == 1 {
        return Err(Error::Precondition(format!("{p} anticommutes with X^⊗{n}")));
    }
    let first = p.letter(0);
    let rest_mask = !1u32 & ((1u32 << n) - 1);
    let rest = PauliString::raw(n, p.x_mask() & rest_mask, p.z_mask() & rest_mask);
    match first {
        Letter::I | Letter::Z => Ok((1, rest)),
        Letter::X | Letter::Y => {
            // X^{⊗(n−1)} · R on qubits 2..n, then Z₁ in front.
            let xs = PauliString::raw(n, rest_mask, 0);
            let (k, prod) = xs.product(&rest);
            let z1 = PauliString::raw(n, prod.x_mask(), prod.z_mask() | 1);
            let phase = (k + if first == Letter::Y { 1 } else { 0 }) % 4;
            match phase {
                0 => Ok((1, z1)),
                2 => Ok((-1, z1)),
                _ => unreachable!("parity forces a real phase"),
            }
        }
    }
}

/// Restriction to qubits `2..n` of a string whose first letter is `I` or `Z`.
fn strip_first(p: &PauliString) -> PauliString {
    PauliString::raw(p.n() - 1, p.x_mask() >> 1, p.z_mask() >> 1)
}

/// Operators on the `X^⊗n = +1` and `−1` eigenblocks, as `(n−1)`-qubit vectors.
pub fn reduce_to_blocks(v: &ExactVector) -> Result<(ExactVector, ExactVector)> {
    let n = v.n();
    if n < 2 {
        return Err(Error::Precondition("block reduction needs at least two qubits".into()));
    }
    let mut plus = Vec::with_capacity(v.len());
    let mut minus = Vec::with_capacity(v.len());
    for (p, c) in v.terms() {
        let (s, q) = lambda_transform(p)?;
        let c = if s < 0 { c.neg() } else { c.clone() };
        let r = strip_first(&q);
        if q.letter(0) == Letter::Z {
            minus.push((r, c.neg()));
        } else {
            minus.push((r, c.clone()));
        }
        plus.push((r, c));
    }
    Ok((PauliVector::from_terms(n - 1, plus)?, PauliVector::from_terms(n - 1, minus)?))
}

/// Plus-block reduction of a string, as a convenience for single terms.
pub fn reduce_string(p: &PauliString) -> Result<ExactVector> {
    Ok(reduce_to_blocks(&PauliVector::unit(*p))?.0)
}

/// Exact `Δ(B⁺) = Tr[(B⁺)²] − Tr[B⁺]²/d₊` from the Pauli expansion of the
/// plus-block operator (strings are orthogonal with norm `d₊`).
pub fn delta_of_reduced(b: &ExactVector) -> Rational {
    let dp = Rational::from_int(1i64 << b.n());
    let mut sq = Rational::ZERO;
    let mut id = Rational::ZERO;
    for (p, c) in b.terms() {
        let c2 = c.mul(c);
        if p.is_identity() {
            id = c2.clone();
        }
        sq = sq.add(&c2);
    }
    dp.mul(&sq.sub(&id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn w_matrix(n: usize) -> DMatrix<Complex64> {
        // CNOT(1→u): flips bit u−1 when bit 0 set; then Hadamard on bit 0.
        let d = 1usize << n;
        let mut cn = DMatrix::<Complex64>::zeros(d, d);
        let mask = (d - 1) & !1;
        for b in 0..d {
            let t = if b & 1 == 1 { b ^ mask } else { b };
            cn[(t, b)] = Complex64::new(1.0, 0.0);
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut h = DMatrix::<Complex64>::zeros(d, d);
        for b in 0..d {
            h[(b & !1, b)] += Complex64::new(s, 0.0);
            h[(b | 1, b)] += Complex64::new(if b & 1 == 1 { -s } else { s }, 0.0);
        }
        h * cn
    }

    #[test]
    fn dense_oracle_agrees_for_all_even_strings() {
        for n in 2..=4 {
            let w = w_matrix(n);
            for p in PauliString::all(n) {
                let c = p.counts();
                if (c.y + c.z) % 2 == 1 {
                    assert!(lambda_transform(&p).is_err());
                    continue;
                }
                let (s, q) = lambda_transform(&p).unwrap();
                let lhs = &w * PauliVector::<Rational>::unit(p).to_dense() * w.adjoint();
                let rhs = PauliVector::<Rational>::unit(q).to_dense() * Complex64::new(s as f64, 0.0);
                assert!((lhs - rhs).norm() < 1e-10, "{p}");
            }
        }
    }

    #[test]
    fn examples() {
        let (s, q) = lambda_transform(&PauliString::all_x(4)).unwrap();
        assert_eq!((s, q.to_string()), (1, "ZIII".to_string()));
        let (s, q) = lambda_transform(&PauliString::parse("ZZI").unwrap()).unwrap();
        assert_eq!((s, q.to_string()), (1, "IZI".to_string()));
        let (p, m) = reduce_to_blocks(&PauliVector::unit(PauliString::all_x(3))).unwrap();
        assert_eq!(p, PauliVector::parse("II").unwrap());
        assert_eq!(m, PauliVector::parse("II:-1").unwrap());
    }

    #[test]
    fn delta_closed_forms() {
        // n = 3: admissible string gives d/2 = 4.
        let a = reduce_string(&PauliString::parse("ZZI").unwrap()).unwrap();
        assert_eq!(delta_of_reduced(&a), Rational::from_int(4));
    }
}
