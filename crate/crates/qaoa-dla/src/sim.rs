//! Dense statevector simulation of layered ansätze with exact gates and
//! adjoint-mode gradients.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pauli::{ExactVector, PauliString, MAX_QUBITS};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn plus(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitRange(n));
        }
        let d = 1usize << n;
        let a = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        Ok(StateVector { n, amps: vec![a; d] })
    }

    pub fn basis(n: usize, b: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || b >= 1 << n {
            return Err(Error::QubitRange(n));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[b] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::Precondition("amplitude count must be 2^n".into()));
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn inner(&self, o: &StateVector) -> Complex64 {
        self.amps.iter().zip(&o.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `P|ψ⟩` for a single string.
    fn apply_string(&self, p: &PauliString) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let (k, t) = p.apply_basis(b as u32);
            out[t as usize] = *a * crate::pauli::i_pow(k);
        }
        out
    }
}

/// How a generator is exponentiated.
#[derive(Clone, Debug)]
enum GateKind {
    /// Diagonal in the computational basis: `h[b]`.
    Diagonal(Vec<f64>),
    /// Mutually commuting strings: product of single-string rotations.
    Commuting(Vec<(PauliString, f64)>),
    /// Non-commuting terms: eigendecomposition of the dense matrix.
    Dense { h: DMatrix<Complex64>, evals: DVector<f64>, evecs: DMatrix<Complex64> },
}

#[derive(Clone, Debug)]
pub struct Gate {
    kind: GateKind,
}

impl Gate {
    pub fn new(h: &ExactVector) -> Self {
        let terms: Vec<(PauliString, f64)> = h.terms().iter().map(|(p, c)| (*p, c.to_f64())).collect();
        let n = h.n();
        if terms.iter().all(|(p, _)| p.is_diagonal()) {
            let d = 1usize << n;
            let diag = (0..d as u32)
                .map(|b| terms.iter().map(|(p, c)| if (p.z_mask() & b).count_ones() % 2 == 1 { -c } else { *c }).sum())
                .collect();
            return Gate { kind: GateKind::Diagonal(diag) };
        }
        if h.terms_commute() {
            return Gate { kind: GateKind::Commuting(terms) };
        }
        let m = h.to_dense();
        let e = SymmetricEigen::new(m.clone());
        Gate { kind: GateKind::Dense { h: m, evals: e.eigenvalues, evecs: e.eigenvectors } }
    }

    /// `exp(−iθH)|ψ⟩`.
    pub fn apply(&self, s: &mut StateVector, theta: f64) {
        match &self.kind {
            GateKind::Diagonal(h) => {
                for (a, &e) in s.amps.iter_mut().zip(h) {
                    *a *= Complex64::from_polar(1.0, -theta * e);
                }
            }
            GateKind::Commuting(terms) => {
                for (p, c) in terms {
                    let (cs, sn) = ((theta * c).cos(), (theta * c).sin());
                    let pa = s.apply_string(p);
                    for (a, q) in s.amps.iter_mut().zip(pa) {
                        *a = *a * cs - Complex64::new(0.0, sn) * q;
                    }
                }
            }
            GateKind::Dense { evals, evecs, .. } => {
                let v = DVector::from_vec(s.amps.clone());
                let mut w = evecs.adjoint() * v;
                for (x, &l) in w.iter_mut().zip(evals.iter()) {
                    *x *= Complex64::from_polar(1.0, -theta * l);
                }
                s.amps = (evecs * w).iter().copied().collect();
            }
        }
    }

    /// `H|ψ⟩`.
    pub fn apply_generator(&self, s: &StateVector) -> StateVector {
        let amps = match &self.kind {
            GateKind::Diagonal(h) => s.amps.iter().zip(h).map(|(a, &e)| *a * e).collect(),
            GateKind::Commuting(terms) => {
                let mut out = vec![Complex64::new(0.0, 0.0); s.amps.len()];
                for (p, c) in terms {
                    for (o, q) in out.iter_mut().zip(s.apply_string(p)) {
                        *o += q * *c;
                    }
                }
                out
            }
            GateKind::Dense { h, .. } => (h * DVector::from_vec(s.amps.clone())).iter().copied().collect(),
        };
        StateVector { n: s.n, amps }
    }
}

/// `L` layers of the generator list, one angle per (layer, generator).
#[derive(Clone, Debug)]
pub struct Circuit {
    pub n: usize,
    pub layers: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize, gens: &[ExactVector], layers: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitRange(n));
        }
        if let Some(g) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::QubitMismatch(g.n(), n));
        }
        Ok(Circuit { n, layers, gates: gens.iter().map(Gate::new).collect() })
    }

    pub fn num_params(&self) -> usize {
        self.layers * self.gates.len()
    }

    fn gate(&self, idx: usize) -> &Gate {
        &self.gates[idx % self.gates.len()]
    }

    fn check(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.num_params() {
            return Err(Error::Precondition(format!("expected {} parameters, got {}", self.num_params(), params.len())));
        }
        Ok(())
    }

    pub fn run(&self, params: &[f64]) -> Result<StateVector> {
        self.check(params)?;
        let mut s = StateVector::plus(self.n)?;
        for (k, &t) in params.iter().enumerate() {
            self.gate(k).apply(&mut s, t);
        }
        Ok(s)
    }
}

/// Cost Hamiltonian `Σ_edges Z_u Z_v` as a diagonal, optionally divided by `|E|`.
#[derive(Clone, Debug)]
pub struct CostFunction {
    diag: Vec<f64>,
}

impl CostFunction {
    pub fn maxcut(g: &Graph, normalize: bool) -> Self {
        let edges = g.edges();
        let scale = if normalize && !edges.is_empty() { 1.0 / edges.len() as f64 } else { 1.0 };
        let diag = (0..1usize << g.n())
            .map(|b| {
                let s: i64 = edges.iter().map(|&(u, v)| if (b >> u & 1) == (b >> v & 1) { 1 } else { -1 }).sum();
                s as f64 * scale
            })
            .collect();
        CostFunction { diag }
    }

    pub fn expectation(&self, s: &StateVector) -> f64 {
        s.amps.iter().zip(&self.diag).map(|(a, &c)| a.norm_sqr() * c).sum()
    }

    fn apply(&self, s: &StateVector) -> StateVector {
        StateVector { n: s.n, amps: s.amps.iter().zip(&self.diag).map(|(a, &c)| *a * c).collect() }
    }
}

pub fn cost(c: &Circuit, f: &CostFunction, params: &[f64]) -> Result<f64> {
    Ok(f.expectation(&c.run(params)?))
}

/// Every partial derivative by one forward and one backward sweep.
pub fn gradient(c: &Circuit, f: &CostFunction, params: &[f64]) -> Result<Vec<f64>> {
    let mut psi = c.run(params)?;
    let mut lam = f.apply(&psi);
    let mut grad = vec![0.0; params.len()];
    for k in (0..params.len()).rev() {
        let g = c.gate(k);
        let hpsi = g.apply_generator(&psi);
        grad[k] = 2.0 * lam.inner(&hpsi).im;
        g.apply(&mut psi, -params[k]);
        g.apply(&mut lam, -params[k]);
    }
    Ok(grad)
}

pub const FD_STEP: f64 = 1e-3;

/// Five-point central difference, error `O(h⁴)`. The three-point rule at
/// any step is too coarse for wide-spectrum generators at a `1e-9` target.
pub fn finite_difference(c: &Circuit, f: &CostFunction, params: &[f64], idx: usize) -> Result<f64> {
    if idx >= params.len() {
        return Err(Error::Precondition(format!("parameter index {idx} out of range")));
    }
    let at = |k: f64| -> Result<f64> {
        let mut p = params.to_vec();
        p[idx] += k * FD_STEP;
        cost(c, f, &p)
    };
    Ok((8.0 * (at(1.0)? - at(-1.0)?) - (at(2.0)? - at(-2.0)?)) / (12.0 * FD_STEP))
}

/// Agreement within relative `1e-6` or absolute `1e-9`.
pub fn gradients_agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 || (a - b).abs() <= 1e-6 * a.abs().max(b.abs())
}

/// Angles drawn i.i.d. from `[−range, range]`; stream `sample` of the seed.
pub fn sample_params(seed: u64, sample: u64, count: usize, range: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    (0..count).map(|_| rng.gen_range(-range..=range)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GradientStats {
    pub samples: usize,
    pub seed: u64,
    pub normalized: bool,
    pub mean: Vec<f64>,
    /// Unbiased sample variance per parameter.
    pub variance: Vec<f64>,
}

impl GradientStats {
    pub fn mean_variance(&self) -> f64 {
        self.variance.iter().sum::<f64>() / self.variance.len().max(1) as f64
    }
}

pub fn variance_survey(c: &Circuit, f: &CostFunction, samples: usize, seed: u64, normalized: bool) -> Result<GradientStats> {
    if samples < 2 {
        return Err(Error::Precondition("variance needs at least two samples".into()));
    }
    let np = c.num_params();
    let grads: Vec<Vec<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|s| gradient(c, f, &sample_params(seed, s, np, PI)))
        .collect::<Result<_>>()?;
    let mut mean = vec![0.0; np];
    for g in &grads {
        for (m, v) in mean.iter_mut().zip(g) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= samples as f64);
    let mut var = vec![0.0; np];
    for g in &grads {
        for ((s, v), m) in var.iter_mut().zip(g).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    var.iter_mut().for_each(|s| *s /= (samples - 1) as f64);
    Ok(GradientStats { samples, seed, normalized, mean, variance: var })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DeepVariance {
    pub prediction: f64,
    pub bound: f64,
}

/// Deep-circuit variance `4d²|E| / ((d²−4)(d+2))` with `d = 2^n`, and its
/// bound `4n²/2^n`. Archetypal graphs with `n > 3` only.
pub fn deep_variance(g: &Graph) -> Result<DeepVariance> {
    let n = g.n();
    if n <= 3 || g.shape()? != crate::graph::GraphShape::Archetypal {
        return Err(Error::Precondition("prediction needs an archetypal graph with n > 3".into()));
    }
    let d = (1u64 << n) as f64;
    let e = g.edge_count() as f64;
    Ok(DeepVariance { prediction: 4.0 * d * d * e / ((d * d - 4.0) * (d + 2.0)), bound: 4.0 * (n * n) as f64 / d })
}

/// `Tr[B²] − Tr[B]²/dim`.
pub fn delta_quantity(b: &DMatrix<Complex64>, dim: usize) -> Result<f64> {
    if b.nrows() != dim || b.ncols() != dim {
        return Err(Error::Precondition(format!("expected a {dim}×{dim} matrix")));
    }
    let tr = b.trace();
    let tr2 = (b * b).trace();
    Ok((tr2 - tr * tr / dim as f64).re)
}

/// Isometry onto the `X^⊗n = +1` eigenspace: columns `(|b⟩ + |b̄⟩)/√2` for
/// `b` with qubit 1 in `|0⟩`.
pub fn plus_isometry(n: usize) -> DMatrix<Complex64> {
    let d = 1usize << n;
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut q = DMatrix::zeros(d, d / 2);
    for (col, b) in (0..d).filter(|b| b & 1 == 0).enumerate() {
        q[(b, col)] += s;
        q[(b ^ (d - 1), col)] += s;
    }
    q
}
