//! Circuit ansätze and graph ensembles, each registered by name behind a
//! common trait so callers select them with a string.

use crate::closure::lie_closure;
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, random_regular, Graph};
use crate::pauli::{ExactVector, PauliString, PauliVector};
use crate::rational::Rational;
use crate::symmetry::natural_basis;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Input shared by every ansatz.
#[derive(Clone, Debug)]
pub struct AnsatzContext<'a> {
    pub graph: &'a Graph,
    /// Extra `iZ_w` generators, 0-based vertices.
    pub extra_z: &'a [usize],
}

impl<'a> AnsatzContext<'a> {
    pub fn new(graph: &'a Graph, extra_z: &'a [usize]) -> Result<Self> {
        if let Some(&w) = extra_z.iter().find(|&&w| w >= graph.n()) {
            return Err(Error::InvalidGraph(format!("extra Z vertex {} out of range", w + 1)));
        }
        Ok(AnsatzContext { graph, extra_z })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

pub trait Ansatz: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Hermitian generators `H_k` (the algebra is spanned by `iH_k`), in
    /// circuit order: problem terms, then mixers, then extra `Z` terms.
    fn generators(&self, ctx: &AnsatzContext) -> Result<Vec<ExactVector>>;

    fn needs_connected(&self) -> bool {
        true
    }
}

fn zz(n: usize, u: usize, v: usize) -> ExactVector {
    PauliVector::unit(PauliString::zz(n, u, v))
}

fn x(n: usize, u: usize) -> ExactVector {
    PauliVector::unit(PauliString::single(n, u, crate::pauli::Letter::X))
}

fn sum(n: usize, vs: impl IntoIterator<Item = ExactVector>) -> ExactVector {
    vs.into_iter().fold(PauliVector::zero(n), |a, v| a.add(&v))
}

fn with_extra_z(ctx: &AnsatzContext, mut gens: Vec<ExactVector>) -> Vec<ExactVector> {
    let n = ctx.n();
    gens.extend(ctx.extra_z.iter().map(|&w| PauliVector::unit(PauliString::single(n, w, crate::pauli::Letter::Z))));
    gens
}

fn check_connected(a: &dyn Ansatz, g: &Graph) -> Result<()> {
    if a.needs_connected() && !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// One parameter per edge term and per vertex mixer.
pub struct FreeAnsatz;

impl Ansatz for FreeAnsatz {
    fn name(&self) -> &'static str {
        "free"
    }

    fn description(&self) -> &'static str {
        "independent angle for every ZZ edge term and every X vertex term"
    }

    fn needs_connected(&self) -> bool {
        false
    }

    fn generators(&self, ctx: &AnsatzContext) -> Result<Vec<ExactVector>> {
        let n = ctx.n();
        let mut gens: Vec<ExactVector> = ctx.graph.edges().into_iter().map(|(u, v)| zz(n, u, v)).collect();
        gens.extend((0..n).map(|u| x(n, u)));
        Ok(with_extra_z(ctx, gens))
    }
}

/// Two angles per layer: the summed cost and the summed mixer.
pub struct StandardAnsatz;

impl Ansatz for StandardAnsatz {
    fn name(&self) -> &'static str {
        "standard"
    }

    fn description(&self) -> &'static str {
        "summed cost Hamiltonian and summed X mixer"
    }

    fn generators(&self, ctx: &AnsatzContext) -> Result<Vec<ExactVector>> {
        check_connected(self, ctx.graph)?;
        let n = ctx.n();
        let hp = sum(n, ctx.graph.edges().into_iter().map(|(u, v)| zz(n, u, v)));
        let hm = sum(n, (0..n).map(|u| x(n, u)));
        Ok(with_extra_z(ctx, vec![hp, hm]))
    }
}

/// One angle per edge orbit and per vertex orbit of the automorphism group.
pub struct OrbitAnsatz;

impl Ansatz for OrbitAnsatz {
    fn name(&self) -> &'static str {
        "orbit"
    }

    fn description(&self) -> &'static str {
        "terms summed over automorphism orbits of edges and vertices"
    }

    fn generators(&self, ctx: &AnsatzContext) -> Result<Vec<ExactVector>> {
        check_connected(self, ctx.graph)?;
        let n = ctx.n();
        let grp = automorphism_group(ctx.graph)?;
        let mut gens: Vec<ExactVector> =
            grp.edge_orbits(ctx.graph).into_iter().map(|o| sum(n, o.into_iter().map(|(u, v)| zz(n, u, v)))).collect();
        gens.extend(grp.vertex_orbits().into_iter().map(|o| sum(n, o.into_iter().map(|u| x(n, u)))));
        Ok(with_extra_z(ctx, gens))
    }
}

/// Every basis element of the symmetrized free algebra.
pub struct NaturalAnsatz;

impl Ansatz for NaturalAnsatz {
    fn name(&self) -> &'static str {
        "natural"
    }

    fn description(&self) -> &'static str {
        "basis of the free algebra projected onto the natural symmetries"
    }

    fn generators(&self, ctx: &AnsatzContext) -> Result<Vec<ExactVector>> {
        check_connected(self, ctx.graph)?;
        let n = ctx.n();
        let free = FreeAnsatz.generators(&AnsatzContext { graph: ctx.graph, extra_z: &[] })?;
        let closure = lie_closure(n, &free)?;
        let grp = automorphism_group(ctx.graph)?;
        let nat = natural_basis(&closure.basis, &grp)?;
        Ok(with_extra_z(ctx, nat.sorted_rows()))
    }
}

pub struct AnsatzRegistry {
    entries: BTreeMap<&'static str, Box<dyn Ansatz>>,
}

impl AnsatzRegistry {
    pub fn empty() -> Self {
        AnsatzRegistry { entries: BTreeMap::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(FreeAnsatz));
        r.register(Box::new(StandardAnsatz));
        r.register(Box::new(OrbitAnsatz));
        r.register(Box::new(NaturalAnsatz));
        r
    }

    pub fn register(&mut self, a: Box<dyn Ansatz>) {
        self.entries.insert(a.name(), a);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Ansatz> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "ansatz", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

/// Family of random or fixed graphs indexed by vertex count.
pub trait Ensemble: Send + Sync {
    fn name(&self) -> &'static str;

    fn supports(&self, n: usize) -> bool;

    fn sample(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<Graph>;
}

pub struct CompleteEnsemble;

impl Ensemble for CompleteEnsemble {
    fn name(&self) -> &'static str {
        "complete"
    }

    fn supports(&self, n: usize) -> bool {
        n >= 2
    }

    fn sample(&self, n: usize, _rng: &mut ChaCha8Rng) -> Result<Graph> {
        Ok(Graph::complete(n))
    }
}

/// Uniform connected 3-regular graphs from the pairing model.
pub struct CubicEnsemble;

impl Ensemble for CubicEnsemble {
    fn name(&self) -> &'static str {
        "3regular"
    }

    fn supports(&self, n: usize) -> bool {
        n >= 4 && n.is_multiple_of(2)
    }

    fn sample(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
        if !self.supports(n) {
            return Err(Error::Precondition(format!("no 3-regular graph on {n} vertices")));
        }
        loop {
            let g = random_regular(n, 3, rng)?;
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
}

pub struct EnsembleRegistry {
    entries: BTreeMap<&'static str, Box<dyn Ensemble>>,
}

impl EnsembleRegistry {
    pub fn builtin() -> Self {
        let mut entries: BTreeMap<&'static str, Box<dyn Ensemble>> = BTreeMap::new();
        for e in [Box::new(CompleteEnsemble) as Box<dyn Ensemble>, Box::new(CubicEnsemble)] {
            entries.insert(e.name(), e);
        }
        EnsembleRegistry { entries }
    }

    pub fn get(&self, name: &str) -> Result<&dyn Ensemble> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "ensemble", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

/// Parse a 1-based comma list such as `1,3`.
pub fn parse_vertex_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Error::Parse(format!("bad vertex '{t}' (1-based integers expected)"))),
        })
        .collect()
}

/// Coefficient-free view of a generator, for reports.
pub fn describe(v: &ExactVector) -> String {
    v.terms()
        .iter()
        .map(|(p, c)| if *c == Rational::ONE { p.to_string() } else { format!("{p}:{c}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn house() -> Graph {
        Graph::from_edges_1based(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn registry_lookup() {
        let r = AnsatzRegistry::builtin();
        assert_eq!(r.names(), vec!["free", "natural", "orbit", "standard"]);
        assert!(matches!(r.get("qaoa"), Err(Error::Unknown { .. })));
        assert_eq!(EnsembleRegistry::builtin().names(), vec!["3regular", "complete"]);
    }

    #[test]
    fn house_orbit_generators() {
        let g = house();
        let ctx = AnsatzContext::new(&g, &[]).unwrap();
        let gens = OrbitAnsatz.generators(&ctx).unwrap();
        let text: Vec<String> = gens.iter().map(describe).collect();
        assert_eq!(
            text,
            vec![
                "ZZIII + ZIZII",
                "IZZII",
                "IZIZI + IIZIZ",
                "IIIZZ",
                "XIIII",
                "IXIII + IIXII",
                "IIIXI + IIIIX",
            ]
        );
    }

    #[test]
    fn free_path_and_extra_z() {
        let g = Graph::path(3);
        let ctx = AnsatzContext::new(&g, &[0]).unwrap();
        let gens = FreeAnsatz.generators(&ctx).unwrap();
        assert_eq!(gens.len(), 6);
        assert_eq!(describe(&gens[5]), "ZII");
        assert!(AnsatzContext::new(&g, &[3]).is_err());
        assert_eq!(parse_vertex_list("1,3").unwrap(), vec![0, 2]);
    }
}
