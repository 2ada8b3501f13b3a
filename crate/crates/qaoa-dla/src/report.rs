//! Analyses behind each CLI command, producing serializable reports.

use crate::ansatz::{describe, Ansatz, AnsatzContext, AnsatzRegistry, Ensemble, StandardAnsatz};
use crate::characters::{
    bitstring_orbit_count, duality_multisets, multiplicity_table, projector_ranks, trivial_multiplicity, MultiplicityTable,
};
use crate::closure::lie_closure;
use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::family::{classify, Classification};
use crate::graph::{automorphism_group, connected_graphs, is_asymmetric, saturate_edges, Graph, GraphShape, PermGroup};
use crate::pauli::{ExactVector, PauliVector};
use crate::rational::Rational;
use crate::sim::{deep_variance, variance_survey, Circuit, CostFunction};
use crate::symmetry::{
    block_bilinear_type, center_of_algebra, center_of_commutant, commutant, hierarchy_check, isotypical_decomposition,
    natural_basis, natural_symmetries, odd_n_pairing, one_dim_eigenvectors, reduce_to_blocks, u_nat_basis,
    BilinearType, BlockHalf, Decomposition, HierarchyReport,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: &str = "qaoadla-report/1.0";

/// Exact analyses run up to this many qubits unless n = 8 is unlocked.
pub const EXACT_MAX_N: usize = 7;

/// Round to nine decimals and clear negative zero, so reports are stable.
pub fn round9(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn check_exact_size(n: usize, allow_n8: bool) -> Result<()> {
    let cap = if allow_n8 { 8 } else { EXACT_MAX_N };
    if n > cap {
        let hint = if n == 8 { " (pass --allow-n8)" } else { "" };
        return Err(Error::Resource(format!("exact analysis supports n ≤ {cap}, got {n}{hint}")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub graph6: String,
    pub edges: Vec<[usize; 2]>,
}

impl GraphInfo {
    pub fn new(g: &Graph) -> Self {
        GraphInfo { n: g.n(), graph6: g.to_graph6(), edges: g.edges_1based() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub graph: GraphInfo,
    #[serde(flatten)]
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<FreeCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeCheck {
    pub closure_dim: usize,
    pub matches_closed_form: bool,
    /// The explicit string basis spans exactly the computed closure.
    pub basis_spans_closure: bool,
}

impl FreeCheck {
    pub fn holds(&self) -> bool {
        self.matches_closed_form && self.basis_spans_closure
    }
}

pub fn free_check(g: &Graph, c: &Classification) -> Result<FreeCheck> {
    let n = g.n();
    let gens = crate::ansatz::FreeAnsatz.generators(&AnsatzContext::new(g, &[])?)?;
    let cl = lie_closure(n, &gens)?;
    let mut explicit = EchelonBasis::new(n);
    for p in c.free_basis_strings() {
        explicit.insert_reduced(PauliVector::unit(p));
    }
    Ok(FreeCheck {
        closure_dim: cl.dim(),
        matches_closed_form: cl.dim() as u64 == c.dim_free,
        basis_spans_closure: explicit.same_span(&cl.basis)?,
    })
}

pub fn classify_report(g: &Graph, verify: bool) -> Result<ClassifyReport> {
    let c = classify(g)?;
    let verification = if verify {
        check_exact_size(g.n(), false)?;
        Some(free_check(g, &c)?)
    } else {
        None
    };
    Ok(ClassifyReport { schema_version: SCHEMA_VERSION, command: "classify", graph: GraphInfo::new(g), classification: c, verification })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub d: usize,
    pub m: usize,
    pub half: BlockHalf,
    pub plus_weight: f64,
    pub bilinear_type: BilinearType,
}

#[derive(Clone, Debug, Serialize)]
pub struct KetTerm {
    /// Bits of qubits 1..n, left to right.
    pub ket: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OneDimReport {
    pub block: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<KetTerm>>,
    pub beta: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnsatzReport {
    pub ansatz: String,
    pub generators: Vec<String>,
    pub dim_algebra: usize,
    pub closure_rounds: usize,
    pub dim_commutant: usize,
    pub dim_center_commutant: usize,
    pub dim_center_algebra: usize,
    pub blocks: Vec<BlockReport>,
    /// The natural symmetries lie in this commutant.
    pub natural_in_commutant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hidden_dim: Option<usize>,
    pub one_dim_vectors: Vec<OneDimReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_n_pairing: Option<bool>,
}

/// Everything computed for one ansatz, kept for callers that need more than
/// the serialized summary.
pub struct AnsatzAnalysis {
    pub generators: Vec<ExactVector>,
    pub algebra: EchelonBasis<Rational>,
    pub commutant: EchelonBasis<Rational>,
    pub center_commutant: EchelonBasis<Rational>,
    pub center_algebra: EchelonBasis<Rational>,
    pub decomposition: Decomposition,
    pub report: AnsatzReport,
}

pub fn ket_string(b: usize, n: usize) -> String {
    (0..n).map(|q| if b >> q & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn analyze_generators(
    name: &str,
    n: usize,
    gens: Vec<ExactVector>,
    s_nat: Option<&EchelonBasis<Rational>>,
    seed: u64,
) -> Result<AnsatzAnalysis> {
    let cl = lie_closure(n, &gens)?;
    let c = commutant(n, &gens)?;
    let zc = center_of_commutant(&c)?;
    let zg = center_of_algebra(&cl.basis, &c)?;
    let dec = isotypical_decomposition(n, &c.basis, &zc, seed)?;
    let dense: Vec<_> = gens.iter().map(|g| g.to_dense()).collect();
    let blocks = dec
        .blocks
        .iter()
        .map(|b| {
            Ok(BlockReport {
                d: b.d,
                m: b.m,
                half: b.half,
                plus_weight: round9(b.plus_weight),
                bilinear_type: block_bilinear_type(b, &dense)?.kind,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let one_dim_vectors = one_dim_eigenvectors(&dec, &dense)
        .into_iter()
        .map(|v| OneDimReport {
            block: v.block,
            components: v.integer.map(|ints| {
                ints.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(b, &c)| KetTerm { ket: ket_string(b, n), coeff: c })
                    .collect()
            }),
            beta: v.beta.iter().map(|&x| round9(x)).collect(),
        })
        .collect();
    let natural_in_commutant = match s_nat {
        Some(s) => c.basis.contains_all(s)?,
        None => false,
    };
    let hidden_dim = match s_nat {
        Some(s) if natural_in_commutant => Some(c.dim() - s.dim()),
        _ => None,
    };
    let odd_n_pairing = if n % 2 == 1 && dec.blocks.iter().all(|b| b.half != BlockHalf::Mixed) {
        Some(odd_n_pairing(&dec)?.holds)
    } else {
        None
    };
    let report = AnsatzReport {
        ansatz: name.to_string(),
        generators: gens.iter().map(describe).collect(),
        dim_algebra: cl.dim(),
        closure_rounds: cl.rounds,
        dim_commutant: c.dim(),
        dim_center_commutant: zc.dim(),
        dim_center_algebra: zg.dim(),
        blocks,
        natural_in_commutant,
        hidden_dim,
        one_dim_vectors,
        odd_n_pairing,
    };
    Ok(AnsatzAnalysis {
        generators: gens,
        algebra: cl.basis,
        commutant: c.basis,
        center_commutant: zc,
        center_algebra: zg,
        decomposition: dec,
        report,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub graph: GraphInfo,
    pub seed: u64,
    pub family: Classification,
    pub automorphism_group_order: usize,
    pub dim_natural_symmetries: usize,
    pub multiplicity_table: MultiplicityTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<HierarchyReport>,
    pub ansatze: Vec<AnsatzReport>,
}

pub struct ReportOptions<'a> {
    pub ansatz: Option<&'a str>,
    pub extra_z: &'a [usize],
    pub seed: u64,
    pub allow_n8: bool,
}

pub fn analysis_report(g: &Graph, opts: &ReportOptions) -> Result<AnalysisReport> {
    let n = g.n();
    check_exact_size(n, opts.allow_n8)?;
    let family = classify(g)?;
    let reg = AnsatzRegistry::builtin();
    let names: Vec<&str> = match opts.ansatz {
        Some(a) => vec![reg.get(a)?.name()],
        None => vec!["free", "standard", "orbit", "natural"],
    };
    let grp = automorphism_group(g)?;
    let s_nat = natural_symmetries(n, &grp)?;
    let ctx = AnsatzContext::new(g, opts.extra_z)?;
    let mut ansatze = Vec::new();
    let mut bases: BTreeMap<&str, EchelonBasis<Rational>> = BTreeMap::new();
    for name in &names {
        let gens = reg.get(name)?.generators(&ctx)?;
        let a = analyze_generators(name, n, gens, Some(&s_nat), opts.seed)?;
        bases.insert(name, a.algebra);
        ansatze.push(a.report);
    }
    let hierarchy = if names.len() == 4 && opts.extra_z.is_empty() {
        let u_nat = if g.shape()? == GraphShape::Archetypal { Some(u_nat_basis(n, &grp)?) } else { None };
        Some(hierarchy_check(&bases["standard"], &bases["orbit"], &bases["natural"], &bases["free"], u_nat.as_ref())?)
    } else {
        None
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        command: "report",
        graph: GraphInfo::new(g),
        seed: opts.seed,
        family,
        automorphism_group_order: grp.order(),
        dim_natural_symmetries: s_nat.dim(),
        multiplicity_table: multiplicity_table(&grp)?,
        hierarchy,
        ansatze,
    })
}

/// Chain of inclusions for one graph, computing each algebra from scratch.
pub fn hierarchy_for(g: &Graph) -> Result<HierarchyReport> {
    let n = g.n();
    let reg = AnsatzRegistry::builtin();
    let ctx = AnsatzContext::new(g, &[])?;
    let grp = automorphism_group(g)?;
    let close = |name: &str| -> Result<EchelonBasis<Rational>> { Ok(lie_closure(n, &reg.get(name)?.generators(&ctx)?)?.basis) };
    let free = close("free")?;
    let nat = natural_basis(&free, &grp)?;
    let u_nat = if g.shape()? == GraphShape::Archetypal { Some(u_nat_basis(n, &grp)?) } else { None };
    hierarchy_check(&close("standard")?, &close("orbit")?, &nat, &free, u_nat.as_ref())
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub graph6: String,
    pub n: usize,
    pub delta: usize,
    pub dim_commutant_plus: usize,
    pub dim_center_plus: usize,
    pub max_block: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HistogramEntry {
    pub delta: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassCount {
    pub delta: usize,
    pub dim_commutant_plus: usize,
    pub dim_center_plus: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub filter: &'static str,
    pub graphs: usize,
    pub histogram: Vec<HistogramEntry>,
    pub classes: Vec<ClassCount>,
    pub rows: Vec<SurveyRow>,
}

/// Standard ansatz restricted to the `X^⊗n = +1` block: its commutant,
/// center and the gap `2^{n−1} − max d_λ`.
pub fn survey_row(g: &Graph, seed: u64) -> Result<SurveyRow> {
    let n = g.n();
    let gens = StandardAnsatz.generators(&AnsatzContext::new(g, &[])?)?;
    let plus: Vec<ExactVector> = gens.iter().map(|v| Ok(reduce_to_blocks(v)?.0)).collect::<Result<_>>()?;
    let c = commutant(n - 1, &plus)?;
    let zc = center_of_commutant(&c)?;
    let dec = isotypical_decomposition(n - 1, &c.basis, &zc, seed)?;
    let max_block = dec.blocks.iter().map(|b| b.d).max().unwrap_or(0);
    Ok(SurveyRow {
        graph6: g.to_graph6(),
        n,
        delta: (1usize << (n - 1)) - max_block,
        dim_commutant_plus: c.dim(),
        dim_center_plus: zc.dim(),
        max_block,
    })
}

pub fn survey_report(n: usize, allow_n8: bool, seed: u64) -> Result<SurveyReport> {
    if n < 2 {
        return Err(Error::Precondition("survey needs n ≥ 2".into()));
    }
    check_exact_size(n, allow_n8)?;
    let graphs: Vec<Graph> = connected_graphs(n)?.into_iter().filter(is_asymmetric).collect();
    let rows: Vec<SurveyRow> = graphs.par_iter().map(|g| survey_row(g, seed)).collect::<Result<_>>()?;
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for r in &rows {
        *hist.entry(r.delta).or_default() += 1;
        *classes.entry((r.delta, r.dim_commutant_plus, r.dim_center_plus)).or_default() += 1;
    }
    Ok(SurveyReport {
        schema_version: SCHEMA_VERSION,
        command: "survey",
        n,
        filter: "asymmetric-connected",
        graphs: rows.len(),
        histogram: hist.into_iter().map(|(delta, count)| HistogramEntry { delta, count }).collect(),
        classes: classes
            .into_iter()
            .map(|((delta, c, z), count)| ClassCount { delta, dim_commutant_plus: c, dim_center_plus: z, count })
            .collect(),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GradvarRow {
    pub n: usize,
    pub graph6: String,
    pub edges: usize,
    pub params: usize,
    pub mean_variance: f64,
    pub log2_mean_variance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deep_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deep_variance_bound: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradvarReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub source: String,
    pub ansatz: String,
    pub layers: usize,
    pub samples: usize,
    pub seed: u64,
    pub normalized: bool,
    pub rows: Vec<GradvarRow>,
    /// Least-squares slope of `log₂(mean variance)` against `n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log2_slope: Option<f64>,
}

pub struct GradvarOptions<'a> {
    pub ansatz: &'a str,
    pub layers: usize,
    pub samples: usize,
    pub seed: u64,
    pub normalize: bool,
}

fn gradvar_row(g: &Graph, a: &dyn Ansatz, o: &GradvarOptions) -> Result<GradvarRow> {
    let n = g.n();
    let gens = a.generators(&AnsatzContext::new(g, &[])?)?;
    let c = Circuit::new(n, &gens, o.layers)?;
    let f = CostFunction::maxcut(g, o.normalize);
    let st = variance_survey(&c, &f, o.samples, o.seed, o.normalize)?;
    let v = st.mean_variance();
    let cor = deep_variance(g).ok();
    Ok(GradvarRow {
        n,
        graph6: g.to_graph6(),
        edges: g.edge_count(),
        params: c.num_params(),
        mean_variance: v,
        log2_mean_variance: v.log2(),
        deep_variance: cor.map(|c| c.prediction),
        deep_variance_bound: cor.map(|c| c.bound),
    })
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (den > 0.0).then(|| num / den)
}

/// Graph drawn for size `n` from an ensemble, on its own stream of the seed.
pub fn ensemble_graph(e: &dyn Ensemble, n: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6772_6170_6873_0000);
    rng.set_stream(n as u64);
    e.sample(n, &mut rng)
}

pub fn gradvar_report(graphs: &[Graph], source: String, o: &GradvarOptions) -> Result<GradvarReport> {
    let reg = AnsatzRegistry::builtin();
    let a = reg.get(o.ansatz)?;
    if o.layers == 0 {
        return Err(Error::Precondition("need at least one layer".into()));
    }
    let rows: Vec<GradvarRow> = graphs.iter().map(|g| gradvar_row(g, a, o)).collect::<Result<_>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.log2_mean_variance).collect();
    Ok(GradvarReport {
        schema_version: SCHEMA_VERSION,
        command: "gradvar",
        source,
        ansatz: a.name().to_string(),
        layers: o.layers,
        samples: o.samples,
        seed: o.seed,
        normalized: o.normalize,
        log2_slope: least_squares_slope(&xs, &ys),
        rows,
    })
}

pub fn gradvar_csv(r: &GradvarReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &r.rows {
        w.serialize(row).map_err(|e| Error::Numerical(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Numerical(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturateReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: GraphInfo,
    pub saturated: GraphInfo,
    pub added_edges: Vec<[usize; 2]>,
    pub rounds: usize,
    pub is_complete: bool,
    pub is_complete_bipartite: bool,
}

pub fn saturate_report(g: &Graph) -> Result<SaturateReport> {
    let r = saturate_edges(g)?;
    Ok(SaturateReport {
        schema_version: SCHEMA_VERSION,
        command: "saturate",
        input: GraphInfo::new(g),
        saturated: GraphInfo::new(&r.graph),
        added_edges: r.added.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        rounds: r.rounds,
        is_complete: r.graph.is_complete(),
        is_complete_bipartite: r.graph.is_complete_bipartite(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityCheck {
    /// Multiplicities `m_ν`, each repeated `d_ν` times.
    pub multiplicities: Vec<u64>,
    /// Block dimensions of the symmetrized unitary algebra.
    pub block_dims: Vec<u64>,
    pub commutant_is_natural_span: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharactersReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub graph: GraphInfo,
    pub automorphism_group_order: usize,
    pub abelian: bool,
    /// Generators of `Aut(G)` as 1-based images of vertices `1..n`.
    pub automorphism_generators: Vec<Vec<usize>>,
    pub trivial_multiplicity: u64,
    /// Orbits of the natural group on bitstrings, equal to the trivial multiplicity.
    pub bitstring_orbits: usize,
    pub lower_bound_holds: bool,
    pub multiplicity_table: MultiplicityTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projector_ranks_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityCheck>,
}

/// Above this size the dense cross-checks are skipped.
pub const DENSE_CHECK_MAX_N: usize = 5;

pub fn duality_check(n: usize, grp: &PermGroup, table: &MultiplicityTable, seed: u64) -> Result<Option<DualityCheck>> {
    let u = u_nat_basis(n, grp)?;
    let s_nat = natural_symmetries(n, grp)?;
    let gens = u.sorted_rows();
    let c = commutant(n, &gens)?;
    let zc = center_of_commutant(&c)?;
    let dec = isotypical_decomposition(n, &c.basis, &zc, seed)?;
    let dims: Vec<usize> = dec.blocks.iter().map(|b| b.d).collect();
    let commutant_is_natural_span = c.basis.same_span(&s_nat)?;
    Ok(duality_multisets(table, &dims).map(|(ms, ds)| DualityCheck {
        holds: ms == ds && commutant_is_natural_span,
        multiplicities: ms,
        block_dims: ds,
        commutant_is_natural_span,
    }))
}

pub fn characters_report(g: &Graph, seed: u64) -> Result<CharactersReport> {
    let n = g.n();
    let grp = automorphism_group(g)?;
    let trivial = trivial_multiplicity(&grp)?;
    let table = multiplicity_table(&grp)?;
    let dense = n <= DENSE_CHECK_MAX_N;
    let projector_ranks_match = if dense && grp.is_abelian() {
        Some(projector_ranks(n, &grp)?.iter().all(|(l, r)| table.get(&l.0, &l.1) == Some(*r as u64)))
    } else {
        None
    };
    let duality = if dense { duality_check(n, &grp, &table, seed)? } else { None };
    let bound = ((1u64 << (n - 1)) as f64) / grp.order() as f64;
    Ok(CharactersReport {
        schema_version: SCHEMA_VERSION,
        command: "characters",
        graph: GraphInfo::new(g),
        automorphism_group_order: grp.order(),
        abelian: grp.is_abelian(),
        automorphism_generators: grp.generators().iter().map(|p| p.iter().map(|v| v + 1).collect()).collect(),
        trivial_multiplicity: trivial,
        bitstring_orbits: bitstring_orbit_count(n, &grp),
        lower_bound_holds: trivial as f64 >= bound,
        multiplicity_table: table,
        projector_ranks_match,
        duality,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRow {
    pub graph6: String,
    pub n: usize,
    pub family: crate::family::Family,
    pub closed_form: u64,
    pub closure_dim: usize,
    pub basis_spans_closure: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyFamiliesReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub n_min: usize,
    pub n_max: usize,
    pub graphs: usize,
    pub failures: usize,
    pub rows: Vec<FamilyRow>,
}

pub fn verify_free_families(n_min: usize, n_max: usize) -> Result<VerifyFamiliesReport> {
    if n_min < 2 || n_max < n_min {
        return Err(Error::Precondition("need 2 ≤ n-min ≤ n-max".into()));
    }
    check_exact_size(n_max, false)?;
    let mut graphs = Vec::new();
    for n in n_min..=n_max {
        graphs.extend(connected_graphs(n)?);
    }
    let rows: Vec<FamilyRow> = graphs
        .par_iter()
        .map(|g| {
            let c = classify(g)?;
            let chk = free_check(g, &c)?;
            Ok(FamilyRow {
                graph6: g.to_graph6(),
                n: g.n(),
                family: c.family,
                closed_form: c.dim_free,
                closure_dim: chk.closure_dim,
                basis_spans_closure: chk.basis_spans_closure,
            })
        })
        .collect::<Result<_>>()?;
    let failures = rows.iter().filter(|r| r.closure_dim as u64 != r.closed_form || !r.basis_spans_closure).count();
    Ok(VerifyFamiliesReport {
        schema_version: SCHEMA_VERSION,
        command: "verify-free-families",
        n_min,
        n_max,
        graphs: rows.len(),
        failures,
        rows,
    })
}
