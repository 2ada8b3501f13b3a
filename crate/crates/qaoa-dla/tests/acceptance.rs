//! Acceptance suite. Prints one verdict line per criterion and exits non-zero
//! if any criterion fails. The n = 8 survey runs only with `--ignored` or
//! `--include-ignored`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qaoa_dla::ansatz::{Ansatz, AnsatzContext, AnsatzRegistry, CompleteEnsemble, CubicEnsemble, FreeAnsatz, StandardAnsatz};
use qaoa_dla::characters::{cycle_sums, factorial, multiplicity_table, projector_ranks, trivial_multiplicity, MultiplicityTable};
use qaoa_dla::closure::lie_closure;
use qaoa_dla::family::{classify, Family};
use qaoa_dla::fixtures;
use qaoa_dla::graph::{all_graphs, automorphism_group, connected_graphs, Graph, GraphShape};
use qaoa_dla::pauli::{PauliString, PauliVector};
use qaoa_dla::report::{self, analysis_report, ensemble_graph, free_check, GradvarOptions, ReportOptions};
use qaoa_dla::sim::{
    deep_variance, delta_quantity, finite_difference, gradient, gradients_agree, plus_isometry, sample_params, Circuit,
    CostFunction, StateVector,
};
use qaoa_dla::symmetry::{
    block_bilinear_type, center_of_commutant, commutant, isotypical_decomposition, natural_basis, BilinearType, BlockHalf,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<Vec<Check>, String>;

struct Check {
    what: String,
    ok: bool,
}

fn check(ok: bool, what: impl Into<String>) -> Check {
    Check { what: what.into(), ok }
}

fn within(t: Instant, limit: Duration, label: &str) -> Check {
    let e = t.elapsed();
    check(e <= limit, format!("{label} runtime {:.1}s within {}s", e.as_secs_f64(), limit.as_secs()))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------- oracles

fn oracle_kron_diag(n: usize, f: impl Fn(usize) -> f64) -> DMatrix<Complex64> {
    let d = 1 << n;
    DMatrix::from_fn(d, d, |r, c| if r == c { Complex64::new(f(r), 0.0) } else { Complex64::new(0.0, 0.0) })
}

/// `Z_u Z_v` and `X_u` built from bit operations, not from the Pauli module.
fn oracle_zz(n: usize, u: usize, v: usize) -> DMatrix<Complex64> {
    oracle_kron_diag(n, |b| if ((b >> u) ^ (b >> v)) & 1 == 1 { -1.0 } else { 1.0 })
}

fn oracle_x(n: usize, u: usize) -> DMatrix<Complex64> {
    let d = 1 << n;
    DMatrix::from_fn(d, d, |r, c| if r == c ^ (1 << u) { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
}

/// Real dimension of the Lie closure of `{iH}` by Gram-Schmidt over
/// repeated commutators of dense matrices.
fn oracle_closure_dim(hs: &[DMatrix<Complex64>]) -> usize {
    let i = Complex64::new(0.0, 1.0);
    let mut basis: Vec<DMatrix<Complex64>> = Vec::new();
    let mut queue: Vec<DMatrix<Complex64>> = hs.iter().map(|h| h * i).collect();
    let inner = |a: &DMatrix<Complex64>, b: &DMatrix<Complex64>| a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum::<f64>();
    while let Some(mut m) = queue.pop() {
        for b in &basis {
            let c = inner(b, &m);
            m -= b * Complex64::new(c, 0.0);
        }
        let norm = inner(&m, &m).sqrt();
        if norm < 1e-9 {
            continue;
        }
        m /= Complex64::new(norm, 0.0);
        for b in &basis {
            queue.push(&m * b - b * &m);
        }
        basis.push(m);
    }
    basis.len()
}

/// Minimum edge bitmask over all vertex relabelings.
fn oracle_canonical(n: usize, edges: &[(usize, usize)]) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    permutations(&mut perm, 0, &mut |p| {
        let m = edges.iter().fold(0u64, |m, &(u, v)| m | 1 << idx(p[u], p[v]));
        best = best.min(m);
    });
    best
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for j in k..p.len() {
        p.swap(k, j);
        permutations(p, k + 1, f);
        p.swap(k, j);
    }
}

fn oracle_connected_classes(n: usize) -> BTreeSet<u64> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let mut seen = 1u64;
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            for &(a, b) in &edges {
                let w = if a == u { b } else if b == u { a } else { continue };
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        if seen.count_ones() as usize == n {
            out.insert(oracle_canonical(n, &edges));
        }
    }
    out
}

/// Plain graph6 writer for n ≤ 62.
fn oracle_graph6(n: usize, edges: &[(usize, usize)]) -> String {
    let mut bits = Vec::new();
    for v in 1..n {
        for u in 0..v {
            bits.push(edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut s = String::new();
    s.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let x = chunk.iter().fold(0u8, |a, &b| a << 1 | b as u8);
        s.push((x + 63) as char);
    }
    s
}

fn corpus(n_min: usize, n_max: usize) -> Result<Vec<Graph>, String> {
    let mut v = Vec::new();
    for n in n_min..=n_max {
        v.extend(connected_graphs(n).map_err(err)?);
    }
    Ok(v)
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut checks = Vec::new();
    for (n, expected) in [(2, 1), (3, 2), (4, 6), (5, 21)] {
        let found = connected_graphs(n).map_err(err)?;
        let oracle = oracle_connected_classes(n);
        let mine: BTreeSet<u64> = found.iter().map(|g| oracle_canonical(n, &g.edges())).collect();
        checks.push(check(found.len() == expected && mine == oracle, format!("n={n}: {} connected classes, oracle {}", found.len(), oracle.len())));
    }
    let graphs = corpus(2, 5)?;
    let mut bad = Vec::new();
    for g in &graphs {
        let c = classify(g).map_err(err)?;
        let fc = free_check(g, &c).map_err(err)?;
        let mut ok = fc.holds();
        if g.n() <= 4 {
            let n = g.n();
            let mut hs: Vec<_> = g.edges().into_iter().map(|(u, v)| oracle_zz(n, u, v)).collect();
            hs.extend((0..n).map(|u| oracle_x(n, u)));
            ok &= oracle_closure_dim(&hs) == fc.closure_dim;
        }
        if !ok {
            bad.push(g.to_graph6());
        }
    }
    checks.push(check(bad.is_empty(), format!("{} graphs: closure dim, closed form and string basis agree (mismatches {bad:?})", graphs.len())));
    checks.push(within(t, Duration::from_secs(300), "sweep"));
    Ok(checks)
}

const PSI3: [(&str, i64); 8] = [
    ("00100", 1), ("00111", -1), ("01000", -1), ("01011", 1),
    ("10100", 1), ("10111", -1), ("11000", -1), ("11011", 1),
];
const PSI6: [(&str, i64); 8] = [
    ("00100", 1), ("00111", -1), ("01000", -1), ("01011", 1),
    ("10100", -1), ("10111", 1), ("11000", 1), ("11011", -1),
];

fn proportional(found: &BTreeMap<String, i64>, want: &[(&str, i64)]) -> bool {
    let Some(&first) = found.get(want[0].0) else { return false };
    found.len() == want.len() && want.iter().all(|(k, c)| found.get(*k).is_some_and(|&f| f * want[0].1 == c * first))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let g = fixtures::graph("house").map_err(err)?;
    let r = analysis_report(&g, &ReportOptions { ansatz: None, extra_z: &[], seed: 0, allow_n8: false }).map_err(err)?;
    let by = |name: &str| r.ansatze.iter().find(|a| a.ansatz == name).unwrap();
    let (free, std, orbit) = (by("free"), by("standard"), by("orbit"));
    let halves = |h: BlockHalf| {
        let mut d: Vec<usize> = std.blocks.iter().filter(|b| b.half == h).map(|b| b.d).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    };
    let vectors: Vec<BTreeMap<String, i64>> = std
        .one_dim_vectors
        .iter()
        .filter_map(|v| v.components.as_ref())
        .map(|c| c.iter().map(|k| (k.ket.clone(), k.coeff)).collect())
        .collect();
    let orbit_expected = ["ZZIII + ZIZII", "IZZII", "IZIZI + IIZIZ", "IIIZZ", "XIIII", "IXIII + IIXII", "IIIXI + IIIIX"];
    Ok(vec![
        check(free.dim_algebra == 510, format!("dim free algebra {}", free.dim_algebra)),
        check(std.dim_algebra == 248, format!("dim standard algebra {}", std.dim_algebra)),
        check(free.dim_commutant == 2 && std.dim_commutant == 6, format!("commutants {} / {}", free.dim_commutant, std.dim_commutant)),
        check(
            free.dim_center_commutant == 2 && std.dim_center_commutant == 6,
            format!("commutant centers {} / {}", free.dim_center_commutant, std.dim_center_commutant),
        ),
        check(
            std.dim_center_algebra == 2 && free.dim_center_algebra == 0,
            format!("algebra centers {} / {}", std.dim_center_algebra, free.dim_center_algebra),
        ),
        check(
            halves(BlockHalf::Plus) == [10, 5, 1] && halves(BlockHalf::Minus) == [10, 5, 1] && std.blocks.iter().all(|b| b.m == 1),
            format!("standard blocks {:?} ⊕ {:?}", halves(BlockHalf::Plus), halves(BlockHalf::Minus)),
        ),
        check(r.dim_natural_symmetries == 4, format!("natural symmetries {}", r.dim_natural_symmetries)),
        check(std.hidden_dim == Some(2), format!("hidden dim {:?}", std.hidden_dim)),
        check(vectors.iter().any(|v| proportional(v, &PSI3)), "psi3 recovered"),
        check(vectors.iter().any(|v| proportional(v, &PSI6)), "psi6 recovered"),
        check(orbit.generators == orbit_expected, format!("orbit generators {:?}", orbit.generators)),
        within(t, Duration::from_secs(60), "house"),
    ])
}

fn nat_dim(g: &Graph) -> Result<(usize, bool), String> {
    let n = g.n();
    let ctx = AnsatzContext::new(g, &[]).map_err(err)?;
    let free = lie_closure(n, &FreeAnsatz.generators(&ctx).map_err(err)?).map_err(err)?;
    let grp = automorphism_group(g).map_err(err)?;
    let nat = natural_basis(&free.basis, &grp).map_err(err)?;
    let std = lie_closure(n, &StandardAnsatz.generators(&ctx).map_err(err)?).map_err(err)?;
    Ok((nat.dim(), std.basis.same_span(&nat).map_err(err)?))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut checks = Vec::new();
    for n in 2..=6 {
        let (d, eq) = nat_dim(&Graph::path(n))?;
        checks.push(check(d == n * n && eq, format!("path n={n}: dim {d}, standard equals natural {eq}")));
    }
    for n in 3..=6 {
        let (d, _) = nat_dim(&Graph::cycle(n))?;
        checks.push(check(d == 3 * (n - 1) + 2, format!("cycle n={n}: dim {d}")));
    }
    for (n, want) in [(3, 8), (4, 17), (5, 26), (6, 42)] {
        let (d, _) = nat_dim(&Graph::complete(n))?;
        checks.push(check(d == want, format!("K{n}: dim {d}, expected {want}")));
    }
    checks.push(within(t, Duration::from_secs(120), "natural dims"));
    Ok(checks)
}

fn criterion_4() -> Outcome {
    let mut checks = Vec::new();
    for g in corpus(2, 5)? {
        let h = report::hierarchy_for(&g).map_err(err)?;
        let archetypal = g.shape().map_err(err)? == GraphShape::Archetypal;
        let ok = h.holds() && (!archetypal || h.projector_span == Some(true));
        if !ok {
            checks.push(check(false, format!("{}: {h:?}", g.to_graph6())));
        }
    }
    checks.push(check(true, "inclusions hold on every connected graph n ≤ 5"));
    Ok(checks)
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut checks = Vec::new();
    let house = automorphism_group(&fixtures::graph("house").map_err(err)?).map_err(err)?;
    let tab = multiplicity_table(&house).map_err(err)?;
    let got: Vec<Option<u64>> = [("t", "t"), ("s", "t"), ("t", "s"), ("s", "s")].iter().map(|(a, b)| tab.get(a, b)).collect();
    checks.push(check(got == [Some(10), Some(10), Some(6), Some(6)], format!("house multiplicities {got:?}")));
    for n in 3..=6 {
        let m = trivial_multiplicity(&automorphism_group(&Graph::complete(n)).map_err(err)?).map_err(err)?;
        // Bitstrings modulo S_n and global flip are classified by min(weight, n − weight).
        checks.push(check(m as usize == n / 2 + 1, format!("K{n}: trivial multiplicity {m}")));
    }
    let asym = fixtures::graph("asymmetric6").map_err(err)?;
    let m = trivial_multiplicity(&automorphism_group(&asym).map_err(err)?).map_err(err)?;
    checks.push(check(m == 32, format!("asymmetric n=6 graph: trivial multiplicity {m}")));
    for n in 1..=7 {
        let (total, _) = cycle_sums(n);
        checks.push(check(total == factorial(n + 1), format!("cycle sum n={n}: {total}")));
    }
    for m2 in [2, 4, 6, 8] {
        let (_, even) = cycle_sums(m2);
        checks.push(check(even == Some(factorial(m2)), format!("even-cycle sum 2m={m2}: {even:?}")));
    }
    let mut dual = 0;
    let mut skipped = 0;
    for g in corpus(2, 5)? {
        let grp = automorphism_group(&g).map_err(err)?;
        let table = multiplicity_table(&grp).map_err(err)?;
        let triv = trivial_multiplicity(&grp).map_err(err)?;
        let bound = (1u64 << (g.n() - 1)) as f64 / grp.order() as f64;
        if (triv as f64) < bound {
            checks.push(check(false, format!("{}: lower bound violated", g.to_graph6())));
        }
        if matches!(table, MultiplicityTable::TrivialOnly { .. }) {
            skipped += 1;
            continue;
        }
        let ranks = projector_ranks(g.n(), &grp).map_err(err)?;
        if !ranks.iter().all(|(l, r)| table.get(&l.0, &l.1) == Some(*r as u64)) {
            checks.push(check(false, format!("{}: projector ranks {ranks:?}", g.to_graph6())));
        }
        let d = report::duality_check(g.n(), &grp, &table, 0).map_err(err)?;
        match d {
            Some(d) if d.holds => dual += 1,
            other => checks.push(check(false, format!("{}: duality {other:?}", g.to_graph6()))),
        }
    }
    checks.push(check(dual > 0, format!("duality and projector ranks on {dual} abelian graphs ({skipped} non-abelian skipped)")));
    checks.push(within(t, Duration::from_secs(120), "characters"));
    Ok(checks)
}

fn expected_type(f: Family) -> Option<BilinearType> {
    match f {
        Family::Path => Some(BilinearType::Orthogonal),
        Family::BipartiteOddOdd => Some(BilinearType::Symplectic),
        Family::Archetypal => Some(BilinearType::Unitary),
        _ => None,
    }
}

fn criterion_6() -> Outcome {
    let mut checks = Vec::new();
    for g in corpus(2, 5)? {
        let c = classify(&g).map_err(err)?;
        let star = g.n() >= 2 && (0..g.n()).any(|u| g.degree(u) == g.n() - 1) && g.edge_count() == g.n() - 1;
        let applicable = match c.family {
            Family::Path | Family::Archetypal => true,
            Family::BipartiteOddOdd => star,
            _ => false,
        };
        if !applicable {
            continue;
        }
        let want = expected_type(c.family).unwrap();
        let n = g.n();
        let gens = FreeAnsatz.generators(&AnsatzContext::new(&g, &[]).map_err(err)?).map_err(err)?;
        let com = commutant(n, &gens).map_err(err)?;
        let zc = center_of_commutant(&com).map_err(err)?;
        let dec = isotypical_decomposition(n, &com.basis, &zc, 0).map_err(err)?;
        let dense: Vec<_> = gens.iter().map(|v| v.to_dense()).collect();
        let mut kinds = Vec::new();
        for b in dec.blocks.iter().filter(|b| b.m == 1) {
            kinds.push(block_bilinear_type(b, &dense).map_err(err)?.kind);
        }
        checks.push(check(
            !kinds.is_empty() && kinds.iter().all(|k| *k == want),
            format!("{} ({}, {}): blocks {:?}, expected {:?}", g.to_graph6(), c.family.as_str(), c.iso_type, kinds, want),
        ));
    }
    Ok(checks)
}

fn criterion_7() -> Outcome {
    let mut checks = Vec::new();
    for (name, dim) in [("G_a", 15), ("G_b", 6), ("G_c", 3), ("G_d", 30), ("G_e", 15), ("G_f", 15)] {
        let fx = fixtures::generator_set(name).map_err(err)?;
        match fx.exact_generators().map_err(err)? {
            Some(gens) => {
                let cl = lie_closure(fx.n, &gens).map_err(err)?;
                let com = commutant(fx.n, &gens).map_err(err)?;
                let zc = center_of_commutant(&com).map_err(err)?;
                checks.push(check(cl.dim() == dim, format!("{name}: closure dim {}", cl.dim())));
                if let Some(c) = fx.commutant {
                    checks.push(check(com.dim() == c, format!("{name}: commutant dim {}", com.dim())));
                }
                if let Some(z) = fx.center {
                    checks.push(check(zc.dim() == z, format!("{name}: center dim {}", zc.dim())));
                }
                if name == "G_f" {
                    let dec = isotypical_decomposition(fx.n, &com.basis, &zc, 0).map_err(err)?;
                    let dm: Vec<(usize, usize)> = dec.blocks.iter().map(|b| (b.d, b.m)).collect();
                    checks.push(check(dm == [(4, 2)], format!("{name}: blocks {dm:?}")));
                }
            }
            None => {
                let cl = lie_closure(fx.n, &fx.float_generators().map_err(err)?).map_err(err)?;
                checks.push(check(cl.dim() == dim, format!("{name}: float closure dim {}", cl.dim())));
            }
        }
    }
    Ok(checks)
}

fn survey_checks(n: usize, want: &[(usize, usize, usize, usize)], allow_n8: bool) -> Outcome {
    let r = report::survey_report(n, allow_n8, 0).map_err(err)?;
    let got: Vec<(usize, usize, usize, usize)> = r.classes.iter().map(|c| (c.delta, c.dim_commutant_plus, c.dim_center_plus, c.count)).collect();
    Ok(vec![check(got == want, format!("n={n}: {} graphs, classes {got:?}", r.graphs))])
}

fn criterion_8() -> Outcome {
    let mut checks = survey_checks(6, &[(0, 1, 1, 8)], false)?;
    checks.extend(survey_checks(7, &[(0, 1, 1, 99), (1, 2, 2, 45)], false)?);
    Ok(checks)
}

fn criterion_8_n8() -> Outcome {
    let t = Instant::now();
    let r = report::survey_report(8, true, 0).map_err(err)?;
    let got: Vec<(usize, usize)> = r.histogram.iter().map(|h| (h.delta, h.count)).collect();
    let want = [(0, 2157), (1, 1086), (2, 266), (3, 28), (4, 8), (5, 3), (6, 2), (8, 1), (9, 1)];
    Ok(vec![check(got == want, format!("n=8 histogram {got:?}")), within(t, Duration::from_secs(7200), "n=8 survey")])
}

fn criterion_9() -> Outcome {
    let mut checks = Vec::new();
    for n in 3..=5usize {
        let d = 1usize << n;
        let q = plus_isometry(n);
        let half = d / 2;
        let plus = StateVector::plus(n).map_err(err)?;
        let amp = DMatrix::from_column_slice(d, 1, plus.amplitudes());
        let rho = &amp * amp.adjoint();
        let dr = delta_quantity(&(q.adjoint() * rho * &q), half).map_err(err)?;
        let want = (d as f64 - 2.0) / d as f64;
        checks.push(check((dr - want).abs() < 1e-9, format!("n={n}: Δ[ρ+] {dr}, closed form {want}")));
        for g in [Graph::complete(n), Graph::path(n)] {
            let mut hp = DMatrix::zeros(d, d);
            for (u, v) in g.edges() {
                hp += oracle_zz(n, u, v);
            }
            let dh = delta_quantity(&(q.adjoint() * hp * &q), half).map_err(err)?;
            let want = (g.edge_count() * half) as f64;
            checks.push(check((dh - want).abs() < 1e-9, format!("n={n} |E|={}: Δ[Hp+] {dh}, closed form {want}", g.edge_count())));
        }
        let xn = PauliString::all_x(n);
        let mut worst: f64 = 0.0;
        let mut count = 0;
        for p in PauliString::all(n).filter(|p| p.commutes(&xn) && !p.is_identity() && *p != xn) {
            let a = PauliVector::<qaoa_dla::rational::Rational>::unit(p).to_dense();
            let da = delta_quantity(&(q.adjoint() * a * &q), half).map_err(err)?;
            worst = worst.max((da - half as f64).abs());
            count += 1;
        }
        checks.push(check(worst < 1e-9, format!("n={n}: Δ of {count} admissible strings equals d/2 (worst error {worst:e})")));
    }
    // Gradients: 50 random (graph, depth, ansatz) configurations.
    let reg = AnsatzRegistry::builtin();
    let names = reg.names();
    let pool = corpus(2, 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    let mut bad = Vec::new();
    for k in 0..50u64 {
        let g = &pool[rng.gen_range(0..pool.len())];
        let layers = rng.gen_range(1..=3);
        let name = names[rng.gen_range(0..names.len())];
        let gens = reg.get(name).unwrap().generators(&AnsatzContext::new(g, &[]).map_err(err)?).map_err(err)?;
        let c = Circuit::new(g.n(), &gens, layers).map_err(err)?;
        let f = CostFunction::maxcut(g, false);
        let p = sample_params(7, k, c.num_params(), std::f64::consts::PI);
        let an = gradient(&c, &f, &p).map_err(err)?;
        for (j, &a) in an.iter().enumerate() {
            let fd = finite_difference(&c, &f, &p, j).map_err(err)?;
            if !gradients_agree(a, fd) {
                bad.push(format!("{} {name} L={layers} param {j}: {a} vs {fd}", g.to_graph6()));
                break;
            }
        }
    }
    checks.push(check(bad.is_empty(), format!("analytic gradients agree with finite differences on 50 configs {bad:?}")));
    let c1 = deep_variance(&Graph::complete(4)).map_err(err)?;
    checks.push(check((c1.prediction - 6144.0 / 4536.0).abs() < 1e-12, format!("variance formula at K4 {}", c1.prediction)));
    let c10 = deep_variance(&Graph::complete(10)).map_err(err)?;
    checks.push(check((c10.bound - 0.390625).abs() < 1e-15, format!("bound at n=10 {}", c10.bound)));
    let opts = GradvarOptions { ansatz: "free", layers: 1, samples: 100, seed: 0, normalize: false };
    let slope = |e: &dyn qaoa_dla::ansatz::Ensemble| -> Result<f64, String> {
        let gs = (4..=12).filter(|&n| e.supports(n)).map(|n| ensemble_graph(e, n, 0)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let r = report::gradvar_report(&gs, e.name().into(), &opts).map_err(err)?;
        r.log2_slope.ok_or_else(|| "no slope".to_string())
    };
    let sc = slope(&CompleteEnsemble)?;
    let sr = slope(&CubicEnsemble)?;
    checks.push(check(sc <= -0.5, format!("complete graphs log2 variance slope {sc:.3}")));
    checks.push(check(sr.abs() < 0.15, format!("3-regular graphs log2 variance slope {sr:.3}")));
    Ok(checks)
}

fn run_cli(args: &[&str], threads: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qaoadla"));
    cmd.args(args).env_remove("QAOADLA_THREADS");
    if let Some(t) = threads {
        cmd.env("QAOADLA_THREADS", t);
    }
    let out = cmd.output().map_err(err)?;
    if !out.status.success() {
        return Err(format!("{args:?}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn criterion_10() -> Outcome {
    let mut checks = Vec::new();
    let mut total = 0;
    let mut bad = Vec::new();
    for n in 1..=7 {
        for g in all_graphs(n).map_err(err)? {
            total += 1;
            let s = g.to_graph6();
            let back = Graph::from_graph6(&s).map_err(err)?;
            if back.to_graph6() != s || back.edges() != g.edges() || s != oracle_graph6(n, &g.edges()) {
                bad.push(s);
            }
        }
    }
    checks.push(check(bad.is_empty(), format!("graph6 round trip on {total} graphs (failures {bad:?})")));
    let dir = env!("CARGO_MANIFEST_DIR");
    let house = format!("{dir}/fixtures/graphs/house.json");
    let spider = format!("{dir}/fixtures/graphs/spider.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["classify", &house, "--verify"],
        vec!["report", &house],
        vec!["survey", "--n", "6"],
        vec!["gradvar", "--ensemble", "3regular", "--n-min", "4", "--n-max", "8", "--samples", "40"],
        vec!["gradvar", &house, "--ansatz", "orbit", "--layers", "2", "--samples", "30", "--seed", "5"],
        vec!["saturate", &spider],
        vec!["characters", &house],
        vec!["verify-free-families", "--n-max", "4"],
    ];
    for args in &runs {
        let a = run_cli(args, None)?;
        let b = run_cli(args, None)?;
        let mut with_flag = args.clone();
        with_flag.extend(["--threads", "1"]);
        let c = run_cli(&with_flag, None)?;
        let d = run_cli(args, Some("3"))?;
        checks.push(check(a == b && a == c && a == d && !a.is_empty(), format!("{} byte-identical across reruns and 1/3/all threads", args[0])));
    }
    Ok(checks)
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let only_ignored = args.iter().any(|a| a == "--ignored");
    let include_ignored = only_ignored || args.iter().any(|a| a == "--include-ignored");
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    type Criterion = (u32, &'static str, fn() -> Outcome, bool);
    let all: Vec<Criterion> = vec![
        (1, "free-algebra closed forms over all connected graphs n ≤ 5", criterion_1, false),
        (2, "house graph fixture", criterion_2, false),
        (3, "natural-algebra dimensions for paths, cycles and complete graphs", criterion_3, false),
        (4, "algebra hierarchy on all connected graphs n ≤ 5", criterion_4, false),
        (5, "character engine", criterion_5, false),
        (6, "bilinear block typing", criterion_6, false),
        (7, "generator-set fixtures", criterion_7, false),
        (8, "asymmetric-graph survey n = 6, 7", criterion_8, false),
        (8, "asymmetric-graph survey n = 8", criterion_8_n8, true),
        (9, "gradient variance suite", criterion_9, false),
        (10, "graph6 round trip and CLI determinism", criterion_10, false),
    ];
    let mut failed = Vec::new();
    for (id, title, f, ignored) in all {
        let key = format!("criterion_{id}");
        if !filters.is_empty() && !filters.iter().any(|p| key.contains(p.as_str()) || title.contains(p.as_str())) {
            continue;
        }
        if ignored && !include_ignored {
            println!("criterion {id:>2} IGNORED {title} (run with --ignored)");
            continue;
        }
        if !ignored && only_ignored {
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(checks) => {
                let ok = checks.iter().all(|c| c.ok);
                println!("criterion {id:>2} {} {title} ({} checks, {secs:.1}s)", if ok { "PASS" } else { "FAIL" }, checks.len());
                for c in checks.iter().filter(|c| !c.ok) {
                    println!("      failed: {}", c.what);
                }
                if !ok {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("criterion {id:>2} FAIL {title} (error: {e}, {secs:.1}s)");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all selected criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
