//! Checked-in graphs and generator sets used by tests and the CLI.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pauli::{dense_to_pauli, ExactVector, PauliVector};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

const GRAPHS: &[(&str, &str)] = &[
    ("asymmetric6", include_str!("../fixtures/graphs/asymmetric6.json")),
    ("complete5", include_str!("../fixtures/graphs/complete5.json")),
    ("cycle5", include_str!("../fixtures/graphs/cycle5.json")),
    ("disconnected4", include_str!("../fixtures/graphs/disconnected4.json")),
    ("house", include_str!("../fixtures/graphs/house.json")),
    ("k23", include_str!("../fixtures/graphs/k23.json")),
    ("path4", include_str!("../fixtures/graphs/path4.json")),
    ("spider", include_str!("../fixtures/graphs/spider.json")),
    ("star3", include_str!("../fixtures/graphs/star3.json")),
];

const GENERATORS: &str = include_str!("../fixtures/generators.json");

pub fn graph_names() -> Vec<&'static str> {
    GRAPHS.iter().map(|(n, _)| *n).collect()
}

pub fn graph(name: &str) -> Result<Graph> {
    let (_, text) = GRAPHS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Unknown { kind: "fixture", name: name.to_string() })?;
    Graph::from_json(text)
}

#[derive(Clone, Debug, Deserialize)]
pub struct GeneratorFixture {
    pub name: String,
    pub n: usize,
    #[serde(default)]
    generators: Vec<String>,
    #[serde(default)]
    matrices: Vec<Vec<Vec<f64>>>,
    pub dim: usize,
    pub commutant: Option<usize>,
    pub center: Option<usize>,
}

#[derive(Deserialize)]
struct GeneratorFile {
    sets: Vec<GeneratorFixture>,
}

impl GeneratorFixture {
    /// `None` for sets given only as dense matrices with irrational entries.
    pub fn exact_generators(&self) -> Result<Option<Vec<ExactVector>>> {
        if self.generators.is_empty() {
            return Ok(None);
        }
        self.generators.iter().map(|s| PauliVector::parse(s)).collect::<Result<Vec<_>>>().map(Some)
    }

    pub fn float_generators(&self) -> Result<Vec<PauliVector<f64>>> {
        if let Some(g) = self.exact_generators()? {
            return Ok(g.iter().map(|v| v.to_f64()).collect());
        }
        let d = 1usize << self.n;
        self.matrices
            .iter()
            .map(|rows| {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::Parse(format!("{}: matrix must be {d}×{d}", self.name)));
                }
                let m = DMatrix::from_fn(d, d, |r, c| Complex64::new(rows[r][c], 0.0));
                dense_to_pauli(&m, 1e-12)
            })
            .collect()
    }
}

pub fn generator_sets() -> Vec<GeneratorFixture> {
    let f: GeneratorFile = serde_json::from_str(GENERATORS).expect("checked-in fixture parses");
    f.sets
}

pub fn generator_set(name: &str) -> Result<GeneratorFixture> {
    generator_sets()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Unknown { kind: "generator set", name: name.to_string() })
}
