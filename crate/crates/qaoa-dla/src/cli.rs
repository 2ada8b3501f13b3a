//! Command-line front end. Every command prints one JSON document.

use crate::ansatz::{parse_vertex_list, EnsembleRegistry};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{self, GradvarOptions, ReportOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::io::{Read, Write};

/// Statevector simulation is dense; beyond this the memory cost is silly.
pub const GRADVAR_MAX_N: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "qaoadla", version, about = "Lie-algebraic analysis of QAOA MaxCut circuits")]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "QAOADLA_THREADS")]
    pub threads: Option<usize>,
    /// Write output here instead of stdout. A `.csv` suffix selects CSV for gradvar.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphFormat {
    Graph6,
    Json,
}

#[derive(Args, Debug)]
pub struct GraphInput {
    /// graph6 string, edge-list JSON, a file holding either, or `-` for stdin.
    pub graph: String,
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Free-algebra family and its closed-form dimension.
    Classify {
        #[command(flatten)]
        input: GraphInput,
        /// Also compute the closure and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Algebras, commutants, centers and block structure per ansatz.
    Report {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_parser = ["free", "standard", "orbit", "natural"])]
        ansatz: Option<String>,
        /// Extra single-qubit Z generators, 1-based, comma separated.
        #[arg(long)]
        extra_z: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_n8: bool,
    },
    /// Gap of the largest block over all asymmetric connected graphs on n vertices.
    Survey {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_n8: bool,
    },
    /// Variance of cost gradients at random parameters.
    Gradvar {
        /// Single graph; omit when using --ensemble.
        graph: Option<String>,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long, value_parser = ["complete", "3regular"], conflicts_with = "graph")]
        ensemble: Option<String>,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value = "free", value_parser = ["free", "standard", "orbit", "natural"])]
        ansatz: String,
        #[arg(long, default_value_t = 1)]
        layers: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Divide the cost by the edge count.
        #[arg(long)]
        normalize: bool,
    },
    /// Add every edge whose ZZ term the free algebra already contains.
    Saturate {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Characters of the natural symmetry group and block multiplicities.
    Characters {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check every family's closed form and basis against the closure.
    VerifyFreeFamilies {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

fn read_graph(raw: &str, format: Option<GraphFormat>) -> Result<Graph> {
    let text = if raw == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if std::path::Path::new(raw).is_file() {
        std::fs::read_to_string(raw)?
    } else {
        raw.to_string()
    };
    match format {
        Some(GraphFormat::Graph6) => Graph::from_graph6(text.trim()),
        Some(GraphFormat::Json) => Graph::from_json(text.trim()),
        None => Graph::parse_any(&text),
    }
}

/// Rendered output plus whether a verification inside it failed.
struct Output {
    body: String,
    falsified: Option<String>,
}

fn json<T: Serialize>(v: &T) -> Result<Output> {
    let mut body = serde_json::to_string_pretty(v)?;
    body.push('\n');
    Ok(Output { body, falsified: None })
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Classify { input, verify } => {
            let g = read_graph(&input.graph, input.format)?;
            let r = report::classify_report(&g, *verify)?;
            let mut out = json(&r)?;
            if let Some(v) = &r.verification {
                if !v.holds() {
                    out.falsified = Some(format!("closure dimension {} against closed form {}", v.closure_dim, r.classification.dim_free));
                }
            }
            Ok(out)
        }
        Command::Report { input, ansatz, extra_z, seed, allow_n8 } => {
            let g = read_graph(&input.graph, input.format)?;
            let extra = match extra_z {
                Some(s) => parse_vertex_list(s)?,
                None => Vec::new(),
            };
            let opts = ReportOptions { ansatz: ansatz.as_deref(), extra_z: &extra, seed: *seed, allow_n8: *allow_n8 };
            json(&report::analysis_report(&g, &opts)?)
        }
        Command::Survey { n, seed, allow_n8 } => json(&report::survey_report(*n, *allow_n8, *seed)?),
        Command::Gradvar { graph, format, ensemble, n_min, n_max, ansatz, layers, samples, seed, normalize } => {
            let opts = GradvarOptions { ansatz, layers: *layers, samples: *samples, seed: *seed, normalize: *normalize };
            let (graphs, source) = match (graph, ensemble) {
                (Some(raw), None) => {
                    let g = read_graph(raw, *format)?;
                    let src = format!("graph:{}", g.to_graph6());
                    (vec![g], src)
                }
                (None, Some(name)) => {
                    let reg = EnsembleRegistry::builtin();
                    let e = reg.get(name)?;
                    if n_min > n_max {
                        return Err(Error::Precondition("--n-min exceeds --n-max".into()));
                    }
                    let gs = (*n_min..=*n_max)
                        .filter(|&n| e.supports(n))
                        .map(|n| report::ensemble_graph(e, n, *seed))
                        .collect::<Result<Vec<_>>>()?;
                    if gs.is_empty() {
                        return Err(Error::Precondition(format!("ensemble {name} has no sizes in {n_min}..={n_max}")));
                    }
                    (gs, format!("ensemble:{name}"))
                }
                _ => return Err(Error::Precondition("give either a graph or --ensemble".into())),
            };
            if let Some(g) = graphs.iter().find(|g| g.n() > GRADVAR_MAX_N) {
                return Err(Error::Resource(format!("gradvar supports n ≤ {GRADVAR_MAX_N}, got {}", g.n())));
            }
            let r = report::gradvar_report(&graphs, source, &opts)?;
            let csv = cli.out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")));
            if csv {
                Ok(Output { body: report::gradvar_csv(&r)?, falsified: None })
            } else {
                json(&r)
            }
        }
        Command::Saturate { input } => json(&report::saturate_report(&read_graph(&input.graph, input.format)?)?),
        Command::Characters { input, seed } => {
            let g = read_graph(&input.graph, input.format)?;
            report::check_exact_size(g.n(), false)?;
            json(&report::characters_report(&g, *seed)?)
        }
        Command::VerifyFreeFamilies { n_min, n_max } => {
            let r = report::verify_free_families(*n_min, *n_max)?;
            let mut out = json(&r)?;
            if r.failures > 0 {
                out.falsified = Some(format!("{} of {} graphs disagree with their closed form", r.failures, r.graphs));
            }
            Ok(out)
        }
    }
}

fn emit(cli: &Cli, body: &str, stdout: &mut dyn Write) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: thread pool: {e}");
            return 1;
        }
    };
    let result = pool.install(|| execute(&cli)).and_then(|out| {
        emit(&cli, &out.body, stdout)?;
        match out.falsified {
            Some(msg) => Err(Error::Falsified(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
