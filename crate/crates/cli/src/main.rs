use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arrangelab::error::Error;
use arrangelab::factorization::{
    chain_to_partition, enumerate_nice_partitions, is_nice, partition_to_modular_chain,
    EnumerationOptions, SuiteOptions, Theorem, DEFAULT_MAX_HYPERPLANES,
};
use arrangelab::graph::{Chordality, Graph};
use arrangelab::io::{
    chain_to_json, lattice_to_dot, lattice_to_json, parse_graph6_file, parse_input,
    partition_from_json, partition_to_json, Input, InputFormat,
};
use arrangelab::lattice::{IntersectionLattice, LatticeOptions, DEFAULT_FLAT_BOUND};
use arrangelab::oracle::{campaign, CampaignOptions};
use arrangelab::polynomial::IntPolynomial;

const FLAT_BOUND_VAR: &str = "ARRANGELAB_FLAT_BOUND";

/// Intersection lattices, chordality and nice partitions of hyperplane
/// arrangements.
#[derive(Parser)]
#[command(name = "arrangelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Input file; `-` or absent reads stdin.
    input: Option<PathBuf>,
    /// Override input detection.
    #[arg(long, value_parser = parse_input_format)]
    input_format: Option<InputFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Blocks, chordality certificate, supersolvability, characteristic polynomial.
    Analyze(InputArgs),
    /// List nice partitions.
    Nice {
        #[command(flatten)]
        input: InputArgs,
        /// Pair each partition with a maximal modular chain inducing it.
        #[arg(long)]
        chain: bool,
        /// Stop after this many partitions.
        #[arg(long)]
        limit: Option<usize>,
        /// Largest arrangement to search.
        #[arg(long, default_value_t = DEFAULT_MAX_HYPERPLANES)]
        max_hyperplanes: usize,
    },
    /// Maximal modular chain, from a given nice partition or the first found.
    Chain {
        #[command(flatten)]
        input: InputArgs,
        /// Partition as JSON, e.g. '[["1-2"],["1-3","2-3"]]'.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Full lattice with ranks, Moebius values and covers.
    Lattice {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = LatticeFormat::Json)]
        format: LatticeFormat,
    },
    /// Characteristic polynomial.
    CharPoly(InputArgs),
    /// Run the theorem checks over a graph corpus.
    Verify {
        /// Generate connected graphs on 1..=N vertices.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Comma-separated subset of T1,T2,T3,T4.
        #[arg(long, value_delimiter = ',', default_value = "T1,T2,T3,T4")]
        theorems: Vec<Theorem>,
        /// graph6 file to use instead of the generated corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Exhaustive set-partition check only up to this many hyperplanes.
        #[arg(long, default_value_t = 10)]
        max_bell: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Json,
    Dot,
}

fn parse_input_format(s: &str) -> Result<InputFormat, String> {
    s.parse()
}

/// Failure of a command, with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::FlatBoundExceeded(_)
            | Error::EnumerationBoundExceeded { .. }
            | Error::TooManyHyperplanes(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).map_err(|e| fail(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| fail(format!("stdin: {e}")))?;
    Ok(s)
}

fn lattice_options() -> Result<LatticeOptions, Failure> {
    let flat_bound = match std::env::var(FLAT_BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| fail(format!("{FLAT_BOUND_VAR} must be a positive integer, got {v:?}")))?,
        Err(_) => DEFAULT_FLAT_BOUND,
    };
    Ok(LatticeOptions { flat_bound })
}

fn load(args: &InputArgs) -> Result<(Option<Graph>, IntersectionLattice), Failure> {
    let text = read_text(args.input.as_deref())?;
    let input = parse_input(&text, args.input_format)?;
    let graph = match &input {
        Input::Graph(g) => Some(g.clone()),
        Input::Arrangement(_) => None,
    };
    let a = input.into_arrangement()?;
    let l = IntersectionLattice::build_with(&a, lattice_options()?)?;
    Ok((graph, l))
}

fn polynomial_json(p: &IntPolynomial) -> Value {
    json!({ "text": p.to_string(), "coefficients": p.coefficients() })
}

fn analyze(args: &InputArgs) -> Result<Value, Failure> {
    let (graph, l) = load(args)?;
    let a = l.arrangement();
    let mut out = json!({
        "dim": a.dim(),
        "hyperplanes": a.len(),
        "rank": l.rank(),
        "supersolvable": l.is_supersolvable(),
        "characteristic_polynomial": polynomial_json(&l.characteristic_polynomial()),
        "lattice_size": l.len(),
    });
    if let Some(g) = graph {
        out["n"] = json!(g.n());
        out["m"] = json!(g.edge_count());
        out["blocks"] = json!(g.blocks().iter().map(Graph::support).collect::<Vec<_>>());
        match g.chordality() {
            Chordality::Chordal(order) => {
                out["chordal"] = json!(true);
                out["elimination_order"] = json!(order.as_slice());
            }
            Chordality::NotChordal(cycle) => {
                out["chordal"] = json!(false);
                out["chordless_cycle"] = json!(cycle.as_slice());
            }
        }
    }
    Ok(out)
}

fn reconstruction_json(l: &IntersectionLattice, rec: &arrangelab::factorization::ChainReconstruction) -> Value {
    json!({
        "chain": chain_to_json(l, &rec.chain),
        "blocks": rec.blocks.iter().map(|b| json!({
            "vertices": b.vertices,
            "elimination_order": b.order,
            "star_vertices": b.star_vertices.iter().map(|(part, v)| json!({
                "part": part.iter().map(|&h| l.arrangement().label(h)).collect::<Vec<_>>(),
                "vertex": v,
            })).collect::<Vec<_>>(),
            "steps": b.steps.iter().map(|&h| l.arrangement().label(h)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn nice(args: &InputArgs, chain: bool, limit: Option<usize>, max_hyperplanes: usize) -> Result<Value, Failure> {
    let (_, l) = load(args)?;
    let partitions = enumerate_nice_partitions(&l, EnumerationOptions { max_hyperplanes, limit })?;
    let a = l.arrangement();
    let items = partitions
        .iter()
        .map(|pi| {
            if !chain {
                return Ok(partition_to_json(a, pi));
            }
            let chain = if a.graph().is_some() {
                reconstruction_json(&l, &partition_to_modular_chain(&l, pi)?)
            } else {
                // Outside graphical arrangements, search the lattice for a
                // modular chain inducing the partition.
                let found = l
                    .maximal_modular_chains()
                    .into_iter()
                    .find(|c| chain_to_partition(&l, c).ok().as_ref() == Some(pi));
                json!({ "chain": found.map(|c| chain_to_json(&l, &c)) })
            };
            Ok(json!({ "partition": partition_to_json(a, pi), "reconstruction": chain }))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(json!({ "count": items.len(), "partitions": items }))
}

fn chain(args: &InputArgs, partition: Option<&str>) -> Result<Value, Failure> {
    let (_, l) = load(args)?;
    let a = l.arrangement();
    match partition {
        Some(text) => {
            let v: Value = serde_json::from_str(text).map_err(|e| fail(format!("--partition: {e}")))?;
            let pi = partition_from_json(a, &v)?;
            let cert = is_nice(&l, &pi)?;
            if let Some(failure) = cert.failure {
                return Err(fail(format!("partition is not nice: {}", json!(failure))));
            }
            let rec = partition_to_modular_chain(&l, &pi)?;
            Ok(json!({ "partition": partition_to_json(a, &pi), "reconstruction": reconstruction_json(&l, &rec) }))
        }
        None => {
            let first = l.maximal_modular_chains().into_iter().next();
            Ok(match first {
                Some(c) => json!({
                    "supersolvable": true,
                    "chain": chain_to_json(&l, &c),
                    "partition": partition_to_json(a, &chain_to_partition(&l, &c)?),
                }),
                None => json!({ "supersolvable": false, "chain": null }),
            })
        }
    }
}

fn verify(max_n: usize, theorems: Vec<Theorem>, corpus: Option<&Path>, max_bell: usize) -> Result<(Value, u8), Failure> {
    let corpus = match corpus {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| fail(format!("{}: {e}", p.display())))?;
            Some(parse_graph6_file(&text)?)
        }
        None => None,
    };
    let report = campaign(&CampaignOptions {
        max_n,
        suite: SuiteOptions {
            theorems,
            lattice: lattice_options()?,
            max_bell_hyperplanes: max_bell,
            ..SuiteOptions::default()
        },
        corpus,
    });
    let code = report.exit_code() as u8;
    Ok((serde_json::to_value(&report).expect("report serializes"), code))
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let pretty = |v: Value| serde_json::to_string_pretty(&v).expect("json serializes");
    Ok(match cli.command {
        Command::Analyze(args) => (pretty(analyze(&args)?), 0),
        Command::Nice {
            input,
            chain,
            limit,
            max_hyperplanes,
        } => (pretty(nice(&input, chain, limit, max_hyperplanes)?), 0),
        Command::Chain { input, partition } => (pretty(chain(&input, partition.as_deref())?), 0),
        Command::Lattice { input, format } => {
            let (_, l) = load(&input)?;
            match format {
                LatticeFormat::Json => (lattice_to_json(&l), 0),
                LatticeFormat::Dot => (lattice_to_dot(&l).trim_end().to_string(), 0),
            }
        }
        Command::CharPoly(args) => {
            let (_, l) = load(&args)?;
            (pretty(polynomial_json(&l.characteristic_polynomial())), 0)
        }
        Command::Verify {
            max_n,
            theorems,
            corpus,
            max_bell,
        } => {
            let (v, code) = verify(max_n, theorems, corpus.as_deref(), max_bell)?;
            (pretty(v), code)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, code)) => {
            println!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
