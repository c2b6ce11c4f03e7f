use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use zeta_kit_core::bounds::{z_bound, BoundReport};
use zeta_kit_core::degeneracy::{cheap_vertices_with, layer_decomposition, zeta_profile};
use zeta_kit_core::generate::{generate, GeneratorSpec};
use zeta_kit_core::greedy::{
    cheap_greedy, forest_k_greedy, min_greedy, min_greedy_seeded, one_cheap_greedy, two_cheap_greedy,
};
use zeta_kit_core::oracle::{exact_alpha_k, family_f_witness, ALPHA0_LIMIT};
use zeta_kit_core::rational::{self, ceil_usize};
use zeta_kit_core::{Anomaly, CheapVerdict, GreedyError, GreedyRun, Rational};

use crate::error::CliError;
use crate::formats::{self, Format, GraphDocument};
use crate::report::{self, approx, bound_maps, exact, OracleLimits, Record};
use crate::SCHEMA;

#[derive(Debug, Parser)]
#[command(name = "zeta-kit", version, about = "Degenerate-degree bounds and certified greedy k-independent sets")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph file, or `-` for stdin.
    path: PathBuf,
    /// Input format; guessed from the extension or contents when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Dimacs,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => Format::EdgeList,
            FormatArg::Dimacs => Format::Dimacs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Min,
    Cheap,
    #[value(name = "1cheap")]
    OneCheap,
    #[value(name = "2cheap")]
    TwoCheap,
    #[value(name = "forest-k")]
    ForestK,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Example1,
    Path,
    Cycle,
    Complete,
    Star,
    TrianglePendant,
    #[value(name = "family-F", alias = "family-f")]
    FamilyF,
    RandomGnp,
    RandomForest,
    DisjointCliques,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degenerate degrees, cheap vertices and cheap layers.
    Zeta {
        #[command(flatten)]
        input: Input,
    },
    /// Every implemented lower bound, exact and approximate.
    Bounds {
        #[command(flatten)]
        input: Input,
    },
    /// Run one greedy algorithm and report its set and certificate.
    Greedy {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Degree cap for `forest-k`.
        #[arg(long)]
        k: Option<usize>,
        /// Random tie-breaking seed for `min`.
        #[arg(long)]
        seed: Option<u64>,
        /// Include every round in the output.
        #[arg(long)]
        trace: bool,
    },
    /// Exact k-independence number by search.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Decide membership in the family where the independence number equals Z_1.
    FamilyF {
        #[command(flatten)]
        input: Input,
    },
    /// Write a generated graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        leaves: Option<usize>,
        /// Clique sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Extra inter-clique edges to attempt for `family-F`.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long)]
        trees: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Report on every graph file in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Report file; `.csv` selects CSV, anything else JSON.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        threads: Option<usize>,
        /// Largest graph handed to the independence-number oracle.
        #[arg(long, default_value_t = ALPHA0_LIMIT)]
        alpha0_max_n: usize,
        /// Largest graph handed to the k-independence oracles (k = 1, 2).
        #[arg(long, default_value_t = 16)]
        alpha_k_max_n: usize,
    },
    /// Search random graphs for alpha_k < Z_{k+1}. Reports, never fails.
    Conjecture {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixed edge probability; otherwise drawn per trial.
        #[arg(long)]
        p: Option<f64>,
    },
}

/// Parses `args` (program name first) and runs the command, writing JSON to
/// `out`.
pub fn run<I, T>(args: I, out: &mut impl Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}").map_err(|e| CliError::io("stdout", e))?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string().trim_end().to_owned())),
    };
    let (value, failure) = match cli.command {
        Command::Zeta { input } => (zeta(&read(&input)?), None),
        Command::Bounds { input } => (bounds(&read(&input)?), None),
        Command::Greedy {
            input,
            algo,
            k,
            seed,
            trace,
        } => greedy(&read(&input)?, algo, k, seed, trace)?,
        Command::Oracle { input, k } => oracle(&read(&input)?, k)?,
        Command::FamilyF { input } => family_f(&read(&input)?)?,
        Command::Gen {
            family,
            k,
            n,
            p,
            seed,
            leaves,
            sizes,
            extra,
            trees,
            out,
            format,
        } => {
            let need = |v: Option<usize>, flag: &str| {
                v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this family")))
            };
            let spec = match family {
                Family::Example1 => GeneratorSpec::Example1 { k: need(k, "k")? },
                Family::Path => GeneratorSpec::Path { n: need(n, "n")? },
                Family::Cycle => GeneratorSpec::Cycle { n: need(n, "n")? },
                Family::Complete => GeneratorSpec::Complete { n: need(n, "n")? },
                Family::Star => GeneratorSpec::Star {
                    leaves: need(leaves, "leaves")?,
                },
                Family::TrianglePendant => GeneratorSpec::TrianglePendant,
                Family::FamilyF => GeneratorSpec::FamilyF {
                    clique_sizes: sizes,
                    extra_edges: extra,
                    seed,
                },
                Family::RandomGnp => GeneratorSpec::RandomGnp {
                    n: need(n, "n")?,
                    p: p.ok_or_else(|| CliError::Usage("--p is required for random-gnp".into()))?,
                    seed,
                },
                Family::RandomForest => GeneratorSpec::RandomForest {
                    n: need(n, "n")?,
                    trees: need(trees, "trees")?,
                    seed,
                },
                Family::DisjointCliques => GeneratorSpec::DisjointCliques { sizes },
            };
            (gen(&spec, &out, format)?, None)
        }
        Command::Bench {
            dir,
            out,
            threads,
            alpha0_max_n,
            alpha_k_max_n,
        } => {
            let limits = OracleLimits {
                alpha0: alpha0_max_n,
                alpha_k: alpha_k_max_n,
            };
            (bench(&dir, &out, threads, limits)?, None)
        }
        Command::Conjecture { k, n, trials, seed, p } => (conjecture(k, n, trials, seed, p)?, None),
    };
    let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
    text.push('\n');
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e))?;
    match failure {
        Some(message) => Err(CliError::Invariant(message)),
        None => Ok(()),
    }
}

fn read(input: &Input) -> Result<GraphDocument, CliError> {
    let name = input.path.display().to_string();
    let text = if name == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| CliError::io(&name, e))?;
        text
    } else {
        fs::read_to_string(&input.path).map_err(|e| CliError::io(&name, e))?
    };
    let format = input
        .format
        .map_or_else(|| Format::detect(&input.path, &text), Format::from);
    formats::parse(&text, format).map_err(|source| CliError::Parse { path: name, source })
}

fn envelope(doc: &GraphDocument, body: Value) -> Value {
    let mut value = json!({
        "schema": SCHEMA,
        "graph": {
            "n": doc.graph.vertex_count(),
            "m": doc.graph.edge_count(),
            "format": doc.format.as_str(),
            "warnings": doc.warnings,
        },
    });
    if let (Value::Object(target), Value::Object(fields)) = (&mut value, body) {
        target.extend(fields);
    }
    value
}

fn zeta(doc: &GraphDocument) -> Value {
    let graph = &doc.graph;
    let profile = zeta_profile(graph);
    let layers = layer_decomposition(graph);
    envelope(
        doc,
        json!({
            "labels": doc.labels_of(graph.vertices()),
            "zeta": profile.zeta,
            "degeneracy": profile.degeneracy,
            "cheap": doc.labels_of(cheap_vertices_with(graph, &profile).iter()),
            "layers": layers.layers.iter().map(|l| doc.labels_of(l.iter())).collect::<Vec<_>>(),
        }),
    )
}

fn bounds(doc: &GraphDocument) -> Value {
    let (exact_map, approx_map) = bound_maps(&BoundReport::compute(&doc.graph));
    envelope(doc, json!({ "bounds": exact_map, "approx": approx_map }))
}

fn verdict_json(verdict: &CheapVerdict) -> Value {
    match verdict {
        CheapVerdict::Cheap { contribution } => json!({ "cheap": exact(contribution) }),
        CheapVerdict::Isolated => json!("isolated"),
        CheapVerdict::DegreeExceeds { vertex, degree } => json!({ "degree_exceeds": { "vertex": vertex, "degree": degree } }),
        CheapVerdict::ContributionExceeds { contribution, size } => {
            json!({ "contribution_exceeds": { "contribution": exact(contribution), "size": size } })
        }
    }
}

fn anomaly_json(doc: &GraphDocument, anomaly: &Anomaly) -> Value {
    json!({
        "pattern": anomaly.pattern.as_str(),
        "candidate": doc.labels_of(anomaly.candidate.iter()),
        "verdict": verdict_json(&anomaly.verdict),
    })
}

/// Re-derives the guarantees of a run; returns a description of the first
/// one that fails.
fn run_violation(doc: &GraphDocument, run: &GreedyRun) -> Option<String> {
    let graph = &doc.graph;
    let bound = z_bound(&zeta_profile(graph), run.level + 1).expect("level + 1 >= 1");
    if run.chosen.len() < ceil_usize(&run.certificate) {
        Some(format!("size {} below certificate {}", run.chosen.len(), run.certificate))
    } else if run.certificate < bound {
        Some(format!("certificate {} below Z_{} = {bound}", run.certificate, run.level + 1))
    } else if graph.induced_max_degree(&run.chosen) > run.level {
        Some(format!("chosen set induces degree above {}", run.level))
    } else if !run.anomalies.is_empty() {
        Some(format!("{} cheap-set anomalies logged", run.anomalies.len()))
    } else {
        None
    }
}

fn greedy(
    doc: &GraphDocument,
    algo: Algo,
    k: Option<usize>,
    seed: Option<u64>,
    trace: bool,
) -> Result<(Value, Option<String>), CliError> {
    let graph = &doc.graph;
    if algo == Algo::ForestK && k.is_none() {
        return Err(CliError::Usage("--k is required for forest-k".into()));
    }
    if seed.is_some() && algo != Algo::Min {
        return Err(CliError::Usage("--seed only applies to --algo min".into()));
    }
    let result = match algo {
        Algo::Min => Ok(seed.map_or_else(|| min_greedy(graph), |s| min_greedy_seeded(graph, s))),
        Algo::Cheap => Ok(cheap_greedy(graph)),
        Algo::OneCheap => one_cheap_greedy(graph),
        Algo::TwoCheap => two_cheap_greedy(graph),
        Algo::ForestK => forest_k_greedy(graph, k.unwrap_or_default()),
    };
    let run = match result {
        Ok(run) => run,
        Err(GreedyError::NotForest) => return Err(CliError::Usage("forest-k needs a forest".into())),
        Err(e) => return Err(CliError::Invariant(e.to_string())),
    };
    let bound = z_bound(&zeta_profile(graph), run.level + 1).expect("level + 1 >= 1");
    let mut body = json!({
        "algorithm": run.algorithm,
        "level": run.level,
        "size": run.chosen.len(),
        "chosen": doc.labels_of(run.chosen.iter()),
        "certificate": exact(&run.certificate),
        "certificate_approx": approx(&run.certificate),
        "z_bound": exact(&bound),
        "z_bound_approx": approx(&bound),
        "anomalies": run.anomalies.iter().map(|a| anomaly_json(doc, a)).collect::<Vec<_>>(),
    });
    if trace {
        let rounds: Vec<Value> = run
            .trace
            .iter()
            .map(|step| {
                json!({
                    "kind": step.kind.as_str(),
                    "picked": doc.labels_of(step.picked.iter()),
                    "removed": doc.labels_of(step.removed.iter()),
                    "lambda": step.lambda.as_ref().map(exact),
                    "contribution": step.contribution.as_ref().map(exact),
                })
            })
            .collect();
        body["trace"] = Value::Array(rounds);
    }
    let failure = run_violation(doc, &run);
    Ok((envelope(doc, body), failure))
}

fn oracle(doc: &GraphDocument, k: usize) -> Result<(Value, Option<String>), CliError> {
    let graph = &doc.graph;
    let result = exact_alpha_k(graph, k).map_err(|e| CliError::Usage(e.to_string()))?;
    let report = BoundReport::compute(graph);
    let mut bounds: Vec<(&str, Rational)> = match k {
        0 => report.alpha0_bounds().into_iter().map(|(n, v)| (n, v.clone())).collect(),
        _ => Vec::new(),
    };
    let z_name = format!("z{}", k + 1);
    bounds.push((&z_name, z_bound(&zeta_profile(graph), k + 1).expect("k + 1 >= 1")));
    let alpha = rational::from_usize(result.size);
    let failure = bounds
        .iter()
        .find(|(_, v)| alpha < *v)
        .map(|(name, v)| format!("alpha_{k} = {} below {name} = {v}", result.size));
    let bound_values: serde_json::Map<String, Value> = bounds.iter().map(|(n, v)| ((*n).to_owned(), exact(v))).collect();
    let body = json!({
        "k": k,
        "alpha": result.size,
        "witness": doc.labels_of(result.witness.iter()),
        "bounds": bound_values,
    });
    Ok((envelope(doc, body), failure))
}

fn family_f(doc: &GraphDocument) -> Result<(Value, Option<String>), CliError> {
    let graph = &doc.graph;
    let witness = family_f_witness(graph);
    let z1 = z_bound(&zeta_profile(graph), 1).expect("k = 1");
    let alpha = exact_alpha_k(graph, 0).ok().map(|r| r.size);
    let equal = alpha.map(|a| rational::from_usize(a) == z1);
    let failure = (witness.is_some() && equal == Some(false))
        .then(|| format!("member with alpha_0 = {} != Z_1 = {z1}", alpha.unwrap_or_default()));
    let body = json!({
        "in_family_f": witness.is_some(),
        "cliques": witness.map(|cs| cs.iter().map(|c| doc.labels_of(c.iter())).collect::<Vec<_>>()),
        "z1": exact(&z1),
        "alpha0": alpha,
        "alpha0_equals_z1": equal,
    });
    Ok((envelope(doc, body), failure))
}

fn gen(spec: &GeneratorSpec, out: &Path, format: Option<FormatArg>) -> Result<Value, CliError> {
    let graph = generate(spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let format = format.map_or_else(|| Format::detect(out, ""), Format::from);
    let doc = GraphDocument::unlabeled(graph);
    fs::write(out, formats::write(&doc, format)).map_err(|e| CliError::io(out.display(), e))?;
    Ok(json!({
        "schema": SCHEMA,
        "family": spec.family(),
        "n": doc.graph.vertex_count(),
        "m": doc.graph.edge_count(),
        "format": format.as_str(),
        "out": out.display().to_string(),
    }))
}

fn bench_one(path: &Path, limits: OracleLimits) -> Result<Record, CliError> {
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let clock = Instant::now();
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
    let doc = formats::parse(&text, Format::detect(path, &text)).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    let parse = clock.elapsed();
    let record = Record::compute(name, &doc, parse, limits).map_err(CliError::Invariant)?;
    record.check().map_err(CliError::Invariant)?;
    Ok(record)
}

fn bench(dir: &Path, out: &Path, threads: Option<usize>, limits: OracleLimits) -> Result<Value, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir.display(), e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::io(dir.display(), e))?;
        if entry.file_type().map_err(|e| CliError::io(entry.path().display(), e))?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let results: Vec<Result<Record, CliError>> = pool.install(|| files.par_iter().map(|p| bench_one(p, limits)).collect());
    let mut records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| a.name.cmp(&b.name));

    let mut file = fs::File::create(out).map_err(|e| CliError::io(out.display(), e))?;
    let csv = out.extension().is_some_and(|e| e == "csv");
    if csv {
        report::write_csv(&records, &mut file).map_err(|e| CliError::io(out.display(), e.into()))?;
    } else {
        report::write_json(&records, &mut file).map_err(|e| CliError::io(out.display(), e))?;
    }
    Ok(json!({
        "schema": SCHEMA,
        "rows": records.len(),
        "format": if csv { "csv" } else { "json" },
        "out": out.display().to_string(),
    }))
}

const CONJECTURE_PROBABILITIES: [f64; 5] = [0.1, 0.2, 0.3, 0.5, 0.7];

fn conjecture(k: usize, n: usize, trials: usize, seed: u64, p: Option<f64>) -> Result<Value, CliError> {
    if let Some(p) = p.filter(|p| !(0.0..=1.0).contains(p)) {
        return Err(CliError::Usage(format!("--p {p} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    let mut min_slack: Option<Rational> = None;
    for _ in 0..trials {
        let p = p.unwrap_or_else(|| CONJECTURE_PROBABILITIES[rng.random_range(0..CONJECTURE_PROBABILITIES.len())]);
        let graph_seed: u64 = rng.random();
        let graph = generate(&GeneratorSpec::RandomGnp { n, p, seed: graph_seed }).map_err(|e| CliError::Usage(e.to_string()))?;
        let alpha = exact_alpha_k(&graph, k).map_err(|e| CliError::Usage(e.to_string()))?.size;
        let bound = z_bound(&zeta_profile(&graph), k + 1).expect("k + 1 >= 1");
        let slack = rational::from_usize(alpha) - &bound;
        if slack < rational::zero() {
            counterexamples.push(json!({
                "p": p.to_string(),
                "seed": graph_seed,
                "alpha": alpha,
                "bound": exact(&bound),
                "edges": graph.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
            }));
        }
        if min_slack.as_ref().is_none_or(|m| slack < *m) {
            min_slack = Some(slack);
        }
    }
    Ok(json!({
        "schema": SCHEMA,
        "k": k,
        "n": n,
        "trials": trials,
        "seed": seed,
        "counterexamples": counterexamples,
        "min_slack": min_slack.as_ref().map(exact),
    }))
}
