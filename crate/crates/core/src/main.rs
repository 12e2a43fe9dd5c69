//! Command-line front end: class exploration, orbit dumps, subtractive
//! expansions, cone partitions, verification suites, Markov checks, and
//! graph export.
//!
//! Exit codes: 0 for success (including expected orbit termination at a
//! boundary), 1 for a failing verification or Markov assertion, 2 for usage
//! errors (unknown names, malformed vectors or permutations, unsupported
//! formats).

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rauzylab::cones::{
    euclid_distorted_partition, rauzy_distorted_partition, ConePath, Partition,
};
use rauzylab::euclid::{cf_digits, e_pi_step, e_sigma_step, e_step, expansion};
use rauzylab::induction::{normalized_step, step, Move, RauzyState};
use rauzylab::mcf;
use rauzylab::numerics::{fmt_rat, parse_rat, RVector};
use rauzylab::perm::{rauzy_class, Perm, RauzyGraph};
use rauzylab::report::RunConfig;
use rauzylab::verify::{run_suite, SUITES};
use rauzylab::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Euclid,
    EuclidSigma,
    EuclidPi,
    Rauzy,
    RauzyNormalized,
    Poincare,
    DanielsParry,
    Fs,
    FsNormalized,
    Brun,
    Selmer,
    JacobiPerron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MarkovTarget {
    Brun,
    Selmer,
}

/// Exact-arithmetic laboratory for subtractive algorithms, induction on
/// interval exchanges, and the associated cone geometry.
#[derive(Parser)]
#[command(name = "rauzylab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Dimension cap for suites and default permutation sizes.
    #[arg(long, global = true, default_value_t = 6)]
    n: usize,

    /// Distortion threshold.
    #[arg(long = "N", global = true, default_value_t = 8)]
    threshold: u64,

    /// Depth cap: orbit length, partition depth, suite depth.
    #[arg(long, global = true, default_value_t = 12)]
    depth: usize,

    /// Base seed for all sampling; every run with the same configuration,
    /// seed and worker count produces byte-identical output.
    #[arg(long, global = true, env = "RAUZYLAB_SEED", default_value_t = 2024)]
    seed: u64,

    /// Sample count for statistical checks.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: u64,

    /// Worker count for parallel sampling (part of the determinism key).
    #[arg(long, global = true, default_value_t = 8)]
    workers: u64,

    /// Output format; verbs reject formats they cannot express.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Explore the induction class of a permutation (members, edges,
    /// standard and loop nodes).
    RauzyClass {
        /// Bottom row, e.g. "3,2,1"; defaults to the reversal of 1..n.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Iterate one algorithm from a start vector, dumping (step, vector,
    /// digit) rows.
    Orbit {
        #[arg(long, value_enum)]
        algo: Algo,
        /// Comma-separated rational coordinates, e.g. "5,3" or "1/2,2/3,4".
        #[arg(long)]
        start: String,
        /// Bottom row for the induction algorithms.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Full planar subtractive expansion with continued-fraction digits.
    Expand {
        /// Two comma-separated rational coordinates.
        #[arg(long)]
        start: String,
    },
    /// Distortion-filtered cone partition (planar subtractive tree, or the
    /// induction tree at a loop permutation).
    ConePartition {
        /// Loop permutation bottom row; omitted means the planar tree.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Run a named verification suite and print its report.
    Verify {
        /// One of: cones, euclid, euclid-proof, iet, mcf, permutations,
        /// rauzy-proof, all.
        suite: String,
    },
    /// Sampled Markov surjectivity check for a subtractive family member.
    Mcf {
        #[arg(value_enum)]
        check: MarkovTarget,
    },
    /// Export an induction class graph.
    GraphExport {
        /// Bottom row, e.g. "3,2,1"; defaults to the reversal of 1..n.
        #[arg(long)]
        perm: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        depth: cli.depth,
        n: cli.n,
        threshold: cli.threshold,
        workers: cli.workers,
        format: cli.format.name().to_string(),
    };
    match run(&cli, &cfg) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<ExitCode> {
    match &cli.command {
        Command::RauzyClass { perm } => cmd_rauzy_class(cli, cfg, perm.as_deref()),
        Command::Orbit { algo, start, perm } => {
            cmd_orbit(cli, cfg, *algo, start, perm.as_deref())
        }
        Command::Expand { start } => cmd_expand(cli, cfg, start),
        Command::ConePartition { perm } => cmd_cone_partition(cli, cfg, perm.as_deref()),
        Command::Verify { suite } => cmd_verify(cli, cfg, suite),
        Command::Mcf { check } => cmd_mcf(cli, cfg, *check),
        Command::GraphExport { perm } => cmd_graph_export(cli, perm.as_deref()),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<ExitCode> {
    match &cli.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.write_all(b"\n"))
                .map_err(|e| Error::InvalidWalk(format!("cannot write output: {e}")))?;
        }
        Some(path) => {
            std::fs::write(path, format!("{text}\n"))
                .map_err(|e| Error::InvalidWalk(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn unsupported_format(verb: &str, format: Format) -> Error {
    Error::OutOfDomain(format!("{verb} cannot emit {}", format.name()))
}

fn parse_perm(text: &str) -> Result<Perm> {
    let row: Vec<usize> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::OutOfDomain(format!("bad permutation entry {t:?}")))
        })
        .collect::<Result<_>>()?;
    Perm::from_bottom_row(&row)
}

fn default_perm(n: usize) -> Result<Perm> {
    if n < 2 {
        return Err(Error::OutOfDomain(format!(
            "permutations need n >= 2, got {n}"
        )));
    }
    Perm::from_bottom_row(&(1..=n).rev().collect::<Vec<_>>())
}

fn parse_vector(text: &str) -> Result<RVector> {
    let entries = text
        .split(',')
        .map(|t| parse_rat(t.trim()))
        .collect::<Result<Vec<_>>>()?;
    if entries.is_empty() {
        return Err(Error::OutOfDomain("empty start vector".into()));
    }
    Ok(RVector::new(entries))
}

fn row_label(p: &Perm) -> String {
    p.bottom_row()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn vector_label(v: &RVector) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(";")
}

// ---------------------------------------------------------------------------
// rauzy-class / graph-export

#[derive(Serialize)]
struct ClassNode {
    index: usize,
    perm: Vec<usize>,
    standard: bool,
    #[serde(rename = "loop")]
    loop_node: bool,
    a_edge: usize,
    b_edge: usize,
}

#[derive(Serialize)]
struct ClassReport<'a> {
    config: &'a RunConfig,
    basepoint: Vec<usize>,
    size: usize,
    nodes: Vec<ClassNode>,
}

fn build_class(cli: &Cli, perm: Option<&str>) -> Result<(Perm, RauzyGraph)> {
    let base = match perm {
        Some(text) => parse_perm(text)?,
        None => default_perm(cli.n)?,
    };
    let graph = rauzy_class(&base)?;
    Ok((base, graph))
}

fn class_nodes(graph: &RauzyGraph) -> Vec<ClassNode> {
    let standard = graph.standard_nodes();
    let loops = graph.loop_nodes();
    (0..graph.size())
        .map(|i| ClassNode {
            index: i,
            perm: graph.node(i).bottom_row(),
            standard: standard.contains(&i),
            loop_node: loops.contains(&i),
            a_edge: graph.a_edge(i),
            b_edge: graph.b_edge(i),
        })
        .collect()
}

fn cmd_rauzy_class(cli: &Cli, cfg: &RunConfig, perm: Option<&str>) -> Result<ExitCode> {
    let (base, graph) = build_class(cli, perm)?;
    let text = match cli.format {
        Format::Json => {
            let report = ClassReport {
                config: cfg,
                basepoint: base.bottom_row(),
                size: graph.size(),
                nodes: class_nodes(&graph),
            };
            serde_json::to_string_pretty(&report).expect("serializable")
        }
        Format::Csv => {
            let mut lines = vec!["index,perm,standard,loop,a_edge,b_edge".to_string()];
            for node in class_nodes(&graph) {
                lines.push(format!(
                    "{},{},{},{},{},{}",
                    node.index,
                    node.perm
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                    node.standard,
                    node.loop_node,
                    node.a_edge,
                    node.b_edge
                ));
            }
            lines.join("\n")
        }
        Format::Dot => graph.export_dot(),
    };
    emit(cli, &text)
}

fn cmd_graph_export(cli: &Cli, perm: Option<&str>) -> Result<ExitCode> {
    let (_, graph) = build_class(cli, perm)?;
    let text = match cli.format {
        Format::Dot => graph.export_dot(),
        Format::Json => {
            let nodes: Vec<Vec<usize>> = graph.nodes().iter().map(Perm::bottom_row).collect();
            let a: Vec<usize> = (0..graph.size()).map(|i| graph.a_edge(i)).collect();
            let b: Vec<usize> = (0..graph.size()).map(|i| graph.b_edge(i)).collect();
            let mut doc = BTreeMap::new();
            doc.insert("nodes", serde_json::to_value(nodes).expect("serializable"));
            doc.insert("a_edges", serde_json::to_value(a).expect("serializable"));
            doc.insert("b_edges", serde_json::to_value(b).expect("serializable"));
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
        Format::Csv => {
            let mut lines = vec!["from,to,kind".to_string()];
            for i in 0..graph.size() {
                lines.push(format!("{i},{},a", graph.a_edge(i)));
                lines.push(format!("{i},{},b", graph.b_edge(i)));
            }
            lines.join("\n")
        }
    };
    emit(cli, &text)
}

// ---------------------------------------------------------------------------
// orbit

#[derive(Serialize)]
struct OrbitRow {
    step: usize,
    vector: RVector,
    digit: String,
}

#[derive(Serialize)]
struct OrbitReport<'a> {
    config: &'a RunConfig,
    algo: String,
    rows: Vec<OrbitRow>,
    terminated: bool,
    end_step: usize,
    reason: String,
}

/// One orbit step: the next vector plus a digit label, or a termination
/// reason.
enum StepOutcome {
    Next(RVector, String),
    Stop(String),
}

fn expected_stop(err: &Error) -> Option<String> {
    match err {
        Error::BoundaryTie
        | Error::BreakpointHit { .. }
        | Error::IterationCap { .. }
        | Error::OutOfDomain(_)
        | Error::Degenerate(_)
        | Error::EmptyExpansion => Some(err.to_string()),
        _ => None,
    }
}

fn vector_step(algo: Algo, v: &RVector) -> Result<StepOutcome> {
    let outcome = match algo {
        Algo::Euclid => e_step(v).map(|(next, s)| StepOutcome::Next(next, format!("{s:?}"))),
        Algo::EuclidSigma => e_sigma_step(v).map(|next| StepOutcome::Next(next, String::new())),
        Algo::EuclidPi => e_pi_step(v).map(|next| StepOutcome::Next(next, String::new())),
        Algo::Poincare => mcf::poincare(v).map(|next| StepOutcome::Next(next, String::new())),
        Algo::DanielsParry => {
            mcf::daniels_parry(v).map(|next| StepOutcome::Next(next, String::new()))
        }
        Algo::Fs => mcf::fully_subtractive(v).map(|next| StepOutcome::Next(next, String::new())),
        Algo::FsNormalized => {
            mcf::fs_normalized(v).map(|next| StepOutcome::Next(next, String::new()))
        }
        Algo::Brun => mcf::brun_step(v).map(|next| StepOutcome::Next(next, String::new())),
        Algo::Selmer => mcf::selmer_step(v).map(|next| StepOutcome::Next(next, String::new())),
        Algo::JacobiPerron => mcf::jacobi_perron(v).map(|step| {
            let digits = step
                .digits
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(";");
            StepOutcome::Next(step.image, digits)
        }),
        Algo::Rauzy | Algo::RauzyNormalized => unreachable!("handled by orbit_rauzy"),
    };
    match outcome {
        Ok(o) => Ok(o),
        Err(e) => match expected_stop(&e) {
            Some(reason) => Ok(StepOutcome::Stop(reason)),
            None => Err(e),
        },
    }
}

fn orbit_vector(cli: &Cli, algo: Algo, start: RVector) -> (Vec<OrbitRow>, bool, String) {
    let mut rows = vec![OrbitRow {
        step: 0,
        vector: start.clone(),
        digit: String::new(),
    }];
    let mut current = start;
    let mut terminated = false;
    let mut reason = String::new();
    for step_index in 1..=cli.depth {
        match vector_step(algo, &current) {
            Ok(StepOutcome::Next(next, digit)) => {
                if next == current {
                    terminated = true;
                    reason = if current.iter().any(|c| c == &rauzylab::numerics::rat(0, 1)) {
                        "zero coordinate reached".to_string()
                    } else {
                        "fixed point".to_string()
                    };
                    break;
                }
                rows.push(OrbitRow {
                    step: step_index,
                    vector: next.clone(),
                    digit,
                });
                current = next;
            }
            Ok(StepOutcome::Stop(r)) => {
                terminated = true;
                reason = r;
                break;
            }
            Err(e) => {
                terminated = true;
                reason = e.to_string();
                break;
            }
        }
    }
    (rows, terminated, reason)
}

fn orbit_rauzy(
    cli: &Cli,
    normalized: bool,
    start: RVector,
    perm: &Perm,
) -> Result<(Vec<OrbitRow>, bool, String)> {
    let mut state = RauzyState::new(start, perm.clone())?;
    let mut rows = vec![OrbitRow {
        step: 0,
        vector: state.lambda.clone(),
        digit: row_label(&state.perm),
    }];
    let mut terminated = false;
    let mut reason = String::new();
    for step_index in 1..=cli.depth {
        let outcome = if normalized {
            normalized_step(&state)
        } else {
            step(&state)
        };
        match outcome {
            Ok((next, mv, _)) => {
                let digit = match mv {
                    Move::A => "a",
                    Move::B => "b",
                };
                rows.push(OrbitRow {
                    step: step_index,
                    vector: next.lambda.clone(),
                    digit: format!("{digit} {}", row_label(&next.perm)),
                });
                state = next;
            }
            Err(e) => match expected_stop(&e) {
                Some(r) => {
                    terminated = true;
                    reason = r;
                    break;
                }
                None => return Err(e),
            },
        }
    }
    Ok((rows, terminated, reason))
}

fn cmd_orbit(
    cli: &Cli,
    cfg: &RunConfig,
    algo: Algo,
    start: &str,
    perm: Option<&str>,
) -> Result<ExitCode> {
    let start = parse_vector(start)?;
    let (rows, terminated, reason) = match algo {
        Algo::Rauzy | Algo::RauzyNormalized => {
            let perm = match perm {
                Some(text) => parse_perm(text)?,
                None => {
                    return Err(Error::OutOfDomain(
                        "induction orbits need --perm".into(),
                    ))
                }
            };
            orbit_rauzy(cli, algo == Algo::RauzyNormalized, start, &perm)?
        }
        _ => orbit_vector(cli, algo, start),
    };
    let end_step = rows.last().map(|r| r.step).unwrap_or(0);
    let algo_name = algo
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let text = match cli.format {
        Format::Json => {
            let report = OrbitReport {
                config: cfg,
                algo: algo_name,
                rows,
                terminated,
                end_step,
                reason,
            };
            serde_json::to_string_pretty(&report).expect("serializable")
        }
        Format::Csv => {
            let mut lines = vec!["step,vector,digit".to_string()];
            for row in &rows {
                lines.push(format!(
                    "{},{},{}",
                    row.step,
                    vector_label(&row.vector),
                    row.digit
                ));
            }
            lines.join("\n")
        }
        Format::Dot => return Err(unsupported_format("orbit", cli.format)),
    };
    emit(cli, &text)
}

// ---------------------------------------------------------------------------
// expand

#[derive(Serialize)]
struct ExpandReport<'a> {
    config: &'a RunConfig,
    start: RVector,
    letters: String,
    steps: usize,
    cf_digits: Vec<u64>,
    terminated: bool,
    final_vector: RVector,
}

fn cmd_expand(cli: &Cli, cfg: &RunConfig, start: &str) -> Result<ExitCode> {
    let v = parse_vector(start)?;
    if v.len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expand works on the plane, got {} coordinates",
            v.len()
        )));
    }
    // Expansions of rationals always terminate; the cap is a safety net.
    let e = expansion(&v, 10_000_000)?;
    if !e.terminated {
        return Err(Error::IterationCap { cap: 10_000_000 });
    }
    let digits = cf_digits(&e)?;
    let text = match cli.format {
        Format::Json => {
            let report = ExpandReport {
                config: cfg,
                start: v,
                letters: ConePath::Euclid(e.steps.clone()).to_compact(),
                steps: e.steps.len(),
                cf_digits: digits,
                terminated: e.terminated,
                final_vector: e.final_vector.clone(),
            };
            serde_json::to_string_pretty(&report).expect("serializable")
        }
        Format::Csv => {
            let mut lines = vec!["step,letter".to_string()];
            for (i, s) in e.steps.iter().enumerate() {
                lines.push(format!("{},{s:?}", i + 1));
            }
            lines.join("\n")
        }
        Format::Dot => return Err(unsupported_format("expand", cli.format)),
    };
    emit(cli, &text)
}

// ---------------------------------------------------------------------------
// cone-partition

#[derive(Serialize)]
struct PartitionCone {
    path: String,
    depth: usize,
    distortion: String,
    measure: String,
    columns: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct PartitionReport<'a> {
    config: &'a RunConfig,
    base: Option<Vec<usize>>,
    kept: usize,
    scanned: usize,
    covered: String,
    uncovered: String,
    cones: Vec<PartitionCone>,
}

fn partition_rows(partition: &Partition) -> Vec<PartitionCone> {
    partition
        .kept
        .iter()
        .map(|cone| {
            let g = cone.generator();
            let columns = (0..cone.dim())
                .map(|j| g.column(j).iter().map(ToString::to_string).collect())
                .collect();
            PartitionCone {
                path: cone.path().to_compact(),
                depth: cone.path().len(),
                distortion: fmt_rat(&cone.distortion_l1()),
                measure: fmt_rat(&cone.unit_fraction()),
                columns,
            }
        })
        .collect()
}

fn cmd_cone_partition(cli: &Cli, cfg: &RunConfig, perm: Option<&str>) -> Result<ExitCode> {
    let (base, partition) = match perm {
        None => (None, euclid_distorted_partition(cli.threshold, cli.depth)),
        Some(text) => {
            let p = parse_perm(text)?;
            let partition = rauzy_distorted_partition(&p, cli.threshold, cli.depth)?;
            (Some(p.bottom_row()), partition)
        }
    };
    let text = match cli.format {
        Format::Json => {
            let report = PartitionReport {
                config: cfg,
                base,
                kept: partition.kept.len(),
                scanned: partition.scanned,
                covered: fmt_rat(&partition.covered()),
                uncovered: fmt_rat(&partition.uncovered),
                cones: partition_rows(&partition),
            };
            serde_json::to_string_pretty(&report).expect("serializable")
        }
        Format::Csv => {
            let mut covered = rauzylab::numerics::Rat::from_integer(0.into());
            let mut lines = vec!["depth,distortion,measure,covered_fraction".to_string()];
            for cone in &partition.kept {
                let measure = cone.unit_fraction();
                covered = &covered + &measure;
                lines.push(format!(
                    "{},{},{},{}",
                    cone.path().len(),
                    fmt_rat(&cone.distortion_l1()),
                    fmt_rat(&measure),
                    fmt_rat(&covered)
                ));
            }
            lines.join("\n")
        }
        Format::Dot => return Err(unsupported_format("cone-partition", cli.format)),
    };
    emit(cli, &text)
}

// ---------------------------------------------------------------------------
// verify / mcf

fn cmd_verify(cli: &Cli, cfg: &RunConfig, suite: &str) -> Result<ExitCode> {
    if !SUITES.contains(&suite) {
        return Err(Error::OutOfDomain(format!(
            "unknown suite {suite:?}; expected one of {SUITES:?}"
        )));
    }
    let report = run_suite(suite, cfg)?;
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
        Format::Csv => {
            let mut lines = vec!["name,kind,pass,values".to_string()];
            for a in &report.assertions {
                let values = a
                    .values
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                let kind = serde_json::to_value(a.kind).expect("serializable");
                lines.push(format!(
                    "{},{},{},{}",
                    a.name,
                    kind.as_str().expect("string kind"),
                    a.pass,
                    values
                ));
            }
            lines.join("\n")
        }
        Format::Dot => return Err(unsupported_format("verify", cli.format)),
    };
    emit(cli, &text)?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct MarkovDoc<'a> {
    config: &'a RunConfig,
    report: &'a mcf::MarkovReport,
}

fn cmd_mcf(cli: &Cli, cfg: &RunConfig, check: MarkovTarget) -> Result<ExitCode> {
    let n = cli.n.clamp(2, 6);
    let i = match check {
        MarkovTarget::Brun => n - 1,
        MarkovTarget::Selmer => 1,
    };
    let report = mcf::markov_check(i, n, cli.samples, cli.seed)?;
    let pass = report.dets_unimodular
        && report.identities_exact
        && report.same_pattern_all_covered
        && (check == MarkovTarget::Selmer || report.full_classes);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&MarkovDoc {
            config: cfg,
            report: &report,
        })
        .expect("serializable"),
        Format::Csv => {
            let mut lines =
                vec!["pattern,det,targets,covered,same_pattern_covered,identity_failures"
                    .to_string()];
            for b in &report.branches {
                lines.push(format!(
                    "{},{},{},{},{},{}",
                    b.pattern.replace(',', ";"),
                    b.matrix_det,
                    b.targets,
                    b.covered,
                    b.same_pattern_covered,
                    b.identity_failures
                ));
            }
            lines.join("\n")
        }
        Format::Dot => return Err(unsupported_format("mcf", cli.format)),
    };
    emit(cli, &text)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
