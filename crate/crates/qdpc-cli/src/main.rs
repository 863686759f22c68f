//! Batch front end for the path-partition library: decide pair-sets, verify
//! connectors, emit spanning paths, canonicalize, classify, and run censuses.
//!
//! Exit codes: 0 success / Connectable / valid; 1 Unconnectable / invalid;
//! 2 usage error (bad literals, bad flags); 3 unsupported input or exhausted
//! search budget.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qdpc::constructor::{solve, Solution};
use qdpc::enumeration::{census, CensusEntry, EdgeCond, Filter, VerdictSource};
use qdpc::error::Error;
use qdpc::oracle::{oracle_solve, verify_connector, Certificate, Connector, Verdict, ORACLE_DIM_CAP};
use qdpc::pair::{encompassment, Pair, PairSet};
use qdpc::symmetry::{canonical_form, group_order, orbit_size, stabilizer_order};
use qdpc::vertex::{all_vertices, Vertex};

const EXIT_OK: u8 = 0;
const EXIT_UNCONNECTABLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

/// Decide, construct, verify, and count endpoint-pairing path partitions of
/// the n-dimensional cube graph.
#[derive(Parser)]
#[command(name = "qdpc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a pair-set admits a connector, and construct one.
    ///
    /// A pair-set literal is a comma-separated list of pairs, each pair two
    /// dash-separated bit strings of equal length, e.g. "000-001,010-111".
    Solve {
        /// Pair-set literal.
        pairs: String,
        /// Decision engine: certificates and the recursive construction,
        /// exhaustive search, or the construction with search fallback.
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Emit a machine-readable document instead of text.
        #[arg(long)]
        json: bool,
        /// Emit the connector as a DOT graph (connectable verdicts only).
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Check a claimed connector against a pair-set.
    ///
    /// A connector literal is a semicolon-separated list of paths, each a
    /// comma-separated vertex sequence, e.g. "00,01;10,11".
    Verify {
        /// Pair-set literal.
        pairs: String,
        /// Connector literal.
        connector: String,
        /// Emit a machine-readable document instead of text.
        #[arg(long)]
        json: bool,
        /// Emit the verified connector as a DOT graph (valid verdicts only).
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Emit a spanning path of the cube between two given vertices.
    ///
    /// Such a path exists exactly when the endpoints are an odd distance
    /// apart; even-distance requests are refused with exit code 1.
    Gray {
        /// Start vertex literal, e.g. "0000".
        #[arg(long)]
        from: String,
        /// End vertex literal; must have the same length as --from.
        #[arg(long)]
        to: String,
        /// Emit a machine-readable document instead of text.
        #[arg(long)]
        json: bool,
        /// Emit the path as a DOT graph.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Count isomorphism classes of pair-sets and their verdicts.
    ///
    /// Exhaustive by default; --sample N (with a mandatory --seed) switches
    /// to decided random samples, the only mode offered beyond the
    /// enumeration caps.
    Census {
        /// Cube dimension.
        #[arg(long)]
        n: usize,
        /// Exact pair-set size; shorthand for equal --min-size and --max-size.
        #[arg(long, conflicts_with_all = ["min_size", "max_size"])]
        size: Option<usize>,
        /// Smallest pair-set size.
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        /// Largest pair-set size.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Keep only pair-sets whose pairs are all odd.
        #[arg(long)]
        odd: bool,
        /// Keep only pair-sets with zero signed endpoint sum.
        #[arg(long)]
        balanced: bool,
        /// Keep only pair-sets with no degenerate pairs.
        #[arg(long)]
        pure: bool,
        /// Keep only diminishable pair-sets.
        #[arg(long)]
        diminishable: bool,
        /// Constrain the number of edge-pairs: "exactly-<k>" or "at-least-<k>".
        #[arg(long, value_parser = parse_edge_cond)]
        edge_pairs: Option<EdgeCond>,
        /// Keep only pair-sets with the given enclosure status.
        #[arg(long, value_parser = ["empty"])]
        enc: Option<String>,
        /// Which entries to list: all (summary only), connectable, or
        /// unconnectable.
        #[arg(long, value_enum, default_value_t = VerdictArg::All)]
        verdict: VerdictArg,
        /// Verdict source: exhaustive search, the recursive construction, or
        /// both cross-checked against each other.
        #[arg(long, value_enum, default_value_t = SourceArg::Oracle)]
        source: SourceArg,
        /// Parallel verdict workers; the merged output does not depend on N.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Decide N random pair-sets instead of enumerating classes.
        #[arg(long, requires = "seed", conflicts_with = "source")]
        sample: Option<u64>,
        /// Seed for --sample; sampling without a seed is refused.
        #[arg(long, requires = "sample")]
        seed: Option<u64>,
        /// Emit a machine-readable document instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Report the structural flags of a pair-set.
    Classify {
        /// Pair-set literal.
        pairs: String,
        /// Emit a machine-readable document instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Report the canonical form of a pair-set under the cube's automorphisms.
    Canon {
        /// Pair-set literal.
        pairs: String,
        /// Emit a machine-readable document instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Auto,
    Constructor,
    Oracle,
}

impl EngineArg {
    fn name(self) -> &'static str {
        match self {
            EngineArg::Auto => "auto",
            EngineArg::Constructor => "constructor",
            EngineArg::Oracle => "oracle",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Oracle,
    Constructor,
    Both,
}

impl From<SourceArg> for VerdictSource {
    fn from(s: SourceArg) -> VerdictSource {
        match s {
            SourceArg::Oracle => VerdictSource::Oracle,
            SourceArg::Constructor => VerdictSource::Constructor,
            SourceArg::Both => VerdictSource::Both,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VerdictArg {
    All,
    Connectable,
    Unconnectable,
}

fn parse_edge_cond(s: &str) -> Result<EdgeCond, String> {
    if let Some(k) = s.strip_prefix("exactly-") {
        return k
            .parse()
            .map(EdgeCond::Exactly)
            .map_err(|_| format!("bad count in {s:?}"));
    }
    if let Some(k) = s.strip_prefix("at-least-") {
        return k
            .parse()
            .map(EdgeCond::AtLeast)
            .map_err(|_| format!("bad count in {s:?}"));
    }
    Err(format!("expected exactly-<k> or at-least-<k>, got {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

/// Caps and unsupported inputs exit 3; everything else a run rejects is a
/// usage error.
fn exit_for(err: &Error) -> u8 {
    match err {
        Error::OracleDimensionCap { .. }
        | Error::CanonicalDimensionCap { .. }
        | Error::EnumerationDimensionCap { .. }
        | Error::ConstructorUnsupported { .. }
        | Error::BudgetExhausted { .. } => EXIT_UNSUPPORTED,
        _ => EXIT_USAGE,
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Solve {
            pairs,
            engine,
            json,
            dot,
        } => run_solve(&pairs, engine, json, dot),
        Command::Verify {
            pairs,
            connector,
            json,
            dot,
        } => run_verify(&pairs, &connector, json, dot),
        Command::Gray {
            from,
            to,
            json,
            dot,
        } => run_gray(&from, &to, json, dot),
        Command::Census {
            n,
            size,
            min_size,
            max_size,
            odd,
            balanced,
            pure,
            diminishable,
            edge_pairs,
            enc,
            verdict,
            source,
            jobs,
            sample,
            seed,
            json,
        } => {
            let (min, max) = match size {
                Some(k) => (k, k),
                None => (min_size, max_size),
            };
            let mut filter = Filter::sized(min, max);
            if odd {
                filter = filter.odd(true);
            }
            if balanced {
                filter = filter.balanced(true);
            }
            if pure {
                filter = filter.pure(true);
            }
            if diminishable {
                filter = filter.diminishable(true);
            }
            if let Some(cond) = edge_pairs {
                filter = filter.edge_pairs(cond);
            }
            if enc.is_some() {
                filter = filter.enc_empty(true);
            }
            match sample {
                Some(samples) => {
                    let seed = seed.expect("clap enforces --seed with --sample");
                    run_census_sample(n, &filter, samples, seed, json)
                }
                None => run_census(n, &filter, verdict, source.into(), jobs, json),
            }
        }
        Command::Classify { pairs, json } => run_classify(&pairs, json),
        Command::Canon { pairs, json } => run_canon(&pairs, json),
    }
}

// ---------------------------------------------------------------- solve

enum Decision {
    Connectable { connector: Connector, via: String },
    Unconnectable { why: String },
    Unsupported { why: String },
}

fn decision_from_solution(solution: Solution) -> Decision {
    match solution {
        Solution::Connectable { connector, .. } => Decision::Connectable {
            connector,
            via: "recursive construction".into(),
        },
        Solution::Unconnectable(refutation) => Decision::Unconnectable {
            why: refutation.to_string(),
        },
        Solution::Unsupported { reason } => Decision::Unsupported { why: reason },
    }
}

fn decision_from_verdict(verdict: Verdict, via: &str) -> Decision {
    match verdict {
        Verdict::Connectable(connector) => Decision::Connectable {
            connector,
            via: via.into(),
        },
        Verdict::Unconnectable(certificate) => Decision::Unconnectable {
            why: match certificate {
                Certificate::Parity { chi } => {
                    format!("endpoint signs sum to {chi}, not zero")
                }
                Certificate::Encompassment { vertex } => {
                    format!("uncovered vertex {vertex} has every neighbor inside the support")
                }
                Certificate::ExhaustedSearch => "exhaustive search found no connector".into(),
            },
        },
    }
}

fn decide(a: &PairSet, engine: EngineArg) -> Result<Decision, Error> {
    match engine {
        EngineArg::Constructor => Ok(decision_from_solution(solve(a)?)),
        EngineArg::Oracle => Ok(decision_from_verdict(
            oracle_solve(a)?,
            "exhaustive search",
        )),
        EngineArg::Auto => match solve(a)? {
            Solution::Unsupported { reason } => {
                if a.dim() <= ORACLE_DIM_CAP {
                    Ok(decision_from_verdict(
                        oracle_solve(a)?,
                        "exhaustive search, construction fallback",
                    ))
                } else {
                    Ok(Decision::Unsupported { why: reason })
                }
            }
            solution => Ok(decision_from_solution(solution)),
        },
    }
}

fn run_solve(pairs: &str, engine: EngineArg, json: bool, dot: bool) -> Result<u8, Error> {
    let a = PairSet::parse(pairs)?;
    let decision = decide(&a, engine)?;
    let (verdict, detail, connector) = match &decision {
        Decision::Connectable { connector, via } => ("connectable", via.clone(), Some(connector)),
        Decision::Unconnectable { why } => ("unconnectable", why.clone(), None),
        Decision::Unsupported { why } => ("unsupported", why.clone(), None),
    };
    if json {
        let doc = instance_json(
            &a,
            connector,
            json!({
                "command": "solve",
                "engine": engine.name(),
                "verdict": verdict,
                "detail": detail,
            }),
        );
        println!("{}", to_pretty(&doc));
    } else if dot && connector.is_some() {
        print!("{}", dot_graph(a.dim(), connector.expect("checked")));
    } else {
        println!("pair-set {a} (dimension {}, {} pairs)", a.dim(), a.len());
        println!("verdict: {verdict} — {detail}");
        if let Some(c) = connector {
            println!("connector: {c}");
        }
    }
    Ok(match decision {
        Decision::Connectable { .. } => EXIT_OK,
        Decision::Unconnectable { .. } => EXIT_UNCONNECTABLE,
        Decision::Unsupported { .. } => EXIT_UNSUPPORTED,
    })
}

// ---------------------------------------------------------------- verify

fn run_verify(pairs: &str, connector: &str, json: bool, dot: bool) -> Result<u8, Error> {
    let a = PairSet::parse(pairs)?;
    let c = Connector::parse(connector)?;
    let outcome = verify_connector(&a, &c);
    let (verdict, detail) = match &outcome {
        Ok(()) => (
            "valid",
            format!("{} paths partition the {}-cube", c.len(), a.dim()),
        ),
        Err(violation) => ("invalid", violation.to_string()),
    };
    if json {
        let doc = instance_json(
            &a,
            Some(&c),
            json!({
                "command": "verify",
                "verdict": verdict,
                "detail": detail,
            }),
        );
        println!("{}", to_pretty(&doc));
    } else if dot && outcome.is_ok() {
        print!("{}", dot_graph(a.dim(), &c));
    } else {
        println!("connector {verdict}: {detail}");
    }
    Ok(if outcome.is_ok() {
        EXIT_OK
    } else {
        EXIT_UNCONNECTABLE
    })
}

// ---------------------------------------------------------------- gray

fn run_gray(from: &str, to: &str, json: bool, dot: bool) -> Result<u8, Error> {
    let from = Vertex::parse(from)?;
    let to = Vertex::parse(to)?;
    let path = match qdpc::constructor::hamiltonian_path(from, to) {
        Ok(path) => path,
        Err(Error::EvenDistanceEndpoints) => {
            println!("no spanning path: {from} and {to} are an even distance apart");
            return Ok(EXIT_UNCONNECTABLE);
        }
        Err(err) => return Err(err),
    };
    let transitions: Vec<usize> = path
        .windows(2)
        .map(|w| {
            (0..from.dim())
                .find(|&i| w[0].bit(i) != w[1].bit(i))
                .expect("consecutive path vertices differ")
        })
        .collect();
    let a = PairSet::new(from.dim(), vec![Pair::new(from, to)?])?;
    let connector = Connector::from_paths(from.dim(), vec![path.clone()])?;
    if json {
        let doc = instance_json(
            &a,
            Some(&connector),
            json!({
                "command": "gray",
                "transitions": transitions,
            }),
        );
        println!("{}", to_pretty(&doc));
    } else if dot {
        print!("{}", dot_graph(from.dim(), &connector));
    } else {
        let literal: Vec<String> = path.iter().map(ToString::to_string).collect();
        println!("path: {}", literal.join(","));
        let steps: Vec<String> = transitions.iter().map(ToString::to_string).collect();
        println!("transitions: {}", steps.join(" "));
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- census

fn run_census(
    n: usize,
    filter: &Filter,
    verdict: VerdictArg,
    source: VerdictSource,
    jobs: usize,
    json: bool,
) -> Result<u8, Error> {
    let result = census(n, filter, source, jobs.max(1))?;
    let listed: Vec<&CensusEntry> = result
        .entries
        .iter()
        .filter(|e| match verdict {
            VerdictArg::All => true,
            VerdictArg::Connectable => e.connectable,
            VerdictArg::Unconnectable => !e.connectable,
        })
        .collect();
    if json {
        let entries: Vec<Value> = listed
            .iter()
            .map(|e| {
                json!({
                    "pairs": e.set.to_string(),
                    "orbit": e.orbit,
                    "connectable": e.connectable,
                })
            })
            .collect();
        let doc = json!({
            "schema_version": 1,
            "command": "census",
            "mode": "exhaustive",
            "dimension": n,
            "filter": result.filter,
            "source": result.source.to_string(),
            "classes": result.class_count(),
            "labelled_sets": result.raw_count(),
            "unconnectable_classes": result.unconnectable_class_count(),
            "unconnectable_labelled_sets": result.unconnectable_raw_count(),
            "entries": entries,
        });
        println!("{}", to_pretty(&doc));
    } else {
        println!("census: dimension {n}, {}", result.filter);
        println!("verdicts: {}", result.source);
        println!(
            "classes: {} ({} labelled sets)",
            result.class_count(),
            result.raw_count()
        );
        println!(
            "unconnectable: {} classes ({} labelled sets)",
            result.unconnectable_class_count(),
            result.unconnectable_raw_count()
        );
        if verdict != VerdictArg::All {
            for e in &listed {
                println!("{}  orbit {}", e.set, e.orbit);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Uniform-ish random pair-set matching the filter: sizes drawn uniformly,
/// support drawn by partial shuffle, non-matching draws rejected. Only pure
/// (degenerate-free) sets are produced.
fn sample_set(
    rng: &mut ChaCha8Rng,
    vertices: &[Vertex],
    n: usize,
    filter: &Filter,
) -> Result<PairSet, Error> {
    const ATTEMPT_CAP: u64 = 100_000;
    let (min, max) = filter.size_range();
    let max = max.min(vertices.len() / 2);
    if min > max {
        return Err(Error::BadPairSetLiteral {
            reason: format!("no pair-set of {min} pairs fits in dimension {n}"),
        });
    }
    for attempt in 1..=ATTEMPT_CAP {
        let size = rng.gen_range(min..=max);
        let mut pool = vertices.to_vec();
        let (chosen, _) = pool.partial_shuffle(rng, 2 * size);
        let pairs: Vec<Pair> = chosen
            .chunks_exact(2)
            .map(|c| Pair::new(c[0], c[1]))
            .collect::<Result<_, _>>()?;
        let set = PairSet::new(n, pairs)?;
        if filter.matches(&set) {
            return Ok(set);
        }
        if attempt == ATTEMPT_CAP {
            break;
        }
    }
    Err(Error::BudgetExhausted { nodes: ATTEMPT_CAP })
}

fn run_census_sample(
    n: usize,
    filter: &Filter,
    samples: u64,
    seed: u64,
    json: bool,
) -> Result<u8, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = all_vertices(n)?;
    let mut connectable = 0u64;
    let mut unconnectable = 0u64;
    let mut first_unconnectable: Option<String> = None;
    for _ in 0..samples {
        let set = sample_set(&mut rng, &vertices, n, filter)?;
        if oracle_solve(&set)?.is_connectable() {
            connectable += 1;
        } else {
            unconnectable += 1;
            first_unconnectable.get_or_insert_with(|| set.to_string());
        }
    }
    if json {
        let doc = json!({
            "schema_version": 1,
            "command": "census",
            "mode": "sample",
            "dimension": n,
            "filter": filter.to_string(),
            "samples": samples,
            "seed": seed,
            "connectable": connectable,
            "unconnectable": unconnectable,
            "first_unconnectable": first_unconnectable,
        });
        println!("{}", to_pretty(&doc));
    } else {
        println!(
            "census (sampled): dimension {n}, {filter} — {samples} samples, seed {seed}"
        );
        println!("connectable: {connectable}, unconnectable: {unconnectable}");
        if let Some(lit) = &first_unconnectable {
            println!("first unconnectable: {lit}");
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- classify

fn run_classify(pairs: &str, json: bool) -> Result<u8, Error> {
    let a = PairSet::parse(pairs)?;
    let flags = a.classify();
    let enclosed: Vec<String> = encompassment(&a).enc.iter().map(ToString::to_string).collect();
    if json {
        let doc = instance_json(
            &a,
            None,
            json!({
                "command": "classify",
                "odd": flags.odd,
                "balanced": flags.balanced,
                "pure": flags.pure,
                "edge_pairs": flags.edge_pair_count,
                "degenerate_pairs": flags.degenerate_count,
                "chi": flags.chi,
                "diminishable": flags.diminishable,
                "matching_cover": a.is_matching_cover(),
                "enclosed": enclosed,
            }),
        );
        println!("{}", to_pretty(&doc));
    } else {
        println!("pair-set {a} (dimension {}, {} pairs)", a.dim(), a.len());
        println!(
            "odd: {}, balanced: {}, pure: {}",
            yn(flags.odd),
            yn(flags.balanced),
            yn(flags.pure)
        );
        println!(
            "edge-pairs: {}, degenerate: {}, signed endpoint sum: {}",
            flags.edge_pair_count, flags.degenerate_count, flags.chi
        );
        println!(
            "diminishable: {}, matching cover: {}",
            yn(flags.diminishable),
            yn(a.is_matching_cover())
        );
        if enclosed.is_empty() {
            println!("enclosed vertices: none");
        } else {
            println!("enclosed vertices: {}", enclosed.join(", "));
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- canon

fn run_canon(pairs: &str, json: bool) -> Result<u8, Error> {
    let a = PairSet::parse(pairs)?;
    let canon = canonical_form(&a)?;
    let orbit = orbit_size(&a)?;
    let stabilizer = stabilizer_order(&a)?;
    if json {
        let doc = instance_json(
            &a,
            None,
            json!({
                "command": "canon",
                "canonical": canon.set.to_string(),
                "orbit": orbit,
                "stabilizer": stabilizer,
                "group_order": group_order(a.dim()),
                "witness": {
                    "permutation": canon.witness.permutation(),
                    "translation": canon.witness.translation().to_string(),
                },
            }),
        );
        println!("{}", to_pretty(&doc));
    } else {
        println!("pair-set {a} (dimension {}, {} pairs)", a.dim(), a.len());
        println!("canonical form: {}", canon.set);
        println!(
            "orbit: {orbit}, stabilizer: {stabilizer} (group order {})",
            group_order(a.dim())
        );
        println!("witness: {}", canon.witness);
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- output

/// The shared machine-readable instance document.
fn instance_json(a: &PairSet, connector: Option<&Connector>, metadata: Value) -> Value {
    let connector: Option<Vec<String>> = connector.map(|c| {
        c.paths()
            .values()
            .map(|path| {
                path.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    });
    json!({
        "schema_version": 1,
        "dimension": a.dim(),
        "pairs": a.to_string(),
        "connector": connector,
        "metadata": metadata,
    })
}

fn to_pretty(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("serializing never fails")
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The whole cube with the connector's paths as colored edges; endpoints get
/// matching borders. Non-path cube edges stay light gray for context.
fn dot_graph(n: usize, connector: &Connector) -> String {
    const PALETTE: [&str; 8] = [
        "crimson",
        "royalblue",
        "forestgreen",
        "darkorange",
        "purple",
        "teal",
        "goldenrod",
        "deeppink",
    ];
    let mut colored: std::collections::BTreeMap<(Vertex, Vertex), &str> = Default::default();
    let mut out = String::new();
    out.push_str("graph cube {\n");
    out.push_str("  node [shape=box fontname=\"monospace\"];\n");
    for (idx, path) in connector.paths().values().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        for w in path.windows(2) {
            let key = if w[0] < w[1] {
                (w[0], w[1])
            } else {
                (w[1], w[0])
            };
            colored.insert(key, color);
        }
        let first = path.first().expect("paths are nonempty");
        let last = path.last().expect("paths are nonempty");
        out.push_str(&format!("  \"{first}\" [color={color} penwidth=2];\n"));
        if first != last {
            out.push_str(&format!("  \"{last}\" [color={color} penwidth=2];\n"));
        }
    }
    for v in all_vertices(n).expect("dimension already validated") {
        for u in v.neighbors() {
            if v < u {
                match colored.get(&(v, u)) {
                    Some(color) => out.push_str(&format!(
                        "  \"{v}\" -- \"{u}\" [color={color} penwidth=2.5];\n"
                    )),
                    None => out.push_str(&format!("  \"{v}\" -- \"{u}\" [color=gray80];\n")),
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
