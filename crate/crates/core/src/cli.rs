//! Command-line front end. `run` never prints; it returns the exit code and
//! both output streams so tests can drive it directly.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::Error;
use crate::graph::{Graph, Morphism};
use crate::groupoid::{
    fundamental_group_presentation, van_kampen, verify_product_pullback, walk_group_presentation, DiamondRule,
};
use crate::hom::{compare_hom_groups, exponential_graph, hom_complex_2skeleton, looped_presentation, DEFAULT_HOM_CAP};
use crate::homotopy::{
    default_max_len, morphisms_homotopic, stiff_reduce, stiff_reduce_random, walks_homotopic, DEFAULT_MAX_STATES,
    DEFAULT_MAX_STEPS,
};
use crate::io::{parse_graph, parse_map_file, serialize_graph};
use crate::walk::Walk;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CAP: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "xhomotopy", version, about = "x-homotopy of finite graphs: walks, fundamental groupoids, Hom complexes")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size guard for enumerations.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Group,
}

#[derive(Debug, Subcommand)]
enum Group {
    /// Graph files.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Walk normal forms.
    #[command(subcommand)]
    Walk(WalkCmd),
    /// Homotopy of walks and morphisms.
    #[command(subcommand)]
    Homotopy(HomotopyCmd),
    /// Fold reduction.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Fundamental groups and groupoids.
    #[command(subcommand)]
    Pi1(Pi1Cmd),
    /// Exponential graphs and Hom complexes.
    #[command(subcommand)]
    Hom(HomCmd),
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    /// Check a graph file; exit 0 if valid, 1 if not.
    Validate { file: String },
}

#[derive(Debug, Subcommand)]
enum WalkCmd {
    /// Prune a walk to its normal form.
    Normalize {
        graph: String,
        walk: String,
        /// Also remove repeated vertices (looped prunes).
        #[arg(long)]
        looped: bool,
    },
}

#[derive(Debug, Args)]
struct WalkBounds {
    /// Longest intermediate walk (default: longer input + 6).
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
}

#[derive(Debug, Subcommand)]
enum HomotopyCmd {
    /// Decide homotopy of two walks rel endpoints; exit 0 Equal, 1 Distinct, 2 Unknown.
    Walks {
        graph: String,
        w1: String,
        w2: String,
        #[arg(long)]
        looped: bool,
        #[command(flatten)]
        bounds: WalkBounds,
    },
    /// Decide homotopy of two morphisms given as map files; exit 0 Equal, 1 Distinct, 2 Unknown.
    Morphisms {
        source: String,
        target: String,
        map1: String,
        map2: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ReduceCmd {
    /// Fold to a stiff graph and print the fold sequence.
    Stiff {
        graph: String,
        /// Pick folds at random (see --seed) instead of least-first.
        #[arg(long)]
        random: bool,
    },
}

#[derive(Debug, Subcommand)]
enum Pi1Cmd {
    /// Presentation of the fundamental group (or walk group) at a vertex.
    Present {
        graph: String,
        /// Basepoint (default: first vertex).
        #[arg(long)]
        base: Option<String>,
        /// Free group on the cycle space, without diamond relators.
        #[arg(long, conflicts_with = "looped")]
        walkgroup: bool,
        /// Looped fundamental group (loops killed, looped subgraph only).
        #[arg(long)]
        looped: bool,
    },
    /// Amalgamated presentation from a two-part cover.
    Vankampen {
        graph: String,
        #[arg(long, value_delimiter = ',', required = true)]
        part1: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        part2: Vec<String>,
        /// Basepoint (default: first vertex in both parts).
        #[arg(long)]
        base: Option<String>,
        /// Only require induced 4-cycles to lie in a part.
        #[arg(long)]
        induced_cycles: bool,
    },
    /// Bounded check of the product groupoid against the factors; exit 0 pass, 1 fail.
    ProductCheck {
        g1: String,
        g2: String,
        #[arg(long)]
        max_len: usize,
    },
}

#[derive(Debug, Subcommand)]
enum HomCmd {
    /// Cells and boundary map of the 2-skeleton of Hom(G, H).
    Complex { g: String, h: String },
    /// The exponential graph H^G in graph file format.
    Exp { g: String, h: String },
    /// Compare looped fundamental groups of H^G with edge-path groups of Hom(G, H); exit 0 pass, 1 fail.
    Compare {
        g: String,
        h: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

/// Output collected by one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(i32, String), Failure>;

pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(Failure::Io(msg)) => Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Lib(e)) => Output {
            code: if e.is_cap() { EXIT_CAP } else { EXIT_USAGE },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {path}: {e}")))
}

fn load(path: &str) -> std::result::Result<Arc<Graph>, Failure> {
    let text = read(path)?;
    parse_graph(&text).map(Arc::new).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn emit(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Outcome {
    let json = cli.json;
    let cap = cli.cap.unwrap_or(DEFAULT_HOM_CAP);
    match &cli.command {
        Group::Graph(GraphCmd::Validate { file }) => {
            let text = read(file)?;
            Ok(match parse_graph(&text) {
                Ok(g) if json => (
                    0,
                    emit(json!({
                        "valid": true,
                        "vertices": g.order(),
                        "edges": g.edge_count(),
                        "looped": (0..g.order()).filter(|&v| g.is_looped(v)).count(),
                        "components": g.component_count(),
                    })),
                ),
                Ok(g) => (
                    0,
                    format!("valid: {} vertices, {} edges, {} components\n", g.order(), g.edge_count(), g.component_count()),
                ),
                Err(e) if json => (1, emit(json!({ "valid": false, "error": e.to_string() }))),
                Err(e) => (1, format!("invalid: {e}\n")),
            })
        }

        Group::Walk(WalkCmd::Normalize { graph, walk, looped }) => {
            let g = load(graph)?;
            let w = Walk::parse(g, walk)?;
            let n = w.prune_normalize(*looped)?;
            Ok((
                0,
                if json {
                    emit(json!({ "input": w.to_string(), "normal": n.to_string(), "length": n.len(), "parity": n.parity() }))
                } else {
                    format!("{n}\n")
                },
            ))
        }

        Group::Homotopy(HomotopyCmd::Walks { graph, w1, w2, looped, bounds }) => {
            let g = load(graph)?;
            let a = Walk::parse(g.clone(), w1)?;
            let b = Walk::parse(g.clone(), w2)?;
            let max_len = bounds.max_len.unwrap_or_else(|| default_max_len(&a, &b));
            let d = walks_homotopic(&a, &b, *looped, max_len, bounds.max_states)?;
            let out = if json { emit(d.to_json_walk(&g)) } else { d.render_walk(&g) };
            Ok((d.verdict.code(), out))
        }

        Group::Homotopy(HomotopyCmd::Morphisms { source, target, map1, map2, max_steps }) => {
            let (s, t) = (load(source)?, load(target)?);
            let f = Morphism::from_pairs(s.clone(), t.clone(), &parse_map_file(&read(map1)?)?)?;
            let g = Morphism::from_pairs(s.clone(), t.clone(), &parse_map_file(&read(map2)?)?)?;
            let d = morphisms_homotopic(&f, &g, *max_steps)?;
            let out = if json { emit(d.to_json_morphism(&s, &t)) } else { d.render_morphism(&s, &t) };
            Ok((d.verdict.code(), out))
        }

        Group::Reduce(ReduceCmd::Stiff { graph, random }) => {
            let g = load(graph)?;
            let r = if *random {
                stiff_reduce_random(&g, &mut ChaCha8Rng::seed_from_u64(cli.seed))
            } else {
                stiff_reduce(&g)
            };
            let folds: Vec<String> = r.folds.iter().map(|f| f.describe()).collect();
            if json {
                return Ok((
                    0,
                    emit(json!({
                        "folds": folds,
                        "stiff": serialize_graph(&r.stiff),
                        "retraction": r.retraction.pairs(),
                    })),
                ));
            }
            let mut out = format!("folds ({}):\n", folds.len());
            for f in &folds {
                out.push_str(&format!("  {f}\n"));
            }
            out.push_str("stiff graph:\n");
            out.push_str(&serialize_graph(&r.stiff));
            Ok((0, out))
        }

        Group::Pi1(Pi1Cmd::Present { graph, base, walkgroup, looped }) => {
            let g = load(graph)?;
            let base = match base {
                Some(b) => b.clone(),
                None if *looped => (0..g.order())
                    .find(|&v| g.is_looped(v))
                    .map(|v| g.name(v).to_string())
                    .ok_or_else(|| Error::Unsupported("no looped vertex".into()))?,
                None => g.names().first().map(|v| v.to_string()).ok_or_else(|| Error::Unsupported("empty graph".into()))?,
            };
            let p = if *walkgroup {
                walk_group_presentation(&g, &base)?
            } else if *looped {
                looped_presentation(&g, &base)?
            } else {
                fundamental_group_presentation(&g, &base)?
            };
            Ok((0, if json { emit(p.to_json()) } else { p.render() }))
        }

        Group::Pi1(Pi1Cmd::Vankampen { graph, part1, part2, base, induced_cycles }) => {
            let g = load(graph)?;
            let p1: Vec<&str> = part1.iter().map(String::as_str).collect();
            let p2: Vec<&str> = part2.iter().map(String::as_str).collect();
            let base = match base {
                Some(b) => b.clone(),
                None => g
                    .names()
                    .iter()
                    .map(|v| v.as_str())
                    .find(|v| p1.contains(v) && p2.contains(v))
                    .ok_or_else(|| Error::CoverViolation("the parts do not meet".into()))?
                    .to_string(),
            };
            let rule = if *induced_cycles { DiamondRule::InducedCycles } else { DiamondRule::ClosedWalks };
            let vk = van_kampen(&g, &p1, &p2, &base, rule)?;
            let direct = fundamental_group_presentation(&g, &base)?.abelian_invariants();
            if json {
                let mut v = vk.presentation.to_json();
                v["intersection_components"] = json!(vk.intersection_components);
                v["direct"] = json!(direct);
                return Ok((0, emit(v)));
            }
            let mut out = format!("intersection components: {}\n", vk.intersection_components);
            out.push_str(&vk.presentation.render());
            out.push_str(&format!("direct abelian invariants: {direct}\n"));
            Ok((0, out))
        }

        Group::Pi1(Pi1Cmd::ProductCheck { g1, g2, max_len }) => {
            let (a, b) = (load(g1)?, load(g2)?);
            let r = verify_product_pullback(&a, &b, *max_len)?;
            let code = if r.passed() { 0 } else { 1 };
            Ok((code, if json { emit(serde_json::to_value(&r).expect("report serializes")) } else { r.render() }))
        }

        Group::Hom(HomCmd::Complex { g, h }) => {
            let (a, b) = (load(g)?, load(h)?);
            let c = hom_complex_2skeleton(&a, &b, cap)?;
            Ok((0, if json { emit(c.to_json(&b)) } else { c.render(&b) }))
        }

        Group::Hom(HomCmd::Exp { g, h }) => {
            let (a, b) = (load(g)?, load(h)?);
            Ok((0, serialize_graph(&exponential_graph(&a, &b, cap)?)))
        }

        Group::Hom(HomCmd::Compare { g, h, max_len }) => {
            let (a, b) = (load(g)?, load(h)?);
            let r = compare_hom_groups(&a, &b, *max_len, cap)?;
            let code = if r.passed() { 0 } else { 1 };
            Ok((code, if json { emit(serde_json::to_value(&r).expect("report serializes")) } else { r.render() }))
        }
    }
}
