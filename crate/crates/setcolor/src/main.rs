use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use setcolor::claims::{self, Config};
use setcolor::formats;
use setcolor::report::{self, Format};
use setcolor::THREADS_ENV;
use setcolor_core::gadgets::GadgetId;
use setcolor_core::{DomainConstraint, Solver, Status};

#[derive(Parser)]
#[command(name = "setcolor", version, about = "Exact set-list-coloring checks for the gadget family")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check claims: a group (lemma1, cor2, lemma3, lemma4, lemma5, lemma6,
    /// theorem, controls), `all`, or one claim id such as `lemma4.forced`.
    Verify {
        claim: String,
        /// Sample count for every sampled claim (defaults vary per claim).
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for every sampled claim (default 42, theorem sampling 7).
        #[arg(long)]
        seed: Option<u64>,
        /// Per-claim time limit in seconds; exceeding it reports `skipped`.
        #[arg(long)]
        timeout: Option<f64>,
        /// Color universe for the 4-choosability samples.
        #[arg(long)]
        universe: Option<u32>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print a gadget or the final construction.
    Build {
        #[arg(long)]
        gadget: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Also write the lists as JSON to this file.
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Write the graph here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Search for a (L:b)-coloring of a graph given as an edge list.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long, default_value_t = 1)]
        b: u32,
        /// Forbid a set: LABEL=c,c (repeatable).
        #[arg(long)]
        forbid: Vec<String>,
        /// Forbid colors anywhere in the set: LABEL=c,c (repeatable).
        #[arg(long)]
        avoid: Vec<String>,
        /// Require colors in the set: LABEL=c,c (repeatable).
        #[arg(long)]
        contain: Vec<String>,
        /// Count all colorings instead of finding one.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Edgelist,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global().context("thread pool")?;
    }
    match cli.command {
        Command::Verify { claim, samples, seed, timeout, universe, format } => {
            let config = Config { samples, seed, timeout: timeout.map(Duration::from_secs_f64), universe };
            let reports = claims::verify(&claim, &config)?;
            let format = match format {
                OutFormat::Json => Format::Json,
                OutFormat::Text => Format::Text,
            };
            print!("{}", report::render(&reports, format));
            Ok(ExitCode::from(report::exit_code(&reports) as u8))
        }
        Command::Build { gadget, format, lists, output } => {
            let (name, graph, list_assignment) = if gadget == "final" {
                let fc = claims::final_construction()?;
                ("final".to_string(), fc.graph, fc.lists)
            } else {
                let Some(id) = GadgetId::parse(&gadget) else {
                    bail!("unknown gadget `{gadget}`; expected pentagon, g1..g5 or final");
                };
                let g = id.build()?;
                (g.name, g.graph, g.base_lists)
            };
            let text = match format {
                GraphFormat::Dot => formats::to_dot(&name, &graph, Some(&list_assignment)),
                GraphFormat::Edgelist => formats::to_edge_list(&graph),
            };
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            if let Some(path) = lists {
                let json = serde_json::to_string_pretty(&formats::lists_to_json(&graph, &list_assignment))?;
                fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { graph, lists, b, forbid, avoid, contain, count } => {
            let text = fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let g = formats::parse_edge_list(&text)?;
            let raw = fs::read_to_string(&lists).with_context(|| format!("reading {}", lists.display()))?;
            let l = formats::lists_from_json(&g, &serde_json::from_str(&raw)?)?;
            let mut c = DomainConstraint::none();
            for spec in &forbid {
                let (v, s) = formats::parse_vertex_colors(&g, spec)?;
                c = c.forbid(v, s);
            }
            for spec in &avoid {
                let (v, s) = formats::parse_vertex_colors(&g, spec)?;
                c = c.avoid_colors(v, s);
            }
            for spec in &contain {
                let (v, s) = formats::parse_vertex_colors(&g, spec)?;
                for color in s {
                    c = c.require_color(v, color);
                }
            }
            let solver = Solver::new(&g, &l, b).constraints(&c);
            if count {
                let r = solver.count()?;
                let out = serde_json::json!({ "count": r.count, "complete": r.complete, "nodes": r.nodes_explored });
                println!("{}", serde_json::to_string_pretty(&out)?);
                return Ok(ExitCode::SUCCESS);
            }
            let r = solver.find()?;
            let status = match r.status {
                Status::Sat => "sat",
                Status::Unsat => "unsat",
                Status::Interrupted => "interrupted",
            };
            let mut out = serde_json::json!({ "status": status, "nodes": r.nodes_explored });
            if let Some(w) = &r.witness {
                out["witness"] = formats::coloring_to_json(&g, w);
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
