//! `polychrome` command-line front end.
//!
//! Exit codes: 0 success, 1 property violated or unexpected UNSAT, 2 usage or
//! input error, 3 search budget exhausted.

mod svg;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use polychrome::coloring::{
    color_strips, peel_pipeline, peel_single, preset_case, ColoringError, PRESET_NAMES,
};
use polychrome::constructions::{
    realize_stages, realize_tree, ConstructionError, LabeledRealization,
};
use polychrome::hypergraph::{
    exact_hitting_cliques, exact_polychromatic, is_polychromatic, SearchOutcome, DEFAULT_BUDGET,
};
use polychrome::io::{
    coloring_from_json, coloring_to_json, hypergraph_from_json, hypergraph_to_json,
    pipeline_report_json, points_from_json, points_to_json, ranges_from_json, vmap_to_json,
};
use polychrome::ranges::enumerate_union;
use polychrome::{Hypergraph, PointSet, RangeFamily};

#[derive(Parser)]
#[command(
    name = "polychrome",
    version,
    about = "Range-capturing hypergraphs and polychromatic colorings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate point sets
    #[command(subcommand)]
    Gen(GenCommand),
    /// Enumerate the m-uniform range-capturing hypergraph of a point set
    Enum {
        #[arg(long)]
        points: PathBuf,
        /// comma-separated list of nw, ne, sw, se, hs, vs, ds, bl, tl
        #[arg(long, value_parser = parse_families)]
        families: FamilyList,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Color a point set
    #[command(subcommand)]
    Color(ColorCommand),
    /// Run an exact search on a hypergraph
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Check a coloring or a realization
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Draw points, a coloring and ranges as SVG
    Render {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        ranges: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Realization of the m-ary tree hypergraph with SW quadrants and diagonal strips
    Tree(GenConstruction),
    /// Realization of the stage hypergraph with bottomless rectangles and horizontal strips
    Stages(GenConstruction),
    /// Seeded random point set in general position
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct GenConstruction {
    #[arg(long)]
    m: usize,
    /// writes PREFIX.points.json, PREFIX.hg.json and PREFIX.vmap.json
    #[arg(long)]
    out_prefix: PathBuf,
}

#[derive(Args)]
struct ColorInput {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum ColorCommand {
    /// Every horizontal or vertical strip with 2k-1 points sees all colors
    Strips(ColorInput),
    /// Peel greedy hitting sets of one quadrant family
    PeelSingle {
        #[command(flatten)]
        input: ColorInput,
        #[arg(long, default_value = "nw", value_parser = parse_family)]
        family: RangeFamily,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Peel quadrant hitting sets, then color the rest with a base colorer
    Pipeline {
        #[command(flatten)]
        input: ColorInput,
        #[arg(long, value_parser = parse_preset)]
        preset: String,
        /// write the run report JSON here
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, env = "POLYCHROME_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct OracleInput {
    #[arg(long)]
    hg: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, env = "POLYCHROME_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// write the witness JSON here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Is there a coloring in which every edge sees all k colors?
    Polychromatic(OracleInput),
    /// Are there disjoint k-sets such that every edge contains one?
    HittingCliques(OracleInput),
}

#[derive(Subcommand)]
enum VerifyCommand {
    Coloring {
        #[arg(long)]
        hg: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Every edge of PREFIX.hg.json is captured in PREFIX.points.json
    Realization {
        #[arg(long)]
        prefix: PathBuf,
        #[arg(long, value_parser = parse_families)]
        families: FamilyList,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
}

/// Sorted, deduplicated family list.
#[derive(Clone)]
struct FamilyList(Vec<RangeFamily>);

fn parse_families(s: &str) -> Result<FamilyList, String> {
    let families = RangeFamily::parse_list(s).map_err(|e| e.to_string())?;
    if families.contains(&RangeFamily::SQ) {
        return Err("squares cannot be enumerated".into());
    }
    Ok(FamilyList(families))
}

fn parse_family(s: &str) -> Result<RangeFamily, String> {
    s.parse::<RangeFamily>().map_err(|e| e.to_string())
}

fn parse_preset(s: &str) -> Result<String, String> {
    preset_case(s).map(|c| c.name).map_err(|_| {
        format!(
            "unknown preset; expected one of {}",
            PRESET_NAMES.join(", ")
        )
    })
}

enum Failure {
    Usage(anyhow::Error),
    Violated(String),
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn load_points(path: &Path) -> anyhow::Result<PointSet> {
    points_from_json(&read(path)?).with_context(|| format!("bad point set {}", path.display()))
}

fn load_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    hypergraph_from_json(&read(path)?).with_context(|| format!("bad hypergraph {}", path.display()))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn coloring_failure(e: ColoringError) -> Failure {
    match e {
        ColoringError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
        ColoringError::CitedBoundFalsified { .. } => Failure::Violated(e.to_string()),
        other => Failure::Usage(anyhow!(other)),
    }
}

fn gen_construction(
    args: &GenConstruction,
    build: fn(
        usize,
    ) -> Result<
        (LabeledRealization, polychrome::constructions::RootedForest),
        ConstructionError,
    >,
) -> Outcome {
    let (r, _) = build(args.m).map_err(|e| match e {
        ConstructionError::VerificationFailed { .. } => Failure::Violated(e.to_string()),
        other => Failure::Usage(anyhow!(other)),
    })?;
    let h = r.mapped_hypergraph().map_err(|e| anyhow!(e))?;
    let vmap: BTreeMap<String, usize> = r
        .names
        .iter()
        .cloned()
        .zip(r.vmap.iter().copied())
        .collect();
    write(
        &with_suffix(&args.out_prefix, ".points.json"),
        &points_to_json(&r.points),
    )?;
    write(
        &with_suffix(&args.out_prefix, ".hg.json"),
        &hypergraph_to_json(&h),
    )?;
    write(
        &with_suffix(&args.out_prefix, ".vmap.json"),
        &vmap_to_json(&vmap),
    )?;
    println!(
        "vertices {}, hyperedges {}",
        r.points.len(),
        h.edges().len()
    );
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen(GenCommand::Tree(args)) => gen_construction(&args, realize_tree),
        Command::Gen(GenCommand::Stages(args)) => gen_construction(&args, realize_stages),
        Command::Gen(GenCommand::Random { n, seed, out }) => {
            write(&out, &points_to_json(&PointSet::random(n, seed)))?;
            Ok(())
        }
        Command::Enum {
            points,
            families,
            m,
            out,
        } => {
            let ps = load_points(&points)?;
            let families = families.0;
            let edges = enumerate_union(&ps, &families, m as usize).map_err(|e| anyhow!(e))?;
            let h = Hypergraph::new(ps.len(), edges).map_err(|e| anyhow!(e))?;
            write(&out, &hypergraph_to_json(&h))?;
            println!("{} hyperedges", h.edges().len());
            Ok(())
        }
        Command::Color(cmd) => color(cmd),
        Command::Oracle(cmd) => oracle(cmd),
        Command::Verify(VerifyCommand::Coloring { hg, coloring }) => {
            let h = load_hypergraph(&hg)?;
            let c = coloring_from_json(&read(&coloring)?).context("bad coloring")?;
            let bad = is_polychromatic(&h, &c).map_err(|e| anyhow!(e))?;
            if bad.is_empty() {
                println!(
                    "OK: all {} hyperedges see all {} colors",
                    h.edges().len(),
                    c.k()
                );
                Ok(())
            } else {
                Err(Failure::Violated(format!(
                    "VIOLATED: {} of {} hyperedges miss a color, first {:?}",
                    bad.len(),
                    h.edges().len(),
                    bad[0]
                )))
            }
        }
        Command::Verify(VerifyCommand::Realization {
            prefix,
            families,
            m,
        }) => {
            let ps = load_points(&with_suffix(&prefix, ".points.json"))?;
            let h = load_hypergraph(&with_suffix(&prefix, ".hg.json"))?;
            let families = families.0;
            let captured = enumerate_union(&ps, &families, m as usize).map_err(|e| anyhow!(e))?;
            let missing: Vec<_> = h
                .edges()
                .iter()
                .filter(|e| captured.binary_search(e).is_err())
                .collect();
            if missing.is_empty() {
                println!(
                    "OK: all {} hyperedges captured ({} other captured sets)",
                    h.edges().len(),
                    captured.len() - h.edges().len()
                );
                Ok(())
            } else {
                Err(Failure::Violated(format!(
                    "MISSING: {} hyperedges not captured, first {:?}",
                    missing.len(),
                    missing[0]
                )))
            }
        }
        Command::Render {
            points,
            coloring,
            ranges,
            out,
        } => {
            let ps = load_points(&points)?;
            let c = match coloring {
                Some(p) => Some(coloring_from_json(&read(&p)?).context("bad coloring")?),
                None => None,
            };
            if let Some(c) = &c {
                if c.colors().len() != ps.len() {
                    return Err(anyhow!(
                        "coloring has {} entries for {} points",
                        c.colors().len(),
                        ps.len()
                    )
                    .into());
                }
            }
            let rs = match ranges {
                Some(p) => ranges_from_json(&read(&p)?).context("bad ranges")?,
                None => vec![],
            };
            write(&out, &svg::render(&ps, c.as_ref(), &rs))?;
            Ok(())
        }
    }
}

fn color(cmd: ColorCommand) -> Outcome {
    let (input, coloring) = match cmd {
        ColorCommand::Strips(input) => {
            let ps = load_points(&input.points)?;
            let c = color_strips(&ps, input.k as usize).map_err(coloring_failure)?;
            (input, c)
        }
        ColorCommand::PeelSingle { input, family, t } => {
            let ps = load_points(&input.points)?;
            let c = peel_single(&ps, family, t, input.k as usize).map_err(coloring_failure)?;
            (input, c)
        }
        ColorCommand::Pipeline {
            input,
            preset,
            report,
            budget,
        } => {
            let ps = load_points(&input.points)?;
            let cfg = preset_case(&preset).map_err(coloring_failure)?;
            let run =
                peel_pipeline(&ps, &cfg, input.k as usize, budget).map_err(coloring_failure)?;
            if let Some(path) = report {
                write(&path, &pipeline_report_json(&run))?;
            }
            println!("m = {}, schedule {:?}", run.m, run.schedule);
            if !run.is_polychromatic() {
                write(&input.out, &coloring_to_json(&run.coloring))?;
                return Err(Failure::Violated(format!("VIOLATED: {:?}", run.violations)));
            }
            (input, run.coloring)
        }
    };
    write(&input.out, &coloring_to_json(&coloring))?;
    Ok(())
}

fn oracle(cmd: OracleCommand) -> Outcome {
    let (input, outcome, nodes) = match cmd {
        OracleCommand::Polychromatic(input) => {
            let h = load_hypergraph(&input.hg)?;
            let r = exact_polychromatic(&h, input.k as usize, input.budget);
            let outcome = match r.outcome {
                SearchOutcome::Found(c) => SearchOutcome::Found(coloring_to_json(&c)),
                SearchOutcome::Unsat => SearchOutcome::Unsat,
                SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
            };
            (input, outcome, r.nodes)
        }
        OracleCommand::HittingCliques(input) => {
            let h = load_hypergraph(&input.hg)?;
            let r = exact_hitting_cliques(&h, input.k as usize, input.budget);
            let outcome = match r.outcome {
                SearchOutcome::Found(c) => {
                    let mut s =
                        serde_json::json!({ "k": input.k, "cliques": c.cliques }).to_string();
                    s.push('\n');
                    SearchOutcome::Found(s)
                }
                SearchOutcome::Unsat => SearchOutcome::Unsat,
                SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
            };
            (input, outcome, r.nodes)
        }
    };
    match outcome {
        SearchOutcome::Found(json) => {
            println!("SAT ({nodes} nodes)");
            match &input.out {
                Some(path) => write(path, &json)?,
                None => print!("{json}"),
            }
            Ok(())
        }
        SearchOutcome::Unsat => Err(Failure::Violated(format!("UNSAT ({nodes} nodes)"))),
        SearchOutcome::BudgetExhausted => Err(Failure::Budget(format!(
            "BUDGET EXHAUSTED after {nodes} nodes"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            println!("{msg}");
            ExitCode::from(3)
        }
    }
}
