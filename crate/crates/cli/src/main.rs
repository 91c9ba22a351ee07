use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use asymhyp::autsearch::DEFAULT_BUDGET;
use asymhyp::constructions::{write_address_map, ConstructionSpec, Family};
use asymhyp::extremal::{self, Outcome};
use asymhyp::format::{parse_hypergraph, write_hypergraph};
use asymhyp::verify::{self, Regime, Verdict, VerificationReport, VerifyOptions};
use asymhyp::{Engine, Hypergraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_FAILS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Construct, check and verify asymmetric k-uniform hypergraphs.
#[derive(Parser)]
#[command(name = "asymhyp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Exhaustive enumeration or seeded sampling.
    #[arg(long, value_enum, default_value_t = RegimeArg::Exhaustive, global = true)]
    regime: RegimeArg,
    /// Number of random subgraphs in the sampled regime.
    #[arg(long, default_value_t = 10_000, global = true)]
    trials: usize,
    /// Seed for the sampled regime (required there).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    /// Search-node budget per engine call.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args, Default)]
struct Params {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of a construction family and write it in text format.
    Construct {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        params: Params,
    },
    /// Automorphism queries on a hypergraph file.
    Check {
        path: PathBuf,
        #[arg(long, group = "mode")]
        asymmetric: bool,
        #[arg(long, group = "mode")]
        involution: bool,
        #[arg(long, group = "mode")]
        aut: bool,
    },
    /// Decide a minimality property of a file or a construction.
    Verify {
        path: Option<PathBuf>,
        #[arg(long, value_parser = parse_family, conflicts_with = "path")]
        family: Option<Family>,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        property: PropertyArg,
    },
    /// Least order of an asymmetric k-graph, by exhaustive search.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
        /// Write each asymmetric witness to this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Look for critical asymmetric oriented graphs on few vertices.
    CriticalOriented {
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PropertyArg {
    /// Every induced subgraph on 1 < |S| < n vertices is symmetric.
    #[arg(long)]
    minimal: bool,
    /// Every proper subgraph with at least two vertices is symmetric.
    #[arg(long)]
    strong: bool,
    /// Every proper subgraph with at least two vertices has an involution.
    #[arg(long)]
    involution_free: bool,
    /// Structure checks of the cyclic family (needs --k --t).
    #[arg(long)]
    cyclic_structure: bool,
    /// Group, stabilizer, padding and involution checks of the path family (needs --k).
    #[arg(long)]
    path_family: bool,
    /// Every k-graph on k + 1 vertices is symmetric (needs --k).
    #[arg(long)]
    lower_bound: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family {s:?}; expected one of {}", names.join(", "))
    })
}

/// An error that maps to the input-error exit code.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn emit(global: &Global, text: &str) -> Result<()> {
    match &global.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = input(fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))?;
    input(parse_hypergraph(&text).with_context(|| path.display().to_string()))
}

fn spec_of(family: Family, p: &Params) -> ConstructionSpec {
    ConstructionSpec {
        family,
        k: p.k,
        t: p.t,
        s: p.s,
        n: p.n,
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    if g.budget == 0 {
        return Err(InputError(anyhow::anyhow!("--budget must be positive")).into());
    }
    let engine = Engine::with_budget(g.budget);
    match &cli.command {
        Command::Construct { family, params } => construct(g, *family, params),
        Command::Check {
            path,
            asymmetric,
            involution,
            aut,
        } => {
            let h = read_hypergraph(path)?;
            let mode = if *asymmetric {
                Mode::Asymmetric
            } else if *involution {
                Mode::Involution
            } else if *aut {
                Mode::Aut
            } else {
                return Err(InputError(anyhow::anyhow!("one of --asymmetric, --involution, --aut is required")).into());
            };
            check(g, &engine, &h, mode)
        }
        Command::Verify {
            path,
            family,
            params,
            property,
        } => verify_cmd(g, &engine, path.as_deref(), *family, params, property),
        Command::Search { k, max_n, witness_dir } => search(g, &engine, *k, *max_n, witness_dir.as_deref()),
        Command::CriticalOriented { max_n } => {
            let report = extremal::explore_critical_oriented(&engine, *max_n);
            let text = if g.json { to_json(&report) } else { report.to_text() };
            emit(g, &text)?;
            Ok(if report.partial.is_some() {
                EXIT_BUDGET
            } else if !report.filter_consistent {
                EXIT_FAILS
            } else {
                0
            })
        }
    }
}

fn construct(g: &Global, family: Family, params: &Params) -> Result<u8> {
    let spec = spec_of(family, params);
    let built = input(spec.build())?;
    emit(g, &write_hypergraph(&built.hypergraph))?;
    if let Some(copies) = &built.copies {
        let map = write_address_map(copies);
        match &g.out {
            Some(path) => {
                let mut side = path.clone().into_os_string();
                side.push(".addr");
                fs::write(&side, map).with_context(|| format!("writing {}", PathBuf::from(&side).display()))?;
            }
            None => eprint!("{map}"),
        }
    }
    Ok(0)
}

#[derive(Clone, Copy)]
enum Mode {
    Asymmetric,
    Involution,
    Aut,
}

fn check(g: &Global, engine: &Engine, h: &Hypergraph, mode: Mode) -> Result<u8> {
    let name = |v: usize| h.vertex_name(v);
    let result = match mode {
        Mode::Asymmetric => engine.nontrivial_automorphism(h, None).map(|p| {
            let cycles = p.as_ref().map(|p| p.cycle_notation(name));
            let text = match &cycles {
                None => "asymmetric: true\n".to_string(),
                Some(c) => format!("asymmetric: false\nautomorphism: {c}\n"),
            };
            (json!({"asymmetric": cycles.is_none(), "automorphism": cycles}), text)
        }),
        Mode::Involution => engine.find_involution(h, None).map(|p| {
            let cycles = p.as_ref().map(|p| p.cycle_notation(name));
            let text = match &cycles {
                None => "involution: false\n".to_string(),
                Some(c) => format!("involution: true\nwitness: {c}\n"),
            };
            (json!({"involution": cycles.is_some(), "witness": cycles}), text)
        }),
        Mode::Aut => engine.automorphism_group(h).map(|group| {
            let gens: Vec<String> = group.generators.iter().map(|p| p.cycle_notation(name)).collect();
            let orbits: Vec<Vec<String>> = group
                .orbits
                .iter()
                .map(|o| o.iter().map(|&v| name(v)).collect())
                .collect();
            let mut text = format!(
                "vertices: {}\nedges: {}\norder: {}\ngenerators: {}\n",
                h.n_vertices(),
                h.n_edges(),
                group.order,
                gens.len()
            );
            for c in &gens {
                text.push_str(&format!("  {c}\n"));
            }
            let nontrivial: Vec<String> = orbits
                .iter()
                .filter(|o| o.len() > 1)
                .map(|o| format!("{{{}}}", o.join(" ")))
                .collect();
            text.push_str(&format!("nontrivial orbits: {}\n", nontrivial.join(" ")));
            (
                json!({
                    "vertices": h.n_vertices(),
                    "edges": h.n_edges(),
                    "order": group.order.to_string(),
                    "generators": gens,
                    "orbits": orbits,
                }),
                text,
            )
        }),
    };
    match result {
        Ok((value, text)) => {
            emit(g, &if g.json { to_json(&value) } else { text })?;
            Ok(0)
        }
        Err(e) => {
            let text = if g.json {
                to_json(&json!({"budget_exceeded": e.budget}))
            } else {
                format!("budget exceeded: {e}\n")
            };
            emit(g, &text)?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn options(g: &Global, engine: &Engine) -> Result<VerifyOptions> {
    let regime = match g.regime {
        RegimeArg::Exhaustive => Regime::Exhaustive,
        RegimeArg::Sampled => match g.seed {
            Some(seed) => Regime::Sampled { trials: g.trials, seed },
            None => return Err(InputError(anyhow::anyhow!("--regime sampled requires --seed")).into()),
        },
    };
    Ok(VerifyOptions {
        engine: *engine,
        regime,
        workers: g.workers,
    })
}

fn verify_cmd(
    g: &Global,
    engine: &Engine,
    path: Option<&Path>,
    family: Option<Family>,
    params: &Params,
    property: &PropertyArg,
) -> Result<u8> {
    let opts = options(g, engine)?;
    let need_k = || input(params.k.ok_or_else(|| anyhow::anyhow!("--k is required")));
    let report = if property.cyclic_structure {
        let t = input(params.t.ok_or_else(|| anyhow::anyhow!("--t is required")))?;
        let k = need_k()?;
        if k < 3 || t < (k.saturating_sub(2)).max(1) {
            bail!(InputError(anyhow::anyhow!("requires k >= 3 and t >= max(k - 2, 1)")));
        }
        verify::verify_shift_structure(k, t, &opts)
    } else if property.path_family {
        let k = need_k()?;
        if k < 4 {
            bail!(InputError(anyhow::anyhow!("requires k >= 4")));
        }
        verify::verify_path_family(k, &opts)
    } else if property.lower_bound {
        extremal::lower_bound(engine, need_k()?)
    } else {
        let (h, subject) = match (path, family) {
            (Some(p), _) => (read_hypergraph(p)?, p.display().to_string()),
            (None, Some(f)) => {
                let spec = spec_of(f, params);
                (input(spec.build())?.hypergraph, spec.describe())
            }
            (None, None) => bail!(InputError(anyhow::anyhow!("give a file path or --family"))),
        };
        if property.minimal {
            verify::verify_minimal_asymmetric(&h, &subject, &opts)
        } else if property.strong {
            verify::verify_strongly_minimal(&h, &subject, &opts)
        } else {
            verify::verify_minimal_involution_free(&h, &subject, &opts)
        }
    };
    emit_report(g, &report)
}

fn emit_report(g: &Global, report: &VerificationReport) -> Result<u8> {
    let text = if g.json { format!("{}\n", report.to_json()) } else { report.to_text() };
    emit(g, &text)?;
    Ok(match report.verdict {
        Verdict::Holds => 0,
        Verdict::Fails => EXIT_FAILS,
        Verdict::BudgetExceeded => EXIT_BUDGET,
    })
}

fn search(g: &Global, engine: &Engine, k: usize, max_n: usize, witness_dir: Option<&Path>) -> Result<u8> {
    if k == 0 {
        bail!(InputError(anyhow::anyhow!("--k must be positive")));
    }
    let result = extremal::min_asymmetric_order(engine, k, max_n);
    let mut paths = Vec::new();
    if let Some(dir) = witness_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for row in &result.per_n {
            if let Outcome::Asymmetric { witness } = &row.outcome {
                let path = dir.join(format!("k{k}-n{}.hg", row.n));
                fs::write(&path, write_hypergraph(&witness.hypergraph()))
                    .with_context(|| format!("writing {}", path.display()))?;
                paths.push((row.n, path.display().to_string()));
            }
        }
    }
    let text = if g.json {
        to_json(&json!({"result": result, "witness_files": paths}))
    } else {
        result.to_table(&paths)
    };
    emit(g, &text)?;
    let partial = result
        .per_n
        .iter()
        .any(|r| matches!(r.outcome, Outcome::BudgetExceeded { .. }));
    Ok(if partial { EXIT_BUDGET } else { 0 })
}
