//! `lieinvar`: build semi-direct-sum Lie algebras, analyze their coadjoint
//! representation, search for polynomial invariants, and cross-check the
//! results numerically.

mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lieinvar_core::coadjoint::{commutator_rank, invariant_count};
use lieinvar_core::engine::{find_invariants, inter_reduce, verify_invariant, FindOptions};
use lieinvar_core::lie::json::{read_algebra, AlgebraFile, SemidirectMeta};
use lieinvar_core::lie::{optical_algebra, sl2_semidirect, LieAlgebra};
use lieinvar_core::oracle::max_flow_drift;
use lieinvar_core::poly::parse_polynomial;
use lieinvar_core::rng::SplitMix64;
use lieinvar_core::tde::jacobian_system;

use report::{default_max_degree, run_pipeline, RunReport};

#[derive(Parser)]
#[command(name = "lieinvar", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Emit a machine-readable JSON report instead of human output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an algebra and write its canonical JSON file.
    Build(BuildArgs),
    /// Validate an algebra file: format, bracket table, Jacobi identity.
    Check { file: PathBuf },
    /// Commutator-matrix analysis.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Polynomial invariants of the coadjoint representation.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// The equivalent system of total differential equations.
    #[command(subcommand)]
    Tde(TdeCmd),
    /// Floating-point cross-validation along generator flows.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// One-shot pipeline: structure checks, rank, count, invariants,
    /// reduction, TDE integrability, numeric oracle.
    Report {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BuildSource {
    /// Semi-direct sum of sl(2) with its irreducible module of this weight.
    #[arg(long = "sl2-module", value_name = "M")]
    sl2_module: Option<u32>,
    /// Validate and canonicalize an existing algebra file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// The seven-dimensional optical algebra fixture.
    #[arg(long)]
    opt21: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    source: BuildSource,
    /// Output path (defaults to a name derived from the source).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    /// Generic rank of the commutator matrix.
    Rank { file: PathBuf },
    /// Number of functionally independent invariants.
    Count { file: PathBuf },
}

#[derive(Subcommand)]
enum InvariantsCmd {
    /// Degree-bounded linear-ansatz search.
    Find {
        file: PathBuf,
        #[arg(long)]
        max_degree: u32,
        /// Restrict ansatz monomials to the radical coordinates
        /// (requires construction metadata in the file).
        #[arg(long)]
        radical_only: bool,
        /// Inter-reduce the result by products of lower-degree members.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check one polynomial for exact invariance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum TdeCmd {
    /// Print the system with denominators cleared, plus its singular locus.
    Emit { file: PathBuf },
    /// Check one polynomial against the system.
    Check {
        file: PathBuf,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Integrate every generator flow and report the worst relative drift.
    Flow {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
}

/// Outcome of one command: the report, its human rendering, and whether the
/// run counts as successful for the exit code.
struct Outcome {
    report: RunReport,
    human: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.report.to_json());
            } else {
                print!("{}", outcome.human);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("LIEINVAR_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn load(path: &Path) -> Result<(LieAlgebra, Option<SemidirectMeta>)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    read_algebra(&text).with_context(|| format!("in {}", path.display()))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Build(args) => build(args),
        Command::Check { file } => check(file),
        Command::Analyze(cmd) => analyze(cmd),
        Command::Invariants(cmd) => invariants(cmd),
        Command::Tde(cmd) => tde(cmd),
        Command::Oracle(cmd) => oracle(cmd),
        Command::Report { file, max_degree, seed } => full_report(file, *max_degree, *seed),
    }
}

fn build(args: &BuildArgs) -> Result<Outcome> {
    let (algebra, meta, default_name) = if let Some(m) = args.source.sl2_module {
        (
            sl2_semidirect(m),
            Some(SemidirectMeta { s_dim: 3, module: m }),
            format!("sl2_v{m}.json"),
        )
    } else if let Some(path) = &args.source.file {
        let (algebra, meta) = load(path)?;
        (algebra, meta, "canonical.json".to_string())
    } else {
        let (algebra, quarantine) = optical_algebra();
        if let Some(report) = quarantine {
            let mut message = String::from("optical algebra fixture is quarantined:\n");
            for c in &report.conflicts {
                message.push_str(&format!("  conflict: {c}\n"));
            }
            for [i, j, k] in &report.jacobi_failures {
                message.push_str(&format!(
                    "  jacobi fails on ({}, {}, {})\n",
                    algebra.basis_name(*i),
                    algebra.basis_name(*j),
                    algebra.basis_name(*k)
                ));
            }
            bail!("{message}");
        }
        (algebra, None, "opt21.json".to_string())
    };

    let jacobi = algebra.jacobi_report();
    if !jacobi.ok {
        let triples: Vec<String> = jacobi
            .failures
            .iter()
            .map(|[i, j, k]| {
                format!(
                    "({}, {}, {})",
                    algebra.basis_name(*i),
                    algebra.basis_name(*j),
                    algebra.basis_name(*k)
                )
            })
            .collect();
        bail!("Jacobi identity fails on: {}", triples.join(", "));
    }

    let path = args.output.clone().unwrap_or_else(|| PathBuf::from(default_name));
    let file = AlgebraFile::from_algebra(&algebra, meta);
    fs::write(&path, file.to_json())
        .with_context(|| format!("cannot write {}", path.display()))?;
    let results = json!({ "written": path.display().to_string() });
    Ok(Outcome {
        human: format!(
            "wrote {} ({}-dimensional, jacobi ok)\n",
            path.display(),
            algebra.dim()
        ),
        report: RunReport::new("build", &algebra, results, None),
        ok: true,
    })
}

fn check(file: &Path) -> Result<Outcome> {
    let (algebra, _) = load(file)?;
    let jacobi = algebra.jacobi_report();
    let results = json!({ "jacobi_ok": jacobi.ok, "failures": jacobi.failures });
    let human = if jacobi.ok {
        format!("{}: ok ({}-dimensional)\n", file.display(), algebra.dim())
    } else {
        format!(
            "{}: Jacobi identity FAILS on {} triple(s)\n",
            file.display(),
            jacobi.failures.len()
        )
    };
    Ok(Outcome {
        ok: jacobi.ok,
        report: RunReport::new("check", &algebra, results, None),
        human,
    })
}

fn analyze(cmd: &AnalyzeCmd) -> Result<Outcome> {
    let (name, file) = match cmd {
        AnalyzeCmd::Rank { file } => ("analyze rank", file),
        AnalyzeCmd::Count { file } => ("analyze count", file),
    };
    let (algebra, _) = load(file)?;
    let rank = commutator_rank(&algebra);
    let results = json!({
        "dim": algebra.dim(),
        "rank": rank,
        "invariants": algebra.dim() - rank,
    });
    Ok(Outcome {
        human: format!("{results}\n"),
        report: RunReport::new(name, &algebra, results, None),
        ok: true,
    })
}

fn invariants(cmd: &InvariantsCmd) -> Result<Outcome> {
    match cmd {
        InvariantsCmd::Find { file, max_degree, radical_only, reduce, seed } => {
            let (algebra, meta) = load(file)?;
            let seed = resolve_seed(*seed);
            let mut options = FindOptions::new(*max_degree).seed(seed);
            if *radical_only {
                let meta = meta.ok_or_else(|| {
                    anyhow!("--radical-only needs construction metadata in the algebra file")
                })?;
                options = options.restrict((meta.s_dim..algebra.dim()).collect());
            }
            let mut set = find_invariants(&algebra, &options);
            if *reduce {
                let prefer: Vec<usize> = if meta.is_some() { vec![0, 1, 2] } else { Vec::new() };
                set = inter_reduce(&set, &prefer);
            }
            let counted = invariant_count(&algebra);
            let polys: Vec<String> = set.polys().iter().map(|p| p.to_string()).collect();
            let summary = json!({
                "found": set.len(),
                "independent": set.independent_count(),
                "counted": counted,
            });
            let mut human = String::new();
            for p in &polys {
                human.push_str(p);
                human.push('\n');
            }
            human.push_str(&format!("{summary}\n"));
            let mut results: BTreeMap<String, Value> =
                serde_json::from_value(summary).expect("summary is an object");
            results.insert("polys".into(), json!(polys));
            Ok(Outcome {
                report: RunReport::new(
                    "invariants find",
                    &algebra,
                    serde_json::to_value(results)?,
                    Some(seed),
                ),
                human,
                ok: true,
            })
        }
        InvariantsCmd::Verify { file, poly } => {
            let (algebra, _) = load(file)?;
            let ctx = algebra.context();
            let f = parse_polynomial(&ctx, poly).map_err(|e| anyhow!("{e}"))?;
            let ok = verify_invariant(&algebra, &f);
            let results = json!({ "invariant": ok, "poly": f.to_string() });
            Ok(Outcome {
                human: format!("invariant: {ok}\n"),
                report: RunReport::new("invariants verify", &algebra, results, None),
                ok,
            })
        }
    }
}

fn tde(cmd: &TdeCmd) -> Result<Outcome> {
    match cmd {
        TdeCmd::Emit { file } => {
            let (algebra, _) = load(file)?;
            let sys = jacobian_system(&algebra);
            let names = |ix: &[usize]| -> Vec<String> {
                ix.iter().map(|&i| algebra.basis_name(i).to_string()).collect()
            };
            let lines: Vec<String> = sys.display_cleared().lines().map(str::to_string).collect();
            let results = json!({
                "dependent": names(sys.dependent()),
                "independent": names(sys.independent()),
                "equations": lines,
                "singular_locus": sys.pivot_product().to_string(),
            });
            let mut human = sys.display_cleared();
            human.push_str(&format!("singular locus: {} = 0\n", sys.pivot_product()));
            Ok(Outcome {
                report: RunReport::new("tde emit", &algebra, results, None),
                human,
                ok: true,
            })
        }
        TdeCmd::Check { file, poly } => {
            let (algebra, _) = load(file)?;
            let ctx = algebra.context();
            let f = parse_polynomial(&ctx, poly).map_err(|e| anyhow!("{e}"))?;
            let sys = jacobian_system(&algebra);
            let solves = sys.is_solution(&f);
            let results = json!({ "solves": solves, "poly": f.to_string() });
            Ok(Outcome {
                human: format!("solves the system: {solves}\n"),
                report: RunReport::new("tde check", &algebra, results, None),
                ok: solves,
            })
        }
    }
}

fn oracle(cmd: &OracleCmd) -> Result<Outcome> {
    let OracleCmd::Flow { file, poly, seed, steps, step } = cmd;
    let (algebra, _) = load(file)?;
    let ctx = algebra.context();
    let f = parse_polynomial(&ctx, poly).map_err(|e| anyhow!("{e}"))?;
    let seed = resolve_seed(*seed);
    let mut rng = SplitMix64::new(seed);
    let start = rng.f64_point(algebra.dim(), -1.0, 1.0);
    let drift = max_flow_drift(&algebra, &f, &start, *step, *steps).map_err(|e| anyhow!("{e}"))?;
    let results = json!({ "max_drift": drift, "seed": seed });
    Ok(Outcome {
        human: format!("max drift over all generator fields: {drift:.6e} (seed {seed})\n"),
        report: RunReport::new("oracle flow", &algebra, results, Some(seed)),
        ok: true,
    })
}

fn full_report(file: &Path, max_degree: Option<u32>, seed: Option<u64>) -> Result<Outcome> {
    let (algebra, meta) = load(file)?;
    let seed = resolve_seed(seed);
    let max_degree = max_degree.unwrap_or_else(|| default_max_degree(meta));
    let pipeline = run_pipeline(&algebra, meta, max_degree, seed);
    Ok(Outcome {
        ok: pipeline.all_ok(),
        human: pipeline.human(),
        report: RunReport::new("report", &algebra, pipeline.results(), Some(seed)),
    })
}
