//! `kneser` — search, construct, verify, bound, and witness everything this
//! toolkit computes about Ramsey problems on Kneser graphs.
//!
//! Exit codes: 0 success/PASS, 2 verification FAIL, 3 budget exhausted
//! (UNKNOWN), 64 usage or input errors. Results go to stdout; progress and
//! timing go to stderr, so stdout is stable across runs with equal seeds.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kneser_cli::certstore::{self, Certificate, Claim, Provenance};
use kneser_cli::oracles::FileOracle;
use kneser_cli::render;
use kneser_cli::snapshots;
use kneser_core::bounds::{self, RamseyTable, Ratio};
use kneser_core::coloring::Color;
use kneser_core::combin::RSet;
use kneser_core::constructions;
use kneser_core::kneser::KneserGraph;
use kneser_core::sat::{self, Budget, Status};
use kneser_core::witness::{self, Branch, PairOracle, SeededOracle};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "kneser",
    version,
    about = "Ramsey problems on Kneser graphs: SAT search, constructions, certificates, bounds, witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (latex applies to `bounds` only).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Ramsey table snapshot: a built-in name (paper-2024, current) or a
    /// snapshot file path.
    #[arg(long, global = true, default_value = "paper-2024")]
    snapshot: String,

    /// Seed for randomized oracles and partitions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for internal parallel enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether KG(n,r) has a coloring with no red K_s and no blue
    /// K_t, via the built-in solver or an external one.
    Search(SearchArgs),
    /// Generate an explicit coloring with a provable guarantee and its
    /// certificate.
    Construct {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Re-verify a certificate file.
    Verify {
        /// Certificate path.
        file: PathBuf,
        /// Additionally run the fixed block-structure spot-check for the
        /// bundled KG(8,2) coloring.
        #[arg(long)]
        appendix_structure: bool,
    },
    /// Regenerate the bound grid for a subset size, or query single bounds.
    Bounds(BoundsArgs),
    /// Run a constructive witness finder against an oracle.
    Witness {
        #[command(subcommand)]
        finder: WitnessCommand,
    },
    /// Export a good-coloring certificate as DIMACS CNF and/or a model
    /// file.
    Export {
        /// Certificate path.
        file: PathBuf,
        /// Emit the CNF of the certificate's instance (stdout unless --out).
        #[arg(long)]
        dimacs: bool,
        /// CNF output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the certificate's coloring as a solver model file.
        #[arg(long)]
        model_out: Option<PathBuf>,
    },
    /// Graph statistics: sizes, degree, clique counts.
    Stats {
        /// Ground-set size.
        #[arg(long)]
        n: u8,
        /// Subset size.
        #[arg(long)]
        r: u8,
        /// Clique size to count.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Ground-set size.
    #[arg(long)]
    n: u8,
    /// Subset size (1 treats the host as a complete graph).
    #[arg(long)]
    r: u8,
    /// Red clique size to exclude.
    #[arg(long)]
    s: usize,
    /// Blue clique size to exclude.
    #[arg(long)]
    t: usize,
    /// Conflict budget for the native solver.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Write the CNF encoding to this path.
    #[arg(long)]
    dimacs_out: Option<PathBuf>,
    /// Encode and emit only; skip solving.
    #[arg(long)]
    encode_only: bool,
    /// Write a certificate here when a good coloring is found.
    #[arg(long)]
    cert_out: Option<PathBuf>,
    /// Read a solver model file instead of solving natively.
    #[arg(long)]
    model_in: Option<PathBuf>,
    /// Delegate to the solver named by KNESER_SAT_SOLVER.
    #[arg(long, conflicts_with_all = ["model_in", "encode_only"])]
    external: bool,
    /// Break the red/blue exchange symmetry (s = t only; forbidden in
    /// certificate-producing runs).
    #[arg(long, conflicts_with = "cert_out")]
    symmetry_break: bool,
}

#[derive(Subcommand)]
enum Construction {
    /// Pull a complete-graph coloring back through the proper coloring.
    ChromaticLift {
        /// Ground-set size.
        #[arg(long)]
        n: u8,
        /// Subset size.
        #[arg(long)]
        r: u8,
        /// Base certificate (r = 1 good coloring); defaults to the 5-cycle
        /// coloring of K_5.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Certificate output path.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// The triangle-free split coloring of KG(3r+1, r).
    ThreeRPlusOne {
        /// Subset size (at least 2).
        #[arg(long)]
        r: u8,
        /// Certificate output path.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// The bichromatic-matching coloring with no monochromatic induced
    /// KG(2r, r).
    InducedMatching {
        /// Ground-set size.
        #[arg(long)]
        n: u8,
        /// Subset size (at least 2).
        #[arg(long)]
        r: u8,
        /// Certificate output path.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// The partition coloring from the quadratic-residue pair coloring:
    /// no blue triangle, no red induced KG(6, 2).
    Palvolgyi {
        /// Prime ground-set size, 1 mod 4.
        #[arg(long, default_value_t = 17)]
        q: u8,
        /// Certificate output path.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Six k-subsets of [3k] covering every element exactly twice.
    SixSets {
        /// Block size (even).
        #[arg(long)]
        k: u8,
    },
}

#[derive(Args)]
struct BoundsArgs {
    /// Subset size for the grid.
    #[arg(long)]
    r: Option<u8>,
    /// Print the active snapshot as a data file instead of a grid.
    #[arg(long)]
    emit_snapshot: bool,
    /// Report the density threshold and, with --alpha, the minimal (r, n)
    /// witness for the pair `s,t`.
    #[arg(long, value_name = "S,T")]
    alpha_for: Option<String>,
    /// Density ratio (`1/5` or `0.2`) for --alpha-for.
    #[arg(long)]
    alpha: Option<String>,
    /// Multicolor clique sizes, e.g. `3,3,3`.
    #[arg(long, value_name = "SIZES")]
    multicolor: Option<String>,
    /// Supplied decremented Ramsey values for --multicolor.
    #[arg(long, value_name = "VALUES")]
    m_values: Option<String>,
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Monochromatic empty-intersection triangle over the ground [7k/3].
    Beta73 {
        /// Block size: divisible by 6, at least 12.
        #[arg(long)]
        k: u8,
        /// `random` (seeded) or a pair-coloring file.
        #[arg(long, default_value = "random")]
        coloring: String,
    },
    /// Monochromatic triangle among the six double-cover sets over [3k].
    Beta3 {
        /// Block size (even).
        #[arg(long)]
        k: u8,
        /// `random` (seeded) or a pair-coloring file.
        #[arg(long, default_value = "random")]
        coloring: String,
    },
    /// Disjoint-family partition checks on random partitions.
    Afl {
        /// Ground-set size.
        #[arg(long)]
        n: u8,
        /// Subset size.
        #[arg(long)]
        r: u8,
        /// Nonincreasing targets, e.g. `3,2`.
        #[arg(long)]
        targets: String,
        /// Number of random partitions to test.
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Global flags, separated from the subcommand so both can move freely.
struct Ctx {
    format: Format,
    snapshot: String,
    seed: u64,
    jobs: usize,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let ctx = Ctx {
        format: cli.format,
        snapshot: cli.snapshot,
        seed: cli.seed,
        jobs: cli.jobs,
    };
    let table = snapshots::resolve_snapshot(&ctx.snapshot)?;
    match cli.command {
        Command::Search(args) => search(&ctx, args, &table),
        Command::Construct { construction } => construct(&ctx, construction, &table),
        Command::Verify {
            file,
            appendix_structure,
        } => verify_cmd(&ctx, &file, appendix_structure),
        Command::Bounds(args) => bounds_cmd(&ctx, args, &table),
        Command::Witness { finder } => witness_cmd(&ctx, finder),
        Command::Export {
            file,
            dimacs,
            out,
            model_out,
        } => export_cmd(&file, dimacs, out, model_out),
        Command::Stats { n, r, k } => stats_cmd(&ctx, n, r, k),
    }
}

fn timestamp() -> String {
    if let Ok(epoch) = std::env::var("SOURCE_DATE_EPOCH") {
        return epoch;
    }
    match std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH) {
        Ok(d) => d.as_secs().to_string(),
        Err(_) => "0".into(),
    }
}

fn provenance(cli: &Ctx, generator: &str, seeded: bool) -> Provenance {
    Provenance {
        generator: generator.to_string(),
        seed: seeded.then_some(cli.seed),
        snapshot: cli.snapshot.clone(),
        timestamp: timestamp(),
    }
}

fn write_certificate(path: &PathBuf, cert: &Certificate) -> anyhow::Result<()> {
    std::fs::write(path, cert.save()).with_context(|| format!("writing {}", path.display()))
}

// ---------------------------------------------------------------- search

fn search(cli: &Ctx, args: SearchArgs, _table: &RamseyTable) -> anyhow::Result<u8> {
    if args.symmetry_break && args.s != args.t {
        bail!("--symmetry-break uses the red/blue exchange symmetry and needs s = t");
    }
    let graph = KneserGraph::build(args.n, args.r)?;
    let mut formula = sat::encode(&graph, args.s, args.t)?;
    if args.symmetry_break && formula.variable_count > 0 {
        formula.clauses.insert(0, vec![1]);
    }

    if let Some(path) = &args.dimacs_out {
        std::fs::write(path, formula.to_dimacs_string())
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let header = |out: &mut Vec<String>| {
        out.push(format!(
            "instance: KG({},{}) s={} t={}",
            args.n, args.r, args.s, args.t
        ));
        out.push(format!("variables: {}", formula.variable_count));
        out.push(format!("clauses: {}", formula.clauses.len()));
    };

    let mut lines = Vec::new();
    header(&mut lines);

    if args.encode_only {
        if let Some(path) = &args.dimacs_out {
            lines.push(format!("dimacs: {}", path.display()));
        }
        lines.push("status: ENCODED".into());
        emit_search(cli, &args, &lines, "ENCODED", None, None)?;
        return Ok(EXIT_OK);
    }

    // Obtain a model (native, external, or from a model file) or an UNSAT/
    // UNKNOWN verdict.
    let started = Instant::now();
    let (status, model, stats) = if let Some(path) = &args.model_in {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let model = sat::parse_dimacs_model(&text, formula.variable_count)?;
        (Status::Sat, Some(model), None)
    } else if args.external {
        let (status, model) = run_external_solver(&formula)?;
        (status, model, None)
    } else {
        let outcome = formula.solve(&Budget::conflicts(args.budget))?;
        eprintln!(
            "native solve finished in {:.3}s ({} conflicts)",
            started.elapsed().as_secs_f64(),
            outcome.stats.conflicts
        );
        (outcome.status, outcome.model, Some(outcome.stats))
    };

    if let Some(st) = &stats {
        lines.push(format!("conflicts: {}", st.conflicts));
        lines.push(format!("decisions: {}", st.decisions));
        lines.push(format!("propagations: {}", st.propagations));
    }

    match status {
        Status::Sat => {
            let model = model.expect("SAT implies model");
            let coloring = sat::decode(&formula, &model, &graph)?;
            // Belt and braces: never report SAT without re-verifying.
            if !coloring.is_good(args.s, args.t) {
                bail!("solver model decoded to a coloring that is not good; refusing to report");
            }
            lines.push("status: SAT".into());
            lines.push(format!("verified: good coloring for ({},{})", args.s, args.t));
            lines.push(format!(
                "conclusion: KG({},{}) has a good coloring; the ({},{}) Kneser Ramsey number at r={} exceeds {}",
                args.n, args.r, args.s, args.t, args.r, args.n
            ));
            let mut digest = None;
            if let Some(path) = &args.cert_out {
                let cert = Certificate::from_coloring(
                    Claim::GoodColoring {
                        n: args.n,
                        r: args.r,
                        s: args.s as u8,
                        t: args.t as u8,
                    },
                    &coloring,
                    provenance(cli, "sat-search", false),
                )?;
                write_certificate(path, &cert)?;
                lines.push(format!("certificate: {}", path.display()));
                lines.push(format!("digest: {}", cert.digest));
                digest = Some(cert.digest);
            }
            emit_search(cli, &args, &lines, "SAT", stats, digest)?;
            Ok(EXIT_OK)
        }
        Status::Unsat => {
            lines.push("status: UNSAT".into());
            lines.push(format!(
                "conclusion: no good coloring of KG({},{}) exists; the ({},{}) Kneser Ramsey number at r={} is at most {}",
                args.n, args.r, args.s, args.t, args.r, args.n
            ));
            emit_search(cli, &args, &lines, "UNSAT", stats, None)?;
            Ok(EXIT_OK)
        }
        Status::Unknown => {
            lines.push("status: UNKNOWN".into());
            lines.push(format!("conclusion: budget of {} conflicts exhausted", args.budget));
            emit_search(cli, &args, &lines, "UNKNOWN", stats, None)?;
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn emit_search(
    cli: &Ctx,
    args: &SearchArgs,
    lines: &[String],
    status: &str,
    stats: Option<sat::SolveStats>,
    digest: Option<String>,
) -> anyhow::Result<()> {
    match cli.format {
        Format::Json => {
            let value = serde_json::json!({
                "instance": {"n": args.n, "r": args.r, "s": args.s, "t": args.t},
                "status": status,
                "stats": stats.map(|st| serde_json::json!({
                    "conflicts": st.conflicts,
                    "decisions": st.decisions,
                    "propagations": st.propagations,
                    "restarts": st.restarts,
                })),
                "certificate_digest": digest,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        _ => {
            for line in lines {
                println!("{line}");
            }
        }
    }
    Ok(())
}

/// Runs the solver named by KNESER_SAT_SOLVER on a temporary DIMACS file
/// and parses its SAT-competition output.
fn run_external_solver(
    formula: &sat::CnfFormula,
) -> anyhow::Result<(Status, Option<Vec<bool>>)> {
    let solver = std::env::var("KNESER_SAT_SOLVER")
        .map_err(|_| anyhow!("--external needs the KNESER_SAT_SOLVER environment variable"))?;
    let dir = std::env::temp_dir();
    let path = dir.join(format!("kneser-{}.cnf", std::process::id()));
    std::fs::write(&path, formula.to_dimacs_string())?;
    let output = std::process::Command::new(&solver)
        .arg(&path)
        .output()
        .with_context(|| format!("running external solver {solver:?}"))?;
    let _ = std::fs::remove_file(&path);
    let stdout = String::from_utf8_lossy(&output.stdout);
    if stdout.lines().any(|l| l.trim() == "s UNSATISFIABLE") {
        return Ok((Status::Unsat, None));
    }
    if stdout.lines().any(|l| l.trim() == "s SATISFIABLE") {
        let model = sat::parse_dimacs_model(&stdout, formula.variable_count)?;
        return Ok((Status::Sat, Some(model)));
    }
    Ok((Status::Unknown, None))
}

// ------------------------------------------------------------- construct

fn construct(cli: &Ctx, construction: Construction, _table: &RamseyTable) -> anyhow::Result<u8> {
    let (coloring, claim, generator, cert_out) = match &construction {
        Construction::ChromaticLift { n, r, base, cert_out } => {
            let (base_coloring, base_s, base_t) = match base {
                None => (constructions::five_cycle_base(), 3u8, 3u8),
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let cert = Certificate::load(&text)?;
                    let Claim::GoodColoring { r: 1, s, t, .. } = cert.claim else {
                        bail!("--base must be a good-coloring certificate with r = 1");
                    };
                    (cert.coloring()?, s, t)
                }
            };
            let lifted = constructions::chromatic_lift(*n, *r, &base_coloring)?;
            (
                lifted,
                Claim::GoodColoring {
                    n: *n,
                    r: *r,
                    s: base_s,
                    t: base_t,
                },
                "chromatic-lift",
                cert_out.clone(),
            )
        }
        Construction::ThreeRPlusOne { r, cert_out } => {
            let coloring = constructions::three_r_plus_one(*r)?;
            (
                coloring,
                Claim::GoodColoring {
                    n: 3 * r + 1,
                    r: *r,
                    s: 3,
                    t: 3,
                },
                "three-r-plus-one",
                cert_out.clone(),
            )
        }
        Construction::InducedMatching { n, r, cert_out } => {
            let coloring = constructions::induced_matching_coloring(*n, *r)?;
            (
                coloring,
                Claim::Construction {
                    n: *n,
                    r: *r,
                    m: 2 * r,
                },
                "induced-matching",
                cert_out.clone(),
            )
        }
        Construction::Palvolgyi { q, cert_out } => {
            let h = constructions::HypergraphColoring::paley(*q)?;
            let coloring = constructions::palvolgyi_coloring(&h)?;
            (
                coloring,
                Claim::NoBlueTriangleNoRedInduced { n: *q, r: 2, m: 6 },
                "palvolgyi-paley",
                cert_out.clone(),
            )
        }
        Construction::SixSets { k } => {
            let sets = constructions::six_sets(*k)?;
            match cli.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "k": k,
                        "ground": 3 * k,
                        "sets": sets.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                _ => {
                    for s in &sets {
                        println!("{s}");
                    }
                }
            }
            return Ok(EXIT_OK);
        }
    };

    let cert = Certificate::from_coloring(claim, &coloring, provenance(cli, generator, false))?;
    let report = certstore::verify(&cert)?;
    if let Some(path) = &cert_out {
        write_certificate(path, &cert)?;
    }

    match cli.format {
        Format::Json => {
            let value = serde_json::json!({
                "construction": generator,
                "claim": format!("{}", cert.claim),
                "red_edges": cert.red_edges.len(),
                "digest": cert.digest,
                "verified": report.pass,
                "certificate": cert_out.as_ref().map(|p| p.display().to_string()),
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        _ => {
            println!("construction: {generator}");
            println!("claim: {}", cert.claim);
            println!("red edges: {}", cert.red_edges.len());
            println!("digest: {}", cert.digest);
            println!("verified: {}", if report.pass { "PASS" } else { "FAIL" });
            if let Some(path) = &cert_out {
                println!("certificate: {}", path.display());
            }
        }
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

// ---------------------------------------------------------------- verify

fn verify_cmd(cli: &Ctx, file: &PathBuf, appendix_structure: bool) -> anyhow::Result<u8> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let cert = Certificate::load(&text)?;
    let report = certstore::verify(&cert)?;
    let structure = if appendix_structure {
        Some(certstore::appendix_a_structure_check(&cert)?)
    } else {
        None
    };

    match cli.format {
        Format::Json => {
            let value = serde_json::json!({
                "claim": format!("{}", cert.claim),
                "digest": cert.digest,
                "checks": report.checks,
                "counterexample": report.counterexample,
                "structure_check": structure,
                "verdict": if report.pass { "PASS" } else { "FAIL" },
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        _ => {
            println!("claim: {}", cert.claim);
            println!("digest: {}", cert.digest);
            for check in &report.checks {
                println!("check: {check}");
            }
            if let Some(cx) = &report.counterexample {
                println!("counterexample: {cx}");
            }
            if let Some(st) = structure {
                println!("structure-check: {}", if st { "ok" } else { "failed" });
            }
            println!("verdict: {}", if report.pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(if report.pass && structure != Some(false) {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

// ---------------------------------------------------------------- bounds

fn bounds_cmd(cli: &Ctx, args: BoundsArgs, table: &RamseyTable) -> anyhow::Result<u8> {
    if args.emit_snapshot {
        print!("{}", snapshots::export_snapshot(table));
        return Ok(EXIT_OK);
    }

    if let Some(pair) = &args.alpha_for {
        let (s, t) = parse_pair(pair)?;
        let threshold = bounds::alpha_threshold(table, s, t)?;
        let witness = match &args.alpha {
            Some(text) => {
                let alpha = Ratio::parse(text)?;
                Some((alpha, bounds::min_n_for_alpha(table, s, t, alpha)?))
            }
            None => None,
        };
        match cli.format {
            Format::Json => {
                let value = serde_json::json!({
                    "s": s, "t": t,
                    "threshold": threshold.to_string(),
                    "witness": witness.map(|(alpha, (r, n))| serde_json::json!({
                        "alpha": alpha.to_string(), "r": r, "n": n,
                    })),
                });
                println!("{}", serde_json::to_string_pretty(&value)?);
            }
            _ => {
                println!("threshold: any alpha below {threshold} forces a monochromatic clique");
                if let Some((alpha, (r, n))) = witness {
                    println!("alpha: {alpha}");
                    println!("minimal witness: r = {r}, n = {n}");
                }
            }
        }
        return Ok(EXIT_OK);
    }

    if let Some(sizes) = &args.multicolor {
        let sizes = parse_u8_list(sizes)?;
        let supplied = match &args.m_values {
            Some(text) => Some(
                text.split(',')
                    .map(|p| p.trim().parse::<u64>().map_err(|_| anyhow!("bad m value")))
                    .collect::<Result<Vec<u64>, _>>()?,
            ),
            None => None,
        };
        let r = args.r.ok_or_else(|| anyhow!("--multicolor needs --r"))?;
        let bound = bounds::multicolor_upper(table, r, &sizes, supplied.as_deref())?;
        match cli.format {
            Format::Json => {
                let value = serde_json::json!({
                    "r": r,
                    "sizes": sizes,
                    "upper": bound.value,
                    "inputs": bound.inputs.iter().map(|u| {
                        serde_json::json!({"entry": u.entry, "value": u.value})
                    }).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&value)?);
            }
            _ => {
                let shown: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
                println!(
                    "multicolor upper bound for sizes ({}) at r = {r}: {}",
                    shown.join(","),
                    bound.value
                );
                for input in &bound.inputs {
                    println!("uses: {} = {}", input.entry, input.value);
                }
            }
        }
        return Ok(EXIT_OK);
    }

    let r = args.r.ok_or_else(|| anyhow!("--r is required for a grid"))?;
    let grid = bounds::table(table, r)?;
    match cli.format {
        Format::Text => print!("{}", render::grid_text(&grid)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&render::grid_json(&grid))?),
        Format::Latex => print!("{}", render::grid_latex(&grid)),
    }
    Ok(EXIT_OK)
}

fn parse_pair(text: &str) -> anyhow::Result<(u8, u8)> {
    let parts = parse_u8_list(text)?;
    if parts.len() != 2 {
        bail!("expected S,T");
    }
    Ok((parts[0], parts[1]))
}

fn parse_u8_list(text: &str) -> anyhow::Result<Vec<u8>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u8>()
                .map_err(|_| anyhow!("bad integer {p:?} in list"))
        })
        .collect()
}

// --------------------------------------------------------------- witness

fn branch_tag(branch: Branch) -> &'static str {
    match branch {
        Branch::BaseMono => "base-mono",
        Branch::TailMonoEscape => "tail-mono-escape",
        Branch::TailMonoPigeonhole => "tail-mono-pigeonhole",
        Branch::HeadMonoEscape => "head-mono-escape",
        Branch::HeadMonoPigeonhole => "head-mono-pigeonhole",
    }
}

enum CliOracle {
    Seeded(SeededOracle),
    File(FileOracle),
}

impl PairOracle for CliOracle {
    fn pair_color(&mut self, a: &RSet, b: &RSet) -> Color {
        match self {
            CliOracle::Seeded(o) => o.pair_color(a, b),
            CliOracle::File(o) => o.pair_color(a, b),
        }
    }
}

fn make_oracle(cli: &Ctx, coloring: &str) -> anyhow::Result<CliOracle> {
    if coloring == "random" {
        Ok(CliOracle::Seeded(SeededOracle { seed: cli.seed }))
    } else {
        let text = std::fs::read_to_string(coloring)
            .with_context(|| format!("reading coloring file {coloring}"))?;
        Ok(CliOracle::File(FileOracle::parse(&text)?))
    }
}

fn check_missing(oracle: &CliOracle) -> anyhow::Result<()> {
    if let CliOracle::File(f) = oracle {
        if let Some((a, b)) = f.missing_pair() {
            bail!("coloring file does not answer the pair {a} {b}");
        }
    }
    Ok(())
}

fn print_witness(
    cli: &Ctx,
    queries: &[witness::Query],
    sets: &[RSet; 3],
    color: Color,
    extra: &[(&str, String)],
) -> anyhow::Result<()> {
    match cli.format {
        Format::Json => {
            let mut value = serde_json::json!({
                "witness": sets.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "color": color.letter().to_string(),
                "queries": queries.len(),
                "transcript": queries.iter().map(|q| {
                    serde_json::json!({
                        "a": q.a.to_string(),
                        "b": q.b.to_string(),
                        "answer": q.answer.letter().to_string(),
                    })
                }).collect::<Vec<_>>(),
            });
            for (key, val) in extra {
                value[*key] = serde_json::Value::String(val.clone());
            }
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        _ => {
            for q in queries {
                println!("QUERY {} {} -> {}", q.a, q.b, q.answer.letter());
            }
            println!("witness: {} {} {}", sets[0], sets[1], sets[2]);
            println!("color: {}", color.letter());
            for (key, val) in extra {
                println!("{key}: {val}");
            }
            println!("queries: {}", queries.len());
        }
    }
    Ok(())
}

fn witness_cmd(cli: &Ctx, finder: WitnessCommand) -> anyhow::Result<u8> {
    match finder {
        WitnessCommand::Beta73 { k, coloring } => {
            let mut oracle = make_oracle(cli, &coloring)?;
            let found = witness::beta_73_witness(k, &mut oracle)?;
            check_missing(&oracle)?;
            print_witness(
                cli,
                &found.witness.queries,
                &found.witness.sets,
                found.witness.color,
                &[
                    ("branch", branch_tag(found.branch).to_string()),
                    ("mirrored", found.mirrored.to_string()),
                ],
            )?;
            Ok(EXIT_OK)
        }
        WitnessCommand::Beta3 { k, coloring } => {
            let mut oracle = make_oracle(cli, &coloring)?;
            let found = witness::beta_3_witness(k, &mut oracle)?;
            check_missing(&oracle)?;
            print_witness(cli, &found.queries, &found.sets, found.color, &[])?;
            Ok(EXIT_OK)
        }
        WitnessCommand::Afl {
            n,
            r,
            targets,
            trials,
        } => {
            let targets: Vec<usize> = targets
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| anyhow!("bad target")))
                .collect::<Result<_, _>>()?;
            let parts = targets.len() as u8;
            let mut example = None;
            for trial in 0..trials {
                let seed = cli.seed.wrapping_add(trial);
                let partition = witness::random_partition(n, r, parts, seed)?;
                match witness::afl_check(n, r, &partition, &targets) {
                    Ok((part, family)) => {
                        if example.is_none() {
                            let names: Vec<String> =
                                family.members().iter().map(|s| s.to_string()).collect();
                            example = Some((part, names.join(" ")));
                        }
                    }
                    Err(kneser_core::Error::TheoremViolation(what)) => {
                        println!("trials: {trials}");
                        println!("ALARM at trial {trial}: {what}");
                        return Ok(EXIT_FAIL);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            let (part, family) = example.expect("at least one trial");
            match cli.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "n": n, "r": r, "targets": targets,
                        "trials": trials,
                        "alarms": 0,
                        "example": {"part": part, "family": family},
                    });
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                _ => {
                    println!("trials: {trials}");
                    println!("alarms: 0");
                    println!("example: part {part} family {family}");
                }
            }
            Ok(EXIT_OK)
        }
    }
}

// ---------------------------------------------------------------- export

fn export_cmd(
    file: &PathBuf,
    dimacs: bool,
    out: Option<PathBuf>,
    model_out: Option<PathBuf>,
) -> anyhow::Result<u8> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let cert = Certificate::load(&text)?;
    let Claim::GoodColoring { n, r, s, t } = cert.claim else {
        bail!("only good-coloring certificates export to DIMACS");
    };
    let graph = KneserGraph::build(n, r)?;
    let formula = sat::encode(&graph, s as usize, t as usize)?;
    let coloring = cert.coloring()?;

    if dimacs {
        let cnf = formula.to_dimacs_string();
        match &out {
            Some(path) => std::fs::write(path, cnf)
                .with_context(|| format!("writing {}", path.display()))?,
            None => {
                std::io::stdout().write_all(cnf.as_bytes())?;
            }
        }
    }
    if let Some(path) = &model_out {
        let model: Vec<bool> = (0..graph.edge_count() as u32)
            .map(|e| coloring.color_of(e) == Color::Red)
            .collect();
        let mut text = String::new();
        sat::emit_dimacs_model(&model, &mut text).expect("string write");
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    if !dimacs && model_out.is_none() {
        bail!("nothing to export: pass --dimacs and/or --model-out");
    }
    Ok(EXIT_OK)
}

// ----------------------------------------------------------------- stats

fn stats_cmd(cli: &Ctx, n: u8, r: u8, k: usize) -> anyhow::Result<u8> {
    let graph = KneserGraph::build(n, r)?;
    let vcount = graph.vertex_count();
    let count = parallel_clique_count(&graph, k, cli.jobs.max(1));

    let proper = if n as u16 >= 2 * r as u16 {
        Some(n as u16 - 2 * r as u16 + 2)
    } else {
        None
    };
    match cli.format {
        Format::Json => {
            let value = serde_json::json!({
                "n": n, "r": r,
                "vertices": vcount,
                "edges": graph.edge_count(),
                "degree": if vcount > 0 { graph.degree(0) } else { 0 },
                "proper_colors": proper,
                "clique_size": k,
                "clique_count": count,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        _ => {
            println!("graph: KG({n},{r})");
            println!("vertices: {vcount}");
            println!("edges: {}", graph.edge_count());
            println!("degree: {}", if vcount > 0 { graph.degree(0) } else { 0 });
            match proper {
                Some(c) => println!("proper-colors: {c}"),
                None => println!("proper-colors: n/a (n < 2r)"),
            }
            println!("cliques[k={k}]: {count}");
        }
    }
    Ok(EXIT_OK)
}

/// Deterministic parallel clique counting: partition on the least vertex
/// rank, count per partition, sum.
fn parallel_clique_count(graph: &KneserGraph, k: usize, jobs: usize) -> u64 {
    let v = graph.vertex_count() as u32;
    if jobs <= 1 || v < 2 {
        return graph.clique_count_in(k, 0, v);
    }
    let chunk = v.div_ceil(jobs as u32).max(1);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for j in 0..jobs as u32 {
            let lo = (j * chunk).min(v);
            let hi = ((j + 1) * chunk).min(v);
            handles.push(scope.spawn(move || graph.clique_count_in(k, lo, hi)));
        }
        handles.into_iter().map(|h| h.join().expect("counter")).sum()
    })
}
