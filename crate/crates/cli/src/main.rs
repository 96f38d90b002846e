use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regpow::edge_ideal::{
    colon_by_even_connection, colon_direct, edge_ideal, EdgeProduct, GeneratorOrigin,
};
use regpow::enumeration::{Family, GraphFamilySpec};
use regpow::homology::{regularity_monomial, Engine, OracleConfig};
use regpow::verify::{self, parse_powers, Status, VerifyOptions};
use regpow::{analyze, Error, Graph, MonomialIdeal};

const EXIT_FAILURE: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_COLON_MISMATCH: u8 = 3;
const EXIT_RESOURCE_LIMIT: u8 = 4;

#[derive(Parser)]
#[command(name = "regpow", version)]
#[command(
    about = "Regularity of powers of edge ideals: closed forms, an exact oracle, and a verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form regularity of a forest, cycle or unicyclic graph and its powers.
    Analyze(AnalyzeArgs),

    /// Regularity of I(G)^s (or of a monomial ideal) by Hochster's formula.
    Oracle(OracleArgs),

    /// Generators of (I(G)^(s+1) : M) for an s-fold edge product M.
    Colon(ColonArgs),

    /// Check the closed forms against the oracle over a family of small graphs.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Edge-list file (`a b` per line).
    file: PathBuf,

    /// Largest power in the table.
    #[arg(long, default_value_t = 3)]
    max_power: u32,

    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Multigraded,
    Hochster,
}

#[derive(Args)]
struct OracleArgs {
    /// Edge-list file, or an ideal such as `x^2*y, y*z` with --ideal.
    file: PathBuf,

    #[arg(long, default_value_t = 1)]
    power: u32,

    /// Read the file as a monomial ideal instead of a graph.
    #[arg(long)]
    ideal: bool,

    /// Refuse scans over more polarized variables than this.
    #[arg(long, default_value_t = regpow::homology::DEFAULT_MAX_VARS)]
    max_vars: usize,

    /// Lift the variable limit (long runs).
    #[arg(long)]
    heavy: bool,

    /// Print the subset attaining the maximum.
    #[arg(long)]
    emit_witness: bool,

    #[arg(long, value_enum, default_value_t = EngineArg::Multigraded)]
    engine: EngineArg,

    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ColonArgs {
    file: PathBuf,

    /// Edge product as `a,b;c,d;...`.
    #[arg(long)]
    product: String,

    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// unicyclic, forest or cycle-with-forest.
    #[arg(long)]
    family: Family,

    #[arg(long)]
    max_vertices: usize,

    /// Smallest vertex count (cycle length for cycle-with-forest).
    #[arg(long)]
    min_vertices: Option<usize>,

    /// Pendant edges grown on each cycle (cycle-with-forest only).
    #[arg(long, default_value_t = 2)]
    max_forest_edges: usize,

    /// Powers to check, `a..b` inclusive.
    #[arg(long, default_value = "1..2")]
    powers: String,

    /// One graph per isomorphism class.
    #[arg(long)]
    dedup: bool,

    /// Restrict to these claims (comma separated).
    #[arg(long, value_delimiter = ',')]
    claims: Option<Vec<String>>,

    #[arg(long, default_value_t = regpow::homology::DEFAULT_MAX_VARS)]
    max_vars: usize,

    #[arg(long)]
    heavy: bool,

    #[arg(long)]
    json: bool,

    /// Include per-graph wall-clock times (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Classification { .. } | Error::Unsupported(_) => EXIT_UNSUPPORTED,
            Error::ResourceLimit { .. } => EXIT_RESOURCE_LIMIT,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse_edge_list(&read(path)?).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("REGPOW_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Colon(args) => cmd_colon(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.file)?;
    let report = analyze(&g, args.max_power).map_err(|e| {
        let mut f = Failure::from(e);
        if f.code == EXIT_UNSUPPORTED {
            f.message
                .push_str("; no closed form applies, use `regpow oracle` instead");
        }
        f
    })?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_table());
    }
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> Result<u8, Failure> {
    let text = read(&args.file)?;
    let base = if args.ideal {
        MonomialIdeal::parse(&text).map_err(|e| fail(format!("{}: {e}", args.file.display())))?
    } else {
        edge_ideal(
            &Graph::parse_edge_list(&text)
                .map_err(|e| fail(format!("{}: {e}", args.file.display())))?,
        )
    };
    let ideal = base.power(args.power)?;
    let config = OracleConfig {
        max_vars: args.max_vars,
        allow_heavy: args.heavy,
        engine: match args.engine {
            EngineArg::Multigraded => Engine::Multigraded,
            EngineArg::Hochster => Engine::Hochster,
        },
    };
    let result = regularity_monomial(&ideal, &config)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&result).expect("result serializes")
        );
        return Ok(0);
    }
    println!("reg          {}", result.regularity);
    println!("power        {}", args.power);
    println!("variables    {} (polarized, used)", result.variables);
    println!("field        characteristic {}", result.characteristic);
    if args.emit_witness {
        match &result.witness {
            Some(w) => println!(
                "witness      W = {{{}}}, reduced H_{} of the restriction is nonzero",
                w.subset.join(", "),
                w.homology_degree
            ),
            None => println!("witness      none (zero ideal)"),
        }
    }
    Ok(0)
}

fn cmd_colon(args: ColonArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.file)?;
    let m = EdgeProduct::parse(&g, &args.product)?;
    let colon = colon_by_even_connection(&g, &m)?;
    let direct = colon_direct(&g, &m)?;
    let matches = colon.ideal == direct;
    if args.json {
        let generators: Vec<_> = colon
            .generators
            .iter()
            .map(|c| {
                serde_json::json!({
                    "generator": c.monomial.render(g.labels()),
                    "origin": c.origin,
                    "witness": c.witness.as_ref().map(|p| p.iter().map(|&v| g.label(v)).collect::<Vec<_>>()),
                })
            })
            .collect();
        let out = serde_json::json!({
            "product": m.render(&g),
            "power": m.len() + 1,
            "generators": generators,
            "matches_direct_colon": matches,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("(I^{} : {})", m.len() + 1, m.monomial().render(g.labels()));
        for c in &colon.generators {
            let tag = match c.origin {
                GeneratorOrigin::Edge => "edge".to_string(),
                GeneratorOrigin::EvenConnection | GeneratorOrigin::EvenLoop => {
                    let path = c
                        .witness
                        .as_ref()
                        .map(|p| p.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join("-"));
                    format!("even-connected via {}", path.unwrap_or_default())
                }
            };
            println!("  {:<10} {}", c.monomial.render(g.labels()), tag);
        }
        println!(
            "direct colon {}",
            if matches { "agrees" } else { "DIFFERS" }
        );
    }
    if !matches {
        eprintln!(
            "error: even-connection colon {} differs from direct colon {}",
            colon.ideal, direct
        );
        return Ok(EXIT_COLON_MISMATCH);
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let mut spec = GraphFamilySpec::new(args.family, args.max_vertices)
        .with_dedup(args.dedup)
        .with_max_forest_edges(args.max_forest_edges);
    if let Some(min) = args.min_vertices {
        spec = spec.with_min_vertices(min);
    }
    let options = VerifyOptions {
        powers: parse_powers(&args.powers)?,
        claims: args.claims,
        oracle: OracleConfig {
            max_vars: args.max_vars,
            allow_heavy: args.heavy,
            ..OracleConfig::default()
        },
        timings: args.timings,
    };
    let (records, summary) = verify::run(&spec, &options)?;
    if args.json {
        let out = serde_json::json!({ "spec": spec, "records": records, "summary": summary });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        for r in &records {
            for c in &r.claims {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                println!(
                    "{status} {:<22} #{:<4} {:<28} expected {} actual {}  [{}]",
                    c.claim, r.index, c.detail, c.expected, c.actual, r.graph
                );
            }
            if let Some(ms) = r.elapsed_ms {
                println!("     #{} took {ms} ms", r.index);
            }
        }
        println!("{}", summary.line());
    }
    Ok(if summary.failed == 0 { 0 } else { EXIT_FAILURE })
}
