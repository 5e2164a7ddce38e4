use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use vguard::bench::{run_suite, summarize, to_csv, BenchConfig, Suite};
use vguard::decomp::DEFAULT_CELL_CAP;
use vguard::geom::reflex_vertices;
use vguard::guards::{
    solve_ghosh_with, solve_hybrid_with, solve_optimal, solve_weakvis6_with, verify_guards,
    CoverageMode, GhoshOptions, GuardSolution, HybridOptions, VerifyOptions, WeakVisInstance,
    WeakVisOptions,
};
use vguard::io::{emit_polygon, parse_polygon, solution_from_json, solution_to_json, PolygonFile};
use vguard::polygen::{gen_convex, gen_simple, gen_weakvis, validate_weakvis, GenConfig};
use vguard::render::{render_svg, RenderOptions};

#[derive(Parser)]
#[command(name = "vguard", version, about = "Vertex guards for simple polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random polygon file.
    Generate(GenerateArgs),
    /// Place guards on a polygon.
    Solve(SolveArgs),
    /// Run an experiment suite and write a CSV table.
    Bench(BenchArgs),
    /// Draw a polygon, and optionally a solution, as SVG.
    Render(RenderArgs),
    /// Re-check a solution, or the weak visibility of a polygon's edge.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Weakvis,
    Simple,
    Convex,
}

#[derive(Args)]
struct GenerateArgs {
    kind: Kind,
    /// Spokes for weakvis (2n+1 vertices), hull vertices otherwise.
    #[arg(long)]
    n: usize,
    /// Reflex vertices to add (simple only).
    #[arg(long, default_value_t = 0)]
    reflex: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Ghosh,
    Weakvis6,
    Hybrid,
    Optimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Components,
    Vertices,
}

impl From<Mode> for CoverageMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Components => CoverageMode::Components,
            Mode::Vertices => CoverageMode::Vertices,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    algo: Algo,
    input: PathBuf,
    /// Weak-visibility edge, overriding the file's EDGE line.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    edge: Option<Vec<usize>>,
    /// Print the full solution as JSON.
    #[arg(long)]
    json: bool,
    /// Re-check coverage and fail when it does not hold.
    #[arg(long)]
    verify: bool,
    /// The constant c of the hybrid rule r - c <= log2 log2 n.
    #[arg(long, default_value_t = 1.0)]
    hybrid_c: f64,
    #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
    cell_cap: usize,
    /// Coverage notion for the optimal solver.
    #[arg(long, value_enum, default_value_t = Mode::Components)]
    mode: Mode,
    /// Stop the greedy solver once all vertices are seen.
    #[arg(long)]
    vertex_stop: bool,
    /// Let weakvis6 add guards until the interior, not just the vertices, is seen.
    #[arg(long)]
    complete: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Number of consecutive seeds.
    #[arg(long, default_value_t = 30)]
    seeds: u64,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    hybrid_c: f64,
    #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
    cell_cap: usize,
    /// Largest instance the exact oracle runs on.
    #[arg(long, default_value_t = 15)]
    oracle_max_n: usize,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: vguard::Error| e.to_string())
}

#[derive(Args)]
struct RenderArgs {
    input: PathBuf,
    /// Solution JSON from `solve --json`.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// SVG output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Solution JSON to check; without it the file's edge is validated.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Coverage notion; defaults to the one the solution was built for.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
    cell_cap: usize,
}

fn read_polygon(path: &Path) -> Result<PolygonFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_polygon(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_solution(path: &Path) -> Result<GuardSolution> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    solution_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let cfg = GenConfig::default().with_seed(a.seed).with_n(a.n).with_reflex(a.reflex);
    let mut file = match a.kind {
        Kind::Weakvis => {
            let inst = gen_weakvis(&cfg)?;
            let mut f = PolygonFile::new(inst.polygon().clone());
            f.edge = Some(inst.edge());
            f
        }
        Kind::Simple => PolygonFile::new(gen_simple(&cfg)?),
        Kind::Convex => PolygonFile::new(gen_convex(a.n, a.seed)?),
    };
    file.seed = Some(a.seed);
    write_or_print(a.out.as_deref(), &emit_polygon(&file))?;
    let summary = format!(
        "n {} r {} seed {}",
        file.polygon.len(),
        reflex_vertices(&file.polygon).len(),
        a.seed
    );
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn solve(a: SolveArgs) -> Result<bool> {
    let file = read_polygon(&a.input)?;
    let poly = &file.polygon;
    let ghosh = GhoshOptions {
        cell_cap: a.cell_cap,
        stop_at_vertex_cover: a.vertex_stop,
        ..GhoshOptions::default()
    };
    let sol = match a.algo {
        Algo::Ghosh => solve_ghosh_with(poly, &ghosh)?,
        Algo::Weakvis6 => {
            let (u, v) = match (&a.edge, file.edge) {
                (Some(e), _) => (e[0], e[1]),
                (None, Some(e)) => e,
                (None, None) => bail!("weakvis6 needs an EDGE line or --edge"),
            };
            let inst = WeakVisInstance::new(poly.clone(), u, v)?;
            let opts = WeakVisOptions {
                complete_interior: a.complete,
                cell_cap: a.cell_cap,
            };
            solve_weakvis6_with(&inst, &opts)?
        }
        Algo::Hybrid => solve_hybrid_with(
            poly,
            &HybridOptions {
                c: a.hybrid_c,
                ghosh,
            },
        )?,
        Algo::Optimal => solve_optimal(poly, a.mode.into())?,
    };
    if a.json {
        println!("{}", solution_to_json(&sol));
    } else {
        println!("algorithm {}", sol.algorithm);
        println!("guards {}", sol.len());
        for (g, p) in sol.guards.iter().zip(&sol.guard_points) {
            println!("{g} {} {}", p.x, p.y);
        }
        println!("seconds {:.6}", sol.elapsed);
    }
    if a.verify {
        let opts = VerifyOptions {
            cell_cap: a.cell_cap,
            ..VerifyOptions::default()
        };
        let report = verify_guards(poly, &sol.guards, sol.mode, &opts)?;
        eprintln!("verify {}: {}", if report.pass { "pass" } else { "FAIL" }, report.describe());
        return Ok(report.pass);
    }
    Ok(true)
}

fn bench(a: BenchArgs) -> Result<bool> {
    let mut cfg = BenchConfig::new(a.suite, a.seed..a.seed + a.seeds);
    cfg.hybrid_c = a.hybrid_c;
    cfg.cell_cap = a.cell_cap;
    cfg.oracle_max_n = a.oracle_max_n;
    let rows = run_suite(&cfg);
    write_or_print(a.out.as_deref(), &to_csv(&rows))?;
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("{} {}: {}", r.instance, r.algo, r.error.as_deref().unwrap_or(""));
    }
    eprintln!("suite {} seeds {}..{}", a.suite, a.seed, a.seed + a.seeds);
    for s in summarize(&rows) {
        eprintln!("{s}");
    }
    Ok(rows.is_empty() || rows.iter().any(|r| r.error.is_none()))
}

fn render(a: RenderArgs) -> Result<()> {
    let file = read_polygon(&a.input)?;
    let guards = match &a.solution {
        Some(p) => read_solution(p)?.guards,
        None => Vec::new(),
    };
    if let Some(&g) = guards.iter().find(|&&g| g >= file.polygon.len()) {
        bail!("guard index {g} is out of range");
    }
    let opts = RenderOptions {
        edge: file.edge,
        ..RenderOptions::default()
    };
    write_or_print(a.out.as_deref(), &render_svg(&file.polygon, &guards, &opts))
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let file = read_polygon(&a.input)?;
    let Some(path) = &a.solution else {
        let Some(edge) = file.edge else {
            bail!("nothing to verify: pass --solution or use a file with an EDGE line");
        };
        let report = validate_weakvis(&file.polygon, edge);
        println!("weak visibility from ({}, {}): {}", edge.0, edge.1, report.describe());
        return Ok(report.pass);
    };
    let sol = read_solution(path)?;
    let mode = a.mode.map(CoverageMode::from).unwrap_or(sol.mode);
    let opts = VerifyOptions {
        cell_cap: a.cell_cap,
        ..VerifyOptions::default()
    };
    let report = verify_guards(&file.polygon, &sol.guards, mode, &opts)?;
    println!(
        "{} ({:?}, {} samples): {}",
        if report.pass { "pass" } else { "FAIL" },
        mode,
        report.samples,
        report.describe()
    );
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => generate(a).map(|_| true),
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Render(a) => render(a).map(|_| true),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
