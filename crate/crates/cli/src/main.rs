//! `reptile`: classify candidate reptile trapezoids, search for and verify
//! rep-n tilings, and render or compose them.
//!
//! Exit codes: 0 ok, 1 refuted / verification failed / no tiling exists,
//! 2 usage error, 3 inconclusive search.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use reptile_core::filters::{classify, enumerate_right, EnumerateGrid, FilterOptions};
use reptile_core::geometry::{region_family, RegionKind};
use reptile_core::search::{refute_small_n, search_rep, OrientationSet, SearchOptions, SearchStatus, SmallNVerdict};
use reptile_core::tiling::{parse_tiling, render_svg, serialize_tiling, substitute, verify_tiling, Tiling};
use reptile_core::{QuadVal, Rat, TrapezoidSpec};

use config::Config;

#[derive(Parser, Debug)]
#[command(
    name = "reptile",
    version,
    about = "Exact search and verification of reptile trapezoids"
)]
struct Cli {
    /// key=value file supplying defaults for any long flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Add approximate decimal columns to reports
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every necessary condition on one trapezoid
    Classify(ClassifyArgs),
    /// Search exhaustively for a rep-n tiling
    Search(SearchArgs),
    /// Check a tiling file exactly
    Verify { file: PathBuf },
    /// Write a tiling as SVG
    Render {
        file: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Scan a grid of right trapezoids through the filters
    Enumerate(EnumerateArgs),
    /// Compose a rep-n tiling with itself into a rep-n² tiling
    Substitute {
        file: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Emit the vertices of a helper region
    Regions(RegionArgs),
}

#[derive(Args, Debug, Clone)]
struct TileArgs {
    /// right, iso or gen
    kind: String,
    /// e.g. 1/3*pi, pi/3 or acos(3/5)
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    /// second base angle, gen only
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
    /// upper base, e.g. 1/8 or 1/2*sqrt(2)
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// acute or obtuse, gen only
    #[arg(long)]
    class: Option<String>,
}

impl TileArgs {
    fn spec(&self) -> Result<TrapezoidSpec> {
        let mut lit = format!("{}(theta={}", self.kind, self.theta);
        if let Some(p) = &self.psi {
            write!(lit, ", psi={}", p)?;
        }
        write!(lit, ", a={}", self.a)?;
        if let Some(c) = &self.class {
            write!(lit, ", class={}", c)?;
        }
        lit.push(')');
        lit.parse().map_err(|e| anyhow!("{}: {}", lit, e))
    }
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    tile: TileArgs,
    #[arg(long)]
    rho_max: Option<u32>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    tile: TileArgs,
    #[arg(long)]
    n: u32,
    /// full-group or axis-aligned
    #[arg(long)]
    orientations: Option<OrientationSet>,
    #[arg(long)]
    node_budget: Option<u64>,
    /// seconds
    #[arg(long)]
    time_budget: Option<u64>,
    #[arg(long)]
    no_cover_pruning: bool,
    #[arg(long)]
    no_angle_pruning: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Write the tiling here when one is found
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write the proof log here
    #[arg(long)]
    proof_log: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// only `right` grids are supported
    kind: String,
    #[arg(long)]
    qmax: Option<i64>,
    #[arg(long)]
    denmax: Option<i64>,
    #[arg(long)]
    amax: Option<String>,
    #[arg(long)]
    rho_max: Option<u32>,
}

#[derive(Args, Debug)]
struct RegionArgs {
    /// M_hat, S_hat or S2_hat
    region: RegionKind,
    #[command(flatten)]
    tile: TileArgs,
    #[arg(long)]
    rho: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// Failure with a specific exit code and message.
struct Exit(u8, String);

type Run = std::result::Result<(String, u8), Exit>;

fn usage(e: anyhow::Error) -> Exit {
    Exit(2, format!("error: {:#}", e))
}

fn read_tiling(path: &Path) -> std::result::Result<Tiling, Exit> {
    let text = std::fs::read_to_string(path).map_err(|e| Exit(2, format!("error: {}: {}", path.display(), e)))?;
    parse_tiling(&text).map_err(|e| Exit(2, format!("error: {}: {}", path.display(), e)))
}

fn write_out(path: &Path, text: &str) -> std::result::Result<(), Exit> {
    std::fs::write(path, text).map_err(|e| Exit(2, format!("error: {}: {}", path.display(), e)))
}

fn decimal(x: &QuadVal) -> String {
    format!("{:.12}", x.to_f64())
}

fn run(cli: Cli) -> Run {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(usage)?,
        None => Config::default(),
    };
    let dec = cli.decimal || cfg.flag("decimal").map_err(usage)?;
    match cli.command {
        Command::Classify(args) => {
            let t = args.tile.spec().map_err(usage)?;
            let rho_max = match args.rho_max {
                Some(r) => r,
                None => cfg
                    .get("rho-max")
                    .map_err(usage)?
                    .unwrap_or(FilterOptions::default().rho_max),
            };
            let verdict = classify(&t, &FilterOptions { rho_max }).map_err(|e| usage(e.into()))?;
            let mut out = format!("trapezoid\t{}\n", t);
            if dec {
                writeln!(
                    out,
                    "decimal\ta={} b={} h={}",
                    decimal(t.a()),
                    decimal(t.b()),
                    decimal(t.h())
                )
                .ok();
            }
            out.push_str(&verdict.report());
            out.push('\n');
            Ok((out, if verdict.survives() { 0 } else { 1 }))
        }
        Command::Search(args) => {
            let t = args.tile.spec().map_err(usage)?;
            let defaults = SearchOptions::default();
            let width = match args.threads {
                Some(w) => w,
                None => match std::env::var("REPTILE_THREADS") {
                    Ok(v) => v
                        .parse()
                        .map_err(|_| Exit(2, format!("error: REPTILE_THREADS={} is not a number", v)))?,
                    Err(_) => cfg.get("threads").map_err(usage)?.unwrap_or(defaults.parallel_width),
                },
            };
            let opts = SearchOptions {
                orientation_set: match args.orientations {
                    Some(o) => o,
                    None => cfg
                        .get("orientations")
                        .map_err(usage)?
                        .unwrap_or(defaults.orientation_set),
                },
                node_budget: match args.node_budget {
                    Some(b) => b,
                    None => cfg.get("node-budget").map_err(usage)?.unwrap_or(defaults.node_budget),
                },
                time_budget: match args.time_budget {
                    Some(s) => Duration::from_secs(s),
                    None => cfg
                        .get("time-budget")
                        .map_err(usage)?
                        .map_or(defaults.time_budget, Duration::from_secs),
                },
                use_cover_pruning: !(args.no_cover_pruning || cfg.flag("no-cover-pruning").map_err(usage)?),
                use_angle_pruning: !(args.no_angle_pruning || cfg.flag("no-angle-pruning").map_err(usage)?),
                parallel_width: width.max(1),
                ..defaults
            };
            if opts.node_budget == 0 || opts.time_budget.is_zero() {
                return Err(Exit(2, "error: budgets must be positive".into()));
            }
            let mut out = format!("trapezoid\t{}\nn\t{}\n", t, args.n);
            if t.is_right() {
                if let Ok(SmallNVerdict::Refuted(why)) = refute_small_n(&t, args.n) {
                    writeln!(out, "small-n\trefuted\t{}", why).ok();
                }
            }
            let outcome = match search_rep(&t, args.n, &opts) {
                Ok(o) => o,
                Err(reptile_core::search::SearchError::NotAdmissible { n, d }) => {
                    writeln!(out, "status\texhausted-none\t√{} is not in Q(√{})", n, d).ok();
                    return Ok((out, 1));
                }
                Err(e) => return Err(Exit(2, format!("error: {}", e))),
            };
            writeln!(out, "{}", outcome.summary().replace(' ', "\t")).ok();
            if let Some(path) = &args.proof_log {
                let mut log = outcome.proof_log.join("\n");
                log.push('\n');
                write_out(path, &log)?;
            }
            if let Some(tiling) = &outcome.tiling {
                let text = serialize_tiling(tiling).map_err(|e| Exit(2, format!("error: {}", e)))?;
                match &args.out {
                    Some(path) => write_out(path, &text)?,
                    None => out.push_str(&text),
                }
            }
            let code = match outcome.status {
                SearchStatus::Found => 0,
                SearchStatus::ExhaustedNone => 1,
                SearchStatus::BudgetExceeded => 3,
            };
            Ok((out, code))
        }
        Command::Verify { file } => {
            let t = read_tiling(&file)?;
            match verify_tiling(&t) {
                Ok(()) => Ok((format!("ok\t{} tiles\t{}\n", t.tiles.len(), t.base), 0)),
                Err(vs) => {
                    let mut out = String::new();
                    for v in vs {
                        writeln!(out, "violation\t{}", v).ok();
                    }
                    Ok((out, 1))
                }
            }
        }
        Command::Render { file, out } => {
            let t = read_tiling(&file)?;
            if let Err(vs) = verify_tiling(&t) {
                return Err(Exit(1, format!("error: tiling does not verify: {}", vs[0])));
            }
            render_svg(&t, &out).map_err(|e| Exit(2, format!("error: {}", e)))?;
            Ok((format!("wrote\t{}\n", out.display()), 0))
        }
        Command::Enumerate(args) => {
            if args.kind != "right" {
                return Err(Exit(
                    2,
                    format!("error: enumerate supports `right`, not `{}`", args.kind),
                ));
            }
            let d = EnumerateGrid::default();
            let grid = EnumerateGrid {
                qmax: match args.qmax {
                    Some(v) => v,
                    None => cfg.get("qmax").map_err(usage)?.unwrap_or(d.qmax),
                },
                denmax: match args.denmax {
                    Some(v) => v,
                    None => cfg.get("denmax").map_err(usage)?.unwrap_or(d.denmax),
                },
                amax: match args.amax.or(cfg.get::<String>("amax").map_err(usage)?) {
                    Some(s) => s.parse::<Rat>().map_err(|e| Exit(2, format!("error: amax: {}", e)))?,
                    None => d.amax,
                },
            };
            let rho_max = match args.rho_max {
                Some(r) => r,
                None => cfg
                    .get("rho-max")
                    .map_err(usage)?
                    .unwrap_or(FilterOptions::default().rho_max),
            };
            let report = enumerate_right(&grid, &FilterOptions { rho_max }).map_err(|e| usage(e.into()))?;
            let mut out = format!(
                "grid\tqmax={} denmax={} amax={}\nangles\t{} scanned\t{} surviving\ncandidates\t{}\n",
                grid.qmax,
                grid.denmax,
                grid.amax,
                report.angles_scanned,
                report.angles_surviving.len(),
                report.candidates_scanned
            );
            for (theta, a) in &report.survivors {
                write!(out, "survivor\t{}\t{}", theta, a).ok();
                if dec {
                    write!(
                        out,
                        "\t{:.12}\t{}",
                        theta.ratio().to_f64() * std::f64::consts::PI,
                        decimal(a)
                    )
                    .ok();
                }
                out.push('\n');
            }
            Ok((out, 0))
        }
        Command::Substitute { file, out } => {
            let t = read_tiling(&file)?;
            let s = substitute(&t).map_err(|e| Exit(1, format!("error: {}", e)))?;
            let text = serialize_tiling(&s).map_err(|e| Exit(2, format!("error: {}", e)))?;
            match out {
                Some(path) => {
                    write_out(&path, &text)?;
                    Ok((format!("wrote\t{}\t{} tiles\n", path.display(), s.tiles.len()), 0))
                }
                None => Ok((text, 0)),
            }
        }
        Command::Regions(args) => {
            let t = args.tile.spec().map_err(usage)?;
            let alpha: QuadVal = args
                .alpha
                .parse()
                .map_err(|e| Exit(2, format!("error: alpha: {}", e)))?;
            let poly =
                region_family(args.region, &t, args.rho, &alpha).map_err(|e| Exit(2, format!("error: {}", e)))?;
            let text = poly.to_text(t.radicand());
            match args.out {
                Some(path) => {
                    write_out(&path, &text)?;
                    Ok((format!("wrote\t{}\n", path.display()), 0))
                }
                None => Ok((text, 0)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse().context("parsing arguments") {
        Ok(c) => c,
        Err(e) => {
            let clap_err = e.downcast::<clap::Error>().expect("clap error");
            let code = if clap_err.use_stderr() { 2 } else { 0 };
            let _ = clap_err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{}", out);
            ExitCode::from(code)
        }
        Err(Exit(code, msg)) => {
            eprintln!("{}", msg);
            ExitCode::from(code)
        }
    }
}
