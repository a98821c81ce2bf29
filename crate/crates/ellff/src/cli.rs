//! Command-line front end: `ffell`.
//!
//! Subcommands:
//!
//! * `lfun` — L-function, sign, and analytic rank of one curve, optionally a
//!   quadratic twist (`--twist`) or a pullback (`--theta`) of it;
//! * `family` — sweep the quadratic-twist family up to `--max-deg` and report
//!   rank statistics, to stdout or as CSV files under `--out`;
//! * `tables build|info` — build or inspect the on-disk trace-table cache;
//! * `decompose` — express a curve as a twist of the versal pullback;
//! * `signs` — twist-sign statistics and character-sum checks per degree.
//!
//! A curve is selected either by name (`--curve X222|X211|X321|X431|VERSAL`)
//! or by coefficients (`--a`, `--b` in the polynomial grammar, e.g.
//! `--a "t^3+2*t" --b 4`). The cache directory is `--cache-dir`, else
//! `ELLFF_CACHE_DIR`, else `./ellff-cache`. Exit codes: 0 success, 1 math or
//! consistency failure, 2 usage error.

use crate::curve::{make_curve, CurveModel};
use crate::error::{Error, Result};
use crate::experiments::{
    emit, emit_signs, named_curve, run_family, sign_stats, CurveId, FamilyOpts, FamilySpec,
};
use crate::lfunction::{compute_l, ComputeOpts};
use crate::poly::{poly_from_str, rational_from_str};
use crate::tables::{cache_get_or_build, CacheStore, TableStrategy};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "ffell",
    version,
    about = "Exact L-functions of elliptic curves over F_q(t)"
)]
struct Cli {
    /// Worker threads for table builds and family sweeps.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Trace-table cache directory (default: $ELLFF_CACHE_DIR or ./ellff-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute L(T), the sign, and the analytic rank of one curve.
    Lfun(LfunArgs),
    /// Sweep the quadratic-twist family and report rank statistics.
    Family(FamilyArgs),
    /// Build or inspect cached trace tables.
    Tables(TablesArgs),
    /// Write a curve as a quadratic twist of the versal pullback.
    Decompose(CurveArgs),
    /// Twist-sign statistics per degree.
    Signs(SignsArgs),
}

/// Curve selection shared by every subcommand.
#[derive(Args)]
#[command(group(ArgGroup::new("selector").required(true).args(["curve", "a"])))]
struct CurveArgs {
    /// Field size q (an odd prime, at least 5).
    #[arg(long)]
    q: u64,
    /// Named curve: X222, X211, X321, X431, or VERSAL.
    #[arg(long)]
    curve: Option<String>,
    /// Coefficient a(t) of y^2 = x^3 + a x + b (polynomial or rational).
    #[arg(long, requires = "b")]
    a: Option<String>,
    /// Coefficient b(t) of y^2 = x^3 + a x + b.
    #[arg(long, requires = "a", conflicts_with = "curve")]
    b: Option<String>,
}

impl CurveArgs {
    fn build(&self) -> Result<CurveModel> {
        if let Some(name) = &self.curve {
            let id = CurveId::parse(name).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown curve {name}; expected X222, X211, X321, X431, or VERSAL"
                ))
            })?;
            return named_curve(id, self.q);
        }
        let a = rational_from_str(self.q, self.a.as_deref().unwrap_or("0"))?;
        let b = rational_from_str(self.q, self.b.as_deref().unwrap_or("0"))?;
        make_curve(a, b)
    }
}

#[derive(Args)]
struct LfunArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Twist the selected curve by this monic squarefree polynomial.
    #[arg(long, conflicts_with = "theta")]
    twist: Option<String>,
    /// Pull the selected curve back along this rational map.
    #[arg(long)]
    theta: Option<String>,
    /// Build one extra table level and check it against the functional
    /// equation.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Largest twist degree to sweep.
    #[arg(long)]
    max_deg: usize,
    /// Check every twist against the functional equation.
    #[arg(long)]
    verify: bool,
    /// Directory for twists.csv and summary.csv (stdout summary otherwise).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TablesAction {
    /// Build tables up to --levels.
    Build,
    /// List the cached levels.
    Info,
}

#[derive(Args)]
struct TablesArgs {
    action: TablesAction,
    #[command(flatten)]
    curve: CurveArgs,
    /// Highest table level to build.
    #[arg(long, default_value_t = 1)]
    levels: u32,
}

#[derive(Args)]
#[command(group(ArgGroup::new("range").required(true).args(["max_deg", "deg"])))]
struct SignsArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Report every degree up to this bound.
    #[arg(long)]
    max_deg: Option<usize>,
    /// Report a single degree.
    #[arg(long)]
    deg: Option<usize>,
    /// Directory for signs.csv (stdout otherwise).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Run the CLI; returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // A pool can only be installed once per process; later invocations
        // (tests, library callers) keep the existing one.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global();
    }
    let store = CacheStore::resolve(cli.cache_dir.clone());
    let outcome = match &cli.command {
        Command::Lfun(args) => cmd_lfun(args, &store),
        Command::Family(args) => cmd_family(args, &store),
        Command::Tables(args) => cmd_tables(args, &store),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Signs(args) => cmd_signs(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_lfun(args: &LfunArgs, store: &CacheStore) -> Result<()> {
    let base = args.curve.build()?;
    let q = base.q();
    let (target, strategy);
    let twist_poly;
    let theta_fn;
    if let Some(f) = &args.twist {
        twist_poly = poly_from_str(q, f)?;
        target = base.make_twist(&twist_poly)?;
        strategy = TableStrategy::TwistOf {
            base: &base,
            f: &twist_poly,
        };
    } else if let Some(theta) = &args.theta {
        theta_fn = rational_from_str(q, theta)?;
        target = base.make_pullback(&theta_fn)?;
        strategy = TableStrategy::PullbackOf {
            base: &base,
            theta: &theta_fn,
        };
    } else {
        target = base.clone();
        strategy = TableStrategy::Direct;
    }
    let info = target.reduction_info()?;
    for (place, t) in info.places() {
        println!("place {place}: {t}");
    }
    println!("deg L = {}", info.l_degree()?);
    let opts = ComputeOpts {
        verify: args.verify,
        strategy,
    };
    let l = compute_l(&target, store, &opts)?;
    println!("L = {l}, sign = {:+}, rank = {}", l.sign(), l.rank());
    Ok(())
}

fn cmd_family(args: &FamilyArgs, store: &CacheStore) -> Result<()> {
    let base = args.curve.build()?;
    let spec = FamilySpec::new(base, args.max_deg)?;
    let report = run_family(&spec, store, &FamilyOpts { verify: args.verify })?;
    if let Some(out) = &args.out {
        for path in emit(&report, out)? {
            println!("wrote {}", path.display());
        }
    } else {
        for s in report.per_degree() {
            let (count, sum) = report.cumulative(s.d);
            println!(
                "D = {}: {} twists (cumulative {count}), rank sum {sum}, mu = {}",
                s.d,
                s.count,
                report.mu_string(s.d)
            );
        }
    }
    Ok(())
}

fn cmd_tables(args: &TablesArgs, store: &CacheStore) -> Result<()> {
    let curve = args.curve.build()?;
    match args.action {
        TablesAction::Build => {
            for n in 1..=args.levels {
                let table = cache_get_or_build(store, &curve, n, &TableStrategy::Direct)?;
                println!(
                    "level {n}: {} entries, b_{n} = {}",
                    table.len(),
                    table.flat_sum()
                );
            }
        }
        TablesAction::Info => {
            let key = curve.curve_key();
            println!("curve {key}");
            println!("cache {}", store.path_for(&key, 1).parent().unwrap().display());
            let levels = store.cached_levels(&key);
            if levels.is_empty() {
                println!("no cached levels");
            } else {
                let list: Vec<String> = levels.iter().map(|n| n.to_string()).collect();
                println!("cached levels: {}", list.join(" "));
            }
        }
    }
    Ok(())
}

fn cmd_decompose(args: &CurveArgs) -> Result<()> {
    let curve = args.build()?;
    let d = curve.decompose()?;
    println!("theta = {}", d.theta);
    println!("twist factor = {}", d.twist_factor());
    println!(
        "square class = {} ({})",
        d.scalar_class,
        if d.scalar_class == 1 {
            "square"
        } else {
            "non-square"
        }
    );
    println!(
        "pullback minimal model: a = {}, b = {}",
        d.pullback.a(),
        d.pullback.b()
    );
    Ok(())
}

fn cmd_signs(args: &SignsArgs) -> Result<()> {
    let base = args.curve.build()?;
    let (lo, hi) = match (args.deg, args.max_deg) {
        (Some(d), _) => (d, d),
        (None, Some(m)) => (1, m),
        (None, None) => unreachable!("clap group"),
    };
    let spec = FamilySpec::new(base, hi)?;
    let mut reports = Vec::new();
    for d in lo..=hi {
        reports.push(sign_stats(&spec, d)?);
    }
    if let Some(out) = &args.out {
        let path = emit_signs(&reports, out)?;
        println!("wrote {}", path.display());
    } else {
        for r in &reports {
            println!(
                "d = {}: {} twists, sum sign = {}, sum (f/N) = {}, eps_d = {:+}, \
                 constant = {}, character sums vanish = {}",
                r.d,
                r.count,
                r.sum_sign,
                r.sum_jacobi,
                r.eps_d,
                r.constancy,
                r.b_checks_pass()
            );
        }
    }
    Ok(())
}
