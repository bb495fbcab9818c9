//! `fvsdg` command-line experiment runner.
//!
//! Runs one registered case (or a convergence study over a mesh sequence),
//! prints a summary and writes CSV / gnuplot output when `--out` is given.
//!
//! Exit codes: `0` success, `2` divergence or inadmissible state, `3`
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fvsdg::harness::component_names;
use fvsdg::{case_registry, convergence_study, run, Error, RunConfig};

/// FVS-RKDG solver for 1D/2D hyperbolic conservation laws.
#[derive(Debug, Parser)]
#[command(name = "fvsdg", version, about, allow_negative_numbers = true)]
struct Cli {
    /// `key = value` configuration file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Case identifier (see `--list`).
    #[arg(long)]
    case: Option<String>,
    /// Polynomial degree.
    #[arg(long = "K")]
    k: Option<usize>,
    /// Cells per direction.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Cells in y (2D only; defaults to `--N`).
    #[arg(long = "Ny")]
    ny: Option<usize>,
    /// CFL number.
    #[arg(long)]
    cfl: Option<f64>,
    /// Final time.
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Limiter: none, tvb, istvb or isl2.
    #[arg(long)]
    limiter: Option<String>,
    /// Weight of the smoothness term in the limiter objective.
    #[arg(long)]
    wis: Option<f64>,
    /// Weight of the L² term in the limiter objective.
    #[arg(long)]
    wl2: Option<f64>,
    /// TVB constant M.
    #[arg(long = "M")]
    m: Option<f64>,
    /// Numerical flux: sw, lf, lf-global, vanleer, ausm, llf[:alpha].
    #[arg(long)]
    flux: Option<String>,
    /// Time integrator: tvdrk3, rk4 or ssprk104.
    #[arg(long)]
    integrator: Option<String>,
    /// Output directory for CSV and gnuplot files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, env = "FVSDG_THREADS")]
    threads: Option<usize>,
    /// Run a convergence study over these meshes (comma separated).
    #[arg(long, value_delimiter = ',')]
    meshes: Option<Vec<usize>>,
    /// Additional `key=value` overrides.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// List registered cases and exit.
    #[arg(long)]
    list: bool,
}

fn build_config(cli: &Cli) -> fvsdg::Result<RunConfig> {
    let mut cfg = match (&cli.config, &cli.case) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_kv(&text)?
        }
        (None, Some(case)) => RunConfig::for_case(case)?,
        (None, None) => return Err(Error::Config("either --case or --config is required".into())),
    };
    if let (Some(_), Some(case)) = (&cli.config, &cli.case) {
        cfg.set("case", case)?;
    }
    let opt = |v: Option<String>| v;
    let overrides = [
        ("K", cli.k.map(|v| v.to_string())),
        ("N", cli.n.map(|v| v.to_string())),
        ("Ny", cli.ny.map(|v| v.to_string())),
        ("cfl", cli.cfl.map(|v| v.to_string())),
        ("t_end", cli.t_end.map(|v| v.to_string())),
        ("limiter", opt(cli.limiter.clone())),
        ("wis", cli.wis.map(|v| v.to_string())),
        ("wl2", cli.wl2.map(|v| v.to_string())),
        ("M", cli.m.map(|v| v.to_string())),
        ("flux", opt(cli.flux.clone())),
        ("integrator", opt(cli.integrator.clone())),
        ("out", cli.out.as_ref().map(|p| p.display().to_string())),
        ("threads", cli.threads.map(|v| v.to_string())),
    ];
    for (k, v) in overrides {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    for kv in &cli.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected KEY=VALUE, got `{kv}`")))?;
        cfg.set(k, v)?;
    }
    if let Some(m) = &cli.meshes {
        cfg.meshes = m.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Divergence { .. } | Error::Inadmissible { .. } | Error::InadmissibleAverage(_) => 2,
        Error::Config(_)
        | Error::Incompatible { .. }
        | Error::Boundary(_)
        | Error::Unsupported { .. }
        | Error::QuadratureRange(_) => 3,
        _ => 2,
    }
}

fn execute(cfg: &RunConfig) -> fvsdg::Result<()> {
    if !cfg.meshes.is_empty() {
        let table = convergence_study(cfg, &cfg.meshes)?;
        if let Some(n) = table.reference {
            println!("reference solution: N = {n}");
        }
        print!("{}", table.to_text());
        return Ok(());
    }
    let out = run(cfg)?;
    println!(
        "case {} K={} N={} flux={} steps={} t={:.6} wall={:.2}s",
        cfg.case,
        cfg.k,
        cfg.nx,
        cfg.scheme.name(),
        out.report.steps,
        out.report.t_final,
        out.report.wall_time.as_secs_f64()
    );
    if let Some(e) = &out.errors {
        for (c, name) in component_names(out.disc.model()).iter().enumerate() {
            println!(
                "{name:>5}: L1 {:.4E}  L2 {:.4E}  Linf {:.4E}",
                e.l1[c], e.l2[c], e.linf[c]
            );
        }
    }
    let mask = &out.report.final_limit.mask;
    if !mask.is_empty() {
        let cells = out.disc.centers().len();
        println!(
            "troubled cells at final time: {} of {}",
            out.report.final_limit.troubled_cells, cells
        );
    }
    if let Some(dir) = &cfg.out {
        println!("output written to {}", dir.display());
    }
    match out.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are successes; usage errors are
            // configuration errors.
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.list {
        for c in case_registry() {
            println!("{:<20} {}", c.id, c.title);
        }
        return ExitCode::SUCCESS;
    }
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    if let Some(n) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    match execute(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
