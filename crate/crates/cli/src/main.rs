use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use omf_cli::{default_workers, parse_config, run, Mode, RunOptions, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "omf", version, about = "Orbit matrix search for symmetric designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate admissible row types
    Types(Common),
    /// Build partial or complete orbit matrices
    Search(Common),
    /// Orbit-length distributions for a small group
    Feasible(Common),
    /// Check a matrix file against every condition
    Verify(Common),
    /// Canonical form of a matrix file
    Canon(Common),
    /// Reference constructions and cross-checks
    Oracle(Common),
}

#[derive(Args)]
struct Common {
    /// Run configuration (key=value lines)
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `out=` in the configuration
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to `workers=` in the configuration, then $OMF_WORKERS, then 1
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match cli.command {
        Command::Types(a) => (Mode::Types, a),
        Command::Search(a) => (Mode::Search, a),
        Command::Feasible(a) => (Mode::Feasible, a),
        Command::Verify(a) => (Mode::Verify, a),
        Command::Canon(a) => (Mode::Canon, a),
        Command::Oracle(a) => (Mode::Oracle, a),
    };
    match execute(mode, args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("omf: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}

fn execute(mode: Mode, args: Common) -> Result<i32, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| format!("{}: {e}", args.config.display()))?;
    let cfg = parse_config(&text).map_err(|e| format!("{}: {e}", args.config.display()))?;
    let workers = args.workers.or(cfg.workers).unwrap_or_else(default_workers);
    if workers == 0 {
        return Err("--workers must be positive".into());
    }
    let out = args
        .out
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("omf-out"));
    let base_dir = args
        .config
        .parent()
        .map(|p| p.to_path_buf())
        .unwrap_or_default();
    let opts = RunOptions {
        mode,
        out,
        workers,
        base_dir,
    };
    let manifest = run(&cfg, &opts)?;
    for note in &manifest.notes {
        println!("{note}");
    }
    for c in &manifest.counts {
        println!("depth {} count {}", c.depth, c.count);
    }
    println!(
        "{} in {:.2}s, hash {}",
        status_word(&manifest),
        manifest.wall_time_secs,
        manifest.content_hash
    );
    Ok(manifest.exit_code)
}

fn status_word(m: &omf_cli::Manifest) -> &'static str {
    match m.status {
        omf_cli::Status::Found => "found",
        omf_cli::Status::Empty => "nothing found",
        omf_cli::Status::Rejected => "rejected",
    }
}
