//! Batch runner behind the `omf` binary: reads a run configuration, drives
//! the library, writes result files and a JSON manifest.

pub mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use omf_core::oracle::{self, PermAction, DEFAULT_CEILING};
use omf_core::{
    canonical_form, enumerate_types, feasible_distributions, read_matrix_file, run_search, verify_complete,
    verify_partial, write_matrix_string, DesignParams, FixedPointSpec, GroupSpec, MatrixStatus, OrbitDistribution,
    PartialOrbitMatrix, SearchSpec, TypeQuery,
};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use config::{expand_orbits, parse_config, ConfigError, Mode, OracleKind, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
/// The run completed and established that nothing exists.
pub const EXIT_EMPTY: i32 = 2;
/// A matrix failed verification, or an oracle disagreed with the engine.
pub const EXIT_REJECTED: i32 = 3;

pub const WORKERS_ENV: &str = "OMF_WORKERS";

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] omf_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("missing setting: {0}")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Found,
    Empty,
    Rejected,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Found => EXIT_OK,
            Status::Empty => EXIT_EMPTY,
            Status::Rejected => EXIT_REJECTED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthCountEntry {
    pub depth: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub engine: &'static str,
    pub engine_version: &'static str,
    pub mode: &'static str,
    pub workers: usize,
    pub params: Option<[u32; 3]>,
    pub point_orbits: Option<Vec<u32>>,
    pub block_orbits: Option<Vec<u32>>,
    pub start_depth: Option<usize>,
    pub target_depth: Option<usize>,
    pub counts: Vec<DepthCountEntry>,
    pub terminal_count: u64,
    pub nodes: u64,
    pub candidates: u64,
    pub non_canonical: u64,
    pub pruned: u64,
    pub truncated: bool,
    pub wall_time_secs: f64,
    /// SHA-256 of the result content; independent of timing and worker count.
    pub content_hash: String,
    pub outputs: Vec<String>,
    pub notes: Vec<String>,
    pub status: Status,
    pub exit_code: i32,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub mode: Mode,
    pub out: PathBuf,
    pub workers: usize,
    /// Directory that relative paths in the configuration are resolved against.
    pub base_dir: PathBuf,
}

/// Worker count from the environment, falling back to 1.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or(1)
}

struct Results {
    /// Text the content hash is taken over.
    content: String,
    files: Vec<(String, String)>,
    status: Status,
    notes: Vec<String>,
    search: Option<omf_core::SearchReport>,
}

impl Results {
    fn new(status: Status) -> Self {
        Results {
            content: String::new(),
            files: Vec::new(),
            status,
            notes: Vec::new(),
            search: None,
        }
    }

    fn file(&mut self, name: impl Into<String>, body: String) {
        let name = name.into();
        self.content.push_str(&format!("== {name}\n{body}"));
        self.files.push((name, body));
    }
}

fn need<T: Clone>(value: &Option<T>, name: &'static str) -> Result<T, RunError> {
    value.clone().ok_or(RunError::Missing(name))
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Runs one configuration and writes its outputs and `manifest.json`.
pub fn run(cfg: &RunConfig, opts: &RunOptions) -> Result<Manifest, RunError> {
    if let Some(m) = cfg.mode {
        if m != opts.mode {
            return Err(ConfigError::Invalid(format!(
                "configuration is for mode {}, not {}",
                m.name(),
                opts.mode.name()
            ))
            .into());
        }
    }
    let started = Instant::now();
    let results = match opts.mode {
        Mode::Types => run_types(cfg)?,
        Mode::Search => run_search_mode(cfg, opts)?,
        Mode::Feasible => run_feasible(cfg)?,
        Mode::Verify => run_verify(cfg, opts)?,
        Mode::Canon => run_canon(cfg, opts)?,
        Mode::Oracle => run_oracle(cfg, opts)?,
    };
    let wall = started.elapsed().as_secs_f64();

    fs::create_dir_all(&opts.out).map_err(io_err(&opts.out))?;
    let mut outputs = Vec::new();
    for (name, body) in &results.files {
        let path = opts.out.join(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(io_err(parent))?;
        }
        fs::write(&path, body).map_err(io_err(&path))?;
        outputs.push(name.clone());
    }

    let hash = format!("{:x}", Sha256::digest(results.content.as_bytes()));
    let report = results.search.as_ref();
    let manifest = Manifest {
        engine: "omf",
        engine_version: env!("CARGO_PKG_VERSION"),
        mode: opts.mode.name(),
        workers: opts.workers,
        params: cfg.params.map(|p| [p.v(), p.k(), p.lambda()]),
        point_orbits: cfg.dist.as_ref().map(|d| d.point_orbits().to_vec()),
        block_orbits: cfg.dist.as_ref().map(|d| d.block_orbits().to_vec()),
        start_depth: report.map(|r| r.start_depth),
        target_depth: report.map(|r| r.target_depth),
        counts: report
            .map(|r| {
                r.counts
                    .iter()
                    .map(|c| DepthCountEntry {
                        depth: c.depth,
                        count: c.count,
                    })
                    .collect()
            })
            .unwrap_or_default(),
        terminal_count: report.map_or(0, |r| r.terminal_count()),
        nodes: report.map_or(0, |r| r.stats.nodes),
        candidates: report.map_or(0, |r| r.stats.candidates),
        non_canonical: report.map_or(0, |r| r.stats.non_canonical),
        pruned: report.map_or(0, |r| r.stats.pruned),
        truncated: report.is_some_and(|r| r.truncated),
        wall_time_secs: wall,
        content_hash: hash,
        outputs,
        notes: results.notes,
        status: results.status,
        exit_code: results.status.exit_code(),
    };
    let path = opts.out.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(io_err(&path))?;
    Ok(manifest)
}

fn run_types(cfg: &RunConfig) -> Result<Results, RunError> {
    let params = need(&cfg.params, "v, k, lambda")?;
    let dist = need(&cfg.dist, "point_orbits")?;
    let omega = need(&cfg.block_orbit, "block_orbit")?;
    let mut q = TypeQuery::new(dist, omega);
    q.pins = cfg.pins.clone();
    let types = enumerate_types(&q, &params)?;
    let body: String = types.iter().map(|t| format!("{t}  {}\n", t.notation())).collect();
    let mut res = Results::new(if types.is_empty() { Status::Empty } else { Status::Found });
    res.notes.push(format!("{} row types", types.len()));
    res.file("types.txt", body);
    Ok(res)
}

fn load_matrix(cfg: &RunConfig, opts: &RunOptions, which: &Option<PathBuf>, name: &'static str) -> Result<PartialOrbitMatrix, RunError> {
    let path = resolve(&opts.base_dir, &need(which, name)?);
    let m = read_matrix_file(&path)?;
    if let Some(p) = cfg.params {
        if p != *m.params() {
            return Err(ConfigError::Invalid(format!("{}: parameters differ from the configuration", path.display())).into());
        }
    }
    Ok(m)
}

fn run_search_mode(cfg: &RunConfig, opts: &RunOptions) -> Result<Results, RunError> {
    let params = need(&cfg.params, "v, k, lambda")?;
    let dist: OrbitDistribution = need(&cfg.dist, "point_orbits")?;
    let mut spec = SearchSpec::new(params, dist.clone())
        .with_target_depth(cfg.depth.unwrap_or(dist.t()))
        .with_workers(opts.workers)
        .with_pruning(cfg.pruning)
        .count_only(cfg.count_only);
    let mut start = 0;
    if cfg.prescribed.is_some() {
        let m = load_matrix(cfg, opts, &cfg.prescribed, "prescribed")?;
        if m.dist() != &dist {
            return Err(ConfigError::Invalid("prescribed matrix has a different distribution".into()).into());
        }
        start = m.row_count();
        spec = spec.with_prescribed(m);
    }
    if let Some(limit) = cfg.store_limit {
        spec = spec.with_store_limit(limit);
    }
    let split = cfg
        .split_depth
        .unwrap_or(if opts.workers > 1 { start + 2 } else { 0 });
    spec = spec.with_split_depth(split);

    let report = run_search(&spec)?;
    let mut res = Results::new(if report.terminal_count() == 0 { Status::Empty } else { Status::Found });
    let counts: String = report
        .counts
        .iter()
        .map(|c| format!("depth {} count {}\n", c.depth, c.count))
        .collect();
    res.file("counts.txt", format!("{counts}fingerprint {:016x}\n", report.fingerprint));
    let width = report.matrices.len().to_string().len().max(4);
    for (i, m) in report.matrices.iter().enumerate() {
        res.file(format!("matrices/m{:0width$}.txt", i + 1), write_matrix_string(m));
    }
    if report.truncated {
        res.notes.push(format!(
            "store limit reached: {} of {} matrices written",
            report.matrices.len(),
            report.terminal_count()
        ));
    }
    res.search = Some(report);
    Ok(res)
}

fn run_feasible(cfg: &RunConfig) -> Result<Results, RunError> {
    let name = need(&cfg.group, "group")?;
    let v = cfg.params.map(|p| p.v()).ok_or(RunError::Missing("v, k, lambda"))?;
    let fp = cfg.fixed_points.clone().unwrap_or_else(FixedPointSpec::biplane_121);
    let g = GroupSpec::new(name);
    let found = feasible_distributions(&g, v, &fp)?;
    let body: String = found
        .iter()
        .map(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    let mut res = Results::new(if found.is_empty() { Status::Empty } else { Status::Found });
    res.notes.push(format!("{name}: {} distributions", found.len()));
    res.file("distributions.txt", body);
    Ok(res)
}

fn run_verify(cfg: &RunConfig, opts: &RunOptions) -> Result<Results, RunError> {
    let m = load_matrix(cfg, opts, &cfg.matrix, "matrix")?;
    let complete = m.status() == MatrixStatus::Complete;
    let mut problems: Vec<String> = match if complete { verify_complete(&m) } else { verify_partial(&m) } {
        Ok(()) => Vec::new(),
        Err(v) => v.iter().map(|x| x.to_string()).collect(),
    };
    if complete && problems.is_empty() {
        match m.transpose_dual().map(|d| verify_complete(&d)) {
            Ok(Ok(())) => {}
            Ok(Err(v)) => problems.extend(v.iter().map(|x| format!("dual {x}"))),
            Err(e) => problems.push(format!("dual {e}")),
        }
    }
    let mut res = Results::new(if problems.is_empty() { Status::Found } else { Status::Rejected });
    res.notes.push(format!(
        "{} matrix with {} rows: {}",
        if complete { "complete" } else { "partial" },
        m.row_count(),
        if problems.is_empty() { "valid" } else { "invalid" }
    ));
    res.file("violations.txt", problems.iter().map(|p| format!("{p}\n")).collect());
    Ok(res)
}

fn run_canon(cfg: &RunConfig, opts: &RunOptions) -> Result<Results, RunError> {
    let m = load_matrix(cfg, opts, &cfg.matrix, "matrix")?;
    let key = canonical_form(&m);
    let c = key.to_matrix(*m.params(), m.dist().clone())?;
    let mut res = Results::new(Status::Found);
    res.file("canonical.txt", write_matrix_string(&c));
    Ok(res)
}

fn run_oracle(cfg: &RunConfig, opts: &RunOptions) -> Result<Results, RunError> {
    let ceiling = cfg.ceiling.unwrap_or(DEFAULT_CEILING);
    match need(&cfg.oracle, "oracle")? {
        OracleKind::DifferenceSet => {
            let modulus = need(&cfg.modulus, "modulus")?;
            let s = oracle::from_difference_set(modulus, &cfg.residues)?;
            let action = match cfg.translation {
                Some(step) => PermAction::translation(&s, step)?,
                None => PermAction::trivial(),
            };
            let q = oracle::quotient_orbit_matrix(&s, &action)?;
            let ok = verify_complete(&q).is_ok() && oracle::naive_is_orbit_matrix(&q);
            let mut res = Results::new(if ok { Status::Found } else { Status::Rejected });
            res.file("incidence.txt", s.to_string());
            res.file("quotient.txt", write_matrix_string(&q));
            Ok(res)
        }
        OracleKind::RowTypes => {
            let params = need(&cfg.params, "v, k, lambda")?;
            let dist = need(&cfg.dist, "point_orbits")?;
            let omega = need(&cfg.block_orbit, "block_orbit")?;
            let mut q = TypeQuery::new(dist, omega);
            q.pins = cfg.pins.clone();
            let fast = enumerate_types(&q, &params)?;
            let slow = oracle::brute_force_row_types(&q, &params, ceiling)?;
            let agree = fast == slow;
            let mut res = Results::new(match (agree, slow.is_empty()) {
                (false, _) => Status::Rejected,
                (true, true) => Status::Empty,
                (true, false) => Status::Found,
            });
            res.notes.push(format!("engine {} types, oracle {} types", fast.len(), slow.len()));
            res.file("types.txt", slow.iter().map(|t| format!("{t}  {}\n", t.notation())).collect());
            Ok(res)
        }
        OracleKind::Complete => {
            let params: DesignParams = need(&cfg.params, "v, k, lambda")?;
            let dist = need(&cfg.dist, "point_orbits")?;
            let naive = oracle::naive_complete_matrices(&params, &dist, ceiling)?;
            let spec = SearchSpec::new(params, dist.clone())
                .with_target_depth(dist.t())
                .with_workers(opts.workers);
            let report = run_search(&spec)?;
            let engine: std::collections::BTreeSet<Vec<Vec<u32>>> =
                report.matrices.iter().map(|m| m.rows().to_vec()).collect();
            let agree = !report.truncated && engine == naive;
            let mut res = Results::new(match (agree, naive.is_empty()) {
                (false, _) => Status::Rejected,
                (true, true) => Status::Empty,
                (true, false) => Status::Found,
            });
            res.notes.push(format!("engine {} matrices, oracle {} matrices", engine.len(), naive.len()));
            let mut body = String::new();
            for rows in &naive {
                let m = PartialOrbitMatrix::new(params, dist.clone(), rows.clone(), {
                    let mut plan = dist.block_orbits().to_vec();
                    plan.sort_unstable();
                    plan
                })?;
                body.push_str(&write_matrix_string(&m));
                body.push('\n');
            }
            res.file("oracle_matrices.txt", body);
            Ok(res)
        }
    }
}
