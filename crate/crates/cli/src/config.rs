//! `key=value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Orbit lists accept
//! `a*n` for `n` copies of `a`.

use std::path::PathBuf;
use std::str::FromStr;

use omf_core::{DesignParams, FixedPointSpec, GroupName, OrbitDistribution, Pin, Pruning};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Line {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Types,
    Search,
    Feasible,
    Verify,
    Canon,
    Oracle,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "types" => Mode::Types,
            "search" => Mode::Search,
            "feasible" => Mode::Feasible,
            "verify" => Mode::Verify,
            "canon" => Mode::Canon,
            "oracle" => Mode::Oracle,
            _ => return Err(format!("unknown mode {s:?}")),
        })
    }
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Types => "types",
            Mode::Search => "search",
            Mode::Feasible => "feasible",
            Mode::Verify => "verify",
            Mode::Canon => "canon",
            Mode::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    DifferenceSet,
    RowTypes,
    Complete,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub params: Option<DesignParams>,
    pub dist: Option<OrbitDistribution>,
    pub prescribed: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub depth: Option<usize>,
    pub workers: Option<usize>,
    pub split_depth: Option<usize>,
    pub store_limit: Option<usize>,
    pub count_only: bool,
    pub pruning: Pruning,
    pub out: Option<PathBuf>,
    pub block_orbit: Option<u32>,
    pub pins: Vec<Pin>,
    pub group: Option<GroupName>,
    pub fixed_points: Option<FixedPointSpec>,
    pub oracle: Option<OracleKind>,
    pub modulus: Option<usize>,
    pub residues: Vec<usize>,
    pub translation: Option<usize>,
    pub ceiling: Option<u128>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: None,
            params: None,
            dist: None,
            prescribed: None,
            matrix: None,
            depth: None,
            workers: None,
            split_depth: None,
            store_limit: None,
            count_only: false,
            pruning: Pruning::COUNTING,
            out: None,
            block_orbit: None,
            pins: Vec::new(),
            group: None,
            fixed_points: None,
            oracle: None,
            modulus: None,
            residues: Vec::new(),
            translation: None,
            ceiling: None,
        }
    }
}

/// Expands `1,1,7*5` into `[1, 1, 7, 7, 7, 7, 7]`.
pub fn expand_orbits(text: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        if item.is_empty() {
            return Err("empty orbit length".into());
        }
        let (len, copies) = match item.split_once('*') {
            Some((a, n)) => (a.trim(), n.trim().parse::<usize>().map_err(|_| format!("bad repeat count in {item:?}"))?),
            None => (item, 1),
        };
        let len: u32 = len.parse().map_err(|_| format!("bad orbit length {len:?}"))?;
        if len == 0 {
            return Err("orbit lengths must be positive".into());
        }
        if copies > 4096 {
            return Err(format!("repeat count {copies} is too large"));
        }
        out.extend(std::iter::repeat_n(len, copies));
    }
    Ok(out)
}

fn number<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| at(line, format!("{key}: expected a non-negative integer, got {value:?}")))
}

fn boolean(line: usize, key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(at(line, format!("{key}: expected true or false, got {value:?}"))),
    }
}

/// `class:value`, e.g. `1:0`.
fn class_value(line: usize, key: &str, value: &str) -> Result<(u32, u32), ConfigError> {
    let (a, b) = value
        .split_once(':')
        .ok_or_else(|| at(line, format!("{key}: expected class:value, got {value:?}")))?;
    Ok((number(line, key, a.trim())?, number(line, key, b.trim())?))
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let (mut v, mut k, mut lambda) = (None, None, None);
    let mut points: Option<(usize, Vec<u32>)> = None;
    let mut blocks: Option<(usize, Vec<u32>)> = None;
    let mut seen = std::collections::HashSet::new();
    let repeatable = ["pin", "cap", "fixed"];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| at(line, format!("expected key=value, got {trimmed:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        if !repeatable.contains(&key) && !seen.insert(key.to_string()) {
            return Err(at(line, format!("duplicate key {key:?}")));
        }
        match key {
            "mode" => cfg.mode = Some(value.parse().map_err(|e: String| at(line, e))?),
            "v" => v = Some(number::<u32>(line, key, value)?),
            "k" => k = Some(number::<u32>(line, key, value)?),
            "lambda" => lambda = Some(number::<u32>(line, key, value)?),
            "point_orbits" => points = Some((line, expand_orbits(value).map_err(|e| at(line, e))?)),
            "block_orbits" => blocks = Some((line, expand_orbits(value).map_err(|e| at(line, e))?)),
            "prescribed" => cfg.prescribed = Some(PathBuf::from(value)),
            "matrix" => cfg.matrix = Some(PathBuf::from(value)),
            "depth" => cfg.depth = Some(number(line, key, value)?),
            "workers" => {
                let w: usize = number(line, key, value)?;
                if w == 0 {
                    return Err(at(line, "workers must be positive"));
                }
                cfg.workers = Some(w);
            }
            "split_depth" => cfg.split_depth = Some(number(line, key, value)?),
            "store_limit" => cfg.store_limit = Some(number(line, key, value)?),
            "count_only" => cfg.count_only = boolean(line, key, value)?,
            "pruning" => {
                cfg.pruning = match value {
                    "counting" => Pruning::COUNTING,
                    "strong" => Pruning::STRONG,
                    _ => return Err(at(line, format!("pruning: expected counting or strong, got {value:?}"))),
                }
            }
            "out" => cfg.out = Some(PathBuf::from(value)),
            "block_orbit" => cfg.block_orbit = Some(number(line, key, value)?),
            "pin" => {
                let (class, x) = class_value(line, key, value)?;
                cfg.pins.push(Pin {
                    class_length: class,
                    kind: omf_core::PinKind::Exact(x),
                });
            }
            "cap" => {
                let (class, x) = class_value(line, key, value)?;
                cfg.pins.push(Pin::cap(class, x));
            }
            "group" => cfg.group = Some(value.parse().map_err(|e: omf_core::Error| at(line, e.to_string()))?),
            "fixed" => {
                let (p, counts) = value
                    .split_once(':')
                    .ok_or_else(|| at(line, format!("fixed: expected prime:count,count, got {value:?}")))?;
                let p: u32 = number(line, key, p.trim())?;
                let counts: Vec<u32> = counts
                    .split(',')
                    .map(|c| number(line, key, c.trim()))
                    .collect::<Result<_, _>>()?;
                let spec = cfg.fixed_points.take().unwrap_or_default();
                cfg.fixed_points = Some(spec.with(p, &counts));
            }
            "oracle" => {
                cfg.oracle = Some(match value {
                    "difference_set" => OracleKind::DifferenceSet,
                    "row_types" => OracleKind::RowTypes,
                    "complete" => OracleKind::Complete,
                    _ => return Err(at(line, format!("oracle: expected difference_set, row_types or complete, got {value:?}"))),
                })
            }
            "modulus" => cfg.modulus = Some(number(line, key, value)?),
            "residues" => {
                cfg.residues = value
                    .split(',')
                    .map(|c| number(line, key, c.trim()))
                    .collect::<Result<_, _>>()?
            }
            "translation" => cfg.translation = Some(number(line, key, value)?),
            "ceiling" => cfg.ceiling = Some(number(line, key, value)?),
            _ => return Err(at(line, format!("unknown key {key:?}"))),
        }
    }

    match (v, k, lambda) {
        (Some(v), Some(k), Some(l)) => {
            cfg.params = Some(DesignParams::new(v, k, l).map_err(|e| ConfigError::Invalid(e.to_string()))?);
        }
        (None, None, None) => {}
        _ => return Err(ConfigError::Invalid("v, k and lambda must be given together".into())),
    }
    if let Some((line, pts)) = points {
        let v = cfg
            .params
            .map(|p| p.v())
            .ok_or_else(|| at(line, "point_orbits needs v, k and lambda"))?;
        let sum: u64 = pts.iter().map(|&x| u64::from(x)).sum();
        if sum != u64::from(v) {
            return Err(at(line, format!("point orbit lengths sum to {sum}, expected v = {v}")));
        }
        let (bline, blk) = blocks.unwrap_or((line, pts.clone()));
        let bsum: u64 = blk.iter().map(|&x| u64::from(x)).sum();
        if bsum != u64::from(v) {
            return Err(at(bline, format!("block orbit lengths sum to {bsum}, expected v = {v}")));
        }
        cfg.dist = Some(OrbitDistribution::new(v, pts, blk).map_err(|e| at(bline, e.to_string()))?);
    } else if let Some((line, _)) = blocks {
        return Err(at(line, "block_orbits given without point_orbits"));
    }
    Ok(cfg)
}
