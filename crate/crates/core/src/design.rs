//! Domain types for symmetric designs and the exact-integer constraint kernel
//! that every orbit matrix row and row pair has to satisfy.
//!
//! Coefficients of the form `Omega_j / omega_r` are never evaluated as
//! fractions. Every sum is multiplied by `L = lcm(omega)` so that the weight
//! of column `r` becomes the integer `L / omega_r`.

use std::fmt;

use crate::error::{Error, Result};

pub type Entry = u32;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Parameters `(v, k, lambda)` of a symmetric 2-design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    v: u32,
    k: u32,
    lambda: u32,
}

impl DesignParams {
    pub fn new(v: u32, k: u32, lambda: u32) -> Result<Self> {
        if v == 0 || k == 0 || lambda == 0 {
            return Err(Error::InvalidParams(format!(
                "({v},{k},{lambda}) must be positive"
            )));
        }
        if k >= v {
            return Err(Error::InvalidParams(format!("k = {k} must be below v = {v}")));
        }
        if u64::from(lambda) * u64::from(v - 1) != u64::from(k) * u64::from(k - 1) {
            return Err(Error::InvalidParams(format!(
                "lambda(v-1) = {} differs from k(k-1) = {}",
                u64::from(lambda) * u64::from(v - 1),
                u64::from(k) * u64::from(k - 1)
            )));
        }
        Ok(DesignParams { v, k, lambda })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// The order `n = k - lambda`.
    pub fn order(&self) -> u32 {
        self.k - self.lambda
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Columns of equal point-orbit length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnClass {
    pub length: u32,
    pub columns: Vec<usize>,
}

/// Point-orbit lengths (columns) and block-orbit lengths (the row plan).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitDistribution {
    point_orbits: Vec<u32>,
    block_orbits: Vec<u32>,
    lcm: u64,
}

impl OrbitDistribution {
    pub fn new(v: u32, point_orbits: Vec<u32>, block_orbits: Vec<u32>) -> Result<Self> {
        if point_orbits.is_empty() {
            return Err(Error::InvalidDistribution("no orbits".into()));
        }
        if point_orbits.len() != block_orbits.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} point orbits but {} block orbits",
                point_orbits.len(),
                block_orbits.len()
            )));
        }
        if point_orbits.iter().chain(&block_orbits).any(|&w| w == 0) {
            return Err(Error::InvalidDistribution("orbit lengths must be positive".into()));
        }
        for (name, seq) in [("point", &point_orbits), ("block", &block_orbits)] {
            let sum: u64 = seq.iter().map(|&w| u64::from(w)).sum();
            if sum != u64::from(v) {
                return Err(Error::InvalidDistribution(format!(
                    "{name} orbit lengths sum to {sum}, expected {v}"
                )));
            }
        }
        let lcm = point_orbits.iter().fold(1u64, |acc, &w| lcm(acc, u64::from(w)));
        Ok(OrbitDistribution {
            point_orbits,
            block_orbits,
            lcm,
        })
    }

    /// Same lengths for points and blocks, which is the situation for every
    /// group action considered here.
    pub fn symmetric(v: u32, orbits: Vec<u32>) -> Result<Self> {
        Self::new(v, orbits.clone(), orbits)
    }

    /// Rejects lengths that cannot be orbit lengths of a group of the given order.
    pub fn check_group_order(&self, group_order: u32) -> Result<()> {
        match self
            .point_orbits
            .iter()
            .chain(&self.block_orbits)
            .find(|&&w| !group_order.is_multiple_of(w))
        {
            Some(w) => Err(Error::InvalidDistribution(format!(
                "orbit length {w} does not divide group order {group_order}"
            ))),
            None => Ok(()),
        }
    }

    pub fn t(&self) -> usize {
        self.point_orbits.len()
    }

    pub fn point_orbits(&self) -> &[u32] {
        &self.point_orbits
    }

    pub fn block_orbits(&self) -> &[u32] {
        &self.block_orbits
    }

    /// `L = lcm(omega)`.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// Integer weight `L / omega_r` of column `r`.
    pub fn weight(&self, r: usize) -> u64 {
        self.lcm / u64::from(self.point_orbits[r])
    }

    /// Column classes ordered by ascending length.
    pub fn column_classes(&self) -> Vec<ColumnClass> {
        let mut lengths: Vec<u32> = self.point_orbits.clone();
        lengths.sort_unstable();
        lengths.dedup();
        lengths
            .into_iter()
            .map(|length| ColumnClass {
                length,
                columns: (0..self.t())
                    .filter(|&r| self.point_orbits[r] == length)
                    .collect(),
            })
            .collect()
    }

    /// Block-orbit lengths in the order rows are generated: ascending.
    pub fn row_plan(&self) -> Vec<u32> {
        let mut plan = self.block_orbits.clone();
        plan.sort_unstable();
        plan
    }

    /// Smallest positive step an entry of a row with block-orbit length
    /// `block_orbit` may take in column `r` (dual integrality).
    pub fn entry_step(&self, r: usize, block_orbit: u32) -> u32 {
        let w = self.point_orbits[r];
        w / gcd(u64::from(w), u64::from(block_orbit)) as u32
    }

    /// Upper bound `min(omega_r, k)` on an entry in column `r`.
    pub fn entry_cap(&self, r: usize, params: &DesignParams) -> u32 {
        self.point_orbits[r].min(params.k())
    }
}

fn check_len(row: &[Entry], dist: &OrbitDistribution) -> Result<()> {
    if row.len() != dist.t() {
        return Err(Error::LengthMismatch {
            expected: dist.t(),
            found: row.len(),
        });
    }
    Ok(())
}

/// Row sum condition: the entries of a row add up to `k`.
pub fn check_row_sum(row: &[Entry], params: &DesignParams, dist: &OrbitDistribution) -> Result<bool> {
    check_len(row, dist)?;
    Ok(row.iter().map(|&g| u64::from(g)).sum::<u64>() == u64::from(params.k()))
}

/// `L * sum_r (Omega_i / omega_r) * gamma_ir^2`.
pub fn row_quadratic(row: &[Entry], dist: &OrbitDistribution, block_orbit: u32) -> Result<u64> {
    check_len(row, dist)?;
    Ok(row
        .iter()
        .enumerate()
        .map(|(r, &g)| dist.weight(r) * u64::from(block_orbit) * u64::from(g) * u64::from(g))
        .sum())
}

/// Right-hand side `L * (lambda (Omega_i - 1) + k)` matched by [`row_quadratic`].
pub fn row_quadratic_target(params: &DesignParams, dist: &OrbitDistribution, block_orbit: u32) -> u64 {
    dist.lcm() * (u64::from(params.lambda()) * u64::from(block_orbit - 1) + u64::from(params.k()))
}

/// `L * sum_r (Omega_j / omega_r) * gamma_ir * gamma_jr`.
pub fn pair_product(
    row_i: &[Entry],
    row_j: &[Entry],
    dist: &OrbitDistribution,
    block_orbit_j: u32,
) -> Result<u64> {
    check_len(row_i, dist)?;
    check_len(row_j, dist)?;
    Ok(scaled_prefix_product(row_i, row_j, dist, block_orbit_j))
}

/// Right-hand side `L * (lambda Omega_j + delta_ij (k - lambda))`.
pub fn pair_target(params: &DesignParams, dist: &OrbitDistribution, block_orbit_j: u32, same_row: bool) -> u64 {
    let delta = if same_row { u64::from(params.order()) } else { 0 };
    dist.lcm() * (u64::from(params.lambda()) * u64::from(block_orbit_j) + delta)
}

fn scaled_prefix_product(row_i: &[Entry], row_j: &[Entry], dist: &OrbitDistribution, block_orbit_j: u32) -> u64 {
    row_i
        .iter()
        .zip(row_j)
        .enumerate()
        .map(|(r, (&a, &b))| dist.weight(r) * u64::from(block_orbit_j) * u64::from(a) * u64::from(b))
        .sum()
}

/// Column-prefix bound on a pair of rows: the scaled product over the first
/// `m` columns must not exceed the full-row target. Both prefixes must have the
/// same length, which may be anything up to `t`.
pub fn prefix_bound_ok(
    prefix_i: &[Entry],
    prefix_j: &[Entry],
    params: &DesignParams,
    dist: &OrbitDistribution,
    block_orbit_j: u32,
    same_row: bool,
) -> bool {
    prefix_i.len() == prefix_j.len()
        && prefix_i.len() <= dist.t()
        && scaled_prefix_product(prefix_i, prefix_j, dist, block_orbit_j)
            <= pair_target(params, dist, block_orbit_j, same_row)
}

/// `omega_r | Omega_i * gamma_ir` for every column.
pub fn dual_integrality_ok(row: &[Entry], dist: &OrbitDistribution, block_orbit: u32) -> Result<bool> {
    check_len(row, dist)?;
    Ok(row
        .iter()
        .zip(dist.point_orbits())
        .all(|(&g, &w)| (u64::from(block_orbit) * u64::from(g)) % u64::from(w) == 0))
}

/// Whether a matrix covers every column class, i.e. has as many rows as the
/// distribution has orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixStatus {
    Partial,
    Complete,
}

/// An `s x t` matrix of non-negative integers together with the distribution
/// it is read against and the block-orbit length of each row.
///
/// Construction only checks the shape. Use [`PartialOrbitMatrix::violations`]
/// (or the search module's `verify_complete`) for the design conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialOrbitMatrix {
    params: DesignParams,
    dist: OrbitDistribution,
    rows: Vec<Vec<Entry>>,
    row_orbits: Vec<u32>,
}

impl PartialOrbitMatrix {
    pub fn new(
        params: DesignParams,
        dist: OrbitDistribution,
        rows: Vec<Vec<Entry>>,
        row_orbits: Vec<u32>,
    ) -> Result<Self> {
        if dist.point_orbits().iter().map(|&w| u64::from(w)).sum::<u64>() != u64::from(params.v()) {
            return Err(Error::InvalidDistribution(format!(
                "distribution does not cover v = {}",
                params.v()
            )));
        }
        if rows.len() != row_orbits.len() {
            return Err(Error::Contract(format!(
                "{} rows but {} row orbit lengths",
                rows.len(),
                row_orbits.len()
            )));
        }
        if rows.len() > dist.t() {
            return Err(Error::Contract(format!(
                "{} rows exceed t = {}",
                rows.len(),
                dist.t()
            )));
        }
        for row in &rows {
            check_len(row, &dist)?;
        }
        let mut plan = dist.row_plan();
        for &o in &row_orbits {
            match plan.iter().position(|&p| p == o) {
                Some(idx) => {
                    plan.remove(idx);
                }
                None => {
                    return Err(Error::Contract(format!(
                        "row orbit length {o} exceeds the block orbits of the distribution"
                    )))
                }
            }
        }
        Ok(PartialOrbitMatrix {
            params,
            dist,
            rows,
            row_orbits,
        })
    }

    /// Empty matrix (zero rows).
    pub fn empty(params: DesignParams, dist: OrbitDistribution) -> Self {
        PartialOrbitMatrix {
            params,
            dist,
            rows: Vec::new(),
            row_orbits: Vec::new(),
        }
    }

    pub fn params(&self) -> &DesignParams {
        &self.params
    }

    pub fn dist(&self) -> &OrbitDistribution {
        &self.dist
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn row_orbits(&self) -> &[u32] {
        &self.row_orbits
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn status(&self) -> MatrixStatus {
        if self.rows.len() == self.dist.t() {
            MatrixStatus::Complete
        } else {
            MatrixStatus::Partial
        }
    }

    /// `sum_i Omega_i gamma_ir / omega_r`: how many blocks through a point of
    /// orbit `r` are accounted for by the rows present. Truncating division;
    /// only meaningful when dual integrality holds.
    pub fn column_total(&self, r: usize) -> u64 {
        let w = u64::from(self.dist.point_orbits()[r]);
        self.rows
            .iter()
            .zip(&self.row_orbits)
            .map(|(row, &o)| u64::from(o) * u64::from(row[r]) / w)
            .sum()
    }

    /// Every design condition this matrix breaks. Empty means valid (as a
    /// partial matrix, or as a complete one when `s = t`).
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let params = &self.params;
        let dist = &self.dist;
        for (i, (row, &o)) in self.rows.iter().zip(&self.row_orbits).enumerate() {
            for (r, &g) in row.iter().enumerate() {
                if g > dist.entry_cap(r, params) {
                    out.push(Violation::EntryBound { row: i, column: r });
                }
            }
            if !check_row_sum(row, params, dist).unwrap_or(false) {
                out.push(Violation::RowSum { row: i });
            }
            if row_quadratic(row, dist, o).ok() != Some(row_quadratic_target(params, dist, o)) {
                out.push(Violation::RowQuadratic { row: i });
            }
            if !dual_integrality_ok(row, dist, o).unwrap_or(false) {
                out.push(Violation::DualIntegrality { row: i });
            }
            for (j, (other, &oj)) in self.rows.iter().zip(&self.row_orbits).enumerate().skip(i + 1) {
                if pair_product(row, other, dist, oj).ok() != Some(pair_target(params, dist, oj, false)) {
                    out.push(Violation::PairProduct { rows: (i, j) });
                }
            }
        }
        if !self.has_scaled_integer_columns() {
            return out;
        }
        let complete = self.status() == MatrixStatus::Complete;
        for r in 0..dist.t() {
            let total = self.column_total(r);
            let k = u64::from(params.k());
            if total > k || (complete && total != k) {
                out.push(Violation::ColumnSum { column: r, total });
            }
        }
        out
    }

    fn has_scaled_integer_columns(&self) -> bool {
        self.rows
            .iter()
            .zip(&self.row_orbits)
            .all(|(row, &o)| dual_integrality_ok(row, &self.dist, o).unwrap_or(false))
    }

    /// The dual matrix with entries `Omega_i gamma_ir / omega_r`, indexed by
    /// point orbit, read against the swapped distribution. Requires a complete
    /// matrix satisfying dual integrality.
    pub fn transpose_dual(&self) -> Result<PartialOrbitMatrix> {
        if self.status() != MatrixStatus::Complete {
            return Err(Error::Contract("transpose dual needs a complete matrix".into()));
        }
        if !self.has_scaled_integer_columns() {
            return Err(Error::Contract("dual entries are not integral".into()));
        }
        let t = self.dist.t();
        let new_points = self.row_orbits.clone();
        let new_blocks = self.dist.point_orbits().to_vec();
        let dist = OrbitDistribution::new(self.params.v(), new_points, new_blocks.clone())?;
        let rows = (0..t)
            .map(|r| {
                let w = self.dist.point_orbits()[r];
                self.rows
                    .iter()
                    .zip(&self.row_orbits)
                    .map(|(row, &o)| o * row[r] / w)
                    .collect()
            })
            .collect();
        PartialOrbitMatrix::new(self.params, dist, rows, new_blocks)
    }
}

impl fmt::Display for PartialOrbitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (row, o) in self.rows.iter().zip(&self.row_orbits) {
            write!(f, "{o:>3} |")?;
            for g in row {
                write!(f, " {g:>2}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Conjunction of the column-sum bounds: every column total is at most `k`,
/// and exactly `k` when the matrix is complete.
pub fn column_sums_ok(matrix: &PartialOrbitMatrix) -> bool {
    let k = u64::from(matrix.params().k());
    let complete = matrix.status() == MatrixStatus::Complete;
    if !matrix.has_scaled_integer_columns() {
        return false;
    }
    (0..matrix.dist().t()).all(|r| {
        let total = matrix.column_total(r);
        total <= k && (!complete || total == k)
    })
}

/// A single broken condition, as reported by verification.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    RowSum { row: usize },
    RowQuadratic { row: usize },
    PairProduct { rows: (usize, usize) },
    DualIntegrality { row: usize },
    EntryBound { row: usize, column: usize },
    ColumnSum { column: usize, total: u64 },
    RowCount { expected: usize, found: usize },
    RowOrbits,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RowSum { row } => write!(f, "row-sum row={row}"),
            Violation::RowQuadratic { row } => write!(f, "row-quadratic row={row}"),
            Violation::PairProduct { rows: (i, j) } => write!(f, "pair-product rows={i},{j}"),
            Violation::DualIntegrality { row } => write!(f, "dual-integrality row={row}"),
            Violation::EntryBound { row, column } => write!(f, "entry-bound row={row} column={column}"),
            Violation::ColumnSum { column, total } => write!(f, "column-sum column={column} total={total}"),
            Violation::RowCount { expected, found } => write!(f, "row-count expected={expected} found={found}"),
            Violation::RowOrbits => write!(f, "row-orbits"),
        }
    }
}
