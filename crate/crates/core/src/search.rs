//! Row-by-row construction of partial and complete orbit matrices.
//!
//! Nodes are canonical matrices (see [`crate::canon`]). A child appends one
//! row that is lexicographically smaller than the previous row of the same
//! block-orbit length and keeps the matrix canonical, so every equivalence
//! class is produced exactly once and counts per depth are counts of
//! inequivalent partial matrices.
//!
//! Work is split at a fixed frontier depth: the tree is expanded breadth-first
//! up to that depth on the calling thread and the surviving nodes are searched
//! independently. Results are merged in canonical order, so reports do not
//! depend on the number of workers.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use crate::canon::{canonical_rows, is_canonical, Shape};
use crate::design::{DesignParams, Entry, MatrixStatus, OrbitDistribution, PartialOrbitMatrix, Violation};
use crate::error::{Error, Result};
use crate::row_types::{enumerate_types, RowType, TypeQuery};

/// Necessary conditions checked on top of the row and pair conditions, dual
/// integrality and column-sum bounds, which are always enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pruning {
    /// Columns to the left of the first nonzero entry of the newest row can
    /// only be completed by rows of longer block orbits; drop the node if
    /// they cannot be.
    pub leading_columns: bool,
    /// Every column must still be able to reach total `k` with the rows that
    /// remain in the plan.
    pub column_capacity: bool,
    /// Partial sums of the dual (column) pair conditions must stay within
    /// their targets.
    pub column_pairs: bool,
}

impl Pruning {
    /// Only conditions that hold for any extendable prefix in canonical order.
    pub const COUNTING: Pruning = Pruning {
        leading_columns: true,
        column_capacity: false,
        column_pairs: false,
    };

    /// Everything; for runs where only complete matrices matter.
    pub const STRONG: Pruning = Pruning {
        leading_columns: true,
        column_capacity: true,
        column_pairs: true,
    };
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::COUNTING
    }
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub params: DesignParams,
    pub dist: OrbitDistribution,
    /// Starting rows; canonicalised before the search starts.
    pub prescribed: Option<PartialOrbitMatrix>,
    pub target_depth: usize,
    pub count_only: bool,
    pub store_limit: usize,
    pub workers: usize,
    /// Depth at which the tree is split between workers.
    pub split_depth: usize,
    pub pruning: Pruning,
}

impl SearchSpec {
    pub fn new(params: DesignParams, dist: OrbitDistribution) -> Self {
        let t = dist.t();
        SearchSpec {
            params,
            dist,
            prescribed: None,
            target_depth: t,
            count_only: false,
            store_limit: 10_000,
            workers: 1,
            split_depth: 0,
            pruning: Pruning::default(),
        }
    }

    pub fn with_prescribed(mut self, m: PartialOrbitMatrix) -> Self {
        self.prescribed = Some(m);
        self
    }

    pub fn with_target_depth(mut self, depth: usize) -> Self {
        self.target_depth = depth;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_split_depth(mut self, depth: usize) -> Self {
        self.split_depth = depth;
        self
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn count_only(mut self, yes: bool) -> Self {
        self.count_only = yes;
        self
    }

    pub fn with_store_limit(mut self, limit: usize) -> Self {
        self.store_limit = limit;
        self
    }

    pub fn row_plan(&self) -> Vec<u32> {
        self.dist.row_plan()
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.dist.t();
        if self.target_depth > t {
            return Err(Error::Contract(format!("target depth {} exceeds t = {t}", self.target_depth)));
        }
        if self.params.k() > u32::from(u8::MAX) {
            return Err(Error::Contract("block size above 255 is not supported by the search".into()));
        }
        if t > 64 {
            return Err(Error::Contract("at most 64 orbits are supported".into()));
        }
        if let Some(m) = &self.prescribed {
            if m.params() != &self.params || m.dist() != &self.dist {
                return Err(Error::Contract("prescribed rows use a different distribution".into()));
            }
            if m.row_count() > self.target_depth {
                return Err(Error::Contract("more prescribed rows than the target depth".into()));
            }
            let v = m.violations();
            if !v.is_empty() {
                return Err(Error::Contract(format!(
                    "prescribed rows are invalid: {}",
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                )));
            }
            // the prescribed rows must occupy a prefix of the row plan
            let plan = self.row_plan();
            let mut orbits = m.row_orbits().to_vec();
            orbits.sort_unstable();
            let n = orbits.len();
            if orbits[..] != plan[..n] {
                return Err(Error::Contract(
                    "prescribed rows must be the first rows of the ascending row plan".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NodeStats {
    pub nodes: u64,
    /// Rows that passed every arithmetic condition.
    pub candidates: u64,
    pub non_canonical: u64,
    pub pruned: u64,
}

impl NodeStats {
    fn add(&mut self, o: &NodeStats) {
        self.nodes += o.nodes;
        self.candidates += o.candidates;
        self.non_canonical += o.non_canonical;
        self.pruned += o.pruned;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthCount {
    pub depth: usize,
    pub count: u64,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub start_depth: usize,
    pub target_depth: usize,
    /// Inequivalent partial matrices per depth, from `start_depth` to the target.
    pub counts: Vec<DepthCount>,
    /// Matrices at the target depth, canonical and sorted; at most `store_limit`.
    pub matrices: Vec<PartialOrbitMatrix>,
    /// Set when more target-depth matrices were found than retained.
    pub truncated: bool,
    pub stats: NodeStats,
    /// Order-independent digest of every target-depth matrix.
    pub fingerprint: u64,
    pub elapsed_secs: f64,
}

impl SearchReport {
    pub fn count_at(&self, depth: usize) -> Option<u64> {
        self.counts.iter().find(|c| c.depth == depth).map(|c| c.count)
    }

    pub fn terminal_count(&self) -> u64 {
        self.count_at(self.target_depth).unwrap_or(0)
    }

    /// Deepest depth with at least one matrix.
    pub fn max_depth_reached(&self) -> usize {
        self.counts
            .iter()
            .filter(|c| c.count > 0)
            .map(|c| c.depth)
            .max()
            .unwrap_or(self.start_depth)
    }
}

/// Canonical representative of a matrix's equivalence class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivalenceClassKey {
    pub row_orbits: Vec<u32>,
    pub rows: Vec<Vec<Entry>>,
}

impl EquivalenceClassKey {
    pub fn to_matrix(&self, params: DesignParams, dist: OrbitDistribution) -> Result<PartialOrbitMatrix> {
        PartialOrbitMatrix::new(params, dist, self.rows.clone(), self.row_orbits.clone())
    }
}

/// Lexicographically largest matrix reachable by permuting rows within equal
/// block-orbit lengths and columns within equal point-orbit lengths, with rows
/// grouped by ascending block-orbit length.
pub fn canonical_form(m: &PartialOrbitMatrix) -> EquivalenceClassKey {
    let shape = Shape::new(m.dist());
    let (rows, row_orbits) = canonical_rows(&shape, m.rows(), m.row_orbits());
    EquivalenceClassKey { row_orbits, rows }
}

/// Re-checks every condition of a complete orbit matrix from scratch.
pub fn verify_complete(m: &PartialOrbitMatrix) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if m.row_count() != m.dist().t() {
        out.push(Violation::RowCount {
            expected: m.dist().t(),
            found: m.row_count(),
        });
    }
    let mut plan = m.dist().block_orbits().to_vec();
    plan.sort_unstable();
    let mut have = m.row_orbits().to_vec();
    have.sort_unstable();
    if plan != have {
        out.push(Violation::RowOrbits);
    }
    out.extend(m.violations());
    if m.status() == MatrixStatus::Complete {
        // Column totals must be exactly k. `violations` already covers that,
        // but only when every row is dually integral; recount here with the
        // rational sums cross-multiplied instead.
        let k = u64::from(m.params().k());
        for r in 0..m.dist().t() {
            let w = u64::from(m.dist().point_orbits()[r]);
            let num: u64 = m
                .rows()
                .iter()
                .zip(m.row_orbits())
                .map(|(row, &o)| u64::from(o) * u64::from(row[r]))
                .sum();
            if num != k * w {
                let v = Violation::ColumnSum { column: r, total: num / w };
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Checks a partial matrix; identical to [`verify_complete`] minus the
/// completeness requirements.
pub fn verify_partial(m: &PartialOrbitMatrix) -> std::result::Result<(), Vec<Violation>> {
    let v = m.violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Row type laid out as value counts per column class, for assignment.
#[derive(Debug, Clone)]
struct TypePlan {
    /// counts[class][value]
    counts: Vec<Vec<u8>>,
    /// largest value per class
    max_value: Vec<u8>,
}

impl TypePlan {
    fn from_type(ty: &RowType) -> Self {
        let counts = ty
            .classes
            .iter()
            .map(|c| {
                let top = c.entries.iter().copied().max().unwrap_or(0) as usize;
                let mut v = vec![0u8; top + 1];
                for &e in &c.entries {
                    v[e as usize] += 1;
                }
                v
            })
            .collect();
        let max_value = ty
            .classes
            .iter()
            .map(|c| c.entries.iter().copied().max().unwrap_or(0) as u8)
            .collect();
        TypePlan { counts, max_value }
    }
}

#[derive(Debug, Clone)]
struct Node {
    rows: Vec<Vec<u8>>,
    orbits: Vec<u32>,
    /// sum_i Omega_i gamma_ir / omega_r
    col_total: Vec<u32>,
    /// sum_i Omega_i gamma_ir gamma_is, row-major t x t
    col_pair: Vec<u64>,
}

impl Node {
    fn root(t: usize) -> Self {
        Node {
            rows: Vec::new(),
            orbits: Vec::new(),
            col_total: vec![0; t],
            col_pair: vec![0; t * t],
        }
    }

    fn depth(&self) -> usize {
        self.rows.len()
    }
}

struct Engine {
    params: DesignParams,
    dist: OrbitDistribution,
    t: usize,
    k: u32,
    lambda_l: u64,
    shape: Shape,
    weight: Vec<u64>,
    omega: Vec<u32>,
    col_class: Vec<usize>,
    plan: Vec<u32>,
    types: HashMap<u32, Vec<TypePlan>>,
    pruning: Pruning,
}

struct RowGen<'a> {
    engine: &'a Engine,
    node: &'a Node,
    omega_next: u32,
    counts: Vec<Vec<u8>>,
    row: Vec<u8>,
    acc: Vec<u64>,
    /// suffix[j][c]: largest contribution columns c.. can still add to the pair sum with row j
    suffix: Vec<Vec<u64>>,
    prev_in_cell: &'a [Option<usize>],
    lex_bound: Option<&'a [u8]>,
    out: &'a mut Vec<Vec<u8>>,
}

impl RowGen<'_> {
    fn go(&mut self, c: usize, tight: bool) {
        let e = self.engine;
        if c == e.t {
            if tight {
                return;
            }
            if self.acc.iter().any(|&a| a != e.lambda_l) {
                return;
            }
            self.out.push(self.row.clone());
            return;
        }
        for (j, &a) in self.acc.iter().enumerate() {
            if a + self.suffix[j][c] < e.lambda_l {
                return;
            }
        }
        let class = e.col_class[c];
        let mut hi = (self.counts[class].len() - 1) as u8;
        if let Some(p) = self.prev_in_cell[c] {
            hi = hi.min(self.row[p]);
        }
        if tight {
            if let Some(bound) = self.lex_bound {
                hi = hi.min(bound[c]);
            }
        }
        let w = e.weight[c];
        let omega_c = e.omega[c];
        for v in (0..=hi).rev() {
            if self.counts[class][v as usize] == 0 {
                continue;
            }
            if self.node.col_total[c] + self.omega_next * u32::from(v) / omega_c > e.k {
                continue;
            }
            let mut ok = true;
            for (j, prev) in self.node.rows.iter().enumerate() {
                if self.acc[j] + w * u64::from(v) * u64::from(prev[c]) > e.lambda_l {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if e.pruning.column_pairs && !self.column_pairs_ok(c, v) {
                continue;
            }
            for (j, prev) in self.node.rows.iter().enumerate() {
                self.acc[j] += w * u64::from(v) * u64::from(prev[c]);
            }
            self.counts[class][v as usize] -= 1;
            self.row[c] = v;
            let still_tight = tight && self.lex_bound.is_some_and(|b| b[c] == v);
            self.go(c + 1, still_tight);
            self.row[c] = 0;
            self.counts[class][v as usize] += 1;
            for (j, prev) in self.node.rows.iter().enumerate() {
                self.acc[j] -= w * u64::from(v) * u64::from(prev[c]);
            }
        }
    }

    fn column_pairs_ok(&self, c: usize, v: u8) -> bool {
        let e = self.engine;
        let t = e.t;
        let o = u64::from(self.omega_next);
        let lam = u64::from(e.params.lambda());
        let n = u64::from(e.params.order());
        let wc = u64::from(e.omega[c]);
        for r in 0..=c {
            let gr = if r == c { v } else { self.row[r] };
            let bound = lam * u64::from(e.omega[r]) * wc + if r == c { n * wc } else { 0 };
            if self.node.col_pair[r * t + c] + o * u64::from(gr) * u64::from(v) > bound {
                return false;
            }
        }
        true
    }
}

impl Engine {
    fn new(params: DesignParams, dist: OrbitDistribution, pruning: Pruning) -> Result<Self> {
        let t = dist.t();
        let mut col_class = vec![0; t];
        for (ci, class) in dist.column_classes().iter().enumerate() {
            for &c in &class.columns {
                col_class[c] = ci;
            }
        }
        let plan = dist.row_plan();
        let mut types = HashMap::new();
        for &o in &plan {
            if let std::collections::hash_map::Entry::Vacant(slot) = types.entry(o) {
                let tys = enumerate_types(&TypeQuery::new(dist.clone(), o), &params)?;
                slot.insert(tys.iter().map(TypePlan::from_type).collect());
            }
        }
        Ok(Engine {
            params,
            t,
            k: params.k(),
            lambda_l: dist.lcm() * u64::from(params.lambda()),
            shape: Shape::new(&dist),
            weight: (0..t).map(|r| dist.weight(r)).collect(),
            omega: dist.point_orbits().to_vec(),
            col_class,
            plan,
            types,
            pruning,
            dist,
        })
    }

    fn node_from_rows(&self, rows: Vec<Vec<u8>>, orbits: Vec<u32>) -> Node {
        let mut node = Node::root(self.t);
        for (row, o) in rows.into_iter().zip(orbits) {
            node = self.child(&node, row, o);
        }
        node
    }

    fn child(&self, node: &Node, row: Vec<u8>, omega_next: u32) -> Node {
        let t = self.t;
        let mut col_total = node.col_total.clone();
        let mut col_pair = node.col_pair.clone();
        let o = u64::from(omega_next);
        for r in 0..t {
            col_total[r] += omega_next * u32::from(row[r]) / self.omega[r];
            if row[r] == 0 {
                continue;
            }
            for s in 0..t {
                col_pair[r * t + s] += o * u64::from(row[r]) * u64::from(row[s]);
            }
        }
        let mut rows = node.rows.clone();
        rows.push(row);
        let mut orbits = node.orbits.clone();
        orbits.push(omega_next);
        Node {
            rows,
            orbits,
            col_total,
            col_pair,
        }
    }

    /// For each column, the nearest earlier column of the same class that is
    /// identical on every existing row.
    fn prev_in_cell(&self, node: &Node) -> Vec<Option<usize>> {
        (0..self.t)
            .map(|c| {
                (0..c)
                    .rev()
                    .find(|&p| self.col_class[p] == self.col_class[c] && node.rows.iter().all(|r| r[p] == r[c]))
            })
            .collect()
    }

    /// Rows that can follow `node` with block-orbit length `omega_next` and
    /// satisfy every arithmetic condition. With `orderly`, rows must also be
    /// smaller than the last row of the same block-orbit length.
    fn candidate_rows(&self, node: &Node, omega_next: u32, types: &[TypePlan], orderly: bool) -> Vec<Vec<u8>> {
        let prev_in_cell = self.prev_in_cell(node);
        let lex_bound = if orderly {
            node.rows
                .last()
                .filter(|_| node.orbits.last() == Some(&omega_next))
                .map(|r| r.as_slice())
        } else {
            None
        };
        let mut out = Vec::new();
        for ty in types {
            let suffix = node
                .rows
                .iter()
                .map(|prev| {
                    let mut s = vec![0u64; self.t + 1];
                    for c in (0..self.t).rev() {
                        let top = u64::from(ty.max_value[self.col_class[c]]);
                        s[c] = s[c + 1] + self.weight[c] * top * u64::from(prev[c]);
                    }
                    s
                })
                .collect();
            let mut gen = RowGen {
                engine: self,
                node,
                omega_next,
                counts: ty.counts.clone(),
                row: vec![0; self.t],
                acc: vec![0; node.rows.len()],
                suffix,
                prev_in_cell: &prev_in_cell,
                lex_bound,
                out: &mut out,
            };
            gen.go(0, lex_bound.is_some());
        }
        out
    }

    /// Largest entry a row of block-orbit length `o` may put in column `c`.
    fn entry_max(&self, c: usize, o: u32) -> u32 {
        let cap = self.omega[c].min(self.k);
        let step = self.dist.entry_step(c, o);
        cap / step * step
    }

    /// Lookahead on a freshly built child.
    fn viable(&self, node: &Node) -> bool {
        let p = &self.pruning;
        let d = node.depth();
        if d == self.t {
            return node.col_total.iter().all(|&x| x == self.k);
        }
        if !(p.leading_columns || p.column_capacity) || d == 0 {
            return true;
        }
        let last = &node.rows[d - 1];
        let last_orbit = node.orbits[d - 1];
        let first_nonzero = last.iter().position(|&x| x != 0).unwrap_or(self.t);
        let remaining = &self.plan[d..];
        let limit = if p.column_capacity { self.t } else { first_nonzero.min(self.t) };
        for c in 0..limit {
            let deficit = self.k - node.col_total[c];
            if deficit == 0 {
                continue;
            }
            let mut capacity = 0u32;
            for &o in remaining {
                let top = if o == last_orbit && p.leading_columns {
                    match c.cmp(&first_nonzero) {
                        std::cmp::Ordering::Less => 0,
                        std::cmp::Ordering::Equal => self.entry_max(c, o).min(u32::from(last[c])),
                        std::cmp::Ordering::Greater => self.entry_max(c, o),
                    }
                } else {
                    self.entry_max(c, o)
                };
                capacity += o * top / self.omega[c];
                if capacity >= deficit {
                    break;
                }
            }
            if capacity < deficit {
                return false;
            }
        }
        true
    }

    fn children(&self, node: &Node, stats: &mut NodeStats) -> Vec<Node> {
        let d = node.depth();
        let omega_next = self.plan[d];
        let types = &self.types[&omega_next];
        let mut out = Vec::new();
        for row in self.candidate_rows(node, omega_next, types, true) {
            stats.candidates += 1;
            let mut rows = node.rows.clone();
            rows.push(row.clone());
            let mut orbits = node.orbits.clone();
            orbits.push(omega_next);
            if !is_canonical(&self.shape, &rows, &orbits) {
                stats.non_canonical += 1;
                continue;
            }
            let child = self.child(node, row, omega_next);
            if !self.viable(&child) {
                stats.pruned += 1;
                continue;
            }
            out.push(child);
        }
        out
    }

    fn to_matrix(&self, rows: &[Vec<u8>], orbits: &[u32]) -> PartialOrbitMatrix {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Entry::from(x)).collect()).collect();
        PartialOrbitMatrix::new(self.params, self.dist.clone(), rows, orbits.to_vec())
            .expect("search nodes have valid shape")
    }
}

fn digest(node: &Node) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (row, o) in node.rows.iter().zip(&node.orbits) {
        for b in o.to_le_bytes().iter().chain(row.iter()) {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

#[derive(Default)]
struct Partial {
    counts: Vec<u64>,
    kept: Vec<Vec<Vec<u8>>>,
    truncated: bool,
    stats: NodeStats,
    fingerprint: u64,
}

impl Partial {
    fn new(levels: usize) -> Self {
        Partial {
            counts: vec![0; levels],
            ..Default::default()
        }
    }

    fn keep(&mut self, rows: Vec<Vec<u8>>, limit: usize) {
        self.kept.push(rows);
        if self.kept.len() > 2 * limit.max(1) {
            self.trim(limit);
        }
    }

    fn trim(&mut self, limit: usize) {
        self.kept.sort();
        self.kept.dedup();
        if self.kept.len() > limit {
            self.kept.truncate(limit);
            self.truncated = true;
        }
    }

    fn merge(&mut self, o: Partial, limit: usize) {
        for (a, b) in self.counts.iter_mut().zip(&o.counts) {
            *a += b;
        }
        self.kept.extend(o.kept);
        self.truncated |= o.truncated;
        self.stats.add(&o.stats);
        self.fingerprint = self.fingerprint.wrapping_add(o.fingerprint);
        self.trim(limit);
    }
}

struct Dfs<'a> {
    engine: &'a Engine,
    spec: &'a SearchSpec,
    start: usize,
    acc: Partial,
}

impl Dfs<'_> {
    fn record(&mut self, node: &Node) {
        let d = node.depth();
        self.acc.counts[d - self.start] += 1;
        self.acc.stats.nodes += 1;
        if d == self.spec.target_depth {
            self.acc.fingerprint = self.acc.fingerprint.wrapping_add(digest(node));
            if !self.spec.count_only {
                self.acc.keep(node.rows.clone(), self.spec.store_limit);
            }
        }
    }

    fn descend(&mut self, node: &Node) {
        if node.depth() == self.spec.target_depth {
            return;
        }
        let mut stats = NodeStats::default();
        let kids = self.engine.children(node, &mut stats);
        self.acc.stats.add(&stats);
        for kid in kids {
            self.record(&kid);
            self.descend(&kid);
        }
    }
}

/// Depth-first canonical generation from the prescribed rows (or from the
/// empty matrix) down to the target depth.
pub fn run_search(spec: &SearchSpec) -> Result<SearchReport> {
    spec.validate()?;
    let started = Instant::now();
    let engine = Engine::new(spec.params, spec.dist.clone(), spec.pruning)?;
    let root = match &spec.prescribed {
        None => Node::root(engine.t),
        Some(m) => {
            let (rows, orbits) = canonical_rows(&engine.shape, m.rows(), m.row_orbits());
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x as u8).collect())
                .collect();
            engine.node_from_rows(rows, orbits)
        }
    };
    let start = root.depth();
    let target = spec.target_depth;
    let levels = target - start + 1;
    let limit = spec.store_limit;

    let mut total = Partial::new(levels);
    let mut first = Dfs {
        engine: &engine,
        spec,
        start,
        acc: Partial::new(levels),
    };
    first.record(&root);
    total.merge(std::mem::take(&mut first.acc), limit);
    total.stats.nodes -= 1;

    // breadth-first to the split depth
    let split = spec.split_depth.clamp(start, target);
    let mut frontier = vec![root];
    while frontier.first().is_some_and(|n| n.depth() < split) {
        let mut next = Vec::new();
        let mut level = Dfs {
            engine: &engine,
            spec,
            start,
            acc: Partial::new(levels),
        };
        for node in &frontier {
            let mut stats = NodeStats::default();
            for kid in engine.children(node, &mut stats) {
                level.record(&kid);
                next.push(kid);
            }
            level.acc.stats.add(&stats);
        }
        total.merge(level.acc, limit);
        frontier = next;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers.max(1))
        .build()
        .map_err(|e| Error::Contract(format!("thread pool: {e}")))?;
    let parts: Vec<Partial> = pool.install(|| {
        frontier
            .par_iter()
            .map(|node| {
                let mut dfs = Dfs {
                    engine: &engine,
                    spec,
                    start,
                    acc: Partial::new(levels),
                };
                dfs.descend(node);
                dfs.acc.trim(limit);
                dfs.acc
            })
            .collect()
    });
    for part in parts {
        total.merge(part, limit);
    }
    total.trim(limit);

    let matrices = total
        .kept
        .iter()
        .map(|rows| engine.to_matrix(rows, &engine.plan[..rows.len()]))
        .collect();
    let counts = total
        .counts
        .iter()
        .enumerate()
        .map(|(i, &count)| DepthCount { depth: start + i, count })
        .collect();
    Ok(SearchReport {
        start_depth: start,
        target_depth: target,
        counts,
        matrices,
        truncated: total.truncated,
        stats: total.stats,
        fingerprint: total.fingerprint,
        elapsed_secs: started.elapsed().as_secs_f64(),
    })
}

/// Greatest depth at which the search finds a partial matrix.
pub fn max_completable_rows(spec: &SearchSpec) -> Result<usize> {
    let spec = spec.clone().with_target_depth(spec.dist.t()).count_only(true);
    Ok(run_search(&spec)?.max_depth_reached())
}

/// Every inequivalent extension of `m` by one row of block-orbit length
/// `omega_next` built from the given types. Rows only have to satisfy the
/// local conditions; the result is canonical and sorted.
pub fn extend_one_row(m: &PartialOrbitMatrix, omega_next: u32, types: &[RowType]) -> Result<Vec<PartialOrbitMatrix>> {
    let dist = m.dist().clone();
    if m.row_count() >= dist.t() {
        return Ok(Vec::new());
    }
    let mut remaining = dist.row_plan();
    for o in m.row_orbits() {
        if let Some(i) = remaining.iter().position(|x| x == o) {
            remaining.remove(i);
        }
    }
    if !remaining.contains(&omega_next) {
        return Err(Error::Contract(format!("no block orbit of length {omega_next} left in the plan")));
    }
    if let Some(ty) = types.iter().find(|ty| ty.block_orbit != omega_next) {
        return Err(Error::Contract(format!(
            "type {ty} is for block orbit length {}, not {omega_next}",
            ty.block_orbit
        )));
    }
    if m.params().k() > u32::from(u8::MAX) || m.rows().iter().flatten().any(|&x| x > u32::from(u8::MAX)) {
        return Err(Error::Contract("entries above 255 are not supported".into()));
    }
    let engine = Engine::new(*m.params(), dist.clone(), Pruning {
        leading_columns: false,
        column_capacity: false,
        column_pairs: false,
    })?;
    let rows: Vec<Vec<u8>> = m.rows().iter().map(|r| r.iter().map(|&x| x as u8).collect()).collect();
    let node = engine.node_from_rows(rows.clone(), m.row_orbits().to_vec());
    let plans: Vec<TypePlan> = types.iter().map(TypePlan::from_type).collect();
    let mut seen = BTreeSet::new();
    for row in engine.candidate_rows(&node, omega_next, &plans, false) {
        let mut all = rows.clone();
        all.push(row);
        let mut orbits = m.row_orbits().to_vec();
        orbits.push(omega_next);
        seen.insert(canonical_rows(&engine.shape, &all, &orbits));
    }
    seen.into_iter()
        .rev()
        .map(|(rows, orbits)| {
            let rows = rows.into_iter().map(|r| r.into_iter().map(Entry::from).collect()).collect();
            PartialOrbitMatrix::new(*m.params(), dist.clone(), rows, orbits)
        })
        .collect()
}
