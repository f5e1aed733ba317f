//! Admissible row types: multisets of entries per column class that satisfy
//! the row sum, the row quadratic condition, entry bounds, and dual
//! integrality for a given block-orbit length.

use std::cmp::Ordering;
use std::fmt;

use crate::design::{row_quadratic_target, ColumnClass, DesignParams, Entry, OrbitDistribution};
use crate::error::{Error, Result};

/// Restriction applied to every column of one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PinKind {
    Exact(Entry),
    Cap(Entry),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pin {
    /// Point-orbit length identifying the column class.
    pub class_length: u32,
    pub kind: PinKind,
}

impl Pin {
    pub fn zero(class_length: u32) -> Self {
        Pin {
            class_length,
            kind: PinKind::Exact(0),
        }
    }

    pub fn cap(class_length: u32, cap: Entry) -> Self {
        Pin {
            class_length,
            kind: PinKind::Cap(cap),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeQuery {
    pub dist: OrbitDistribution,
    pub block_orbit: u32,
    pub pins: Vec<Pin>,
}

impl TypeQuery {
    pub fn new(dist: OrbitDistribution, block_orbit: u32) -> Self {
        TypeQuery {
            dist,
            block_orbit,
            pins: Vec::new(),
        }
    }

    pub fn with_pin(mut self, pin: Pin) -> Self {
        self.pins.push(pin);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_orbit == 0 {
            return Err(Error::Contract("block orbit length must be positive".into()));
        }
        for pin in &self.pins {
            if !self.dist.point_orbits().contains(&pin.class_length) {
                return Err(Error::Contract(format!(
                    "pin references missing column class of length {}",
                    pin.class_length
                )));
            }
        }
        Ok(())
    }

    /// Allowed values for one column class, ascending.
    pub(crate) fn allowed_values(&self, class: &ColumnClass, params: &DesignParams) -> Vec<Entry> {
        let step = self.dist.entry_step(class.columns[0], self.block_orbit);
        let mut hi = class.length.min(params.k());
        let mut lo = 0;
        for pin in self.pins.iter().filter(|p| p.class_length == class.length) {
            match pin.kind {
                PinKind::Exact(v) => {
                    lo = lo.max(v);
                    hi = hi.min(v);
                }
                PinKind::Cap(c) => hi = hi.min(c),
            }
        }
        (lo..=hi).filter(|v| v % step == 0).collect()
    }
}

/// One admissible row pattern. `classes[c]` lists the entries placed on the
/// columns of the `c`-th column class (ascending length), non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowType {
    pub block_orbit: u32,
    pub classes: Vec<ClassEntries>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassEntries {
    pub length: u32,
    pub entries: Vec<Entry>,
}

impl RowType {
    /// Entries of all classes concatenated in class order.
    pub fn flat(&self) -> Vec<Entry> {
        self.classes.iter().flat_map(|c| c.entries.iter().copied()).collect()
    }

    /// The type laid out on concrete columns, entries non-increasing inside each class.
    pub fn to_row(&self, dist: &OrbitDistribution) -> Vec<Entry> {
        let mut row = vec![0; dist.t()];
        for (class, entries) in dist.column_classes().iter().zip(&self.classes) {
            for (&col, &value) in class.columns.iter().zip(&entries.entries) {
                row[col] = value;
            }
        }
        row
    }

    /// Exponent notation, e.g. `1^3 0^1 | 13^1 0^8`.
    pub fn notation(&self) -> String {
        self.classes
            .iter()
            .map(|c| {
                let mut parts = Vec::new();
                let mut i = 0;
                while i < c.entries.len() {
                    let v = c.entries[i];
                    let n = c.entries[i..].iter().take_while(|&&x| x == v).count();
                    parts.push(format!("{v}^{n}"));
                    i += n;
                }
                format!("[{}] {}", c.length, parts.join(" "))
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl fmt::Display for RowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat: Vec<String> = self.flat().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", flat.join(","))
    }
}

/// Orders types by descending concatenated entries.
pub(crate) fn type_order(a: &RowType, b: &RowType) -> Ordering {
    b.flat().cmp(&a.flat())
}

struct Enumerator<'a> {
    classes: Vec<ClassPlan>,
    k: u64,
    quad_target: u64,
    block_orbit: u32,
    out: &'a mut Vec<RowType>,
    current: Vec<Vec<Entry>>,
}

struct ClassPlan {
    length: u32,
    size: usize,
    /// allowed values, descending
    values: Vec<Entry>,
    /// `Omega * L / omega` for this class
    weight: u64,
}

impl Enumerator<'_> {
    // Max sum and max quad reachable by all positions from class `c` (position `pos`) onwards,
    // given that the current class is capped at `cap`.
    fn reach(&self, c: usize, remaining_in_class: usize, cap: Entry) -> (u64, u64) {
        let mut sum = 0u64;
        let mut quad = 0u64;
        let plan = &self.classes[c];
        let top = plan.values.iter().copied().find(|&v| v <= cap).unwrap_or(0) as u64;
        sum += top * remaining_in_class as u64;
        quad += plan.weight * top * top * remaining_in_class as u64;
        for p in &self.classes[c + 1..] {
            let top = u64::from(p.values.first().copied().unwrap_or(0));
            sum += top * p.size as u64;
            quad += p.weight * top * top * p.size as u64;
        }
        (sum, quad)
    }

    fn min_weight_from(&self, c: usize) -> u64 {
        self.classes[c..].iter().map(|p| p.weight).min().unwrap_or(0)
    }

    fn recurse(&mut self, c: usize, pos: usize, cap: Entry, sum: u64, quad: u64) {
        if c == self.classes.len() {
            if sum == self.k && quad == self.quad_target {
                self.out.push(RowType {
                    block_orbit: self.block_orbit,
                    classes: self
                        .classes
                        .iter()
                        .zip(&self.current)
                        .map(|(p, e)| ClassEntries {
                            length: p.length,
                            entries: e.clone(),
                        })
                        .collect(),
                });
            }
            return;
        }
        let size = self.classes[c].size;
        if pos == size {
            self.recurse(c + 1, 0, Entry::MAX, sum, quad);
            return;
        }
        let need_sum = self.k - sum;
        let need_quad = self.quad_target - quad;
        // gamma^2 >= gamma for integers
        if need_quad < self.min_weight_from(c) * need_sum {
            return;
        }
        let (max_sum, max_quad) = self.reach(c, size - pos, cap);
        if max_sum < need_sum || max_quad < need_quad {
            return;
        }
        let weight = self.classes[c].weight;
        let values: Vec<Entry> = self.classes[c].values.iter().copied().filter(|&v| v <= cap).collect();
        for v in values {
            let s = sum + u64::from(v);
            let q = quad + weight * u64::from(v) * u64::from(v);
            if s > self.k || q > self.quad_target {
                continue;
            }
            self.current[c].push(v);
            self.recurse(c, pos + 1, v, s, q);
            self.current[c].pop();
        }
    }
}

/// All admissible row types for a query, sorted by descending entries.
/// An infeasible query yields an empty list.
pub fn enumerate_types(query: &TypeQuery, params: &DesignParams) -> Result<Vec<RowType>> {
    query.validate()?;
    let dist = &query.dist;
    let classes: Vec<ClassPlan> = dist
        .column_classes()
        .iter()
        .map(|class| {
            let mut values = query.allowed_values(class, params);
            values.reverse();
            ClassPlan {
                length: class.length,
                size: class.columns.len(),
                values,
                weight: dist.weight(class.columns[0]) * u64::from(query.block_orbit),
            }
        })
        .collect();
    let mut out = Vec::new();
    let current = vec![Vec::new(); classes.len()];
    let mut en = Enumerator {
        classes,
        k: u64::from(params.k()),
        quad_target: row_quadratic_target(params, dist, query.block_orbit),
        block_orbit: query.block_orbit,
        out: &mut out,
        current,
    };
    en.recurse(0, 0, Entry::MAX, 0, 0);
    out.sort_by(type_order);
    Ok(out)
}

/// Row types of fixed blocks (block-orbit length 1).
pub fn fixed_block_types(params: &DesignParams, dist: &OrbitDistribution) -> Result<Vec<RowType>> {
    if !dist.block_orbits().contains(&1) {
        return Err(Error::Contract("distribution has no fixed block".into()));
    }
    enumerate_types(&TypeQuery::new(dist.clone(), 1), params)
}
