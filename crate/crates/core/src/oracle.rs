//! Independent reference implementations used to certify the search engine:
//! difference-set designs, quotient orbit matrices of explicit actions, and
//! naive generate-then-filter enumerators. Arithmetic here is done with
//! plain fractions and does not reuse the scaled kernel.

use std::collections::BTreeSet;
use std::fmt;

use crate::design::{DesignParams, Entry, OrbitDistribution, PartialOrbitMatrix};
use crate::error::{Error, Result};
use crate::row_types::{ClassEntries, PinKind, RowType, TypeQuery};

/// Default limit on the number of candidates an oracle may visit.
pub const DEFAULT_CEILING: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    num: i128,
    den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Frac {
    fn new(num: i128, den: i128) -> Self {
        let g = gcd(num, den).max(1);
        Frac {
            num: num / g,
            den: den / g,
        }
    }

    fn int(n: i128) -> Self {
        Frac { num: n, den: 1 }
    }

    fn add(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }
}

/// A `b x v` 0/1 incidence matrix; row `j` is block `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    pub v: usize,
    pub b: usize,
    pub incidence: Vec<Vec<u8>>,
}

impl IncidenceStructure {
    pub fn new(v: usize, incidence: Vec<Vec<u8>>) -> Result<Self> {
        if incidence.iter().any(|r| r.len() != v || r.iter().any(|&x| x > 1)) {
            return Err(Error::Contract("incidence rows must be 0/1 vectors of length v".into()));
        }
        Ok(IncidenceStructure {
            v,
            b: incidence.len(),
            incidence,
        })
    }

    pub fn block(&self, j: usize) -> BTreeSet<usize> {
        (0..self.v).filter(|&p| self.incidence[j][p] == 1).collect()
    }

    fn blocks(&self) -> Vec<BTreeSet<usize>> {
        (0..self.b).map(|j| self.block(j)).collect()
    }

    /// Checks block sizes, block-pair intersections and point-pair
    /// replications against `(v, k, lambda)`.
    pub fn check_symmetric_design(&self, params: &DesignParams) -> Result<()> {
        let (k, lambda) = (params.k() as usize, params.lambda() as usize);
        if self.v != params.v() as usize || self.b != self.v {
            return Err(Error::NotADesign(format!("{} points and {} blocks", self.v, self.b)));
        }
        for (j, row) in self.incidence.iter().enumerate() {
            let size = row.iter().filter(|&&x| x == 1).count();
            if size != k {
                return Err(Error::NotADesign(format!("block {j} has {size} points, expected {k}")));
            }
        }
        for a in 0..self.b {
            for c in a + 1..self.b {
                let meet = (0..self.v).filter(|&p| self.incidence[a][p] & self.incidence[c][p] == 1).count();
                if meet != lambda {
                    return Err(Error::NotADesign(format!(
                        "blocks {a} and {c} meet in {meet} points, expected {lambda}"
                    )));
                }
            }
        }
        for p in 0..self.v {
            for q in p + 1..self.v {
                let cover = (0..self.b).filter(|&j| self.incidence[j][p] & self.incidence[j][q] == 1).count();
                if cover != lambda {
                    return Err(Error::NotADesign(format!(
                        "points {p} and {q} lie on {cover} common blocks, expected {lambda}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Develops `residues` modulo `modulus`: block `j` is `residues + j`.
/// Fails unless the result is a symmetric design.
pub fn from_difference_set(modulus: usize, residues: &[usize]) -> Result<IncidenceStructure> {
    let set: BTreeSet<usize> = residues.iter().map(|&r| r % modulus).collect();
    if modulus < 3 || set.len() != residues.len() || set.len() >= modulus || set.len() < 2 {
        return Err(Error::Contract("residues must be distinct and 1 < |D| < modulus".into()));
    }
    let incidence = (0..modulus)
        .map(|j| {
            let mut row = vec![0u8; modulus];
            for &r in &set {
                row[(r + j) % modulus] = 1;
            }
            row
        })
        .collect();
    let s = IncidenceStructure::new(modulus, incidence)?;
    let k = set.len();
    let pairs = k * (k - 1);
    if !pairs.is_multiple_of(modulus - 1) {
        return Err(Error::NotADesign(format!(
            "k(k-1) = {pairs} is not a multiple of v-1 = {}",
            modulus - 1
        )));
    }
    let params = DesignParams::new(modulus as u32, k as u32, (pairs / (modulus - 1)) as u32)?;
    s.check_symmetric_design(&params)?;
    Ok(s)
}

/// A group given by generators acting on points and, compatibly, on blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermAction {
    pub point_generators: Vec<Vec<usize>>,
    pub block_generators: Vec<Vec<usize>>,
}

impl PermAction {
    /// Derives the block permutations from point permutations; fails when a
    /// generator does not map blocks to blocks.
    pub fn from_points(s: &IncidenceStructure, point_generators: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = s.blocks();
        let mut block_generators = Vec::new();
        for g in &point_generators {
            let is_perm = g.len() == s.v && g.iter().collect::<BTreeSet<_>>().len() == s.v && g.iter().all(|&x| x < s.v);
            if !is_perm {
                return Err(Error::Contract("generator is not a permutation of the points".into()));
            }
            let mut image = Vec::with_capacity(s.b);
            for (j, blk) in blocks.iter().enumerate() {
                let moved: BTreeSet<usize> = blk.iter().map(|&p| g[p]).collect();
                match blocks.iter().position(|b| *b == moved) {
                    Some(i) => image.push(i),
                    None => {
                        return Err(Error::Contract(format!("generator does not map block {j} to a block")))
                    }
                }
            }
            block_generators.push(image);
        }
        Ok(PermAction {
            point_generators,
            block_generators,
        })
    }

    /// The cyclic group generated by `x -> x + step (mod v)`.
    pub fn translation(s: &IncidenceStructure, step: usize) -> Result<Self> {
        let g = (0..s.v).map(|x| (x + step) % s.v).collect();
        Self::from_points(s, vec![g])
    }

    pub fn trivial() -> Self {
        PermAction {
            point_generators: Vec::new(),
            block_generators: Vec::new(),
        }
    }
}

/// Orbits of the group generated by `gens` on `0..n`, each sorted, listed by
/// smallest element.
fn orbits(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                if !seen[g[x]] {
                    seen[g[x]] = true;
                    orbit.push(g[x]);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Orbit matrix of a symmetric design under an explicit action. Columns are
/// point orbits in order of their smallest point; rows are block orbits
/// ordered by length, then smallest block.
pub fn quotient_orbit_matrix(s: &IncidenceStructure, a: &PermAction) -> Result<PartialOrbitMatrix> {
    if s.v != s.b {
        return Err(Error::NotADesign("not symmetric".into()));
    }
    let blocks = s.blocks();
    let k = blocks.first().map_or(0, |b| b.len());
    let lambda = if s.v > 1 { k * (k - 1) / (s.v - 1) } else { 0 };
    let params = DesignParams::new(s.v as u32, k as u32, lambda as u32)?;
    s.check_symmetric_design(&params)?;
    for (g, h) in a.point_generators.iter().zip(&a.block_generators) {
        for (j, blk) in blocks.iter().enumerate() {
            let moved: BTreeSet<usize> = blk.iter().map(|&p| g[p]).collect();
            if h.get(j).map(|&i| &blocks[i]) != Some(&moved) {
                return Err(Error::Contract(format!("action is not incidence preserving at block {j}")));
            }
        }
    }
    let point_orbits = orbits(s.v, &a.point_generators);
    let mut block_orbits = orbits(s.b, &a.block_generators);
    block_orbits.sort_by_key(|o| (o.len(), o[0]));
    let omega: Vec<u32> = point_orbits.iter().map(|o| o.len() as u32).collect();
    let big_omega: Vec<u32> = block_orbits.iter().map(|o| o.len() as u32).collect();
    let rows: Vec<Vec<Entry>> = block_orbits
        .iter()
        .map(|bo| {
            let rep = &blocks[bo[0]];
            point_orbits
                .iter()
                .map(|po| po.iter().filter(|p| rep.contains(p)).count() as Entry)
                .collect()
        })
        .collect();
    let dist = OrbitDistribution::new(s.v as u32, omega, big_omega.clone())?;
    PartialOrbitMatrix::new(params, dist, rows, big_omega)
}

fn binomial(n: u128, r: u128) -> u128 {
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Non-increasing tuples of `len` values from `values` (descending list).
fn multisets(values: &[Entry], len: usize) -> Vec<Vec<Entry>> {
    fn go(values: &[Entry], len: usize, cur: &mut Vec<Entry>, out: &mut Vec<Vec<Entry>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for (i, &x) in values.iter().enumerate() {
            cur.push(x);
            go(&values[i..], len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, len, &mut Vec::new(), &mut out);
    out
}

/// Row types by exhaustive enumeration of one multiset per column class,
/// filtered with fraction arithmetic. Refuses when the product of the
/// per-class candidate counts exceeds `ceiling`.
pub fn brute_force_row_types(q: &TypeQuery, params: &DesignParams, ceiling: u128) -> Result<Vec<RowType>> {
    q.validate()?;
    let omega_i = i128::from(q.block_orbit);
    let k = i128::from(params.k());
    let lambda = i128::from(params.lambda());
    let mut lengths: Vec<u32> = q.dist.point_orbits().to_vec();
    lengths.sort_unstable();
    lengths.dedup();

    let mut per_class: Vec<(u32, Vec<Vec<Entry>>)> = Vec::new();
    let mut size = 1u128;
    for &w in &lengths {
        let count = q.dist.point_orbits().iter().filter(|&&x| x == w).count();
        let mut values: Vec<Entry> = (0..=w.min(params.k())).rev().collect();
        for pin in q.pins.iter().filter(|p| p.class_length == w) {
            match pin.kind {
                PinKind::Exact(x) => values.retain(|&y| y == x),
                PinKind::Cap(c) => values.retain(|&y| y <= c),
            }
        }
        size = size.saturating_mul(binomial(count as u128 + values.len() as u128 - 1, count as u128).max(1));
        if size > ceiling {
            return Err(Error::OracleRefused { size, ceiling });
        }
        per_class.push((w, multisets(&values, count)));
    }

    let target_sq = Frac::int(lambda * (omega_i - 1) + k);
    let mut out = Vec::new();
    let mut pick = vec![0usize; per_class.len()];
    if per_class.iter().any(|(_, c)| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let chosen: Vec<(u32, &Vec<Entry>)> = per_class.iter().zip(&pick).map(|((w, c), &i)| (*w, &c[i])).collect();
        let mut sum = 0i128;
        let mut sq = Frac::int(0);
        let mut integral = true;
        for &(w, entries) in &chosen {
            for &g in entries {
                let g = i128::from(g);
                sum += g;
                sq = sq.add(Frac::new(omega_i * g * g, i128::from(w)));
                integral &= (omega_i * g) % i128::from(w) == 0;
            }
        }
        if sum == k && sq == target_sq && integral {
            out.push(RowType {
                block_orbit: q.block_orbit,
                classes: chosen
                    .iter()
                    .map(|&(w, e)| ClassEntries {
                        length: w,
                        entries: e.clone(),
                    })
                    .collect(),
            });
        }
        // odometer
        let mut c = per_class.len();
        loop {
            if c == 0 {
                out.sort_by(|a, b| {
                    let fa: Vec<Entry> = a.classes.iter().flat_map(|c| c.entries.clone()).collect();
                    let fb: Vec<Entry> = b.classes.iter().flat_map(|c| c.entries.clone()).collect();
                    fb.cmp(&fa)
                });
                return Ok(out);
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < per_class[c].1.len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

/// Row groups of equal block-orbit length, ascending.
fn row_groups(orbits: &[u32]) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..orbits.len()).collect();
    idx.sort_by_key(|&i| (orbits[i], i));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match groups.last_mut() {
            Some(g) if orbits[g[0]] == orbits[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Canonical form by exhaustion: the largest row-major matrix over all row
/// orders within equal-length groups, each with columns sorted (within
/// equal-length classes) by descending column vector.
pub fn brute_canonical_form(rows: &[Vec<Entry>], row_orbits: &[u32], point_orbits: &[u32], ceiling: u128) -> Result<Vec<Vec<Entry>>> {
    let groups = row_groups(row_orbits);
    let size = groups.iter().fold(1u128, |acc, g| acc.saturating_mul((1..=g.len() as u128).product()));
    if size > ceiling {
        return Err(Error::OracleRefused { size, ceiling });
    }
    let mut classes: Vec<u32> = point_orbits.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let perms: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| permutations(g)).collect();
    let mut best: Option<Vec<Vec<Entry>>> = None;
    let mut pick = vec![0usize; perms.len()];
    loop {
        let order: Vec<usize> = pick.iter().zip(&perms).flat_map(|(&i, p)| p[i].clone()).collect();
        let mut cols: Vec<Vec<Entry>> = Vec::new();
        for &w in &classes {
            let mut block: Vec<Vec<Entry>> = (0..point_orbits.len())
                .filter(|&r| point_orbits[r] == w)
                .map(|r| order.iter().map(|&i| rows[i][r]).collect())
                .collect();
            block.sort_by(|a, b| b.cmp(a));
            cols.extend(block);
        }
        // lay columns back on the positions of each class
        let mut laid = vec![Vec::new(); point_orbits.len()];
        let mut next = 0;
        for &w in &classes {
            for r in (0..point_orbits.len()).filter(|&r| point_orbits[r] == w) {
                laid[r] = cols[next].clone();
                next += 1;
            }
        }
        let matrix: Vec<Vec<Entry>> = (0..order.len()).map(|i| laid.iter().map(|c| c[i]).collect()).collect();
        if best.as_ref().is_none_or(|b| matrix > *b) {
            best = Some(matrix);
        }
        let mut c = perms.len();
        loop {
            if c == 0 {
                return Ok(best.unwrap_or_default());
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < perms[c].len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

/// Every condition of a complete orbit matrix, checked with fractions.
pub fn naive_is_orbit_matrix(m: &PartialOrbitMatrix) -> bool {
    let p = m.params();
    let (k, lambda) = (i128::from(p.k()), i128::from(p.lambda()));
    let w: Vec<i128> = m.dist().point_orbits().iter().map(|&x| i128::from(x)).collect();
    let om: Vec<i128> = m.row_orbits().iter().map(|&x| i128::from(x)).collect();
    let rows = m.rows();
    if rows.len() != w.len() {
        return false;
    }
    let mut plan = m.dist().block_orbits().to_vec();
    let mut have = m.row_orbits().to_vec();
    plan.sort_unstable();
    have.sort_unstable();
    if plan != have {
        return false;
    }
    for (i, row) in rows.iter().enumerate() {
        if row.iter().map(|&g| i128::from(g)).sum::<i128>() != k {
            return false;
        }
        for (r, &g) in row.iter().enumerate() {
            let g = i128::from(g);
            if g > w[r] || (om[i] * g) % w[r] != 0 {
                return false;
            }
        }
        for j in 0..rows.len() {
            let s = (0..w.len()).fold(Frac::int(0), |acc, r| {
                acc.add(Frac::new(om[j] * i128::from(row[r]) * i128::from(rows[j][r]), w[r]))
            });
            let target = lambda * om[j] + if i == j { k - lambda } else { 0 };
            if s != Frac::int(target) {
                return false;
            }
        }
    }
    (0..w.len()).all(|r| {
        let total = (0..rows.len()).fold(Frac::int(0), |acc, i| acc.add(Frac::new(om[i] * i128::from(rows[i][r]), w[r])));
        total == Frac::int(k)
    })
}

/// All rows admissible for a block-orbit length on concrete columns.
fn concrete_rows(params: &DesignParams, w: &[i128], omega_i: i128) -> Vec<Vec<Entry>> {
    let (k, lambda) = (i128::from(params.k()), i128::from(params.lambda()));
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(w: &[i128], omega_i: i128, left: i128, cur: &mut Vec<Entry>, out: &mut Vec<Vec<Entry>>) {
        let r = cur.len();
        if r == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for g in 0..=w[r].min(left) {
            if (omega_i * g) % w[r] == 0 {
                cur.push(g as Entry);
                go(w, omega_i, left - g, cur, out);
                cur.pop();
            }
        }
    }
    go(w, omega_i, k, &mut cur, &mut out);
    out.retain(|row| {
        let sq = row
            .iter()
            .zip(w)
            .fold(Frac::int(0), |acc, (&g, &wr)| acc.add(Frac::new(omega_i * i128::from(g) * i128::from(g), wr)));
        sq == Frac::int(lambda * (omega_i - 1) + k)
    });
    out
}

/// Generates every complete orbit matrix (rows taken as a multiset within
/// each block-orbit length) with only the pair condition as a cut, then
/// reduces by `brute_canonical_form`. Desk scale only.
pub fn naive_complete_matrices(params: &DesignParams, dist: &OrbitDistribution, ceiling: u128) -> Result<BTreeSet<Vec<Vec<Entry>>>> {
    let w: Vec<i128> = dist.point_orbits().iter().map(|&x| i128::from(x)).collect();
    let mut plan = dist.block_orbits().to_vec();
    plan.sort_unstable();
    let lambda = i128::from(params.lambda());
    let candidates: Vec<Vec<Vec<Entry>>> = plan.iter().map(|&o| concrete_rows(params, &w, i128::from(o))).collect();
    let mut visited = 0u128;
    let mut found = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();

    struct Ctx<'a> {
        params: &'a DesignParams,
        dist: &'a OrbitDistribution,
        plan: &'a [u32],
        w: &'a [i128],
        lambda: i128,
        candidates: &'a [Vec<Vec<Entry>>],
        ceiling: u128,
    }

    fn go(
        cx: &Ctx<'_>,
        chosen: &mut Vec<usize>,
        visited: &mut u128,
        found: &mut BTreeSet<Vec<Vec<Entry>>>,
    ) -> Result<()> {
        *visited += 1;
        if *visited > cx.ceiling {
            return Err(Error::OracleRefused {
                size: *visited,
                ceiling: cx.ceiling,
            });
        }
        let d = chosen.len();
        if d == cx.plan.len() {
            let rows: Vec<Vec<Entry>> = chosen.iter().enumerate().map(|(i, &c)| cx.candidates[i][c].clone()).collect();
            let m = PartialOrbitMatrix::new(*cx.params, cx.dist.clone(), rows.clone(), cx.plan.to_vec())?;
            if naive_is_orbit_matrix(&m) {
                found.insert(brute_canonical_form(&rows, cx.plan, cx.dist.point_orbits(), cx.ceiling)?);
            }
            return Ok(());
        }
        // same-length rows as a multiset: indices non-decreasing
        let start = if d > 0 && cx.plan[d - 1] == cx.plan[d] { chosen[d - 1] } else { 0 };
        for c in start..cx.candidates[d].len() {
            let row = &cx.candidates[d][c];
            let ok = chosen.iter().enumerate().all(|(i, &ci)| {
                let other = &cx.candidates[i][ci];
                let s = (0..cx.w.len()).fold(Frac::int(0), |acc, r| {
                    acc.add(Frac::new(i128::from(cx.plan[d]) * i128::from(other[r]) * i128::from(row[r]), cx.w[r]))
                });
                s == Frac::int(cx.lambda * i128::from(cx.plan[d]))
            });
            if ok {
                chosen.push(c);
                go(cx, chosen, visited, found)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    let cx = Ctx {
        params,
        dist,
        plan: &plan,
        w: &w,
        lambda,
        candidates: &candidates,
        ceiling,
    };
    go(&cx, &mut chosen, &mut visited, &mut found)?;
    Ok(found)
}

impl fmt::Display for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.incidence {
            let s: String = row.iter().map(|&x| if x == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_sets() {
        let fano = from_difference_set(7, &[0, 3, 5, 6]).unwrap();
        assert_eq!(fano.b, 7);
        assert!(from_difference_set(11, &[1, 3, 4, 5, 9]).is_ok());
        match from_difference_set(7, &[0, 1, 2, 3]) {
            Err(Error::NotADesign(msg)) => assert!(msg.contains("meet")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cyclic_quotient_is_single_entry() {
        let s = from_difference_set(7, &[0, 3, 5, 6]).unwrap();
        let m = quotient_orbit_matrix(&s, &PermAction::translation(&s, 1).unwrap()).unwrap();
        assert_eq!(m.rows(), &[vec![4]]);
        let s = from_difference_set(11, &[1, 3, 4, 5, 9]).unwrap();
        let m = quotient_orbit_matrix(&s, &PermAction::translation(&s, 1).unwrap()).unwrap();
        assert_eq!(m.rows(), &[vec![5]]);
    }

    #[test]
    fn trivial_quotient_is_incidence() {
        let s = from_difference_set(7, &[0, 3, 5, 6]).unwrap();
        let m = quotient_orbit_matrix(&s, &PermAction::trivial()).unwrap();
        assert_eq!(m.dist().point_orbits(), &[1; 7]);
        let rows: Vec<Vec<Entry>> = s.incidence.iter().map(|r| r.iter().map(|&x| Entry::from(x)).collect()).collect();
        assert_eq!(m.rows(), rows.as_slice());
        assert!(naive_is_orbit_matrix(&m));
    }

    #[test]
    fn non_preserving_generator_rejected() {
        let s = from_difference_set(7, &[0, 3, 5, 6]).unwrap();
        let swap = vec![1, 0, 2, 3, 4, 5, 6];
        assert!(PermAction::from_points(&s, vec![swap]).is_err());
    }

    #[test]
    fn ceiling_refuses() {
        let p = DesignParams::new(121, 16, 2).unwrap();
        let d = OrbitDistribution::symmetric(121, vec![11; 11]).unwrap();
        let q = TypeQuery::new(d, 11);
        assert!(matches!(brute_force_row_types(&q, &p, 10), Err(Error::OracleRefused { .. })));
    }

    #[test]
    fn infeasible_single_orbit() {
        // k = 16 cannot be reached by one column of length 5
        let p = DesignParams::new(121, 16, 2).unwrap();
        let d = OrbitDistribution::new(121, vec![5, 116], vec![5, 116]).unwrap();
        let q = TypeQuery::new(d, 5).with_pin(crate::row_types::Pin::zero(116));
        assert!(brute_force_row_types(&q, &p, DEFAULT_CEILING).unwrap().is_empty());
    }

    #[test]
    fn fano_naive_count() {
        let p = DesignParams::new(7, 4, 2).unwrap();
        let d = OrbitDistribution::symmetric(7, vec![7]).unwrap();
        let set = naive_complete_matrices(&p, &d, DEFAULT_CEILING).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.iter().next().unwrap(), &vec![vec![4]]);
    }
}
