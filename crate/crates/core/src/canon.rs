//! Canonical representatives of orbit matrices under row permutations within
//! equal block-orbit lengths composed with column permutations within equal
//! point-orbit lengths.
//!
//! The representative is the lexicographic maximum, read row by row, over all
//! column permutations, with rows grouped by ascending block-orbit length and
//! sorted descending inside each group. It is built greedily: every partial
//! choice is kept as an ordered partition of the columns into cells that may
//! still be permuted freely, and only choices reaching the best row so far
//! survive.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::design::OrbitDistribution;

#[derive(Debug, Clone)]
pub(crate) struct Shape {
    pub t: usize,
    /// Flat slot -> output column. Slots are grouped by column class.
    pos_of_slot: Vec<usize>,
    /// Bit set at the first slot of every column class.
    class_starts: u64,
    /// Initial column order: class by class, ascending column index.
    initial_cols: Vec<u8>,
}

impl Shape {
    pub fn new(dist: &OrbitDistribution) -> Self {
        let t = dist.t();
        assert!(t <= 64, "at most 64 orbits are supported");
        let mut pos_of_slot = Vec::with_capacity(t);
        let mut class_starts = 0u64;
        for class in dist.column_classes() {
            class_starts |= 1 << pos_of_slot.len();
            pos_of_slot.extend(class.columns.iter().copied());
        }
        let initial_cols = pos_of_slot.iter().map(|&c| c as u8).collect();
        Shape {
            t,
            pos_of_slot,
            class_starts,
            initial_cols,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    used: u64,
    cols: Vec<u8>,
    /// bit `s` set when a cell starts at slot `s`
    starts: u64,
}

impl State {
    fn cells(&self, t: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let starts = self.starts;
        (0..t).filter(move |&s| starts & (1 << s) != 0).map(move |a| {
            let mut b = a + 1;
            while b < t && starts & (1 << b) == 0 {
                b += 1;
            }
            (a, b)
        })
    }

    fn image<T: Copy + Ord + Default>(&self, shape: &Shape, row: &[T], out: &mut [T]) {
        let mut buf = [T::default(); 64];
        for (a, b) in self.cells(shape.t) {
            let vals = &mut buf[..b - a];
            for (slot, v) in (a..b).zip(vals.iter_mut()) {
                *v = row[self.cols[slot] as usize];
            }
            vals.sort_unstable_by(|x, y| y.cmp(x));
            for (slot, &v) in (a..b).zip(vals.iter()) {
                out[shape.pos_of_slot[slot]] = v;
            }
        }
    }

    fn refine<T: Copy + Ord>(&self, shape: &Shape, row: &[T], row_index: usize) -> State {
        let mut cols = self.cols.clone();
        let mut starts = self.starts;
        for (a, b) in self.cells(shape.t) {
            let cell = &mut cols[a..b];
            cell.sort_unstable_by(|&x, &y| row[y as usize].cmp(&row[x as usize]).then(x.cmp(&y)));
            for s in a + 1..b {
                if row[cols[s] as usize] != row[cols[s - 1] as usize] {
                    starts |= 1 << s;
                }
            }
        }
        State {
            used: self.used | (1 << row_index),
            cols,
            starts,
        }
    }
}

/// Row groups: consecutive rows sharing a block-orbit length, listed in
/// ascending length.
fn group_bounds(row_orbits: &[u32]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut a = 0;
    while a < row_orbits.len() {
        let mut b = a + 1;
        while b < row_orbits.len() && row_orbits[b] == row_orbits[a] {
            b += 1;
        }
        out.push((a, b));
        a = b;
    }
    out
}

/// Outcome of comparing a matrix against its best image.
enum Probe {
    Canonical,
    Beaten,
}

fn initial_state(shape: &Shape) -> State {
    State {
        used: 0,
        cols: shape.initial_cols.clone(),
        starts: shape.class_starts,
    }
}

/// Whether `rows` (grouped by ascending block-orbit length) equals its own
/// canonical form.
pub(crate) fn is_canonical<T: Copy + Ord + Default>(shape: &Shape, rows: &[Vec<T>], row_orbits: &[u32]) -> bool {
    matches!(probe(shape, rows, row_orbits), Probe::Canonical)
}

fn probe<T: Copy + Ord + Default>(shape: &Shape, rows: &[Vec<T>], row_orbits: &[u32]) -> Probe {
    assert!(rows.len() <= 64);
    let mut states = vec![initial_state(shape)];
    let mut img = vec![T::default(); shape.t];
    let mut seen = HashSet::new();
    for (a, b) in group_bounds(row_orbits) {
        for target in &rows[a..b] {
            let mut next = Vec::new();
            seen.clear();
            for st in &states {
                for x in a..b {
                    if st.used & (1 << x) != 0 {
                        continue;
                    }
                    st.image(shape, &rows[x], &mut img);
                    match img.as_slice().cmp(target.as_slice()) {
                        Ordering::Greater => return Probe::Beaten,
                        Ordering::Less => {}
                        Ordering::Equal => {
                            let ns = st.refine(shape, &rows[x], x);
                            if seen.insert(ns.clone()) {
                                next.push(ns);
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                // only reachable when the input rows are not themselves an image,
                // which means some image is strictly larger
                return Probe::Beaten;
            }
            states = next;
        }
    }
    Probe::Canonical
}

/// Canonical form of arbitrary rows. Rows are first grouped by ascending
/// block-orbit length; returns the canonical rows with their orbit lengths.
pub(crate) fn canonical_rows<T: Copy + Ord + Default>(
    shape: &Shape,
    rows: &[Vec<T>],
    row_orbits: &[u32],
) -> (Vec<Vec<T>>, Vec<u32>) {
    assert!(rows.len() <= 64);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| row_orbits[i]);
    let rows: Vec<Vec<T>> = order.iter().map(|&i| rows[i].clone()).collect();
    let orbits: Vec<u32> = order.iter().map(|&i| row_orbits[i]).collect();

    let mut states = vec![initial_state(shape)];
    let mut out = Vec::with_capacity(rows.len());
    let mut img = vec![T::default(); shape.t];
    for (a, b) in group_bounds(&orbits) {
        for _ in a..b {
            let mut best: Option<Vec<T>> = None;
            let mut next: Vec<State> = Vec::new();
            let mut seen = HashSet::new();
            for st in &states {
                for x in a..b {
                    if st.used & (1 << x) != 0 {
                        continue;
                    }
                    st.image(shape, &rows[x], &mut img);
                    let ord = match &best {
                        None => Ordering::Greater,
                        Some(bst) => img.as_slice().cmp(bst.as_slice()),
                    };
                    match ord {
                        Ordering::Less => {}
                        Ordering::Greater => {
                            best = Some(img.clone());
                            next.clear();
                            seen.clear();
                            let ns = st.refine(shape, &rows[x], x);
                            seen.insert(ns.clone());
                            next.push(ns);
                        }
                        Ordering::Equal => {
                            let ns = st.refine(shape, &rows[x], x);
                            if seen.insert(ns.clone()) {
                                next.push(ns);
                            }
                        }
                    }
                }
            }
            out.push(best.expect("row group is non-empty"));
            states = next;
        }
    }
    (out, orbits)
}
