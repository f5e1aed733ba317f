//! The small groups of composite order considered for (121,16,2): explicit
//! multiplication tables, subgroups up to conjugacy, coset actions and
//! orbit-length distributions compatible with prescribed fixed-point counts.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Z10,
    D10,
    Z14,
    D14,
    Z15,
    Z21,
    Frob21,
    Z35,
}

impl GroupName {
    pub const ALL: [GroupName; 8] = [
        GroupName::Z10,
        GroupName::D10,
        GroupName::Z14,
        GroupName::D14,
        GroupName::Z15,
        GroupName::Z21,
        GroupName::Frob21,
        GroupName::Z35,
    ];

    /// `(m, n, r)`: the group `<x, y | x^m, y^n, y x y^-1 = x^r>`.
    fn metacyclic(self) -> (u32, u32, u32) {
        match self {
            GroupName::Z10 => (10, 1, 1),
            GroupName::D10 => (5, 2, 4),
            GroupName::Z14 => (14, 1, 1),
            GroupName::D14 => (7, 2, 6),
            GroupName::Z15 => (15, 1, 1),
            GroupName::Z21 => (21, 1, 1),
            GroupName::Frob21 => (7, 3, 2),
            GroupName::Z35 => (35, 1, 1),
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupName::Z10 => "Z10",
            GroupName::D10 => "D10",
            GroupName::Z14 => "Z14",
            GroupName::D14 => "D14",
            GroupName::Z15 => "Z15",
            GroupName::Z21 => "Z21",
            GroupName::Frob21 => "Frob21",
            GroupName::Z35 => "Z35",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupName::ALL
            .into_iter()
            .find(|g| g.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Contract(format!("unknown group {s:?}")))
    }
}

/// Element set as a bit mask; every group here has at most 64 elements.
pub type Subset = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub element_order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: GroupName,
    pub presentation: String,
    /// Element `i` is `x^a y^b` with `(a, b) = labels[i]`.
    pub labels: Vec<(u32, u32)>,
    /// `table[i][j]` is the index of `i * j`.
    pub table: Vec<Vec<usize>>,
    pub classes: Vec<ConjugacyClass>,
    /// Subgroups up to conjugacy, ordered by descending size.
    pub subgroups: Vec<Subset>,
}

impl GroupSpec {
    pub fn new(name: GroupName) -> Self {
        let (m, n, r) = name.metacyclic();
        let presentation = if n == 1 {
            format!("<x | x^{m}>")
        } else {
            format!("<x, y | x^{m}, y^{n}, y x y^-1 = x^{r}>")
        };
        let labels: Vec<(u32, u32)> = (0..n).flat_map(|b| (0..m).map(move |a| (a, b))).collect();
        let index = |a: u32, b: u32| (b * m + a) as usize;
        // r^b mod m
        let twist = |b: u32| (0..b).fold(1u32, |acc, _| acc * r % m);
        let table = labels
            .iter()
            .map(|&(a1, b1)| {
                labels
                    .iter()
                    .map(|&(a2, b2)| index((a1 + twist(b1) * a2) % m, (b1 + b2) % n))
                    .collect()
            })
            .collect();
        let mut g = GroupSpec {
            name,
            presentation,
            labels,
            table,
            classes: Vec::new(),
            subgroups: Vec::new(),
        };
        g.classes = g.conjugacy_classes();
        g.subgroups = g.subgroup_classes();
        g
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("group element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inverse(x), g), x)
    }

    fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut size = 0;
            for x in 0..self.order() {
                let c = self.conjugate(g, x);
                if !seen[c] {
                    seen[c] = true;
                    size += 1;
                }
            }
            out.push(ConjugacyClass {
                representative: g,
                size,
                element_order: self.element_order(g),
            });
        }
        out
    }

    fn closure(&self, gens: &[usize]) -> Subset {
        let mut set: Subset = 1;
        let mut frontier = vec![0usize];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if set & (1 << b) == 0 {
                    set |= 1 << b;
                    frontier.push(b);
                }
            }
        }
        set
    }

    /// All subgroups. Every subgroup of these groups is generated by two elements.
    pub fn all_subgroups(&self) -> Vec<Subset> {
        let mut set = BTreeSet::new();
        for a in 0..self.order() {
            for b in a..self.order() {
                set.insert(self.closure(&[a, b]));
            }
        }
        set.into_iter().collect()
    }

    fn conjugate_subset(&self, h: Subset, x: usize) -> Subset {
        members(h).fold(0, |acc, g| acc | 1 << self.conjugate(g, x))
    }

    fn subgroup_classes(&self) -> Vec<Subset> {
        let mut reps: Vec<Subset> = Vec::new();
        let mut seen = HashSet::new();
        for h in self.all_subgroups() {
            if seen.contains(&h) {
                continue;
            }
            for x in 0..self.order() {
                seen.insert(self.conjugate_subset(h, x));
            }
            reps.push(h);
        }
        reps.sort_by_key(|&h| (std::cmp::Reverse(h.count_ones()), h));
        reps
    }

    /// Number of cosets `xH` fixed by `g` (left multiplication).
    pub fn fixed_cosets(&self, h: Subset, g: usize) -> usize {
        let hits = (0..self.order())
            .filter(|&x| h & (1 << self.conjugate(g, x)) != 0)
            .count();
        hits / h.count_ones() as usize
    }
}

fn members(h: Subset) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| h & (1 << i) != 0)
}

/// A transitive action of a group on the cosets of one subgroup class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveAction {
    pub orbit_length: u32,
    pub subgroup: Subset,
    pub subgroup_order: u32,
    /// Fixed cosets for each conjugacy class, in `GroupSpec::classes` order.
    pub fixed: Vec<u32>,
}

pub fn transitive_actions(g: &GroupSpec) -> Vec<TransitiveAction> {
    g.subgroups
        .iter()
        .map(|&h| TransitiveAction {
            orbit_length: (g.order() / h.count_ones() as usize) as u32,
            subgroup: h,
            subgroup_order: h.count_ones(),
            fixed: g
                .classes
                .iter()
                .map(|c| g.fixed_cosets(h, c.representative) as u32)
                .collect(),
        })
        .collect()
}

/// Admissible fixed-point counts on the whole point set, per prime element order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixedPointSpec {
    pub per_prime_order: BTreeMap<u32, BTreeSet<u32>>,
}

impl FixedPointSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, prime: u32, counts: &[u32]) -> Self {
        self.per_prime_order.entry(prime).or_default().extend(counts.iter().copied());
        self
    }

    /// The counts used for (121,16,2): involutions fix 9 or 13 points,
    /// elements of order 3 fix 1 or 7, of order 5 fix 1, of order 7 fix 2.
    pub fn biplane_121() -> Self {
        FixedPointSpec::new()
            .with(2, &[9, 13])
            .with(3, &[1, 7])
            .with(5, &[1])
            .with(7, &[2])
    }

    pub fn validate(&self, v: u32) -> Result<()> {
        for (p, counts) in &self.per_prime_order {
            if counts.is_empty() {
                return Err(Error::Contract(format!("no admissible fixed-point count for order {p}")));
            }
            if let Some(c) = counts.iter().find(|&&c| c > v) {
                return Err(Error::Contract(format!("fixed-point count {c} exceeds v = {v}")));
            }
        }
        Ok(())
    }
}

/// Orbit-length multisets (ascending) summing to `v` whose fixed-point totals
/// are admissible for every constrained prime-order element class. Sorted.
pub fn feasible_distributions(g: &GroupSpec, v: u32, fp: &FixedPointSpec) -> Result<Vec<Vec<u32>>> {
    fp.validate(v)?;
    let actions = transitive_actions(g);
    let checks: Vec<(usize, &BTreeSet<u32>)> = g
        .classes
        .iter()
        .enumerate()
        .filter_map(|(i, c)| fp.per_prime_order.get(&c.element_order).map(|s| (i, s)))
        .collect();
    let mut found = BTreeSet::new();
    let mut counts = vec![0u32; actions.len()];
    let mut fixed = vec![0u32; g.classes.len()];
    choose(&actions, &checks, 0, v, &mut counts, &mut fixed, &mut found);
    Ok(found.into_iter().collect())
}

fn choose(
    actions: &[TransitiveAction],
    checks: &[(usize, &BTreeSet<u32>)],
    a: usize,
    remaining: u32,
    counts: &mut Vec<u32>,
    fixed: &mut Vec<u32>,
    found: &mut BTreeSet<Vec<u32>>,
) {
    // any admissible set bounds the running total from above
    if checks
        .iter()
        .any(|&(c, set)| fixed[c] > *set.iter().next_back().expect("validated non-empty"))
    {
        return;
    }
    if a == actions.len() {
        if remaining == 0 && checks.iter().all(|&(c, set)| set.contains(&fixed[c])) {
            let mut lengths: Vec<u32> = actions
                .iter()
                .zip(counts.iter())
                .flat_map(|(act, &n)| std::iter::repeat_n(act.orbit_length, n as usize))
                .collect();
            lengths.sort_unstable();
            found.insert(lengths);
        }
        return;
    }
    let act = &actions[a];
    let max = remaining / act.orbit_length;
    for n in 0..=max {
        counts[a] = n;
        for (f, &x) in fixed.iter_mut().zip(&act.fixed) {
            *f += n * x;
        }
        choose(actions, checks, a + 1, remaining - n * act.orbit_length, counts, fixed, found);
        for (f, &x) in fixed.iter_mut().zip(&act.fixed) {
            *f -= n * x;
        }
    }
    counts[a] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_group(g: &GroupSpec) -> bool {
        let n = g.order();
        (0..n).all(|a| g.mul(0, a) == a && g.mul(a, 0) == a)
            && (0..n).all(|a| (0..n).any(|b| g.mul(a, b) == 0))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
    }

    #[test]
    fn tables_are_groups() {
        for name in GroupName::ALL {
            let g = GroupSpec::new(name);
            assert!(is_group(&g), "{name}");
            let abelian = (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a)));
            assert_eq!(abelian, name.to_string().starts_with('Z'), "{name}");
        }
    }

    #[test]
    fn subgroup_counts() {
        // (all subgroups, up to conjugacy)
        let expected = [
            (GroupName::Z10, 4, 4),
            (GroupName::D10, 8, 4),
            (GroupName::Z14, 4, 4),
            (GroupName::D14, 10, 4),
            (GroupName::Z15, 4, 4),
            (GroupName::Z21, 4, 4),
            (GroupName::Frob21, 10, 4),
            (GroupName::Z35, 4, 4),
        ];
        for (name, all, classes) in expected {
            let g = GroupSpec::new(name);
            assert_eq!(g.all_subgroups().len(), all, "{name}");
            assert_eq!(g.subgroups.len(), classes, "{name}");
        }
    }

    #[test]
    fn frob21_has_five_classes() {
        let g = GroupSpec::new(GroupName::Frob21);
        let mut orders: Vec<u32> = g.classes.iter().map(|c| c.element_order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 3, 3, 7, 7]);
    }

    #[test]
    fn whole_group_fixes_single_coset() {
        for name in GroupName::ALL {
            let g = GroupSpec::new(name);
            let act = &transitive_actions(&g)[0];
            assert_eq!(act.orbit_length, 1);
            assert!(act.fixed.iter().all(|&f| f == 1));
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("frob21".parse::<GroupName>().unwrap(), GroupName::Frob21);
        assert!("A5".parse::<GroupName>().is_err());
    }
}
