use std::collections::BTreeSet;

use omf_core::*;

/// Fixed cosets counted by acting on explicit coset sets.
fn fixed_by_action(g: &GroupSpec, h: u64, x: usize) -> usize {
    let n = g.order();
    let coset = |a: usize| -> BTreeSet<usize> { (0..n).filter(|&b| h & (1 << b) != 0).map(|b| g.mul(a, b)).collect() };
    let cosets: BTreeSet<BTreeSet<usize>> = (0..n).map(coset).collect();
    cosets
        .iter()
        .filter(|c| {
            let moved: BTreeSet<usize> = c.iter().map(|&a| g.mul(x, a)).collect();
            moved == **c
        })
        .count()
}

#[test]
fn coset_fixed_points_match_explicit_action() {
    for name in GroupName::ALL {
        let g = GroupSpec::new(name);
        for act in transitive_actions(&g) {
            for (c, class) in g.classes.iter().enumerate() {
                assert_eq!(act.fixed[c] as usize, fixed_by_action(&g, act.subgroup, class.representative), "{name}");
            }
        }
    }
}

fn action_with_length(g: &GroupSpec, len: u32) -> TransitiveAction {
    let acts: Vec<_> = transitive_actions(g).into_iter().filter(|a| a.orbit_length == len).collect();
    assert_eq!(acts.len(), 1);
    acts.into_iter().next().unwrap()
}

fn fixed_by_order(g: &GroupSpec, act: &TransitiveAction, order: u32) -> BTreeSet<u32> {
    g.classes
        .iter()
        .zip(&act.fixed)
        .filter(|(c, _)| c.element_order == order)
        .map(|(_, &f)| f)
        .collect()
}

#[test]
fn frob21_sylow3_action() {
    let g = GroupSpec::new(GroupName::Frob21);
    let act = action_with_length(&g, 7);
    assert_eq!(act.subgroup_order, 3);
    assert_eq!(fixed_by_order(&g, &act, 3), BTreeSet::from([1]));
    assert_eq!(fixed_by_order(&g, &act, 7), BTreeSet::from([0]));
}

#[test]
fn z35_action_on_five_cosets() {
    let g = GroupSpec::new(GroupName::Z35);
    let act = action_with_length(&g, 5);
    assert_eq!(fixed_by_order(&g, &act, 5), BTreeSet::from([0]));
    assert_eq!(fixed_by_order(&g, &act, 7), BTreeSet::from([5]));
}

#[test]
fn cyclic_elements_fix_orbits_of_coprime_length() {
    for (name, p, q) in [(GroupName::Z10, 2, 5), (GroupName::Z14, 2, 7), (GroupName::Z15, 3, 5), (GroupName::Z21, 3, 7), (GroupName::Z35, 5, 7)] {
        let g = GroupSpec::new(name);
        for act in transitive_actions(&g) {
            for (prime, other) in [(p, q), (q, p)] {
                let expect = if other % act.orbit_length == 0 { act.orbit_length } else { 0 };
                assert_eq!(fixed_by_order(&g, &act, prime), BTreeSet::from([expect]), "{name} length {}", act.orbit_length);
            }
        }
    }
}

fn expand(parts: &[(u32, usize)]) -> Vec<u32> {
    parts.iter().flat_map(|&(l, n)| std::iter::repeat_n(l, n)).collect()
}

#[test]
fn distributions_are_internally_consistent() {
    let fp = FixedPointSpec::biplane_121();
    for name in GroupName::ALL {
        let g = GroupSpec::new(name);
        let acts = transitive_actions(&g);
        for d in feasible_distributions(&g, 121, &fp).unwrap() {
            assert_eq!(d.iter().sum::<u32>(), 121);
            for (c, class) in g.classes.iter().enumerate() {
                let Some(allowed) = fp.per_prime_order.get(&class.element_order) else { continue };
                // each length occurs for a single subgroup class in these groups
                let total: u32 = d
                    .iter()
                    .map(|&l| acts.iter().find(|a| a.orbit_length == l).unwrap().fixed[c])
                    .sum();
                assert!(allowed.contains(&total), "{name} {d:?}");
            }
        }
    }
}

#[test]
fn expected_distributions() {
    let fp = FixedPointSpec::biplane_121();
    let run = |n: GroupName| feasible_distributions(&GroupSpec::new(n), 121, &fp).unwrap();
    assert!(run(GroupName::Z35).is_empty());
    assert!(run(GroupName::Z21).is_empty());
    assert!(run(GroupName::Z10).is_empty());
    assert_eq!(run(GroupName::Frob21), vec![expand(&[(1, 2), (7, 5), (21, 4)])]);
    assert_eq!(run(GroupName::Z15), vec![expand(&[(1, 1), (15, 8)])]);
    assert_eq!(run(GroupName::D10), vec![expand(&[(1, 1), (5, 12), (10, 6)]), expand(&[(1, 1), (5, 8), (10, 8)])]);
    let d14 = run(GroupName::D14);
    assert!(d14.contains(&expand(&[(1, 2), (7, 7), (14, 5)])));
    assert!(d14.contains(&expand(&[(1, 2), (7, 11), (14, 3)])));
}

#[test]
fn d14_admits_orbits_of_length_two() {
    // an orbit of length 2 is fixed pointwise by the elements of order 7
    let fp = FixedPointSpec::biplane_121();
    let d14 = feasible_distributions(&GroupSpec::new(GroupName::D14), 121, &fp).unwrap();
    assert_eq!(d14.len(), 4);
    assert!(d14.contains(&expand(&[(2, 1), (7, 9), (14, 4)])));
    assert!(d14.contains(&expand(&[(2, 1), (7, 13), (14, 2)])));
}

#[test]
fn bad_fixed_point_spec() {
    let g = GroupSpec::new(GroupName::Z15);
    assert!(feasible_distributions(&g, 121, &FixedPointSpec::new().with(3, &[200])).is_err());
}
