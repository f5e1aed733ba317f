mod common;

use common::*;
use omf_core::*;
use proptest::prelude::*;

fn shuffle<T: Clone>(items: &[T], keys: &[u64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by_key(|&i| keys[i % keys.len()].wrapping_mul(i as u64 + 1) ^ i as u64);
    idx
}

/// Applies a row permutation within equal block-orbit lengths and a column
/// permutation within equal point-orbit lengths.
fn scramble(m: &PartialOrbitMatrix, keys: &[u64]) -> PartialOrbitMatrix {
    let w = m.dist().point_orbits();
    let mut col_of = vec![0; w.len()];
    let mut lengths: Vec<u32> = w.to_vec();
    lengths.sort_unstable();
    lengths.dedup();
    for &l in &lengths {
        let cols: Vec<usize> = (0..w.len()).filter(|&r| w[r] == l).collect();
        let perm = shuffle(&cols, keys);
        for (slot, &p) in cols.iter().zip(&perm) {
            col_of[*slot] = cols[p];
        }
    }
    let om = m.row_orbits();
    let mut order: Vec<usize> = (0..om.len()).collect();
    let row_keys: Vec<u64> = keys.iter().rev().copied().collect();
    let perm = shuffle(&order, &row_keys);
    order.sort_by_key(|&i| (om[i], perm[i]));
    let rows: Vec<Vec<u32>> = order.iter().map(|&i| col_of.iter().map(|&c| m.rows()[i][c]).collect()).collect();
    let orbits: Vec<u32> = order.iter().map(|&i| om[i]).collect();
    PartialOrbitMatrix::new(*m.params(), m.dist().clone(), rows, orbits).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_class_invariant(pick in 0usize..19, keys in prop::collection::vec(any::<u64>(), 1..8)) {
        let all = all_golden();
        let m = &all[pick].1;
        let s = scramble(m, &keys);
        prop_assert_eq!(canonical_form(&s), canonical_form(m));
        prop_assert!(verify_partial(&s).is_ok());
    }

    #[test]
    fn canonical_form_is_idempotent(pick in 0usize..19, keys in prop::collection::vec(any::<u64>(), 1..8)) {
        let all = all_golden();
        let s = scramble(&all[pick].1, &keys);
        let key = canonical_form(&s);
        let again = key.to_matrix(*s.params(), s.dist().clone()).unwrap();
        prop_assert_eq!(canonical_form(&again), key);
    }

    #[test]
    fn even_rows_on_thirteen_columns_pair_to_multiples_of_four(
        a in prop::collection::vec(0u32..=6, 9),
        b in prop::collection::vec(0u32..=6, 9),
    ) {
        let d = dist(&[(1, 4), (13, 9)]);
        let row = |x: &[u32]| -> Vec<u32> { [0, 0, 0, 0].iter().copied().chain(x.iter().map(|v| 2 * v)).collect() };
        let prod = pair_product(&row(&a), &row(&b), &d, 13).unwrap();
        prop_assert_eq!(prod % (4 * d.lcm()), 0);
        prop_assert_ne!(prod, pair_target(&biplane(), &d, 13, false));
    }

    #[test]
    fn scaled_quadratic_matches_fractions(row in prop::collection::vec(0u32..=16, 11), omega in prop::sample::select(vec![1u32, 7, 21])) {
        let d = dist(&[(1, 2), (7, 5), (21, 4)]);
        let (mut num, den) = (0u64, 21u64);
        for (r, &g) in row.iter().enumerate() {
            let w = u64::from(d.point_orbits()[r]);
            num += u64::from(omega) * u64::from(g) * u64::from(g) * (den / w);
        }
        prop_assert_eq!(row_quadratic(&row, &d, omega).unwrap(), num);
    }

    #[test]
    fn format_round_trips(rows in prop::collection::vec(prop::collection::vec(0u32..=7, 3), 0..=3)) {
        let p = DesignParams::new(7, 4, 2).unwrap();
        let d = OrbitDistribution::symmetric(7, vec![1, 3, 3]).unwrap();
        let plan = [1u32, 3, 3];
        let m = PartialOrbitMatrix::new(p, d, rows.clone(), plan[..rows.len()].to_vec()).unwrap();
        let text = write_matrix_string(&m);
        prop_assert!(text.is_ascii() && text.ends_with('\n'));
        prop_assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn types_are_sound_and_deterministic(omega in prop::sample::select(vec![1u32, 5]), cap in 1u32..=5) {
        let d = dist(&[(1, 1), (5, 24)]);
        let q = TypeQuery::new(d.clone(), omega).with_pin(Pin::cap(5, cap));
        let first = enumerate_types(&q, &biplane()).unwrap();
        prop_assert_eq!(&first, &enumerate_types(&q, &biplane()).unwrap());
        for t in &first {
            let row = t.to_row(&d);
            prop_assert!(check_row_sum(&row, &biplane(), &d).unwrap());
            prop_assert_eq!(row_quadratic(&row, &d, omega).unwrap(), row_quadratic_target(&biplane(), &d, omega));
            prop_assert!(row.iter().skip(1).all(|&x| x <= cap));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn search_is_independent_of_workers(workers in 1usize..=4, split in 0usize..=5) {
        let d = dist(&[(1, 2), (7, 17)]);
        let base = run_search(&SearchSpec::new(biplane(), d.clone()).with_target_depth(6)).unwrap();
        let par = run_search(&SearchSpec::new(biplane(), d).with_target_depth(6).with_workers(workers).with_split_depth(split)).unwrap();
        prop_assert_eq!(&base.counts, &par.counts);
        prop_assert_eq!(&base.matrices, &par.matrices);
        prop_assert_eq!(base.fingerprint, par.fingerprint);
        prop_assert_eq!(base.stats.nodes, par.stats.nodes);
    }
}

#[test]
fn emitted_matrices_verify_and_are_isomorph_free() {
    let d = dist(&[(1, 2), (7, 17)]);
    let report = run_search(&SearchSpec::new(biplane(), d).with_target_depth(6)).unwrap();
    let keys: std::collections::BTreeSet<_> = report.matrices.iter().map(canonical_form).collect();
    assert_eq!(keys.len(), report.matrices.len());
    for m in &report.matrices {
        assert_eq!(verify_partial(m), Ok(()));
        assert_eq!(canonical_form(m).rows, m.rows());
    }
}

#[test]
fn store_limit_counts_without_keeping() {
    let d = dist(&[(1, 1), (15, 8)]);
    let full = run_search(&SearchSpec::new(biplane(), d.clone()).with_target_depth(9)).unwrap();
    let cut = run_search(&SearchSpec::new(biplane(), d).with_target_depth(9).with_store_limit(2)).unwrap();
    assert!(!full.truncated);
    assert!(cut.truncated);
    assert_eq!(cut.counts, full.counts);
    assert_eq!(cut.matrices[..], full.matrices[..2]);
}
