use omf_core::oracle::{brute_canonical_form, brute_force_row_types, naive_complete_matrices, DEFAULT_CEILING};
use omf_core::*;
use std::collections::BTreeSet;

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

fn engine_set(params: DesignParams, dist: &OrbitDistribution) -> BTreeSet<Vec<Vec<u32>>> {
    let spec = SearchSpec::new(params, dist.clone()).with_target_depth(dist.t());
    let report = run_search(&spec).unwrap();
    assert!(!report.truncated);
    assert_eq!(report.terminal_count() as usize, report.matrices.len());
    report
        .matrices
        .iter()
        .map(|m| {
            assert!(verify_complete(m).is_ok());
            m.rows().to_vec()
        })
        .collect()
}

fn compare(v: u32, k: u32, lambda: u32, max_parts: usize) -> usize {
    let params = DesignParams::new(v, k, lambda).unwrap();
    let mut compared = 0;
    for parts in partitions(v, v) {
        if parts.len() > max_parts {
            continue;
        }
        let mut w = parts.clone();
        w.sort_unstable();
        let dist = OrbitDistribution::symmetric(v, w).unwrap();
        let oracle = match naive_complete_matrices(&params, &dist, DEFAULT_CEILING) {
            Ok(s) => s,
            Err(Error::OracleRefused { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let engine = engine_set(params, &dist);
        assert_eq!(engine, oracle, "{params} {:?}", dist.point_orbits());
        compared += 1;
    }
    compared
}

#[test]
fn engine_matches_naive_oracle_742() {
    assert_eq!(compare(7, 4, 2, 7), 15);
}

#[test]
fn engine_matches_naive_oracle_1152() {
    assert!(compare(11, 5, 2, 7) >= 30);
}

#[test]
fn brute_canonical_agrees_with_engine_canonical_form() {
    let params = DesignParams::new(121, 16, 2).unwrap();
    let dist = OrbitDistribution::symmetric(121, vec![1, 1, 7, 7, 7, 7, 7, 21, 21, 21, 21]).unwrap();
    let report = run_search(&SearchSpec::new(params, dist.clone()).with_target_depth(6)).unwrap();
    assert!(!report.matrices.is_empty());
    for m in &report.matrices {
        let brute = brute_canonical_form(m.rows(), m.row_orbits(), dist.point_orbits(), DEFAULT_CEILING).unwrap();
        assert_eq!(brute, canonical_form(m).rows);
    }
}

fn reference_queries() -> Vec<(DesignParams, TypeQuery)> {
    let p = DesignParams::new(121, 16, 2).unwrap();
    let d = |w: Vec<u32>| OrbitDistribution::symmetric(121, w).unwrap();
    let rep = |l: u32, n: usize| std::iter::repeat_n(l, n);
    vec![
        (p, TypeQuery::new(d(rep(11, 11).collect()), 11)),
        (p, TypeQuery::new(d(rep(1, 1).chain(rep(5, 24)).collect()), 5).with_pin(Pin::zero(1))),
        (p, TypeQuery::new(d(rep(1, 2).chain(rep(7, 17)).collect()), 7).with_pin(Pin::zero(1))),
        (p, TypeQuery::new(d(rep(1, 4).chain(rep(13, 9)).collect()), 1)),
        (p, TypeQuery::new(d(rep(1, 4).chain(rep(13, 9)).collect()), 13)),
        (p, TypeQuery::new(d(rep(1, 2).chain(rep(7, 17)).collect()), 1)),
        (p, TypeQuery::new(d(rep(1, 1).chain(rep(5, 24)).collect()), 1)),
        (p, TypeQuery::new(d(rep(1, 1).chain(rep(15, 8)).collect()), 15)),
        (p, TypeQuery::new(d(rep(1, 2).chain(rep(7, 5)).chain(rep(21, 4)).collect()), 7)),
        (p, TypeQuery::new(d(rep(1, 2).chain(rep(7, 5)).chain(rep(21, 4)).collect()), 21)),
        (DesignParams::new(7, 4, 2).unwrap(), TypeQuery::new(OrbitDistribution::symmetric(7, vec![7]).unwrap(), 7)),
    ]
}

#[test]
fn row_types_match_brute_force() {
    for (params, q) in reference_queries() {
        let fast = enumerate_types(&q, &params).unwrap();
        let slow = brute_force_row_types(&q, &params, DEFAULT_CEILING).unwrap();
        assert_eq!(fast, slow, "Omega={} {:?}", q.block_orbit, q.dist.point_orbits());
    }
}
