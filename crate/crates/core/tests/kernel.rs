mod common;

use common::*;
use omf_core::*;

fn d11() -> OrbitDistribution {
    dist(&[(11, 11)])
}

#[test]
fn prefix_bound_is_tight_at_full_width() {
    let m = golden("om21");
    let (p, d) = (m.params(), m.dist());
    for (i, a) in m.rows().iter().enumerate() {
        for (j, b) in m.rows().iter().enumerate() {
            let oj = m.row_orbits()[j];
            assert!(prefix_bound_ok(a, b, p, d, oj, i == j));
            assert_eq!(pair_product(a, b, d, oj).unwrap(), pair_target(p, d, oj, i == j));
        }
    }
}

#[test]
fn prefix_bound_on_order11_prefix() {
    // i = j with Omega = 11: bound is lambda*11 + (k - lambda) = 36
    let (p, d) = (biplane(), d11());
    assert!(prefix_bound_ok(&[4, 3], &[4, 3], &p, &d, 11, true));
    assert!(prefix_bound_ok(&[4, 4], &[4, 4], &p, &d, 11, true));
    assert!(prefix_bound_ok(&[4, 4, 2], &[4, 4, 2], &p, &d, 11, true));
    for x in 3..=4 {
        assert!(!prefix_bound_ok(&[4, 4, x], &[4, 4, x], &p, &d, 11, true));
    }
    assert!(!prefix_bound_ok(&[4, 4], &[4], &p, &d, 11, true));
}

#[test]
fn mixed_lengths_stay_integral() {
    let d = dist(&[(1, 2), (7, 5), (21, 4)]);
    assert_eq!(d.lcm(), 21);
    let row = [1, 0, 1, 0, 1, 0, 1, 6, 3, 3, 0];
    assert_eq!(row_quadratic(&row, &d, 7).unwrap(), 21 * 28);
    assert!(dual_integrality_ok(&row, &d, 7).unwrap());
    let bad = [1, 0, 1, 0, 1, 0, 1, 6, 3, 2, 1];
    assert!(!dual_integrality_ok(&bad, &d, 7).unwrap());
}

#[test]
fn length_mismatch_is_a_contract_error() {
    let d = d11();
    assert_eq!(
        check_row_sum(&[16], &biplane(), &d),
        Err(Error::LengthMismatch { expected: 11, found: 1 })
    );
    assert!(pair_product(&[0; 11], &[0; 10], &d, 11).is_err());
}

#[test]
fn row_type_tables() {
    let p = biplane();
    let types = enumerate_types(&TypeQuery::new(d11(), 11), &p).unwrap();
    let flat: Vec<Vec<u32>> = types.iter().map(|t| t.flat()).collect();
    assert_eq!(
        flat,
        vec![
            vec![4, 3, 2, 1, 1, 1, 1, 1, 1, 1, 0],
            vec![4, 2, 2, 2, 2, 1, 1, 1, 1, 0, 0],
            vec![3, 3, 3, 2, 1, 1, 1, 1, 1, 0, 0],
            vec![3, 3, 2, 2, 2, 2, 1, 1, 0, 0, 0],
        ]
    );

    let q5 = TypeQuery::new(dist(&[(1, 1), (5, 24)]), 5).with_pin(Pin::zero(1));
    let t5: Vec<Vec<u32>> = enumerate_types(&q5, &p).unwrap().iter().map(|t| t.classes[1].entries.clone()).collect();
    let mut a = vec![3, 2];
    a.extend([1; 11]);
    a.extend([0; 11]);
    let mut b = vec![2; 4];
    b.extend([1; 8]);
    b.extend([0; 12]);
    assert_eq!(t5, vec![a, b]);

    let q7 = TypeQuery::new(dist(&[(1, 2), (7, 17)]), 7).with_pin(Pin::zero(1));
    let t7: Vec<Vec<u32>> = enumerate_types(&q7, &p).unwrap().iter().map(|t| t.classes[1].entries.clone()).collect();
    let expected: Vec<Vec<u32>> = [
        "4 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0",
        "3 3 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0",
        "3 2 2 2 1 1 1 1 1 1 1 0 0 0 0 0 0",
        "2 2 2 2 2 2 1 1 1 1 0 0 0 0 0 0 0",
    ]
    .iter()
    .map(|s| s.split(' ').map(|x| x.parse().unwrap()).collect())
    .collect();
    assert_eq!(t7, expected);
}

#[test]
fn fixed_block_cycle_types() {
    let p = biplane();
    for (d, units, big) in [
        (dist(&[(1, 4), (13, 9)]), 3, 1),
        (dist(&[(1, 2), (7, 17)]), 2, 2),
        (dist(&[(1, 1), (5, 24)]), 1, 3),
    ] {
        let types = fixed_block_types(&p, &d).unwrap();
        assert_eq!(types.len(), 1);
        let t = &types[0];
        assert_eq!(t.classes[0].entries.iter().filter(|&&x| x == 1).count(), units);
        let len = t.classes[1].length;
        assert_eq!(t.classes[1].entries.iter().filter(|&&x| x == len).count(), big);
        assert_eq!(t.classes[1].entries.iter().filter(|&&x| x != 0 && x != len).count(), 0);
    }
    assert!(fixed_block_types(&p, &d11()).is_err());
}
