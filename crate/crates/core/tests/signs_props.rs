use proptest::prelude::*;
use speh_core::fixture::{gl6, gl8, verify_fixture};
use speh_core::poset::{involution_hasse, symmetric_hasse, RankedHasse};
use speh_core::signs::{
    boundary_matrices, diamond_parity_check, gauge_equivalent, solve_signs, solve_signs_with_order,
    verify_complex, IntMatrix, SignAssignment,
};
use speh_core::Error;

/// `D_{d+1} D_d` recomputed entry by entry from the edge list, without the
/// matrix code.
fn squares_vanish<K: speh_core::poset::NodeKey>(h: &RankedHasse<K>, a: &SignAssignment) -> bool {
    let sign = |x: usize, y: usize| h.edge_id(x, y).map(|e| a.sign(e) as i64).unwrap_or(0);
    for top in 0..h.len() {
        for bottom in 0..h.len() {
            if h.rank(top) != h.rank(bottom) + 2 {
                continue;
            }
            let total: i64 = h
                .down(top)
                .iter()
                .map(|&m| sign(bottom, m) * sign(m, top))
                .sum();
            if total != 0 {
                return false;
            }
        }
    }
    true
}

#[test]
fn solver_works_on_involutions_and_symmetric_groups() {
    for n in 1..=6 {
        let h = involution_hasse(n).unwrap();
        let a = solve_signs(&h).unwrap();
        assert!(diamond_parity_check(&h, &a).is_clean());
        assert!(verify_complex(&boundary_matrices(&h, &a).unwrap()), "I_{n}");
        assert!(squares_vanish(&h, &a), "I_{n}");
    }
    for n in 1..=5 {
        let h = symmetric_hasse(n).unwrap();
        let a = solve_signs(&h).unwrap();
        assert!(verify_complex(&boundary_matrices(&h, &a).unwrap()), "S_{n}");
        assert!(squares_vanish(&h, &a), "S_{n}");
    }
}

#[test]
fn complex_shapes() {
    let h = involution_hasse(3).unwrap();
    let c = boundary_matrices(&h, &solve_signs(&h).unwrap()).unwrap();
    assert_eq!(c.degrees, vec![1, 2, 1]);
    assert_eq!((c.boundaries[0].rows(), c.boundaries[0].cols()), (2, 1));
    assert_eq!((c.boundaries[1].rows(), c.boundaries[1].cols()), (1, 2));
    let h = involution_hasse(4).unwrap();
    let c = boundary_matrices(&h, &solve_signs(&h).unwrap()).unwrap();
    assert_eq!(c.degrees, vec![1, 2, 3, 3, 1]);
    assert_eq!(c.basis[0], vec!["4321".to_string()]);
    assert_eq!(c.basis[4], vec!["1234".to_string()]);
}

#[test]
fn all_plus_fails_on_three() {
    let h = involution_hasse(3).unwrap();
    let a = SignAssignment::all_plus(&h);
    assert!(!verify_complex(&boundary_matrices(&h, &a).unwrap()));
    assert_eq!(diamond_parity_check(&h, &a).violations.len(), 1);
}

#[test]
fn every_single_flip_breaks_four() {
    let h = involution_hasse(4).unwrap();
    let a = solve_signs(&h).unwrap();
    let diamonds = h.find_diamonds().diamonds;
    for e in 0..h.edges().len() {
        let (lo, hi) = h.edges()[e];
        let in_diamond = diamonds.iter().any(|d| {
            [(d.bottom, d.mid1), (d.bottom, d.mid2), (d.mid1, d.top), (d.mid2, d.top)]
                .contains(&(lo, hi))
        });
        let broken = !verify_complex(&boundary_matrices(&h, &a.flipped(e)).unwrap());
        assert_eq!(broken, in_diamond, "edge {e}");
        assert!(broken);
    }
}

#[test]
fn gauge_flip_keeps_the_complex() {
    let h = involution_hasse(4).unwrap();
    let a = solve_signs(&h).unwrap();
    for v in 0..h.len() {
        let b = a.gauge_flip(&h, v);
        assert!(verify_complex(&boundary_matrices(&h, &b).unwrap()));
        assert!(gauge_equivalent(&h, &a, &b));
    }
    assert!(!gauge_equivalent(&h, &a, &a.flipped(0)));
}

#[test]
fn fixtures_match_solver_up_to_gauge() {
    for (f, n) in [(gl6(), 3), (gl8(), 4)] {
        let r = verify_fixture(&f).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.signed);
        let h = involution_hasse(n).unwrap();
        let ours = solve_signs(&h).unwrap();
        let theirs = f.signs_on(&h).unwrap();
        assert!(gauge_equivalent(&h, &ours, &theirs), "n = {n}");
    }
}

#[test]
fn degree_mismatch_is_reported() {
    let h = involution_hasse(3).unwrap();
    let a = solve_signs(&h).unwrap();
    let e = speh_core::signs::boundary_matrices_with(&h, &a, |_| 0).unwrap_err();
    assert!(matches!(e, Error::DegreeMismatch(..)));
}

#[test]
fn solver_requires_clean_diamonds() {
    let h = RankedHasse::from_covers(
        [("0", 0), ("a", 1), ("b", 1), ("c", 1), ("1", 2)].map(|(k, r)| (k.to_string(), r)),
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
            .map(|(x, y)| (x.to_string(), y.to_string())),
    )
    .unwrap();
    assert_eq!(solve_signs(&h).unwrap_err(), Error::DiamondViolation(1));
}

#[test]
fn matrix_product() {
    let mut a = IntMatrix::zeros(1, 2);
    a.set(0, 0, 1);
    a.set(0, 1, 1);
    let mut b = IntMatrix::zeros(2, 1);
    b.set(0, 0, 1);
    b.set(1, 0, -1);
    assert!(a.mul(&b).unwrap().is_zero());
    assert!(b.mul(&b).is_err());
    assert_eq!(b.mul(&a).unwrap().to_rows(), vec![vec![1, 1], vec![-1, -1]]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Any elimination order gives a valid assignment in the same gauge class.
    #[test]
    fn solutions_agree_up_to_gauge(
        (n, order) in (2usize..=5).prop_flat_map(|n| {
            let edges = involution_hasse(n).unwrap().edges().len();
            (Just(n), Just((0..edges).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let h = involution_hasse(n).unwrap();
        let a = solve_signs(&h).unwrap();
        let b = solve_signs_with_order(&h, &order).unwrap();
        prop_assert!(diamond_parity_check(&h, &b).is_clean());
        prop_assert!(gauge_equivalent(&h, &a, &b));
    }

    #[test]
    fn random_gauge_preserves_parity(n in 2usize..=5, flips in proptest::collection::vec(any::<usize>(), 0..10)) {
        let h = involution_hasse(n).unwrap();
        let mut a = solve_signs(&h).unwrap();
        for f in flips {
            a = a.gauge_flip(&h, f % h.len());
        }
        prop_assert!(diamond_parity_check(&h, &a).is_clean());
        prop_assert!(squares_vanish(&h, &a));
    }
}
