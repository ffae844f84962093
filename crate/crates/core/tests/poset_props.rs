mod common;

use common::{inversions, BruhatOracle};
use speh_core::perm::{classify_inv_cover, Involution, Permutation};
use speh_core::poset::{edelman_label, el_check, involution_hasse, symmetric_hasse, RankedHasse};
use speh_core::Error;

#[test]
fn symmetric_hasse_edges_match_oracle() {
    for n in 1..=5 {
        let h = symmetric_hasse(n).unwrap();
        let o = BruhatOracle::new(n);
        let mut want = Vec::new();
        for a in 0..o.elems.len() {
            for b in o.covers_within(a, &|_| true) {
                want.push((o.elems[a].clone(), o.elems[b].clone()));
            }
        }
        let mut got: Vec<(Vec<usize>, Vec<usize>)> = h
            .edges()
            .iter()
            .map(|&(x, y)| (h.key(x).values(), h.key(y).values()))
            .collect();
        want.sort();
        got.sort();
        assert_eq!(got, want, "n = {n}");
        for v in 0..h.len() {
            assert_eq!(h.rank(v), inversions(&h.key(v).values()));
        }
    }
}

#[test]
fn rank_sizes() {
    // Mahonian numbers for n = 4.
    assert_eq!(symmetric_hasse(4).unwrap().rank_sizes(), vec![1, 3, 5, 6, 5, 3, 1]);
    assert_eq!(involution_hasse(4).unwrap().rank_sizes(), vec![1, 3, 3, 2, 1]);
    assert_eq!(involution_hasse(3).unwrap().rank_sizes(), vec![1, 2, 1]);
    for n in 1..=6 {
        let h = involution_hasse(n).unwrap();
        assert_eq!(h.len(), Involution::all(n).len());
        assert_eq!(h.max_rank(), (n / 2) * (n - n / 2));
        assert_eq!(h.minimal().len(), 1);
        assert_eq!(h.maximal().len(), 1);
    }
}

fn all_chains_have_rank_length<K: speh_core::poset::NodeKey>(h: &RankedHasse<K>) {
    let (lo, hi) = h.bounds().unwrap();
    for chain in h.saturated_chains(lo, hi).unwrap() {
        assert_eq!(chain.len(), h.max_rank() + 1);
    }
}

#[test]
fn saturated_chains_have_equal_length() {
    for n in 1..=4 {
        all_chains_have_rank_length(&symmetric_hasse(n).unwrap());
    }
    for n in 1..=5 {
        all_chains_have_rank_length(&involution_hasse(n).unwrap());
    }
    // 4! chains would be many; count them for S_3 instead.
    let h = symmetric_hasse(3).unwrap();
    let (lo, hi) = h.bounds().unwrap();
    assert_eq!(h.saturated_chains(lo, hi).unwrap().len(), 4);
}

#[test]
fn diamonds_are_clean() {
    for n in 1..=5 {
        let r = symmetric_hasse(n).unwrap().find_diamonds();
        assert!(r.is_clean(), "S_{n}: {:?}", r.violations.first());
    }
    for n in 1..=6 {
        let r = involution_hasse(n).unwrap().find_diamonds();
        assert!(r.is_clean(), "I_{n}: {:?}", r.violations.first());
    }
}

#[test]
fn diamond_violation_is_reported() {
    // Three atoms under one top.
    let h = RankedHasse::from_covers(
        [("0", 0), ("a", 1), ("b", 1), ("c", 1), ("1", 2)].map(|(k, r)| (k.to_string(), r)),
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
            .map(|(x, y)| (x.to_string(), y.to_string())),
    )
    .unwrap();
    let r = h.find_diamonds();
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].midpoints.len(), 3);
}

#[test]
fn grading_violation_is_reported() {
    let e = RankedHasse::from_covers(
        [("a".to_string(), 0), ("b".to_string(), 2)],
        [("a".to_string(), "b".to_string())],
    )
    .unwrap_err();
    assert!(matches!(e, Error::GradingViolation { gap: 2, .. }));
}

#[test]
fn intervals_are_eulerian() {
    for n in 1..=4 {
        let h = symmetric_hasse(n).unwrap();
        for x in 0..h.len() {
            for y in 0..h.len() {
                if x != y && h.leq(x, y) {
                    assert_eq!(h.alternating_rank_sum(x, y).unwrap(), 0);
                }
            }
        }
    }
    for n in 1..=5 {
        let h = involution_hasse(n).unwrap();
        for x in 0..h.len() {
            for y in 0..h.len() {
                if x != y && h.leq(x, y) {
                    assert_eq!(h.alternating_rank_sum(x, y).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn edelman_labels_are_el() {
    for n in 1..=5 {
        let h = symmetric_hasse(n)
            .unwrap()
            .with_labels(|a, b| edelman_label(a, b))
            .unwrap();
        let r = el_check(&h, h.labels().unwrap());
        assert!(r.passed(), "S_{n}: {:?}", r.failures.first());
    }
}

#[test]
fn constant_labels_are_not_el() {
    // Every chain of [123, 321] is weakly increasing, so none is unique.
    let h = symmetric_hasse(3).unwrap();
    let labels = vec![(1, 1); h.edges().len()];
    let r = el_check(&h, &labels);
    assert!(!r.passed());
    assert_eq!(r.failures.iter().map(|f| f.increasing_chains).max(), Some(4));
}

#[test]
fn edelman_label_rejects_non_covers() {
    let (a, b): (Permutation, Permutation) = ("123".parse().unwrap(), "321".parse().unwrap());
    assert!(edelman_label(&a, &b).is_err());
}

#[test]
fn interval_keeps_structure() {
    let h = symmetric_hasse(4).unwrap();
    let x = h.id(&"1324".parse().unwrap()).unwrap();
    let y = h.id(&"3412".parse().unwrap()).unwrap();
    let i = h.interval(x, y).unwrap();
    assert_eq!(i.rank_sizes(), vec![1, 4, 4, 1]);
    assert!(h.interval(y, x).is_err());
}

/// The rise of each involution cover as its label.
#[test]
fn rise_labels_are_el_on_involutions() {
    let mut outcome = Vec::new();
    for n in 1..=5 {
        let h = involution_hasse(n)
            .unwrap()
            .with_labels(|a, b| Ok(classify_inv_cover(a, b)?.rise))
            .unwrap();
        outcome.push(el_check(&h, h.labels().unwrap()).passed());
    }
    assert_eq!(outcome, vec![true; 5]);
}
