mod common;

use common::KlOracle;
use proptest::prelude::*;
use speh_core::perm::{Involution, Permutation, Sign, SignedInvolution};
use speh_core::speh::{
    euler_check, euler_check_with, infinitesimal_character, m_values, standard_label,
    theta_on_signed_param, FormalSum, HalfInt, KLTable, MultiplicityConvention,
};

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

proptest! {
    #[test]
    fn label_round_trip(s in perm_strategy(8), extra in 0usize..4) {
        let p = s.len() + extra;
        let label = standard_label(p, &s).unwrap();
        prop_assert_eq!(label.to_permutation(p).unwrap(), s);
    }

    #[test]
    fn theta_on_labels_inverts(s in perm_strategy(8), extra in 0usize..4) {
        let p = s.len() + extra;
        let label = standard_label(p, &s).unwrap();
        prop_assert_eq!(label.theta(), standard_label(p, &s.inverse()).unwrap());
        prop_assert_eq!(label.theta().theta(), label);
    }
}

#[test]
fn m_values_are_symmetric_steps() {
    for n in 1..=6 {
        for p in n..n + 4 {
            let m = m_values(p, n).unwrap();
            assert_eq!(m.len(), n);
            assert!(m.windows(2).all(|w| w[0].doubled() - w[1].doubled() == 2));
            assert_eq!(m[0].doubled() + m[n - 1].doubled(), 2 * (p as i64) - 4);
        }
        assert!(m_values(n - 1, n).is_err());
    }
}

#[test]
fn infinitesimal_character_is_regular() {
    for p in 1..=10 {
        for n in 1..=p {
            let chi = infinitesimal_character(p, n).unwrap();
            assert_eq!(chi.len(), 2 * n);
            assert!(chi.windows(2).all(|w| w[0] < w[1]), "p = {p}, n = {n}");
            let negated: Vec<HalfInt> = chi.iter().rev().map(|x| x.neg()).collect();
            assert_eq!(negated, chi);
        }
        assert!(infinitesimal_character(p, p + 1).is_err());
    }
}

#[test]
fn theta_on_signed_parameters_is_an_involution() {
    for n in 1..=5 {
        for s in Involution::all(n) {
            let fixed = s.fixed_points();
            for mask in 0..1u32 << fixed.len() {
                let signs = (1..=n)
                    .map(|i| {
                        fixed.iter().position(|&f| f == i).map(|k| {
                            if mask >> k & 1 == 1 { Sign::Minus } else { Sign::Plus }
                        })
                    })
                    .collect();
                let eta = SignedInvolution::new(s.clone(), signs).unwrap();
                let image = theta_on_signed_param(&eta);
                assert_eq!(image.involution.length_i(), s.length_i());
                assert_eq!(theta_on_signed_param(&image), eta);
            }
        }
    }
}

#[test]
fn kl_matches_r_polynomial_oracle() {
    for n in 1..=5 {
        let t = KLTable::new(n).unwrap();
        let o = KlOracle::new(n);
        for x in &o.bruhat.elems {
            for w in &o.bruhat.elems {
                let (px, pw) = (Permutation::new(x.clone()).unwrap(), Permutation::new(w.clone()).unwrap());
                assert_eq!(t.poly(&px, &pw), o.p(x, w), "P_{{{px},{pw}}}");
            }
        }
    }
}

#[test]
fn kl_basic_identities() {
    for n in 1..=6 {
        let t = KLTable::new(n).unwrap();
        let all: Vec<Permutation> = Permutation::all(n).collect();
        let w0 = Permutation::longest(n);
        for w in &all {
            assert_eq!(t.poly(w, w), vec![1]);
            assert_eq!(t.poly(&Permutation::identity(n), w)[0], 1);
            assert_eq!(t.poly(w, &w0), vec![1]);
        }
        for entry in t.dump() {
            assert!(entry.x.bruhat_leq(&entry.w));
            let d = entry.w.inv_count() - entry.x.inv_count();
            if d > 0 {
                assert!(2 * (entry.coeffs.len() - 1) < d, "{entry:?}");
            }
            assert!(entry.coeffs.iter().all(|&c| c >= 0));
        }
    }
}

#[test]
fn kl_known_values() {
    let t = KLTable::new(4).unwrap();
    let p = |s: &str| -> Permutation { s.parse().unwrap() };
    assert_eq!(t.poly(&p("1324"), &p("3412")), vec![1, 1]);
    assert_eq!(t.poly(&p("2143"), &p("4231")), vec![1, 1]);
    assert_eq!(t.mu(&p("1324"), &p("3412")), 1);
    assert_eq!(t.value_at_one(&p("1234"), &p("3412")), 2);
    assert!(t.poly(&p("3412"), &p("1324")).is_empty());
    assert!(KLTable::new(0).is_err());
    assert!(KLTable::new(8).is_err());
}

#[test]
fn euler_conventions() {
    for n in 1..=3 {
        let t = KLTable::new(n).unwrap();
        assert!(euler_check_with(n, &t, MultiplicityConvention::Direct).0, "n = {n}");
        assert!(euler_check_with(n, &t, MultiplicityConvention::LongestTwisted).0, "n = {n}");
    }
    let t = KLTable::new(4).unwrap();
    let (ok, residual) = euler_check(4, &t);
    assert!(ok, "{residual:?}");
    let (direct, _) = euler_check_with(4, &t, MultiplicityConvention::Direct);
    assert!(!direct);
}

#[test]
fn formal_sum_arithmetic() {
    let mut a = FormalSum::from_terms([("x", 1), ("y", 2), ("z", 0)]);
    assert_eq!(a.len(), 2);
    let b = FormalSum::from_terms([("y", 2), ("w", -1)]);
    a -= &b;
    assert_eq!(a, FormalSum::from_terms([("x", 1), ("w", 1)]));
    let c = a.substitute(&"x", &FormalSum::from_terms([("w", -1), ("v", 3)]));
    assert_eq!(c, FormalSum::from_terms([("v", 3)]));
    assert!(c.scaled(0).is_zero());
}
