mod common;

use admissible_core::numeric::{binomial, bits, weight};
use admissible_core::oracle::oracle_sets;
use admissible_core::{Kind, Nat, Rule, Session, TameRelation};
use num_bigint::BigUint;
use proptest::prelude::*;

fn atom(n: u32) -> impl Strategy<Value = (u32, Nat)> {
    (1..=n).prop_flat_map(|n| {
        proptest::collection::vec(any::<u8>(), (n as usize).div_ceil(8))
            .prop_map(move |bytes| (n, BigUint::from_bytes_le(&bytes) % (BigUint::from(1u32) << n)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inv_f_inverts_f((n, k) in atom(300)) {
        let s = Session::new();
        let m = s.f(n, &k).unwrap();
        prop_assert_eq!(weight(&m), u64::from(s.istep(n, &k).unwrap()));
        prop_assert_eq!(s.inv_f(n, &m).unwrap(), k.clone());
        prop_assert_eq!(s.f(n, &s.inv_f(n, &k).unwrap()).unwrap(), k);
    }

    #[test]
    fn rules_are_admissible_pointwise((n, k) in atom(300)) {
        let s = Session::new();
        let i = u64::from(s.istep(n, &k).unwrap());
        for rule in Rule::ALL {
            prop_assert_eq!(weight(&s.apply(rule, n, &k).unwrap()), i);
        }
    }

    #[test]
    fn h_swaps_trimmed_pairs((n, k) in atom(300)) {
        let s = Session::new();
        let i = s.istep(n, &k).unwrap();
        let j = weight(&k) as u32;
        prop_assume!(i != j);
        let rel = TameRelation::pair(Kind::C1Bar, n, i, j).unwrap();
        if s.member(&rel, &k).unwrap() {
            let m = s.h(n, &k).unwrap();
            prop_assert_eq!(s.h(n, &m).unwrap(), k);
        }
    }

    #[test]
    fn enumerate_inverts_card((n, k) in atom(200)) {
        prop_assume!(k > Nat::from(0u32));
        let s = Session::new();
        let i = s.istep(n, &k).unwrap();
        let j = weight(&k) as u32;
        let mut kinds = vec![
            TameRelation::single(Kind::A, n, i).unwrap(),
            TameRelation::single(Kind::B, n, j).unwrap(),
        ];
        if i != j {
            kinds.push(TameRelation::single(Kind::A1, n, i).unwrap());
            kinds.push(TameRelation::single(Kind::B1, n, j).unwrap());
            kinds.push(TameRelation::pair(Kind::C1, n, i, j).unwrap());
        }
        for rel in kinds {
            prop_assert!(s.member(&rel, &k).unwrap());
            let c = s.card(&rel, &k).unwrap();
            let r = if rel.contains_zero() { c + 1u32 } else { c };
            s.reset_probes();
            prop_assert_eq!(s.enumerate(&rel, &r).unwrap(), k.clone());
            prop_assert!(s.card_probes() <= u64::from(n) + 2);
        }
    }

    #[test]
    fn bits_agree_with_popcount((n, k) in atom(200)) {
        let v = bits(n, &k).unwrap();
        prop_assert_eq!(v.value(), k.clone());
        prop_assert_eq!(v.weight(), weight(&k));
        prop_assert_eq!(v.bits().iter().map(|&b| u64::from(b)).sum::<u64>(), weight(&k));
    }
}

#[test]
fn sbc_brackets() {
    let s = Session::new();
    for n in 1..=16u32 {
        for i in 0..=n {
            let d = s.sbc(n, i + 1).unwrap() - s.sbc(n, i).unwrap();
            assert_eq!(d, binomial(n, i).unwrap());
        }
        for k in (0..1u64 << n).step_by(7) {
            let k = Nat::from(k);
            let i = s.istep(n, &k).unwrap();
            assert!(s.sbc(n, i).unwrap() <= k && k < s.sbc(n, i + 1).unwrap());
        }
    }
}

#[test]
fn quantile_is_sorted_walk() {
    let s = Session::new();
    for n in 1..=12u32 {
        let level = s.level(n).unwrap();
        let q: Vec<i64> = (0..1u64 << n).map(|k| level.quantile_value(&Nat::from(k)).unwrap()).collect();
        let mut w: Vec<i64> = (0..1u64 << n).map(|k| level.walk_value(&Nat::from(k)).unwrap()).collect();
        assert!(q.windows(2).all(|p| p[0] <= p[1]));
        w.sort_unstable();
        assert_eq!(q, w);
    }
}

#[test]
fn covers_and_sizes() {
    let s = Session::new();
    for n in 1..=12u32 {
        let sets = oracle_sets(n).unwrap();
        for i in 0..=n {
            let size = |kind, i| s.size(&TameRelation::single(kind, n, i).unwrap()).unwrap();
            assert_eq!(size(Kind::A1, i), size(Kind::B1, i));
            assert_eq!(size(Kind::A2, i), size(Kind::B2, i));
            let mut rows: Vec<u64> = (0..=n).filter(|&j| j != i).flat_map(|j| sets.c1[&(i, j)].clone()).collect();
            let mut cols: Vec<u64> = (0..=n).filter(|&j| j != i).flat_map(|j| sets.c1[&(j, i)].clone()).collect();
            rows.sort_unstable();
            cols.sort_unstable();
            assert_eq!(rows, sets.a1[i as usize]);
            assert_eq!(cols, sets.b1[i as usize]);
            for j in (0..=n).filter(|&j| j != i) {
                let bar = |i, j| s.size(&TameRelation::pair(Kind::C1Bar, n, i, j).unwrap()).unwrap();
                assert_eq!(bar(i, j), bar(j, i));
            }
        }
    }
}

#[test]
fn probe_bound_large_n() {
    let s = Session::new();
    for n in [64u32, 500, 1024] {
        let rel = TameRelation::pair(Kind::C1Bar, n, n / 2 - 1, n / 2 + 3).unwrap();
        let size = s.size(&rel).unwrap();
        for r in [Nat::from(1u32), &size >> 1u32, size.clone()] {
            s.reset_probes();
            s.enumerate(&rel, &r).unwrap();
            assert!(s.card_probes() <= u64::from(n) + 2);
        }
    }
}
