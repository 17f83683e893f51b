mod common;

use admissible_core::oracle::{oracle_ew, oracle_f, oracle_g, oracle_h, oracle_quantile, oracle_sets};
use admissible_core::{Kind, Nat, Rule, Session, TameRelation};

fn nat(v: u64) -> Nat {
    Nat::from(v)
}

#[test]
fn counting_functions_match_filtered_sets() {
    let s = Session::new();
    for n in 1..=9 {
        let sets = oracle_sets(n).unwrap();
        for (rel, list) in common::relations(&sets) {
            assert_eq!(s.size(&rel).unwrap(), nat(list.len() as u64), "{rel:?}");
            let mut seen = 0u64;
            for x in 0..1u64 << n {
                let is_member = list.binary_search(&x).is_ok();
                assert_eq!(s.member(&rel, &nat(x)).unwrap(), is_member, "{rel:?} {x}");
                if x > 0 {
                    seen += u64::from(is_member);
                    assert_eq!(s.card(&rel, &nat(x)).unwrap(), nat(seen), "{rel:?} {x}");
                }
            }
            for (t, &m) in list.iter().enumerate() {
                assert_eq!(s.enumerate(&rel, &nat(t as u64 + 1)).unwrap(), nat(m));
            }
            assert!(s.enumerate(&rel, &nat(list.len() as u64 + 1)).is_err());
        }
    }
}

#[test]
fn rules_match_oracle_tables() {
    let s = Session::new();
    for n in 1..=10 {
        assert_eq!(s.dense(Rule::F, n).unwrap(), oracle_f(n).unwrap(), "F {n}");
        assert_eq!(s.dense(Rule::G, n).unwrap(), oracle_g(n).unwrap(), "G {n}");
        assert_eq!(s.dense(Rule::H, n).unwrap(), oracle_h(n).unwrap(), "H {n}");
    }
}

#[test]
fn beta_rank_matches_card() {
    let s = Session::new();
    for n in 1..=10 {
        for j in 0..=n {
            let rel = TameRelation::single(Kind::B, n, j).unwrap();
            for b in 1..1u64 << n {
                assert_eq!(
                    s.beta_rank(n, j, &nat(b)).unwrap(),
                    s.card(&rel, &nat(b)).unwrap(),
                    "{n} {j} {b}"
                );
            }
        }
    }
}

#[test]
fn ew_matches_scan() {
    let s = Session::new();
    for j in 1..=6 {
        for t in 1..=120 {
            let fast = s.ew(j, &nat(t)).unwrap();
            match oracle_ew(j, t) {
                Ok(slow) => assert_eq!(fast, slow, "{j} {t}"),
                Err(_) => assert!(fast >= nat(1 << 24), "{j} {t}"),
            }
        }
    }
}

#[test]
fn quantile_matches_sorted_walk() {
    for n in 1..=12 {
        let level = Session::new().level(n).unwrap();
        let fast: Vec<i64> = (0..1u64 << n)
            .map(|k| level.quantile_value(&nat(k)).unwrap())
            .collect();
        assert_eq!(fast, oracle_quantile(n).unwrap(), "{n}");
    }
}
