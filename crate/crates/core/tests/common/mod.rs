#![allow(dead_code)]

use admissible_core::oracle::OracleSets;
use admissible_core::{Kind, TameRelation};

/// Every valid relation at resolution `n` with its brute-force member list.
pub fn relations(sets: &OracleSets) -> Vec<(TameRelation, Vec<u64>)> {
    let n = sets.n;
    let mut out = Vec::new();
    for kind in Kind::ALL {
        for i in 0..=n {
            if kind.is_pair() {
                for j in (0..=n).filter(|&j| j != i) {
                    let list = match kind {
                        Kind::C1 => &sets.c1[&(i, j)],
                        _ => &sets.c1bar[&(i, j)],
                    };
                    out.push((TameRelation::pair(kind, n, i, j).unwrap(), list.clone()));
                }
            } else {
                let list = match kind {
                    Kind::A => &sets.a,
                    Kind::B => &sets.b,
                    Kind::A1 => &sets.a1,
                    Kind::B1 => &sets.b1,
                    Kind::A2 => &sets.a2,
                    _ => &sets.b2,
                };
                out.push((TameRelation::single(kind, n, i).unwrap(), list[i as usize].clone()));
            }
        }
    }
    out
}
