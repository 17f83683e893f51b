//! Brute-force references built by filtering `0..2^n` with the defining
//! predicates. They share only [`Nat`] and [`weight`] with the fast code.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::{weight, Nat};
use crate::perm::DensePermutation;

/// Largest `n` for [`oracle_sets`] and [`oracle_quantile`].
pub const MAX_SET_N: u32 = 16;
/// Largest `n` for the oracle permutations.
pub const MAX_PERM_N: u32 = 12;
/// Scan bound for [`oracle_ew`].
pub const EW_GUARD: u64 = 1 << 24;

fn guard(n: u32, max: u32) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::Resolution {
            n: n.into(),
            reason: "outside the brute-force range",
        });
    }
    Ok(())
}

fn pascal(n: u32) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for q in 1..row.len() {
            next[q] = row[q - 1] + row[q];
        }
        row = next;
    }
    row
}

/// `istep(n, k)` by walking the prefix sums from the left.
pub fn oracle_istep(n: u32, k: u64) -> Result<u32> {
    guard(n, 63)?;
    if k >> n != 0 {
        return Err(Error::Atom {
            n,
            value: Nat::from(k),
        });
    }
    let row = pascal(n);
    let mut total = 0u64;
    for (i, c) in row.iter().enumerate() {
        total += c;
        if k < total {
            return Ok(i as u32);
        }
    }
    unreachable!("k < 2^n")
}

/// Every set family at one resolution, as ascending lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSets {
    /// Resolution.
    pub n: u32,
    /// `IA_{n,i}`: block `i` of the prefix-sum partition.
    pub a: Vec<Vec<u64>>,
    /// `IB_{n,i}`: values of weight `i`.
    pub b: Vec<Vec<u64>>,
    /// `IA¹_{n,i}`: block `i` without fixed points.
    pub a1: Vec<Vec<u64>>,
    /// `IB¹_{n,i}`: weight class `i` without fixed points.
    pub b1: Vec<Vec<u64>>,
    /// `IC¹_{n,i,j}` for `i ≠ j`: weight-`j` members of block `i`.
    pub c1: BTreeMap<(u32, u32), Vec<u64>>,
    /// Trimmed `IC¹`, paired with the partner set of the same size.
    pub c1bar: BTreeMap<(u32, u32), Vec<u64>>,
    /// `IA²_{n,i}`: `IA¹` minus the trimmed sets.
    pub a2: Vec<Vec<u64>>,
    /// `IB²_{n,i}`: `IB¹` minus the trimmed sets.
    pub b2: Vec<Vec<u64>>,
}

/// All families at resolution `n <= 16`.
pub fn oracle_sets(n: u32) -> Result<OracleSets> {
    guard(n, MAX_SET_N)?;
    let width = n as usize + 1;
    let steps: Vec<u32> = (0..1u64 << n)
        .map(|k| oracle_istep(n, k))
        .collect::<Result<_>>()?;
    let w = |k: u64| weight(&Nat::from(k)) as u32;
    let mut a = vec![Vec::new(); width];
    let mut b = vec![Vec::new(); width];
    let mut a1 = vec![Vec::new(); width];
    let mut b1 = vec![Vec::new(); width];
    let mut c1: BTreeMap<(u32, u32), Vec<u64>> = BTreeMap::new();
    for k in 0..1u64 << n {
        let (i, j) = (steps[k as usize], w(k));
        a[i as usize].push(k);
        b[j as usize].push(k);
        if i != j {
            a1[i as usize].push(k);
            b1[j as usize].push(k);
        }
    }
    for i in 0..=n {
        for j in (0..=n).filter(|&j| j != i) {
            let list = a[i as usize].iter().copied().filter(|&k| w(k) == j).collect();
            c1.insert((i, j), list);
        }
    }
    let mut c1bar = BTreeMap::new();
    for (&(i, j), own) in &c1 {
        let partner = c1[&(j, i)].len();
        let kept: Vec<u64> = if own.len() <= partner {
            own.clone()
        } else if i > j {
            own[..partner].to_vec()
        } else {
            own[own.len() - partner..].to_vec()
        };
        c1bar.insert((i, j), kept);
    }
    let mut a2 = a1.clone();
    let mut b2 = b1.clone();
    for (&(i, j), kept) in &c1bar {
        a2[i as usize].retain(|k| !kept.contains(k));
        b2[j as usize].retain(|k| !kept.contains(k));
    }
    Ok(OracleSets {
        n,
        a,
        b,
        a1,
        b1,
        c1,
        c1bar,
        a2,
        b2,
    })
}

/// Walk values `2·weight(k) − n` for `k < 2^n`, sorted.
pub fn oracle_quantile(n: u32) -> Result<Vec<i64>> {
    guard(n, MAX_SET_N)?;
    let mut v: Vec<i64> = (0..1u64 << n)
        .map(|k| 2 * weight(&Nat::from(k)) as i64 - i64::from(n))
        .collect();
    v.sort_unstable();
    Ok(v)
}

fn table(n: u32, pairs: impl Iterator<Item = (u64, u64)>) -> Result<DensePermutation> {
    let mut map = vec![u64::MAX; 1 << n];
    for (k, v) in pairs {
        map[k as usize] = v;
    }
    DensePermutation::new(n, map)
}

fn zip<'a>(from: &'a [u64], to: &'a [u64]) -> impl Iterator<Item = (u64, u64)> + 'a {
    assert_eq!(from.len(), to.len(), "block sizes differ");
    from.iter().copied().zip(to.iter().copied())
}

/// `F` by pairing each block with its weight class in order.
pub fn oracle_f(n: u32) -> Result<DensePermutation> {
    guard(n, MAX_PERM_N)?;
    let s = oracle_sets(n)?;
    table(n, (0..=n as usize).flat_map(|i| zip(&s.a[i], &s.b[i])))
}

fn fixed(s: &OracleSets) -> impl Iterator<Item = (u64, u64)> + '_ {
    (0..=s.n as usize).flat_map(move |i| {
        s.a[i]
            .iter()
            .copied()
            .filter(move |&k| weight(&Nat::from(k)) == i as u64)
            .map(|k| (k, k))
    })
}

/// `G`: fixed points, then `IA¹` onto `IB¹` in order.
pub fn oracle_g(n: u32) -> Result<DensePermutation> {
    guard(n, MAX_PERM_N)?;
    let s = oracle_sets(n)?;
    let moved = (0..=n as usize).flat_map(|i| zip(&s.a1[i], &s.b1[i]));
    table(n, fixed(&s).chain(moved))
}

/// `H`: fixed points, trimmed pairs swapped rank by rank, then `IA²` onto
/// `IB²` in order.
pub fn oracle_h(n: u32) -> Result<DensePermutation> {
    guard(n, MAX_PERM_N)?;
    let s = oracle_sets(n)?;
    let swaps = s
        .c1bar
        .iter()
        .flat_map(|(&(i, j), own)| zip(own, &s.c1bar[&(j, i)]));
    let rest = (0..=n as usize).flat_map(|i| zip(&s.a2[i], &s.b2[i]));
    table(n, fixed(&s).chain(swaps).chain(rest))
}

/// The `t`-th positive integer of weight `j`, by scanning.
pub fn oracle_ew(j: u32, t: u64) -> Result<Nat> {
    let mut seen = 0u64;
    for m in 1..EW_GUARD {
        if m.count_ones() == j {
            seen += 1;
            if seen == t {
                return Ok(Nat::from(m));
            }
        }
    }
    Err(Error::Index {
        name: "t",
        value: t,
        allowed: format!("a result below 2^24 for weight {j}"),
    })
}
