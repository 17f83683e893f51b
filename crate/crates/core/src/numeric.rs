//! Exact binomial arithmetic, binomial prefix sums (SBC), Hamming weight and
//! the integer versions of the walk and its quantile.
//!
//! Bit conventions are big-endian throughout: the level-`n` atom `k` has
//! expansion `ε_1 … ε_n` with `k = Σ ε_i · 2^(n−i)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Nat = BigUint;

/// `2^n` as a [`Nat`].
pub fn pow2(n: u64) -> Nat {
    Nat::one() << n
}

/// Binomial coefficient `C(n, i)` by the multiplicative formula.
pub fn binomial(n: u32, i: u32) -> Result<Nat> {
    if i > n {
        return Err(Error::Index {
            name: "i",
            value: i.into(),
            allowed: alloc::format!("0..={n}"),
        });
    }
    Ok(binomial_u64(n.into(), i.into()))
}

/// `C(p, q)` for any `p, q`, zero when `q > p`.
pub(crate) fn binomial_u64(p: u64, q: u64) -> Nat {
    if q > p {
        return Nat::zero();
    }
    let q = q.min(p - q);
    let mut value = Nat::one();
    let mut batch = Batch::new();
    for t in 1..=q {
        if !batch.push(p - q + t, t) {
            batch.apply(&mut value);
            batch.push(p - q + t, t);
        }
    }
    batch.apply(&mut value);
    value
}

/// Row `C(n, 0..=n)` built by Pascal additions, `O(n^2)` big-integer adds.
pub fn pascal_row(n: u32) -> Vec<Nat> {
    let mut row = alloc::vec![Nat::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(Nat::one());
        for pair in row.windows(2) {
            next.push(&pair[0] + &pair[1]);
        }
        next.push(Nat::one());
        row = next;
    }
    row
}

/// Row `C(n, 0..=n)` by the multiplicative recurrence `C(n, i+1) = C(n, i)(n − i)/(i + 1)`.
pub fn binomial_row(n: u32) -> Vec<Nat> {
    let n = u64::from(n);
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut value = Nat::one();
    row.push(value.clone());
    for i in 0..n {
        value *= n - i;
        value /= i + 1;
        row.push(value.clone());
    }
    row
}

/// Hamming weight of `k`.
pub fn weight(k: &Nat) -> u64 {
    k.count_ones()
}

/// `SBC(n, i) = Σ_{j<i} C(n, j)`, with `SBC(n, 0) = 0` and `SBC(n, n+1) = 2^n`.
pub fn sbc(n: u32, i: u32) -> Result<Nat> {
    Ok(Level::new(n)?.sbc(i)?.clone())
}

/// Position of `k` in the SBC row at resolution `n`.
pub fn istep(n: u32, k: &Nat) -> Result<u32> {
    Level::new(n)?.istep(k)
}

/// `IS_n(k) = −n + 2·weight(k)`.
pub fn walk_value(n: u32, k: &Nat) -> Result<i64> {
    Level::new(n)?.walk_value(k)
}

/// `IS*_n(k) = −n + 2·istep(n, k)`.
pub fn quantile_value(n: u32, k: &Nat) -> Result<i64> {
    Level::new(n)?.quantile_value(k)
}

/// Big-endian `n`-bit expansion of `k`.
pub fn bits(n: u32, k: &Nat) -> Result<BitVector> {
    check_atom(n, k)?;
    Ok(BitVector::from_nat(n, k))
}

pub(crate) fn check_resolution(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Resolution {
            n: 0,
            reason: "resolution must be positive",
        });
    }
    Ok(())
}

pub(crate) fn check_atom(n: u32, k: &Nat) -> Result<()> {
    check_resolution(n)?;
    if k.bits() > u64::from(n) {
        return Err(Error::Atom {
            n,
            value: k.clone(),
        });
    }
    Ok(())
}

/// Ordered bits `ε_1 … ε_n`, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<u8>,
}

impl BitVector {
    /// Builds a vector from explicit bits; every entry must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Index {
                name: "bit",
                value: bits[pos].into(),
                allowed: "0..=1".into(),
            });
        }
        Ok(BitVector { bits })
    }

    fn from_nat(n: u32, k: &Nat) -> Self {
        let bits = (0..u64::from(n))
            .rev()
            .map(|pos| u8::from(k.bit(pos)))
            .collect();
        BitVector { bits }
    }

    /// The bits `ε_1 … ε_n`.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Length `n`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// True for the empty vector.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `k = Σ ε_i · 2^(n−i)`.
    pub fn value(&self) -> Nat {
        self.bits.iter().fold(Nat::zero(), |acc, &b| (acc << 1u32) + b)
    }

    /// Sign form `s_i = (−1)^(1+ε_i)`.
    pub fn signs(&self) -> Vec<i8> {
        self.bits.iter().map(|&b| if b == 1 { 1 } else { -1 }).collect()
    }

    /// Number of set bits.
    pub fn weight(&self) -> u64 {
        self.bits.iter().map(|&b| u64::from(b)).sum()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The level-`n` dyadic interval `D_{n,k} = [k/2^n, (k+1)/2^n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicIndex {
    n: u32,
    k: Nat,
}

impl DyadicIndex {
    /// Validates `0 <= k < 2^n`.
    pub fn new(n: u32, k: Nat) -> Result<Self> {
        check_atom(n, &k)?;
        Ok(DyadicIndex { n, k })
    }

    /// Resolution.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Interval index.
    pub fn k(&self) -> &Nat {
        &self.k
    }

    /// Index of the parent interval one level up, `None` at level 1.
    pub fn parent(&self) -> Option<DyadicIndex> {
        (self.n > 1).then(|| DyadicIndex {
            n: self.n - 1,
            k: &self.k >> 1u32,
        })
    }

    /// The two children at level `n + 1`.
    pub fn children(&self) -> [DyadicIndex; 2] {
        let left = &self.k << 1u32;
        let right = &left + 1u32;
        [
            DyadicIndex {
                n: self.n + 1,
                k: left,
            },
            DyadicIndex {
                n: self.n + 1,
                k: right,
            },
        ]
    }

    /// Exact decimal expansion of the left endpoint `k / 2^n`.
    pub fn left_endpoint_decimal(&self) -> String {
        if self.k.is_zero() {
            return "0".into();
        }
        // k/2^n = k·5^n / 10^n
        let scaled = &self.k * num_traits::pow(Nat::from(5u32), self.n as usize);
        let digits = scaled.to_str_radix(10);
        let width = self.n as usize;
        let padded = if digits.len() < width {
            let mut s = String::with_capacity(width);
            s.extend(core::iter::repeat_n('0', width - digits.len()));
            s.push_str(&digits);
            s
        } else {
            digits
        };
        let frac = padded.trim_end_matches('0');
        alloc::format!("0.{frac}")
    }
}

/// Precomputed binomial and SBC rows for one resolution `n`.
#[derive(Debug, Clone)]
pub struct Level {
    n: u32,
    size: Nat,
    binomials: Vec<Nat>,
    sbc: Vec<Nat>,
}

impl Level {
    /// Builds the rows for resolution `n > 0`.
    pub fn new(n: u32) -> Result<Self> {
        check_resolution(n)?;
        let binomials = binomial_row(n);
        let mut sbc = Vec::with_capacity(binomials.len() + 1);
        let mut acc = Nat::zero();
        sbc.push(acc.clone());
        for c in &binomials {
            acc += c;
            sbc.push(acc.clone());
        }
        Ok(Level {
            n,
            size: pow2(n.into()),
            binomials,
            sbc,
        })
    }

    /// Resolution.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `2^n`.
    pub fn size(&self) -> &Nat {
        &self.size
    }

    /// `C(n, i)` for `i <= n`.
    pub fn binomial(&self, i: u32) -> Result<&Nat> {
        self.binomials.get(i as usize).ok_or_else(|| Error::Index {
            name: "i",
            value: i.into(),
            allowed: alloc::format!("0..={}", self.n),
        })
    }

    /// `SBC(n, i)` for `i <= n + 1`.
    pub fn sbc(&self, i: u32) -> Result<&Nat> {
        self.sbc.get(i as usize).ok_or_else(|| Error::Index {
            name: "i",
            value: i.into(),
            allowed: alloc::format!("0..={}", self.n + 1),
        })
    }

    pub(crate) fn sbc_row(&self) -> &[Nat] {
        &self.sbc
    }

    /// Rejects `k >= 2^n`.
    pub fn check(&self, k: &Nat) -> Result<()> {
        check_atom(self.n, k)
    }

    /// The unique `i` with `SBC(n, i) <= k < SBC(n, i+1)`, by binary search.
    pub fn istep(&self, k: &Nat) -> Result<u32> {
        self.check(k)?;
        Ok(self.istep_unchecked(k))
    }

    pub(crate) fn istep_unchecked(&self, k: &Nat) -> u32 {
        let at_most = self.sbc.partition_point(|v| v <= k);
        (at_most - 1) as u32
    }

    /// `IS_n(k)`.
    pub fn walk_value(&self, k: &Nat) -> Result<i64> {
        self.check(k)?;
        Ok(2 * weight(k) as i64 - i64::from(self.n))
    }

    /// `IS*_n(k)`.
    pub fn quantile_value(&self, k: &Nat) -> Result<i64> {
        Ok(2 * i64::from(self.istep(k)?) - i64::from(self.n))
    }
}

/// Accumulates `∏ num / ∏ den` in machine words before touching the big
/// integer; the caller guarantees every partial quotient is integral.
struct Batch {
    num: u64,
    den: u64,
}

impl Batch {
    fn new() -> Self {
        Batch { num: 1, den: 1 }
    }

    fn push(&mut self, num: u64, den: u64) -> bool {
        match (self.num.checked_mul(num), self.den.checked_mul(den)) {
            (Some(a), Some(b)) => {
                self.num = a;
                self.den = b;
                true
            }
            _ => false,
        }
    }

    fn apply(&mut self, value: &mut Nat) {
        if self.num != 1 {
            *value *= self.num;
        }
        if self.den != 1 {
            *value /= self.den;
        }
        self.num = 1;
        self.den = 1;
    }
}

/// Positions of the set bits of `x`, highest first (position 0 = value 1).
pub(crate) fn set_bits_desc(x: &Nat) -> Vec<u64> {
    let mut out = Vec::with_capacity(x.count_ones() as usize);
    for (word_idx, word) in x.iter_u64_digits().enumerate().rev() {
        let mut w = word;
        while w != 0 {
            let top = 63 - u64::from(w.leading_zeros());
            out.push(word_idx as u64 * 64 + top);
            w &= !(1u64 << top);
        }
    }
    out
}

/// Number of `m` in `[0, x)` with `weight(m) = j`.
///
/// Walks the set bits `p_1 > p_2 > …` of `x`: the `s`-th term counts the
/// `m` that copy the first `s − 1` ones of `x`, clear bit `p_s` and place the
/// remaining `j − s + 1` ones below it, i.e. `C(p_s, j − s + 1)`. Consecutive
/// terms are obtained from each other by exact ratio steps.
pub fn count_weight_below(j: u64, x: &Nat) -> Nat {
    let mut total = Nat::zero();
    let mut current: Option<(u64, u64, Nat)> = None;
    for (s, &p) in set_bits_desc(x).iter().enumerate() {
        let s = s as u64;
        if s > j {
            break;
        }
        let q = j - s;
        // q − p never decreases along the walk, so a zero term ends it.
        if q > p {
            break;
        }
        let value = match current.take() {
            None => binomial_u64(p, q),
            Some((pp, pq, mut value)) => {
                step_down(&mut value, pp, pq, p, q);
                value
            }
        };
        total += &value;
        current = Some((p, q, value));
    }
    total
}

/// Turns `C(pp, q + 1)` into `C(p, q)` for `p < pp`, `q <= p`.
fn step_down(value: &mut Nat, pp: u64, pq: u64, p: u64, q: u64) {
    debug_assert_eq!(pq, q + 1);
    let mut batch = Batch::new();
    // C(pp, pq) -> C(pp, pq − 1)
    if !batch.push(pq, pp - pq + 1) {
        batch.apply(value);
        batch.push(pq, pp - pq + 1);
    }
    // C(t, q) -> C(t − 1, q)
    for t in (p + 1..=pp).rev() {
        if !batch.push(t - q, t) {
            batch.apply(value);
            batch.push(t - q, t);
        }
    }
    batch.apply(value);
}

/// Counts of `m` in `[0, x)` for every weight `0..=max_weight`.
///
/// Streams Pascal rows downward (`C(t−1, q) = C(t, q) − C(t−1, q−1)`) so only
/// one row is alive at a time.
pub fn weight_profile_below(x: &Nat, max_weight: u64) -> Vec<Nat> {
    let mut counts = alloc::vec![Nat::zero(); max_weight as usize + 1];
    let positions = set_bits_desc(x);
    let Some(&top) = positions.first() else {
        return counts;
    };
    let mut row = binomial_row_u64(top);
    let mut row_p = top;
    for (s, &p) in positions.iter().enumerate() {
        let s = s as u64;
        if s > max_weight {
            break;
        }
        while row_p > p {
            row_down(&mut row);
            row_p -= 1;
        }
        for (q, c) in row.iter().enumerate() {
            let w = s + q as u64;
            if w > max_weight {
                break;
            }
            counts[w as usize] += c;
        }
    }
    counts
}

fn binomial_row_u64(p: u64) -> Vec<Nat> {
    let mut row = Vec::with_capacity(p as usize + 1);
    let mut value = Nat::one();
    row.push(value.clone());
    for i in 0..p {
        value *= p - i;
        value /= i + 1;
        row.push(value.clone());
    }
    row
}

fn row_down(row: &mut Vec<Nat>) {
    // row holds C(t, 0..=t); afterwards C(t−1, 0..=t−1)
    row.pop();
    for q in 1..row.len() {
        let (lo, hi) = row.split_at_mut(q);
        hi[0] -= &lo[q - 1];
    }
}

pub(crate) fn to_u64(x: &Nat) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), nat(6));
        assert_eq!(binomial(8, 4).unwrap(), nat(70));
        for n in 0..10 {
            assert_eq!(binomial(n, 0).unwrap(), nat(1));
        }
        assert!(binomial(3, 4).is_err());
    }

    #[test]
    fn pascal_and_multiplicative_rows_agree() {
        for n in 0..=64 {
            assert_eq!(pascal_row(n), binomial_row(n), "n = {n}");
        }
        assert_eq!(pascal_row(300), binomial_row(300));
    }

    #[test]
    fn sbc_examples() {
        assert_eq!(sbc(3, 4).unwrap(), nat(8));
        assert_eq!(sbc(4, 2).unwrap(), nat(5));
        for n in 1..20 {
            assert_eq!(sbc(n, 0).unwrap(), nat(0));
            assert_eq!(sbc(n, n + 1).unwrap(), pow2(n.into()));
        }
        assert!(sbc(3, 5).is_err());
        assert!(sbc(0, 0).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&nat(0)), 0);
        assert_eq!(weight(&nat(96)), 2);
        for i in 0..100u64 {
            assert_eq!(weight(&(pow2(i) - 1u32)), i);
        }
    }

    #[test]
    fn istep_examples() {
        assert_eq!(istep(8, &nat(15)).unwrap(), 2);
        for n in 1..=80u32 {
            assert_eq!(istep(n, &nat(0)).unwrap(), 0);
            assert_eq!(istep(n, &pow2(u64::from(n) - 1)).unwrap(), n.div_ceil(2));
            assert_eq!(istep(n, &(pow2(n.into()) - 1u32)).unwrap(), n);
        }
        assert!(istep(3, &nat(8)).is_err());
    }

    #[test]
    fn walk_and_quantile_examples() {
        assert_eq!(walk_value(3, &nat(5)).unwrap(), 1);
        assert_eq!(quantile_value(8, &nat(15)).unwrap(), -4);
        for n in 1..20u32 {
            let top = pow2(n.into()) - 1u32;
            assert_eq!(walk_value(n, &nat(0)).unwrap(), -i64::from(n));
            assert_eq!(walk_value(n, &top).unwrap(), i64::from(n));
            assert_eq!(quantile_value(n, &nat(0)).unwrap(), -i64::from(n));
            assert_eq!(quantile_value(n, &top).unwrap(), i64::from(n));
        }
    }

    #[test]
    fn bits_examples() {
        assert_eq!(bits(3, &nat(5)).unwrap().bits(), &[1, 0, 1]);
        assert_eq!(bits(4, &nat(0)).unwrap().bits(), &[0, 0, 0, 0]);
        assert_eq!(
            bits(8, &nat(96)).unwrap().bits(),
            &[0, 1, 1, 0, 0, 0, 0, 0]
        );
        assert_eq!(bits(8, &nat(96)).unwrap().value(), nat(96));
        assert!(bits(3, &nat(8)).is_err());
        assert!(BitVector::new(vec![0, 2]).is_err());
    }

    #[test]
    fn dyadic_endpoints() {
        let d = DyadicIndex::new(3, nat(5)).unwrap();
        assert_eq!(d.left_endpoint_decimal(), "0.625");
        assert_eq!(DyadicIndex::new(1, nat(0)).unwrap().left_endpoint_decimal(), "0");
        assert_eq!(DyadicIndex::new(6, nat(1)).unwrap().left_endpoint_decimal(), "0.015625");
        assert!(DyadicIndex::new(2, nat(4)).is_err());
        let [l, r] = d.children();
        assert_eq!((l.k().clone(), r.k().clone()), (nat(10), nat(11)));
        assert_eq!(l.parent().unwrap(), d);
    }

    #[test]
    fn weight_counts_match_scan() {
        for x in 0u64..600 {
            let mut scan = [0u64; 12];
            for m in 0..x {
                scan[m.count_ones() as usize] += 1;
            }
            let profile = weight_profile_below(&nat(x), 11);
            for j in 0..12u64 {
                assert_eq!(count_weight_below(j, &nat(x)), nat(scan[j as usize]), "x={x} j={j}");
                assert_eq!(profile[j as usize], nat(scan[j as usize]));
            }
        }
    }

    #[test]
    fn weight_counts_at_powers_of_two() {
        for n in [1u32, 7, 64, 65, 200] {
            let row = binomial_row(n);
            let profile = weight_profile_below(&pow2(n.into()), n.into());
            for j in 0..=n {
                assert_eq!(count_weight_below(j.into(), &pow2(n.into())), row[j as usize]);
                assert_eq!(profile[j as usize], row[j as usize]);
            }
        }
    }
}
