//! Counted set families over `{0, …, 2^n − 1}` and their enumerators.
//!
//! Each [`TameRelation`] names one set `X ⊆ {0, …, 2^n − 1}`. Its
//! cardinality function `card(x) = |X ∩ {1, …, x}|` is evaluated from
//! binomial-coefficient prefix sums in time polynomial in `n`, and the
//! `s`-th element is recovered by binary search on `card`
//! ([`Session::enumerate`]).
//!
//! | kind    | set                                                         |
//! |---------|-------------------------------------------------------------|
//! | `A`     | `IA_{n,i}`: the block `[SBC(n,i), SBC(n,i+1))`              |
//! | `B`     | `IB_{n,i}`: values of weight `i`                            |
//! | `A1`    | `IA_{n,i}` minus its weight-`i` members                     |
//! | `B1`    | `IB_{n,i}` minus the members of block `i`                   |
//! | `C1`    | `IA¹_{n,i} ∩ IB¹_{n,j}`                                     |
//! | `C1Bar` | `C1` trimmed to `min(|C1(i,j)|, |C1(j,i)|)` elements        |
//! | `A2`    | `A1` minus every `C1Bar(i, ·)`                              |
//! | `B2`    | `B1` minus every `C1Bar(·, i)`                              |

use alloc::format;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{binomial_u64, count_weight_below, set_bits_desc, weight, weight_profile_below, Nat};
use crate::session::{LevelCache, Session};

/// The family a [`TameRelation`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Block of the SBC row.
    A,
    /// Fixed Hamming weight.
    B,
    /// Block minus fixed points.
    A1,
    /// Weight class minus fixed points.
    B1,
    /// Block `i` intersected with weight `j`, `i ≠ j`.
    C1,
    /// Trimmed `C1`, the members paired into two-cycles.
    C1Bar,
    /// Block remainder after fixed points and two-cycles.
    A2,
    /// Weight remainder after fixed points and two-cycles.
    B2,
}

impl Kind {
    /// Every kind, in declaration order.
    pub const ALL: [Kind; 8] = [
        Kind::A,
        Kind::B,
        Kind::A1,
        Kind::B1,
        Kind::C1,
        Kind::C1Bar,
        Kind::A2,
        Kind::B2,
    ];

    /// Whether the kind carries a second index `j`.
    pub fn is_pair(self) -> bool {
        matches!(self, Kind::C1 | Kind::C1Bar)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::A1 => "A1",
            Kind::B1 => "B1",
            Kind::C1 => "C1",
            Kind::C1Bar => "C1bar",
            Kind::A2 => "A2",
            Kind::B2 => "B2",
        };
        f.write_str(s)
    }
}

/// Descriptor of one counted set `X_{n,u}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TameRelation {
    kind: Kind,
    n: u32,
    i: u32,
    j: Option<u32>,
}

impl TameRelation {
    /// Validates `n > 0`, `i <= n`, and for pair kinds `j <= n`, `j ≠ i`.
    pub fn new(kind: Kind, n: u32, i: u32, j: Option<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Relation("n must be positive".into()));
        }
        if i > n {
            return Err(Error::Relation(format!("i = {i} exceeds n = {n}")));
        }
        match (kind.is_pair(), j) {
            (true, Some(j)) if j > n => {
                return Err(Error::Relation(format!("j = {j} exceeds n = {n}")))
            }
            (true, Some(j)) if j == i => {
                return Err(Error::Relation(format!("{kind} needs i ≠ j, got {i}")))
            }
            (true, None) => return Err(Error::Relation(format!("{kind} needs a second index"))),
            (false, Some(_)) => {
                return Err(Error::Relation(format!("{kind} takes a single index")))
            }
            _ => {}
        }
        Ok(TameRelation { kind, n, i, j })
    }

    /// Single-index relation.
    pub fn single(kind: Kind, n: u32, i: u32) -> Result<Self> {
        Self::new(kind, n, i, None)
    }

    /// Two-index relation.
    pub fn pair(kind: Kind, n: u32, i: u32, j: u32) -> Result<Self> {
        Self::new(kind, n, i, Some(j))
    }

    /// Family.
    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Resolution.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// First index.
    pub fn i(&self) -> u32 {
        self.i
    }

    /// Second index, present for pair kinds.
    pub fn j(&self) -> Option<u32> {
        self.j
    }

    /// Only `IA_{n,0} = IB_{n,0} = {0}` contain zero.
    pub fn contains_zero(&self) -> bool {
        matches!(self.kind, Kind::A | Kind::B) && self.i == 0
    }

    /// `|X ∩ [0, x)|` for `0 <= x <= 2^n`.
    fn below(&self, lc: &LevelCache, x: &Nat) -> Nat {
        let i = self.i;
        let wi = u64::from(i);
        match self.kind {
            Kind::A => lc.clamp(i, x) - lc.lo(i),
            Kind::B => count_weight_below(wi, x),
            Kind::A1 => (lc.clamp(i, x) - lc.lo(i)) - fixed_below(lc, i, x),
            Kind::B1 => count_weight_below(wi, x) - fixed_below(lc, i, x),
            Kind::C1 => c1_below(lc, i, self.j.unwrap_or_default(), x),
            Kind::C1Bar => {
                let j = self.j.unwrap_or_default();
                c1bar_trim(lc, i, j, c1_below(lc, i, j, x))
            }
            Kind::A2 => a2_below(lc, i, x),
            Kind::B2 => b2_below(lc, i, x),
        }
    }
}

impl fmt::Display for TameRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.j {
            Some(j) => write!(f, "{}({},{},{})", self.kind, self.n, self.i, j),
            None => write!(f, "{}({},{})", self.kind, self.n, self.i),
        }
    }
}

/// Weight-`i` members of block `i` below `x`.
fn fixed_below(lc: &LevelCache, i: u32, x: &Nat) -> Nat {
    c1_below(lc, i, i, x)
}

/// Weight-`j` members of block `i` below `x`.
fn c1_below(lc: &LevelCache, i: u32, j: u32, x: &Nat) -> Nat {
    let wj = u64::from(j);
    let clamped = lc.clamp(i, x);
    if clamped == lc.lo(i) {
        return Nat::zero();
    }
    if clamped == lc.hi(i) {
        return lc.block_count(i, wj);
    }
    count_weight_below(wj, clamped) - lc.boundary(wj, i)
}

/// Applies the trimming rule to a `C1(i, j)` count `g`: keep everything when
/// `C1(i, j)` is not the larger side, otherwise keep the first
/// `|C1(j, i)|` elements if `i > j` and the last ones if `i < j`.
fn c1bar_trim(lc: &LevelCache, i: u32, j: u32, g: Nat) -> Nat {
    let own = lc.block_count(i, j.into());
    let partner = lc.block_count(j, i.into());
    trim_count(i, j, &own, &partner, g)
}

fn trim_count(i: u32, j: u32, own: &Nat, partner: &Nat, g: Nat) -> Nat {
    if own <= partner {
        g
    } else if i > j {
        g.min(partner.clone())
    } else {
        let drop = own - partner;
        if g > drop {
            g - drop
        } else {
            Nat::zero()
        }
    }
}

fn a2_below(lc: &LevelCache, i: u32, x: &Nat) -> Nat {
    let clamped = lc.clamp(i, x);
    if clamped == lc.lo(i) {
        return Nat::zero();
    }
    // weight profile of [SBC(n,i), clamped)
    let counts = if clamped == lc.hi(i) {
        lc.row(i)
    } else {
        let base = lc.profile(i);
        let upto = weight_profile_below(clamped, lc.n().into());
        alloc::rc::Rc::new(upto.iter().zip(base.iter()).map(|(u, b)| u - b).collect())
    };
    let mut total = clamped - lc.lo(i);
    for (j, g) in counts.iter().enumerate() {
        let j = j as u32;
        total -= if j == i {
            g.clone()
        } else {
            c1bar_trim(lc, i, j, g.clone())
        };
    }
    total
}

fn b2_below(lc: &LevelCache, i: u32, x: &Nat) -> Nat {
    let wi = u64::from(i);
    let column = lc.column(wi);
    let row = lc.row(i);
    let below_x = count_weight_below(wi, x);
    let mut total = below_x.clone() - fixed_below(lc, i, x);
    for m in 0..=lc.n() {
        if m == i {
            continue;
        }
        let g = if x >= lc.hi(m) {
            column[m as usize].clone()
        } else if x <= lc.lo(m) {
            continue;
        } else {
            &below_x - lc.boundary(wi, m)
        };
        total -= trim_count(m, i, &column[m as usize], &row[m as usize], g);
    }
    total
}

impl Session {
    fn card_inner(&self, lc: &LevelCache, rel: &TameRelation, x: &Nat) -> Nat {
        self.count_probe();
        let below = rel.below(lc, &(x + 1u32));
        if rel.contains_zero() {
            below - 1u32
        } else {
            below
        }
    }

    fn checked_cache(&self, rel: &TameRelation) -> Result<alloc::rc::Rc<LevelCache>> {
        TameRelation::new(rel.kind, rel.n, rel.i, rel.j)?;
        self.cache(rel.n)
    }

    /// `|X ∩ {1, …, x}|` for `1 <= x < 2^n`.
    pub fn card(&self, rel: &TameRelation, x: &Nat) -> Result<Nat> {
        let lc = self.checked_cache(rel)?;
        if x.is_zero() {
            return Err(Error::Index {
                name: "x",
                value: 0,
                allowed: format!("1..2^{}", rel.n),
            });
        }
        lc.level.check(x)?;
        Ok(self.card_inner(&lc, rel, x))
    }

    /// Membership of `m`, decided by the difference `card(m) − card(m − 1)`.
    pub fn member(&self, rel: &TameRelation, m: &Nat) -> Result<bool> {
        let lc = self.checked_cache(rel)?;
        lc.level.check(m)?;
        if m.is_zero() {
            return Ok(rel.contains_zero());
        }
        let at = self.card_inner(&lc, rel, m);
        let before = if m.is_one() {
            Nat::zero()
        } else {
            self.card_inner(&lc, rel, &(m - 1u32))
        };
        Ok(at > before)
    }

    /// `|X|`.
    pub fn size(&self, rel: &TameRelation) -> Result<Nat> {
        let lc = self.checked_cache(rel)?;
        Ok(self.size_inner(&lc, rel))
    }

    fn size_inner(&self, lc: &LevelCache, rel: &TameRelation) -> Nat {
        let last = lc.level.size() - 1u32;
        let counted = self.card_inner(lc, rel, &last);
        if rel.contains_zero() {
            counted + 1u32
        } else {
            counted
        }
    }

    /// The `s`-th smallest element of `X`, `1 <= s <= |X|`.
    ///
    /// Binary search on the cardinality function: the window `(a, b]` always
    /// holds the target, and `s` is its rank inside the window. At most
    /// `n + 1` cardinality evaluations are made, one of them for `|X|`.
    pub fn enumerate(&self, rel: &TameRelation, s: &Nat) -> Result<Nat> {
        let lc = self.checked_cache(rel)?;
        let size = self.size_inner(&lc, rel);
        if s.is_zero() || *s > size {
            return Err(Error::Rank {
                rank: s.clone(),
                size,
            });
        }
        let mut rank = s.clone();
        if rel.contains_zero() {
            if rank.is_one() {
                return Ok(Nat::zero());
            }
            rank -= 1u32;
        }
        let mut lo = Nat::zero();
        let mut hi = lc.level.size() - 1u32;
        let mut card_lo = Nat::zero();
        while &hi - &lo > Nat::one() {
            let mid: Nat = (&lo + &hi) >> 1u32;
            let card_mid = self.card_inner(&lc, rel, &mid);
            let gained = &card_mid - &card_lo;
            if gained >= rank {
                hi = mid;
            } else {
                rank -= gained;
                lo = mid;
                card_lo = card_mid;
            }
        }
        Ok(hi)
    }

    /// `β(n, j, b)`, the number of weight-`j` values in `{1, …, b}`, by the
    /// combinadic sum over the highest set bits of `b`.
    ///
    /// With `i_1 > i_2 > …` the 1-indexed positions of the set bits of `b`,
    /// the `s`-th term `C(i_s − 1, j + 1 − s)` counts the smaller values that
    /// agree with `b` above `i_s` and clear it. The sum runs over
    /// `s <= min(j + 1, weight(b))`; the final `+1` accounts for `b` itself.
    pub fn beta_rank(&self, n: u32, j: u32, b: &Nat) -> Result<Nat> {
        let level = self.cache(n)?;
        if j > n {
            return Err(Error::Index {
                name: "j",
                value: j.into(),
                allowed: format!("0..={n}"),
            });
        }
        if b.is_zero() {
            return Err(Error::Index {
                name: "b",
                value: 0,
                allowed: format!("1..2^{n}"),
            });
        }
        level.level.check(b)?;
        let j = u64::from(j);
        let positions = set_bits_desc(b);
        let terms = (j + 1).min(weight(b)) as usize;
        let mut total = Nat::zero();
        for (s, &p) in positions.iter().take(terms).enumerate() {
            let s = s as u64 + 1;
            // i_s − 1 = p for 0-indexed p
            total += binomial_u64(p, j + 1 - s);
        }
        if weight(b) == j {
            total += 1u32;
        }
        if j == 0 {
            // the sum also counts 0, which lies outside {1, …, b}
            total -= 1u32;
        }
        Ok(total)
    }

    /// `EW(j, t)`: `0` for `j = 0`, otherwise the `t`-th positive integer of
    /// weight `j`.
    ///
    /// Enumerates `IB_{n,j}` at the least `n >= j` with `C(n, j) >= t`; any
    /// larger `n` gives the same value.
    pub fn ew(&self, j: u32, t: &Nat) -> Result<Nat> {
        if j == 0 {
            return Ok(Nat::zero());
        }
        if t.is_zero() {
            return Err(Error::Index {
                name: "t",
                value: 0,
                allowed: "t >= 1".into(),
            });
        }
        let jj = u64::from(j);
        let mut n = jj;
        let mut c = Nat::one();
        while c < *t {
            n += 1;
            c *= n;
            c /= n - jj;
        }
        let n = u32::try_from(n).map_err(|_| Error::Resolution {
            n,
            reason: "EW argument needs a resolution beyond u32",
        })?;
        let rel = TameRelation::single(Kind::B, n, j)?;
        self.enumerate(&rel, t)
    }
}

/// `card` with a fresh session.
pub fn card(rel: &TameRelation, x: &Nat) -> Result<Nat> {
    Session::new().card(rel, x)
}

/// `member` with a fresh session.
pub fn member(rel: &TameRelation, m: &Nat) -> Result<bool> {
    Session::new().member(rel, m)
}

/// `size` with a fresh session.
pub fn size(rel: &TameRelation) -> Result<Nat> {
    Session::new().size(rel)
}

/// `enumerate` with a fresh session.
pub fn enumerate(rel: &TameRelation, s: &Nat) -> Result<Nat> {
    Session::new().enumerate(rel, s)
}

/// `beta_rank` with a fresh session.
pub fn beta_rank(n: u32, j: u32, b: &Nat) -> Result<Nat> {
    Session::new().beta_rank(n, j, b)
}

/// `ew` with a fresh session.
pub fn ew(j: u32, t: &Nat) -> Result<Nat> {
    Session::new().ew(j, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn members(s: &Session, rel: &TameRelation) -> Vec<u64> {
        let size: u64 = s.size(rel).unwrap().try_into().unwrap();
        (1..=size)
            .map(|t| s.enumerate(rel, &nat(t)).unwrap().try_into().unwrap())
            .collect()
    }

    #[test]
    fn worked_example_sets() {
        let s = Session::new();
        let c24 = TameRelation::pair(Kind::C1, 8, 2, 4).unwrap();
        let c42 = TameRelation::pair(Kind::C1, 8, 4, 2).unwrap();
        assert_eq!(members(&s, &c24), [15, 23, 27, 29, 30]);
        assert_eq!(members(&s, &c42), [96, 129, 130, 132, 136, 144, 160]);
        assert_eq!(s.card(&c42, &nat(255)).unwrap(), nat(7));
        assert_eq!(s.enumerate(&c42, &nat(3)).unwrap(), nat(130));
        let bar42 = TameRelation::pair(Kind::C1Bar, 8, 4, 2).unwrap();
        assert_eq!(members(&s, &bar42), [96, 129, 130, 132, 136]);
        assert!(!s.member(&bar42, &nat(144)).unwrap());
        let bar24 = TameRelation::pair(Kind::C1Bar, 8, 2, 4).unwrap();
        assert_eq!(s.size(&bar24).unwrap(), nat(5));
    }

    #[test]
    fn weight_relation_examples() {
        let s = Session::new();
        let b84 = TameRelation::single(Kind::B, 8, 4).unwrap();
        assert_eq!(s.card(&b84, &nat(30)).unwrap(), nat(5));
        assert!(s.member(&b84, &nat(15)).unwrap());
        assert_eq!(s.enumerate(&b84, &nat(1)).unwrap(), nat(15));
        for n in 1..12 {
            let top = TameRelation::single(Kind::B, n, n).unwrap();
            assert_eq!(s.size(&top).unwrap(), nat(1));
        }
    }

    #[test]
    fn block_relation_examples() {
        let s = Session::new();
        for n in 1..10u32 {
            for i in 0..=n {
                let a = TameRelation::single(Kind::A, n, i).unwrap();
                let c = s.level(n).unwrap().binomial(i).unwrap().clone();
                assert_eq!(s.size(&a).unwrap(), c);
                let lo = s.sbc(n, i).unwrap();
                let hi = s.sbc(n, i + 1).unwrap();
                if hi > Nat::one() {
                    assert_eq!(s.card(&a, &(&hi - 1u32)).unwrap(), c);
                }
                let count: u64 = (&c).try_into().unwrap();
                for t in 1..=count {
                    assert_eq!(s.enumerate(&a, &nat(t)).unwrap(), &lo + t - 1u32);
                }
            }
            assert!(s.member(&TameRelation::single(Kind::A, n, 0).unwrap(), &nat(0)).unwrap());
        }
    }

    #[test]
    fn beta_rank_examples() {
        let s = Session::new();
        assert_eq!(s.beta_rank(8, 4, &nat(30)).unwrap(), nat(5));
        for b in 1u64..256 {
            let top = 64 - u64::from(b.leading_zeros());
            assert_eq!(s.beta_rank(8, 1, &nat(b)).unwrap(), nat(top));
            for j in (top as u32 + 1)..=8 {
                assert_eq!(s.beta_rank(8, j, &nat(b)).unwrap(), nat(0));
            }
        }
        // weight(b) > j needs the (j+1)-th term: 3, 5, 6 <= 7
        assert_eq!(s.beta_rank(3, 2, &nat(7)).unwrap(), nat(3));
    }

    #[test]
    fn ew_examples() {
        let s = Session::new();
        assert_eq!(s.ew(0, &nat(5)).unwrap(), nat(0));
        assert_eq!(s.ew(2, &nat(7)).unwrap(), nat(17));
        for t in 1..40u64 {
            assert_eq!(s.ew(1, &nat(t)).unwrap(), Nat::one() << (t - 1));
        }
        assert!(s.ew(3, &nat(0)).is_err());
    }

    #[test]
    fn invalid_relations() {
        assert!(TameRelation::single(Kind::A, 0, 0).is_err());
        assert!(TameRelation::single(Kind::A, 3, 4).is_err());
        assert!(TameRelation::pair(Kind::C1, 3, 1, 1).is_err());
        assert!(TameRelation::pair(Kind::C1, 3, 1, 4).is_err());
        assert!(TameRelation::single(Kind::C1Bar, 3, 1).is_err());
        assert!(TameRelation::pair(Kind::A2, 3, 1, 2).is_err());
        let s = Session::new();
        let b = TameRelation::single(Kind::B, 3, 1).unwrap();
        assert!(s.card(&b, &nat(0)).is_err());
        assert!(s.card(&b, &nat(8)).is_err());
        assert!(s.enumerate(&b, &nat(0)).is_err());
        assert!(s.enumerate(&b, &nat(4)).is_err());
    }

    #[test]
    fn empty_relation_never_enumerates() {
        let s = Session::new();
        let empty = TameRelation::pair(Kind::C1, 4, 0, 2).unwrap();
        assert_eq!(s.size(&empty).unwrap(), nat(0));
        assert!(s.enumerate(&empty, &nat(1)).is_err());
    }

    #[test]
    fn enumerate_probe_bound() {
        let s = Session::new();
        for n in [8u32, 12, 64, 200] {
            let rel = TameRelation::single(Kind::B, n, n / 2).unwrap();
            let size = s.size(&rel).unwrap();
            for t in [Nat::one(), &size >> 1u32, size.clone()] {
                s.reset_probes();
                s.enumerate(&rel, &t).unwrap();
                assert!(s.card_probes() <= u64::from(n) + 2, "n = {n}");
            }
        }
    }
}
