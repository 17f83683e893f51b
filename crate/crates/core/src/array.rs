//! Rows `R*_{n,1..n}` of triangular arrays, stored as sign patterns on
//! dyadic atoms.
//!
//! Coordinate `i` (1-based) of an atom's pattern is bit `n − i` of a `u64`:
//! coordinate 1 is the most significant of the `n` bits, and a set bit means
//! the sign `+1`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::{to_u64, Nat};
use crate::perm::{is_admissible, DensePermutation, PermutationTable, Rule};
use crate::session::Session;

/// Largest resolution stored densely.
pub const MAX_DENSE_RESOLUTION: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Signs {
    Dense(Vec<u64>),
    Rule(Rule),
}

/// `n` sign-valued functions measurable at dyadic level `resolution`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RademacherRow {
    n: u32,
    resolution: u32,
    signs: Signs,
}

impl RademacherRow {
    /// A dense row from one pattern per atom.
    pub fn from_patterns(n: u32, resolution: u32, patterns: Vec<u64>) -> Result<Self> {
        if n == 0 || n > 63 || resolution < n || resolution > MAX_DENSE_RESOLUTION {
            return Err(Error::Row(format!(
                "need 1 <= n <= resolution <= {MAX_DENSE_RESOLUTION}, got n = {n}, resolution = {resolution}"
            )));
        }
        if patterns.len() != 1 << resolution {
            return Err(Error::Row(format!(
                "expected {} atoms, got {}",
                1u64 << resolution,
                patterns.len()
            )));
        }
        if let Some(a) = patterns.iter().position(|&p| p >> n != 0) {
            return Err(Error::Row(format!("pattern at atom {a} has more than {n} bits")));
        }
        Ok(RademacherRow {
            n,
            resolution,
            signs: Signs::Dense(patterns),
        })
    }

    /// A dense row from explicit `±1` vectors, one per atom.
    pub fn from_signs(n: u32, resolution: u32, signs: &[Vec<i8>]) -> Result<Self> {
        let patterns = signs
            .iter()
            .enumerate()
            .map(|(a, v)| {
                if v.len() != n as usize {
                    return Err(Error::Row(format!("atom {a} has {} signs", v.len())));
                }
                v.iter().try_fold(0u64, |acc, &s| match s {
                    1 => Ok(acc << 1 | 1),
                    -1 => Ok(acc << 1),
                    _ => Err(Error::Row(format!("atom {a} has sign {s}"))),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_patterns(n, resolution, patterns)
    }

    /// Number of variables.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dyadic level of measurability.
    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    /// True when the row only depends on the first `n` bits.
    pub fn is_trim(&self) -> bool {
        self.resolution == self.n
    }

    /// True when the patterns are stored.
    pub fn is_dense(&self) -> bool {
        matches!(self.signs, Signs::Dense(_))
    }

    /// Stored patterns, if dense.
    pub fn patterns(&self) -> Option<&[u64]> {
        match &self.signs {
            Signs::Dense(p) => Some(p),
            Signs::Rule(_) => None,
        }
    }

    fn dense(&self) -> Result<&[u64]> {
        self.patterns()
            .ok_or_else(|| Error::Row(format!("row at n = {} is not dense", self.n)))
    }

    /// Pattern at `atom` as an integer (bit `n − i` is coordinate `i`).
    pub fn pattern(&self, session: &Session, atom: &Nat) -> Result<Nat> {
        let out_of_range = || Error::Atom {
            n: self.resolution,
            value: atom.clone(),
        };
        match &self.signs {
            Signs::Dense(p) => {
                let a = to_u64(atom)
                    .filter(|&a| a < p.len() as u64)
                    .ok_or_else(out_of_range)?;
                Ok(Nat::from(p[a as usize]))
            }
            Signs::Rule(rule) => session.apply(*rule, self.n, atom),
        }
    }

    /// The sign vector `(R_1, …, R_n)` at `atom`.
    pub fn signs(&self, session: &Session, atom: &Nat) -> Result<Vec<i8>> {
        let p = self.pattern(session, atom)?;
        Ok((1..=self.n)
            .map(|i| if p.bit(u64::from(self.n - i)) { 1 } else { -1 })
            .collect())
    }

    /// A copy with coordinate `i` negated at `atom`.
    pub fn with_flipped(&self, atom: u64, i: u32) -> Result<Self> {
        let mut p = self.dense()?.to_vec();
        if i == 0 || i > self.n || atom >= p.len() as u64 {
            return Err(Error::Row(format!("no coordinate {i} at atom {atom}")));
        }
        p[atom as usize] ^= 1 << (self.n - i);
        Self::from_patterns(self.n, self.resolution, p)
    }

    /// The same functions at resolution `resolution + 1`: each atom's
    /// pattern is copied to both children.
    pub fn lift(&self) -> Result<Self> {
        let p = self.dense()?;
        let lifted = p.iter().flat_map(|&v| [v, v]).collect();
        Self::from_patterns(self.n, self.resolution + 1, lifted)
    }

    /// Some `k` with `R_i` differing on atoms `2k` and `2k + 1`, i.e. a proof
    /// that coordinate `i` depends on the finest bit.
    pub fn finest_bit_dependence(&self, i: u32) -> Option<u64> {
        let p = self.patterns()?;
        if i == 0 || i > self.n {
            return None;
        }
        let mask = 1u64 << (self.n - i);
        p.chunks_exact(2)
            .position(|w| (w[0] ^ w[1]) & mask != 0)
            .map(|k| k as u64)
    }
}

/// Violations found by [`Session::verify_row`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RowReport {
    /// Atoms whose coordinate sum differs from the sorted walk value.
    pub sum_violations: Vec<u64>,
    /// Coordinates without exactly half of the atoms at `+1`.
    pub unbalanced: Vec<u32>,
    /// Patterns whose atom count is not `2^(resolution − n)`.
    pub pattern_violations: Vec<u64>,
}

impl RowReport {
    /// Sum property holds on every atom.
    pub fn sums_ok(&self) -> bool {
        self.sum_violations.is_empty()
    }

    /// Every coordinate is a Rademacher variable.
    pub fn balanced(&self) -> bool {
        self.unbalanced.is_empty()
    }

    /// The coordinates are independent.
    pub fn independent(&self) -> bool {
        self.pattern_violations.is_empty()
    }

    /// All three checks passed.
    pub fn passed(&self) -> bool {
        self.sums_ok() && self.balanced() && self.independent()
    }
}

/// Coordinates `i1 ≠ i2` and atoms `k1 < k2` where `R_{i1}` reads `(−1, +1)`
/// and `R_{i2}` reads `(+1, −1)`, all other coordinates agreeing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SwapWitness {
    /// First coordinate, 1-based.
    pub i1: u32,
    /// Second coordinate, 1-based.
    pub i2: u32,
    /// First atom.
    pub k1: u64,
    /// Second atom.
    pub k2: u64,
}

impl SwapWitness {
    fn check(&self, row: &RademacherRow) -> Result<()> {
        let p = row.dense()?;
        let n = row.n;
        let bad = |why: &str| Err(Error::Row(format!("invalid witness {self:?}: {why}")));
        if !row.is_trim() {
            return bad("row is not trim");
        }
        if self.i1 == self.i2 || self.i1 == 0 || self.i2 == 0 || self.i1 >= n || self.i2 >= n {
            return bad("coordinates must be distinct and below n");
        }
        if self.k1 >= self.k2 || self.k2 >= p.len() as u64 {
            return bad("atoms must satisfy k1 < k2 < 2^n");
        }
        let (m1, m2) = (1u64 << (n - self.i1), 1u64 << (n - self.i2));
        let (p1, p2) = (p[self.k1 as usize], p[self.k2 as usize]);
        if p1 & m1 != 0 || p1 & m2 == 0 {
            return bad("wrong signs at k1");
        }
        if p2 != p1 ^ m1 ^ m2 {
            return bad("wrong signs at k2");
        }
        Ok(())
    }

    /// For each affected atom of `child`, `R_{i1} + R_{i2}` and
    /// `R_{i1} · R_{i2}` equal their values on the parent atom in `parent`.
    pub fn preserved(&self, parent: &RademacherRow, child: &RademacherRow) -> bool {
        let (Some(p), Some(c)) = (parent.patterns(), child.patterns()) else {
            return false;
        };
        let n = parent.n;
        if child.n != n || child.resolution != parent.resolution + 1 {
            return false;
        }
        let sign = |v: u64, i: u32| if v >> (n - i) & 1 == 1 { 1i8 } else { -1 };
        [2 * self.k1, 2 * self.k1 + 1, 2 * self.k2, 2 * self.k2 + 1]
            .iter()
            .all(|&a| {
                let (v, w) = (c[a as usize], p[(a >> 1) as usize]);
                let (x1, x2) = (sign(v, self.i1), sign(v, self.i2));
                let (y1, y2) = (sign(w, self.i1), sign(w, self.i2));
                x1 + x2 == y1 + y2 && x1 * x2 == y1 * y2
            })
    }
}

impl Session {
    /// The trim row with `R_i(k) = +1` exactly when bit `i` of `π(k)` is set.
    ///
    /// Rule tables up to resolution 20 are stored densely; larger ones are
    /// evaluated pointwise.
    pub fn row_from_permutation(&self, pi: &PermutationTable) -> Result<RademacherRow> {
        match pi {
            PermutationTable::Dense(d) => {
                if !is_admissible(d.n(), d.as_slice())? {
                    return Err(Error::NotAdmissible {
                        k: first_bad(self, d)?,
                    });
                }
                RademacherRow::from_patterns(d.n(), d.n(), d.as_slice().to_vec())
            }
            PermutationTable::Rule { rule, n } if *n <= MAX_DENSE_RESOLUTION => {
                let d = self.dense(*rule, *n)?;
                RademacherRow::from_patterns(*n, *n, d.as_slice().to_vec())
            }
            PermutationTable::Rule { rule, n } => {
                self.level(*n)?;
                Ok(RademacherRow {
                    n: *n,
                    resolution: *n,
                    signs: Signs::Rule(*rule),
                })
            }
        }
    }

    /// The permutation sending each atom to the integer spelled by its
    /// pattern.
    pub fn permutation_from_row(&self, row: &RademacherRow) -> Result<PermutationTable> {
        if !row.is_trim() {
            return Err(Error::Row(format!(
                "row at resolution {} is not trim",
                row.resolution
            )));
        }
        if let Signs::Rule(rule) = row.signs {
            return Ok(PermutationTable::Rule { rule, n: row.n });
        }
        let p = row.dense()?;
        let mut owner = vec![u64::MAX; p.len()];
        for (a, &v) in p.iter().enumerate() {
            let slot = &mut owner[v as usize];
            if *slot != u64::MAX {
                return Err(Error::DuplicatePattern {
                    first: *slot,
                    second: a as u64,
                    pattern: v,
                });
            }
            *slot = a as u64;
        }
        Ok(DensePermutation::new(row.n, p.to_vec())?.into())
    }

    /// Checks the sum, balance and independence properties of a dense row.
    pub fn verify_row(&self, row: &RademacherRow) -> Result<RowReport> {
        let p = row.dense()?;
        let (n, extra) = (row.n, row.resolution - row.n);
        let level = self.level(n)?;
        let targets = (0..1u64 << n)
            .map(|k| level.quantile_value(&Nat::from(k)))
            .collect::<Result<Vec<_>>>()?;
        let mut report = RowReport::default();
        let mut ones = vec![0u64; n as usize];
        let mut counts = vec![0u64; 1 << n];
        for (a, &v) in p.iter().enumerate() {
            let plus = i64::from(v.count_ones());
            if 2 * plus - i64::from(n) != targets[a >> extra] {
                report.sum_violations.push(a as u64);
            }
            for (i, c) in ones.iter_mut().enumerate() {
                *c += v >> (n as usize - 1 - i) & 1;
            }
            counts[v as usize] += 1;
        }
        let half = (p.len() / 2) as u64;
        report.unbalanced = (1..=n).filter(|&i| ones[i as usize - 1] != half).collect();
        report.pattern_violations = (0..1u64 << n)
            .filter(|&v| counts[v as usize] != 1 << extra)
            .collect();
        Ok(report)
    }

    /// Lexicographically first [`SwapWitness`] in `(i1, i2, k1, k2)`.
    pub fn find_swap_witness(&self, row: &RademacherRow) -> Result<SwapWitness> {
        let p = row.dense()?;
        if !row.is_trim() || row.n < 3 {
            return Err(Error::NoWitness(format!(
                "needs a trim row with n >= 3, got n = {}",
                row.n
            )));
        }
        let n = row.n;
        let mut owner: Vec<Vec<u64>> = vec![Vec::new(); p.len()];
        for (a, &v) in p.iter().enumerate() {
            owner[v as usize].push(a as u64);
        }
        for i1 in 1..n {
            for i2 in (1..n).filter(|&i2| i2 != i1) {
                let (m1, m2) = (1u64 << (n - i1), 1u64 << (n - i2));
                for (k1, &v) in p.iter().enumerate() {
                    if v & m1 != 0 || v & m2 == 0 {
                        continue;
                    }
                    let k1 = k1 as u64;
                    if let Some(&k2) = owner[(v ^ m1 ^ m2) as usize].iter().find(|&&k| k > k1) {
                        return Ok(SwapWitness { i1, i2, k1, k2 });
                    }
                }
            }
        }
        Err(Error::NoWitness(format!("no swap witness at n = {n}")))
    }

    /// The row at resolution `n + 1` that swaps coordinates `i1`, `i2` on one
    /// child of each witness atom. The sums and the pattern masses are
    /// unchanged, while `R_{i1}` now depends on the finest bit.
    pub fn build_nontrim(&self, row: &RademacherRow, w: &SwapWitness) -> Result<RademacherRow> {
        w.check(row)?;
        let n = row.n;
        let mut lifted = row.lift()?.dense()?.to_vec();
        let swap = (1u64 << (n - w.i1)) | (1u64 << (n - w.i2));
        lifted[2 * w.k1 as usize + 1] ^= swap;
        lifted[2 * w.k2 as usize + 1] ^= swap;
        RademacherRow::from_patterns(n, n + 1, lifted)
    }

    /// First `(i, atom)`, ordered by coordinate, where the resolution-`n + 1`
    /// row differs from the lifted resolution-`n` row.
    pub fn row_nonpersistence(
        &self,
        lower: &RademacherRow,
        upper: &RademacherRow,
    ) -> Result<(u32, u64)> {
        let (lo, hi) = (lower.dense()?, upper.dense()?);
        let n = lower.n;
        if !lower.is_trim() || !upper.is_trim() || upper.n != n + 1 {
            return Err(Error::Row(format!(
                "need trim rows at n and n + 1, got n = {} and n = {}",
                lower.n, upper.n
            )));
        }
        for i in 1..=n {
            for (a, &v) in hi.iter().enumerate() {
                let new = v >> (n + 1 - i) & 1;
                let old = lo[a >> 1] >> (n - i) & 1;
                if new != old {
                    return Ok((i, a as u64));
                }
            }
        }
        Err(Error::NoWitness(format!(
            "the level-{} row extends the level-{n} row",
            n + 1
        )))
    }
}

fn first_bad(session: &Session, d: &DensePermutation) -> Result<u64> {
    let level = session.level(d.n())?;
    Ok((0..d.as_slice().len() as u64)
        .find(|&k| {
            level.istep_unchecked(&Nat::from(k)) != d.get(k).count_ones()
        })
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: &Session, rule: Rule, n: u32) -> RademacherRow {
        s.row_from_permutation(&PermutationTable::Rule { rule, n }).unwrap()
    }

    #[test]
    fn row_examples() {
        let s = Session::new();
        let r1 = row(&s, Rule::F, 1);
        assert_eq!(r1.signs(&s, &Nat::from(0u32)).unwrap(), [-1]);
        assert_eq!(r1.signs(&s, &Nat::from(1u32)).unwrap(), [1]);
        let r8 = row(&s, Rule::F, 8);
        assert_eq!(
            r8.signs(&s, &Nat::from(15u32)).unwrap(),
            [-1, -1, -1, 1, -1, -1, -1, 1]
        );
        let big = row(&s, Rule::H, 64);
        assert!(!big.is_dense());
        assert_eq!(big.signs(&s, &Nat::from(0u32)).unwrap(), vec![-1; 64]);
    }

    #[test]
    fn round_trip_and_report() {
        let s = Session::new();
        for rule in Rule::ALL {
            for n in 1..=8 {
                let r = row(&s, rule, n);
                assert!(s.verify_row(&r).unwrap().passed());
                let back = s.permutation_from_row(&r).unwrap();
                assert_eq!(back, s.dense(rule, n).unwrap().into());
            }
        }
    }

    #[test]
    fn broken_rows() {
        let s = Session::new();
        let r = row(&s, Rule::F, 4);
        let flipped = r.with_flipped(5, 2).unwrap();
        let report = s.verify_row(&flipped).unwrap();
        assert_eq!(report.sum_violations, [5]);
        let mut p = r.patterns().unwrap().to_vec();
        p[3] = p[2];
        let dup = RademacherRow::from_patterns(4, 4, p).unwrap();
        assert!(matches!(
            s.permutation_from_row(&dup),
            Err(Error::DuplicatePattern { first: 2, second: 3, .. })
        ));
        assert!(RademacherRow::from_signs(1, 1, &[vec![1], vec![0]]).is_err());
        let id = DensePermutation::identity(3).unwrap();
        assert!(matches!(
            s.row_from_permutation(&id.into()),
            Err(Error::NotAdmissible { k: 3 })
        ));
    }

    #[test]
    fn nontrim_construction() {
        let s = Session::new();
        let r = row(&s, Rule::F, 6);
        let w = s.find_swap_witness(&r).unwrap();
        let out = s.build_nontrim(&r, &w).unwrap();
        assert_eq!(out.resolution(), 7);
        assert!(s.verify_row(&out).unwrap().passed());
        assert!(w.preserved(&r, &out));
        assert!(out.finest_bit_dependence(w.i1).is_some());
        assert!(r.lift().unwrap().finest_bit_dependence(w.i1).is_none());
        let lifted = r.lift().unwrap();
        let changed: Vec<u64> = (0..128u64)
            .filter(|&a| out.patterns().unwrap()[a as usize] != lifted.patterns().unwrap()[a as usize])
            .collect();
        assert_eq!(changed, [2 * w.k1 + 1, 2 * w.k2 + 1]);
        assert!(s.find_swap_witness(&row(&s, Rule::F, 1)).is_err());
        let bad = SwapWitness { k1: w.k2, k2: w.k1, ..w };
        assert!(s.build_nontrim(&r, &bad).is_err());
    }

    #[test]
    fn nonpersistence_rows() {
        let s = Session::new();
        for rule in Rule::ALL {
            let (i, a) = s
                .row_nonpersistence(&row(&s, rule, 6), &row(&s, rule, 7))
                .unwrap();
            assert!((1..=6).contains(&i) && a < 128);
        }
        assert!(s
            .row_nonpersistence(&row(&s, Rule::F, 1), &row(&s, Rule::F, 2))
            .is_err());
    }
}
