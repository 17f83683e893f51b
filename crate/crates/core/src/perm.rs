//! The admissible permutations `F`, `G`, `H`, dense tables, admissibility,
//! exhaustive enumeration, σ-decomposition, the `2^n` identities and
//! non-persistence witnesses.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{pow2, to_u64, weight, Nat};
use crate::session::Session;
use crate::tame::{Kind, TameRelation};

/// Largest resolution for which dense tables are built.
pub const MAX_DENSE_N: u32 = 24;

/// Largest resolution accepted by [`enumerate_admissible`].
pub const MAX_ENUMERATION_N: u32 = 4;

/// One of the three explicit admissible rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Order-preserving block maps `IA_{n,i} → IB_{n,i}`.
    F,
    /// Identity on `weight(k) = istep(n, k)`, order-preserving elsewhere.
    G,
    /// As `G`, plus a maximal set of two-cycles.
    H,
}

impl Rule {
    /// All three rules.
    pub const ALL: [Rule; 3] = [Rule::F, Rule::G, Rule::H];
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::F => "F",
            Rule::G => "G",
            Rule::H => "H",
        })
    }
}

impl Session {
    /// `F(n, k)`: the `(k − SBC(n,i) + 1)`-th value of weight `i = istep(n, k)`.
    pub fn f(&self, n: u32, k: &Nat) -> Result<Nat> {
        let lc = self.cache(n)?;
        let level = &lc.level;
        let i = level.istep(k)?;
        if let Some(fixed) = endpoint(level.size(), k) {
            return Ok(fixed);
        }
        let rank = k + 1u32 - level.sbc(i)?;
        self.enumerate(&TameRelation::single(Kind::B, n, i)?, &rank)
    }

    /// `F_n^{-1}(m) = SBC(n, j) + β(n, j, m) − 1` with `j = weight(m)`.
    pub fn inv_f(&self, n: u32, m: &Nat) -> Result<Nat> {
        let lc = self.cache(n)?;
        let level = &lc.level;
        level.check(m)?;
        if let Some(fixed) = endpoint(level.size(), m) {
            return Ok(fixed);
        }
        let j = weight(m) as u32;
        let rank = self.card(&TameRelation::single(Kind::B, n, j)?, m)?;
        Ok(level.sbc(j)? + rank - 1u32)
    }

    /// `G(n, k)`: fixed where `weight(k) = istep(n, k)`, otherwise the
    /// order-preserving map from the rest of block `i` to the rest of weight
    /// class `i`.
    pub fn g(&self, n: u32, k: &Nat) -> Result<Nat> {
        let lc = self.cache(n)?;
        let i = lc.level.istep(k)?;
        if weight(k) == u64::from(i) {
            return Ok(k.clone());
        }
        let rank = self.card(&TameRelation::single(Kind::A1, n, i)?, k)?;
        self.enumerate(&TameRelation::single(Kind::B1, n, i)?, &rank)
    }

    /// `H(n, k)`: fixed points as in `G`; members of `C1Bar(n, i, j)` swap
    /// with the equally ranked member of `C1Bar(n, j, i)`; the remainder maps
    /// in order from `A2(n, i)` onto `B2(n, i)`.
    pub fn h(&self, n: u32, k: &Nat) -> Result<Nat> {
        let lc = self.cache(n)?;
        let i = lc.level.istep(k)?;
        let j = weight(k) as u32;
        if j == i {
            return Ok(k.clone());
        }
        let paired = TameRelation::pair(Kind::C1Bar, n, i, j)?;
        if self.member(&paired, k)? {
            let rank = self.card(&paired, k)?;
            let partner = TameRelation::pair(Kind::C1Bar, n, j, i)?;
            return self.enumerate(&partner, &rank);
        }
        let rank = self.card(&TameRelation::single(Kind::A2, n, i)?, k)?;
        self.enumerate(&TameRelation::single(Kind::B2, n, i)?, &rank)
    }

    /// Dispatches on `rule`.
    pub fn apply(&self, rule: Rule, n: u32, k: &Nat) -> Result<Nat> {
        match rule {
            Rule::F => self.f(n, k),
            Rule::G => self.g(n, k),
            Rule::H => self.h(n, k),
        }
    }

    /// Natural encoding `Π(n, k)` of the rule sequence: `Π(0, 0) = 0`,
    /// `Π(n, k) = 2^n` for `k >= 2^n`, the rule value otherwise.
    pub fn encoded(&self, rule: Rule, n: u32, k: &Nat) -> Result<Nat> {
        if n == 0 {
            return Ok(if k.is_zero() { Nat::zero() } else { Nat::one() });
        }
        let size = pow2(n.into());
        if *k >= size {
            return Ok(size);
        }
        self.apply(rule, n, k)
    }

    /// Dense table of `rule` at resolution `n`.
    pub fn dense(&self, rule: Rule, n: u32) -> Result<DensePermutation> {
        check_dense(n)?;
        let map = (0..1u64 << n)
            .map(|k| {
                let v = self.apply(rule, n, &Nat::from(k))?;
                Ok(to_u64(&v).unwrap_or(u64::MAX))
            })
            .collect::<Result<Vec<_>>>()?;
        DensePermutation::new(n, map)
    }

    /// Checks `1 + Σ_{i=1}^n Π(n, i) = 2^n` for any admissible subject, plus
    /// `2·F(n, n) = 2^n` for `F` and `2·max(G(n, n), G(n, n−1)) = 2^n` for `G`.
    pub fn verify_lower_bound_identity(&self, subject: Subject<'_>, n: u32) -> bool {
        self.lower_bound_identity(subject, n).unwrap_or(false)
    }

    fn lower_bound_identity(&self, subject: Subject<'_>, n: u32) -> Result<bool> {
        if n == 0 {
            return Ok(false);
        }
        let size = pow2(n.into());
        let image = |k: u64| -> Result<Nat> {
            match subject {
                Subject::Rule(rule) => self.encoded(rule, n, &Nat::from(k)),
                Subject::Dense(table) => {
                    if table.n() != n {
                        return Err(Error::Resolution {
                            n: n.into(),
                            reason: "table resolution differs",
                        });
                    }
                    Ok(table
                        .as_slice()
                        .get(k as usize)
                        .map_or_else(|| size.clone(), |&v| Nat::from(v)))
                }
            }
        };
        let mut total = Nat::one();
        for i in 1..=u64::from(n) {
            total += image(i)?;
        }
        if total != size {
            return Ok(false);
        }
        match subject {
            Subject::Rule(Rule::F) => {
                let v = image(n.into())?;
                Ok(&v + &v == size)
            }
            Subject::Rule(Rule::G) => {
                let v = image(n.into())?.max(image(u64::from(n) - 1)?);
                Ok(&v + &v == size)
            }
            _ => Ok(true),
        }
    }

    /// Some `k < 2^n` with `π_{n+1}(k) ≠ π_n(k)`.
    ///
    /// First looks for `k` whose step drops from `n` to `n + 1`, where the
    /// images must have different weights, then falls back to a scan.
    pub fn nonpersistence_witness(
        &self,
        lower: &PermutationTable,
        upper: &PermutationTable,
    ) -> Result<Nat> {
        let n = lower.n();
        if upper.n() != n + 1 {
            return Err(Error::Resolution {
                n: upper.n().into(),
                reason: "second table must have resolution n + 1",
            });
        }
        let lo = self.cache(n)?;
        let hi = self.cache(n + 1)?;
        let size = lo.level.size().clone();
        let mut k = Nat::zero();
        while k < size {
            if hi.level.istep_unchecked(&k) < lo.level.istep_unchecked(&k)
                && lower.image(self, &k)? != upper.image(self, &k)?
            {
                return Ok(k);
            }
            k += 1u32;
        }
        let mut k = Nat::zero();
        while k < size {
            if lower.image(self, &k)? != upper.image(self, &k)? {
                return Ok(k);
            }
            k += 1u32;
        }
        Err(Error::NoWitness(format!(
            "the level-{} table extends the level-{n} table",
            n + 1
        )))
    }
}

fn endpoint(size: &Nat, k: &Nat) -> Option<Nat> {
    (k.is_zero() || k + 1u32 == *size).then(|| k.clone())
}

fn check_dense(n: u32) -> Result<()> {
    if n == 0 || n > MAX_DENSE_N {
        return Err(Error::Resolution {
            n: n.into(),
            reason: "dense tables need 1 <= n <= 24",
        });
    }
    Ok(())
}

/// What [`Session::verify_lower_bound_identity`] checks.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    /// A named rule, evaluated lazily.
    Rule(Rule),
    /// An explicit table.
    Dense(&'a DensePermutation),
}

/// An explicit permutation of `{0, …, 2^n − 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePermutation {
    n: u32,
    map: Vec<u64>,
}

impl DensePermutation {
    /// Validates length `2^n` and bijectivity.
    pub fn new(n: u32, map: Vec<u64>) -> Result<Self> {
        check_dense(n)?;
        check_bijection(n, &map)?;
        Ok(DensePermutation { n, map })
    }

    /// The identity at resolution `n`.
    pub fn identity(n: u32) -> Result<Self> {
        check_dense(n)?;
        Ok(DensePermutation {
            n,
            map: (0..1u64 << n).collect(),
        })
    }

    /// Resolution.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `π(k)`.
    pub fn get(&self, k: u64) -> u64 {
        self.map[k as usize]
    }

    /// All images in order.
    pub fn as_slice(&self) -> &[u64] {
        &self.map
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0u64; self.map.len()];
        for (k, &v) in self.map.iter().enumerate() {
            inv[v as usize] = k as u64;
        }
        DensePermutation {
            n: self.n,
            map: inv,
        }
    }

    /// `weight(π(k)) = istep(n, k)` for every `k`.
    pub fn is_admissible(&self) -> bool {
        first_inadmissible(self.n, &self.map).is_none()
    }

    /// Atoms with `π(k) = k`.
    pub fn fixed_points(&self) -> Vec<u64> {
        (0..self.map.len() as u64)
            .filter(|&k| self.get(k) == k)
            .collect()
    }

    /// Number of orbits of length two.
    pub fn two_cycles(&self) -> usize {
        (0..self.map.len() as u64)
            .filter(|&k| {
                let m = self.get(k);
                m > k && self.get(m) == k
            })
            .count()
    }
}

fn check_bijection(n: u32, map: &[u64]) -> Result<()> {
    let len = 1usize << n;
    if map.len() != len {
        return Err(Error::NotBijective(format!(
            "expected {len} entries, got {}",
            map.len()
        )));
    }
    let mut seen = alloc::vec![false; len];
    for (k, &v) in map.iter().enumerate() {
        let slot = seen.get_mut(v as usize).ok_or_else(|| {
            Error::NotBijective(format!("image {v} of {k} is not below 2^{n}"))
        })?;
        if *slot {
            return Err(Error::NotBijective(format!("image {v} repeats at {k}")));
        }
        *slot = true;
    }
    Ok(())
}

fn step_row(n: u32) -> Vec<u32> {
    // istep for every atom, from the SBC row
    let level = crate::numeric::Level::new(n).expect("n checked");
    let mut out = Vec::with_capacity(1 << n);
    let mut i = 0u32;
    for k in 0..1u64 << n {
        while Nat::from(k) >= *level.sbc(i + 1).expect("in range") {
            i += 1;
        }
        out.push(i);
    }
    out
}

fn first_inadmissible(n: u32, map: &[u64]) -> Option<u64> {
    let steps = step_row(n);
    map.iter()
        .zip(steps)
        .position(|(&v, s)| v.count_ones() != s)
        .map(|k| k as u64)
}

/// Admissibility of a raw table; errors when it is not a bijection.
pub fn is_admissible(n: u32, map: &[u64]) -> Result<bool> {
    check_dense(n)?;
    check_bijection(n, map)?;
    Ok(first_inadmissible(n, map).is_none())
}

/// A permutation given explicitly or by a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermutationTable {
    /// Explicit table.
    Dense(DensePermutation),
    /// `rule` at resolution `n`, evaluated on demand.
    Rule {
        /// The rule.
        rule: Rule,
        /// Resolution.
        n: u32,
    },
}

impl PermutationTable {
    /// Resolution.
    pub fn n(&self) -> u32 {
        match self {
            PermutationTable::Dense(d) => d.n(),
            PermutationTable::Rule { n, .. } => *n,
        }
    }

    /// `π(k)`.
    pub fn image(&self, session: &Session, k: &Nat) -> Result<Nat> {
        match self {
            PermutationTable::Dense(d) => {
                let idx = to_u64(k)
                    .filter(|&v| v < d.map.len() as u64)
                    .ok_or_else(|| Error::Atom {
                        n: d.n,
                        value: k.clone(),
                    })?;
                Ok(Nat::from(d.get(idx)))
            }
            PermutationTable::Rule { rule, n } => session.apply(*rule, *n, k),
        }
    }
}

impl From<DensePermutation> for PermutationTable {
    fn from(d: DensePermutation) -> Self {
        PermutationTable::Dense(d)
    }
}

/// `∏_{i=0}^n C(n, i)!`, the number of admissible permutations.
pub fn admissible_count(n: u32) -> Result<Nat> {
    let level = crate::numeric::Level::new(n)?;
    let mut total = Nat::one();
    for i in 0..=n {
        let c = to_u64(level.binomial(i)?).ok_or(Error::Resolution {
            n: n.into(),
            reason: "block size exceeds u64",
        })?;
        for f in 2..=c {
            total *= f;
        }
    }
    Ok(total)
}

/// Ascending members of every block `IA_{n,i}` and weight class `IB_{n,i}`.
fn blocks(n: u32) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let steps = step_row(n);
    let mut a = alloc::vec![Vec::new(); n as usize + 1];
    let mut b = alloc::vec![Vec::new(); n as usize + 1];
    for k in 0..1u64 << n {
        a[steps[k as usize] as usize].push(k);
        b[k.count_ones() as usize].push(k);
    }
    (a, b)
}

/// Per-block permutations `σ_{n,i}` of `{1, …, C(n, i)}` classifying an
/// admissible permutation: `π(a_{n,i,s}) = b_{n,i,σ_i(s)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaSystem {
    n: u32,
    sigma: Vec<Vec<u64>>,
}

impl SigmaSystem {
    /// Validates that `sigma[i]` is a permutation of `1..=C(n, i)`.
    pub fn new(n: u32, sigma: Vec<Vec<u64>>) -> Result<Self> {
        check_dense(n)?;
        let level = crate::numeric::Level::new(n)?;
        if sigma.len() != n as usize + 1 {
            return Err(Error::NotBijective(format!(
                "expected {} block permutations",
                n + 1
            )));
        }
        for (i, s) in sigma.iter().enumerate() {
            let c = to_u64(level.binomial(i as u32)?).unwrap_or(u64::MAX);
            if s.len() as u64 != c {
                return Err(Error::NotBijective(format!("σ_{i} has wrong length")));
            }
            let mut seen = alloc::vec![false; s.len()];
            for &v in s {
                let ok = v >= 1 && v <= c && !core::mem::replace(&mut seen[v as usize - 1], true);
                if !ok {
                    return Err(Error::NotBijective(format!("σ_{i} is not a permutation")));
                }
            }
        }
        Ok(SigmaSystem { n, sigma })
    }

    /// All blocks the identity: the system of `F`.
    pub fn identity(n: u32) -> Result<Self> {
        let level = crate::numeric::Level::new(n)?;
        let sigma = (0..=n)
            .map(|i| {
                let c = to_u64(level.binomial(i).expect("i <= n")).unwrap_or(0);
                (1..=c).collect()
            })
            .collect();
        Self::new(n, sigma)
    }

    /// Resolution.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `σ_{n,i}` as 1-based images.
    pub fn block(&self, i: u32) -> &[u64] {
        &self.sigma[i as usize]
    }

    /// True when every block permutation is the identity.
    pub fn is_identity(&self) -> bool {
        self.sigma
            .iter()
            .all(|s| s.iter().enumerate().all(|(t, &v)| v == t as u64 + 1))
    }

    /// The admissible permutation this system describes.
    pub fn compose(&self) -> DensePermutation {
        let (a, b) = blocks(self.n);
        let mut map = alloc::vec![0u64; 1 << self.n];
        for (i, s) in self.sigma.iter().enumerate() {
            for (t, &v) in s.iter().enumerate() {
                map[a[i][t] as usize] = b[i][v as usize - 1];
            }
        }
        DensePermutation { n: self.n, map }
    }
}

impl Session {
    /// `σ_{n,i}(s) = card(B(n,i), π(enumerate(A(n,i), s)))`, with rank 1
    /// for the image `0`.
    pub fn sigma_decomposition(&self, pi: &DensePermutation) -> Result<SigmaSystem> {
        let n = pi.n();
        if let Some(k) = first_inadmissible(n, pi.as_slice()) {
            return Err(Error::NotAdmissible { k });
        }
        let level = self.level(n)?;
        let mut sigma = Vec::with_capacity(n as usize + 1);
        for i in 0..=n {
            let a = TameRelation::single(Kind::A, n, i)?;
            let b = TameRelation::single(Kind::B, n, i)?;
            let c = to_u64(level.binomial(i)?).unwrap_or(0);
            let mut block = Vec::with_capacity(c as usize);
            for s in 1..=c {
                let atom = self.enumerate(&a, &Nat::from(s))?;
                let image = pi.get(to_u64(&atom).unwrap_or(0));
                let rank = if image == 0 {
                    1
                } else {
                    to_u64(&self.card(&b, &Nat::from(image))?).unwrap_or(0)
                };
                block.push(rank);
            }
            sigma.push(block);
        }
        SigmaSystem::new(n, sigma)
    }
}

/// Every admissible permutation at resolution `n <= 4`, in lexicographic
/// order of the per-block permutation indices (block `n` varies fastest).
pub fn enumerate_admissible(n: u32) -> Result<AdmissibleIter> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::Resolution {
            n: n.into(),
            reason: "exhaustive enumeration is limited to 1 <= n <= 4",
        });
    }
    let (a, b) = blocks(n);
    let sigma = a.iter().map(|block| (0..block.len()).collect()).collect();
    Ok(AdmissibleIter {
        n,
        a,
        b,
        sigma,
        done: false,
    })
}

/// Iterator returned by [`enumerate_admissible`].
#[derive(Debug, Clone)]
pub struct AdmissibleIter {
    n: u32,
    a: Vec<Vec<u64>>,
    b: Vec<Vec<u64>>,
    sigma: Vec<Vec<usize>>,
    done: bool,
}

impl AdmissibleIter {
    /// The σ-system of the permutation that `next` will return.
    pub fn current_sigma(&self) -> Option<SigmaSystem> {
        (!self.done).then(|| SigmaSystem {
            n: self.n,
            sigma: self
                .sigma
                .iter()
                .map(|s| s.iter().map(|&v| v as u64 + 1).collect())
                .collect(),
        })
    }
}

impl Iterator for AdmissibleIter {
    type Item = DensePermutation;

    fn next(&mut self) -> Option<DensePermutation> {
        if self.done {
            return None;
        }
        let mut map = alloc::vec![0u64; 1 << self.n];
        for (i, s) in self.sigma.iter().enumerate() {
            for (t, &v) in s.iter().enumerate() {
                map[self.a[i][t] as usize] = self.b[i][v];
            }
        }
        self.done = !self
            .sigma
            .iter_mut()
            .rev()
            .any(|s| next_permutation(s));
        Some(DensePermutation { n: self.n, map })
    }
}

/// Advances to the next permutation in lexicographic order; on the last one
/// it wraps to the first and returns `false`.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(pivot) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        v.reverse();
        return false;
    };
    let swap = v.iter().rposition(|&x| x > v[pivot]).expect("pivot has a successor");
    v.swap(pivot, swap);
    v[pivot + 1..].reverse();
    true
}
