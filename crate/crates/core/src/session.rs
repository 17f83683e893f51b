use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use num_traits::Zero;

use crate::error::Result;
use crate::numeric::{count_weight_below, weight_profile_below, Level, Nat};

/// A computation context that caches per-resolution data.
///
/// Every F/G/H evaluation at one `n` reuses the SBC row and the block
/// weight counts, so a session keeps them keyed by `n`. Entries are written
/// once and never mutated afterwards. A session is not `Sync`; give each
/// thread its own.
#[derive(Debug, Default)]
pub struct Session {
    levels: RefCell<BTreeMap<u32, Rc<LevelCache>>>,
    probes: Cell<u64>,
}

impl Session {
    /// Empty session.
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn cache(&self, n: u32) -> Result<Rc<LevelCache>> {
        if let Some(found) = self.levels.borrow().get(&n) {
            return Ok(found.clone());
        }
        let built = Rc::new(LevelCache::new(Level::new(n)?));
        self.levels.borrow_mut().entry(n).or_insert(built.clone());
        Ok(built)
    }

    /// The cached rows for resolution `n`.
    pub fn level(&self, n: u32) -> Result<Level> {
        Ok(self.cache(n)?.level.clone())
    }

    /// `SBC(n, i)`.
    pub fn sbc(&self, n: u32, i: u32) -> Result<Nat> {
        Ok(self.cache(n)?.level.sbc(i)?.clone())
    }

    /// `IStep(n, k)`.
    pub fn istep(&self, n: u32, k: &Nat) -> Result<u32> {
        self.cache(n)?.level.istep(k)
    }

    /// Number of cardinality-function evaluations performed so far.
    pub fn card_probes(&self) -> u64 {
        self.probes.get()
    }

    /// Resets the probe counter to zero.
    pub fn reset_probes(&self) {
        self.probes.set(0);
    }

    pub(crate) fn count_probe(&self) {
        self.probes.set(self.probes.get() + 1);
    }
}

/// Per-resolution caches of weight counts at SBC boundaries.
#[derive(Debug)]
pub(crate) struct LevelCache {
    pub(crate) level: Level,
    /// `W(j, SBC(n, m))` keyed by `(j, m)`.
    boundary: RefCell<BTreeMap<(u64, u32), Nat>>,
    /// All-weight counts below `SBC(n, m)`.
    profiles: RefCell<BTreeMap<u32, Rc<Vec<Nat>>>>,
    /// Row `i` of the block matrix: weight-`j` counts inside `IA_{n,i}`.
    rows: RefCell<BTreeMap<u32, Rc<Vec<Nat>>>>,
    /// Column `j` of the block matrix.
    columns: RefCell<BTreeMap<u64, Rc<Vec<Nat>>>>,
}

impl LevelCache {
    fn new(level: Level) -> Self {
        LevelCache {
            level,
            boundary: RefCell::default(),
            profiles: RefCell::default(),
            rows: RefCell::default(),
            columns: RefCell::default(),
        }
    }

    pub(crate) fn n(&self) -> u32 {
        self.level.n()
    }

    /// Lower end `SBC(n, i)` of block `i`.
    pub(crate) fn lo(&self, i: u32) -> &Nat {
        &self.level.sbc_row()[i as usize]
    }

    /// Exclusive upper end `SBC(n, i+1)` of block `i`.
    pub(crate) fn hi(&self, i: u32) -> &Nat {
        &self.level.sbc_row()[i as usize + 1]
    }

    pub(crate) fn clamp<'a>(&'a self, i: u32, x: &'a Nat) -> &'a Nat {
        let (lo, hi) = (self.lo(i), self.hi(i));
        if x < lo {
            lo
        } else if x > hi {
            hi
        } else {
            x
        }
    }

    /// Number of weight-`j` values below `SBC(n, m)`.
    pub(crate) fn boundary(&self, j: u64, m: u32) -> Nat {
        if let Some(v) = self.boundary.borrow().get(&(j, m)) {
            return v.clone();
        }
        if let Some(p) = self.profiles.borrow().get(&m) {
            return p.get(j as usize).cloned().unwrap_or_default();
        }
        let v = count_weight_below(j, &self.level.sbc_row()[m as usize]);
        self.boundary.borrow_mut().entry((j, m)).or_insert(v.clone());
        v
    }

    /// All-weight counts below `SBC(n, m)`.
    pub(crate) fn profile(&self, m: u32) -> Rc<Vec<Nat>> {
        if let Some(p) = self.profiles.borrow().get(&m) {
            return p.clone();
        }
        let p = Rc::new(weight_profile_below(
            &self.level.sbc_row()[m as usize],
            self.n().into(),
        ));
        self.profiles.borrow_mut().entry(m).or_insert(p.clone());
        p
    }

    /// Weight counts inside block `i`, indexed by weight.
    pub(crate) fn row(&self, i: u32) -> Rc<Vec<Nat>> {
        if let Some(r) = self.rows.borrow().get(&i) {
            return r.clone();
        }
        let lo = self.profile(i);
        let hi = self.profile(i + 1);
        let r: Rc<Vec<Nat>> = Rc::new(hi.iter().zip(lo.iter()).map(|(h, l)| h - l).collect());
        self.rows.borrow_mut().entry(i).or_insert(r.clone());
        r
    }

    /// Weight-`j` counts inside every block, indexed by block.
    pub(crate) fn column(&self, j: u64) -> Rc<Vec<Nat>> {
        if let Some(c) = self.columns.borrow().get(&j) {
            return c.clone();
        }
        let marks: Vec<Nat> = (0..=self.n() + 1).map(|m| self.boundary(j, m)).collect();
        let c: Rc<Vec<Nat>> = Rc::new(marks.windows(2).map(|w| &w[1] - &w[0]).collect());
        self.columns.borrow_mut().entry(j).or_insert(c.clone());
        c
    }

    /// `|{m ∈ IA_{n,i} : weight(m) = j}|`.
    pub(crate) fn block_count(&self, i: u32, j: u64) -> Nat {
        if j > u64::from(self.n()) {
            return Nat::zero();
        }
        if let Some(r) = self.rows.borrow().get(&i) {
            return r[j as usize].clone();
        }
        if let Some(c) = self.columns.borrow().get(&j) {
            return c[i as usize].clone();
        }
        self.boundary(j, i + 1) - self.boundary(j, i)
    }
}
