//! Verification suites. Each check reports pass or fail with a short detail.

use std::collections::BTreeSet;

use admissible_core::oracle::{self, OracleSets};
use admissible_core::perm::{admissible_count, enumerate_admissible, Subject};
use admissible_core::{Kind, Nat, PermutationTable, Rule, Session, TameRelation};
use clap::ValueEnum;
use num_traits::One;

use crate::output::{Cell, Table};
use crate::{CliError, Result};

/// Named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// The `2^n` sums, `F(n, n)`, `max(G(n, n), G(n, n − 1))`, `inv_f` at `2^i − 1`.
    Identities,
    /// Fast paths against the brute-force oracles.
    Oracle,
    /// Exhaustive enumeration against the closed-form count.
    Count,
    /// Row round trips, row properties and the non-trim construction.
    Arrays,
    /// Fixed points, the `H` involution and two-cycle maximality.
    Structure,
    /// Consecutive tables and rows differ.
    Nonpersistence,
    /// Every suite.
    All,
}

impl Suite {
    /// Largest `n` the suite accepts and the default when none is given.
    pub fn bounds(self) -> (u32, u32) {
        match self {
            Suite::Identities => (1024, 64),
            Suite::Oracle => (oracle::MAX_PERM_N, 10),
            Suite::Count => (4, 3),
            Suite::Arrays => (10, 10),
            Suite::Structure => (12, 12),
            Suite::Nonpersistence => (11, 11),
            Suite::All => (1024, 0),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::Count => "count",
            Suite::Arrays => "arrays",
            Suite::Structure => "structure",
            Suite::Nonpersistence => "nonpersistence",
            Suite::All => "all",
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    /// Suite name.
    pub suite: &'static str,
    /// Check name.
    pub name: String,
    /// Outcome.
    pub passed: bool,
    /// What was compared.
    pub detail: String,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            suite: suite.name(),
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Runs `suite` up to resolution `n` (the suite default when `None`),
/// spreading independent resolutions over `jobs` threads.
pub fn run(suite: Suite, n: Option<u32>, jobs: usize) -> Result<Vec<Check>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in [
            Suite::Identities,
            Suite::Oracle,
            Suite::Count,
            Suite::Arrays,
            Suite::Structure,
            Suite::Nonpersistence,
        ] {
            let cap = n.map(|n| n.min(s.bounds().0));
            out.extend(run(s, cap, jobs)?);
        }
        return Ok(out);
    }
    let (max, default) = suite.bounds();
    let n = n.unwrap_or(default);
    if n == 0 || n > max {
        return Err(CliError::Usage(format!(
            "suite {} needs 1 <= n <= {max}, got {n}",
            suite.name()
        )));
    }
    let resolutions: Vec<u32> = (1..=n).collect();
    let per_n = |f: fn(&u32) -> Result<Vec<Check>>| -> Result<Vec<Check>> {
        Ok(parallel(jobs, &resolutions, f)?.into_iter().flatten().collect())
    };
    match suite {
        Suite::Identities => identities(n),
        Suite::Oracle => per_n(oracle_at),
        Suite::Count => count(n),
        Suite::Arrays => {
            let mut out = per_n(arrays_at)?;
            out.push(nontrim()?);
            Ok(out)
        }
        Suite::Structure => {
            let mut out = per_n(structure_at)?;
            for m in [3, 4].into_iter().filter(|&m| m <= n) {
                out.push(maximality(m)?);
            }
            Ok(out)
        }
        Suite::Nonpersistence => per_n(nonpersistence_at),
        Suite::All => unreachable!("handled above"),
    }
}

/// Applies `f` to every item on up to `jobs` threads, keeping input order.
/// Each call builds its own [`Session`].
pub fn parallel<T: Sync + Copy, R: Send>(
    jobs: usize,
    items: &[T],
    f: fn(&T) -> Result<R>,
) -> Result<Vec<R>> {
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let chunks: Vec<&[T]> = items.chunks(items.len().div_ceil(jobs)).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| scope.spawn(move || chunk.iter().map(f).collect::<Result<Vec<R>>>()))
            .collect();
        let mut out = Vec::new();
        for h in handles {
            out.extend(h.join().expect("worker panicked")?);
        }
        Ok(out)
    })
}

/// Renders checks as a table.
pub fn checks_table(checks: &[Check]) -> Table {
    let mut table = Table::new(vec!["suite", "check", "result", "detail"]);
    for c in checks {
        table.push(vec![
            Cell::Text(c.suite.into()),
            Cell::Text(c.name.clone()),
            Cell::Text(if c.passed { "PASS" } else { "FAIL" }.into()),
            Cell::Text(c.detail.clone()),
        ]);
    }
    table
}

/// One line per check: `suite/check: detail, PASS`.
pub fn checks_plain(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{}/{}: {}, {verdict}\n", c.suite, c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!(
        "{} checks, {failed} failed, {}\n",
        checks.len(),
        if failed == 0 { "PASS" } else { "FAIL" }
    ));
    out
}

fn pow2(n: u32) -> Nat {
    Nat::one() << n
}

fn identities(n: u32) -> Result<Vec<Check>> {
    let s = Session::new();
    let mut out = Vec::new();
    for rule in Rule::ALL {
        let bad: Vec<u32> = (1..=n)
            .filter(|&m| !s.verify_lower_bound_identity(Subject::Rule(rule), m))
            .collect();
        out.push(Check::new(
            Suite::Identities,
            format!("sum-{rule}"),
            bad.is_empty(),
            format!("1 + Σ {rule}(m, i) = 2^m for 1 <= m <= {n}; failures {bad:?}"),
        ));
    }
    let mut bad_f = Vec::new();
    let mut bad_g = Vec::new();
    for m in 2..=n {
        let half = pow2(m - 1);
        let mn = Nat::from(m);
        if s.f(m, &mn)? != half {
            bad_f.push(m);
        }
        let g = s.g(m, &mn)?.max(s.g(m, &Nat::from(m - 1))?);
        if g != half {
            bad_g.push(m);
        }
    }
    out.push(Check::new(
        Suite::Identities,
        "f-top",
        bad_f.is_empty(),
        format!("F(m, m) = 2^(m-1) for 2 <= m <= {n}; failures {bad_f:?}"),
    ));
    out.push(Check::new(
        Suite::Identities,
        "g-top",
        bad_g.is_empty(),
        format!("max(G(m, m), G(m, m-1)) = 2^(m-1) for 2 <= m <= {n}; failures {bad_g:?}"),
    ));
    let cap = n.min(64);
    let mut bad = Vec::new();
    for m in 1..=cap {
        for i in 1..=m {
            if s.inv_f(m, &(pow2(i) - 1u32))? != s.sbc(m, i)? {
                bad.push((m, i));
            }
        }
    }
    out.push(Check::new(
        Suite::Identities,
        "inv-f-sbc",
        bad.is_empty(),
        format!("inv_f(m, 2^i - 1) = SBC(m, i) for 1 <= i <= m <= {cap}; failures {bad:?}"),
    ));
    let mut total = 0;
    let mut failed = 0;
    for m in 1..=n.min(3) {
        for pi in enumerate_admissible(m)? {
            total += 1;
            if !s.verify_lower_bound_identity(Subject::Dense(&pi), m) {
                failed += 1;
            }
        }
    }
    out.push(Check::new(
        Suite::Identities,
        "sum-enumerated",
        failed == 0,
        format!("{total} enumerated permutations, {failed} failures"),
    ));
    Ok(out)
}

fn relations(sets: &OracleSets) -> Vec<(TameRelation, &[u64])> {
    let n = sets.n;
    let mut out = Vec::new();
    for kind in Kind::ALL {
        for i in 0..=n {
            if kind.is_pair() {
                for j in (0..=n).filter(|&j| j != i) {
                    let list = if kind == Kind::C1 { &sets.c1 } else { &sets.c1bar };
                    let rel = TameRelation::pair(kind, n, i, j).expect("valid indices");
                    out.push((rel, list[&(i, j)].as_slice()));
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
                let rel = TameRelation::single(kind, n, i).expect("valid index");
                out.push((rel, list[i as usize].as_slice()));
            }
        }
    }
    out
}

/// Compares one relation with its filtered list; returns the first mismatch.
pub fn relation_mismatch(s: &Session, rel: &TameRelation, list: &[u64]) -> Result<Option<String>> {
    let n = rel.n();
    if s.size(rel)? != Nat::from(list.len()) {
        return Ok(Some(format!("{rel:?}: size")));
    }
    let mut seen = 0u64;
    for x in 0..1u64 << n {
        let inside = list.binary_search(&x).is_ok();
        let xn = Nat::from(x);
        if s.member(rel, &xn)? != inside {
            return Ok(Some(format!("{rel:?}: member {x}")));
        }
        if x > 0 {
            seen += u64::from(inside);
            if s.card(rel, &xn)? != Nat::from(seen) {
                return Ok(Some(format!("{rel:?}: card {x}")));
            }
        }
    }
    for (t, &m) in list.iter().enumerate() {
        if s.enumerate(rel, &Nat::from(t + 1))? != Nat::from(m) {
            return Ok(Some(format!("{rel:?}: enumerate {}", t + 1)));
        }
    }
    Ok(None)
}

fn oracle_at(&n: &u32) -> Result<Vec<Check>> {
    let s = Session::new();
    let sets = oracle::oracle_sets(n)?;
    let rels = relations(&sets);
    let mut mismatch = None;
    for (rel, list) in &rels {
        mismatch = relation_mismatch(&s, rel, list)?;
        if mismatch.is_some() {
            break;
        }
    }
    let mut out = vec![Check::new(
        Suite::Oracle,
        format!("sets-n{n}"),
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("{} relations agree", rels.len())),
    )];
    let tables = [
        (Rule::F, oracle::oracle_f(n)?),
        (Rule::G, oracle::oracle_g(n)?),
        (Rule::H, oracle::oracle_h(n)?),
    ];
    for (rule, expected) in tables {
        let ok = s.dense(rule, n)? == expected;
        out.push(Check::new(
            Suite::Oracle,
            format!("{rule}-n{n}"),
            ok,
            format!("{rule} agrees with the oracle on {} atoms", 1u64 << n),
        ));
    }
    let mut bad = None;
    'outer: for j in 0..=n {
        let rel = TameRelation::single(Kind::B, n, j)?;
        for b in 1..1u64 << n {
            let b = Nat::from(b);
            if s.beta_rank(n, j, &b)? != s.card(&rel, &b)? {
                bad = Some((j, b));
                break 'outer;
            }
        }
    }
    out.push(Check::new(
        Suite::Oracle,
        format!("beta-n{n}"),
        bad.is_none(),
        match bad {
            Some((j, b)) => format!("beta_rank differs from card at j = {j}, b = {b}"),
            None => "beta_rank equals card on every weight class".into(),
        },
    ));
    Ok(out)
}

fn count(n: u32) -> Result<Vec<Check>> {
    (1..=n)
        .map(|m| {
            let mut seen = 0u64;
            let mut admissible = true;
            for pi in enumerate_admissible(m)? {
                seen += 1;
                admissible &= pi.is_admissible();
            }
            let expected = admissible_count(m)?;
            Ok(Check::new(
                Suite::Count,
                format!("n{m}"),
                admissible && Nat::from(seen) == expected,
                format!("{seen} admissible, expected {expected}"),
            ))
        })
        .collect()
}

fn arrays_at(&n: &u32) -> Result<Vec<Check>> {
    let s = Session::new();
    let mut out = Vec::new();
    let mut tables: Vec<(String, PermutationTable)> = Rule::ALL
        .iter()
        .map(|&rule| Ok((rule.to_string(), s.dense(rule, n)?.into())))
        .collect::<Result<_>>()?;
    if n <= 3 {
        for (idx, pi) in enumerate_admissible(n)?.enumerate() {
            tables.push((format!("#{idx}"), pi.into()));
        }
    }
    let mut failures = Vec::new();
    for (name, table) in &tables {
        let row = s.row_from_permutation(table)?;
        let report = s.verify_row(&row)?;
        let back = s.permutation_from_row(&row)?;
        if !report.passed() || back != *table {
            failures.push(name.clone());
        }
    }
    out.push(Check::new(
        Suite::Arrays,
        format!("round-trip-n{n}"),
        failures.is_empty(),
        format!("{} tables, failures {failures:?}", tables.len()),
    ));
    Ok(out)
}

/// The non-trim construction on the `F` row at resolution 6.
pub fn nontrim() -> Result<Check> {
    let s = Session::new();
    let row = s.row_from_permutation(&PermutationTable::Rule { rule: Rule::F, n: 6 })?;
    let w = s.find_swap_witness(&row)?;
    let built = s.build_nontrim(&row, &w)?;
    let report = s.verify_row(&built)?;
    let dependence = built.finest_bit_dependence(w.i1);
    let ok = built.resolution() == 7 && report.passed() && w.preserved(&row, &built) && dependence.is_some();
    Ok(Check::new(
        Suite::Arrays,
        "nontrim-n6",
        ok,
        format!(
            "witness {w:?}, resolution {}, row checks {}, finest-bit dependence at {dependence:?}",
            built.resolution(),
            if report.passed() { "pass" } else { "fail" }
        ),
    ))
}

fn structure_at(&n: &u32) -> Result<Vec<Check>> {
    let s = Session::new();
    let level = s.level(n)?;
    let g = s.dense(Rule::G, n)?;
    let h = s.dense(Rule::H, n)?;
    let step = |k: u64| level.istep(&Nat::from(k)).expect("k < 2^n");
    let expected: Vec<u64> = (0..1u64 << n)
        .filter(|&k| step(k) == k.count_ones())
        .collect();
    let mut bad = Vec::new();
    for k in 0..1u64 << n {
        let i = step(k);
        let j = k.count_ones();
        let paired = i == j || s.member(&TameRelation::pair(Kind::C1Bar, n, i, j)?, &Nat::from(k))?;
        if paired && h.get(h.get(k)) != k {
            bad.push(k);
        }
    }
    Ok(vec![
        Check::new(
            Suite::Structure,
            format!("g-fixed-n{n}"),
            g.fixed_points() == expected && h.fixed_points() == expected,
            format!("{} fixed points", expected.len()),
        ),
        Check::new(
            Suite::Structure,
            format!("h-involution-n{n}"),
            bad.is_empty(),
            format!("failures {bad:?}"),
        ),
    ])
}

/// Exhaustive two-cycle maximality of `H` at resolution `n <= 4`.
pub fn maximality(n: u32) -> Result<Check> {
    let s = Session::new();
    let h = s.dense(Rule::H, n)?;
    let target: BTreeSet<u64> = s.dense(Rule::G, n)?.fixed_points().into_iter().collect();
    let mut best = 0;
    let mut seen = 0u64;
    for pi in enumerate_admissible(n)? {
        seen += 1;
        if pi.fixed_points().into_iter().collect::<BTreeSet<_>>() == target {
            best = best.max(pi.two_cycles());
        }
    }
    Ok(Check::new(
        Suite::Structure,
        format!("h-maximal-n{n}"),
        best <= h.two_cycles(),
        format!(
            "H has {} two-cycles, best of {seen} permutations with the same fixed points {best}",
            h.two_cycles()
        ),
    ))
}

fn nonpersistence_at(&n: &u32) -> Result<Vec<Check>> {
    let s = Session::new();
    let mut out = Vec::new();
    for rule in Rule::ALL {
        let lower = PermutationTable::from(s.dense(rule, n)?);
        let upper = PermutationTable::from(s.dense(rule, n + 1)?);
        let table = s.nonpersistence_witness(&lower, &upper);
        let rows = s.row_nonpersistence(&s.row_from_permutation(&lower)?, &s.row_from_permutation(&upper)?);
        out.push(Check::new(
            Suite::Nonpersistence,
            format!("{rule}-n{n}"),
            table.is_ok() && rows.is_ok(),
            format!(
                "table witness {}, row witness {}",
                table.map_or_else(|e| e.to_string(), |k| format!("k = {k}")),
                rows.map_or_else(|e| e.to_string(), |(i, a)| format!("i = {i}, atom {a}"))
            ),
        ));
    }
    Ok(out)
}
