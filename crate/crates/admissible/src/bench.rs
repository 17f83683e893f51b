//! Wall-clock timing of `F`, `G`, `H` at random atoms.

use std::time::Instant;

use admissible_core::{Nat, Rule, Session};
use num_bigint::RandBigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::output::{Cell, Table};
use crate::Result;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Median time of one rule at one resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Timing {
    /// Rule timed.
    pub rule: Rule,
    /// Resolution.
    pub n: u32,
    /// Number of timed evaluations.
    pub samples: usize,
    /// Median wall time in seconds.
    pub median: f64,
    /// `median / median(n/2)` when `n/2` was also timed.
    pub ratio: Option<f64>,
}

/// Times `samples` evaluations per `(rule, n)`, each in a fresh session so
/// that per-resolution setup is included. Atoms are drawn from ChaCha8
/// seeded with `seed`.
pub fn run(rules: &[Rule], ns: &[u32], samples: usize, seed: u64) -> Result<Vec<Timing>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Timing> = Vec::new();
    for &rule in rules {
        for &n in ns {
            let bound = Nat::one() << n;
            let mut times = Vec::with_capacity(samples);
            for _ in 0..samples.max(1) {
                let k = rng.gen_biguint_below(&bound);
                let session = Session::new();
                let start = Instant::now();
                session.apply(rule, n, &k)?;
                times.push(start.elapsed().as_secs_f64());
            }
            times.sort_by(f64::total_cmp);
            let median = times[times.len() / 2];
            let ratio = out
                .iter()
                .find(|t| t.rule == rule && 2 * t.n == n)
                .map(|t| median / t.median);
            out.push(Timing {
                rule,
                n,
                samples: times.len(),
                median,
                ratio,
            });
        }
    }
    Ok(out)
}

/// Tabulates timings.
pub fn bench_table(timings: &[Timing]) -> Table {
    let mut table = Table::new(vec!["rule", "n", "samples", "median_seconds", "doubling_ratio"]);
    for t in timings {
        table.push(vec![
            Cell::Text(t.rule.to_string()),
            Cell::int(t.n),
            Cell::int(t.samples),
            Cell::Float(t.median),
            t.ratio.map_or(Cell::Text(String::new()), Cell::Float),
        ]);
    }
    table
}
