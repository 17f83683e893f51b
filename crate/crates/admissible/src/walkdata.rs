//! The raw walk `S_n` and its sorted rearrangement `S*_n` on dyadic atoms.

use admissible_core::{DyadicIndex, Nat, Session};

use crate::output::{Cell, Table};
use crate::{CliError, Result};

/// Largest resolution for a full grid.
pub const MAX_WALK_N: u32 = 20;

/// Rows `k, left_endpoint, walk_value, quantile_value` for `k < 2^n`.
pub fn walk_table(session: &Session, n: u32) -> Result<Table> {
    if n == 0 || n > MAX_WALK_N {
        return Err(CliError::Usage(format!(
            "walkdata needs 1 <= n <= {MAX_WALK_N}, got {n}"
        )));
    }
    let level = session.level(n)?;
    let mut table = Table::new(vec!["k", "left_endpoint", "walk_value", "quantile_value"]);
    for k in 0..1u64 << n {
        let k = Nat::from(k);
        let left = DyadicIndex::new(n, k.clone())?.left_endpoint_decimal();
        table.push(vec![
            Cell::int(&k),
            Cell::Text(left),
            Cell::int(level.walk_value(&k)?),
            Cell::int(level.quantile_value(&k)?),
        ]);
    }
    Ok(table)
}
