//! `S*_n(x) / √n` against the standard normal quantile `Φ⁻¹(x)`.

use admissible_core::Session;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::dyadic::Dyadic;
use crate::output::{Cell, Table};
use crate::Result;

/// One comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    /// Resolution.
    pub n: u32,
    /// The point `x`.
    pub x: Dyadic,
    /// `S*_n(x)`, exact.
    pub quantile_value: i64,
    /// `S*_n(x) / √n`.
    pub scaled: f64,
    /// `Φ⁻¹(x)`.
    pub normal: f64,
}

impl Probe {
    /// `|S*_n(x)/√n − Φ⁻¹(x)|`.
    pub fn error(&self) -> f64 {
        (self.scaled - self.normal).abs()
    }
}

/// `Φ⁻¹(x)`.
pub fn normal_quantile(x: f64) -> f64 {
    Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(x)
}

/// Every `(n, x)` combination, `n` outermost.
pub fn probes(session: &Session, ns: &[u32], xs: &[Dyadic]) -> Result<Vec<Probe>> {
    let mut out = Vec::new();
    for &n in ns {
        let level = session.level(n)?;
        for x in xs {
            let q = level.quantile_value(&x.atom(n))?;
            out.push(Probe {
                n,
                x: x.clone(),
                quantile_value: q,
                scaled: q as f64 / f64::from(n).sqrt(),
                normal: normal_quantile(x.to_f64()),
            });
        }
    }
    Ok(out)
}

/// Tabulates [`probes`].
pub fn converge_table(session: &Session, ns: &[u32], xs: &[Dyadic]) -> Result<Table> {
    let mut table = Table::new(vec![
        "n",
        "x",
        "quantile_value",
        "scaled",
        "normal_quantile",
        "abs_error",
    ]);
    for p in probes(session, ns, xs)? {
        table.push(vec![
            Cell::int(p.n),
            Cell::Text(p.x.to_string()),
            Cell::int(p.quantile_value),
            Cell::Float(p.scaled),
            Cell::Float(p.normal),
            Cell::Float(p.error()),
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_reference_values() {
        assert!(normal_quantile(0.5).abs() < 1e-12);
        assert!((normal_quantile(0.75) - 0.674_489_750_196_081_7).abs() < 1e-9);
        assert!((normal_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-9);
    }

    #[test]
    fn half_sits_at_zero_or_one_step() {
        let s = Session::new();
        let half: Dyadic = "1/2".parse().unwrap();
        for n in [10u32, 11, 64, 65] {
            let p = &probes(&s, &[n], std::slice::from_ref(&half)).unwrap()[0];
            assert!(p.quantile_value == 0 || p.quantile_value == 1, "{n}");
        }
    }
}
