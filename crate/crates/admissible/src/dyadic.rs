//! Dyadic rationals `num/2^exp`, written either as `3/2^2` or `3/4`.

use std::fmt;
use std::str::FromStr;

use admissible_core::Nat;
use num_traits::{One, Zero};

use crate::CliError;

/// A probe `x = num / 2^exp` in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    num: Nat,
    exp: u32,
}

impl Dyadic {
    /// `num / 2^exp`, which must lie strictly between 0 and 1.
    pub fn new(num: Nat, exp: u32) -> Result<Self, CliError> {
        if num.is_zero() || num >= (Nat::one() << exp) {
            return Err(CliError::Usage(format!("{num}/2^{exp} is not in (0, 1)")));
        }
        Ok(Dyadic { num, exp })
    }

    /// Numerator.
    pub fn num(&self) -> &Nat {
        &self.num
    }

    /// Exponent of the denominator.
    pub fn exp(&self) -> u32 {
        self.exp
    }

    /// `⌊x · 2^n⌋`.
    pub fn atom(&self, n: u32) -> Nat {
        if n >= self.exp {
            &self.num << (n - self.exp)
        } else {
            &self.num >> (self.exp - n)
        }
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        let bits = self.num.bits();
        let shift = bits.saturating_sub(53);
        let top = (&self.num >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.exp as i32)
    }
}

impl FromStr for Dyadic {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("{s:?} is not a dyadic rational num/2^exp"));
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        let num: Nat = num.trim().parse().map_err(|_| bad())?;
        let den = den.trim();
        let exp = if let Some(e) = den.strip_prefix("2^") {
            e.parse::<u32>().map_err(|_| bad())?
        } else {
            let d: Nat = den.parse().map_err(|_| bad())?;
            if d.is_zero() || d.count_ones() != 1 {
                return Err(bad());
            }
            (d.bits() - 1) as u32
        };
        Dyadic::new(num, exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let x: Dyadic = "3686/2^12".parse().unwrap();
        assert_eq!(x, "3686/4096".parse().unwrap());
        assert_eq!(x.atom(12), Nat::from(3686u32));
        assert_eq!(x.atom(13), Nat::from(7372u32));
        assert_eq!(x.atom(11), Nat::from(1843u32));
        assert!((x.to_f64() - 0.89990234375).abs() < 1e-15);
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("0.5".parse::<Dyadic>().is_err());
        assert!("4/4".parse::<Dyadic>().is_err());
        assert!("0/2^3".parse::<Dyadic>().is_err());
    }
}
