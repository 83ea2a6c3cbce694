//! Exact densities.
//!
//! Farness parameters and edge densities are carried as reduced fractions so
//! that every certificate inequality is decided in integer arithmetic.

use num_rational::Ratio;

use crate::error::{invalid, Result};

pub type Density = Ratio<u64>;

/// Parses `"p/q"`, an integer, or a decimal such as `"0.15"`.
///
/// Decimals are converted exactly with denominator `10^digits`.
pub fn parse_density(s: &str) -> Result<Density> {
    let s = s.trim();
    let bad = || invalid(format!("cannot parse density {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(invalid("density denominator is zero"));
        }
        return Ok(Ratio::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if frac.len() > 18 {
        return Err(invalid(format!("too many decimal digits in {s:?}")));
    }
    let den = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let frac: u64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    let num = int
        .checked_mul(den)
        .and_then(|x| x.checked_add(frac))
        .ok_or_else(bad)?;
    Ok(Ratio::new(num, den))
}

pub fn to_f64(d: Density) -> f64 {
    *d.numer() as f64 / *d.denom() as f64
}

/// `count >= factor * d * scale`, decided exactly.
pub fn count_at_least(count: u64, factor: u64, d: Density, scale: u64) -> bool {
    u128::from(count) * u128::from(*d.denom())
        >= u128::from(factor) * u128::from(*d.numer()) * u128::from(scale)
}

/// `ceil(d * x)`.
pub fn ceil_mul(d: Density, x: u64) -> u64 {
    let num = u128::from(*d.numer()) * u128::from(x);
    num.div_ceil(u128::from(*d.denom())) as u64
}

/// `|B| / n^2` as an exact fraction.
pub fn edge_density(edges: usize, n: usize) -> Density {
    if n == 0 {
        return Ratio::from_integer(0);
    }
    Ratio::new(edges as u64, (n as u64) * (n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_density("1/9").unwrap(), Ratio::new(1, 9));
        assert_eq!(parse_density("0.15").unwrap(), Ratio::new(3, 20));
        assert_eq!(parse_density(".5").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_density("1").unwrap(), Ratio::from_integer(1));
        assert!(parse_density("1/0").is_err());
        assert!(parse_density("abc").is_err());
        assert!(parse_density("-0.1").is_err());
        assert!(parse_density(".").is_err());
    }

    #[test]
    fn exact_comparisons() {
        // 2 * (1/18) * 36 = 4
        assert!(count_at_least(4, 2, Ratio::new(1, 18), 36));
        assert!(!count_at_least(3, 2, Ratio::new(1, 18), 36));
        assert_eq!(ceil_mul(Ratio::new(1, 64), 6), 1);
        assert_eq!(ceil_mul(Ratio::new(1, 3), 9), 3);
        assert_eq!(ceil_mul(Ratio::new(1, 3), 10), 4);
    }
}
