//! Exact state-count bounds and the resulting bounds on minimum state counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow};

use super::cc::build_cc;
use crate::error::Error;
use crate::grid::Config;
use crate::mft::{mft_localmap, t_tilde, Limits};
use crate::variation::Variation;

/// States of the 6-state path solution and the 296-state region solution
/// that the bounds below are multiplied with.
pub const PATH_WRAPPER: u32 = 6;
pub const REGION_WRAPPER: u32 = 296;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateBoundKind {
    RegLm,
    GpathLm,
    PathLm,
    RefGpath,
    RefPath,
    /// Consistency checking with n distinct automata.
    Cc(u32),
}

impl fmt::Display for StateBoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateBoundKind::RegLm => f.write_str("reg-lm"),
            StateBoundKind::GpathLm => f.write_str("gpath-lm"),
            StateBoundKind::PathLm => f.write_str("path-lm"),
            StateBoundKind::RefGpath => f.write_str("ref-gpath"),
            StateBoundKind::RefPath => f.write_str("ref-path"),
            StateBoundKind::Cc(n) => write!(f, "cc:{n}"),
        }
    }
}

impl FromStr for StateBoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "reg-lm" => StateBoundKind::RegLm,
            "gpath-lm" => StateBoundKind::GpathLm,
            "path-lm" => StateBoundKind::PathLm,
            "ref-gpath" => StateBoundKind::RefGpath,
            "ref-path" => StateBoundKind::RefPath,
            _ => match s.strip_prefix("cc:").and_then(|n| n.parse().ok()) {
                Some(n) if n >= 1 => StateBoundKind::Cc(n),
                _ => return Err(Error::Precondition(format!("unknown bound kind `{s}`"))),
            },
        })
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// 1 + 4 + ... + 4^T
fn geometric4(t: u32) -> BigUint {
    (pow2(2 * (t as u64 + 1)) - 1u32) / 3u32
}

/// (T + 1)(2T + 1)^2, the count of (time, position) pairs.
fn frame(t: u32) -> BigUint {
    let t = t as u64;
    big(t + 1) * big(2 * t + 1).pow(2u32)
}

/// C(T', T'/2) for even T', C(T', (T'-1)/2) for odd, with T' = floor(T/2).
fn central(t: u32) -> BigUint {
    let tp = (t / 2) as u64;
    let k = if tp.is_multiple_of(2) { tp / 2 } else { (tp - 1) / 2 };
    binomial(big(tp), big(k))
}

/// ceil(2^(e/3))
fn ceil_cbrt_pow2(e: u64) -> BigUint {
    if e.is_multiple_of(3) {
        return pow2(e / 3);
    }
    let n = pow2(e);
    let root = n.cbrt();
    if &root * &root * &root == n {
        root
    } else {
        root + 1u32
    }
}

/// (lower, upper) on the number of states; the lower bound exists only for
/// the local-map kinds.
pub fn state_bounds(t: u32, kind: StateBoundKind) -> (Option<BigUint>, BigUint) {
    let tt = t as u64;
    match kind {
        StateBoundKind::RegLm => {
            let side = 2 * tt + 1;
            let upper = frame(t) * pow2(16 * side * side) + 1u32;
            let d = tt.abs_diff(3);
            (Some(ceil_cbrt_pow2(d * d)), upper)
        }
        StateBoundKind::GpathLm => {
            let upper = frame(t) * geometric4(t).pow(2u32) * big(256) + 1u32;
            (Some(central(t).pow(2u32)), upper)
        }
        StateBoundKind::PathLm => {
            let upper = frame(t) * geometric4(t) * big(16) + 1u32;
            (Some(central(t)), upper)
        }
        StateBoundKind::RefGpath => (None, big(4 * tt + 8)),
        StateBoundKind::RefPath => (None, big(tt + 2)),
        StateBoundKind::Cc(n) => (None, BigUint::from(4u32).pow(n) * big(tt + 2)),
    }
}

/// The exponent (4^(T+1) - 1)^2 / 9 of the worst-case consistency-checking
/// bound 4^exponent (T + 2), whose value is far too large to expand.
pub fn cc_worst_case_exponent(t: u32) -> BigUint {
    geometric4(t).pow(2u32)
}

/// `<d.dddd>e<exp>` with the mantissa truncated to five significant digits,
/// followed by the exact value in parentheses when it is at most 10^24.
pub fn format_big(n: &BigUint) -> String {
    let digits = n.to_str_radix(10);
    let exp = digits.len() - 1;
    let mut mant: String = digits.chars().take(5).collect();
    while mant.len() < 5 {
        mant.push('0');
    }
    let sci = format!("{}.{}e{exp}", &mant[..1], &mant[1..]);
    if *n <= BigUint::from(10u32).pow(24u32) {
        format!("{sci} ({digits})")
    } else {
        sci
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MssBound {
    pub value: BigUint,
    /// Which construction gives the bound.
    pub via: String,
}

/// Smallest applicable bound on the minimum state count of a solution
/// firing `c` at its minimum firing time.
pub fn mss_upper(c: &Config, gamma: Variation, limits: &Limits) -> Result<MssBound, Error> {
    let t = mft_localmap(c, gamma, limits)?.value;
    let Config::Path(p) = c else {
        let (_, upper) = state_bounds(t, StateBoundKind::RegLm);
        return Ok(MssBound { value: upper * REGION_WRAPPER, via: "reg-lm".into() });
    };
    let six = |n: BigUint| n * PATH_WRAPPER;
    let lm = if gamma == Variation::TwoPath { StateBoundKind::PathLm } else { StateBoundKind::GpathLm };
    let mut candidates = vec![(six(state_bounds(t, lm).1), lm.to_string())];
    if gamma == Variation::TwoPath {
        candidates.push((six(big(t as u64 + 2)), "two-path".into()));
    }
    let (tt, _) = t_tilde(p);
    if tt == t {
        candidates.push((six(state_bounds(tt, StateBoundKind::RefGpath).1), "ref".into()));
    }
    match build_cc(c, gamma, limits) {
        Ok(spec) => candidates.push((six(spec.state_count), format!("cc:{}", spec.automata.len()))),
        Err(Error::BudgetExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let (value, via) = candidates.into_iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap();
    Ok(MssBound { value, via })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_arithmetic() {
        assert_eq!(state_bounds(30, StateBoundKind::Cc(6)).1, big(131_072));
        assert_eq!(state_bounds(30, StateBoundKind::Cc(6)).1 * PATH_WRAPPER, big(786_432));
        assert_eq!(state_bounds(30, StateBoundKind::RefGpath).1 * PATH_WRAPPER, big(768));
        let (lo, _) = state_bounds(30, StateBoundKind::GpathLm);
        assert_eq!(lo.unwrap() * PATH_WRAPPER, big(248_455_350));
        let (lo, hi) = state_bounds(20, StateBoundKind::RegLm);
        assert!(format_big(&(lo.unwrap() * REGION_WRAPPER)).starts_with("2.9547e31"));
        assert_eq!(format_big(&(hi * REGION_WRAPPER)), "3.3253e8103");
    }

    #[test]
    fn formatting() {
        assert_eq!(format_big(&big(128)), "1.2800e2 (128)");
        assert_eq!(format_big(&big(0)), "0.0000e0 (0)");
        assert_eq!(format_big(&big(786_432)), "7.8643e5 (786432)");
    }

    #[test]
    fn cube_root_ceiling() {
        assert_eq!(ceil_cbrt_pow2(9), big(8));
        assert_eq!(ceil_cbrt_pow2(4), big(3));
        assert_eq!(ceil_cbrt_pow2(1), big(2));
    }

    #[test]
    fn kinds_parse() {
        for s in ["reg-lm", "gpath-lm", "path-lm", "ref-gpath", "ref-path", "cc:6"] {
            assert_eq!(s.parse::<StateBoundKind>().unwrap().to_string(), s);
        }
        assert!("cc:0".parse::<StateBoundKind>().is_err());
    }

    #[test]
    fn worst_case_exponent() {
        assert_eq!(cc_worst_case_exponent(0), big(1));
        assert_eq!(cc_worst_case_exponent(1), big(25));
    }
}
