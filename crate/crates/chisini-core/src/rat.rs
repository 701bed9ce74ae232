//! Arbitrary-precision rational scalars.
//!
//! `BigRat` is the coefficient domain of the whole crate. `num`'s
//! `BigRational` already maintains the invariants we need (reduced
//! fraction, positive denominator), so we use it directly and add the
//! exact string forms the file formats and the CLI rely on.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type BigRat = BigRational;

pub fn rat_i64(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical exact string: `p` when the denominator is 1, else `p/q`.
pub fn rat_to_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn rat_from_string(s: &str) -> Result<BigRat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer `{num}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid integer `{den}`"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRat::new(n, d))
}

/// Nonnegative integer value, if the rational is one.
pub fn rat_as_usize(r: &BigRat) -> Option<usize> {
    if r.denom().is_one() && !r.is_negative() {
        use num::ToPrimitive;
        r.numer().to_usize()
    } else {
        None
    }
}
