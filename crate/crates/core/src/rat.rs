//! Exact number types and small helpers used everywhere else.
//!
//! All exact paths run on arbitrary-precision integers and rationals;
//! nothing here is allowed to overflow or round.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer as an exact rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Integer as an exact rational, from an unsigned.
pub fn rat_u(n: u64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// num/den as an exact rational. Panics on den = 0.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// w^k for signed k (k < 0 requires w != 0).
pub fn rat_pow(w: &Rat, k: i64) -> Rat {
    if k >= 0 {
        let mut acc = Rat::one();
        for _ in 0..k {
            acc *= w;
        }
        acc
    } else {
        Rat::one() / rat_pow(w, -k)
    }
}

/// n^a as an exact rational for integer a (negative a gives 1/n^|a|).
pub fn int_pow(n: u64, a: i32) -> Rat {
    rat_pow(&rat_u(n), a as i64)
}

/// Renders a rational as `"p"` when the denominator is 1 and `"p/q"` otherwise.
/// Matches the on-disk format for matrices, reports and custom function files.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optionally signed) into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || {
        Error::Parse(format!(
            "`{s}` is not a rational literal like `-6` or `3/5`"
        ))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let num: Int = num.trim().parse().map_err(|_| mk_err())?;
            let den: Int = den.trim().parse().map_err(|_| mk_err())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("`{s}` has a zero denominator")));
            }
            Ok(Rat::new(num, den))
        }
        None => {
            let num: Int = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(num))
        }
    }
}

/// Lossy conversion for the complex-path mirrors of exact identities.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts; desk-scale values never hit this.
        let n = r
            .numer()
            .to_f64()
            .unwrap_or(f64::MAX * r.numer().signum().to_f64().unwrap());
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}
