//! Exact rational thresholds in `[0, 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// A reduced fraction `num/den` with `0 <= num/den < 1`.
///
/// All majority tests are cross-multiplied in `u128`; no floating point is
/// involved anywhere a share is compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Share {
    num: u64,
    den: u64,
}

impl Share {
    pub const ZERO: Share = Share { num: 0, den: 1 };
    pub const HALF: Share = Share { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Share, Error> {
        if den == 0 || num >= den {
            return Err(Error::InvalidShare(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Share {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `count / k > self`, decided as `count * den > num * k`.
    #[inline]
    pub fn exceeded_by(self, count: u64, k: u64) -> bool {
        count as u128 * self.den as u128 > self.num as u128 * k as u128
    }
}

impl PartialOrd for Share {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Share {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Share {
    type Err = Error;

    /// Accepts `p/q` or a bare integer (only `0` is in range). Decimal
    /// literals are rejected.
    fn from_str(s: &str) -> Result<Share, Error> {
        let bad = || Error::InvalidShare(s.to_string());
        let digits = |t: &str| -> Result<u64, Error> {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((p, q)) => Share::new(digits(p)?, digits(q)?).map_err(|_| bad()),
            None => Share::new(digits(s)?, 1).map_err(|_| bad()),
        }
    }
}
