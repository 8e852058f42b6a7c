//! Sperner, relative and asymptotic bounds on the representation numbers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::dem::{dem_number, DemLimits, DemResult};
use super::{lib_number, LibNumber};
use crate::choice::QuasiChoice;
use crate::error::Error;

/// `n choose k` in exact arithmetic (`0` when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Largest antichain in the subsets of the other `n − 1` items,
/// `C(n−1, ⌊(n−1)/2⌋)`: the tight ceiling on `lib(c)` over `n` items.
pub fn sperner_bound(n: u64) -> BigUint {
    assert!(n >= 1, "grand sets are nonempty");
    binomial(n - 1, (n - 1) / 2)
}

/// `sperner_bound(n) / (2^n / √n)`.
///
/// The ratio `C(n−1, ⌊(n−1)/2⌋) / 2^n` is formed from exact integers and
/// divided once; only the `√n` factor is floating point. The limit is
/// `√(2/π) / 2 ≈ 0.399`.
pub fn asymptotic_ratio(n: u64) -> f64 {
    let num = sperner_bound(n);
    let den = BigUint::one() << n;
    let ratio = num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY);
    ratio * (n as f64).sqrt()
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub n: usize,
    pub lib: LibNumber,
    /// `None` when the grand set is above the democratic solver's limit.
    pub dem: Option<DemResult>,
    pub sperner_bound: BigUint,
    /// `lib ≤ sperner_bound`, or `None` when `lib` is infinite.
    pub lib_within_sperner: Option<bool>,
    /// `dem ≤ 2·lib`, when both are exact.
    pub dem_at_most_twice_lib: Option<bool>,
    /// `lib ≤ 2^(dem−1)`, when both are exact.
    pub lib_at_most_pow_dem: Option<bool>,
    pub asymptotic_ratio: f64,
}

pub fn bounds_report(c: &QuasiChoice, limits: &DemLimits) -> Result<BoundsReport, Error> {
    let n = c.n();
    let lib = lib_number(c);
    let dem = match dem_number(c, limits) {
        Ok(r) => Some(r),
        Err(Error::GrandSetTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    let bound = sperner_bound(n as u64);
    let lib_within_sperner = lib.finite().map(|l| BigUint::from(l) <= bound);
    let both = match (lib.finite(), dem.as_ref().and_then(|d| d.number.exact())) {
        (Some(l), Some(d)) => Some((l, d)),
        _ => None,
    };
    Ok(BoundsReport {
        n,
        lib,
        dem,
        sperner_bound: bound,
        lib_within_sperner,
        dem_at_most_twice_lib: both.map(|(l, d)| d <= 2 * l),
        lib_at_most_pow_dem: both.map(|(l, d)| (l as u128) <= 1u128 << (d - 1).min(127)),
        asymptotic_ratio: asymptotic_ratio(n as u64),
    })
}
