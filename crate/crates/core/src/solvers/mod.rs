//! Exact liberal and democratic numbers, validation oracles and bounds.

mod bounds;
mod dem;
mod oracle;

use std::fmt;

use rayon::prelude::*;

use crate::axioms::check_alpha;
use crate::choice::QuasiChoice;
use crate::menu::Menu;

pub use bounds::{asymptotic_ratio, binomial, bounds_report, sperner_bound, BoundsReport};
pub use dem::{dem_number, DemLimits, DemNumber, DemResult};
pub use oracle::{ballot_universe, oracle_dem, oracle_lib, ORACLE_MAX_N};

/// The ⊆-maximal menus from which `item` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptanceAntichain {
    pub item: usize,
    /// Pairwise ⊆-incomparable, increasing menu index.
    pub maximal_menus: Vec<Menu>,
}

impl AcceptanceAntichain {
    pub fn len(&self) -> usize {
        self.maximal_menus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_menus.is_empty()
    }
}

/// One antichain per item.
///
/// Maximality is decided against all supersets, not only one-item
/// extensions, so the result is correct whether or not α holds.
pub fn acceptance_antichains(c: &QuasiChoice) -> Vec<AcceptanceAntichain> {
    (0..c.n())
        .into_par_iter()
        .map(|p| AcceptanceAntichain {
            item: p,
            maximal_menus: maximal_accepting(c, p),
        })
        .collect()
}

fn maximal_accepting(c: &QuasiChoice, p: usize) -> Vec<Menu> {
    let n = c.n();
    let size = c.grand().menu_count();
    // reach[s]: p is chosen from s or from some superset of s
    let mut reach = vec![false; size];
    for s in (0..size).rev() {
        let menu = Menu(s as u32);
        reach[s] =
            c.chooses(menu, p) || (0..n).any(|q| !menu.contains(q) && reach[menu.with(q).index()]);
    }
    c.grand()
        .menus()
        .filter(|&a| c.chooses(a, p) && (0..n).all(|q| a.contains(q) || !reach[a.with(q).index()]))
        .collect()
}

/// A representation size: finite, or infinite when α fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LibNumber {
    Finite(usize),
    Infinite,
}

impl LibNumber {
    pub fn finite(self) -> Option<usize> {
        match self {
            LibNumber::Finite(k) => Some(k),
            LibNumber::Infinite => None,
        }
    }
}

impl fmt::Display for LibNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LibNumber::Finite(k) => write!(f, "{k}"),
            LibNumber::Infinite => write!(f, "∞"),
        }
    }
}

/// Size of the smallest liberal family: `max(1, max_p |𝒜_p|)`.
///
/// Upper bound: [`crate::synth_liberal`] has exactly that many ballots. Lower
/// bound: if one ballot chose `p` from two distinct maximal menus of `𝒜_p`,
/// γ on the ballot would make it (and hence `c`) choose `p` from their
/// union, contradicting maximality.
pub fn lib_number(c: &QuasiChoice) -> LibNumber {
    if check_alpha(c).is_err() {
        return LibNumber::Infinite;
    }
    let widest = acceptance_antichains(c)
        .iter()
        .map(AcceptanceAntichain::len)
        .max()
        .unwrap_or(0);
    LibNumber::Finite(widest.max(1))
}
