//! Brute-force oracles over the whole ballot universe of tiny grand sets.
//!
//! These do not use acceptance antichains or the per-item decomposition of
//! the exact solvers; they enumerate every voter, deduplicate the resulting
//! ballots and search families directly.

use std::collections::BTreeMap;

use crate::choice::{Ballot, QuasiChoice, Relation};
use crate::error::Error;
use crate::menu::{GrandSet, Menu};

/// Largest grand set the oracles enumerate (`2^(n²)` voters).
pub const ORACLE_MAX_N: usize = 3;

/// Every distinct ballot over `grand`, ordered by table contents.
pub fn ballot_universe(grand: &GrandSet) -> Result<Vec<Ballot>, Error> {
    let n = grand.len();
    if n > ORACLE_MAX_N {
        return Err(Error::GrandSetTooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let row_mask = (1u32 << n) - 1;
    let mut seen: BTreeMap<Vec<u32>, Ballot> = BTreeMap::new();
    for code in 0u32..1 << (n * n) {
        let rows = (0..n).map(|p| Menu(code >> (p * n) & row_mask)).collect();
        let ballot = Ballot::from_voter(
            Relation::from_dominators(grand.clone(), rows).expect("rows lie in the grand set"),
        );
        let key = ballot.choice().table().iter().map(|m| m.bits()).collect();
        seen.entry(key).or_insert(ballot);
    }
    Ok(seen.into_values().collect())
}

/// Bit index of every `(A, x)` with `x ∈ A`.
struct Pairs {
    index: Vec<[u8; ORACLE_MAX_N]>,
    count: usize,
}

impl Pairs {
    fn new(grand: &GrandSet) -> Pairs {
        let mut index = vec![[u8::MAX; ORACLE_MAX_N]; grand.menu_count()];
        let mut count = 0;
        for a in grand.menus() {
            for x in a {
                index[a.index()][x] = count as u8;
                count += 1;
            }
        }
        Pairs { index, count }
    }

    fn encode(&self, c: &QuasiChoice) -> u64 {
        let mut bits = 0u64;
        for a in c.grand().menus() {
            for x in c.get(a) {
                bits |= 1 << self.index[a.index()][x];
            }
        }
        bits
    }
}

/// Smallest liberal family size found among families of at most `kmax`
/// ballots, or `None`.
///
/// Only ballots choosing inside `c` can take part; the search is an exact
/// cover by union, branching on the lowest uncovered `(A, x)`.
pub fn oracle_lib(c: &QuasiChoice, kmax: usize) -> Result<Option<usize>, Error> {
    let universe = ballot_universe(c.grand())?;
    let pairs = Pairs::new(c.grand());
    let target = pairs.encode(c);
    let mut admissible: Vec<u64> = universe
        .iter()
        .map(|b| pairs.encode(b.choice()))
        .filter(|&v| v & !target == 0)
        .collect();
    admissible.sort_unstable();
    admissible.dedup();
    if admissible.iter().fold(0, |acc, v| acc | v) != target {
        return Ok(None);
    }
    fn cover(admissible: &[u64], target: u64, covered: u64, left: usize) -> bool {
        if covered == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        let missing = (target & !covered).trailing_zeros();
        admissible
            .iter()
            .filter(|&&v| v >> missing & 1 == 1)
            .any(|&v| cover(admissible, target, covered | v, left - 1))
    }
    Ok((1..=kmax).find(|&k| cover(&admissible, target, 0, k)))
}

/// Smallest democratic family size among multisets of at most `kmax`
/// ballots, or `None`.
pub fn oracle_dem(c: &QuasiChoice, kmax: usize) -> Result<Option<usize>, Error> {
    let universe = ballot_universe(c.grand())?;
    let pairs = Pairs::new(c.grand());
    let target = pairs.encode(c);
    let ballots: Vec<u64> = universe.iter().map(|b| pairs.encode(b.choice())).collect();

    struct Dfs<'a> {
        ballots: &'a [u64],
        target: u64,
        pairs: usize,
        threshold: u8,
        counts: Vec<u8>,
    }

    impl Dfs<'_> {
        fn run(&mut self, start: usize, left: usize) -> bool {
            for i in 0..self.pairs {
                let wanted = self.target >> i & 1 == 1;
                let have = self.counts[i];
                if wanted && (have as usize + left) < self.threshold as usize {
                    return false;
                }
                if !wanted && have >= self.threshold {
                    return false;
                }
            }
            if left == 0 {
                return true;
            }
            for j in start..self.ballots.len() {
                let v = self.ballots[j];
                self.bump(v, 1);
                let ok = self.run(j, left - 1);
                self.bump(v, -1);
                if ok {
                    return true;
                }
            }
            false
        }

        fn bump(&mut self, v: u64, delta: i8) {
            for i in 0..self.pairs {
                if v >> i & 1 == 1 {
                    self.counts[i] = self.counts[i].wrapping_add_signed(delta);
                }
            }
        }
    }

    for k in 1..=kmax {
        let mut dfs = Dfs {
            ballots: &ballots,
            target,
            pairs: pairs.count,
            threshold: (k / 2 + 1) as u8,
            counts: vec![0; pairs.count],
        };
        if dfs.run(0, k) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
