//! Verification and synthesis of share-`s` majoritarian ballot families.
//!
//! A family `v_1..v_k` represents `c` at share `s` when, for every menu `A`
//! and item `x ∈ A`, `x ∈ c(A)` iff `|{i : x ∈ v_i(A)}| / k > s`. Share `0`
//! is the liberal case (union of ballots) and share `1/2` the democratic one
//! (strict majority).

use num_integer::Integer;
use rayon::prelude::*;

use crate::axioms::check_alpha;
use crate::choice::{Ballot, BallotFamily, QuasiChoice, Relation};
use crate::error::Error;
use crate::menu::Menu;
use crate::share::Share;
use crate::solvers::acceptance_antichains;

/// Default ceiling on the number of ballots a synthesis may produce.
pub const DEFAULT_SIZE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `x ∈ c(A)` but the endorsement count is too low.
    ShouldBeChosen,
    /// `x ∉ c(A)` but the endorsement count clears the threshold.
    ShouldBeRejected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Verified,
    Counterexample {
        menu: Menu,
        item: usize,
        count: u64,
        k: u64,
        direction: Direction,
    },
}

impl VerifyOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, VerifyOutcome::Verified)
    }
}

/// Checks the majority biconditional on every menu and every item of it.
///
/// Items outside `A` are skipped: both sides are false there. The first
/// counterexample in (menu index, item) order is reported.
pub fn verify(c: &QuasiChoice, family: &BallotFamily, s: Share) -> Result<VerifyOutcome, Error> {
    if !c.grand().compatible(family.grand()) {
        return Err(Error::MismatchedGrandSets);
    }
    let groups = family.grouped();
    let k = family.len() as u64;
    let n = c.n();
    let outcome = (0..c.grand().menu_count() as u32)
        .into_par_iter()
        .find_map_first(|bits| {
            let menu = Menu(bits);
            let mut counts = [0u64; 32];
            for (ballot, mult) in &groups {
                for x in ballot.get(menu) {
                    counts[x] += mult;
                }
            }
            (0..n).filter(|&x| menu.contains(x)).find_map(|x| {
                let chosen = c.chooses(menu, x);
                (chosen != s.exceeded_by(counts[x], k)).then_some(VerifyOutcome::Counterexample {
                    menu,
                    item: x,
                    count: counts[x],
                    k,
                    direction: if chosen {
                        Direction::ShouldBeChosen
                    } else {
                        Direction::ShouldBeRejected
                    },
                })
            })
        });
    Ok(outcome.unwrap_or(VerifyOutcome::Verified))
}

/// Liberal family built from the ⊆-maximal acceptance menus of each item.
///
/// Ballot `j` keeps item `p` in `B` iff `B ⊆ C_p`, where `C_p` is the `j`-th
/// maximal menu from which `p` is chosen (the last one once the list runs
/// out). Items never chosen get a self-loop. The family has
/// `max(1, max_p |𝒜_p|)` members and is the smallest liberal family.
pub fn synth_liberal(c: &QuasiChoice) -> Result<BallotFamily, Error> {
    check_alpha(c).map_err(Error::AlphaViolated)?;
    let antichains = acceptance_antichains(c);
    let size = antichains
        .iter()
        .map(|a| a.maximal_menus.len())
        .max()
        .unwrap_or(0)
        .max(1);
    let full = c.grand().full();
    let voters = (0..size).map(|j| {
        let rows = antichains
            .iter()
            .map(|a| match a.maximal_menus.len() {
                0 => full,
                len => full.difference(a.maximal_menus[j.min(len - 1)]),
            })
            .collect();
        Relation::from_dominators(c.grand().clone(), rows).expect("rows lie in the grand set")
    });
    BallotFamily::from_voters(voters)
}

/// Liberal to democratic: append one neutral ballot per member.
pub fn dem_from_lib(family: &BallotFamily) -> BallotFamily {
    let neutral = Ballot::neutral(family.grand().clone());
    let mut members = family.members().to_vec();
    members.extend(std::iter::repeat_n(neutral, family.len()));
    BallotFamily::new(members).expect("nonempty family")
}

/// Democratic to liberal: one ballot per strict-majority subfamily, equal
/// to the pointwise intersection of its members.
///
/// Subfamilies are enumerated by increasing bitmask over member positions.
/// Fails with [`Error::SizeExceeded`] when the output would exceed `limit`.
pub fn lib_from_dem(family: &BallotFamily, limit: u64) -> Result<BallotFamily, Error> {
    let k = family.len();
    let size: u128 = (k / 2 + 1..=k).map(|j| binom_u128(k, j)).sum();
    if size > limit as u128 {
        return Err(Error::SizeExceeded { size, limit });
    }
    let members = family.members();
    let out = (1u64..1 << k)
        .filter(|mask| 2 * mask.count_ones() as usize > k)
        .map(|mask| {
            let mut rel: Option<Relation> = None;
            for (i, b) in members.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    rel = Some(match rel {
                        None => b.witness().clone(),
                        Some(r) => r.union(b.witness()),
                    });
                }
            }
            Ballot::from_voter(rel.expect("nonempty subfamily"))
        })
        .collect();
    BallotFamily::new(out)
}

fn binom_u128(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Parameters of a share-`s` synthesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthesisTrace {
    /// Size of the liberal base family.
    pub base_size: u64,
    /// Weight parameter; `0` when no reweighting was needed (`s = 0`).
    pub m: u64,
    /// Intermediate share `(m²+m−1)/(m²+base_size·m)`; `0` when `m = 0`.
    pub t: Share,
    /// Neutral ballots in the output.
    pub neutral_added: u64,
    /// Hypercritical ballots in the output.
    pub hypercritical_added: u64,
    /// Copies made of the reweighted family.
    pub replication_factor: u64,
    /// Total number of ballots.
    pub size: u64,
}

/// [`synth_majoritarian_with_limit`] with [`DEFAULT_SIZE_LIMIT`].
pub fn synth_majoritarian(
    c: &QuasiChoice,
    s: Share,
) -> Result<(BallotFamily, SynthesisTrace), Error> {
    synth_majoritarian_with_limit(c, s, DEFAULT_SIZE_LIMIT)
}

/// Family representing `c` at share `s`, for any `c` satisfying α.
///
/// Starting from the liberal family of size `n₀`, pick the least `m ≥ 1`
/// with `t = (m²+m−1)/(m²+n₀m) > s` and form `m²` neutral ballots plus `m`
/// copies of the base; this represents `c` at share `t`. Replicate it by the
/// least factor making `p' = p·(t/s − 1)` integral, where `p` is the
/// replicated size, then add `p'` hypercritical ballots to scale the
/// threshold from `t` down to `s`.
pub fn synth_majoritarian_with_limit(
    c: &QuasiChoice,
    s: Share,
    limit: u64,
) -> Result<(BallotFamily, SynthesisTrace), Error> {
    let base = synth_liberal(c)?;
    let n0 = base.len() as u64;
    if s.is_zero() {
        let trace = SynthesisTrace {
            base_size: n0,
            m: 0,
            t: Share::ZERO,
            neutral_added: 0,
            hypercritical_added: 0,
            replication_factor: 1,
            size: n0,
        };
        return Ok((base, trace));
    }

    let too_big = |size: u128| Error::SizeExceeded { size, limit };
    let (s_num, s_den) = (s.num() as u128, s.den() as u128);
    let mut m: u128 = 1;
    let (t_num, p) = loop {
        let t_num = m * m + m - 1;
        let p = m * m + n0 as u128 * m;
        if p > limit as u128 {
            return Err(too_big(p));
        }
        if t_num * s_den > s_num * p {
            break (t_num, p);
        }
        m += 1;
    };

    // t/s − 1 = (t_num·s_den − s_num·p) / (s_num·p)
    let q_num = t_num * s_den - s_num * p;
    let q_den = s_num * p;
    let g = q_num.gcd(&q_den);
    let (q_num, q_den) = (q_num / g, q_den / g);
    let r = q_den / q_den.gcd(&p);
    let hyper = p * r / q_den * q_num;
    let size = p * r + hyper;
    if size > limit as u128 {
        return Err(too_big(size));
    }

    let grand = c.grand().clone();
    let neutral = Ballot::neutral(grand.clone());
    let mut weighted: Vec<Ballot> = std::iter::repeat_n(neutral, (m * m) as usize).collect();
    weighted.extend(base.replicate(m as usize)?.into_members());
    let mut members = BallotFamily::new(weighted)?
        .replicate(r as usize)?
        .into_members();
    members.extend(std::iter::repeat_n(
        Ballot::hypercritical(grand),
        hyper as usize,
    ));

    let trace = SynthesisTrace {
        base_size: n0,
        m: m as u64,
        t: Share::new(t_num as u64, p as u64)?,
        neutral_added: (m * m * r) as u64,
        hypercritical_added: hyper as u64,
        replication_factor: r as u64,
        size: size as u64,
    };
    Ok((BallotFamily::new(members)?, trace))
}
