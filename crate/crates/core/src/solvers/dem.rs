//! Exact democratic number.
//!
//! Whether item `p` survives in `A` under a voter depends only on the
//! voter's dominator row for `p`. A family of `k` ballots is therefore the
//! same thing as, for each item, a multiset of `k` rows, and the majority
//! conditions of different items never interact. For each item the search
//! picks `k` *columns* `C ∋ p` (the ballot keeps `p` in `A` iff `A ⊆ C`), or
//! the "never" column, so that every maximal accepting menu is inside at
//! least `⌊k/2⌋+1` columns and every minimal rejecting menu is inside at
//! most `⌊k/2⌋`. By α the remaining menus follow by monotonicity.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{acceptance_antichains, lib_number, LibNumber};
use crate::choice::{BallotFamily, QuasiChoice, Relation};
use crate::error::Error;
use crate::menu::Menu;
use crate::represent::{dem_from_lib, synth_liberal};

/// Resource limits for [`dem_number`].
#[derive(Clone, Debug)]
pub struct DemLimits {
    pub max_n: usize,
    pub timeout: Option<Duration>,
    pub node_cap: Option<u64>,
}

impl Default for DemLimits {
    fn default() -> Self {
        DemLimits {
            max_n: 4,
            timeout: None,
            node_cap: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemNumber {
    Exact(usize),
    /// The search ran out of resources; the true value lies in `lo..=hi`.
    Interval {
        lo: usize,
        hi: usize,
    },
    Infinite,
}

impl DemNumber {
    pub fn exact(self) -> Option<usize> {
        match self {
            DemNumber::Exact(k) => Some(k),
            _ => None,
        }
    }

    /// Best known upper bound.
    pub fn upper(self) -> Option<usize> {
        match self {
            DemNumber::Exact(k) | DemNumber::Interval { hi: k, .. } => Some(k),
            DemNumber::Infinite => None,
        }
    }
}

impl fmt::Display for DemNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DemNumber::Exact(k) => write!(f, "{k}"),
            DemNumber::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
            DemNumber::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DemResult {
    pub number: DemNumber,
    /// Search nodes visited.
    pub explored: u64,
    /// A democratic family of size `Exact(k)`, or of the upper end of an
    /// interval.
    pub family: Option<BallotFamily>,
}

/// Exact democratic number, searched over sizes `1..=2·lib(c)`.
pub fn dem_number(c: &QuasiChoice, limits: &DemLimits) -> Result<DemResult, Error> {
    let n = c.n();
    if n > limits.max_n {
        return Err(Error::GrandSetTooLarge {
            n,
            max: limits.max_n,
        });
    }
    let lib = match lib_number(c) {
        LibNumber::Infinite => {
            return Ok(DemResult {
                number: DemNumber::Infinite,
                explored: 0,
                family: None,
            })
        }
        LibNumber::Finite(k) => k,
    };
    let hi = 2 * lib;
    let antichains = acceptance_antichains(c);
    let problems: Vec<ItemProblem> = antichains
        .into_iter()
        .map(|a| ItemProblem::new(c, a.item, a.maximal_menus))
        .collect();
    let budget = Budget {
        nodes: AtomicU64::new(0),
        cap: limits.node_cap,
        deadline: limits.timeout.map(|t| Instant::now() + t),
        exhausted: AtomicBool::new(false),
    };

    for k in 1..=hi {
        let outcomes: Vec<Outcome> = problems
            .par_iter()
            .map(|prob| prob.solve(k, &budget))
            .collect();
        if outcomes.iter().any(|o| matches!(o, Outcome::Infeasible)) {
            continue;
        }
        if outcomes.iter().any(|o| matches!(o, Outcome::Exhausted)) {
            return Ok(upper_fallback(c, k, hi, &budget));
        }
        let picks: Vec<Vec<usize>> = outcomes
            .into_iter()
            .map(|o| match o {
                Outcome::Found(p) => p,
                _ => unreachable!(),
            })
            .collect();
        let voters = (0..k).map(|j| {
            let rows = problems
                .iter()
                .zip(&picks)
                .map(|(prob, pick)| prob.columns[pick[j]].dominators)
                .collect();
            Relation::from_dominators(c.grand().clone(), rows).expect("rows lie in the grand set")
        });
        return Ok(DemResult {
            number: DemNumber::Exact(k),
            explored: budget.nodes.load(Ordering::Relaxed),
            family: Some(BallotFamily::from_voters(voters)?),
        });
    }
    // The doubled liberal family is always feasible at size 2·lib, so a
    // complete search cannot get here; report the certified bound anyway.
    Ok(upper_fallback(c, hi, hi, &budget))
}

fn upper_fallback(c: &QuasiChoice, lo: usize, hi: usize, budget: &Budget) -> DemResult {
    let family = synth_liberal(c).ok().map(|f| dem_from_lib(&f));
    DemResult {
        number: DemNumber::Interval { lo, hi },
        explored: budget.nodes.load(Ordering::Relaxed),
        family,
    }
}

struct Budget {
    nodes: AtomicU64,
    cap: Option<u64>,
    deadline: Option<Instant>,
    exhausted: AtomicBool,
}

impl Budget {
    fn charge(&self, batch: u64) -> bool {
        let total = self.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        let out = self.cap.is_some_and(|cap| total > cap)
            || self.deadline.is_some_and(|d| Instant::now() >= d);
        if out {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !out && !self.exhausted.load(Ordering::Relaxed)
    }
}

enum Outcome {
    Found(Vec<usize>),
    Infeasible,
    Exhausted,
}

struct Column {
    dominators: Menu,
    accepts: Vec<u16>,
    rejects: Vec<u16>,
}

/// The per-item subproblem, reduced to Pareto-optimal columns.
struct ItemProblem {
    accept_count: usize,
    reject_count: usize,
    columns: Vec<Column>,
}

impl ItemProblem {
    fn new(c: &QuasiChoice, p: usize, accept: Vec<Menu>) -> ItemProblem {
        let full = c.grand().full();
        // Under α the rejecting menus form an up-set; its minimal elements
        // suffice.
        let rejecting = |a: Menu| a.contains(p) && !c.chooses(a, p);
        let reject: Vec<Menu> = c
            .grand()
            .menus()
            .filter(|&a| rejecting(a) && a.iter().all(|q| q == p || !rejecting(a.without(q))))
            .collect();

        let others = full.without(p);
        let mut candidates: Vec<(Menu, Option<Menu>)> = vec![(full, None)];
        candidates.extend(
            others
                .submenus()
                .map(|s| (full.difference(s.with(p)), Some(s.with(p)))),
        );

        let mut seen = HashSet::new();
        let mut columns: Vec<Column> = Vec::new();
        for (dominators, col) in candidates {
            let covers = |a: &Menu| col.is_some_and(|col| a.is_subset(col));
            let accepts: Vec<u16> = (0..accept.len() as u16)
                .filter(|&i| covers(&accept[i as usize]))
                .collect();
            let rejects: Vec<u16> = (0..reject.len() as u16)
                .filter(|&i| covers(&reject[i as usize]))
                .collect();
            if seen.insert((accepts.clone(), rejects.clone())) {
                columns.push(Column {
                    dominators,
                    accepts,
                    rejects,
                });
            }
        }
        // A column covering more accepting and fewer rejecting menus can
        // replace a dominated one in any solution.
        let dominated = |j: usize| {
            columns.iter().enumerate().any(|(i, ci)| {
                i != j
                    && is_sorted_subset(&columns[j].accepts, &ci.accepts)
                    && is_sorted_subset(&ci.rejects, &columns[j].rejects)
            })
        };
        let keep: Vec<bool> = (0..columns.len()).map(|j| !dominated(j)).collect();
        let mut columns: Vec<Column> = columns
            .into_iter()
            .zip(keep)
            .filter_map(|(col, k)| k.then_some(col))
            .collect();
        columns.sort_by_key(|col| (std::cmp::Reverse(col.accepts.len()), col.rejects.len()));
        ItemProblem {
            accept_count: accept.len(),
            reject_count: reject.len(),
            columns,
        }
    }

    fn solve(&self, k: usize, budget: &Budget) -> Outcome {
        let threshold = (k / 2 + 1) as u32;
        // coverable[j][i]: some column at position >= j covers menu i
        let mut coverable = vec![vec![false; self.accept_count]; self.columns.len() + 1];
        for j in (0..self.columns.len()).rev() {
            let (head, tail) = coverable.split_at_mut(j + 1);
            head[j].clone_from(&tail[0]);
            for &i in &self.columns[j].accepts {
                head[j][i as usize] = true;
            }
        }
        let mut search = Search {
            prob: self,
            coverable,
            threshold,
            acc: vec![0; self.accept_count],
            rej: vec![0; self.reject_count],
            picked: Vec::with_capacity(k),
            budget,
            pending: 0,
        };
        let result = search.dfs(0, k);
        budget.charge(search.pending);
        match result {
            Step::Found => Outcome::Found(search.picked),
            Step::Fail => Outcome::Infeasible,
            Step::Stop => Outcome::Exhausted,
        }
    }
}

fn is_sorted_subset(a: &[u16], b: &[u16]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

enum Step {
    Found,
    Fail,
    Stop,
}

struct Search<'a> {
    prob: &'a ItemProblem,
    coverable: Vec<Vec<bool>>,
    threshold: u32,
    acc: Vec<u32>,
    rej: Vec<u32>,
    picked: Vec<usize>,
    budget: &'a Budget,
    pending: u64,
}

impl Search<'_> {
    fn dfs(&mut self, start: usize, remaining: usize) -> Step {
        self.pending += 1;
        let over_cap = self
            .budget
            .cap
            .is_some_and(|cap| self.budget.nodes.load(Ordering::Relaxed) + self.pending > cap);
        if over_cap || self.pending >= 4096 {
            let ok = self.budget.charge(self.pending);
            self.pending = 0;
            if !ok {
                return Step::Stop;
            }
        }
        let t = self.threshold;
        for (i, &have) in self.acc.iter().enumerate() {
            let need = t.saturating_sub(have);
            if need as usize > remaining || (need > 0 && !self.coverable[start][i]) {
                return Step::Fail;
            }
        }
        if remaining == 0 {
            return Step::Found;
        }
        for j in start..self.prob.columns.len() {
            let col = &self.prob.columns[j];
            if col.rejects.iter().any(|&r| self.rej[r as usize] + 1 >= t) {
                continue;
            }
            self.apply(j, 1);
            self.picked.push(j);
            match self.dfs(j, remaining - 1) {
                Step::Fail => {}
                other => return other,
            }
            self.picked.pop();
            self.apply(j, -1);
        }
        Step::Fail
    }

    fn apply(&mut self, j: usize, delta: i32) {
        let col = &self.prob.columns[j];
        for &i in &col.accepts {
            self.acc[i as usize] = self.acc[i as usize].wrapping_add_signed(delta);
        }
        for &r in &col.rejects {
            self.rej[r as usize] = self.rej[r as usize].wrapping_add_signed(delta);
        }
    }
}
