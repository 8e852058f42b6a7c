//! Named example choices, the `c_{n,k}` family and random instances.
//!
//! Random generation uses ChaCha8 seeded from a `u64`, so a seed produces the
//! same instance on every platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::choice::{Ballot, BallotFamily, QuasiChoice, Relation};
use crate::error::Error;
use crate::menu::{GrandSet, Menu, DEFAULT_MAX_ITEMS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixtureId {
    Watson,
    Nonliberal,
    ExLib2Dem3,
    ExDem5Lib10,
    ExDemEqLib,
}

impl FixtureId {
    pub const ALL: [FixtureId; 5] = [
        FixtureId::Watson,
        FixtureId::Nonliberal,
        FixtureId::ExLib2Dem3,
        FixtureId::ExDem5Lib10,
        FixtureId::ExDemEqLib,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixtureId::Watson => "watson",
            FixtureId::Nonliberal => "nonliberal",
            FixtureId::ExLib2Dem3 => "ex-lib2-dem3",
            FixtureId::ExDem5Lib10 => "ex-dem5-lib10",
            FixtureId::ExDemEqLib => "ex-dem-eq-lib",
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FixtureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

/// A named choice with the ballot families published alongside it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: FixtureId,
    pub choice: QuasiChoice,
    /// `(kind, family)` with kind `"liberal"` (share 0) or `"democratic"`
    /// (share 1/2), as published. The democratic family of `ex-dem-eq-lib`
    /// does not reproduce the published table at `{x,y,w}`.
    pub families: Vec<(String, BallotFamily)>,
}

impl Fixture {
    pub fn family(&self, kind: &str) -> Option<&BallotFamily> {
        self.families
            .iter()
            .find(|(k, _)| k == kind)
            .map(|(_, f)| f)
    }
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const W: usize = 3;

fn xyz() -> GrandSet {
    GrandSet::labelled(["x", "y", "z"], DEFAULT_MAX_ITEMS).expect("valid labels")
}

fn xyzw() -> GrandSet {
    GrandSet::labelled(["x", "y", "z", "w"], DEFAULT_MAX_ITEMS).expect("valid labels")
}

/// Builds a choice that is the identity except on the listed menus.
fn table(grand: GrandSet, entries: &[(&[usize], &[usize])]) -> QuasiChoice {
    QuasiChoice::from_fn(grand, |a| {
        entries
            .iter()
            .find(|(menu, _)| Menu::from_items(menu.iter().copied()) == a)
            .map_or(a, |(_, chosen)| Menu::from_items(chosen.iter().copied()))
    })
}

fn voter(grand: &GrandSet, edges: &[(usize, usize)]) -> Relation {
    Relation::from_edges(grand.clone(), edges.iter().copied()).expect("edges in range")
}

/// Strict linear order listing items from best to worst.
fn linear(grand: &GrandSet, order: &[usize]) -> Relation {
    let mut rel = Relation::empty(grand.clone());
    for (i, &q) in order.iter().enumerate() {
        for &p in &order[i + 1..] {
            rel.add(q, p);
        }
    }
    rel
}

fn family(kind: &str, voters: Vec<Relation>) -> (String, BallotFamily) {
    (
        kind.to_string(),
        BallotFamily::from_voters(voters).expect("nonempty family"),
    )
}

pub fn fixture(id: FixtureId) -> Fixture {
    let (choice, families) = match id {
        FixtureId::Watson => {
            let g = xyz();
            let c = table(g.clone(), &[(&[X, Y, Z], &[X, Y]), (&[Y, Z], &[Y])]);
            let alice = linear(&g, &[Y, Z, X]);
            let tom = linear(&g, &[X, Y, Z]);
            (c, vec![family("liberal", vec![alice, tom])])
        }
        FixtureId::Nonliberal => (table(xyz(), &[(&[X, Z], &[X])]), vec![]),
        FixtureId::ExLib2Dem3 => {
            let g = xyz();
            let c = table(
                g.clone(),
                &[(&[X, Z], &[X]), (&[Y, Z], &[Y]), (&[X, Y, Z], &[X])],
            );
            let v1 = voter(&g, &[(X, Y), (X, Z), (Y, Z)]);
            let v2 = voter(&g, &[(X, Z), (Y, Z), (Z, Y)]);
            let v3 = Relation::empty(g.clone());
            (
                c,
                vec![
                    family("liberal", vec![v1.clone(), v2.clone()]),
                    family("democratic", vec![v1, v2, v3]),
                ],
            )
        }
        FixtureId::ExDem5Lib10 => {
            let c = gen_cnk(5, 3).expect("valid parameters");
            let g = c.grand().clone();
            let voters = (1..=5).map(|i| voter(&g, &[(i, 0)])).collect();
            let liberal = gen_cnk_liberal_family(5, 3).expect("valid parameters");
            (
                c,
                vec![
                    family("democratic", voters),
                    ("liberal".to_string(), liberal),
                ],
            )
        }
        FixtureId::ExDemEqLib => {
            let g = xyzw();
            let c = table(
                g.clone(),
                &[
                    (&[X, W], &[X]),
                    (&[Y, W], &[Y]),
                    (&[X, Y, Z], &[X, Y]),
                    (&[X, Y, W], &[X, Y]),
                    (&[X, Z, W], &[X]),
                    (&[Y, Z, W], &[Y]),
                    (&[X, Y, Z, W], &[X]),
                ],
            );
            let d1 = voter(&g, &[(X, Y), (X, Z), (X, W), (Y, W)]);
            let d2 = voter(&g, &[(X, W), (Y, Z), (Y, W)]);
            let d3 = voter(&g, &[(W, Y), (W, Z)]);
            let l1 = linear(&g, &[X, Y, Z, W]);
            let l2 = voter(&g, &[(X, Z), (X, W), (Y, W), (W, Z), (Z, Y)]);
            let l3 = voter(&g, &[(X, W), (W, Z), (Y, Z), (Y, W), (W, Y)]);
            (
                c,
                vec![
                    family("democratic", vec![d1, d2, d3]),
                    family("liberal", vec![l1, l2, l3]),
                ],
            )
        }
    };
    Fixture {
        id,
        choice,
        families,
    }
}

fn check_cnk(n: usize, k: usize) -> Result<GrandSet, Error> {
    if n == 0 || k == 0 || k > n + 1 {
        return Err(Error::InvalidParameter(format!(
            "c_{{n,k}} needs n >= 1 and 1 <= k <= n+1, got n = {n}, k = {k}"
        )));
    }
    GrandSet::new(n + 1)
}

/// `c_{n,k}` on the items `0..=n`: item 0 is dropped from menus with more
/// than `k` items, everything else is kept.
pub fn gen_cnk(n: usize, k: usize) -> Result<QuasiChoice, Error> {
    let grand = check_cnk(n, k)?;
    Ok(QuasiChoice::from_fn(grand, |a| {
        if a.contains(0) && a.len() > k {
            a.without(0)
        } else {
            a
        }
    }))
}

/// One ballot per `k`-menu `A ∋ 0`: the voter with `q → 0` for every `q ∉ A`.
///
/// Menus are visited in increasing bitmask order.
pub fn gen_cnk_liberal_family(n: usize, k: usize) -> Result<BallotFamily, Error> {
    let grand = check_cnk(n, k)?;
    let full = grand.full();
    let voters = grand
        .menus()
        .filter(|a| a.contains(0) && a.len() == k)
        .map(|a| {
            let mut rows = vec![Menu::EMPTY; grand.len()];
            rows[0] = full.difference(a);
            Relation::from_dominators(grand.clone(), rows).expect("rows in range")
        });
    BallotFamily::from_voters(voters)
}

/// Voters `i → 0` for `i = 1..=n`, padded with `2k−n−1` neutral ballots when
/// `2k > n`, else with `n−2k` hypercritical ballots.
pub fn gen_cnk_democratic_family(n: usize, k: usize) -> Result<BallotFamily, Error> {
    let grand = check_cnk(n, k)?;
    let mut members: Vec<Ballot> = (1..=n)
        .map(|i| {
            Ballot::from_voter(
                Relation::from_edges(grand.clone(), [(i, 0)]).expect("edge in range"),
            )
        })
        .collect();
    if 2 * k > n {
        members.extend(std::iter::repeat_n(
            Ballot::neutral(grand.clone()),
            2 * k - n - 1,
        ));
    } else {
        members.extend(std::iter::repeat_n(
            Ballot::hypercritical(grand.clone()),
            n - 2 * k,
        ));
    }
    BallotFamily::new(members)
}

/// A random voter: each edge `q → p` (q ≠ p) is present with probability
/// `density`, each loop with probability `density / 4`.
pub fn random_relation<R: Rng>(grand: &GrandSet, density: f64, rng: &mut R) -> Relation {
    let n = grand.len();
    let mut rel = Relation::empty(grand.clone());
    for p in 0..n {
        for q in 0..n {
            let prob = if p == q { density / 4.0 } else { density };
            if rng.random_bool(prob) {
                rel.add(q, p);
            }
        }
    }
    rel
}

/// A random strict linear order.
pub fn random_linear<R: Rng>(grand: &GrandSet, rng: &mut R) -> Relation {
    let mut order: Vec<usize> = grand.items().collect();
    order.shuffle(rng);
    linear(grand, &order)
}

/// Union of the ballots of 1 to 5 random voters, so α always holds.
///
/// With `decisive`, one random linear-order ballot joins the union and every
/// nonempty menu keeps at least one item.
pub fn random_alpha(n: usize, seed: u64, decisive: bool) -> Result<QuasiChoice, Error> {
    let grand = GrandSet::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let voters = rng.random_range(1..=5);
    let mut acc = QuasiChoice::null(grand.clone());
    for _ in 0..voters {
        let density = rng.random_range(0.0..=0.5);
        let ballot = Ballot::from_voter(random_relation(&grand, density, &mut rng));
        acc = acc.union(ballot.choice())?;
    }
    if decisive {
        let ballot = Ballot::from_voter(random_linear(&grand, &mut rng));
        acc = acc.union(ballot.choice())?;
    }
    Ok(acc)
}

/// A random contractive table with no axioms imposed.
pub fn random_choice(n: usize, seed: u64) -> Result<QuasiChoice, Error> {
    let grand = GrandSet::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(QuasiChoice::from_fn(grand, |a| {
        Menu(rng.random::<u32>() & a.bits())
    }))
}
