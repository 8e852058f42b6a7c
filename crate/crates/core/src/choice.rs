//! Quasi-choices, voters (dominance relations), ballots and ballot families.

use std::sync::Arc;

use crate::error::Error;
use crate::menu::{GrandSet, Menu};

/// A quasi-choice correspondence: the full table `A ↦ c(A)` over all menus.
///
/// Contractive by construction (`c(A) ⊆ A`), hence `c(∅) = ∅`. The table is
/// shared, so clones are cheap.
#[derive(Clone, Debug)]
pub struct QuasiChoice {
    grand: GrandSet,
    table: Arc<[Menu]>,
}

impl PartialEq for QuasiChoice {
    fn eq(&self, other: &Self) -> bool {
        self.grand.compatible(&other.grand) && self.table == other.table
    }
}

impl Eq for QuasiChoice {}

impl QuasiChoice {
    /// Builds a quasi-choice from a table indexed by menu.
    pub fn from_table(grand: GrandSet, table: Vec<Menu>) -> Result<Self, Error> {
        if table.len() != grand.menu_count() {
            return Err(Error::TableSize {
                got: table.len(),
                expected: grand.menu_count(),
            });
        }
        for (a, &chosen) in table.iter().enumerate() {
            if !chosen.is_subset(Menu(a as u32)) {
                return Err(Error::NotContractive {
                    menu: a as u32,
                    chosen: chosen.bits(),
                });
            }
        }
        Ok(QuasiChoice {
            grand,
            table: table.into(),
        })
    }

    /// Tabulates `f`, clipping each value to its menu.
    pub fn from_fn(grand: GrandSet, mut f: impl FnMut(Menu) -> Menu) -> Self {
        let table: Vec<Menu> = grand.menus().map(|a| f(a).intersection(a)).collect();
        QuasiChoice {
            grand,
            table: table.into(),
        }
    }

    /// `c(A) = A` for every menu.
    pub fn identity(grand: GrandSet) -> Self {
        Self::from_fn(grand, |a| a)
    }

    /// `c(A) = ∅` for every menu.
    pub fn null(grand: GrandSet) -> Self {
        Self::from_fn(grand, |_| Menu::EMPTY)
    }

    pub fn grand(&self) -> &GrandSet {
        &self.grand
    }

    pub fn n(&self) -> usize {
        self.grand.len()
    }

    #[inline]
    pub fn get(&self, menu: Menu) -> Menu {
        self.table[menu.index()]
    }

    #[inline]
    pub fn chooses(&self, menu: Menu, item: usize) -> bool {
        self.table[menu.index()].contains(item)
    }

    pub fn table(&self) -> &[Menu] {
        &self.table
    }

    /// Nonempty selection from every nonempty menu.
    pub fn is_decisive(&self) -> bool {
        self.table[1..].iter().all(|c| !c.is_empty())
    }

    /// Same table, different grand set (e.g. to attach labels).
    pub fn relabel(&self, grand: GrandSet) -> Result<Self, Error> {
        if grand.len() != self.n() {
            return Err(Error::MismatchedGrandSets);
        }
        Ok(QuasiChoice {
            grand,
            table: self.table.clone(),
        })
    }

    /// Pointwise union of two quasi-choices on the same grand set.
    pub fn union(&self, other: &QuasiChoice) -> Result<QuasiChoice, Error> {
        self.zip_with(other, Menu::union)
    }

    /// Pointwise intersection of two quasi-choices on the same grand set.
    pub fn intersection(&self, other: &QuasiChoice) -> Result<QuasiChoice, Error> {
        self.zip_with(other, Menu::intersection)
    }

    fn zip_with(&self, other: &QuasiChoice, op: fn(Menu, Menu) -> Menu) -> Result<Self, Error> {
        if !self.grand.compatible(&other.grand) {
            return Err(Error::MismatchedGrandSets);
        }
        let table: Vec<Menu> = self
            .table
            .iter()
            .zip(other.table.iter())
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(QuasiChoice {
            grand: self.grand.clone(),
            table: table.into(),
        })
    }
}

/// A voter: an arbitrary dominance relation on the grand set.
///
/// Stored by dominated item: `dominators[p] = {q : q → p}`. Loops
/// (`p → p`, a repellent item) and mutual arrows are legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    grand: GrandSet,
    dominators: Vec<Menu>,
}

impl Relation {
    /// The empty relation; nothing is dominated.
    pub fn empty(grand: GrandSet) -> Self {
        let n = grand.len();
        Relation {
            grand,
            dominators: vec![Menu::EMPTY; n],
        }
    }

    pub fn from_dominators(grand: GrandSet, dominators: Vec<Menu>) -> Result<Self, Error> {
        if dominators.len() != grand.len() {
            return Err(Error::RelationSize {
                got: dominators.len(),
                expected: grand.len(),
            });
        }
        if let Some(bad) = dominators.iter().find(|d| !grand.contains_menu(**d)) {
            return Err(Error::MenuOutOfRange(bad.bits()));
        }
        Ok(Relation { grand, dominators })
    }

    /// Builds a relation from `(q, p)` pairs meaning `q → p`.
    pub fn from_edges(
        grand: GrandSet,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        let n = grand.len();
        let mut rel = Relation::empty(grand);
        for (q, p) in edges {
            if q >= n || p >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {q} -> {p} outside a grand set of {n} items"
                )));
            }
            rel.add(q, p);
        }
        Ok(rel)
    }

    /// Adds `q → p`.
    pub fn add(&mut self, q: usize, p: usize) {
        self.dominators[p] = self.dominators[p].with(q);
    }

    pub fn grand(&self) -> &GrandSet {
        &self.grand
    }

    pub fn dominators(&self) -> &[Menu] {
        &self.dominators
    }

    pub fn dominators_of(&self, p: usize) -> Menu {
        self.dominators[p]
    }

    pub fn has_edge(&self, q: usize, p: usize) -> bool {
        self.dominators[p].contains(q)
    }

    /// All `(q, p)` with `q → p`, ordered by source then target.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.grand.len();
        let mut out = Vec::new();
        for q in 0..n {
            for p in 0..n {
                if self.has_edge(q, p) {
                    out.push((q, p));
                }
            }
        }
        out
    }

    pub fn is_loopless(&self) -> bool {
        self.grand.items().all(|p| !self.has_edge(p, p))
    }

    pub fn is_asymmetric(&self) -> bool {
        let n = self.grand.len();
        (0..n).all(|p| (0..n).all(|q| !(self.has_edge(q, p) && self.has_edge(p, q))))
    }

    /// Non-dominated items of `menu`: `{a ∈ A : b ↛ a for all b ∈ A}`.
    #[inline]
    pub fn max_set(&self, menu: Menu) -> Menu {
        menu.iter()
            .filter(|&a| self.dominators[a].intersection(menu).is_empty())
            .collect()
    }

    /// Pointwise union of dominator rows; it rationalizes the pointwise
    /// intersection of the two ballots.
    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            grand: self.grand.clone(),
            dominators: self
                .dominators
                .iter()
                .zip(&other.dominators)
                .map(|(&a, &b)| a.union(b))
                .collect(),
        }
    }
}

/// Standard revealed-preference relation of a quasi-choice.
///
/// `p → p` iff `p ∉ c({p})`; for `x ≠ p`, `x → p` iff `p ∈ c({p})` and
/// `p ∉ c({p, x})`. It rationalizes `c` exactly when `c` is a ballot.
pub fn revealed_relation(c: &QuasiChoice) -> Relation {
    let grand = c.grand().clone();
    let n = grand.len();
    let mut rel = Relation::empty(grand);
    for p in 0..n {
        let single = Menu::singleton(p);
        if !c.chooses(single, p) {
            rel.add(p, p);
            continue;
        }
        for x in (0..n).filter(|&x| x != p) {
            if !c.chooses(single.with(x), p) {
                rel.add(x, p);
            }
        }
    }
    rel
}

/// A freely rationalizable quasi-choice together with one voter that
/// rationalizes it. Equality ignores the witness.
#[derive(Clone, Debug)]
pub struct Ballot {
    choice: QuasiChoice,
    witness: Relation,
}

impl PartialEq for Ballot {
    fn eq(&self, other: &Self) -> bool {
        self.choice == other.choice
    }
}

impl Eq for Ballot {}

impl Ballot {
    /// The ballot `A ↦ max(A, →)` of a voter.
    pub fn from_voter(rel: Relation) -> Ballot {
        let grand = rel.grand().clone();
        let n = grand.len();
        let mut table = vec![Menu::EMPTY; grand.menu_count()];
        // Item p survives in A iff A misses every dominator of p.
        for p in 0..n {
            let bit = 1u32 << p;
            let dom = rel.dominators[p].bits();
            for (a, slot) in table.iter_mut().enumerate() {
                let a = a as u32;
                if a & bit != 0 && a & dom == 0 {
                    slot.0 |= bit;
                }
            }
        }
        Ballot {
            choice: QuasiChoice {
                grand,
                table: table.into(),
            },
            witness: rel,
        }
    }

    /// The identity choice (empty voter).
    pub fn neutral(grand: GrandSet) -> Ballot {
        Ballot::from_voter(Relation::empty(grand))
    }

    /// The null quasi-choice (every item repellent).
    pub fn hypercritical(grand: GrandSet) -> Ballot {
        let n = grand.len();
        let rows = (0..n).map(Menu::singleton).collect();
        Ballot::from_voter(Relation {
            grand,
            dominators: rows,
        })
    }

    /// Accepts `c` as a ballot if its revealed relation rationalizes it.
    pub fn try_from_choice(c: &QuasiChoice) -> Option<Ballot> {
        let b = Ballot::from_voter(revealed_relation(c));
        (b.choice.table == c.table).then(|| Ballot {
            choice: c.clone(),
            witness: b.witness,
        })
    }

    pub fn choice(&self) -> &QuasiChoice {
        &self.choice
    }

    pub fn witness(&self) -> &Relation {
        &self.witness
    }

    pub fn grand(&self) -> &GrandSet {
        self.choice.grand()
    }

    #[inline]
    pub fn get(&self, menu: Menu) -> Menu {
        self.choice.get(menu)
    }

    /// Pointwise intersection; rationalized by the union of the voters.
    pub fn intersect(&self, other: &Ballot) -> Ballot {
        Ballot::from_voter(self.witness.union(&other.witness))
    }

    pub(crate) fn shares_table(&self, other: &Ballot) -> bool {
        Arc::ptr_eq(&self.choice.table, &other.choice.table)
    }
}

/// An ordered multiset of `k >= 1` ballots over one grand set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallotFamily {
    grand: GrandSet,
    members: Vec<Ballot>,
}

impl BallotFamily {
    pub fn new(members: Vec<Ballot>) -> Result<Self, Error> {
        let grand = members.first().ok_or(Error::EmptyFamily)?.grand().clone();
        if members.iter().any(|b| !b.grand().compatible(&grand)) {
            return Err(Error::MismatchedGrandSets);
        }
        Ok(BallotFamily { grand, members })
    }

    pub fn from_voters(voters: impl IntoIterator<Item = Relation>) -> Result<Self, Error> {
        Self::new(voters.into_iter().map(Ballot::from_voter).collect())
    }

    pub fn grand(&self) -> &GrandSet {
        &self.grand
    }

    pub fn members(&self) -> &[Ballot] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn into_members(self) -> Vec<Ballot> {
        self.members
    }

    /// Each member repeated `r` times, family order kept: `(v,w) ↦ (v,w,v,w)`.
    pub fn replicate(&self, r: usize) -> Result<BallotFamily, Error> {
        if r == 0 {
            return Err(Error::ZeroReplication);
        }
        let mut members = Vec::with_capacity(self.members.len() * r);
        for _ in 0..r {
            members.extend(self.members.iter().cloned());
        }
        Ok(BallotFamily {
            grand: self.grand.clone(),
            members,
        })
    }

    /// Distinct tables with their multiplicities, in first-seen order.
    pub fn grouped(&self) -> Vec<(&Ballot, u64)> {
        let mut groups: Vec<(&Ballot, u64)> = Vec::new();
        let mut index: std::collections::HashMap<&[Menu], usize> = std::collections::HashMap::new();
        for b in &self.members {
            if let Some((last, m)) = groups.last_mut() {
                if last.shares_table(b) {
                    *m += 1;
                    continue;
                }
            }
            match index.get(b.choice.table()) {
                Some(&g) => groups[g].1 += 1,
                None => {
                    index.insert(b.choice.table(), groups.len());
                    groups.push((b, 1));
                }
            }
        }
        groups
    }
}
