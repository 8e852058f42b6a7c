//! Contraction (α) and expansion (γ) consistency, and rationalizability.

use std::fmt;

use rayon::prelude::*;

use crate::choice::{revealed_relation, Ballot, QuasiChoice, Relation};
use crate::menu::{GrandSet, Menu};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Alpha,
    Gamma,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Alpha => "alpha",
            Axiom::Gamma => "gamma",
        })
    }
}

/// A concrete violation.
///
/// For α: `item ∈ menu_a ⊆ menu_b`, `item ∈ c(menu_b)`, `item ∉ c(menu_a)`,
/// and `menu_b ∖ menu_a` is a single item.
/// For γ: `item ∈ c(menu_a) ∩ c(menu_b)` but `item ∉ c(menu_a ∪ menu_b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AxiomWitness {
    pub axiom: Axiom,
    pub menu_a: Menu,
    pub menu_b: Menu,
    pub item: usize,
}

impl AxiomWitness {
    /// Whether the witness really violates its axiom for `c`.
    pub fn holds_for(&self, c: &QuasiChoice) -> bool {
        let x = self.item;
        match self.axiom {
            Axiom::Alpha => {
                self.menu_a.contains(x)
                    && self.menu_a.is_subset(self.menu_b)
                    && c.chooses(self.menu_b, x)
                    && !c.chooses(self.menu_a, x)
            }
            Axiom::Gamma => {
                c.chooses(self.menu_a, x)
                    && c.chooses(self.menu_b, x)
                    && !c.chooses(self.menu_a.union(self.menu_b), x)
            }
        }
    }
}

impl AxiomWitness {
    /// Like `Display`, with item names taken from `grand`.
    pub fn describe(&self, grand: &GrandSet) -> String {
        let item = grand.name(self.item);
        match self.axiom {
            Axiom::Alpha => format!(
                "item {item} is chosen from {} but not from its submenu {}",
                grand.show(self.menu_b),
                grand.show(self.menu_a)
            ),
            Axiom::Gamma => format!(
                "item {item} is chosen from {} and from {} but not from their union {}",
                grand.show(self.menu_a),
                grand.show(self.menu_b),
                grand.show(self.menu_a.union(self.menu_b))
            ),
        }
    }
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Axiom::Alpha => write!(
                f,
                "item {} is chosen from {} but not from its submenu {}",
                self.item, self.menu_b, self.menu_a
            ),
            Axiom::Gamma => write!(
                f,
                "item {} is chosen from {} and from {} but not from their union {}",
                self.item,
                self.menu_a,
                self.menu_b,
                self.menu_a.union(self.menu_b)
            ),
        }
    }
}

/// Axiom α by single-item contractions.
///
/// Contracting one item at a time is equivalent to the full quantifier by
/// induction on `|B ∖ A|`. Menus `B` are scanned in increasing index, then
/// chosen items, then the removed item.
pub fn check_alpha(c: &QuasiChoice) -> Result<(), AxiomWitness> {
    for b in c.grand().menus() {
        let chosen = c.get(b);
        for x in chosen {
            for y in b.without(x) {
                let a = b.without(y);
                if !c.chooses(a, x) {
                    return Err(AxiomWitness {
                        axiom: Axiom::Alpha,
                        menu_a: a,
                        menu_b: b,
                        item: x,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Axiom γ: for each item, `{A : x ∈ c(A)}` is closed under pairwise union.
///
/// A family is union-closed iff it contains every nonempty set that is the
/// union of its own members lying below it. Those unions are computed for
/// all menus at once with a subset DP, `O(n·2^n)` per item. From a
/// cardinality-minimal offending set `S` the witness takes `M1`, the
/// lowest-index ⊆-maximal member below `S`, and `M2`, the lowest-index
/// member below `S` not inside `M1`; minimality forces `M1 ∪ M2 = S`.
/// Among items the witness with the smallest `(menu_a, menu_b, item)` wins.
pub fn check_gamma(c: &QuasiChoice) -> Result<(), AxiomWitness> {
    let n = c.n();
    let found: Option<AxiomWitness> = (0..n)
        .into_par_iter()
        .filter_map(|x| gamma_witness_for_item(c, x))
        .min_by_key(|w| (w.menu_a, w.menu_b, w.item));
    match found {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

fn gamma_witness_for_item(c: &QuasiChoice, x: usize) -> Option<AxiomWitness> {
    let size = c.grand().menu_count();
    let member = |s: usize| c.table()[s].contains(x);
    // below[s] = union of the members of the family contained in s
    let mut below = vec![0u32; size];
    let mut offender: Option<u32> = None;
    for s in 1..size {
        let mut acc = if member(s) { s as u32 } else { 0 };
        let mut rest = s as u32;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            acc |= below[s ^ bit as usize];
            rest ^= bit;
        }
        below[s] = acc;
        if acc == s as u32 && !member(s) {
            let better = match offender {
                None => true,
                Some(o) => s.count_ones() < o.count_ones(),
            };
            if better {
                offender = Some(s as u32);
            }
        }
    }
    let s = Menu(offender?);
    let members: Vec<Menu> = s
        .submenus()
        .filter(|&a| a != s && member(a.index()))
        .collect();
    let m1 = *members
        .iter()
        .find(|&&a| !members.iter().any(|&b| b != a && a.is_subset(b)))?;
    let m2 = *members.iter().find(|&&b| !b.is_subset(m1))?;
    debug_assert_eq!(m1.union(m2), s);
    Some(AxiomWitness {
        axiom: Axiom::Gamma,
        menu_a: m1.min(m2),
        menu_b: m1.max(m2),
        item: x,
    })
}

/// Where a quasi-choice sits among the rationality notions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalityClass {
    NotRationalizable(AxiomWitness),
    FreelyRationalizable(Relation),
    AsymmetricallyRationalizable(Relation),
}

impl RationalityClass {
    pub fn is_rationalizable(&self) -> bool {
        !matches!(self, RationalityClass::NotRationalizable(_))
    }

    pub fn relation(&self) -> Option<&Relation> {
        match self {
            RationalityClass::NotRationalizable(_) => None,
            RationalityClass::FreelyRationalizable(r)
            | RationalityClass::AsymmetricallyRationalizable(r) => Some(r),
        }
    }
}

/// Classifies `c` by testing whether its revealed relation rationalizes it.
///
/// When it does, `c` is upgraded to asymmetric rationalizability iff every
/// singleton is chosen and no pair menu is empty; the revealed relation is
/// then loopless and asymmetric. Otherwise an α witness is reported when α
/// fails, else a γ witness.
pub fn classify(c: &QuasiChoice) -> RationalityClass {
    let rel = revealed_relation(c);
    if Ballot::from_voter(rel.clone()).choice().table() == c.table() {
        let n = c.n();
        let singles = (0..n).all(|x| c.chooses(Menu::singleton(x), x));
        let pairs =
            (0..n).all(|x| (x + 1..n).all(|y| !c.get(Menu::singleton(x).with(y)).is_empty()));
        return if singles && pairs {
            RationalityClass::AsymmetricallyRationalizable(rel)
        } else {
            RationalityClass::FreelyRationalizable(rel)
        };
    }
    let witness = match check_alpha(c) {
        Err(w) => w,
        Ok(()) => check_gamma(c).expect_err("α and γ together imply a rationalizing voter"),
    };
    RationalityClass::NotRationalizable(witness)
}
