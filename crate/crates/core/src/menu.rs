//! Grand sets of items and menus encoded as bit vectors.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Default upper bound on the number of items in a grand set.
pub const DEFAULT_MAX_ITEMS: usize = 16;

/// Largest grand set any configuration may request. Menus are `u32` masks
/// and every quasi-choice materializes a table of `2^n` menus.
pub const ABSOLUTE_MAX_ITEMS: usize = 24;

/// A finite set of `n` items, optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrandSet {
    n: usize,
    labels: Option<Arc<[String]>>,
}

impl GrandSet {
    /// Unlabelled grand set of `n` items under the default cap.
    pub fn new(n: usize) -> Result<Self, Error> {
        Self::with_cap(n, DEFAULT_MAX_ITEMS)
    }

    /// Unlabelled grand set of `n` items under a caller-supplied cap.
    pub fn with_cap(n: usize, cap: usize) -> Result<Self, Error> {
        let cap = cap.min(ABSOLUTE_MAX_ITEMS);
        if n < 2 {
            return Err(Error::TooFewItems(n));
        }
        if n > cap {
            return Err(Error::TooManyItems { n, cap });
        }
        Ok(GrandSet { n, labels: None })
    }

    /// Labelled grand set; the number of items is the number of labels.
    pub fn labelled<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        cap: usize,
    ) -> Result<Self, Error> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut grand = Self::with_cap(labels.len(), cap)?;
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        grand.labels = Some(labels.into());
        Ok(grand)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of menus, `2^n`.
    pub fn menu_count(&self) -> usize {
        1usize << self.n
    }

    /// The whole grand set as a menu.
    pub fn full(&self) -> Menu {
        Menu::full(self.n)
    }

    /// Every menu, in increasing index order (the empty menu first).
    pub fn menus(&self) -> impl Iterator<Item = Menu> + Clone {
        (0..self.menu_count() as u32).map(Menu)
    }

    pub fn items(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Display name of item `i`: its label, or its decimal index.
    pub fn name(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => i.to_string(),
        }
    }

    /// Inverse of [`GrandSet::name`].
    pub fn index_of(&self, name: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == name),
            None => name.parse::<usize>().ok().filter(|&i| i < self.n),
        }
    }

    /// Whether the menu fits inside this grand set.
    pub fn contains_menu(&self, menu: Menu) -> bool {
        menu.0 >> self.n == 0
    }

    /// Same number of items and no conflicting labels.
    pub fn compatible(&self, other: &GrandSet) -> bool {
        self.n == other.n
            && match (&self.labels, &other.labels) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
    }

    /// Renders a menu as `{a,b,c}` using item names.
    pub fn show(&self, menu: Menu) -> String {
        let names: Vec<String> = menu.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A subset of the grand set; bit `i` set iff item `i` is on the menu.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Menu(pub u32);

impl Menu {
    pub const EMPTY: Menu = Menu(0);

    pub fn full(n: usize) -> Menu {
        if n >= 32 {
            Menu(u32::MAX)
        } else {
            Menu((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Menu {
        Menu(1 << i)
    }

    pub fn from_items(items: impl IntoIterator<Item = usize>) -> Menu {
        Menu(items.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: Menu) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Menu) -> Menu {
        Menu(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Menu) -> Menu {
        Menu(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Menu) -> Menu {
        Menu(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, i: usize) -> Menu {
        Menu(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Menu {
        Menu(self.0 & !(1 << i))
    }

    /// Items on the menu in increasing order.
    pub fn iter(self) -> MenuItems {
        MenuItems(self.0)
    }

    /// All submenus of `self`, including `∅` and `self`, in increasing
    /// index order.
    pub fn submenus(self) -> Submenus {
        Submenus {
            set: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Display for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl IntoIterator for Menu {
    type Item = usize;
    type IntoIter = MenuItems;

    fn into_iter(self) -> MenuItems {
        self.iter()
    }
}

impl FromIterator<usize> for Menu {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Menu::from_items(iter)
    }
}

#[derive(Clone, Debug)]
pub struct MenuItems(u32);

impl Iterator for MenuItems {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MenuItems {}

/// Carry-rippler walk over the submasks of a fixed mask, ascending.
#[derive(Clone, Debug)]
pub struct Submenus {
    set: u32,
    next: Option<u32>,
}

impl Iterator for Submenus {
    type Item = Menu;

    fn next(&mut self) -> Option<Menu> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.set) & self.set;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(Menu(cur))
    }
}
