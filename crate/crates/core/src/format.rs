//! Line-based text formats for quasi-choices and ballot families.
//!
//! Choice files:
//!
//! ```text
//! qc v1
//! n = 3
//! items = x y z
//! default = none
//! x y z -> x y
//! x z -> x
//! ```
//!
//! `default` is `none` (every nonempty menu listed exactly once),
//! `identity` or `empty` (unlisted menus choose everything or nothing). An
//! empty right-hand side is the empty choice. Ballot files list one voter per
//! block of edge lines `a -> b c` (each meaning `a → b` and `a → c`), closed by
//! `end`. Without an `items` line the items are named `0` to `n−1`. `#` starts
//! a comment.

use std::fmt::Write as _;

use crate::choice::{revealed_relation, BallotFamily, QuasiChoice, Relation};
use crate::error::Error;
use crate::menu::{GrandSet, Menu};

/// Filling rule for menus a choice file leaves out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DefaultRule {
    #[default]
    None,
    Identity,
    Empty,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Meaningful lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// `key = value` header line.
fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let (k, v) = line.split_once('=')?;
    (k.trim() == key).then(|| v.trim())
}

struct Header {
    grand: GrandSet,
    default: DefaultRule,
}

/// Reads the tag, `n`, `items` and (for choices) `default` lines.
fn read_header<'a>(
    it: &mut std::iter::Peekable<impl Iterator<Item = (usize, &'a str)>>,
    tag: &str,
    cap: usize,
    allow_default: bool,
) -> Result<Header, Error> {
    match it.next() {
        Some((_, l)) if l.split_whitespace().eq(tag.split_whitespace()) => {}
        Some((no, l)) => return Err(parse_err(no, format!("expected {tag:?}, found {l:?}"))),
        None => return Err(parse_err(0, format!("empty document, expected {tag:?}"))),
    }
    let (n_line, n) = match it.next() {
        Some((no, l)) => match header(l, "n") {
            Some(v) => (
                no,
                v.parse::<usize>()
                    .map_err(|_| parse_err(no, format!("invalid item count {v:?}")))?,
            ),
            None => {
                return Err(parse_err(
                    no,
                    format!("expected \"n = <int>\", found {l:?}"),
                ))
            }
        },
        None => return Err(parse_err(0, "missing \"n = <int>\" line")),
    };
    let mut labels = None;
    let mut default = DefaultRule::None;
    while let Some(&(no, l)) = it.peek() {
        if let Some(v) = header(l, "items") {
            if labels.is_some() {
                return Err(parse_err(no, "duplicate items line"));
            }
            let names: Vec<String> = v.split_whitespace().map(str::to_string).collect();
            if names.len() != n {
                return Err(parse_err(
                    no,
                    format!("{} item names for n = {n}", names.len()),
                ));
            }
            labels = Some((no, names));
        } else if allow_default && header(l, "default").is_some() {
            default = match header(l, "default").unwrap() {
                "none" => DefaultRule::None,
                "identity" => DefaultRule::Identity,
                "empty" => DefaultRule::Empty,
                other => return Err(parse_err(no, format!("unknown default {other:?}"))),
            };
        } else {
            break;
        }
        it.next();
    }
    let grand = match labels {
        Some((no, names)) => {
            GrandSet::labelled(names, cap).map_err(|e| parse_err(no, e.to_string()))?
        }
        None => GrandSet::with_cap(n, cap).map_err(|e| parse_err(n_line, e.to_string()))?,
    };
    Ok(Header { grand, default })
}

fn parse_items(grand: &GrandSet, words: &str, line: usize) -> Result<Menu, Error> {
    let mut menu = Menu::EMPTY;
    for w in words.split_whitespace() {
        let i = grand
            .index_of(w)
            .ok_or_else(|| parse_err(line, format!("unknown item {w:?}")))?;
        if menu.contains(i) {
            return Err(parse_err(line, format!("item {w:?} listed twice")));
        }
        menu = menu.with(i);
    }
    Ok(menu)
}

fn names(grand: &GrandSet, menu: Menu) -> String {
    menu.iter()
        .map(|i| grand.name(i))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_header(out: &mut String, tag: &str, grand: &GrandSet) {
    let _ = writeln!(out, "{tag}");
    let _ = writeln!(out, "n = {}", grand.len());
    if let Some(labels) = grand.labels() {
        let _ = writeln!(out, "items = {}", labels.join(" "));
    }
}

/// Parses a choice file, rejecting grand sets above `cap` items.
pub fn parse_choice(text: &str, cap: usize) -> Result<QuasiChoice, Error> {
    let mut it = lines(text).peekable();
    let Header { grand, default } = read_header(&mut it, "qc v1", cap, true)?;
    let mut table: Vec<Option<Menu>> = vec![None; grand.menu_count()];
    table[0] = Some(Menu::EMPTY);
    for (no, l) in it {
        let (lhs, rhs) = l.split_once("->").ok_or_else(|| {
            parse_err(no, format!("expected \"<items> -> <items>\", found {l:?}"))
        })?;
        let menu = parse_items(&grand, lhs, no)?;
        if menu.is_empty() {
            return Err(parse_err(no, "empty menu on the left of ->"));
        }
        let chosen = parse_items(&grand, rhs, no)?;
        if !chosen.is_subset(menu) {
            return Err(parse_err(
                no,
                format!(
                    "choice {} is not inside menu {}",
                    grand.show(chosen),
                    grand.show(menu)
                ),
            ));
        }
        if table[menu.index()].replace(chosen).is_some() {
            return Err(parse_err(
                no,
                format!("menu {} listed twice", grand.show(menu)),
            ));
        }
    }
    let mut filled = Vec::with_capacity(table.len());
    for (i, entry) in table.into_iter().enumerate() {
        let menu = Menu(i as u32);
        filled.push(match (entry, default) {
            (Some(c), _) => c,
            (None, DefaultRule::Identity) => menu,
            (None, DefaultRule::Empty) => Menu::EMPTY,
            (None, DefaultRule::None) => {
                return Err(parse_err(
                    0,
                    format!("menu {} is missing and default = none", grand.show(menu)),
                ))
            }
        });
    }
    QuasiChoice::from_table(grand, filled)
}

/// Writes every nonempty menu, by size and then by bitmask.
pub fn write_choice(c: &QuasiChoice) -> String {
    let grand = c.grand();
    let mut out = String::new();
    write_header(&mut out, "qc v1", grand);
    let mut menus: Vec<Menu> = grand.menus().skip(1).collect();
    menus.sort_by_key(|m| (m.len(), m.bits()));
    for a in menus {
        let chosen = c.get(a);
        let rhs = names(grand, chosen);
        if rhs.is_empty() {
            let _ = writeln!(out, "{} ->", names(grand, a));
        } else {
            let _ = writeln!(out, "{} -> {}", names(grand, a), rhs);
        }
    }
    out
}

/// Parses a ballot file into voters; each voter's ballot is its table.
pub fn parse_voters(text: &str, cap: usize) -> Result<Vec<Relation>, Error> {
    let mut it = lines(text).peekable();
    let Header { grand, .. } = read_header(&mut it, "ballots v1", cap, false)?;
    let mut voters = Vec::new();
    let mut current: Option<(usize, Relation)> = None;
    let mut last_line = 0;
    for (no, l) in it {
        last_line = no;
        if l == "end" {
            let (_, rel) = current
                .take()
                .unwrap_or_else(|| (no, Relation::empty(grand.clone())));
            voters.push(rel);
            continue;
        }
        let (lhs, rhs) = l.split_once("->").ok_or_else(|| {
            parse_err(
                no,
                format!("expected \"a -> b ...\" or \"end\", found {l:?}"),
            )
        })?;
        let mut sources = lhs.split_whitespace();
        let (Some(src), None) = (sources.next(), sources.next()) else {
            return Err(parse_err(no, "an edge line has exactly one source item"));
        };
        let q = grand
            .index_of(src)
            .ok_or_else(|| parse_err(no, format!("unknown item {src:?}")))?;
        let targets = parse_items(&grand, rhs, no)?;
        if targets.is_empty() {
            return Err(parse_err(no, "edge line without targets"));
        }
        let (_, rel) = current.get_or_insert_with(|| (no, Relation::empty(grand.clone())));
        for p in targets {
            rel.add(q, p);
        }
    }
    if let Some((start, _)) = current {
        return Err(parse_err(start, "voter block without a closing \"end\""));
    }
    if voters.is_empty() {
        return Err(parse_err(last_line, "no voter blocks"));
    }
    Ok(voters)
}

pub fn parse_ballots(text: &str, cap: usize) -> Result<BallotFamily, Error> {
    BallotFamily::from_voters(parse_voters(text, cap)?)
}

/// Writes the revealed relation of each ballot, one source item per line.
pub fn write_ballots(family: &BallotFamily) -> String {
    let grand = family.grand();
    let mut out = String::new();
    write_header(&mut out, "ballots v1", grand);
    for b in family.members() {
        write_voter(&mut out, &revealed_relation(b.choice()));
    }
    out
}

/// Writes voters as given, without canonicalizing through their ballots.
pub fn write_voters<'a>(voters: impl IntoIterator<Item = &'a Relation>) -> Option<String> {
    let mut voters = voters.into_iter().peekable();
    let grand = voters.peek()?.grand().clone();
    let mut out = String::new();
    write_header(&mut out, "ballots v1", &grand);
    for v in voters {
        write_voter(&mut out, v);
    }
    Some(out)
}

fn write_voter(out: &mut String, rel: &Relation) {
    let grand = rel.grand();
    let n = grand.len();
    for q in 0..n {
        let targets: Menu = (0..n).filter(|&p| rel.has_edge(q, p)).collect();
        if !targets.is_empty() {
            let _ = writeln!(out, "{} -> {}", grand.name(q), names(grand, targets));
        }
    }
    let _ = writeln!(out, "end");
}

/// True when every ballot of `a` has the same table as the ballot of `b` in
/// the same position.
pub fn same_tables(a: &BallotFamily, b: &BallotFamily) -> bool {
    a.len() == b.len() && a.members().iter().zip(b.members()).all(|(x, y)| x == y)
}
