//! Clans: signed involutions in symbolic notation, parameterizing
//! representations of `U(p, q)` at a regular integral infinitesimal
//! character.
//!
//! A clan is written as a string over `+`, `-` and digits, each digit
//! occurring twice, e.g. `1+1` or `112233`. Covers are stored as
//! `(lower, upper)`; the rank of a clan is `l_I` of its projection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Involution, Permutation, Sign, SignedInvolution};
use crate::poset::RankedHasse;
use crate::speh::FormalSum;

/// Largest `p + q` accepted by [`clan_hasse`].
pub const CLAN_MAX_SIZE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Plus,
    Minus,
    Pair(u8),
}

impl Symbol {
    pub fn is_sign(self) -> bool {
        !matches!(self, Symbol::Pair(_))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clan {
    symbols: Vec<Symbol>,
}

impl Clan {
    /// Validates the pairing and renumbers digits by first occurrence.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
        for s in &symbols {
            if let Symbol::Pair(d) = s {
                *counts.entry(*d).or_default() += 1;
            }
        }
        if symbols.is_empty() || counts.values().any(|&c| c != 2) {
            return Err(Error::InvalidClan(render(&symbols)));
        }
        Ok(Clan::canonical(symbols))
    }

    fn canonical(symbols: Vec<Symbol>) -> Self {
        let mut rename: BTreeMap<u8, u8> = BTreeMap::new();
        let symbols = symbols
            .into_iter()
            .map(|s| match s {
                Symbol::Pair(d) => {
                    let next = rename.len() as u8 + 1;
                    Symbol::Pair(*rename.entry(d).or_insert(next))
                }
                other => other,
            })
            .collect();
        Clan { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_sign()).count() / 2
    }

    /// `(p, q)` with `p = m + #plus` and `q = m + #minus`.
    pub fn signature(&self) -> (usize, usize) {
        let m = self.pair_count();
        let plus = self.symbols.iter().filter(|&&s| s == Symbol::Plus).count();
        let minus = self.symbols.iter().filter(|&&s| s == Symbol::Minus).count();
        (m + plus, m + minus)
    }

    pub fn involution(&self) -> Involution {
        let n = self.len();
        let mut map: Vec<usize> = (1..=n).collect();
        for i in 0..n {
            if let Symbol::Pair(d) = self.symbols[i] {
                let j = (0..n)
                    .find(|&j| j != i && self.symbols[j] == Symbol::Pair(d))
                    .expect("digits occur twice");
                map[i] = j + 1;
            }
        }
        Involution::new(Permutation::new(map).expect("pairing is a bijection"))
            .expect("pairing is an involution")
    }

    pub fn rank(&self) -> usize {
        self.involution().length_i()
    }

    fn with_swapped(&self, i: usize) -> Clan {
        let mut symbols = self.symbols.clone();
        symbols.swap(i, i + 1);
        Clan::canonical(symbols)
    }

    fn with_replaced(&self, at: usize, replacement: &[Symbol]) -> Clan {
        let mut symbols = self.symbols.clone();
        symbols[at..at + replacement.len()].copy_from_slice(replacement);
        Clan::canonical(symbols)
    }
}

fn render(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(|s| match s {
            Symbol::Plus => "+".to_string(),
            Symbol::Minus => "-".to_string(),
            Symbol::Pair(d) => d.to_string(),
        })
        .collect()
}

impl fmt::Display for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.symbols))
    }
}

impl fmt::Debug for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clan({self})")
    }
}

/// Accepts `+`, `-` (or `−`) and the digits `1..9`.
impl FromStr for Clan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Symbol::Plus),
                '-' | '−' => Ok(Symbol::Minus),
                '1'..='9' => Ok(Symbol::Pair(c as u8 - b'0')),
                _ => Err(Error::InvalidClan(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Clan::new(symbols)
    }
}

impl Serialize for Clan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Clan {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All clans of signature `(p, q)`, sorted by `(rank, string)`.
pub fn enumerate_clans(p: usize, q: usize) -> Vec<Clan> {
    fn go(
        p: usize,
        q: usize,
        m: usize,
        open: &mut Vec<u8>,
        cur: &mut Vec<Symbol>,
        next: u8,
        out: &mut Vec<Clan>,
    ) {
        let n = p + q;
        if cur.len() == n {
            if open.is_empty() && next as usize - 1 == m {
                out.push(Clan {
                    symbols: cur.clone(),
                });
            }
            return;
        }
        let used_pairs = next as usize - 1;
        let plus = cur.iter().filter(|&&s| s == Symbol::Plus).count();
        let minus = cur.iter().filter(|&&s| s == Symbol::Minus).count();
        if plus + m < p {
            cur.push(Symbol::Plus);
            go(p, q, m, open, cur, next, out);
            cur.pop();
        }
        if minus + m < q {
            cur.push(Symbol::Minus);
            go(p, q, m, open, cur, next, out);
            cur.pop();
        }
        if used_pairs < m && cur.len() + open.len() + 2 <= n {
            cur.push(Symbol::Pair(next));
            open.push(next);
            go(p, q, m, open, cur, next + 1, out);
            open.pop();
            cur.pop();
        }
        for k in 0..open.len() {
            let d = open.remove(k);
            cur.push(Symbol::Pair(d));
            go(p, q, m, open, cur, next, out);
            cur.pop();
            open.insert(k, d);
        }
    }

    let mut out = Vec::new();
    if p + q == 0 {
        return out;
    }
    for m in 0..=p.min(q) {
        go(p, q, m, &mut Vec::new(), &mut Vec::new(), 1, &mut out);
    }
    let mut keyed: Vec<(usize, String, Clan)> =
        out.into_iter().map(|c| (c.rank(), c.to_string(), c)).collect();
    keyed.sort();
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|(_, _, c)| c).collect()
}

/// The underlying involution, with signs on its fixed points.
pub fn project(c: &Clan) -> SignedInvolution {
    let signs = c
        .symbols
        .iter()
        .map(|s| match s {
            Symbol::Plus => Some(Sign::Plus),
            Symbol::Minus => Some(Sign::Minus),
            Symbol::Pair(_) => None,
        })
        .collect();
    SignedInvolution::new(c.involution(), signs).expect("signs sit on fixed points")
}

/// Which move produced a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClanMove {
    /// `aa → +-` or `-+`.
    Split,
    /// Adjacent symbols, not both signs, exchanged.
    Swap,
    /// `a+-a` or `a-+a` → `aabb`.
    Exchange,
    /// A cover of the closure order that none of the local rules produce.
    Closure,
}

/// Which covers a clan diagram is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveSet {
    /// Only the split, swap and `a±∓a` exchange rules.
    Local,
    /// Every cover of the closure order ([`closure_leq`]).
    Full,
}

/// Candidates one step below `c` from the split, swap and `a±∓a` rules.
///
/// Swaps are kept only when they lower the rank by one. Splits and exchanges
/// are returned as generated so that a grading failure surfaces later.
pub fn local_moves(c: &Clan) -> Vec<(Clan, ClanMove)> {
    let s = &c.symbols;
    let rank = c.rank();
    let mut out: BTreeSet<(Clan, ClanMove)> = BTreeSet::new();
    for i in 0..s.len().saturating_sub(1) {
        let (a, b) = (s[i], s[i + 1]);
        if a == b && !a.is_sign() {
            for pair in [[Symbol::Plus, Symbol::Minus], [Symbol::Minus, Symbol::Plus]] {
                out.insert((c.with_replaced(i, &pair), ClanMove::Split));
            }
        } else if !(a.is_sign() && b.is_sign()) {
            let swapped = c.with_swapped(i);
            if swapped.rank() + 1 == rank {
                out.insert((swapped, ClanMove::Swap));
            }
        }
    }
    for i in 0..s.len().saturating_sub(3) {
        let (a, x, y, b) = (s[i], s[i + 1], s[i + 2], s[i + 3]);
        if a == b && !a.is_sign() && x.is_sign() && y.is_sign() && x != y {
            let fresh = [Symbol::Pair(200), Symbol::Pair(200), Symbol::Pair(201), Symbol::Pair(201)];
            out.insert((c.with_replaced(i, &fresh), ClanMove::Exchange));
        }
    }
    out.into_iter().collect()
}

/// Prefix counts deciding the closure order.
struct ClosureStats {
    n: usize,
    /// `plus[i]`: `+` signs and complete pairs among the first `i + 1` symbols.
    plus: Vec<usize>,
    minus: Vec<usize>,
    /// `cross[i * n + j]`, `i < j`: pairs with one end at or before `i` and
    /// the other at or after `j` (0-based).
    cross: Vec<usize>,
}

impl ClosureStats {
    fn of(c: &Clan) -> Self {
        let s = &c.symbols;
        let n = s.len();
        let mut partner = vec![usize::MAX; n];
        for i in 0..n {
            if !s[i].is_sign() {
                partner[i] = (0..n).find(|&j| j != i && s[j] == s[i]).unwrap();
            }
        }
        let (mut plus, mut minus) = (Vec::with_capacity(n), Vec::with_capacity(n));
        let (mut pl, mut mi) = (0, 0);
        for i in 0..n {
            match s[i] {
                Symbol::Plus => pl += 1,
                Symbol::Minus => mi += 1,
                Symbol::Pair(_) if partner[i] < i => {
                    pl += 1;
                    mi += 1;
                }
                Symbol::Pair(_) => {}
            }
            plus.push(pl);
            minus.push(mi);
        }
        let mut cross = vec![0; n * n];
        for a in 0..n {
            let b = partner[a];
            if b == usize::MAX || b < a {
                continue;
            }
            for i in a..b {
                for j in i + 1..=b {
                    cross[i * n + j] += 1;
                }
            }
        }
        ClosureStats {
            n,
            plus,
            minus,
            cross,
        }
    }

    fn leq(&self, other: &ClosureStats) -> bool {
        self.n == other.n
            && self.plus.iter().zip(&other.plus).all(|(a, b)| a >= b)
            && self.minus.iter().zip(&other.minus).all(|(a, b)| a >= b)
            && self.cross.iter().zip(&other.cross).all(|(a, b)| a <= b)
    }
}

/// The closure order on clans of one signature: `a ≤ b` iff every prefix of
/// `a` holds at least as many `+` (resp. `-`) signs and completed pairs as
/// the same prefix of `b`, and for all `i < j` no more pairs of `a` than of
/// `b` join a position `≤ i` to a position `≥ j`.
pub fn closure_leq(a: &Clan, b: &Clan) -> bool {
    a.signature() == b.signature() && ClosureStats::of(a).leq(&ClosureStats::of(b))
}

/// Covers below `c`: the local moves together with every remaining cover of
/// the closure order, tagged [`ClanMove::Closure`].
pub fn clan_moves(c: &Clan) -> Vec<(Clan, ClanMove)> {
    let mut out = local_moves(c);
    let known: BTreeSet<Clan> = out.iter().map(|(d, _)| d.clone()).collect();
    let (p, q) = c.signature();
    let rank = c.rank();
    let top = ClosureStats::of(c);
    for d in enumerate_clans(p, q) {
        if d.rank() + 1 == rank && !known.contains(&d) && ClosureStats::of(&d).leq(&top) {
            out.push((d, ClanMove::Closure));
        }
    }
    out.sort();
    out
}

/// Clans one step below `c` in the closure order.
pub fn clan_covers(c: &Clan) -> Vec<Clan> {
    let set: BTreeSet<Clan> = clan_moves(c).into_iter().map(|(d, _)| d).collect();
    set.into_iter().collect()
}

/// Clans one step below `c` under the local rules alone.
pub fn local_covers(c: &Clan) -> Vec<Clan> {
    let set: BTreeSet<Clan> = local_moves(c).into_iter().map(|(d, _)| d).collect();
    set.into_iter().collect()
}

/// Hasse diagram of the clans of signature `(p, q)`, ranked by `l_I`.
pub fn clan_hasse(p: usize, q: usize) -> Result<RankedHasse<Clan>> {
    clan_hasse_with(p, q, MoveSet::Full)
}

pub fn clan_hasse_with(p: usize, q: usize, moves: MoveSet) -> Result<RankedHasse<Clan>> {
    if p + q > CLAN_MAX_SIZE {
        return Err(Error::TooLarge(p + q));
    }
    let clans = enumerate_clans(p, q);
    let ranks: Vec<usize> = clans.iter().map(Clan::rank).collect();
    let mut covers: BTreeSet<(Clan, Clan)> = BTreeSet::new();
    for c in &clans {
        for d in local_covers(c) {
            covers.insert((d, c.clone()));
        }
    }
    if moves == MoveSet::Full {
        let stats: Vec<ClosureStats> = clans.iter().map(ClosureStats::of).collect();
        for (u, cu) in clans.iter().enumerate() {
            for (l, cl) in clans.iter().enumerate() {
                if ranks[l] + 1 == ranks[u] && stats[l].leq(&stats[u]) {
                    covers.insert((cl.clone(), cu.clone()));
                }
            }
        }
    }
    let nodes = clans.into_iter().zip(ranks);
    RankedHasse::from_covers(nodes, covers)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OrderAgreementReport {
    pub clans: usize,
    pub involutions: usize,
    pub comparable_pairs: usize,
    /// Clan pairs `x ≤ y` whose projections are not Bruhat-related.
    pub not_bruhat: Vec<(String, String)>,
    /// Bruhat pairs of achieved involutions not induced by any clan pair.
    pub missing: Vec<(String, String)>,
}

impl OrderAgreementReport {
    pub fn passed(&self) -> bool {
        self.not_bruhat.is_empty() && self.missing.is_empty()
    }
}

/// Compares the clan order with Bruhat order on the projected involutions.
pub fn order_agreement(p: usize, q: usize) -> Result<OrderAgreementReport> {
    order_agreement_with(p, q, MoveSet::Full)
}

pub fn order_agreement_with(p: usize, q: usize, moves: MoveSet) -> Result<OrderAgreementReport> {
    let h = clan_hasse_with(p, q, moves)?;
    let above = h.closure();
    let projections: Vec<Involution> = h.keys().iter().map(Clan::involution).collect();
    let achieved: BTreeSet<Involution> = projections.iter().cloned().collect();
    let mut induced: BTreeSet<(Involution, Involution)> = BTreeSet::new();
    let mut report = OrderAgreementReport {
        clans: h.len(),
        involutions: achieved.len(),
        ..Default::default()
    };
    for (x, set) in above.iter().enumerate() {
        for y in set.ones() {
            report.comparable_pairs += 1;
            let (a, b) = (&projections[x], &projections[y]);
            if !a.bruhat_leq(b) {
                report
                    .not_bruhat
                    .push((h.key(x).to_string(), h.key(y).to_string()));
            }
            induced.insert((a.clone(), b.clone()));
        }
    }
    for a in &achieved {
        for b in &achieved {
            if a.bruhat_leq(b) && !induced.contains(&(a.clone(), b.clone())) {
                report.missing.push((a.to_string(), b.to_string()));
            }
        }
    }
    Ok(report)
}

fn check_chain_signature(p: usize, q: usize) -> Result<usize> {
    if p == q || p == q + 1 {
        Ok(q)
    } else {
        Err(Error::UnsupportedSignature(p, q))
    }
}

/// The saturated chain through Whittaker-generic clans, starting at
/// `12..kk..21` (with `+` in the middle when `p = q + 1`) and descending by
/// adjacent swaps down to `1122..kk` (followed by `+` for odd size).
pub fn whittaker_chain(p: usize, q: usize) -> Result<Vec<Clan>> {
    let k = check_chain_signature(p, q)?;
    if p + q == 0 {
        return Err(Error::UnsupportedSignature(p, q));
    }
    if p == q {
        return Ok(even_chain(k));
    }
    // Move the middle + to the end, then follow the even chain.
    let mut word: Vec<Symbol> = (1..=k as u8).map(Symbol::Pair).collect();
    word.push(Symbol::Plus);
    word.extend((1..=k as u8).rev().map(Symbol::Pair));
    let mut chain = vec![Clan::canonical(word.clone())];
    for i in k..2 * k {
        word.swap(i, i + 1);
        chain.push(Clan::canonical(word.clone()));
    }
    for c in even_chain(k).into_iter().skip(1) {
        let mut symbols = c.symbols;
        symbols.push(Symbol::Plus);
        chain.push(Clan::canonical(symbols));
    }
    Ok(chain)
}

/// [`whittaker_chain`] continued by splitting the pairs of `1122..kk`
/// into `+-`, left to right, down to rank zero.
pub fn whittaker_chain_full(p: usize, q: usize) -> Result<Vec<Clan>> {
    let mut chain = whittaker_chain(p, q)?;
    let mut symbols = chain.last().expect("chain is never empty").symbols.clone();
    let mut i = 0;
    while i + 1 < symbols.len() {
        if !symbols[i].is_sign() && symbols[i] == symbols[i + 1] {
            symbols[i] = Symbol::Plus;
            symbols[i + 1] = Symbol::Minus;
            chain.push(Clan::canonical(symbols.clone()));
            i += 2;
        } else {
            i += 1;
        }
    }
    Ok(chain)
}

fn even_chain(k: usize) -> Vec<Clan> {
    if k == 0 {
        return Vec::new();
    }
    let n = 2 * k;
    // Each position holds (value, token); tokens follow symbols through swaps.
    let mut word: Vec<(u8, usize)> = (1..=k as u8)
        .chain((1..=k as u8).rev())
        .enumerate()
        .map(|(t, v)| (v, t))
        .collect();
    let values = |w: &[(u8, usize)]| Clan::canonical(w.iter().map(|&(v, _)| Symbol::Pair(v)).collect());
    let mut chain = vec![values(&word)];
    let reversal = Involution::longest(n).length_i();
    let steps = reversal - k;
    let pos_of = |w: &[(u8, usize)], t: usize| w.iter().position(|&(_, u)| u == t).unwrap();
    let rightmost = |w: &[(u8, usize)], pred: &dyn Fn(usize) -> bool| {
        (0..w.len()).rev().find(|&j| pred(j)).expect("chain step exists")
    };
    let mut moved: Vec<usize> = Vec::new();
    for i in 1..=steps {
        let target = if i == 1 {
            word[rightmost(&word, &|j| word[j].0 == 1)].1
        } else {
            let prev = *moved.last().unwrap();
            let is_new = !moved[..moved.len() - 1].contains(&prev);
            let at = pos_of(&word, prev);
            let pair_right = (at + 1..n.saturating_sub(1)).any(|j| word[j].0 == word[j + 1].0);
            if is_new || pair_right {
                let l = (1..n)
                    .filter(|&j| word[j - 1].0 != word[j].0)
                    .map(|j| word[j].0)
                    .min()
                    .expect("some symbol has a different left neighbour");
                word[rightmost(&word, &|j| j > 0 && word[j].0 == l && word[j - 1].0 != l)].1
            } else {
                let v = word[at].0 + 1;
                word[rightmost(&word, &|j| word[j].0 == v)].1
            }
        };
        let at = pos_of(&word, target);
        word.swap(at - 1, at);
        moved.push(target);
        chain.push(values(&word));
    }
    chain
}

/// A class in the Grothendieck group: standard module or its irreducible
/// subquotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleClass {
    Standard(Clan),
    Irreducible(Clan),
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleClass::Standard(c) => write!(f, "X({c})"),
            ModuleClass::Irreducible(c) => write!(f, "Xbar({c})"),
        }
    }
}

impl Serialize for ModuleClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The composition-series identities for `U(2, 1)` around `X(1+1)`.
#[derive(Clone, Debug, Serialize)]
pub struct U21Fixture {
    /// `Xbar(1+1)`, `X(11+)` and `X(+11)` in terms of other classes.
    pub expansions: Vec<(ModuleClass, FormalSum<ModuleClass>)>,
    /// `X(1+1)` as a sum of irreducibles and one standard module.
    pub claim: (ModuleClass, FormalSum<ModuleClass>),
}

impl U21Fixture {
    /// `rhs(claim) - lhs(claim)` after replacing each irreducible by its
    /// expansion; zero when the identities are consistent.
    pub fn residual(&self) -> FormalSum<ModuleClass> {
        let mut rhs = self.claim.1.clone();
        // Express every expanded key through standard modules only.
        let mut irreducible_forms: Vec<(ModuleClass, FormalSum<ModuleClass>)> = Vec::new();
        for (key, expansion) in &self.expansions {
            match key {
                ModuleClass::Irreducible(_) => irreducible_forms.push((key.clone(), expansion.clone())),
                ModuleClass::Standard(c) => {
                    // X(c) = Xbar(c) + rest, so Xbar(c) = X(c) - rest.
                    let mut form = FormalSum::single(key.clone());
                    let mut rest = expansion.clone();
                    rest.add_term(ModuleClass::Irreducible(c.clone()), -1);
                    form -= &rest;
                    irreducible_forms.push((ModuleClass::Irreducible(c.clone()), form));
                }
            }
        }
        for (key, form) in &irreducible_forms {
            rhs = rhs.substitute(key, form);
        }
        rhs.add_term(self.claim.0.clone(), -1);
        rhs
    }
}

fn clan(s: &str) -> Clan {
    s.parse().expect("fixture clan")
}

fn x(s: &str) -> ModuleClass {
    ModuleClass::Standard(clan(s))
}

fn xbar(s: &str) -> ModuleClass {
    ModuleClass::Irreducible(clan(s))
}

fn build_u21(middle_sign: i64) -> U21Fixture {
    let s = middle_sign;
    U21Fixture {
        expansions: vec![
            (
                xbar("1+1"),
                FormalSum::from_terms([
                    (x("1+1"), 1),
                    (x("11+"), -1),
                    (x("+11"), -1),
                    (x("-++"), 1),
                    (x("+-+"), 1),
                    (x("++-"), 1),
                ]),
            ),
            (
                x("11+"),
                FormalSum::from_terms([(xbar("11+"), 1), (x("+-+"), s), (x("-++"), s)]),
            ),
            (
                x("+11"),
                FormalSum::from_terms([(xbar("+11"), 1), (x("+-+"), s), (x("++-"), s)]),
            ),
        ],
        claim: (
            x("1+1"),
            FormalSum::from_terms([(xbar("1+1"), 1), (xbar("+11"), 1), (xbar("11+"), 1), (x("+-+"), 1)]),
        ),
    }
}

/// The identities with the standard-module expansions of `X(11+)` and
/// `X(+11)` carrying `+` signs, which make the three identities consistent.
pub fn u21_composition_fixture() -> U21Fixture {
    build_u21(1)
}

/// The same identities with `-` signs in the expansions of `X(11+)` and
/// `X(+11)`. This variant leaves a nonzero residual.
pub fn u21_composition_fixture_as_printed() -> U21Fixture {
    build_u21(-1)
}

/// `x ≤ y` in the clan poset, for diagnostics outside a built diagram.
pub fn clan_leq(h: &RankedHasse<Clan>, x: &Clan, y: &Clan) -> Result<bool> {
    Ok(h.leq(h.id(x)?, h.id(y)?))
}

/// Clans grouped by their projected involution.
pub fn packets(clans: &[Clan]) -> BTreeMap<Involution, Vec<Clan>> {
    let mut out: BTreeMap<Involution, Vec<Clan>> = BTreeMap::new();
    for c in clans {
        out.entry(c.involution()).or_default().push(c.clone());
    }
    out
}
