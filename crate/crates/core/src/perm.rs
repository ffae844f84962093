//! Permutations and involutions of the symmetric group, their length
//! statistics, Bruhat order and cover relations.
//!
//! Everything is 1-based. Products follow `(s·t)(i) = s(t(i))`, so right
//! multiplication by the transposition `t_{i,j}` swaps the entries at
//! positions `i` and `j` of the one-line notation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (values in `1..=n`).
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("{map:?}")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &map {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{map:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            map: map.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub(crate) fn from_raw(map: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(map.iter().map(|&v| v as usize).collect()).is_ok());
        Permutation { map }
    }

    pub fn identity(n: usize) -> Self {
        Permutation::from_raw((1..=n as u8).collect())
    }

    /// The longest element `n n-1 ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation::from_raw((1..=n as u8).rev().collect())
    }

    /// The transposition exchanging `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        Permutation::identity(n).swap_positions(i, j)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Image of `i` (1-based).
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.map[i - 1] as usize
    }

    /// One-line notation as plain integers.
    pub fn values(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (pos, &v) in self.map.iter().enumerate() {
            inv[v as usize - 1] = pos as u8 + 1;
        }
        Permutation::from_raw(inv)
    }

    /// `self · other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "permutations of different degree");
        Permutation::from_raw(other.map.iter().map(|&v| self.map[v as usize - 1]).collect())
    }

    /// `self · t_{i,j}`: swaps the entries at positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut map = self.map.clone();
        map.swap(i - 1, j - 1);
        Permutation::from_raw(map)
    }

    /// `t_{a,b} · self`: swaps the values `a` and `b`.
    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let (a, b) = (a as u8, b as u8);
        Permutation::from_raw(
            self.map
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.map
            .iter()
            .enumerate()
            .all(|(i, &v)| self.map[v as usize - 1] as usize == i + 1)
    }

    /// Number of inversions; this is the Coxeter length `l_S`.
    pub fn inv_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.map.len() {
            for j in i + 1..self.map.len() {
                if self.map[i] > self.map[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of excedances `|{i : s(i) > i}|`.
    pub fn exc_count(&self) -> usize {
        self.map
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize > i + 1)
            .count()
    }

    pub fn length(&self) -> usize {
        self.inv_count()
    }

    /// All pairs `(i, j)`, `i < j`, with `s(i) < s(j)` and no `k` strictly
    /// between them whose value lies strictly between `s(i)` and `s(j)`.
    pub fn free_ascents(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (a, b) = (self.at(i), self.at(j));
                if a < b && !(i + 1..j).any(|k| (a + 1..b).contains(&self.at(k))) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Elements covering `self` in Bruhat order: `s·t_{i,j}` over free ascents.
    pub fn covers(&self) -> Vec<Permutation> {
        self.free_ascents()
            .into_iter()
            .map(|(i, j)| self.swap_positions(i, j))
            .collect()
    }

    /// Bruhat comparison by sorted-prefix dominance: `u ≤ v` iff for every
    /// `k` the sorted first `k` values of `u` are entrywise at most those of `v`.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        assert_eq!(self.len(), other.len(), "permutations of different degree");
        let n = self.len();
        // Equivalent count form: for all k and all thresholds t,
        // #{i ≤ k : u(i) ≥ t} ≤ #{i ≤ k : v(i) ≥ t}.
        let mut cu = vec![0i32; n + 2];
        let mut cv = vec![0i32; n + 2];
        for k in 0..n {
            let (a, b) = (self.map[k] as usize, other.map[k] as usize);
            for t in 1..=a {
                cu[t] += 1;
            }
            for t in 1..=b {
                cv[t] += 1;
            }
            if (1..=n).any(|t| cu[t] > cv[t]) {
                return false;
            }
        }
        true
    }

    /// Iterates `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        LexPermutations {
            next: Some((1..=n as u8).collect()),
        }
    }
}

struct LexPermutations {
    next: Option<Vec<u8>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = succ.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation::from_raw(current))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.map.len().cmp(&other.map.len()).then_with(|| self.map.cmp(&other.map))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.map {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Parses `"2143"` (one digit per entry) or `"10,2,...,1"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        match values {
            Some(v) => Permutation::new(v),
            None => Err(Error::InvalidPermutation(s.to_string())),
        }
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A permutation equal to its own inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Involution(Permutation);

impl Involution {
    pub fn new(perm: Permutation) -> Result<Self> {
        if perm.is_involution() {
            Ok(Involution(perm))
        } else {
            Err(Error::NotAnInvolution(perm.to_string()))
        }
    }

    pub fn identity(n: usize) -> Self {
        Involution(Permutation::identity(n))
    }

    pub fn longest(n: usize) -> Self {
        Involution(Permutation::longest(n))
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn into_perm(self) -> Permutation {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, i: usize) -> usize {
        self.0.at(i)
    }

    /// `l_I = (inv + exc) / 2`.
    pub fn length_i(&self) -> usize {
        let total = self.0.inv_count() + self.0.exc_count();
        debug_assert!(total % 2 == 0);
        total / 2
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.at(i) == i).collect()
    }

    /// 2-cycles `(i, j)` with `i < j`.
    pub fn two_cycles(&self) -> Vec<(usize, usize)> {
        (1..=self.len())
            .filter(|&i| self.at(i) > i)
            .map(|i| (i, self.at(i)))
            .collect()
    }

    /// All involutions of `S_n`, lexicographic.
    pub fn all(n: usize) -> Vec<Involution> {
        let mut out = Vec::new();
        let mut map = vec![0u8; n];
        fill_involutions(&mut map, &mut out);
        out.sort();
        out
    }

    /// Involutions covering `self` in the induced Bruhat order.
    pub fn covers(&self) -> Vec<Involution> {
        let target = self.length_i() + 1;
        Involution::all(self.len())
            .into_iter()
            .filter(|t| t.length_i() == target && self.0.bruhat_leq(&t.0))
            .collect()
    }

    pub fn bruhat_leq(&self, other: &Involution) -> bool {
        self.0.bruhat_leq(&other.0)
    }
}

fn fill_involutions(map: &mut [u8], out: &mut Vec<Involution>) {
    let Some(first) = map.iter().position(|&v| v == 0) else {
        out.push(Involution(Permutation::from_raw(map.to_vec())));
        return;
    };
    map[first] = first as u8 + 1;
    fill_involutions(map, out);
    for j in first + 1..map.len() {
        if map[j] == 0 {
            map[first] = j as u8 + 1;
            map[j] = first as u8 + 1;
            fill_involutions(map, out);
            map[j] = 0;
        }
    }
    map[first] = 0;
}

impl TryFrom<Permutation> for Involution {
    type Error = Error;

    fn try_from(p: Permutation) -> Result<Self> {
        Involution::new(p)
    }
}

impl FromStr for Involution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Involution::new(s.parse()?)
    }
}

impl<'de> Deserialize<'de> for Involution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let p = Permutation::deserialize(deserializer)?;
        Involution::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Involution({})", self.0)
    }
}

/// Shape of an involution cover, by the jump in Coxeter length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoverKind {
    GapOne,
    GapTwoA,
    GapTwoBLeft,
    GapTwoBRight,
    GapThree,
}

impl CoverKind {
    /// The `l_S` gap this kind of cover produces.
    pub fn length_gap(self) -> usize {
        match self {
            CoverKind::GapOne => 1,
            CoverKind::GapTwoA | CoverKind::GapTwoBLeft | CoverKind::GapTwoBRight => 2,
            CoverKind::GapThree => 3,
        }
    }
}

/// A factorization `upper = lower · t_rise · t_extra[0] · ...` of an
/// involution cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCase {
    pub kind: CoverKind,
    pub rise: (usize, usize),
    pub extra: Vec<(usize, usize)>,
}

impl CoverCase {
    /// Multiplies `lower` on the right by the rise and then the extra
    /// transpositions, in order.
    pub fn apply(&self, lower: &Permutation) -> Permutation {
        let mut out = lower.swap_positions(self.rise.0, self.rise.1);
        for &(a, b) in &self.extra {
            out = out.swap_positions(a, b);
        }
        out
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Recovers the transposition factorization of an involution cover.
///
/// Candidate shapes are tried for each free ascent `(i, j)` of `lower`, in
/// lexicographic order; the first whose product equals `upper` is returned.
pub fn classify_inv_cover(lower: &Involution, upper: &Involution) -> Result<CoverCase> {
    if lower.len() != upper.len()
        || upper.length_i() != lower.length_i() + 1
        || !lower.bruhat_leq(upper)
    {
        return Err(Error::NotACover(lower.to_string(), upper.to_string()));
    }
    let s = lower.perm();
    let target = upper.perm();
    let gap = target.inv_count() - s.inv_count();
    let n = s.len();
    let rises = s.free_ascents();
    let mut candidates: Vec<CoverCase> = Vec::new();
    for &(i, j) in &rises {
        let (si, sj) = (s.at(i), s.at(j));
        match gap {
            1 => candidates.push(CoverCase {
                kind: CoverKind::GapOne,
                rise: (i, j),
                extra: vec![],
            }),
            // Mirror images of the two shapes above under s ↦ w0 s w0: the
            // left end of the rise is the fixed point.
            2 if si == i && sj != j => {
                if i != sj {
                    candidates.push(CoverCase {
                        kind: CoverKind::GapTwoBRight,
                        rise: (i, j),
                        extra: vec![ordered(i, sj)],
                    });
                }
                candidates.push(CoverCase {
                    kind: CoverKind::GapTwoBLeft,
                    rise: (i, j),
                    extra: vec![ordered(j, sj)],
                });
            }
            3 if si == i && sj != j => {
                for l in (1..=n).filter(|&l| s.at(l) == l && l != i) {
                    let uj = target.at(j);
                    if uj == l {
                        continue;
                    }
                    candidates.push(CoverCase {
                        kind: CoverKind::GapThree,
                        rise: (i, j),
                        extra: vec![ordered(l, uj), ordered(i, l)],
                    });
                }
            }
            2 => {
                if si != i && sj != j && si != sj {
                    candidates.push(CoverCase {
                        kind: CoverKind::GapTwoA,
                        rise: (i, j),
                        extra: vec![ordered(sj, si)],
                    });
                }
                if si != i && sj == j {
                    if j != si {
                        candidates.push(CoverCase {
                            kind: CoverKind::GapTwoBRight,
                            rise: (i, j),
                            extra: vec![ordered(j, si)],
                        });
                    }
                    candidates.push(CoverCase {
                        kind: CoverKind::GapTwoBLeft,
                        rise: (i, j),
                        extra: vec![ordered(i, si)],
                    });
                }
            }
            3 if si != i && sj == j => {
                for l in (1..=n).filter(|&l| s.at(l) == l && l != j) {
                    let ui = target.at(i);
                    if ui == l {
                        continue;
                    }
                    candidates.push(CoverCase {
                        kind: CoverKind::GapThree,
                        rise: (i, j),
                        extra: vec![ordered(l, ui), ordered(j, l)],
                    });
                }
            }
            _ => {}
        }
    }
    if let Some(c) = candidates.into_iter().find(|c| c.apply(s) == *target) {
        return Ok(c);
    }
    // Shapes outside the list above (e.g. 2143 ⋖ 4231, with no fixed
    // points): a free rise followed by the shortest completion.
    let kind = match gap {
        1 => CoverKind::GapOne,
        2 => CoverKind::GapTwoA,
        3 => CoverKind::GapThree,
        _ => return Err(Error::UnclassifiedCover(lower.to_string(), upper.to_string())),
    };
    rises
        .iter()
        .map(|&(i, j)| CoverCase {
            kind,
            rise: (i, j),
            extra: completion(&s.swap_positions(i, j), target),
        })
        .find(|c| c.extra.len() + 1 == gap)
        .ok_or_else(|| Error::UnclassifiedCover(lower.to_string(), upper.to_string()))
}

/// Transpositions `t_1, t_2, ...` with `from · t_1 · t_2 · ... = to`, as few
/// as possible.
fn completion(from: &Permutation, to: &Permutation) -> Vec<(usize, usize)> {
    let mut cur = from.clone();
    let mut out = Vec::new();
    for p in 1..=cur.len() {
        if cur.at(p) != to.at(p) {
            let q = (p + 1..=cur.len()).find(|&q| cur.at(q) == to.at(p)).expect("same values");
            cur = cur.swap_positions(p, q);
            out.push((p, q));
        }
    }
    out
}

/// The θ-action on Speh-block parameters, `s ↦ s⁻¹`.
pub fn theta_param(s: &Permutation) -> Permutation {
    s.inverse()
}

/// Whether `s` lies in the subset of fixed-point-free involutions of
/// `S_{2n}` exchanging `{1..n}` and `{n+1..2n}`.
pub fn in_split_interval(s: &Involution) -> bool {
    let n2 = s.len();
    if n2 % 2 != 0 {
        return false;
    }
    let half = n2 / 2;
    (1..=half).all(|i| s.at(i) > half)
}

/// `σ(s)(i) = s(i) - N/2` on the split interval of `𝔍_N`.
pub fn sigma_iso(s: &Involution) -> Result<Permutation> {
    if !in_split_interval(s) {
        return Err(Error::NotInIntervalSubset(s.to_string()));
    }
    let half = s.len() / 2;
    Permutation::new((1..=half).map(|i| s.at(i) - half).collect())
}

/// The bottom of the split interval: `i ↦ n + i` on the first half.
pub fn split_interval_bottom(n: usize) -> Involution {
    let mut map = Vec::with_capacity(2 * n);
    map.extend(n + 1..=2 * n);
    map.extend(1..=n);
    Involution::new(Permutation::new(map).expect("valid")).expect("involution")
}

/// Elements of the split interval of `𝔍_{2n}`.
pub fn split_interval(n: usize) -> Vec<Involution> {
    Permutation::all(n)
        .map(|w| {
            let mut map = vec![0usize; 2 * n];
            for i in 1..=n {
                map[i - 1] = w.at(i) + n;
                map[w.at(i) + n - 1] = i;
            }
            Involution::new(Permutation::new(map).expect("valid")).expect("involution")
        })
        .collect()
}

/// Sign attached to a fixed point of a signed involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An involution with a sign on each fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedInvolution {
    pub involution: Involution,
    /// `signs[i-1]` is `Some` exactly when `i` is a fixed point.
    pub signs: Vec<Option<Sign>>,
}

impl SignedInvolution {
    pub fn new(involution: Involution, signs: Vec<Option<Sign>>) -> Result<Self> {
        let ok = signs.len() == involution.len()
            && (1..=involution.len()).all(|i| (involution.at(i) == i) == signs[i - 1].is_some());
        if ok {
            Ok(SignedInvolution { involution, signs })
        } else {
            Err(Error::InvalidSigns(involution.to_string()))
        }
    }

    pub fn len(&self) -> usize {
        self.involution.len()
    }

    pub fn is_empty(&self) -> bool {
        self.involution.is_empty()
    }
}
