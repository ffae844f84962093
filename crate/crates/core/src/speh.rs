//! Bookkeeping for the Speh block of `GL(2n, R)`: standard-module labels,
//! the θ-action on parameters, Kazhdan–Lusztig polynomials of `S_n` and the
//! Euler characteristic of the Johnson resolution.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{AddAssign, SubAssign};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Involution, Permutation, SignedInvolution};

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_doubled(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn neg(self) -> Self {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_regular(p: usize, n: usize) -> Result<()> {
    if n == 0 || p < n {
        return Err(Error::IrregularCharacter { p, n });
    }
    Ok(())
}

/// `m_i = (p + n - 1)/2 - i` for `i = 1..n`.
pub fn m_values(p: usize, n: usize) -> Result<Vec<HalfInt>> {
    check_regular(p, n)?;
    let top = (p + n - 1) as i64;
    Ok((1..=n as i64).map(|i| HalfInt(top - 2 * i)).collect())
}

/// The `2n` entries of the infinitesimal character, in increasing order.
pub fn infinitesimal_character(p: usize, n: usize) -> Result<Vec<HalfInt>> {
    check_regular(p, n)?;
    let (p, n) = (p as i64, n as i64);
    let mut out: Vec<HalfInt> = (0..n)
        .flat_map(|j| [HalfInt(-p - (n - 1) + 2 * j), HalfInt(p - (n - 1) + 2 * j)])
        .collect();
    out.sort();
    Ok(out)
}

/// `δ(a_1, b_1) × ... × δ(a_n, b_n)`, one factor per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DeltaLabel {
    pub factors: Vec<(HalfInt, HalfInt)>,
}

impl fmt::Display for DeltaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl DeltaLabel {
    /// Swaps and negates every factor, then restores the standard order
    /// (first components decreasing).
    pub fn theta(&self) -> DeltaLabel {
        let mut factors: Vec<(HalfInt, HalfInt)> =
            self.factors.iter().rev().map(|&(a, b)| (b.neg(), a.neg())).collect();
        factors.sort_by(|x, y| y.0.cmp(&x.0));
        DeltaLabel { factors }
    }

    /// Recovers `s` from a label with the given `p`.
    pub fn to_permutation(&self, p: usize) -> Result<Permutation> {
        let n = self.factors.len();
        let m = m_values(p, n)?;
        let bad = || Error::InvalidPermutation(self.to_string());
        let map = self
            .factors
            .iter()
            .zip(&m)
            .map(|(&(a, b), &mi)| {
                if a != mi {
                    return Err(bad());
                }
                m.iter().position(|&mj| mj.neg() == b).map(|j| j + 1).ok_or_else(bad)
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(map)
    }
}

/// Factor `i` is `(m_i, -m_{s(i)})`.
pub fn standard_label(p: usize, s: &Permutation) -> Result<DeltaLabel> {
    let m = m_values(p, s.len())?;
    Ok(DeltaLabel {
        factors: (1..=s.len()).map(|i| (m[i - 1], m[s.at(i) - 1].neg())).collect(),
    })
}

/// Whether `X(s)` is θ-invariant, that is `s² = 1`.
pub fn theta_fixed(s: &Permutation) -> bool {
    s.is_involution()
}

/// `η ↦ w0 η w0`, carrying the sign of `i` to `N + 1 - i`.
pub fn theta_on_signed_param(eta: &SignedInvolution) -> SignedInvolution {
    let n = eta.len();
    let w0 = Permutation::longest(n);
    let perm = w0.compose(eta.involution.perm()).compose(&w0);
    let signs = (1..=n).map(|i| eta.signs[n - i]).collect();
    SignedInvolution::new(Involution::new(perm).expect("conjugate of an involution"), signs)
        .expect("signs follow the fixed points")
}

/// An integer combination of basis symbols; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K) -> Self {
        let mut s = Self::new();
        s.add_term(key, 1);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut s = Self::new();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, key: K, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn scaled(&self, factor: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, &c)| (k.clone(), c * factor)))
    }

    /// Replaces `key` by `replacement`, keeping its coefficient.
    pub fn substitute(&self, key: &K, replacement: &FormalSum<K>) -> Self {
        let c = self.coeff(key);
        let mut out = self.clone();
        out.add_term(key.clone(), -c);
        out += &replacement.scaled(c);
        out
    }
}

impl<K: Ord + Clone> AddAssign<&FormalSum<K>> for FormalSum<K> {
    fn add_assign(&mut self, rhs: &FormalSum<K>) {
        for (k, &c) in &rhs.terms {
            self.add_term(k.clone(), c);
        }
    }
}

impl<K: Ord + Clone> SubAssign<&FormalSum<K>> for FormalSum<K> {
    fn sub_assign(&mut self, rhs: &FormalSum<K>) {
        for (k, &c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<K: Ord + fmt::Display> Serialize for FormalSum<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.terms.iter().map(|(k, c)| (k.to_string(), c)))
    }
}

/// Largest `n` accepted by [`KLTable::new`].
pub const KL_MAX_N: usize = 7;

/// Kazhdan–Lusztig polynomials `P_{x,w}` of `S_n`, stored for `x ≤ w`.
#[derive(Clone, Debug)]
pub struct KLTable {
    n: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    length: Vec<u32>,
    /// For each `w`, `(x, start, len)` sorted by `x`, into `coeffs`.
    entries: Vec<Vec<(u32, u32, u32)>>,
    coeffs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KlEntry {
    pub x: Permutation,
    pub w: Permutation,
    pub coeffs: Vec<i64>,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, factor: i64) {
    if p.is_empty() {
        return;
    }
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += factor * c;
    }
}

impl KLTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > KL_MAX_N {
            return Err(Error::TooLarge(n));
        }
        let mut perms: Vec<Permutation> = Permutation::all(n).collect();
        perms.sort_by_key(|p| (p.inv_count(), p.clone()));
        let index: HashMap<Permutation, u32> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let length: Vec<u32> = perms.iter().map(|p| p.inv_count() as u32).collect();
        // left[k][id] = s_k · perm, for k = 1..n-1.
        let left: Vec<Vec<u32>> = (1..n)
            .map(|k| perms.iter().map(|p| index[&p.swap_values(k, k + 1)]).collect())
            .collect();
        let mut table = KLTable {
            n,
            perms,
            index,
            length,
            entries: Vec::new(),
            coeffs: Vec::new(),
        };
        let total = table.perms.len();
        let mut mu_lists: Vec<Vec<(u32, i64)>> = Vec::with_capacity(total);
        for w in 0..total {
            let wp = table.perms[w].clone();
            let mut row: Vec<(u32, Vec<i64>)> = Vec::new();
            let descent = (0..n - 1).find(|&k| table.length[left[k][w] as usize] < table.length[w]);
            match descent {
                None => row.push((w as u32, vec![1])),
                Some(k) => {
                    let v = left[k][w] as usize;
                    let lw = table.length[w] as usize;
                    for x in 0..total {
                        if table.length[x] as usize > lw || !table.perms[x].bruhat_leq(&wp) {
                            continue;
                        }
                        let sx = left[k][x] as usize;
                        let c = usize::from(table.length[sx] < table.length[x]);
                        let mut acc = Vec::new();
                        add_shifted(&mut acc, &table.lookup(sx, v), 1 - c, 1);
                        add_shifted(&mut acc, &table.lookup(x, v), c, 1);
                        for &(z, mu) in &mu_lists[v] {
                            let z = z as usize;
                            if table.length[left[k][z] as usize] < table.length[z] {
                                let shift = (lw - table.length[z] as usize) / 2;
                                add_shifted(&mut acc, &table.lookup(x, z), shift, -mu);
                            }
                        }
                        let acc = trim(acc);
                        if !acc.is_empty() {
                            row.push((x as u32, acc));
                        }
                    }
                }
            }
            let mut stored = Vec::with_capacity(row.len());
            for (x, poly) in row {
                stored.push((x, table.coeffs.len() as u32, poly.len() as u32));
                table.coeffs.extend(poly);
            }
            table.entries.push(stored);
            mu_lists.push(table.mu_list(w));
        }
        Ok(table)
    }

    /// `(z, μ(z, w))` for `z < w` with `μ ≠ 0`.
    fn mu_list(&self, w: usize) -> Vec<(u32, i64)> {
        let lw = self.length[w] as usize;
        self.entries[w]
            .iter()
            .filter_map(|&(z, start, len)| {
                let gap = lw - self.length[z as usize] as usize;
                if gap % 2 == 0 {
                    return None;
                }
                let d = (gap - 1) / 2;
                let c = if d < len as usize {
                    self.coeffs[(start as usize) + d]
                } else {
                    0
                };
                (c != 0).then_some((z, c))
            })
            .collect()
    }

    fn lookup(&self, x: usize, w: usize) -> Vec<i64> {
        match self.entries[w].binary_search_by_key(&(x as u32), |e| e.0) {
            Ok(i) => {
                let (_, start, len) = self.entries[w][i];
                self.coeffs[start as usize..(start + len) as usize].to_vec()
            }
            Err(_) => Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients of `P_{x,w}` from the constant term up; empty when zero.
    pub fn poly(&self, x: &Permutation, w: &Permutation) -> Vec<i64> {
        match (self.index.get(x), self.index.get(w)) {
            (Some(&x), Some(&w)) => self.lookup(x as usize, w as usize),
            _ => Vec::new(),
        }
    }

    pub fn value_at_one(&self, x: &Permutation, w: &Permutation) -> i64 {
        self.poly(x, w).iter().sum()
    }

    /// Coefficient of `q^{(l(w)-l(x)-1)/2}` in `P_{x,w}`.
    pub fn mu(&self, x: &Permutation, w: &Permutation) -> i64 {
        let gap = w.inv_count() as i64 - x.inv_count() as i64;
        if gap <= 0 || gap % 2 == 0 {
            return 0;
        }
        self.poly(x, w).get(((gap - 1) / 2) as usize).copied().unwrap_or(0)
    }

    /// Every nonzero `P_{x,w}`, ordered by `(l(w), w, l(x), x)`.
    pub fn dump(&self) -> Vec<KlEntry> {
        let mut out = Vec::new();
        for (w, row) in self.entries.iter().enumerate() {
            for &(x, start, len) in row {
                out.push(KlEntry {
                    x: self.perms[x as usize].clone(),
                    w: self.perms[w].clone(),
                    coeffs: self.coeffs[start as usize..(start + len) as usize].to_vec(),
                });
            }
        }
        out
    }
}

/// How a standard module expands in the irreducible basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MultiplicityConvention {
    /// `m(X̄(w), X(y)) = P_{w,y}(1)`.
    Direct,
    /// `m(X̄(w), X(y)) = P_{w0 y, w0 w}(1)`.
    LongestTwisted,
}

/// The convention under which the Johnson resolution has the right Euler
/// characteristic at `n = 4`.
pub const CALIBRATED: MultiplicityConvention = MultiplicityConvention::LongestTwisted;

/// Multiplicity of `X̄(lower)` in `X(upper)` under [`CALIBRATED`].
pub fn multiplicity(upper: &Permutation, lower: &Permutation, t: &KLTable) -> i64 {
    multiplicity_with(upper, lower, t, CALIBRATED)
}

pub fn multiplicity_with(
    upper: &Permutation,
    lower: &Permutation,
    t: &KLTable,
    convention: MultiplicityConvention,
) -> i64 {
    match convention {
        MultiplicityConvention::Direct => t.value_at_one(lower, upper),
        MultiplicityConvention::LongestTwisted => {
            let w0 = Permutation::longest(upper.len());
            t.value_at_one(&w0.compose(upper), &w0.compose(lower))
        }
    }
}

/// `[X(y)]` in the irreducible basis.
pub fn expand_standard(
    y: &Permutation,
    t: &KLTable,
    convention: MultiplicityConvention,
) -> FormalSum<Permutation> {
    FormalSum::from_terms(
        Permutation::all(y.len()).map(|w| {
            let m = multiplicity_with(y, &w, t, convention);
            (w, m)
        }),
    )
}

/// `Σ_y (-1)^{l(w0) - l(y)} [X(y)] - [X̄(w0)]` over `S_n`, under
/// [`CALIBRATED`]; the check passes when this residual vanishes.
pub fn euler_check(n: usize, t: &KLTable) -> (bool, FormalSum<Permutation>) {
    euler_check_with(n, t, CALIBRATED)
}

pub fn euler_check_with(
    n: usize,
    t: &KLTable,
    convention: MultiplicityConvention,
) -> (bool, FormalSum<Permutation>) {
    assert_eq!(t.n(), n, "table size must match n");
    let top = n * (n - 1) / 2;
    let mut residual = FormalSum::new();
    for y in Permutation::all(n) {
        let sign = if (top - y.inv_count()) % 2 == 0 { 1 } else { -1 };
        residual += &expand_standard(&y, t, convention).scaled(sign);
    }
    residual.add_term(Permutation::longest(n), -1);
    (residual.is_zero(), residual)
}
