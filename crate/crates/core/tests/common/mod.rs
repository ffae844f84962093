//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the order or length code under test.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use speh_core::perm::Permutation;

pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Every permutation of `1..=n`, by recursive insertion.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn inversions(s: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                c += 1;
            }
        }
    }
    c
}

pub fn is_involution(s: &[usize]) -> bool {
    (0..s.len()).all(|i| s[s[i] - 1] == i + 1)
}

/// Bruhat order on `S_n` as the transitive closure of `σ → σ t_{i,j}` with
/// `inv(σ) < inv(σ t_{i,j})`. Returns the elements and `leq[a][b]`.
pub struct BruhatOracle {
    pub elems: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
    pub leq: Vec<Vec<bool>>,
}

impl BruhatOracle {
    pub fn new(n: usize) -> Self {
        let elems = all_perms(n);
        let index: HashMap<Vec<usize>, usize> =
            elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut succ = vec![Vec::new(); elems.len()];
        for (a, s) in elems.iter().enumerate() {
            for i in 0..n {
                for j in i + 1..n {
                    let mut t = s.clone();
                    t.swap(i, j);
                    if inversions(&t) > inversions(s) {
                        succ[a].push(index[&t]);
                    }
                }
            }
        }
        let mut leq = vec![vec![false; elems.len()]; elems.len()];
        for a in 0..elems.len() {
            let mut queue = VecDeque::from([a]);
            leq[a][a] = true;
            while let Some(x) = queue.pop_front() {
                for &y in &succ[x] {
                    if !leq[a][y] {
                        leq[a][y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        BruhatOracle { elems, index, leq }
    }

    pub fn le(&self, a: &[usize], b: &[usize]) -> bool {
        self.leq[self.index[a]][self.index[b]]
    }

    /// Covers of `a` among the elements accepted by `keep`: `a < b` with no
    /// kept element strictly between.
    pub fn covers_within(&self, a: usize, keep: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let above: Vec<usize> = (0..self.elems.len())
            .filter(|&b| b != a && keep(b) && self.leq[a][b])
            .collect();
        above
            .iter()
            .copied()
            .filter(|&b| !above.iter().any(|&c| c != b && self.leq[c][b]))
            .collect()
    }
}

/// Integer polynomials in `q`, constant term first.
pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Kazhdan–Lusztig polynomials through R-polynomials:
/// `q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = Σ_{x<y≤w} R_{x,y} P_{y,w}`.
pub struct KlOracle {
    pub bruhat: BruhatOracle,
    len: Vec<usize>,
    r: HashMap<(usize, usize), Poly>,
    p: HashMap<(usize, usize), Poly>,
}

impl KlOracle {
    pub fn new(n: usize) -> Self {
        let bruhat = BruhatOracle::new(n);
        let len: Vec<usize> = bruhat.elems.iter().map(|s| inversions(s)).collect();
        let mut o = KlOracle {
            bruhat,
            len,
            r: HashMap::new(),
            p: HashMap::new(),
        };
        let total = o.bruhat.elems.len();
        let mut order: Vec<usize> = (0..total).collect();
        order.sort_by_key(|&i| o.len[i]);
        for &w in &order {
            let mut xs: Vec<usize> = (0..total).filter(|&x| o.bruhat.leq[x][w]).collect();
            xs.sort_by_key(|&x| std::cmp::Reverse(o.len[x]));
            for x in xs {
                let pxw = o.compute_p(x, w);
                o.p.insert((x, w), pxw);
            }
        }
        o
    }

    /// `s_k · σ`: exchange the values `k` and `k + 1`.
    fn left(&self, k: usize, a: usize) -> usize {
        let s: Vec<usize> = self.bruhat.elems[a]
            .iter()
            .map(|&v| if v == k { k + 1 } else if v == k + 1 { k } else { v })
            .collect();
        self.bruhat.index[&s]
    }

    pub fn r_poly(&mut self, x: usize, w: usize) -> Poly {
        if !self.bruhat.leq[x][w] {
            return Vec::new();
        }
        if x == w {
            return vec![1];
        }
        if let Some(r) = self.r.get(&(x, w)) {
            return r.clone();
        }
        let n = self.bruhat.elems[0].len();
        let k = (1..n)
            .find(|&k| self.len[self.left(k, w)] < self.len[w])
            .expect("w is not the identity");
        let (sx, sw) = (self.left(k, x), self.left(k, w));
        let out = if self.len[sx] < self.len[x] {
            self.r_poly(sx, sw)
        } else {
            let a = mul(&vec![-1, 1], &self.r_poly(x, sw));
            let b = mul(&vec![0, 1], &self.r_poly(sx, sw));
            add(&a, &b)
        };
        self.r.insert((x, w), out.clone());
        out
    }

    fn compute_p(&mut self, x: usize, w: usize) -> Poly {
        if x == w {
            return vec![1];
        }
        let d = self.len[w] - self.len[x];
        let total = self.bruhat.elems.len();
        let mut rhs: Poly = Vec::new();
        for y in 0..total {
            if y != x && self.bruhat.leq[x][y] && self.bruhat.leq[y][w] {
                let pyw = self.p[&(y, w)].clone();
                rhs = add(&rhs, &mul(&self.r_poly(x, y), &pyw));
            }
        }
        // The left side is q^d P(1/q) - P(q); the first part occupies
        // degrees above (d-1)/2, so P's coefficient of q^i is rhs[d-i].
        let max_deg = (d - 1) / 2;
        let coeffs: Poly = (0..=max_deg).map(|i| rhs.get(d - i).copied().unwrap_or(0)).collect();
        trim(coeffs)
    }

    pub fn p(&self, x: &[usize], w: &[usize]) -> Poly {
        let (a, b) = (self.bruhat.index[x], self.bruhat.index[w]);
        self.p.get(&(a, b)).cloned().unwrap_or_default()
    }
}
