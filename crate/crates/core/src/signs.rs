//! Edge signs making every diamond anticommute, and the complexes they
//! define.
//!
//! Complexes follow the diagram orientation: the top of the poset sits in
//! degree 0 and differentials run down the cover edges.

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::poset::{Diamond, NodeId, NodeKey, RankedHasse};

/// One `±1` per cover edge, indexed like [`RankedHasse::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignAssignment {
    signs: Vec<i8>,
}

/// An edge in complex orientation: `src` is the upper node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedEdge {
    pub src: String,
    pub dst: String,
    pub sign: i8,
}

impl SignAssignment {
    pub fn all_plus<K: NodeKey>(h: &RankedHasse<K>) -> Self {
        SignAssignment {
            signs: vec![1; h.edges().len()],
        }
    }

    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::SignMismatch(format!("sign {bad} is not ±1")));
        }
        Ok(SignAssignment { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, edge: usize) -> i8 {
        self.signs[edge]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn flipped(&self, edge: usize) -> Self {
        let mut out = self.clone();
        out.signs[edge] = -out.signs[edge];
        out
    }

    /// Multiplies every edge touching `node` by `-1`.
    pub fn gauge_flip<K: NodeKey>(&self, h: &RankedHasse<K>, node: NodeId) -> Self {
        let mut out = self.clone();
        for (e, &(a, b)) in h.edges().iter().enumerate() {
            if a == node || b == node {
                out.signs[e] = -out.signs[e];
            }
        }
        out
    }

    pub fn count_negative(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn to_edges<K: NodeKey>(&self, h: &RankedHasse<K>) -> Vec<SignedEdge> {
        h.edges()
            .iter()
            .zip(&self.signs)
            .map(|(&(lo, hi), &sign)| SignedEdge {
                src: h.key(hi).to_string(),
                dst: h.key(lo).to_string(),
                sign,
            })
            .collect()
    }

    /// Reads an edge list; every cover edge of `h` must appear exactly once.
    pub fn from_edges<K: NodeKey>(h: &RankedHasse<K>, edges: &[SignedEdge]) -> Result<Self> {
        let by_name: std::collections::HashMap<String, NodeId> =
            (0..h.len()).map(|v| (h.key(v).to_string(), v)).collect();
        let lookup = |s: &str| {
            by_name
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownNode(s.to_string()))
        };
        let mut signs = vec![0i8; h.edges().len()];
        for edge in edges {
            let (hi, lo) = (lookup(&edge.src)?, lookup(&edge.dst)?);
            let e = h
                .edge_id(lo, hi)
                .ok_or_else(|| Error::NotACover(edge.dst.clone(), edge.src.clone()))?;
            if signs[e] != 0 {
                return Err(Error::SignMismatch(format!(
                    "edge {}→{} listed twice",
                    edge.src, edge.dst
                )));
            }
            signs[e] = edge.sign;
        }
        if let Some(e) = signs.iter().position(|&s| s == 0) {
            let (lo, hi) = h.edges()[e];
            return Err(Error::SignMismatch(format!(
                "edge {}→{} has no sign",
                h.key(hi),
                h.key(lo)
            )));
        }
        SignAssignment::from_signs(signs)
    }
}

fn diamond_edges<K: NodeKey>(h: &RankedHasse<K>, d: &Diamond) -> [usize; 4] {
    let e = |a, b| h.edge_id(a, b).expect("diamond sides are cover edges");
    [
        e(d.bottom, d.mid1),
        e(d.mid1, d.top),
        e(d.bottom, d.mid2),
        e(d.mid2, d.top),
    ]
}

/// Solution of a linear system over the two-element field, or the set of
/// equations whose sum reads `0 = 1`.
pub(crate) fn solve_gf2(
    n_vars: usize,
    rows: &[(Vec<usize>, bool)],
) -> std::result::Result<Vec<bool>, Vec<usize>> {
    // Pivot rows: (coefficients, rhs, combination of input rows).
    let mut pivots: Vec<Option<(BitSet, bool, BitSet)>> = vec![None; n_vars];
    for (r, (vars, rhs)) in rows.iter().enumerate() {
        let mut row = BitSet::new(n_vars);
        for &v in vars {
            row.toggle(v);
        }
        let mut rhs = *rhs;
        let mut combo = BitSet::new(rows.len());
        combo.set(r);
        loop {
            match row.first_one_from(0) {
                None => {
                    if rhs {
                        return Err(combo.ones().collect());
                    }
                    break;
                }
                Some(c) => match &pivots[c] {
                    Some((prow, prhs, pcombo)) => {
                        row.xor_with(prow);
                        rhs ^= prhs;
                        combo.xor_with(pcombo);
                    }
                    None => {
                        pivots[c] = Some((row, rhs, combo));
                        break;
                    }
                },
            }
        }
    }
    let mut x = vec![false; n_vars];
    for c in (0..n_vars).rev() {
        if let Some((row, rhs, _)) = &pivots[c] {
            x[c] = row.ones().filter(|&v| v != c).fold(*rhs, |acc, v| acc ^ x[v]);
        }
    }
    Ok(x)
}

/// Signs with an odd number of `-1` on every diamond.
///
/// Unknowns are ordered like the edges of `h`; free unknowns are set to `+1`.
/// On failure the error lists the diamonds whose equations sum to `0 = 1`.
pub fn solve_signs<K: NodeKey>(h: &RankedHasse<K>) -> Result<SignAssignment> {
    let order: Vec<usize> = (0..h.edges().len()).collect();
    solve_signs_with_order(h, &order)
}

/// As [`solve_signs`], eliminating unknowns in the order `order[0], order[1], ...`.
pub fn solve_signs_with_order<K: NodeKey>(
    h: &RankedHasse<K>,
    order: &[usize],
) -> Result<SignAssignment> {
    let n_edges = h.edges().len();
    assert_eq!(order.len(), n_edges, "order must permute the edges");
    let report = h.find_diamonds();
    if !report.is_clean() {
        return Err(Error::DiamondViolation(report.violations.len()));
    }
    let mut column = vec![usize::MAX; n_edges];
    for (c, &e) in order.iter().enumerate() {
        column[e] = c;
    }
    let rows: Vec<(Vec<usize>, bool)> = report
        .diamonds
        .iter()
        .map(|d| (diamond_edges(h, d).map(|e| column[e]).to_vec(), true))
        .collect();
    let x = solve_gf2(n_edges, &rows).map_err(Error::Unsolvable)?;
    Ok(SignAssignment {
        signs: (0..n_edges)
            .map(|e| if x[column[e]] { -1 } else { 1 })
            .collect(),
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ParityReport {
    pub diamonds_checked: usize,
    pub violations: Vec<Diamond>,
}

impl ParityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists the diamonds whose four edges carry an even number of `-1`.
pub fn diamond_parity_check<K: NodeKey>(h: &RankedHasse<K>, a: &SignAssignment) -> ParityReport {
    let diamonds = h.find_diamonds().diamonds;
    let violations = diamonds
        .iter()
        .filter(|d| diamond_edges(h, d).iter().map(|&e| a.sign(e)).product::<i8>() == 1)
        .copied()
        .collect();
    ParityReport {
        diamonds_checked: diamonds.len(),
        violations,
    }
}

/// Whether `b = μ(u) μ(v) a` on every edge `uv` for some `μ: nodes → ±1`.
pub fn gauge_equivalent<K: NodeKey>(
    h: &RankedHasse<K>,
    a: &SignAssignment,
    b: &SignAssignment,
) -> bool {
    let n_edges = h.edges().len();
    if a.len() != n_edges || b.len() != n_edges {
        return false;
    }
    let mut adj: Vec<Vec<(NodeId, i8)>> = vec![Vec::new(); h.len()];
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        let ratio = a.sign(e) * b.sign(e);
        adj[u].push((v, ratio));
        adj[v].push((u, ratio));
    }
    let mut mu = vec![0i8; h.len()];
    for start in 0..h.len() {
        if mu[start] != 0 {
            continue;
        }
        mu[start] = 1;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(v, ratio) in &adj[u] {
                let want = mu[u] * ratio;
                if mu[v] == 0 {
                    mu[v] = want;
                    stack.push(v);
                } else if mu[v] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DegreeMismatch(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[i64]>::to_vec).collect()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.to_rows())?;
        st.end()
    }
}

/// Free modules on the nodes of each degree, with `boundaries[d]` mapping
/// degree `d` to degree `d + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainComplex {
    pub degrees: Vec<usize>,
    pub basis: Vec<Vec<String>>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Products `D_{d+1} D_d` that are nonzero, by `d`.
    pub fn nonzero_squares(&self) -> Vec<usize> {
        self.boundaries
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !w[1].mul(&w[0]).map(|m| m.is_zero()).unwrap_or(false))
            .map(|(d, _)| d)
            .collect()
    }
}

/// Boundary matrices with `degree = max rank - rank`.
pub fn boundary_matrices<K: NodeKey>(h: &RankedHasse<K>, a: &SignAssignment) -> Result<ChainComplex> {
    let top = h.max_rank();
    boundary_matrices_with(h, a, |v| top - h.rank(v))
}

/// Boundary matrices for an arbitrary degree function. Each cover edge must
/// join adjacent degrees; the entry sits in row `target`, column `source`,
/// where the source has the smaller degree.
pub fn boundary_matrices_with<K: NodeKey>(
    h: &RankedHasse<K>,
    a: &SignAssignment,
    degree_fn: impl Fn(NodeId) -> usize,
) -> Result<ChainComplex> {
    if a.len() != h.edges().len() {
        return Err(Error::SignMismatch(format!(
            "{} signs for {} edges",
            a.len(),
            h.edges().len()
        )));
    }
    if h.is_empty() {
        return Ok(ChainComplex {
            degrees: Vec::new(),
            basis: Vec::new(),
            boundaries: Vec::new(),
        });
    }
    let degree: Vec<usize> = (0..h.len()).map(&degree_fn).collect();
    let top = *degree.iter().max().unwrap();
    let mut basis_ids: Vec<Vec<NodeId>> = vec![Vec::new(); top + 1];
    let mut slot = vec![0usize; h.len()];
    for v in 0..h.len() {
        slot[v] = basis_ids[degree[v]].len();
        basis_ids[degree[v]].push(v);
    }
    let degrees: Vec<usize> = basis_ids.iter().map(Vec::len).collect();
    let mut boundaries: Vec<IntMatrix> = (0..top)
        .map(|d| IntMatrix::zeros(degrees[d + 1], degrees[d]))
        .collect();
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        let (src, dst) = if degree[v] + 1 == degree[u] {
            (v, u)
        } else if degree[u] + 1 == degree[v] {
            (u, v)
        } else {
            return Err(Error::DegreeMismatch(
                h.key(u).to_string(),
                h.key(v).to_string(),
            ));
        };
        boundaries[degree[src]].set(slot[dst], slot[src], a.sign(e) as i64);
    }
    let basis = basis_ids
        .iter()
        .map(|ids| ids.iter().map(|&v| h.key(v).to_string()).collect())
        .collect();
    Ok(ChainComplex {
        degrees,
        basis,
        boundaries,
    })
}

/// Whether every consecutive product of boundaries vanishes.
pub fn verify_complex(c: &ChainComplex) -> bool {
    c.nonzero_squares().is_empty()
}
