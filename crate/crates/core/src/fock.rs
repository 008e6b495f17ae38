//! Truncated Fock representation.
//!
//! The Hilbert space has one basis vector per trace word; `V_s` prepends `s`.
//! Truncating to words of length at most `L` makes every operator a finite
//! integer matrix: columns of length-`L` words are sent to zero by each `V_s`.
//! Products are exact only on words short enough to never hit that boundary,
//! so every check names the subspace (a maximal word length) it is evaluated on.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, RemovalStep};
use crate::words::{normal_form_unchecked, ReducedForm, StarWord, TraceWord};

/// Default cap on the number of basis words.
pub const DEFAULT_MAX_BASIS: usize = 200_000;

/// Default truncation length.
pub const DEFAULT_FOCK_LENGTH: usize = 6;

/// Trace words of length at most `max_len`, ordered by length then lexicographically.
#[derive(Debug, Clone)]
pub struct FockBasis {
    graph: Graph,
    max_len: usize,
    words: Vec<TraceWord>,
    index: HashMap<TraceWord, usize>,
    /// `shift[s][j]`: index of `s·words[j]`, or `NONE` at the truncation boundary.
    shift: Vec<Vec<u32>>,
    /// `strip[s][j]`: index of `u` if `words[j] = s·u`, else `NONE`.
    strip: Vec<Vec<u32>>,
}

const NONE: u32 = u32::MAX;

pub fn build_basis(g: &Graph, max_len: usize) -> Result<FockBasis> {
    build_basis_with_cap(g, max_len, DEFAULT_MAX_BASIS)
}

pub fn build_basis_with_cap(g: &Graph, max_len: usize, cap: usize) -> Result<FockBasis> {
    let n = g.vertex_count();
    let cap = cap.min(NONE as usize - 1);
    let mut words = vec![TraceWord::empty()];
    let mut level_start = 0;
    for _ in 0..max_len {
        let mut next: HashSet<TraceWord> = HashSet::new();
        for w in &words[level_start..] {
            let mut letters = Vec::with_capacity(w.len() + 1);
            for s in 0..n {
                letters.clear();
                letters.push(s);
                letters.extend_from_slice(w.letters());
                next.insert(normal_form_unchecked(&letters, g));
            }
            if words.len() + next.len() > cap {
                return Err(Error::ResourceLimit {
                    what: "Fock basis",
                    limit: cap,
                    actual: words.len() + next.len(),
                });
            }
        }
        if next.is_empty() {
            break;
        }
        let mut next: Vec<TraceWord> = next.into_iter().collect();
        next.sort_unstable();
        level_start = words.len();
        words.extend(next);
    }
    let index: HashMap<TraceWord, usize> =
        words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

    let mut shift = vec![vec![NONE; words.len()]; n];
    let mut letters = Vec::with_capacity(max_len + 1);
    for (j, w) in words.iter().enumerate() {
        if w.len() >= max_len {
            continue;
        }
        for (s, col) in shift.iter_mut().enumerate() {
            letters.clear();
            letters.push(s);
            letters.extend_from_slice(w.letters());
            col[j] = index[&normal_form_unchecked(&letters, g)] as u32;
        }
    }
    // V_s is injective below the boundary, so its adjoint just inverts the shift.
    let mut strip = vec![vec![NONE; words.len()]; n];
    for (s, col) in shift.iter().enumerate() {
        for (j, &i) in col.iter().enumerate() {
            if i != NONE {
                strip[s][i as usize] = j as u32;
            }
        }
    }
    Ok(FockBasis {
        graph: g.clone(),
        max_len,
        words,
        index,
        shift,
        strip,
    })
}

impl FockBasis {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[TraceWord] {
        &self.words
    }

    pub fn index_of(&self, w: &TraceWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of `s·words[j]`, `None` at the truncation boundary.
    pub fn shift(&self, s: usize, j: usize) -> Option<usize> {
        let t = self.shift[s][j];
        (t != NONE).then_some(t as usize)
    }

    /// Indices of words of length at most `len`.
    pub fn columns_up_to(&self, len: usize) -> std::ops::Range<usize> {
        0..self.words.partition_point(|w| w.len() <= len)
    }

    /// Image of basis vector `j` under the star-word, a basis vector or zero.
    /// `V_s*` sends `s·u` to `u` and every word not starting with `s` to zero.
    pub fn apply_star_word(&self, w: &StarWord, j: usize) -> Option<usize> {
        let mut cur = j;
        for &(s, star) in w.factors.iter().rev() {
            cur = if star { self.strip(s, cur)? } else { self.shift(s, cur)? };
        }
        Some(cur)
    }

    /// Index of `u` if `words[j] = s·u`.
    pub fn strip(&self, s: usize, j: usize) -> Option<usize> {
        let t = self.strip[s][j];
        (t != NONE).then_some(t as usize)
    }
}

/// Square integer matrix stored by columns; each column lists `(row, value)`
/// for its nonzero entries in increasing row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        SparseOperator {
            dim,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseOperator {
            dim,
            cols: (0..dim).map(|j| vec![(j, 1)]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j]
            .binary_search_by_key(&i, |&(r, _)| r)
            .map_or(0, |k| self.cols[j][k].1)
    }

    /// Matrix with a single entry `1` at `(row, j)` for each `Some(row)` in `map[j]`.
    pub fn from_column_map(map: impl Iterator<Item = Option<usize>>, dim: usize) -> Self {
        let cols: Vec<Vec<(usize, i64)>> =
            map.map(|r| r.map(|r| vec![(r, 1)]).unwrap_or_default()).collect();
        assert_eq!(cols.len(), dim);
        SparseOperator { dim, cols }
    }

    pub fn adjoint(&self) -> SparseOperator {
        let mut cols = vec![Vec::new(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                cols[i].push((j, x));
            }
        }
        SparseOperator { dim: self.dim, cols }
    }

    /// `self · rhs`
    pub fn mul(&self, rhs: &SparseOperator) -> SparseOperator {
        assert_eq!(self.dim, rhs.dim);
        let cols = rhs
            .cols
            .iter()
            .map(|rcol| {
                if let [(k, b)] = rcol[..] {
                    return self.cols[k]
                        .iter()
                        .map(|&(i, a)| (i, a.checked_mul(b).expect("operator entry overflow")))
                        .collect();
                }
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, b) in rcol {
                    for &(i, a) in &self.cols[k] {
                        let e = acc.entry(i).or_insert(0);
                        *e = a
                            .checked_mul(b)
                            .and_then(|p| e.checked_add(p))
                            .expect("operator entry overflow");
                    }
                }
                acc.into_iter().filter(|&(_, x)| x != 0).collect()
            })
            .collect();
        SparseOperator { dim: self.dim, cols }
    }

    fn combine(&self, rhs: &SparseOperator, sign: i64) -> SparseOperator {
        assert_eq!(self.dim, rhs.dim);
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, i64> = a.iter().copied().collect();
                for &(i, x) in b {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(sign * x).expect("operator entry overflow");
                }
                acc.into_iter().filter(|&(_, x)| x != 0).collect()
            })
            .collect();
        SparseOperator { dim: self.dim, cols }
    }

    pub fn add(&self, rhs: &SparseOperator) -> SparseOperator {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &SparseOperator) -> SparseOperator {
        self.combine(rhs, -1)
    }

    /// Largest absolute entry in the given columns.
    pub fn max_abs_on(&self, cols: std::ops::Range<usize>) -> i64 {
        self.cols[cols]
            .iter()
            .flat_map(|c| c.iter().map(|&(_, x)| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Rank over the rationals, by exact fraction-free elimination of the columns.
    pub fn rank(&self) -> usize {
        let mut pivots: HashMap<usize, BTreeMap<usize, BigInt>> = HashMap::new();
        for col in &self.cols {
            let mut v: BTreeMap<usize, BigInt> =
                col.iter().map(|&(i, x)| (i, BigInt::from(x))).collect();
            while let Some((&lead, _)) = v.iter().next() {
                let Some(p) = pivots.get(&lead) else {
                    pivots.insert(lead, v);
                    break;
                };
                // v <- p[lead]·v - v[lead]·p, which clears `lead`
                let a = p[&lead].clone();
                let b = v[&lead].clone();
                for x in v.values_mut() {
                    *x *= &a;
                }
                for (i, x) in p {
                    let e = v.entry(*i).or_insert_with(BigInt::zero);
                    *e -= &b * x;
                }
                v.retain(|_, x| !x.is_zero());
                let content = v.values().fold(BigInt::zero(), |g, x| g.gcd(x));
                if !content.is_zero() && content.abs() != BigInt::from(1) {
                    for x in v.values_mut() {
                        *x /= &content;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// Matrix of `V_s` on the truncated basis.
pub fn generator_matrix(s: usize, basis: &FockBasis) -> SparseOperator {
    SparseOperator::from_column_map((0..basis.len()).map(|j| basis.shift(s, j)), basis.len())
}

/// Matrix of a star-word as the product of generator matrices and their transposes.
pub fn star_word_matrix(w: &StarWord, basis: &FockBasis) -> SparseOperator {
    let mut m = SparseOperator::identity(basis.len());
    for &(s, star) in &w.factors {
        let g = generator_matrix(s, basis);
        m = m.mul(&if star { g.adjoint() } else { g });
    }
    m
}

/// Outcome of one exact matrix identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Subspace on which the residual is measured.
    pub subspace: String,
    /// Largest absolute entry of the difference; must be 0.
    pub residual: i64,
    pub pass: bool,
}

impl Check {
    fn new(name: String, max_word_len: usize, residual: i64) -> Self {
        Check {
            name,
            subspace: format!("words of length <= {max_word_len}"),
            residual,
            pass: residual == 0,
        }
    }
}

/// Relations of the Toeplitz algebra on words of length `<= L - 2`:
/// `V_s* V_s = I`; `V_s V_t = V_t V_s` and `V_s* V_t = V_t V_s*` for adjacent
/// `s, t`; `V_s* V_t = 0` for distinct non-adjacent `s, t`.
pub fn check_relations(g: &Graph, max_len: usize) -> Result<Vec<Check>> {
    if max_len < 3 {
        return Err(Error::Precondition(format!("relation checks need L >= 3, got {max_len}")));
    }
    let basis = build_basis(g, max_len)?;
    Ok(check_relations_with(&basis, g))
}

/// Relation checks on `basis`, with commutation read from `claimed` instead of
/// the basis graph. Disagreement between the two must show up as a nonzero residual.
pub fn check_relations_with(basis: &FockBasis, claimed: &Graph) -> Vec<Check> {
    let n = basis.graph().vertex_count();
    assert_eq!(claimed.vertex_count(), n);
    let interior_len = basis.max_len().saturating_sub(2);
    let interior = basis.columns_up_to(interior_len);
    let v: Vec<SparseOperator> = (0..n).map(|s| generator_matrix(s, basis)).collect();
    let vt: Vec<SparseOperator> = v.iter().map(SparseOperator::adjoint).collect();
    let id = SparseOperator::identity(basis.len());
    let label = |s: usize| claimed.label(s).to_string();
    let mut checks = Vec::new();
    for s in 0..n {
        let r = vt[s].mul(&v[s]).sub(&id).max_abs_on(interior.clone());
        checks.push(Check::new(format!("isometry V_{0}* V_{0} = I", label(s)), interior_len, r));
    }
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            if claimed.adjacent(s, t) {
                if s < t {
                    let r = v[s].mul(&v[t]).sub(&v[t].mul(&v[s])).max_abs_on(interior.clone());
                    checks.push(Check::new(
                        format!("commute V_{0} V_{1} = V_{1} V_{0}", label(s), label(t)),
                        interior_len,
                        r,
                    ));
                }
                let r = vt[s].mul(&v[t]).sub(&v[t].mul(&vt[s])).max_abs_on(interior.clone());
                checks.push(Check::new(
                    format!("star-commute V_{0}* V_{1} = V_{1} V_{0}*", label(s), label(t)),
                    interior_len,
                    r,
                ));
            } else {
                let r = vt[s].mul(&v[t]).max_abs_on(interior.clone());
                checks.push(Check::new(
                    format!("orthogonal V_{0}* V_{1} = 0", label(s), label(t)),
                    interior_len,
                    r,
                ));
            }
        }
    }
    checks
}

/// `∏ (I - V_s V_s*)` over the given vertices, on the full truncated space.
fn defect_product(basis: &FockBasis, vertices: &[usize]) -> SparseOperator {
    let id = SparseOperator::identity(basis.len());
    vertices.iter().fold(id.clone(), |acc, &s| {
        let vs = generator_matrix(s, basis);
        acc.mul(&id.sub(&vs.mul(&vs.adjoint())))
    })
}

/// Rank of the product of all defect projections; 1 (the vacuum) for every graph.
pub fn vacuum_rank(g: &Graph, max_len: usize) -> Result<usize> {
    Ok(vacuum_rank_on(&build_basis(g, max_len)?))
}

pub fn vacuum_rank_on(basis: &FockBasis) -> usize {
    let all: Vec<usize> = (0..basis.graph().vertex_count()).collect();
    defect_product(basis, &all).rank()
}

/// Projection onto the empty word.
pub fn vacuum_projection(dim: usize) -> SparseOperator {
    let mut p = SparseOperator::zero(dim);
    if dim > 0 {
        p.cols[0] = vec![(0, 1)];
    }
    p
}

/// `∏_{s ≠ v} (I - V_s V_s*) - V_v ∏_{s ∈ N(v)} (I - V_s V_s*) V_v* - P_vacuum`
/// on words of length `<= L - 2`. Zero when `neighbors` is the true neighbourhood of `v`.
pub fn defect_identity_residual(basis: &FockBasis, v: usize, neighbors: &[usize]) -> Check {
    let n = basis.graph().vertex_count();
    let others: Vec<usize> = (0..n).filter(|&s| s != v).collect();
    let lhs = defect_product(basis, &others);
    let vv = generator_matrix(v, basis);
    let rhs = vv.mul(&defect_product(basis, neighbors)).mul(&vv.adjoint());
    let diff = lhs.sub(&rhs).sub(&vacuum_projection(basis.len()));
    let interior_len = basis.max_len().saturating_sub(2);
    let g = basis.graph();
    let nb: Vec<&str> = neighbors.iter().map(|&s| g.label(s)).collect();
    Check::new(
        format!("defect identity at vertex {} with neighbours [{}]", g.label(v), nb.join(", ")),
        interior_len,
        diff.max_abs_on(basis.columns_up_to(interior_len)),
    )
}

pub fn defect_identity_check(g: &Graph, removal: &RemovalStep, max_len: usize) -> Result<Check> {
    if max_len < 3 {
        return Err(Error::Precondition(format!("defect identity check needs L >= 3, got {max_len}")));
    }
    let basis = build_basis(g, max_len)?;
    Ok(defect_identity_residual(&basis, removal.removed_vertex, &removal.neighbors))
}

/// True if the star-word and its reduced form act identically on every basis
/// word of length `<= L - |w|`. The zero form is compared against the zero map.
pub fn word_oracle(w: &StarWord, r: &ReducedForm, basis: &FockBasis) -> Result<bool> {
    if basis.max_len() < w.len() + 2 {
        return Err(Error::Precondition(format!(
            "oracle needs L >= |w| + 2 = {}, basis has L = {}",
            w.len() + 2,
            basis.max_len()
        )));
    }
    let reduced = StarWord::from_reduced(r);
    let cols = basis.columns_up_to(basis.max_len() - w.len());
    Ok(cols.into_iter().all(|j| {
        let lhs = basis.apply_star_word(w, j);
        let rhs = reduced.as_ref().and_then(|rw| basis.apply_star_word(rw, j));
        lhs == rhs
    }))
}
