//! Quivers as skew-symmetric integer matrices, and the structural queries
//! every other module builds on.
//!
//! Entry `(i, j)` of the multiplicity matrix is the number of arrows `i -> j`
//! when positive and minus the number of arrows `j -> i` when negative. The
//! diagonal is zero and the matrix is skew-symmetric, which rules out loops
//! and 2-cycles by construction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{MutationSequence, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("loop arrow at vertex {0}")]
    LoopArrow(usize),
    #[error("conflicting entries for vertex pair {{{0},{1}}}")]
    ConflictingPair(usize, usize),
    #[error("vertex index {index} out of range for a quiver on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("arrow {0} -> {1} must have positive multiplicity, got {2}")]
    NonPositiveMultiplicity(usize, usize, i64),
    #[error("multiplicity overflow while mutating at vertex {vertex}")]
    MultiplicityOverflow { vertex: usize },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertices must be distinct, got {0} twice")]
    EqualVertices(usize),
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("quiver contains a directed cycle")]
    Cyclic,
}

/// A labelled quiver on vertices `0..n`.
///
/// Quivers are immutable values; every operation that changes arrows
/// returns a fresh quiver.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ArrowList", into = "ArrowList")]
pub struct Quiver {
    n: usize,
    mult: Vec<i64>,
}

/// Canonical serialized shape: `{"n": 3, "arrows": [[0, 1, 3], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowList {
    n: usize,
    arrows: Vec<(usize, usize, i64)>,
}

impl TryFrom<ArrowList> for Quiver {
    type Error = QuiverError;

    fn try_from(a: ArrowList) -> Result<Self, Self::Error> {
        Quiver::new(a.n, &a.arrows)
    }
}

impl From<Quiver> for ArrowList {
    fn from(q: Quiver) -> Self {
        ArrowList { arrows: q.arrows(), n: q.n }
    }
}

/// A topological ordering of an acyclic quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicOrdering {
    pub order: Vec<usize>,
    /// True iff every elimination step had exactly one source to choose.
    pub unique: bool,
}

impl Quiver {
    /// Quiver on `n` vertices with no arrows.
    pub fn empty(n: usize) -> Self {
        Quiver { n, mult: vec![0; n * n] }
    }

    /// Builds a quiver from `(i, j, m)` triples meaning `m > 0` arrows `i -> j`.
    pub fn new(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self, QuiverError> {
        let mut q = Quiver::empty(n);
        for &(i, j, m) in arrows {
            for idx in [i, j] {
                if idx >= n {
                    return Err(QuiverError::IndexOutOfRange { index: idx, n });
                }
            }
            if i == j {
                return Err(QuiverError::LoopArrow(i));
            }
            if m <= 0 {
                return Err(QuiverError::NonPositiveMultiplicity(i, j, m));
            }
            if q.mult[i * n + j] != 0 {
                return Err(QuiverError::ConflictingPair(i.min(j), i.max(j)));
            }
            q.mult[i * n + j] = m;
            q.mult[j * n + i] = -m;
        }
        Ok(q)
    }

    /// Builds a quiver from a full multiplicity matrix, validating skew-symmetry.
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self, QuiverError> {
        let n = rows.len();
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuiverError::VertexCountMismatch(n, row.len()));
            }
            if row[i] != 0 {
                return Err(QuiverError::LoopArrow(i));
            }
            mult.extend_from_slice(row);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if mult[i * n + j].checked_neg() != Some(mult[j * n + i]) {
                    return Err(QuiverError::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(Quiver { n, mult })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Signed multiplicity `q_ij`. Panics if either index is out of range.
    #[inline]
    pub fn mult(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.n && j < self.n, "vertex out of range");
        self.mult[i * self.n + j]
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.mult.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Arrows as `(source, target, multiplicity)`, one per adjacent pair,
    /// ordered by the pair `(min, max)`.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let m = self.mult(i, j);
                if m > 0 {
                    out.push((i, j, m));
                } else if m < 0 {
                    out.push((j, i, -m));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<(), QuiverError> {
        if v < self.n {
            Ok(())
        } else {
            Err(QuiverError::IndexOutOfRange { index: v, n: self.n })
        }
    }

    /// Mutation at `v`.
    ///
    /// Entries touching `v` change sign; every other entry gains
    /// `sign(q_iv) * max(q_iv * q_vj, 0)`, which composes the 2-paths through
    /// `v` and cancels the resulting 2-cycles in one step.
    pub fn mutate(&self, v: usize) -> Result<Quiver, QuiverError> {
        self.check_vertex(v)?;
        let n = self.n;
        let overflow = QuiverError::MultiplicityOverflow { vertex: v };
        let mut mult = self.mult.clone();
        for i in 0..n {
            let q_iv = self.mult[i * n + v];
            for j in 0..n {
                let idx = i * n + j;
                if i == v || j == v {
                    mult[idx] = self.mult[idx].checked_neg().ok_or(overflow.clone())?;
                    continue;
                }
                let q_vj = self.mult[v * n + j];
                if (q_iv > 0 && q_vj > 0) || (q_iv < 0 && q_vj < 0) {
                    let prod = q_iv.checked_mul(q_vj).ok_or(overflow.clone())?;
                    let delta = if q_iv > 0 { prod } else { -prod };
                    mult[idx] = self.mult[idx].checked_add(delta).ok_or(overflow.clone())?;
                }
            }
        }
        Ok(Quiver { n, mult })
    }

    /// Applies the reduced form of `w` from left to right.
    pub fn mutate_seq(&self, w: &MutationSequence) -> Result<Quiver, QuiverError> {
        let w = w.reduced();
        for &v in w.steps() {
            self.check_vertex(v)?;
        }
        let mut q = self.clone();
        for &v in w.steps() {
            q = q.mutate(v)?;
        }
        Ok(q)
    }

    /// Restriction to `keep`, re-indexed in increasing original order.
    ///
    /// The returned map sends each new index to its original vertex.
    pub fn full_subquiver(&self, keep: &VertexSet) -> Result<(Quiver, Vec<usize>), QuiverError> {
        if keep.is_empty() {
            return Err(QuiverError::EmptyVertexSet);
        }
        for v in keep {
            self.check_vertex(v)?;
        }
        Ok((self.restrict(keep.as_slice()), keep.as_slice().to_vec()))
    }

    /// `Q \ {v}` together with its index map.
    pub fn delete_vertex(&self, v: usize) -> Result<(Quiver, Vec<usize>), QuiverError> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&x| x != v).collect();
        Ok((self.restrict(&keep), keep))
    }

    fn restrict(&self, keep: &[usize]) -> Quiver {
        let m = keep.len();
        let mut mult = Vec::with_capacity(m * m);
        for &i in keep {
            for &j in keep {
                mult.push(self.mult[i * self.n + j]);
            }
        }
        Quiver { n: m, mult }
    }

    /// Total number of arrows.
    pub fn arrow_count(&self) -> u128 {
        let mut total = 0u128;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                total += u128::from(self.mult(i, j).unsigned_abs());
            }
        }
        total
    }

    /// Largest multiplicity between any pair.
    pub fn max_multiplicity(&self) -> u64 {
        self.mult.iter().map(|m| m.unsigned_abs()).max().unwrap_or(0)
    }

    /// Vertices with arrows into `r`, and vertices receiving arrows from `r`.
    pub fn neighborhoods(&self, r: usize) -> Result<(VertexSet, VertexSet), QuiverError> {
        self.check_vertex(r)?;
        let inward = (0..self.n).filter(|&i| self.mult(i, r) > 0).collect();
        let outward = (0..self.n).filter(|&j| self.mult(r, j) > 0).collect();
        Ok((
            VertexSet::from_sorted_unchecked(inward),
            VertexSet::from_sorted_unchecked(outward),
        ))
    }

    /// Vertices lying on a 2-path from `k` to `k2` or from `k2` to `k`.
    pub fn q_set(&self, k: usize, k2: usize) -> Result<VertexSet, QuiverError> {
        self.check_vertex(k)?;
        self.check_vertex(k2)?;
        if k == k2 {
            return Err(QuiverError::EqualVertices(k));
        }
        Ok(VertexSet::from_sorted_unchecked(self.q_set_vec(k, k2)))
    }

    pub(crate) fn q_set_vec(&self, k: usize, k2: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| i != k && i != k2 && self.between(k, k2, i))
            .collect()
    }

    /// Whether `i` sits on a 2-path between `k` and `k2` in either direction.
    #[inline]
    pub(crate) fn between(&self, k: usize, k2: usize, i: usize) -> bool {
        (self.mult(k, i) > 0 && self.mult(i, k2) > 0) || (self.mult(k2, i) > 0 && self.mult(i, k) > 0)
    }

    pub fn is_source(&self, v: usize) -> bool {
        (0..self.n).all(|i| self.mult(i, v) <= 0)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        (0..self.n).all(|j| self.mult(v, j) <= 0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.is_acyclic_on(&(0..self.n).collect::<Vec<_>>())
    }

    /// Acyclicity of the full subquiver on `vertices`, without building it.
    pub(crate) fn is_acyclic_on(&self, vertices: &[usize]) -> bool {
        self.kahn(vertices).is_some()
    }

    fn kahn(&self, vertices: &[usize]) -> Option<AcyclicOrdering> {
        let m = vertices.len();
        let mut indeg: Vec<usize> = vertices
            .iter()
            .map(|&j| vertices.iter().filter(|&&i| self.mult(i, j) > 0).count())
            .collect();
        let mut done = vec![false; m];
        let mut order = Vec::with_capacity(m);
        let mut unique = true;
        for _ in 0..m {
            let mut sources = (0..m).filter(|&a| !done[a] && indeg[a] == 0);
            let a = sources.next()?;
            if sources.next().is_some() {
                unique = false;
            }
            done[a] = true;
            order.push(vertices[a]);
            for b in 0..m {
                if self.mult(vertices[a], vertices[b]) > 0 {
                    indeg[b] -= 1;
                }
            }
        }
        Some(AcyclicOrdering { order, unique })
    }

    /// Topological ordering choosing the least-index source at each step.
    pub fn acyclic_ordering(&self) -> Result<AcyclicOrdering, QuiverError> {
        self.kahn(&(0..self.n).collect::<Vec<_>>()).ok_or(QuiverError::Cyclic)
    }

    /// Connected components of the underlying undirected graph, in order of
    /// least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in 0..self.n {
                    if comp[w] == usize::MAX && self.mult(v, w) != 0 {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(VertexSet::from_sorted_unchecked(members));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff `p[sigma(i)][sigma(j)] == q[i][j]` for all `i, j`.
    pub fn equal_under_permutation(&self, other: &Quiver, sigma: &[usize]) -> Result<bool, QuiverError> {
        if self.n != other.n {
            return Err(QuiverError::VertexCountMismatch(self.n, other.n));
        }
        validate_permutation(self.n, sigma)?;
        Ok((0..self.n).all(|i| (0..self.n).all(|j| other.mult(sigma[i], sigma[j]) == self.mult(i, j))))
    }

    /// The quiver `P` with `p[sigma(i)][sigma(j)] = q[i][j]`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Quiver, QuiverError> {
        validate_permutation(self.n, sigma)?;
        let mut p = Quiver::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                p.mult[sigma[i] * self.n + sigma[j]] = self.mult(i, j);
            }
        }
        Ok(p)
    }
}

/// The transposition of `a` and `b` on `0..n`.
pub fn swap_permutation(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.swap(a, b);
    sigma
}

fn validate_permutation(n: usize, sigma: &[usize]) -> Result<(), QuiverError> {
    if sigma.len() != n {
        return Err(QuiverError::InvalidPermutation(n));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(QuiverError::InvalidPermutation(n));
        }
        seen[s] = true;
    }
    Ok(())
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({}; ", self.n)?;
        f.debug_list().entries(self.arrows()).finish()?;
        write!(f, ")")
    }
}
