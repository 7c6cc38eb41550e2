//! Structural classes of quivers: abundant, acyclic, fork, key, pre-fork,
//! wing and tip, each decided exhaustively with witnesses.
//!
//! Every predicate tries every candidate vertex, pair or triple, so the
//! witness sets are complete. Nothing assumes a point of return is unique.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Quiver, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("needs at least {needed} vertices, quiver has {n}")]
    TooFewVertices { needed: usize, n: usize },
}

/// Point of return `r` together with the unordered pair `{k, k'}` (stored `k < k'`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PreforkTriple {
    pub ret: usize,
    pub pair: (usize, usize),
}

/// Every label the classifier knows, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub acyclic: bool,
    pub abundant: bool,
    pub fork_returns: VertexSet,
    pub key_pairs: BTreeSet<(usize, usize)>,
    pub prefork_triples: BTreeSet<PreforkTriple>,
    /// `(k, k')` with `k` the point of return.
    pub wing_witnesses: BTreeSet<(usize, usize)>,
    /// `(k', k)` with `k'` the point of return.
    pub tip_witnesses: BTreeSet<(usize, usize)>,
}

/// Single display class, used for colouring and census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeClass {
    Fork,
    PreFork,
    Wing,
    Tip,
    AbundantAcyclic,
    Key,
    Acyclic,
    Other,
}

impl NodeClass {
    pub fn name(self) -> &'static str {
        match self {
            NodeClass::Fork => "fork",
            NodeClass::PreFork => "pre-fork",
            NodeClass::Wing => "wing",
            NodeClass::Tip => "tip",
            NodeClass::AbundantAcyclic => "abundant-acyclic",
            NodeClass::Key => "key",
            NodeClass::Acyclic => "acyclic",
            NodeClass::Other => "other",
        }
    }
}

impl ClassificationReport {
    pub fn is_fork(&self) -> bool {
        !self.fork_returns.is_empty()
    }

    pub fn is_key(&self) -> bool {
        !self.key_pairs.is_empty()
    }

    pub fn is_prefork(&self) -> bool {
        !self.prefork_triples.is_empty()
    }

    pub fn is_wing(&self) -> bool {
        !self.wing_witnesses.is_empty()
    }

    pub fn is_tip(&self) -> bool {
        !self.tip_witnesses.is_empty()
    }

    /// No fork, pre-fork, wing or tip witness.
    pub fn is_plain(&self) -> bool {
        !(self.is_fork() || self.is_prefork() || self.is_wing() || self.is_tip())
    }

    /// A fork or pre-fork witness is present.
    pub fn is_boundary(&self) -> bool {
        self.is_fork() || self.is_prefork()
    }

    /// Highest-precedence label: fork, pre-fork, wing, tip, abundant
    /// acyclic, key, acyclic, other.
    pub fn class(&self) -> NodeClass {
        if self.is_fork() {
            NodeClass::Fork
        } else if self.is_prefork() {
            NodeClass::PreFork
        } else if self.is_wing() {
            NodeClass::Wing
        } else if self.is_tip() {
            NodeClass::Tip
        } else if self.abundant && self.acyclic {
            NodeClass::AbundantAcyclic
        } else if self.is_key() {
            NodeClass::Key
        } else if self.acyclic {
            NodeClass::Acyclic
        } else {
            NodeClass::Other
        }
    }

    /// Checks the implications that must hold between labels. Returns the
    /// first violated one.
    pub fn check_invariants(&self) -> Result<(), &'static str> {
        if self.is_fork() && !(self.abundant && !self.acyclic) {
            return Err("fork witness on a quiver that is not abundant and cyclic");
        }
        if self.is_key() && !self.acyclic {
            return Err("key witness on a cyclic quiver");
        }
        Ok(())
    }
}

/// Facts about `Q \ {v}` for every `v`, shared by the pair predicates.
struct Deletions {
    /// Fork points of return of `Q \ {v}`, in original indices.
    returns: Vec<VertexSet>,
    abundant_acyclic: Vec<bool>,
}

impl Deletions {
    fn new(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let mut returns = Vec::with_capacity(n);
        let mut abundant_acyclic = Vec::with_capacity(n);
        for v in 0..n {
            let (sub, map) = q.delete_vertex(v).expect("vertex in range");
            let ab = is_abundant(&sub);
            let ac = sub.is_acyclic();
            abundant_acyclic.push(ab && ac);
            let r = fork_returns_with(&sub, ab, ac);
            returns.push(VertexSet::from_sorted_unchecked(r.iter().map(|x| map[x]).collect()));
        }
        Deletions { returns, abundant_acyclic }
    }
}

/// At least two arrows between every pair of distinct vertices.
pub fn is_abundant(q: &Quiver) -> bool {
    let n = q.vertex_count();
    (0..n).all(|i| ((i + 1)..n).all(|j| q.mult(i, j).unsigned_abs() >= 2))
}

/// All points of return `r` making `q` a fork. Empty iff `q` is not a fork.
pub fn fork_points_of_return(q: &Quiver) -> VertexSet {
    fork_returns_with(q, is_abundant(q), q.is_acyclic())
}

fn fork_returns_with(q: &Quiver, abundant: bool, acyclic: bool) -> VertexSet {
    if !abundant || acyclic {
        return VertexSet::empty();
    }
    let n = q.vertex_count();
    let mut out = Vec::new();
    for r in 0..n {
        let inward: Vec<usize> = (0..n).filter(|&i| q.mult(i, r) > 0).collect();
        let outward: Vec<usize> = (0..n).filter(|&j| q.mult(r, j) > 0).collect();
        let dominated = inward.iter().all(|&i| {
            outward.iter().all(|&j| {
                let back = q.mult(j, i);
                back > q.mult(i, r) && back > q.mult(r, j)
            })
        });
        if dominated && q.is_acyclic_on(&inward) && q.is_acyclic_on(&outward) {
            out.push(r);
        }
    }
    VertexSet::from_sorted_unchecked(out)
}

fn need(q: &Quiver, needed: usize) -> Result<(), ClassifyError> {
    let n = q.vertex_count();
    if n < needed {
        Err(ClassifyError::TooFewVertices { needed, n })
    } else {
        Ok(())
    }
}

/// Pairs `{k, k'}` (as `k < k'`) for which `q` is a key.
pub fn key_pairs(q: &Quiver) -> Result<BTreeSet<(usize, usize)>, ClassifyError> {
    need(q, 3)?;
    Ok(key_pairs_with(q, &Deletions::new(q)))
}

fn key_pairs_with(q: &Quiver, del: &Deletions) -> BTreeSet<(usize, usize)> {
    let n = q.vertex_count();
    let mut out = BTreeSet::new();
    for k in 0..n {
        if !del.abundant_acyclic[k] {
            continue;
        }
        for k2 in (k + 1)..n {
            if del.abundant_acyclic[k2] && q.q_set_vec(k, k2).is_empty() {
                out.insert((k, k2));
            }
        }
    }
    out
}

/// Triples `(r, {k, k'})` for which `q` is a pre-fork.
pub fn prefork_triples(q: &Quiver) -> Result<BTreeSet<PreforkTriple>, ClassifyError> {
    need(q, 4)?;
    Ok(prefork_triples_with(q, &Deletions::new(q)))
}

fn prefork_triples_with(q: &Quiver, del: &Deletions) -> BTreeSet<PreforkTriple> {
    let n = q.vertex_count();
    let mut out = BTreeSet::new();
    for k in 0..n {
        if del.returns[k].is_empty() {
            continue;
        }
        for k2 in (k + 1)..n {
            let common = del.returns[k].intersection(&del.returns[k2]);
            if common.is_empty() || !q.q_set_vec(k, k2).is_empty() {
                continue;
            }
            for r in &common {
                out.insert(PreforkTriple { ret: r, pair: (k, k2) });
            }
        }
    }
    out
}

/// Every 3-cycle through `k`, `k2` and a third vertex, with side `a`
/// touching `k` and side `b` touching `k2`, satisfies `b >= a + 2`.
fn triangles_respect_margin(q: &Quiver, k: usize, k2: usize) -> bool {
    let n = q.vertex_count();
    let ok = |a: i64, b: i64| i128::from(b) >= i128::from(a) + 2;
    (0..n).filter(|&i| i != k && i != k2).all(|i| {
        // k' -> k, k -> i -> k'
        if q.mult(k2, k) > 0 && q.mult(k, i) > 0 && q.mult(i, k2) > 0 && !ok(q.mult(k, i), q.mult(i, k2)) {
            return false;
        }
        // k -> k', i -> k, k' -> i
        if q.mult(k, k2) > 0 && q.mult(i, k) > 0 && q.mult(k2, i) > 0 && !ok(q.mult(i, k), q.mult(k2, i)) {
            return false;
        }
        true
    })
}

/// Ordered pairs `(k, k')` for which `q` is a wing with point of return `k`.
pub fn wing_witnesses(q: &Quiver) -> Result<BTreeSet<(usize, usize)>, ClassifyError> {
    need(q, 4)?;
    Ok(wing_witnesses_with(q, &Deletions::new(q)))
}

fn wing_witnesses_with(q: &Quiver, del: &Deletions) -> BTreeSet<(usize, usize)> {
    let n = q.vertex_count();
    let mut out = BTreeSet::new();
    for k in 0..n {
        if !del.abundant_acyclic[k] {
            continue;
        }
        for k2 in (0..n).filter(|&x| x != k) {
            if q.mult(k, k2).unsigned_abs() >= 2 || !del.returns[k2].contains(k) {
                continue;
            }
            // every other vertex must lie between k and k'
            let all_between = (0..n).filter(|&i| i != k && i != k2).all(|i| q.between(k, k2, i));
            if all_between && triangles_respect_margin(q, k, k2) {
                out.insert((k, k2));
            }
        }
    }
    out
}

/// Ordered pairs `(k', k)` for which `q` is a tip with point of return `k'`.
pub fn tip_witnesses(q: &Quiver) -> Result<BTreeSet<(usize, usize)>, ClassifyError> {
    need(q, 4)?;
    Ok(tip_witnesses_with(q, &Deletions::new(q)))
}

fn tip_witnesses_with(q: &Quiver, del: &Deletions) -> BTreeSet<(usize, usize)> {
    let n = q.vertex_count();
    let mut out = BTreeSet::new();
    for k2 in 0..n {
        for k in (0..n).filter(|&x| x != k2) {
            let t = q.mult(k2, k);
            if t.unsigned_abs() >= 2 || !del.returns[k].contains(k2) {
                continue;
            }
            let others = || (0..n).filter(|&i| i != k && i != k2);
            let between = q.q_set_vec(k, k2);
            let shape_ok = match t {
                0 => between.is_empty() && del.returns[k2].contains(k),
                // k' -> k: the between-set is the in-neighbourhood of k' and
                // k is a source once k' is removed
                1 => {
                    between == others().filter(|&i| q.mult(i, k2) > 0).collect::<Vec<_>>()
                        && del.abundant_acyclic[k2]
                        && others().all(|i| q.mult(i, k) <= 0)
                }
                // k -> k': out-neighbourhood of k', and k is a sink without k'
                _ => {
                    between == others().filter(|&i| q.mult(k2, i) > 0).collect::<Vec<_>>()
                        && del.abundant_acyclic[k2]
                        && others().all(|i| q.mult(k, i) <= 0)
                }
            };
            if shape_ok && triangles_respect_margin(q, k, k2) {
                out.insert((k2, k));
            }
        }
    }
    out
}

/// Runs every predicate.
pub fn classify(q: &Quiver) -> ClassificationReport {
    let n = q.vertex_count();
    let abundant = is_abundant(q);
    let acyclic = q.is_acyclic();
    let fork_returns = fork_returns_with(q, abundant, acyclic);
    let mut report = ClassificationReport {
        acyclic,
        abundant,
        fork_returns,
        key_pairs: BTreeSet::new(),
        prefork_triples: BTreeSet::new(),
        wing_witnesses: BTreeSet::new(),
        tip_witnesses: BTreeSet::new(),
    };
    if n < 3 {
        return report;
    }
    let del = Deletions::new(q);
    report.key_pairs = key_pairs_with(q, &del);
    if n >= 4 {
        report.prefork_triples = prefork_triples_with(q, &del);
        report.wing_witnesses = wing_witnesses_with(q, &del);
        report.tip_witnesses = tip_witnesses_with(q, &del);
    }
    report
}
