//! Seeded generators for the quiver families the classifier knows about.
//!
//! All generators draw from a [`ChaCha8Rng`], so a seed reproduces the same
//! instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Quiver;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Any quiver on `n` vertices with `|q_ij| <= max_weight`.
pub fn random_quiver<R: Rng>(n: usize, max_weight: i64, rng: &mut R) -> Quiver {
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(-max_weight..=max_weight);
            if w > 0 {
                arrows.push((i, j, w));
            } else if w < 0 {
                arrows.push((j, i, -w));
            }
        }
    }
    Quiver::new(n, &arrows).expect("generated arrows are valid")
}

/// An abundant acyclic quiver together with its acyclic ordering.
#[derive(Debug, Clone)]
pub struct AbundantAcyclic {
    pub quiver: Quiver,
    pub order: Vec<usize>,
}

/// Abundant acyclic quiver with weights in `2..=max_weight` and a random
/// ordering.
pub fn random_abundant_acyclic<R: Rng>(n: usize, max_weight: i64, rng: &mut R) -> AbundantAcyclic {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            arrows.push((order[a], order[b], rng.gen_range(2..=max_weight.max(2))));
        }
    }
    AbundantAcyclic { quiver: Quiver::new(n, &arrows).expect("valid"), order }
}

/// A key with pair `(k, k2)`, where `k` directly precedes `k2` in `order`.
#[derive(Debug, Clone)]
pub struct KeyInstance {
    pub quiver: Quiver,
    pub order: Vec<usize>,
    pub k: usize,
    pub k2: usize,
}

impl KeyInstance {
    pub fn pair(&self) -> (usize, usize) {
        (self.k.min(self.k2), self.k.max(self.k2))
    }

    /// Vertices strictly inside the ordering: neither first nor last.
    pub fn interior(&self) -> &[usize] {
        &self.order[1..self.order.len() - 1]
    }
}

/// Key on `n >= 3` vertices with `|q_kk'| = q_abs` (0 or 1). `position` is
/// the index of `k` in the ordering; `k'` sits right after it. All other
/// pairs get `2..=4` arrows along the ordering.
pub fn random_key<R: Rng>(n: usize, q_abs: i64, position: Option<usize>, rng: &mut R) -> KeyInstance {
    assert!(n >= 3 && (0..=1).contains(&q_abs));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let p = position.unwrap_or_else(|| rng.gen_range(0..n - 1));
    assert!(p + 1 < n);
    let (k, k2) = (order[p], order[p + 1]);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let (u, v) = (order[a], order[b]);
            if (a, b) == (p, p + 1) {
                if q_abs == 1 {
                    arrows.push(if rng.gen_bool(0.5) { (u, v, 1) } else { (v, u, 1) });
                }
            } else {
                arrows.push((u, v, rng.gen_range(2..=4)));
            }
        }
    }
    KeyInstance { quiver: Quiver::new(n, &arrows).expect("valid"), order, k, k2 }
}

/// A fork with its point of return.
#[derive(Debug, Clone)]
pub struct ForkInstance {
    pub quiver: Quiver,
    pub ret: usize,
}

/// Fork on `n >= 3` vertices: an abundant acyclic quiver mutated at a vertex
/// that is neither its source nor its sink.
pub fn random_fork<R: Rng>(n: usize, rng: &mut R) -> ForkInstance {
    assert!(n >= 3);
    let aa = random_abundant_acyclic(n, 4, rng);
    let ret = aa.order[rng.gen_range(1..n - 1)];
    ForkInstance { quiver: aa.quiver.mutate(ret).expect("small weights"), ret }
}

/// A pre-fork with triple `(ret, {k, k2})`.
#[derive(Debug, Clone)]
pub struct PreforkInstance {
    pub quiver: Quiver,
    pub ret: usize,
    pub k: usize,
    pub k2: usize,
}

/// Pre-fork on `n >= 4` vertices: a key mutated at a vertex outside
/// `{k, k'}` that is neither a source nor a sink.
pub fn random_prefork<R: Rng>(n: usize, q_abs: i64, rng: &mut R) -> PreforkInstance {
    assert!(n >= 4);
    // k, k' must leave some interior position free
    let positions: Vec<usize> = (0..n - 1).filter(|&p| (1..n - 1).any(|i| i != p && i != p + 1)).collect();
    let p = *positions.choose(rng).expect("n >= 4");
    let key = random_key(n, q_abs, Some(p), rng);
    let candidates: Vec<usize> = (1..n - 1).filter(|&i| i != p && i != p + 1).map(|i| key.order[i]).collect();
    let ret = *candidates.choose(rng).expect("nonempty");
    PreforkInstance { quiver: key.quiver.mutate(ret).expect("small weights"), ret, k: key.k, k2: key.k2 }
}

/// A wing `(ret, other)` or tip `(ret, other)`: the ordered witness pair.
#[derive(Debug, Clone)]
pub struct PairInstance {
    pub quiver: Quiver,
    pub ret: usize,
    pub other: usize,
}

/// Key on `n >= 4` vertices whose pair sits strictly inside the ordering.
pub fn random_interior_key<R: Rng>(n: usize, q_abs: i64, rng: &mut R) -> KeyInstance {
    assert!(n >= 4);
    let p = rng.gen_range(1..n - 2);
    random_key(n, q_abs, Some(p), rng)
}

/// Wing with point of return `k`: `mu_k` of a key whose `k, k'` are
/// neither sinks nor sources.
pub fn random_wing<R: Rng>(n: usize, q_abs: i64, rng: &mut R) -> PairInstance {
    let key = random_interior_key(n, q_abs, rng);
    let (k, k2) = if rng.gen_bool(0.5) { (key.k, key.k2) } else { (key.k2, key.k) };
    PairInstance { quiver: key.quiver.mutate(k).expect("small weights"), ret: k, other: k2 }
}

/// Tip with point of return `k'`: `mu_k'` of a wing with return `k`.
pub fn random_tip<R: Rng>(n: usize, q_abs: i64, rng: &mut R) -> PairInstance {
    let wing = random_wing(n, q_abs, rng);
    PairInstance { quiver: wing.quiver.mutate(wing.other).expect("small weights"), ret: wing.other, other: wing.ret }
}
