//! Named example quivers and a registry of checkable claims about them.
//!
//! Every claim states an exact expected value and where that value comes
//! from. Claims run through the public API only.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{self, fork_points_of_return};
use crate::format::NamedQuiver;
use crate::generate;
use crate::graph::{forkless_part, mutation_finiteness, preforkless_part, Budget, ExplorationResult, Finiteness, PartStatus};
use crate::{swap_permutation, MutationSequence, Quiver, VertexSet};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Quoted from the published result.
    Literature,
    /// Immediate from definitions.
    Elementary,
    /// Computed once by an independent brute-force search and frozen.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub expected: Value,
    pub observed: Value,
    pub provenance: Provenance,
    pub status: ClaimStatus,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.status == ClaimStatus::Pass
    }
}

enum Outcome {
    Observed(Value),
    Skipped(String),
}

type Check = Box<dyn Fn(&Budget) -> Outcome + Send + Sync>;

/// A registered claim. Construction requires a provenance.
pub struct Claim {
    id: String,
    provenance: Provenance,
    expected: Value,
    seed: Option<u64>,
    check: Check,
}

impl Claim {
    fn new(id: impl Into<String>, provenance: Provenance, expected: Value, check: Check) -> Self {
        Claim { id: id.into(), provenance, expected, seed: None, check }
    }

    fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn run(&self, budget: &Budget) -> ClaimResult {
        let start = Instant::now();
        let outcome = (self.check)(budget);
        let ms = start.elapsed().as_millis() as u64;
        let (observed, status) = match outcome {
            Outcome::Observed(v) => {
                let status = if v == self.expected { ClaimStatus::Pass } else { ClaimStatus::Fail };
                (v, status)
            }
            Outcome::Skipped(why) => (Value::Null, ClaimStatus::Skipped(why)),
        };
        ClaimResult {
            id: self.id.clone(),
            expected: self.expected.clone(),
            observed,
            provenance: self.provenance,
            status,
            ms,
            seed: self.seed,
        }
    }
}

/// A named example with vertex names.
#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub quiver: NamedQuiver,
}

fn named(n: usize, names: &[&str], arrows: &[(&str, &str, i64)]) -> NamedQuiver {
    let idx = |s: &str| names.iter().position(|x| *x == s).expect("declared name");
    let arrows: Vec<(usize, usize, i64)> = arrows.iter().map(|&(a, b, m)| (idx(a), idx(b), m)).collect();
    NamedQuiver {
        quiver: Quiver::new(n, &arrows).expect("valid example"),
        names: Some(names.iter().map(|s| s.to_string()).collect()),
    }
}

/// The displayed example quivers, with their original vertex names.
pub fn builtin_examples() -> Vec<Example> {
    vec![
        Example {
            name: "fork_def",
            description: "fork with point of return r",
            quiver: named(3, &["i", "r", "j"], &[("i", "r", 3), ("r", "j", 4), ("j", "i", 5)]),
        },
        Example {
            name: "cycle345",
            description: "(3,4,5) cycle, no non-forks in its class",
            quiver: named(3, &["i", "j", "k"], &[("i", "j", 3), ("j", "k", 4), ("k", "i", 5)]),
        },
        Example {
            name: "forkless14",
            description: "forkless part with 14 elements",
            quiver: named(
                4,
                &["i", "j", "k", "l"],
                &[("k", "j", 10), ("i", "k", 1366), ("j", "i", 138), ("j", "l", 2), ("k", "l", 2), ("i", "l", 2)],
            ),
        },
        Example {
            name: "sink_on_cycle345",
            description: "(3,4,5) cycle with a sink attached, two non-forks",
            quiver: named(
                4,
                &["i", "j", "k", "l"],
                &[("i", "j", 3), ("j", "k", 4), ("k", "i", 5), ("i", "l", 2), ("j", "l", 2), ("k", "l", 2)],
            ),
        },
        Example {
            name: "path222",
            description: "double-arrow path, infinitely many non-forks",
            quiver: named(4, &["i", "j", "k", "l"], &[("i", "j", 2), ("j", "k", 2), ("k", "l", 2)]),
        },
        Example {
            name: "five_vertex",
            description: "removing j disconnects it",
            quiver: named(
                5,
                &["i", "j", "l", "k", "m"],
                &[("m", "j", 2), ("j", "l", 2), ("j", "k", 3), ("l", "k", 3), ("i", "j", 2), ("i", "l", 2), ("k", "i", 2)],
            ),
        },
        Example {
            name: "prefork1",
            description: "pre-fork with return l and k'->k",
            quiver: named(
                4,
                &["j", "l", "k", "k'"],
                &[("j", "l", 3), ("l", "k", 4), ("l", "k'", 4), ("k", "j", 5), ("k'", "j", 5), ("k'", "k", 1)],
            ),
        },
        Example {
            name: "prefork2",
            description: "pre-fork with return l, no arrow between k and k'",
            quiver: named(
                4,
                &["j", "l", "k", "k'"],
                &[("j", "l", 3), ("l", "k", 4), ("l", "k'", 4), ("k", "j", 5), ("k'", "j", 5)],
            ),
        },
        Example {
            name: "cycle2222",
            description: "double-arrow 4-cycle, finite pre-forkless part only",
            quiver: named(4, &["i", "j", "k", "l"], &[("i", "j", 2), ("j", "k", 2), ("k", "l", 2), ("l", "i", 2)]),
        },
        Example {
            name: "k4_key_q0",
            description: "key on {k,k'} with no arrow between them",
            quiver: named(
                4,
                &["k", "k'", "a", "b"],
                &[("k", "a", 2), ("k'", "a", 2), ("k", "b", 2), ("k'", "b", 2), ("a", "b", 2)],
            ),
        },
        Example {
            name: "k4_key_q1",
            description: "key on {k,k'} with a single arrow k->k'",
            quiver: named(
                4,
                &["k", "k'", "a", "b"],
                &[("k", "a", 2), ("k'", "a", 2), ("k", "b", 2), ("k'", "b", 2), ("a", "b", 2), ("k", "k'", 1)],
            ),
        },
        Example {
            name: "arrow",
            description: "single arrow",
            quiver: named(2, &["i", "j"], &[("i", "j", 1)]),
        },
    ]
}

pub fn example(name: &str) -> Option<Example> {
    builtin_examples().into_iter().find(|e| e.name == name)
}

fn ex(name: &str) -> Quiver {
    example(name).expect("builtin example").quiver.quiver
}

/// Which part of the mutation graph to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartMode {
    Forkless,
    Preforkless,
}

pub fn compute_part(q: &Quiver, budget: &Budget, mode: PartMode) -> ExplorationResult {
    match mode {
        PartMode::Forkless => forkless_part(q, budget),
        PartMode::Preforkless => preforkless_part(q, budget),
    }
    .expect("budget validated by caller")
}

/// Members of a pre-forkless part split as keys, wings, tips, remaining
/// acyclic quivers and the rest, in that precedence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KeyCensus {
    pub keys: usize,
    pub acyclic: usize,
    pub other: usize,
    pub wings: usize,
    pub tips: usize,
}

impl KeyCensus {
    pub fn total(&self) -> usize {
        self.keys + self.acyclic + self.other + self.wings + self.tips
    }

    /// Expected split for a key on `n` vertices with `|q_kk'| = q_abs`.
    pub fn expected(n: usize, q_abs: i64) -> KeyCensus {
        if q_abs == 0 {
            KeyCensus { keys: n - 1, acyclic: 2, other: 0, wings: 2 * n - 6, tips: n - 3 }
        } else {
            KeyCensus { keys: 2 * n - 2, acyclic: 2, other: 4, wings: 4 * n - 12, tips: 4 * n - 12 }
        }
    }
}

pub fn key_census(members: &[Quiver]) -> KeyCensus {
    let mut c = KeyCensus::default();
    for q in members {
        let r = classify::classify(q);
        if r.is_key() {
            c.keys += 1;
        } else if r.is_wing() {
            c.wings += 1;
        } else if r.is_tip() {
            c.tips += 1;
        } else if r.acyclic {
            c.acyclic += 1;
        } else {
            c.other += 1;
        }
    }
    c
}

/// `q`, then `q` mutated alternately at `a` and `b`, `steps` times.
pub fn alternating_walk(q: &Quiver, a: usize, b: usize, steps: usize) -> Result<Vec<Quiver>, crate::QuiverError> {
    let mut out = vec![q.clone()];
    for s in 0..steps {
        let v = if s % 2 == 0 { a } else { b };
        let next = out.last().expect("nonempty").mutate(v)?;
        out.push(next);
    }
    Ok(out)
}

/// Repeatedly mutates an acyclic quiver at its least source until it
/// returns to the start. Gives up after `limit` steps.
pub fn source_cycle(q: &Quiver, limit: usize) -> Option<Vec<Quiver>> {
    let mut out = vec![q.clone()];
    let mut cur = q.clone();
    for _ in 0..limit {
        let s = (0..cur.vertex_count()).find(|&v| cur.is_source(v))?;
        cur = cur.mutate(s).ok()?;
        if &cur == q {
            return Some(out);
        }
        out.push(cur.clone());
    }
    None
}

/// Unpruned breadth-first ball of the given radius around `sources`.
/// `None` if a mutation overflows or the ball outgrows `max_nodes`.
pub fn unpruned_ball(sources: &[Quiver], radius: usize, max_nodes: usize) -> Option<HashMap<Quiver, usize>> {
    let mut dist: HashMap<Quiver, usize> = sources.iter().map(|q| (q.clone(), 0)).collect();
    let mut queue: VecDeque<Quiver> = sources.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d >= radius {
            continue;
        }
        for v in 0..x.vertex_count() {
            let y = x.mutate(v).ok()?;
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
                if dist.len() > max_nodes {
                    return None;
                }
            }
        }
    }
    Some(dist)
}

/// Recomputes a part without pruning: an unpruned ball of `radius` around
/// the members (or around the root for an empty part) is filtered by the
/// part's membership rule and compared with the pruned result.
///
/// Forkless: the non-forks of the ball must be exactly the members.
/// Pre-forkless: the non-fork, non-pre-fork quivers of the ball connected
/// to the seed must be exactly the members. An empty part requires the ball
/// to contain no candidate at all (no non-fork, respectively no plain
/// quiver).
pub fn unpruned_agreement(result: &ExplorationResult, mode: PartMode, radius: usize) -> Result<bool, String> {
    const CAP: usize = 200_000;
    match &result.status {
        PartStatus::BudgetExceeded(_) => Err("pruned run did not complete".into()),
        PartStatus::Empty => {
            let ball = unpruned_ball(std::slice::from_ref(&result.root), radius, CAP).ok_or("ball too large")?;
            Ok(ball.keys().all(|q| {
                let r = classify::classify(q);
                match mode {
                    PartMode::Forkless => r.is_fork(),
                    PartMode::Preforkless => !r.is_plain(),
                }
            }))
        }
        PartStatus::Finite { members, .. } => {
            let ball = unpruned_ball(members, radius, CAP).ok_or("ball too large")?;
            let members: BTreeSet<&Quiver> = members.iter().collect();
            let found: BTreeSet<&Quiver> = match mode {
                PartMode::Forkless => ball.keys().filter(|q| fork_points_of_return(q).is_empty()).collect(),
                PartMode::Preforkless => {
                    let seed = result.seed.as_ref().ok_or("missing seed")?;
                    let open: BTreeSet<&Quiver> =
                        ball.keys().filter(|q| !classify::classify(q).is_boundary()).collect();
                    let mut comp: BTreeSet<&Quiver> = BTreeSet::new();
                    let mut stack = vec![seed.clone()];
                    while let Some(x) = stack.pop() {
                        let Some(&x) = open.get(&x) else { continue };
                        if !comp.insert(x) {
                            continue;
                        }
                        for v in 0..x.vertex_count() {
                            if let Ok(y) = x.mutate(v) {
                                stack.push(y);
                            }
                        }
                    }
                    comp
                }
            };
            Ok(found == members)
        }
    }
}

/// Checks the hereditary bound on every full subquiver with at least two
/// vertices: `count <= max(M, m)` for forkless parts and
/// `count <= max(M, 10m - 20)` for pre-forkless parts, where `M` is the
/// count for `q` itself. Disconnected subquivers must also be
/// mutation-finite.
pub fn check_hereditary_bound(q: &Quiver, budget: &Budget, mode: PartMode, label: &str) -> Vec<ClaimResult> {
    let start = Instant::now();
    let whole = compute_part(q, budget, mode);
    let mode_name = match mode {
        PartMode::Forkless => "forkless",
        PartMode::Preforkless => "preforkless",
    };
    let Some(big_m) = whole.count() else {
        return vec![ClaimResult {
            id: format!("hereditary_{mode_name}_{label}"),
            expected: json!("finite part"),
            observed: Value::Null,
            provenance: Provenance::Literature,
            status: ClaimStatus::Skipped("budget exceeded on the full quiver".into()),
            ms: start.elapsed().as_millis() as u64,
            seed: None,
        }];
    };
    let n = q.vertex_count();
    let subsets: Vec<VertexSet> = (1u32..(1 << n))
        .filter(|mask| mask.count_ones() >= 2)
        .map(|mask| VertexSet::new(n, (0..n).filter(|i| mask & (1 << i) != 0)).expect("in range"))
        .collect();
    subsets
        .par_iter()
        .flat_map_iter(|keep| {
            let t = Instant::now();
            let (sub, _) = q.full_subquiver(keep).expect("nonempty");
            let m = keep.len();
            let bound = match mode {
                PartMode::Forkless => big_m.max(m),
                PartMode::Preforkless => big_m.max((10 * m).saturating_sub(20)),
            };
            let part = compute_part(&sub, budget, mode);
            let (observed, status) = match part.count() {
                Some(c) if c <= bound => (json!(c), ClaimStatus::Pass),
                Some(c) => (json!(c), ClaimStatus::Fail),
                None => (json!("budget-exceeded"), ClaimStatus::Fail),
            };
            let mut out = vec![ClaimResult {
                id: format!("hereditary_{mode_name}_{label}/{keep}"),
                expected: json!({ "at_most": bound }),
                observed,
                provenance: Provenance::Literature,
                status,
                ms: t.elapsed().as_millis() as u64,
                seed: None,
            }];
            if !sub.is_connected() {
                let t = Instant::now();
                let verdict = finiteness_label(&mutation_finiteness(&sub, budget).expect("valid budget"));
                out.push(ClaimResult {
                    id: format!("disconnected_finite_{label}/{keep}"),
                    expected: json!("finite"),
                    status: if verdict == "finite" { ClaimStatus::Pass } else { ClaimStatus::Fail },
                    observed: json!(verdict),
                    provenance: Provenance::Literature,
                    ms: t.elapsed().as_millis() as u64,
                    seed: None,
                });
            }
            out
        })
        .collect()
}

pub fn finiteness_label(f: &Finiteness) -> &'static str {
    match f {
        Finiteness::Finite { .. } => "finite",
        Finiteness::Infinite { .. } => "infinite",
        Finiteness::Unknown { .. } => "unknown",
    }
}

fn status_label(r: &ExplorationResult) -> Value {
    match &r.status {
        PartStatus::Finite { count, .. } => json!(count),
        PartStatus::Empty => json!(0),
        PartStatus::BudgetExceeded(_) => json!("budget-exceeded"),
    }
}

fn part_claim(id: &str, prov: Provenance, q: Quiver, mode: PartMode, expected: Value) -> Claim {
    Claim::new(id, prov, expected, Box::new(move |b| Outcome::Observed(status_label(&compute_part(&q, b, mode)))))
}

fn class_size_claim(id: &str, prov: Provenance, q: Quiver, expected: Value) -> Claim {
    Claim::new(
        id,
        prov,
        expected,
        Box::new(move |b| match mutation_finiteness(&q, b).expect("valid budget") {
            Finiteness::Finite { class_size, .. } => Outcome::Observed(json!(class_size as u64)),
            Finiteness::Infinite { .. } => Outcome::Observed(json!("infinite")),
            Finiteness::Unknown { .. } => Outcome::Skipped("budget exceeded".into()),
        }),
    )
}

fn infinite_claim(id: &str, q: Quiver) -> Claim {
    Claim::new(
        id,
        Provenance::Literature,
        json!("infinite"),
        Box::new(move |b| match mutation_finiteness(&q, b).expect("valid budget") {
            Finiteness::Infinite { witness, returns, .. } => {
                let ok = fork_points_of_return(&witness) == returns && !returns.is_empty();
                Outcome::Observed(json!(if ok { "infinite" } else { "bad witness" }))
            }
            other => Outcome::Observed(json!(finiteness_label(&other))),
        }),
    )
}

/// Seed for the generated instance `index` of a family.
pub fn family_seed(family: u64, n: usize, index: usize) -> u64 {
    family * 1_000_000 + (n as u64) * 1_000 + index as u64
}

/// Seeds of the abundant acyclic instances: 20 quivers spread over
/// `n = 3..=8`.
pub fn abundant_acyclic_seeds() -> Vec<(usize, u64)> {
    (0..20).map(|i| (3 + i % 6, family_seed(1, 3 + i % 6, i / 6))).collect()
}

/// Seeds of the generated keys for each `n` and `|q_kk'|`.
pub fn key_seeds(n: usize, q_abs: i64) -> Vec<u64> {
    (0..3).map(|i| family_seed(2 + q_abs as u64, n, i)).collect()
}

/// Every claim in the default suite.
pub fn all_claims() -> Vec<Claim> {
    use PartMode::*;
    use Provenance::*;
    let mut c = Vec::new();

    c.push(Claim::new(
        "mutate_cycle345_at_j",
        Oracle,
        json!([[1, 0, 3], [0, 2, 7], [2, 1, 4]]),
        Box::new(|_| Outcome::Observed(json!(ex("cycle345").mutate(1).expect("small").arrows()))),
    ));
    c.push(Claim::new(
        "fork_def_arrow_count",
        Literature,
        json!(12),
        Box::new(|_| Outcome::Observed(json!(ex("fork_def").arrow_count() as u64))),
    ));
    c.push(Claim::new(
        "fork_def_point_of_return",
        Literature,
        json!([1]),
        Box::new(|_| Outcome::Observed(json!(fork_points_of_return(&ex("fork_def"))))),
    ));
    c.push(Claim::new(
        "cycle345_point_of_return",
        Oracle,
        json!([1]),
        Box::new(|_| Outcome::Observed(json!(fork_points_of_return(&ex("cycle345"))))),
    ));
    c.push(Claim::new(
        "five_vertex_minus_j_disconnected",
        Literature,
        json!(false),
        Box::new(|_| {
            let (sub, _) = ex("five_vertex").delete_vertex(1).expect("in range");
            Outcome::Observed(json!(sub.is_connected()))
        }),
    ));
    for name in ["prefork1", "prefork2"] {
        c.push(Claim::new(
            format!("{name}_triple"),
            Literature,
            json!([{ "ret": 1, "pair": [2, 3] }]),
            Box::new(move |_| Outcome::Observed(json!(classify::classify(&ex(name)).prefork_triples))),
        ));
    }
    c.push(
        Claim::new(
            "swap_identity",
            Literature,
            json!(true),
            Box::new(|_| {
                let mut rng = generate::rng(17);
                let ok = (0..200).all(|t| {
                    let n = 2 + t % 5;
                    let base = generate::random_quiver(n, 3, &mut rng);
                    let mut m = base.matrix();
                    m[0][1] = 1;
                    m[1][0] = -1;
                    let q = Quiver::from_matrix(&m).expect("skew");
                    let a = q.mutate_seq(&MutationSequence::new(vec![0, 1, 0, 1, 0]));
                    let b = q.mutate_seq(&MutationSequence::new(vec![1, 0, 1, 0, 1]));
                    match (a, b) {
                        (Ok(a), Ok(b)) => a == b && q.equal_under_permutation(&a, &swap_permutation(n, 0, 1)) == Ok(true),
                        _ => false,
                    }
                });
                Outcome::Observed(json!(ok))
            }),
        )
        .seeded(17),
    );
    c.push(
        Claim::new(
            "identity_cycle_without_arrow",
            Literature,
            json!(true),
            Box::new(|_| {
                let mut rng = generate::rng(18);
                let ok = (0..200).all(|t| {
                    let n = 2 + t % 5;
                    let base = generate::random_quiver(n, 3, &mut rng);
                    let mut m = base.matrix();
                    m[0][1] = 0;
                    m[1][0] = 0;
                    let q = Quiver::from_matrix(&m).expect("skew");
                    q.mutate_seq(&MutationSequence::new(vec![0, 1, 0, 1])) == Ok(q)
                });
                Outcome::Observed(json!(ok))
            }),
        )
        .seeded(18),
    );

    c.push(part_claim("forkless14_count", Literature, ex("forkless14"), Forkless, json!(14)));
    c.push(part_claim("cycle345_forkless_empty", Literature, ex("cycle345"), Forkless, json!(0)));
    c.push(part_claim("sink_on_cycle345_count", Literature, ex("sink_on_cycle345"), Forkless, json!(2)));
    c.push(part_claim("path222_forkless_unbounded", Literature, ex("path222"), Forkless, json!("budget-exceeded")));
    c.push(Claim::new(
        "path222_alternating_walk",
        Literature,
        json!(13),
        Box::new(|_| {
            // distinct non-forks along 12 alternating mutations at k and l
            let walk = alternating_walk(&ex("path222"), 2, 3, 12).expect("fits");
            let distinct: BTreeSet<&Quiver> = walk.iter().filter(|q| fork_points_of_return(q).is_empty()).collect();
            Outcome::Observed(json!(distinct.len()))
        }),
    ));
    c.push(Claim::new(
        "forkless14_boundary_growth",
        Literature,
        json!(true),
        Box::new(|b| {
            let r = forkless_part(&ex("forkless14"), b).expect("valid budget");
            let Some(g) = r.graph else { return Outcome::Skipped("no graph".into()) };
            let ok = g.boundary().all(|node| {
                let returns = &node.report.fork_returns;
                (0..g.vertex_count).filter(|v| !returns.contains(*v)).all(|v| {
                    node.quiver.mutate(v).map(|p| p.arrow_count() > node.quiver.arrow_count()).unwrap_or(true)
                })
            });
            Outcome::Observed(json!(ok))
        }),
    ));

    for n in 3..=8 {
        let seeds: Vec<u64> = abundant_acyclic_seeds().into_iter().filter(|s| s.0 == n).map(|s| s.1).collect();
        let s2 = seeds.clone();
        c.push(
            Claim::new(
                format!("abundant_acyclic_count_n{n}"),
                Literature,
                json!(vec![n; seeds.len()]),
                Box::new(move |b| {
                    let counts: Vec<Value> = seeds
                        .iter()
                        .map(|&s| {
                            let aa = generate::random_abundant_acyclic(n, 5, &mut generate::rng(s));
                            status_label(&forkless_part(&aa.quiver, b).expect("valid budget"))
                        })
                        .collect();
                    Outcome::Observed(json!(counts))
                }),
            )
            .seeded(s2[0]),
        );
        c.push(
            Claim::new(
                format!("abundant_acyclic_source_cycle_n{n}"),
                Literature,
                json!(true),
                Box::new(move |b| {
                    let ok = s2.iter().all(|&s| {
                        let aa = generate::random_abundant_acyclic(n, 5, &mut generate::rng(s));
                        let r = forkless_part(&aa.quiver, b).expect("valid budget");
                        let members: BTreeSet<&Quiver> = r.members().iter().collect();
                        match source_cycle(&aa.quiver, 2 * n) {
                            Some(cycle) => cycle.len() == n && cycle.iter().collect::<BTreeSet<_>>() == members,
                            None => false,
                        }
                    });
                    Outcome::Observed(json!(ok))
                }),
            )
            .seeded(family_seed(1, n, 0)),
        );
    }

    c.push(part_claim("k4_key_q0_preforkless", Literature, ex("k4_key_q0"), Preforkless, json!(8)));
    c.push(part_claim("k4_key_q1_preforkless", Literature, ex("k4_key_q1"), Preforkless, json!(20)));
    for q_abs in 0..=1i64 {
        for n in 4..=7usize {
            let per = if q_abs == 0 { 4 * (n - 2) } else { 10 * (n - 2) };
            let seeds = key_seeds(n, q_abs);
            let s2 = seeds.clone();
            c.push(
                Claim::new(
                    format!("key_count_q{q_abs}_n{n}"),
                    Literature,
                    json!(vec![per; seeds.len()]),
                    Box::new(move |b| {
                        let counts: Vec<Value> = seeds
                            .iter()
                            .map(|&s| {
                                let key = generate::random_key(n, q_abs, None, &mut generate::rng(s));
                                status_label(&preforkless_part(&key.quiver, b).expect("valid budget"))
                            })
                            .collect();
                        Outcome::Observed(json!(counts))
                    }),
                )
                .seeded(key_seeds(n, q_abs)[0]),
            );
            c.push(
                Claim::new(
                    format!("key_census_q{q_abs}_n{n}"),
                    Literature,
                    json!(KeyCensus::expected(n, q_abs)),
                    Box::new(move |b| {
                        let key = generate::random_key(n, q_abs, None, &mut generate::rng(s2[0]));
                        let r = preforkless_part(&key.quiver, b).expect("valid budget");
                        Outcome::Observed(json!(key_census(r.members())))
                    }),
                )
                .seeded(key_seeds(n, q_abs)[0]),
            );
        }
    }
    c.push(part_claim("prefork1_preforkless_empty", Literature, ex("prefork1"), Preforkless, json!(0)));
    c.push(part_claim("prefork2_preforkless_empty", Literature, ex("prefork2"), Preforkless, json!(0)));
    c.push(part_claim("cycle2222_preforkless_count", Oracle, ex("cycle2222"), Preforkless, json!(6)));
    c.push(part_claim("cycle2222_forkless_unbounded", Literature, ex("cycle2222"), Forkless, json!("budget-exceeded")));
    c.push(
        Claim::new(
            "prefork_tree_swap_q1",
            Literature,
            json!(true),
            Box::new(|_| {
                let mut rng = generate::rng(19);
                let ok = (0..50).all(|t| {
                    let p = generate::random_prefork(4 + t % 3, 1, &mut rng);
                    let n = p.quiver.vertex_count();
                    let w = MutationSequence::new(vec![p.k, p.k2, p.k, p.k2, p.k]);
                    match p.quiver.mutate_seq(&w) {
                        Ok(tilde) => p.quiver.equal_under_permutation(&tilde, &swap_permutation(n, p.k, p.k2)) == Ok(true),
                        Err(_) => false,
                    }
                });
                Outcome::Observed(json!(ok))
            }),
        )
        .seeded(19),
    );

    for (label, mode, q) in [("forkless14", Forkless, ex("forkless14"))] {
        c.push(hereditary_claim(label, mode, q));
    }
    for q_abs in 0..=1i64 {
        for n in 4..=7usize {
            let key = generate::random_key(n, q_abs, None, &mut generate::rng(key_seeds(n, q_abs)[0]));
            c.push(hereditary_claim(&format!("key_q{q_abs}_n{n}"), Preforkless, key.quiver).seeded(key_seeds(n, q_abs)[0]));
        }
    }

    c.push(class_size_claim("class_size_arrow", Elementary, ex("arrow"), json!(2)));
    c.push(class_size_claim("class_size_two_isolated", Elementary, Quiver::empty(2), json!(1)));
    let a3 = Quiver::new(3, &[(0, 1, 1), (1, 2, 1)]).expect("valid");
    c.push(class_size_claim("class_size_a3", Oracle, a3, json!(14)));
    let a3c = Quiver::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).expect("valid");
    c.push(class_size_claim("class_size_a3_cyclic", Oracle, a3c, json!(14)));
    let a4 = Quiver::new(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).expect("valid");
    c.push(class_size_claim("class_size_a4", Oracle, a4, json!(144)));
    let d4 = Quiver::new(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).expect("valid");
    c.push(class_size_claim("class_size_d4", Oracle, d4, json!(50)));
    let a2a1 = Quiver::new(3, &[(0, 1, 1)]).expect("valid");
    c.push(class_size_claim("class_size_a2_plus_a1", Elementary, a2a1, json!(2)));
    for name in ["fork_def", "cycle345", "forkless14", "sink_on_cycle345", "path222", "cycle2222", "prefork1", "prefork2"] {
        c.push(infinite_claim(&format!("{name}_mutation_infinite"), ex(name)));
    }
    c
}

fn hereditary_claim(label: &str, mode: PartMode, q: Quiver) -> Claim {
    let id = format!(
        "hereditary_{}_{label}",
        match mode {
            PartMode::Forkless => "forkless",
            PartMode::Preforkless => "preforkless",
        }
    );
    let label = label.to_string();
    Claim::new(
        id,
        Provenance::Literature,
        json!({ "failures": 0 }),
        Box::new(move |b| {
            let results = check_hereditary_bound(&q, b, mode, &label);
            if results.iter().any(|r| matches!(r.status, ClaimStatus::Skipped(_))) {
                return Outcome::Skipped("budget exceeded on the full quiver".into());
            }
            let failures: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
            if failures.is_empty() {
                Outcome::Observed(json!({ "failures": 0 }))
            } else {
                Outcome::Observed(json!({ "failures": failures.len(), "first": failures[0] }))
            }
        }),
    )
}

/// Whether `id` matches `pattern`: `*` matches any run of characters, and
/// a pattern without `*` matches as a substring.
pub fn id_matches(id: &str, pattern: &str) -> bool {
    if !pattern.contains('*') {
        return id.contains(pattern);
    }
    let parts: Vec<&str> = pattern.split('*').collect();
    let mut rest = id;
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            match rest.strip_prefix(part) {
                Some(r) => rest = r,
                None => return false,
            }
        } else if i == parts.len() - 1 {
            return rest.ends_with(part);
        } else {
            match rest.find(part) {
                Some(p) => rest = &rest[p + part.len()..],
                None => return false,
            }
        }
    }
    rest.is_empty()
}

/// Runs the default suite, optionally restricted by an id pattern.
pub fn run_claims(budget: &Budget, filter: Option<&str>) -> Vec<ClaimResult> {
    let claims: Vec<Claim> = all_claims()
        .into_iter()
        .filter(|c| filter.map_or(true, |p| id_matches(&c.id, p)))
        .collect();
    claims.par_iter().map(|c| c.run(budget)).collect()
}

pub fn claims_to_json(results: &[ClaimResult]) -> Value {
    json!({ "claims": results })
}

pub fn claims_table(results: &[ClaimResult]) -> String {
    let width = results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut out = format!("{:<width$}  {:<7}  {:>7}  {:<11}  expected / observed\n", "id", "status", "ms", "provenance");
    for r in results {
        let status = match &r.status {
            ClaimStatus::Pass => "pass".to_string(),
            ClaimStatus::Fail => "FAIL".to_string(),
            ClaimStatus::Skipped(_) => "skipped".to_string(),
        };
        let prov = serde_json::to_value(r.provenance).expect("enum").as_str().unwrap_or("").to_string();
        let _ = writeln!(out, "{:<width$}  {:<7}  {:>7}  {:<11}  {} / {}", r.id, status, r.ms, prov, r.expected, r.observed);
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} passed", results.len());
    out
}
