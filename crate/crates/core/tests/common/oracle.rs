//! Brute-force reference implementation on plain `i128` matrices.
//!
//! Nothing here calls into the library except to convert quivers in and
//! out, so disagreements point at one side or the other.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use forkless::Quiver;

pub type Mat = Vec<Vec<i128>>;

pub fn of(q: &Quiver) -> Mat {
    q.matrix().into_iter().map(|row| row.into_iter().map(i128::from).collect()).collect()
}

pub fn to_quiver(m: &Mat) -> Option<Quiver> {
    let rows: Option<Vec<Vec<i64>>> =
        m.iter().map(|row| row.iter().map(|&x| i64::try_from(x).ok()).collect()).collect();
    Quiver::from_matrix(&rows?).ok()
}

/// Mutation done on arrows: add a composite for every path through `v`,
/// reverse the arrows at `v`, then cancel 2-cycles.
pub fn mutate(m: &Mat, v: usize) -> Option<Mat> {
    let n = m.len();
    let arrows = |i: usize, j: usize| m[i][j].max(0);
    let mut count = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != v && j != v {
                count[i][j] = arrows(i, j);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == v || j == v || i == j {
                continue;
            }
            let paths = arrows(i, v).checked_mul(arrows(v, j))?;
            count[i][j] = count[i][j].checked_add(paths)?;
        }
    }
    for i in 0..n {
        if i != v {
            count[v][i] = arrows(i, v);
            count[i][v] = arrows(v, i);
        }
    }
    let mut out = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = count[i][j].checked_sub(count[j][i])?;
        }
    }
    let bound = i128::from(i64::MAX);
    if out.iter().flatten().any(|x| x.abs() > bound) {
        return None;
    }
    Some(out)
}

pub fn mutate_all(m: &Mat, seq: &[usize]) -> Option<Mat> {
    seq.iter().try_fold(m.clone(), |acc, &v| mutate(&acc, v))
}

pub fn sub(m: &Mat, keep: &[usize]) -> Mat {
    keep.iter().map(|&i| keep.iter().map(|&j| m[i][j]).collect()).collect()
}

fn without(m: &Mat, drop: &[usize]) -> (Mat, Vec<usize>) {
    let keep: Vec<usize> = (0..m.len()).filter(|v| !drop.contains(v)).collect();
    (sub(m, &keep), keep)
}

pub fn arrow_total(m: &Mat) -> i128 {
    m.iter().flatten().filter(|&&x| x > 0).sum()
}

pub fn has_cycle(m: &Mat) -> bool {
    // repeatedly strip vertices without incoming arrows
    let n = m.len();
    let mut alive = vec![true; n];
    loop {
        let src = (0..n).find(|&v| alive[v] && (0..n).all(|u| !alive[u] || m[u][v] <= 0));
        match src {
            Some(v) => alive[v] = false,
            None => return alive.iter().any(|&a| a),
        }
    }
}

pub fn abundant(m: &Mat) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| i == j || m[i][j].abs() >= 2))
}

pub fn abundant_acyclic(m: &Mat) -> bool {
    abundant(m) && !has_cycle(m)
}

fn ins(m: &Mat, r: usize) -> Vec<usize> {
    (0..m.len()).filter(|&i| m[i][r] > 0).collect()
}

fn outs(m: &Mat, r: usize) -> Vec<usize> {
    (0..m.len()).filter(|&j| m[r][j] > 0).collect()
}

pub fn is_fork_at(m: &Mat, r: usize) -> bool {
    if !abundant(m) || !has_cycle(m) {
        return false;
    }
    let (i_set, o_set) = (ins(m, r), outs(m, r));
    for &i in &i_set {
        for &j in &o_set {
            let back = m[j][i];
            if back <= m[i][r] || back <= m[r][j] {
                return false;
            }
        }
    }
    !has_cycle(&sub(m, &i_set)) && !has_cycle(&sub(m, &o_set))
}

pub fn fork_returns(m: &Mat) -> Vec<usize> {
    (0..m.len()).filter(|&r| is_fork_at(m, r)).collect()
}

pub fn is_fork(m: &Mat) -> bool {
    !fork_returns(m).is_empty()
}

/// Middle vertices of 2-paths `k -> i -> k'` or `k' -> i -> k`.
pub fn between(m: &Mat, k: usize, k2: usize) -> Vec<usize> {
    (0..m.len())
        .filter(|&i| i != k && i != k2)
        .filter(|&i| (m[k][i] > 0 && m[i][k2] > 0) || (m[k2][i] > 0 && m[i][k] > 0))
        .collect()
}

/// Oriented triangles through `k` and `k'` need `b >= a + 2`, where `a` is
/// the side at `k` and `b` the side at `k'`.
fn margin(m: &Mat, k: usize, k2: usize) -> bool {
    (0..m.len()).filter(|&i| i != k && i != k2).all(|i| {
        let (a, b) = if m[k2][k] > 0 {
            (m[k][i], m[i][k2])
        } else if m[k][k2] > 0 {
            (m[i][k], m[k2][i])
        } else {
            return true;
        };
        a <= 0 || b <= 0 || b >= a + 2
    })
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| ((a + 1)..n).map(move |b| (a, b)))
}

fn returns_without(m: &Mat, v: usize) -> Vec<usize> {
    let (s, keep) = without(m, &[v]);
    fork_returns(&s).into_iter().map(|r| keep[r]).collect()
}

fn aa_without(m: &Mat, v: usize) -> bool {
    abundant_acyclic(&without(m, &[v]).0)
}

pub fn key_pairs(m: &Mat) -> Vec<(usize, usize)> {
    let n = m.len();
    if n < 3 {
        return vec![];
    }
    pairs(n)
        .filter(|&(k, k2)| aa_without(m, k) && aa_without(m, k2) && between(m, k, k2).is_empty())
        .collect()
}

pub fn prefork_triples(m: &Mat) -> Vec<(usize, usize, usize)> {
    let n = m.len();
    if n < 4 {
        return vec![];
    }
    let mut out = vec![];
    for (k, k2) in pairs(n) {
        if !between(m, k, k2).is_empty() {
            continue;
        }
        let (a, b) = (returns_without(m, k), returns_without(m, k2));
        for r in a {
            if b.contains(&r) {
                out.push((r, k, k2));
            }
        }
    }
    out
}

pub fn wing_witnesses(m: &Mat) -> Vec<(usize, usize)> {
    let n = m.len();
    if n < 4 {
        return vec![];
    }
    let mut out = vec![];
    for k in 0..n {
        for k2 in 0..n {
            if k == k2 || m[k][k2].abs() >= 2 {
                continue;
            }
            if between(m, k, k2).len() != n - 2 {
                continue;
            }
            if !returns_without(m, k2).contains(&k) || !aa_without(m, k) {
                continue;
            }
            if margin(m, k, k2) {
                out.push((k, k2));
            }
        }
    }
    out
}

pub fn tip_witnesses(m: &Mat) -> Vec<(usize, usize)> {
    let n = m.len();
    if n < 4 {
        return vec![];
    }
    let mut out = vec![];
    for k2 in 0..n {
        for k in 0..n {
            if k == k2 {
                continue;
            }
            let t = m[k2][k];
            if t.abs() >= 2 || !returns_without(m, k).contains(&k2) || !margin(m, k, k2) {
                continue;
            }
            let b = between(m, k, k2);
            let ok = match t {
                0 => b.is_empty() && returns_without(m, k2).contains(&k),
                1 | -1 => {
                    let side: Vec<usize> = if t == 1 { ins(m, k2) } else { outs(m, k2) };
                    let side: Vec<usize> = side.into_iter().filter(|&v| v != k).collect();
                    let (s, keep) = without(m, &[k2]);
                    let kk = keep.iter().position(|&v| v == k).unwrap();
                    let extreme = if t == 1 { ins(&s, kk).is_empty() } else { outs(&s, kk).is_empty() };
                    b == side && abundant_acyclic(&s) && extreme
                }
                _ => false,
            };
            if ok {
                out.push((k2, k));
            }
        }
    }
    out
}

pub fn is_boundary(m: &Mat) -> bool {
    is_fork(m) || !prefork_triples(m).is_empty()
}

pub fn is_plain(m: &Mat) -> bool {
    !is_boundary(m) && wing_witnesses(m).is_empty() && tip_witnesses(m).is_empty()
}

/// Every matrix within `radius` mutations of `sources`; `None` once the
/// ball passes `cap` nodes or an entry leaves the 64-bit range.
pub fn ball(sources: &[Mat], radius: usize, cap: usize) -> Option<HashMap<Mat, usize>> {
    let mut dist: HashMap<Mat, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for s in sources {
        if dist.insert(s.clone(), 0).is_none() {
            queue.push_back(s.clone());
        }
    }
    while let Some(m) = queue.pop_front() {
        let d = dist[&m];
        if d == radius {
            continue;
        }
        for v in 0..m.len() {
            let next = mutate(&m, v)?;
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
                if dist.len() > cap {
                    return None;
                }
            }
        }
    }
    Some(dist)
}

/// Connected component of `seed` among matrices satisfying `keep`, found
/// without any pruning bookkeeping beyond the filter.
pub fn filtered_component(seed: &Mat, keep: impl Fn(&Mat) -> bool, cap: usize) -> Option<BTreeSet<Mat>> {
    if !keep(seed) {
        return Some(BTreeSet::new());
    }
    let mut seen: HashSet<Mat> = HashSet::from([seed.clone()]);
    let mut stack = vec![seed.clone()];
    while let Some(m) = stack.pop() {
        for v in 0..m.len() {
            let next = mutate(&m, v)?;
            if !seen.contains(&next) && keep(&next) {
                seen.insert(next.clone());
                stack.push(next);
                if seen.len() > cap {
                    return None;
                }
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// Full labelled mutation class, or `None` past `cap`.
pub fn class_size(m: &Mat, cap: usize) -> Option<usize> {
    filtered_component(m, |_| true, cap).map(|s| s.len())
}

/// A member set is closed when the members' radius-1 neighbours that pass
/// `keep` are already members.
pub fn closed_under(members: &BTreeSet<Mat>, keep: impl Fn(&Mat) -> bool) -> Option<bool> {
    for m in members {
        for v in 0..m.len() {
            let next = mutate(m, v)?;
            if keep(&next) && !members.contains(&next) {
                return Some(false);
            }
        }
    }
    Some(true)
}

pub fn mats(qs: &[Quiver]) -> BTreeSet<Mat> {
    qs.iter().map(of).collect()
}
