//! Property checks shared by the proptest suite and the acceptance runner.
//! Each takes a seed, builds its own instance and returns a description of
//! the first violation.

use forkless::generate::{self, rng};
use forkless::{classify, swap_permutation, PreforkTriple, Quiver, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::oracle;

pub type Check = fn(u64) -> Result<(), String>;

pub const PROPERTIES: &[(&str, Check)] = &[
    ("mutation_involution", mutation_involution),
    ("skew_symmetry_and_arrow_level_agreement", skew_symmetry_and_arrow_level_agreement),
    ("single_arrow_swap_cycle", single_arrow_swap_cycle),
    ("no_arrow_identity_cycle", no_arrow_identity_cycle),
    ("sink_source_keeps_arrow_count", sink_source_keeps_arrow_count),
    ("acyclic_ordering_matches_permutations", acyclic_ordering_matches_permutations),
    ("classifier_matches_reference", classifier_matches_reference),
    ("report_invariants", report_invariants),
    ("fork_mutation_away_from_return", fork_mutation_away_from_return),
    ("prefork_mutation_outside_triple", prefork_mutation_outside_triple),
    ("prefork_mutation_at_pair", prefork_mutation_at_pair),
    ("key_mutation_outside_pair", key_mutation_outside_pair),
    ("key_mutation_at_sink_or_source", key_mutation_at_sink_or_source),
    ("key_mutation_at_pair", key_mutation_at_pair),
    ("wing_mutation", wing_mutation),
    ("tip_mutation", tip_mutation),
    ("fork_subquiver_closure", fork_subquiver_closure),
    ("prefork_subquiver_closure", prefork_subquiver_closure),
    ("key_subquiver_closure", key_subquiver_closure),
    ("prefork_tree_swap", prefork_tree_swap),
    ("key_orderings", key_orderings),
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mu(q: &Quiver, v: usize) -> Result<Quiver, String> {
    q.mutate(v).map_err(|e| format!("mutation at {v} failed: {e}"))
}

fn mu_seq(q: &Quiver, seq: &[usize]) -> Result<Quiver, String> {
    seq.iter().try_fold(q.clone(), |acc, &v| mu(&acc, v))
}

fn small_n(r: &mut ChaCha8Rng) -> usize {
    r.gen_range(4..=6)
}

fn others(n: usize, skip: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !skip.contains(v)).collect()
}

fn is_fork_with(q: &Quiver, r: usize) -> bool {
    classify(q).fork_returns.contains(r)
}

fn is_aa(q: &Quiver) -> bool {
    let rep = classify(q);
    rep.abundant && rep.acyclic
}

fn has_triple(q: &Quiver, ret: usize, k: usize, k2: usize) -> bool {
    let pair = (k.min(k2), k.max(k2));
    classify(q).prefork_triples.contains(&PreforkTriple { ret, pair })
}

fn has_key(q: &Quiver, k: usize, k2: usize) -> bool {
    classify(q).key_pairs.contains(&(k.min(k2), k.max(k2)))
}

fn deleted(q: &Quiver, v: usize) -> (Quiver, Vec<usize>) {
    q.delete_vertex(v).expect("vertex in range")
}

fn local(map: &[usize], v: usize) -> usize {
    map.iter().position(|&x| x == v).expect("vertex kept")
}

fn q_set(q: &Quiver, k: usize, k2: usize) -> Vec<usize> {
    q.q_set(k, k2).expect("distinct vertices").iter().collect()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
}

fn restricted(q: &Quiver, keep: &[usize]) -> (Quiver, Vec<usize>) {
    let set = VertexSet::new(q.vertex_count(), keep.iter().copied()).expect("valid subset");
    q.full_subquiver(&set).expect("nonempty subset")
}

fn unrelated_arrows_fixed(a: &Quiver, b: &Quiver, skip: &[usize]) -> bool {
    let rest = others(a.vertex_count(), skip);
    rest.iter().all(|&i| rest.iter().all(|&j| a.mult(i, j) == b.mult(i, j)))
}

pub fn mutation_involution(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=7);
    let q = generate::random_quiver(n, 6, &mut r);
    for v in 0..n {
        let back = mu(&mu(&q, v)?, v)?;
        ensure(back == q, || format!("mu_{v} twice changed {q:?}"))?;
    }
    Ok(())
}

pub fn skew_symmetry_and_arrow_level_agreement(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(2..=7);
    let q = generate::random_quiver(n, 6, &mut r);
    let v = r.gen_range(0..n);
    let p = mu(&q, v)?;
    let m = p.matrix();
    ensure((0..n).all(|i| (0..n).all(|j| m[i][j] == -m[j][i])), || format!("mu_{v} of {q:?} not skew"))?;
    let reference = oracle::mutate(&oracle::of(&q), v).ok_or("reference overflow")?;
    ensure(reference == oracle::of(&p), || format!("mu_{v} of {q:?} disagrees with the arrow-level rule"))
}

/// Random quiver where `a -> b` is a single arrow.
fn with_single_arrow(r: &mut ChaCha8Rng) -> (Quiver, usize, usize) {
    let n = r.gen_range(2..=6);
    let base = generate::random_quiver(n, 3, r);
    let mut m = base.matrix();
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(r);
    let (a, b) = (vs[0], vs[1]);
    m[a][b] = 1;
    m[b][a] = -1;
    (Quiver::from_matrix(&m).expect("skew"), a, b)
}

pub fn single_arrow_swap_cycle(seed: u64) -> Result<(), String> {
    let (q, a, b) = with_single_arrow(&mut rng(seed));
    let sigma = swap_permutation(q.vertex_count(), a, b);
    let swapped = q.permuted(&sigma).map_err(|e| e.to_string())?;
    for seq in [[a, b, a, b, a], [b, a, b, a, b]] {
        let p = mu_seq(&q, &seq)?;
        ensure(p == swapped, || format!("{seq:?} on {q:?} is not the {a}<->{b} swap"))?;
    }
    Ok(())
}

pub fn no_arrow_identity_cycle(seed: u64) -> Result<(), String> {
    let (mut q, a, b) = with_single_arrow(&mut rng(seed));
    let mut m = q.matrix();
    m[a][b] = 0;
    m[b][a] = 0;
    q = Quiver::from_matrix(&m).expect("skew");
    for seq in [[a, b, a, b], [b, a, b, a]] {
        ensure(mu_seq(&q, &seq)? == q, || format!("{seq:?} moved {q:?}"))?;
    }
    Ok(())
}

pub fn sink_source_keeps_arrow_count(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(2..=7);
    let q = generate::random_quiver(n, 5, &mut r);
    for v in (0..n).filter(|&v| q.is_sink(v) || q.is_source(v)) {
        let p = mu(&q, v)?;
        ensure(p.arrow_count() == q.arrow_count(), || format!("mu_{v} of {q:?} changed the arrow count"))?;
        let only_flipped = (0..n).all(|i| {
            (0..n).all(|j| {
                let flip = (i == v) != (j == v);
                p.mult(i, j) == if flip { -q.mult(i, j) } else { q.mult(i, j) }
            })
        });
        ensure(only_flipped, || format!("mu_{v} of {q:?} did more than reverse arrows"))?;
    }
    Ok(())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = vec![];
    for (idx, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(idx);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Orders in which every arrow points forward.
fn topological_orders(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.vertex_count();
    permutations(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .filter(|p| (0..n).all(|a| ((a + 1)..n).all(|b| q.mult(p[b], p[a]) <= 0)))
        .collect()
}

pub fn acyclic_ordering_matches_permutations(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=6);
    let q = if r.gen_bool(0.5) {
        generate::random_quiver(n, 2, &mut r)
    } else {
        // acyclic with some missing arrows
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let mut arrows = vec![];
        for a in 0..n {
            for b in (a + 1)..n {
                let w = r.gen_range(0..=2);
                if w > 0 {
                    arrows.push((order[a], order[b], w));
                }
            }
        }
        Quiver::new(n, &arrows).expect("valid")
    };
    let orders = topological_orders(&q);
    ensure(q.is_acyclic() == !orders.is_empty(), || format!("acyclicity of {q:?}"))?;
    ensure(q.is_acyclic() == !oracle::has_cycle(&oracle::of(&q)), || format!("reference acyclicity of {q:?}"))?;
    match q.acyclic_ordering() {
        Ok(ord) => {
            ensure(orders.contains(&ord.order), || format!("{:?} is not an ordering of {q:?}", ord.order))?;
            ensure(ord.unique == (orders.len() == 1), || format!("uniqueness flag for {q:?}"))
        }
        Err(_) => ensure(orders.is_empty(), || format!("{q:?} has an ordering but none was reported")),
    }
}

fn family_instance(r: &mut ChaCha8Rng) -> Quiver {
    let n = small_n(r);
    let q_abs = r.gen_range(0..=1);
    match r.gen_range(0..7) {
        0 => generate::random_quiver(n, 3, r),
        1 => generate::random_abundant_acyclic(n, 4, r).quiver,
        2 => generate::random_fork(n, r).quiver,
        3 => generate::random_key(n, q_abs, None, r).quiver,
        4 => generate::random_prefork(n, q_abs, r).quiver,
        5 => generate::random_wing(n, q_abs, r).quiver,
        _ => generate::random_tip(n, q_abs, r).quiver,
    }
}

pub fn classifier_matches_reference(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let mut q = family_instance(&mut r);
    // a couple of random steps away from the family
    for _ in 0..r.gen_range(0..=2) {
        let v = r.gen_range(0..q.vertex_count());
        match q.mutate(v) {
            Ok(p) if p.max_multiplicity() < 1 << 20 => q = p,
            _ => break,
        }
    }
    let rep = classify(&q);
    let m = oracle::of(&q);
    let fr: Vec<usize> = rep.fork_returns.iter().collect();
    ensure(fr == oracle::fork_returns(&m), || format!("fork returns of {q:?}"))?;
    let keys: Vec<(usize, usize)> = rep.key_pairs.iter().copied().collect();
    ensure(keys == oracle::key_pairs(&m), || format!("key pairs of {q:?}"))?;
    let mut triples: Vec<(usize, usize, usize)> =
        rep.prefork_triples.iter().map(|t| (t.ret, t.pair.0, t.pair.1)).collect();
    let mut expected = oracle::prefork_triples(&m);
    triples.sort();
    expected.sort();
    ensure(triples == expected, || format!("pre-fork triples of {q:?}"))?;
    let mut wings = oracle::wing_witnesses(&m);
    wings.sort();
    ensure(rep.wing_witnesses.iter().copied().collect::<Vec<_>>() == wings, || format!("wings of {q:?}"))?;
    let mut tips = oracle::tip_witnesses(&m);
    tips.sort();
    ensure(rep.tip_witnesses.iter().copied().collect::<Vec<_>>() == tips, || format!("tips of {q:?}"))?;
    ensure(rep.is_plain() == oracle::is_plain(&m), || format!("plainness of {q:?}"))
}

pub fn report_invariants(seed: u64) -> Result<(), String> {
    let q = family_instance(&mut rng(seed));
    let rep = classify(&q);
    rep.check_invariants().map_err(|e| format!("{q:?}: {e}"))?;
    ensure(rep.is_boundary() == (rep.is_fork() || rep.is_prefork()), || "boundary flag".into())?;
    ensure(!(rep.is_fork() && rep.is_key()), || format!("{q:?} is both a fork and a key"))
}

pub fn fork_mutation_away_from_return(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let (f, ret) = if r.gen_bool(0.5) {
        let f = generate::random_fork(n, &mut r);
        (f.quiver, Some(f.ret))
    } else {
        (generate::random_abundant_acyclic(n, 4, &mut r).quiver, None)
    };
    for v in 0..n {
        if Some(v) == ret || f.is_sink(v) || f.is_source(v) {
            continue;
        }
        let p = mu(&f, v)?;
        ensure(is_fork_with(&p, v), || format!("mu_{v} of {f:?} is not a fork with return {v}"))?;
        ensure(p.arrow_count() > f.arrow_count(), || format!("mu_{v} of {f:?} did not add arrows"))?;
    }
    Ok(())
}

pub fn prefork_mutation_outside_triple(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let p = generate::random_prefork(n, r.gen_range(0..=1), &mut r);
    for m in others(n, &[p.ret, p.k, p.k2]) {
        let q = mu(&p.quiver, m)?;
        ensure(has_triple(&q, m, p.k, p.k2), || format!("mu_{m} of {:?} lost the pre-fork", p.quiver))?;
        ensure(q.arrow_count() > p.quiver.arrow_count(), || "arrow count did not grow".into())?;
        ensure(q.mult(p.k, p.k2) == p.quiver.mult(p.k, p.k2), || "q_kk' changed".into())?;
    }
    Ok(())
}

/// The shared conclusions for `mu_k` and `mu_k'` of a pre-fork or of a key
/// whose pair are not sinks or sources.
fn pair_mutation_bullets(base: &Quiver, k: usize, k2: usize) -> Result<(), String> {
    let n = base.vertex_count();
    for (a, b) in [(k, k2), (k2, k)] {
        let q = mu(base, a)?;
        ensure(q.arrow_count() > base.arrow_count(), || format!("mu_{a} of {base:?} did not add arrows"))?;
        let (without_b, map_b) = deleted(&q, b);
        ensure(is_fork_with(&without_b, local(&map_b, a)), || format!("mu_{a} of {base:?} minus {b} is no fork"))?;
        let (without_a, _) = deleted(&q, a);
        ensure(is_aa(&without_a), || format!("mu_{a} of {base:?} minus {a} is not abundant acyclic"))?;
        ensure(q_set(&q, a, b) == others(n, &[a, b]), || format!("mu_{a} of {base:?}: 2-path set"))?;
        for h in others(n, &[a, b]) {
            let f = mu(&q, h)?;
            ensure(is_fork_with(&f, h), || format!("mu_{h} mu_{a} of {base:?} is no fork with return {h}"))?;
        }
    }
    Ok(())
}

pub fn prefork_mutation_at_pair(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let p = generate::random_prefork(n, r.gen_range(0..=1), &mut r);
    pair_mutation_bullets(&p.quiver, p.k, p.k2)
}

pub fn key_mutation_outside_pair(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let key = generate::random_key(n, r.gen_range(0..=1), None, &mut r);
    let q = &key.quiver;
    for v in others(n, &[key.k, key.k2]) {
        let p = mu(q, v)?;
        ensure(p.mult(key.k, key.k2) == q.mult(key.k, key.k2), || "q_kk' changed".into())?;
        if q.is_sink(v) || q.is_source(v) {
            ensure(has_key(&p, key.k, key.k2), || format!("mu_{v} of {q:?} is not a key"))?;
            ensure(p.arrow_count() == q.arrow_count(), || "arrow count changed".into())?;
        } else {
            ensure(has_triple(&p, v, key.k, key.k2), || format!("mu_{v} of {q:?} is not a pre-fork"))?;
            ensure(p.arrow_count() > q.arrow_count(), || "arrow count did not grow".into())?;
        }
    }
    Ok(())
}

pub fn key_mutation_at_pair(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let key = generate::random_interior_key(n, r.gen_range(0..=1), &mut r);
    pair_mutation_bullets(&key.quiver, key.k, key.k2)
}

pub fn key_mutation_at_sink_or_source(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let q_abs = r.gen_range(0..=1);
    let position = if r.gen_bool(0.5) { 0 } else { n - 2 };
    let key = generate::random_key(n, q_abs, Some(position), &mut r);
    let q = &key.quiver;
    let extreme = |v: usize| q.is_sink(v) || q.is_source(v);
    let (k, k2) = if extreme(key.k) { (key.k, key.k2) } else { (key.k2, key.k) };
    ensure(extreme(k), || format!("{q:?}: neither pair vertex is a sink or source"))?;
    let rest = others(n, &[k, k2]);
    let forks_after = |x: &Quiver, name: &str| -> Result<(), String> {
        ensure(q_set(x, k, k2) == rest, || format!("{name} of {q:?}: 2-path set"))?;
        for &v in &rest {
            ensure(is_fork_with(&mu(x, v)?, v), || format!("mu_{v} of {name} of {q:?} is no fork"))?;
        }
        ensure(unrelated_arrows_fixed(q, x, &[k, k2]), || format!("{name} moved arrows away from the pair"))
    };
    let rr = mu(q, k)?;
    ensure(rr.is_acyclic(), || format!("mu_k of {q:?} is not acyclic"))?;
    forks_after(&rr, "mu_k")?;
    let p = mu(&rr, k2)?;
    ensure(has_key(&p, k, k2), || format!("mu_[k,k'] of {q:?} is not a key"))?;
    ensure(p.mult(k, k2) == q.mult(k, k2), || "q_kk' changed".into())?;
    for &i in &rest {
        ensure(p.mult(i, k) == -q.mult(i, k) && p.mult(i, k2) == -q.mult(i, k2), || "pair arrows not reversed".into())?;
    }
    ensure(unrelated_arrows_fixed(q, &p, &[k, k2]), || "mu_[k,k'] moved other arrows".into())?;
    if !extreme(k2) {
        let r2 = mu(q, k2)?;
        ensure(!r2.is_acyclic(), || format!("mu_k' of {q:?} is acyclic"))?;
        forks_after(&r2, "mu_k'")?;
        let p2 = mu(&r2, k)?;
        ensure(!p2.is_acyclic(), || format!("mu_[k',k] of {q:?} is acyclic"))?;
        forks_after(&p2, "mu_[k',k]")?;
    }
    Ok(())
}

pub fn wing_mutation(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let w = generate::random_wing(n, r.gen_range(0..=1), &mut r);
    let (k, k2) = (w.ret, w.other);
    for v in others(n, &[k, k2]) {
        ensure(is_fork_with(&mu(&w.quiver, v)?, v), || format!("mu_{v} of wing {:?} is no fork", w.quiver))?;
    }
    let t = mu(&w.quiver, k2)?;
    ensure(classify(&t).tip_witnesses.contains(&(k2, k)), || format!("mu_k' of wing {:?} is no tip", w.quiver))?;
    ensure(t.arrow_count() > w.quiver.arrow_count(), || "tip has no more arrows than the wing".into())
}

pub fn tip_mutation(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let t = generate::random_tip(n, r.gen_range(0..=1), &mut r);
    let (k2, k) = (t.ret, t.other);
    let two_paths = q_set(&t.quiver, k, k2);
    for v in others(n, &[k, k2]) {
        let p = mu(&t.quiver, v)?;
        if t.quiver.mult(k, k2) == 0 || !two_paths.contains(&v) {
            ensure(has_triple(&p, v, k, k2), || format!("mu_{v} of tip {:?} is no pre-fork", t.quiver))?;
        } else {
            ensure(is_fork_with(&p, v), || format!("mu_{v} of tip {:?} is no fork", t.quiver))?;
        }
        ensure(p.arrow_count() > t.quiver.arrow_count(), || "arrow count did not grow".into())?;
    }
    Ok(())
}

pub fn fork_subquiver_closure(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(3..=6);
    let f = generate::random_fork(n, &mut r);
    for keep in subsets(n).filter(|s| s.len() >= 2 && s.contains(&f.ret)) {
        let (s, map) = restricted(&f.quiver, &keep);
        let ok = is_aa(&s) || is_fork_with(&s, local(&map, f.ret));
        ensure(ok, || format!("{keep:?} of fork {:?} is neither abundant acyclic nor a fork", f.quiver))?;
    }
    Ok(())
}

pub fn prefork_subquiver_closure(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let p = generate::random_prefork(n, r.gen_range(0..=1), &mut r);
    for keep in subsets(n).filter(|s| s.len() >= 2) {
        // the lone pair has fewer than two arrows and no third vertex
        if keep.len() == 2 && keep.contains(&p.k) && keep.contains(&p.k2) {
            continue;
        }
        let (s, map) = restricted(&p.quiver, &keep);
        let at = |v: usize| map.iter().position(|&x| x == v);
        let rep = classify(&s);
        let ok = (rep.abundant && rep.acyclic)
            || matches!((at(p.k), at(p.k2)), (Some(a), Some(b)) if has_key(&s, a, b))
            || at(p.ret).is_some_and(|r| rep.fork_returns.contains(r))
            || matches!((at(p.ret), at(p.k), at(p.k2)), (Some(r), Some(a), Some(b)) if has_triple(&s, r, a, b));
        ensure(ok, || format!("{keep:?} of pre-fork {:?} fits no allowed class", p.quiver))?;
    }
    Ok(())
}

pub fn key_subquiver_closure(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let key = generate::random_key(n, r.gen_range(0..=1), None, &mut r);
    for keep in subsets(n).filter(|s| s.len() >= 2) {
        if keep.len() == 2 && keep.contains(&key.k) && keep.contains(&key.k2) {
            continue;
        }
        let (s, _) = restricted(&key.quiver, &keep);
        let rep = classify(&s);
        ensure(rep.acyclic, || format!("{keep:?} of key {:?} has a cycle", key.quiver))?;
        ensure(rep.abundant || rep.is_key(), || format!("{keep:?} of key {:?} is neither", key.quiver))?;
    }
    Ok(())
}

pub fn prefork_tree_swap(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = small_n(&mut r);
    let q_abs = r.gen_range(0..=1);
    let p = generate::random_prefork(n, q_abs, &mut r);
    let (q, k, k2, ret) = (&p.quiver, p.k, p.k2, p.ret);
    let sigma = swap_permutation(n, k, k2);
    let iso = |a: &Quiver, b: &Quiver| a.equal_under_permutation(b, &sigma).unwrap_or(false);
    let wing = |x: &Quiver, at: usize, other: usize| classify(x).wing_witnesses.contains(&(at, other));
    let tip = |x: &Quiver, at: usize, other: usize| classify(x).tip_witnesses.contains(&(at, other));
    if q_abs == 0 {
        for seq in [[k, k2, k, k2], [k2, k, k2, k]] {
            ensure(&mu_seq(q, &seq)? == q, || format!("{seq:?} moved pre-fork {q:?}"))?;
        }
        let (w, w2) = (mu(q, k)?, mu(q, k2)?);
        ensure(wing(&w, k, k2) && wing(&w2, k2, k), || format!("wings next to {q:?}"))?;
        let t = mu(&w, k2)?;
        ensure(t == mu(&w2, k)?, || "the two tips differ".into())?;
        return ensure(tip(&t, k2, k) || tip(&t, k, k2), || format!("tip next to {q:?}"));
    }
    let top: Vec<Quiver> = (1..=5).map(|l| mu_seq(q, &[k, k2, k, k2, k][..l])).collect::<Result<_, _>>()?;
    let bottom: Vec<Quiver> = (1..=5).map(|l| mu_seq(q, &[k2, k, k2, k, k2][..l])).collect::<Result<_, _>>()?;
    let tilde = &top[4];
    ensure(tilde == &bottom[4], || format!("the two five-step paths from {q:?} disagree"))?;
    ensure(iso(q, tilde), || format!("{q:?} and its translate are not swap-isomorphic"))?;
    // W, T, T~, W~ along the top and W', T', T~', W~' along the bottom
    ensure(wing(&top[0], k, k2) && wing(&bottom[0], k2, k), || "first wings".into())?;
    ensure(tip(&top[1], k2, k) && tip(&bottom[1], k, k2), || "first tips".into())?;
    ensure(classify(&top[2]).is_tip() && classify(&bottom[2]).is_tip(), || "second tips".into())?;
    ensure(classify(&top[3]).is_wing() && classify(&bottom[3]).is_wing(), || "second wings".into())?;
    ensure(iso(&top[0], &bottom[3]) && iso(&top[1], &bottom[2]), || "W ~ W~', T ~ T~'".into())?;
    ensure(iso(&top[2], &bottom[1]) && iso(&top[3], &bottom[0]), || "T~ ~ T', W~ ~ W'".into())?;
    let (side, side_tilde) = (mu(q, ret)?, mu(tilde, ret)?);
    ensure(iso(&side, &side_tilde), || "mu_r of the translates are not swap-isomorphic".into())?;
    for seq in [[k, k2, k, k2, k], [k2, k, k2, k, k2]] {
        ensure(mu_seq(&side, &seq)? == side_tilde, || format!("{seq:?} does not carry mu_r(Q) to mu_r(Q~)"))?;
    }
    Ok(())
}

pub fn key_orderings(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(3..=6);
    let q_abs = r.gen_range(0..=1);
    let key = generate::random_key(n, q_abs, None, &mut r);
    let q = &key.quiver;
    let ord = q.acyclic_ordering().map_err(|e| format!("key {q:?} has no ordering: {e}"))?;
    let orders = topological_orders(q);
    let sources = (0..n).filter(|&v| q.is_source(v)).count();
    let sinks = (0..n).filter(|&v| q.is_sink(v)).count();
    if q_abs == 0 {
        ensure(!ord.unique && orders.len() == 2, || format!("key {q:?} should have exactly two orderings"))?;
        let sigma = swap_permutation(n, key.k, key.k2);
        let swapped: Vec<usize> = orders[0].iter().map(|&v| sigma[v]).collect();
        ensure(swapped == orders[1], || format!("orderings of {q:?} differ by more than the pair"))?;
        ensure(matches!((sources, sinks), (1, 1) | (2, 1) | (1, 2)), || "source/sink counts".into())
    } else {
        ensure(ord.unique && orders.len() == 1, || format!("key {q:?} should have one ordering"))?;
        ensure(sources == 1 && sinks == 1, || "one source and one sink".into())
    }
}
