//! Acceptance suite: twelve criteria, one result line each.
//!
//! Runs without the libtest harness so the summary prints on every
//! `cargo test`. Exits non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperspec::closed_form::{
    hypercycle_signless_lambda, hyperstar_laplacian_lambda, hyperstar_signless_lambda, ClosedFormConfig,
};
use hyperspec::generate::{complete, generate, hypercycle, hyperstar, random, Family};
use hyperspec::hypergraph::{binomial, recognize, Hypergraph};
use hyperspec::solvers::{laplacian_max_even, multistart_max, nqz_max, verify_pair, SolverConfig};
use hyperspec::structure::{odd_bipartition, transfer_eigenvector};
use hyperspec::tensor::{apply, residual, OperatorKind};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cf() -> ClosedFormConfig {
    ClosedFormConfig::default()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn lambda_q(g: &Hypergraph) -> Result<f64, String> {
    nqz_max(OperatorKind::SignlessLaplacian, g, &cfg()).map(|o| o.pair.lambda).map_err(|e| e.to_string())
}

fn lambda_a(g: &Hypergraph) -> Result<f64, String> {
    nqz_max(OperatorKind::Adjacency, g, &cfg()).map(|o| o.pair.lambda).map_err(|e| e.to_string())
}

fn cap(g: &Hypergraph) -> f64 {
    2.0 * binomial(g.n() - 1, g.k() - 1).unwrap() as f64
}

/// Plain bisection, independent of the library's root finder.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_positive = f(lo) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Connected random k-uniform hypergraphs on at most `max_n` vertices.
fn random_connected(k: usize, min_n: usize, max_n: usize, count: usize, seed: u64) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(min_n..=max_n);
        let total = binomial(n, k).unwrap() as usize;
        let least = (n - 1).div_ceil(k - 1);
        let m = rng.gen_range(least..=total.min(2 * n).max(least));
        let g = random(n, k, m, rng.gen()).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn fano() -> Hypergraph {
    Hypergraph::build(7, 3, &[[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]).unwrap()
}

fn heart_vector(g: &Hypergraph) -> Vec<f64> {
    let heart = recognize(g).hyperstar_heart.expect("hyperstar");
    let mut e = vec![0.0; g.n()];
    e[heart] = 1.0;
    e
}

fn criterion_1() -> Outcome {
    let mut detail = Vec::new();
    for (k, d) in [(4usize, 1usize), (4, 2), (4, 3), (6, 2)] {
        let r = hyperstar_laplacian_lambda(k, d, &cf()).map_err(|e| e.to_string())?;
        let l = r.lambda;
        let df = d as f64;
        let f = |x: f64| (1.0 - x).powi(k as i32 - 1) * (x - df) + df;
        ensure(f(l).abs() <= 1e-10, || format!("(k={k},d={d}) |f(lambda)| = {:e}", f(l).abs()))?;
        ensure(r.poly_residual <= 1e-10, || format!("(k={k},d={d}) poly residual {:e}", r.poly_residual))?;
        if d == 1 {
            ensure(l == 2.0 && f(2.0) == 0.0, || format!("(k={k},d=1) lambda = {l}, expected exactly 2"))?;
        } else {
            ensure(l > df && l < df + 1.0, || format!("(k={k},d={d}) lambda = {l} outside (d, d+1)"))?;
            let oracle = bisect(f, df + 1e-9, df + 1.0);
            ensure((l - oracle).abs() <= 1e-12, || format!("(k={k},d={d}) root {l} vs bisection {oracle}"))?;
        }
        let g = generate(Family::Hyperstar { k, d }).unwrap();
        let out = laplacian_max_even(&g, &cfg()).map_err(|e| e.to_string())?;
        let gap = (out.pair.lambda - l).abs();
        ensure(gap <= 1e-8, || format!("(k={k},d={d}) solver {} vs closed form {l}", out.pair.lambda))?;
        detail.push(format!("({k},{d}) {l:.12}"));
    }
    Ok(detail.join(", "))
}

fn criterion_2() -> Outcome {
    let mut worst_excess = f64::NEG_INFINITY;
    let mut advisories = Vec::new();
    for (k, d) in [(3usize, 2usize), (3, 3), (5, 2)] {
        let g = hyperstar(k, d).unwrap();
        let e = heart_vector(&g);
        let ok = verify_pair(OperatorKind::Laplacian, &g, d as f64, &e, 1e-12).map_err(|e| e.to_string())?;
        ensure(ok, || format!("(k={k},d={d}) (d, e_heart) not verified"))?;
        let search = SolverConfig { starts: 256, ..cfg() };
        let best = multistart_max(OperatorKind::Laplacian, &g, &search).map_err(|e| e.to_string())?;
        let excess = best.pair.lambda - d as f64;
        worst_excess = worst_excess.max(excess);
        if excess > 1e-6 {
            advisories.push(format!("(k={k},d={d}) search found {}", best.pair.lambda));
        }
    }
    if advisories.is_empty() {
        Ok(format!("heart eigenpairs verified; best search value exceeds d by {worst_excess:.2e}"))
    } else {
        Ok(format!("heart eigenpairs verified; ADVISORY: {}", advisories.join("; ")))
    }
}

fn corpus() -> Vec<Hypergraph> {
    let mut v = vec![
        hyperstar(3, 2).unwrap(),
        hyperstar(3, 4).unwrap(),
        hyperstar(4, 3).unwrap(),
        hyperstar(5, 2).unwrap(),
        hypercycle(3, 4).unwrap(),
        hypercycle(4, 3).unwrap(),
        hypercycle(4, 5).unwrap(),
        hypercycle(6, 3).unwrap(),
        complete(5, 4).unwrap(),
        complete(6, 3).unwrap(),
        fano(),
    ];
    v.extend(random_connected(3, 4, 8, 10, 101));
    v.extend(random_connected(4, 5, 9, 10, 102));
    v
}

fn criterion_3() -> Outcome {
    for n in [4usize, 5, 6] {
        let g = complete(n, 3).unwrap();
        let lq = lambda_q(&g)?;
        let want = 2.0 * binomial(n - 1, 2).unwrap() as f64;
        ensure((lq - want).abs() <= 1e-8, || format!("complete({n},3): lambda(Q) = {lq}, expected {want}"))?;
    }
    let mut checked = 0;
    let mut min_gap = f64::INFINITY;
    for g in corpus() {
        if recognize(&g).is_complete {
            continue;
        }
        let lq = lambda_q(&g)?;
        let c = cap(&g);
        ensure(lq < c - 1e-6, || format!("non-complete instance reaches the cap: {lq} vs {c}"))?;
        min_gap = min_gap.min(c - lq);
        checked += 1;
    }
    Ok(format!("complete n=4,5,6 hit the cap; {checked} non-complete instances below it (min gap {min_gap:.3})"))
}

fn criterion_4() -> Outcome {
    let cases: Vec<(&str, Hypergraph)> = vec![
        ("complete(5,3)", complete(5, 3).unwrap()),
        ("complete(4,3)", complete(4, 3).unwrap()),
        ("complete(6,4)", complete(6, 4).unwrap()),
        ("Fano plane", fano()),
    ];
    let mut detail = Vec::new();
    for (name, g) in cases {
        let p = g.degree_profile();
        ensure(p.is_regular && g.is_connected(), || format!("{name} is not connected and regular"))?;
        let lq = lambda_q(&g)?;
        let want = 2.0 * p.max_degree as f64;
        ensure((lq - want).abs() <= 1e-8, || format!("{name}: lambda(Q) = {lq}, expected {want}"))?;
        detail.push(format!("{name} {want}"));
    }
    Ok(detail.join(", "))
}

fn random_four_uniform_corpus() -> Vec<Hypergraph> {
    random_connected(4, 5, 10, 100, 20_251)
}

fn criterion_5() -> Outcome {
    let corpus = random_four_uniform_corpus();
    for (i, g) in corpus.iter().enumerate() {
        let p = g.degree_profile();
        let d = p.max_degree as f64;
        let lq = lambda_q(g)?;
        let la = lambda_a(g)?;
        let lower = d.max(p.mean_bound());
        ensure(lower - 1e-8 <= lq, || format!("instance {i}: lower bound {lower} > lambda(Q) = {lq}"))?;
        ensure(lq <= la + d + 1e-8, || format!("instance {i}: lambda(Q) = {lq} > lambda(A) + d = {}", la + d))?;
    }
    Ok(format!("{} random connected 4-uniform instances (n <= 10)", corpus.len()))
}

fn signless_floor(k: usize, d: usize) -> Result<f64, String> {
    let r = hyperstar_signless_lambda(k, d, &cf()).map_err(|e| e.to_string())?;
    Ok(d as f64 + d as f64 * r.root.recip().powi(k as i32 - 1))
}

fn criterion_6() -> Outcome {
    let mut corpus = random_four_uniform_corpus();
    corpus.extend((1..=5).map(|d| hyperstar(4, d).unwrap()));
    let (mut stars, mut others, mut min_gap) = (0, 0, f64::INFINITY);
    for (i, g) in corpus.iter().enumerate() {
        let d = g.degree_profile().max_degree;
        let floor = signless_floor(g.k(), d)?;
        let lq = lambda_q(g)?;
        ensure(lq >= floor - 1e-8, || format!("instance {i}: lambda(Q) = {lq} below floor {floor}"))?;
        let equal = (lq - floor).abs() <= 1e-8;
        let is_star = recognize(g).is_hyperstar();
        ensure(equal == is_star, || {
            format!("instance {i}: equality {equal} but hyperstar {is_star} (lambda(Q) = {lq}, floor {floor})")
        })?;
        if is_star {
            stars += 1;
        } else {
            others += 1;
            min_gap = min_gap.min(lq - floor);
        }
    }
    Ok(format!("{stars} hyperstars attain the floor; {others} others exceed it (min gap {min_gap:.3e})"))
}

fn criterion_7() -> Outcome {
    let r = hypercycle_signless_lambda(4, &cf()).map_err(|e| e.to_string())?;
    let root_half = 0.5f64.sqrt();
    ensure((r.root - root_half).abs() <= 1e-10, || format!("beta = {}, expected sqrt(1/2)", r.root))?;
    ensure((r.lambda - 3.0).abs() <= 1e-10, || format!("lambda = {}, expected 3", r.lambda))?;
    for s in [3usize, 4, 5] {
        let lq = lambda_q(&hypercycle(4, s).unwrap())?;
        ensure((lq - 3.0).abs() <= 1e-8, || format!("hypercycle(4,{s}): lambda(Q) = {lq}"))?;
    }
    Ok(format!("beta = {:.15}, lambda(Q) = 3 for s = 3, 4, 5", r.root))
}

fn even_corpus() -> Vec<Hypergraph> {
    let mut v = vec![
        hyperstar(4, 1).unwrap(),
        hyperstar(4, 2).unwrap(),
        hyperstar(4, 4).unwrap(),
        hyperstar(6, 2).unwrap(),
        hypercycle(4, 3).unwrap(),
        hypercycle(4, 4).unwrap(),
        hypercycle(6, 3).unwrap(),
        complete(5, 4).unwrap(),
        complete(6, 4).unwrap(),
    ];
    v.extend(random_connected(4, 5, 9, 30, 808));
    v
}

fn criterion_8() -> Outcome {
    let (mut feasible, mut infeasible, mut worst_transfer) = (0, 0, 0.0f64);
    for (i, g) in even_corpus().iter().enumerate() {
        let p = odd_bipartition(g).map_err(|e| e.to_string())?;
        let q = nqz_max(OperatorKind::SignlessLaplacian, g, &cfg()).map_err(|e| e.to_string())?;
        let l = laplacian_max_even(g, &cfg()).map_err(|e| e.to_string())?;
        let (lq, ll) = (q.pair.lambda, l.pair.lambda);
        let equal = (ll - lq).abs() <= 2e-8;
        ensure(equal == p.feasible, || {
            format!("instance {i}: |lambda(L) - lambda(Q)| = {:e}, odd-bipartite {}", (ll - lq).abs(), p.feasible)
        })?;
        if p.feasible {
            feasible += 1;
            let y = transfer_eigenvector(&q.pair.x, &p).map_err(|e| e.to_string())?;
            let r = residual(OperatorKind::Laplacian, g, lq, &y).map_err(|e| e.to_string())?;
            ensure(r <= 1e-9, || format!("instance {i}: transferred residual {r:e}"))?;
            worst_transfer = worst_transfer.max(r);
        } else {
            infeasible += 1;
        }
    }
    Ok(format!(
        "{feasible} odd-bipartite (equal, worst transfer residual {worst_transfer:.1e}), {infeasible} not (strictly less)"
    ))
}

fn criterion_9() -> Outcome {
    let mut min_gap = f64::INFINITY;
    let corpus = random_connected(3, 4, 9, 50, 909);
    for (i, g) in corpus.iter().enumerate() {
        let lq = lambda_q(g)?;
        let ll = multistart_max(OperatorKind::Laplacian, g, &cfg()).map_err(|e| e.to_string())?.pair.lambda;
        ensure(ll < lq - 1e-6, || format!("instance {i}: multistart lambda(L) = {ll}, lambda(Q) = {lq}"))?;
        min_gap = min_gap.min(lq - ll);
    }
    Ok(format!("{} random connected 3-uniform instances, min gap {min_gap:.3e}", corpus.len()))
}

fn criterion_10() -> Outcome {
    let mut detail = Vec::new();
    for m in [2usize, 3] {
        let n = 2 * m;
        let g = complete(n, 3).unwrap();
        let value = binomial(n - 1, 2).unwrap() as f64 + m as f64 - 1.0;
        let x: Vec<f64> = (0..n).map(|i| if i < m { 1.0 } else { -1.0 }).collect();
        let ok = verify_pair(OperatorKind::Laplacian, &g, value, &x, 1e-12).map_err(|e| e.to_string())?;
        ensure(ok, || format!("m={m}: ({value}, split vector) is not an eigenpair"))?;
        detail.push(format!("m={m}: {value}"));
    }
    Ok(detail.join(", "))
}

/// `(T x^{k-1})_i` from the explicit order-k tensor, summing every index tuple.
fn dense_apply(kind: OperatorKind, g: &Hypergraph, x: &[f64]) -> Vec<f64> {
    let (n, k) = (g.n(), g.k());
    let fact: f64 = (1..k).map(|v| v as f64).product();
    let mut entries = vec![0.0; n.pow(k as u32)];
    let index = |t: &[usize]| t.iter().fold(0, |acc, &v| acc * n + v);
    let (dc, ac) = match kind {
        OperatorKind::Adjacency => (0.0, 1.0),
        OperatorKind::Degree => (1.0, 0.0),
        OperatorKind::Laplacian => (1.0, -1.0),
        OperatorKind::SignlessLaplacian => (1.0, 1.0),
    };
    for e in g.edges() {
        let e: Vec<usize> = e.iter().map(|&v| v as usize).collect();
        for perm in permutations(&e) {
            entries[index(&perm)] += ac / fact;
        }
    }
    for (i, d) in g.degree_profile().degrees.iter().enumerate() {
        entries[index(&vec![i; k])] += dc * *d as f64;
    }
    let mut out = vec![0.0; n];
    for (flat, &t) in entries.iter().enumerate() {
        if t == 0.0 {
            continue;
        }
        let mut rest = flat;
        let mut tuple = vec![0; k];
        for slot in tuple.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        out[tuple[0]] += t * tuple[1..].iter().map(|&j| x[j]).product::<f64>();
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn subsets_up_to(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, len: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i + 1, len, max, cur, out);
            cur.pop();
        }
    }
    rec(0, len, max, &mut Vec::new(), &mut out);
    out
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let mut instances = 0;
    let mut worst = 0.0f64;
    for n in 3..=5usize {
        let all = complete(n, 3).unwrap().edges_one_based();
        for subset in subsets_up_to(all.len(), 4) {
            let edges: Vec<Vec<usize>> = subset.iter().map(|&i| all[i].clone()).collect();
            let g = Hypergraph::build(n, 3, &edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            instances += 1;
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            for kind in [OperatorKind::Adjacency, OperatorKind::Laplacian, OperatorKind::SignlessLaplacian] {
                let fast = apply(kind, &g, &x).unwrap();
                let dense = dense_apply(kind, &g, &x);
                for (a, b) in fast.iter().zip(&dense) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-12, || format!("implicit and dense contraction differ by {worst:e}"))?;

    let mut sampled = 0;
    for n in 4..=10usize {
        for _ in 0..30 {
            let total = binomial(n, 4).unwrap() as usize;
            let m = rng.gen_range(1..=total.min(12));
            let g = random(n, 4, m, rng.gen()).unwrap();
            let exhaustive = (1u32..(1 << n) - 1).any(|mask| {
                g.edges().all(|e| e.iter().filter(|&&v| mask >> v & 1 == 1).count() % 2 == 1)
            });
            let p = odd_bipartition(&g).unwrap();
            ensure(p.feasible == exhaustive, || format!("n={n}: elimination {} vs search {exhaustive}", p.feasible))?;
            ensure(p.is_sound_for(&g), || format!("n={n}: unsound certificate"))?;
            sampled += 1;
        }
    }
    Ok(format!(
        "{instances} connected 3-uniform instances, max deviation {worst:.1e}; {sampled} sampled 4-uniform bipartition checks"
    ))
}

fn criterion_12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1212);
    let mut pairs = 0;
    let mut min_increase = f64::INFINITY;
    while pairs < 20 {
        let n = rng.gen_range(6..=9usize);
        let total = binomial(n, 4).unwrap() as usize;
        let m = rng.gen_range(2..=n);
        let g = random(n, 4, m, rng.gen()).unwrap();
        let extra_count = rng.gen_range(1..=3usize).min(total - m);
        if extra_count == 0 {
            continue;
        }
        let all = complete(n, 4).unwrap().edges_one_based();
        let mut extra = Vec::new();
        while extra.len() < extra_count {
            let e = &all[rng.gen_range(0..all.len())];
            let sorted: Vec<u32> = e.iter().map(|&v| (v - 1) as u32).collect();
            if !g.contains_edge(&sorted) && !extra.contains(e) {
                extra.push(e.clone());
            }
        }
        let bigger = g.with_extra_edges(&extra).unwrap();
        let small = laplacian_max_even(&g, &cfg()).map_err(|e| e.to_string())?.pair.lambda;
        let large = laplacian_max_even(&bigger, &cfg()).map_err(|e| e.to_string())?.pair.lambda;
        ensure(small <= large + 1e-8, || {
            format!("pair {pairs}: lambda(L) drops from {small} to {large} after adding {extra:?}")
        })?;
        min_increase = min_increase.min(large - small);
        pairs += 1;
    }
    Ok(format!("{pairs} nested pairs, smallest change {min_increase:.3e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("hyperstar even-k closed form", criterion_1),
        ("odd-k hyperstar lambda(L) = d", criterion_2),
        ("signless complete cap", criterion_3),
        ("regular lambda(Q) = 2d", criterion_4),
        ("signless sandwich", criterion_5),
        ("hyperstar signless floor", criterion_6),
        ("hypercycle closed form", criterion_7),
        ("lambda(L) = lambda(Q) iff odd-bipartite", criterion_8),
        ("odd-k strictness", criterion_9),
        ("3-uniform complete split vector", criterion_10),
        ("oracle equivalence", criterion_11),
        ("even-k monotonicity under edge addition", criterion_12),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {:>2}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || id.contains(f.as_str())) {
            continue;
        }
        let start = std::time::Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("{id} PASS  {name} [{secs:.2}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL  {name} [{secs:.2}s]: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
