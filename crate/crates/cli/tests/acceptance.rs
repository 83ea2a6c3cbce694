//! Acceptance run: one PASS/FAIL line per criterion.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use tourney_cli::verify::family_sweep;
use tourney_core::embed::erdos_moser;
use tourney_core::generate::{gen_cyclic_blowup, gen_dk, gen_eps_random, gen_planted_long};
use tourney_core::ordering::{check_prop21, count_backward, Dichotomy};
use tourney_core::{
    analyze_ordering, brute_force_contains_dk, check_dk_embedding, count_directed_triangles,
    exact_min_backward, extract_triangle_rich, find_dk, local_search_ordering, long_or_boost, rng,
    verify_trace, Density, DkEmbedding, PipelineConfig, Tournament,
};

const SEED: u64 = 20_240_601;

type Hit = (Tournament, DkEmbedding);

/// Every embedding any criterion got back from `find_dk`.
static FOUND: Mutex<Vec<Hit>> = Mutex::new(Vec::new());

fn record(t: &Tournament, e: &DkEmbedding) {
    FOUND.lock().unwrap().push((t.clone(), e.clone()));
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn brute_backward(t: &Tournament, order: &[usize]) -> usize {
    let n = order.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| t.beats(order[j], order[i]))
        .count()
}

/// Every ordering achieving the minimum, up to `cap` of them. `best[S]` is the
/// cheapest arrangement of `S` as a prefix; a vertex may close `S` exactly
/// when doing so keeps that optimum.
fn optimal_orderings(t: &Tournament, cap: usize) -> (usize, Vec<Vec<usize>>) {
    let n = t.n();
    let beats_mask: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&u| t.beats(v, u)).fold(0, |m, u| m | 1 << u))
        .collect();
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for s in 1usize..1 << n {
        best[s] = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .map(|v| best[s ^ 1 << v] + (beats_mask[v] & (s ^ 1 << v)).count_ones() as usize)
            .min()
            .unwrap();
    }
    fn walk(
        s: usize,
        best: &[usize],
        beats: &[usize],
        tail: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if s == 0 {
            out.push(tail.iter().rev().copied().collect());
            return;
        }
        for v in 0..beats.len() {
            let rest = s ^ 1 << v;
            if s >> v & 1 == 1 && best[rest] + (beats[v] & rest).count_ones() as usize == best[s] {
                tail.push(v);
                walk(rest, best, beats, tail, out, cap);
                tail.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(
        (1 << n) - 1,
        &best,
        &beats_mask,
        &mut Vec::new(),
        &mut out,
        cap,
    );
    (best[(1 << n) - 1], out)
}

fn labelled_tournaments(n: usize) -> impl Iterator<Item = Tournament> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |mask| {
        let mut bit = 0;
        Tournament::from_fn(n, |_, _| {
            let b = mask >> bit & 1 == 1;
            bit += 1;
            b
        })
    })
}

fn criterion_1() -> Outcome {
    const CAP: usize = 5000;
    let mut instances: Vec<Tournament> = (1..=5).flat_map(labelled_tournaments).collect();
    let exhaustive = instances.len();
    instances.extend((0..500u64).map(|i| {
        let n = 6 + (i % 7) as usize;
        let eps = [0.1, 0.25, 0.5][(i / 7 % 3) as usize];
        gen_eps_random(n, eps, rng::derive_seed(SEED, "c1", i)).unwrap()
    }));
    let results: Vec<(bool, usize, bool)> = instances
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let exact = exact_min_backward(t).unwrap();
            let (opt, orders) = optimal_orderings(t, CAP);
            let local = local_search_ordering(t, i as u64);
            let ok = exact.backward == opt
                && count_backward(t, &exact.order) == opt
                && opt <= brute_backward(t, &local)
                && orders
                    .iter()
                    .all(|o| brute_backward(t, o) == opt && check_prop21(t, o).passed());
            (ok, orders.len(), orders.len() == CAP)
        })
        .collect();
    let failed = results.iter().filter(|r| !r.0).count();
    let checked: usize = results.iter().map(|r| r.1).sum();
    let capped = results.iter().filter(|r| r.2).count();
    outcome(
        failed == 0,
        format!(
            "{exhaustive} exhaustive + 500 seeded instances, {checked} optimal orderings checked ({capped} capped at {CAP}), {failed} failures"
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (n, k, fas) in [(9, 1, true), (18, 1, true), (18, 2, true), (36, 4, false)] {
        let t = gen_cyclic_blowup(n, k, 0).unwrap();
        let part = n / (3 * k);
        let tri = count_directed_triangles(&t);
        pass &= tri == (k * part.pow(3)) as u64;
        let mut note = format!("({n},{k}) triangles {tri}/{}", k * part.pow(3));
        if fas {
            let b = exact_min_backward(&t).unwrap().backward;
            pass &= b == k * part * part;
            note += &format!(" fas {b}/{}", k * part * part);
        }
        notes.push(note);
    }
    outcome(pass, notes.join("; "))
}

#[derive(Serialize)]
struct TriangleRow {
    n: usize,
    eps: f64,
    seed: u64,
    triangles: u64,
    backward: usize,
    c_prime: String,
}

fn criterion_3_rows() -> Vec<TriangleRow> {
    let n = 1000;
    let jobs: Vec<(f64, u64)> = [0.05, 0.1, 0.2]
        .iter()
        .flat_map(|&e| (0..30).map(move |i| (e, rng::derive_seed(SEED, "c3", i))))
        .collect();
    jobs.par_iter()
        .map(|&(eps, seed)| {
            let t = gen_eps_random(n, eps, seed).unwrap();
            let order = local_search_ordering(&t, seed);
            let backward = brute_backward(&t, &order);
            let triangles = count_directed_triangles(&t);
            let a = backward as f64 / (n * n) as f64;
            TriangleRow {
                n,
                eps,
                seed,
                triangles,
                backward,
                c_prime: format!("{:.6}", triangles as f64 / (a * a * (n as f64).powi(3))),
            }
        })
        .collect()
}

fn criterion_3(rows: &[TriangleRow]) -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for eps in [0.05, 0.1, 0.2] {
        let group: Vec<&TriangleRow> = rows.iter().filter(|r| r.eps == eps).collect();
        let mean = group.iter().map(|r| r.triangles as f64).sum::<f64>() / group.len() as f64;
        let n = 1000f64;
        let expected = n * (n - 1.0) * (n - 2.0) / 6.0 * eps * (1.0 - eps);
        let rel = (mean - expected).abs() / expected;
        let min_c = group
            .iter()
            .map(|r| r.c_prime.parse::<f64>().unwrap())
            .fold(f64::INFINITY, f64::min);
        pass &= group.len() == 30 && rel <= 0.10 && min_c > 1.0;
        notes.push(format!("eps={eps}: rel err {rel:.4}, min c' {min_c:.3}"));
    }
    outcome(pass, notes.join("; "))
}

fn criterion_4() -> Outcome {
    let sweep = family_sweep(200, SEED);
    let mut used = 0;
    let (mut long, mut dense, mut vacuous, mut failed) = (0, 0, 0, 0);
    let mut families = std::collections::BTreeSet::new();
    for (name, t) in &sweep {
        if used == 100 {
            break;
        }
        let order = local_search_ordering(t, SEED);
        let a = analyze_ordering(t, &order).unwrap();
        let b = brute_backward(t, &order);
        if b == 0 {
            // alpha >= eps > 0 cannot hold.
            vacuous += 1;
            continue;
        }
        used += 1;
        families.insert(name.split('#').next().unwrap().to_string());
        let n = t.n();
        let eps = Density::new(b as u64, (n * n) as u64);
        let ok = match long_or_boost(t, &a, eps).unwrap().outcome {
            Dichotomy::LongEdges { .. } => {
                long += 1;
                let min_len = n.div_ceil(16);
                let long_count = (0..n)
                    .flat_map(|i| (i + min_len..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| t.beats(order[j], order[i]))
                    .count();
                4 * long_count >= b
            }
            Dichotomy::DenseWindow { start, width, .. } => {
                dense += 1;
                let w = brute_backward(t, &order[start..start + width]);
                width >= n / 8
                    && Density::from_integer(w as u64) >= eps * 2 * (width * width) as u64
            }
            Dichotomy::NoCertificate { .. } => false,
        };
        failed += !ok as usize;
    }
    outcome(
        used == 100 && failed == 0,
        format!(
            "{used} instances from {} families ({long} long-edges, {dense} dense-window), {failed} failures; {vacuous} transitive instances skipped",
            families.len()
        ),
    )
}

#[derive(Serialize)]
struct PlantedRow {
    seed: u64,
    regenerated: usize,
    backward: usize,
    long: usize,
    rich: usize,
    min_triangles: usize,
}

fn criterion_5_rows() -> Vec<Result<PlantedRow, String>> {
    let (n, m, len) = (2048, 60, 128);
    (0..20u64)
        .into_par_iter()
        .map(|i| {
            for attempt in 0..20 {
                let seed = rng::derive_seed(SEED, &format!("c5-{i}"), attempt);
                let t = gen_planted_long(n, m, len, seed).unwrap();
                let order = local_search_ordering(&t, seed);
                let b = brute_backward(&t, &order);
                let long: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + n.div_ceil(16)..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| t.beats(order[j], order[i]))
                    .map(|(i, j)| (order[j], order[i]))
                    .collect();
                if (b as u64) << 16 > (n * n) as u64 || 4 * long.len() < b {
                    continue;
                }
                let a = analyze_ordering(&t, &order).unwrap();
                let set = extract_triangle_rich(&t, &a).map_err(|e| format!("seed {seed}: {e}"))?;
                let edges = set.directed_edges(&order);
                if !edges.iter().all(|e| long.contains(e)) {
                    return Err(format!("seed {seed}: edge outside B'"));
                }
                let counts: Vec<usize> = edges
                    .iter()
                    .map(|&(u, v)| (0..n).filter(|&z| t.beats(v, z) && t.beats(z, u)).count())
                    .collect();
                return Ok(PlantedRow {
                    seed,
                    regenerated: attempt as usize,
                    backward: b,
                    long: long.len(),
                    rich: edges.len(),
                    min_triangles: counts.into_iter().min().unwrap_or(usize::MAX),
                });
            }
            Err(format!("instance {i}: preconditions never held"))
        })
        .collect()
}

fn criterion_5(rows: &[Result<PlantedRow, String>]) -> Outcome {
    let mut errors = Vec::new();
    let mut regenerated = 0;
    let mut min_t = usize::MAX;
    for r in rows {
        match r {
            Ok(r) => {
                regenerated += r.regenerated;
                min_t = min_t.min(r.min_triangles);
                if 2 * r.rich < r.long || r.min_triangles < 32 {
                    errors.push(format!(
                        "seed {}: |B''|={} |B'|={} min={}",
                        r.seed, r.rich, r.long, r.min_triangles
                    ));
                }
            }
            Err(e) => errors.push(e.clone()),
        }
    }
    let detail = if errors.is_empty() {
        format!("20 instances, {regenerated} regenerated, min triangles per edge {min_t} (need 32)")
    } else {
        errors.join("; ")
    };
    outcome(errors.is_empty(), detail)
}

fn criterion_6() -> Outcome {
    let sizes: Vec<Option<usize>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let t = gen_eps_random(1024, 0.5, rng::derive_seed(SEED, "c6", i)).unwrap();
            let set = erdos_moser(&t, &(0..1024).collect::<Vec<_>>());
            // Transitive iff the scores inside the set are all distinct.
            let mut scores: Vec<usize> = set
                .iter()
                .map(|&u| set.iter().filter(|&&v| t.beats(u, v)).count())
                .collect();
            scores.sort_unstable();
            let transitive = scores.iter().enumerate().all(|(i, &s)| i == s);
            (transitive && set.len() >= 11).then_some(set.len())
        })
        .collect();
    let ok = sizes.iter().flatten().count();
    let min = sizes.iter().flatten().min().copied().unwrap_or(0);
    outcome(
        ok == 100,
        format!("{ok}/100 transitive with size >= 11 (smallest {min})"),
    )
}

fn independent_dk_check(t: &Tournament, e: &DkEmbedding) -> bool {
    let k = e.k;
    let classes = [&e.u1, &e.u2, &e.u3];
    let mut all: Vec<usize> = classes.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    all.len() == 3 * k
        && classes.iter().all(|c| c.len() == k)
        && all.iter().all(|&v| v < t.n())
        && classes
            .iter()
            .all(|c| (0..k).all(|i| (i + 1..k).all(|j| t.beats(c[i], c[j]))))
        && (0..3).all(|x| {
            classes[x]
                .iter()
                .all(|&a| classes[(x + 1) % 3].iter().all(|&b| t.beats(a, b)))
        })
}

fn criterion_8() -> Outcome {
    let mut slow = 0;
    let mut missing = Vec::new();
    let mut worst = Duration::ZERO;
    for m in 1..=8 {
        let t = gen_dk(m).unwrap();
        for k in 1..=m {
            let start = Instant::now();
            let r = find_dk(&t, k, Density::new(1, 9), &PipelineConfig::default()).unwrap();
            let took = start.elapsed();
            worst = worst.max(took);
            slow += (took >= Duration::from_secs(10)) as usize;
            match &r.embedding {
                Some(e) => record(&t, e),
                None => missing.push(format!("m={m},k={k}")),
            }
        }
    }

    // Small random tournaments, with the search alone (no brute-force
    // fallback) retried under fresh seeds.
    let verdicts: Vec<(bool, u64, Option<Hit>)> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let n = 3 + (i as usize * 7) % 13;
            let k = 1 + i as usize % 3;
            let t = gen_eps_random(n, 0.5, rng::derive_seed(SEED, "c8", i)).unwrap();
            let truth = brute_force_contains_dk(&t, k).unwrap().is_some();
            for attempt in 0..50 {
                let mut cfg = PipelineConfig::default().with_seed(rng::derive_seed(
                    SEED,
                    &format!("c8-{i}"),
                    attempt,
                ));
                cfg.brute_force_fallback = false;
                if let Some(e) = find_dk(&t, k, Density::new(1, 9), &cfg).unwrap().embedding {
                    return (truth, attempt, Some((t, e)));
                }
            }
            (truth, 50, None)
        })
        .collect();
    let mut disagree = 0;
    let mut positives = 0;
    let mut retried = 0;
    for (truth, attempts, found) in verdicts {
        retried += (found.is_some() && attempts > 0) as usize;
        disagree += (truth != found.is_some()) as usize;
        positives += truth as usize;
        if let Some((t, e)) = found {
            record(&t, &e);
        }
    }
    outcome(
        missing.is_empty() && slow == 0 && disagree == 0,
        format!(
            "D_m: {} of 36 found, slowest {:.2}ms; small n: {disagree} disagreements on 200 ({positives} contain D_k, {retried} needed retries)",
            36 - missing.len(),
            worst.as_secs_f64() * 1e3
        ),
    )
}

#[derive(Serialize)]
struct NoiseRow {
    seed: u64,
    found: bool,
    route: String,
    fail_stage: String,
    backward: usize,
    trace_ok: bool,
}

fn criterion_9_rows() -> Vec<(NoiseRow, Duration)> {
    (0..20u64)
        .into_par_iter()
        .map(|i| {
            let seed = rng::derive_seed(SEED, "c9", i);
            let t = gen_eps_random(2000, 0.15, seed).unwrap();
            let cfg = PipelineConfig::default().with_seed(seed);
            let start = Instant::now();
            let r = find_dk(&t, 3, Density::new(3, 20), &cfg).unwrap();
            let took = start.elapsed();
            let trace_ok = match (&r.embedding, &r.trace) {
                (Some(e), Some(trace)) => {
                    record(&t, e);
                    verify_trace(&t, trace).unwrap().is_none()
                }
                (Some(e), None) => {
                    record(&t, e);
                    false
                }
                (None, _) => true,
            };
            let row = NoiseRow {
                seed,
                found: r.found(),
                route: r.route.map(|x| format!("{x:?}")).unwrap_or_default(),
                fail_stage: r.fail_stage.map(|s| s.to_string()).unwrap_or_default(),
                backward: r.levels[0].backward,
                trace_ok,
            };
            (row, took)
        })
        .collect()
}

fn criterion_9(rows: &[(NoiseRow, Duration)]) -> Outcome {
    let found = rows.iter().filter(|(r, _)| r.found).count();
    let bad_traces = rows.iter().filter(|(r, _)| !r.trace_ok).count();
    let worst = rows.iter().map(|(_, d)| *d).max().unwrap_or_default();
    outcome(
        found * 10 >= rows.len() * 9 && bad_traces == 0 && worst < Duration::from_secs(60),
        format!(
            "{found}/20 found, {bad_traces} unverified traces, slowest {:.2}s",
            worst.as_secs_f64()
        ),
    )
}

fn main() {
    let mut results: Vec<(usize, Outcome, Duration, Duration)> = Vec::new();
    let mut run = |id: usize, limit: u64, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        results.push((id, o, start.elapsed(), Duration::from_secs(limit)));
    };

    run(1, 120, &mut criterion_1);
    run(2, 60, &mut criterion_2);
    let mut rows3 = Vec::new();
    run(3, 300, &mut || {
        rows3 = criterion_3_rows();
        criterion_3(&rows3)
    });
    run(4, 120, &mut criterion_4);
    let mut rows5 = Vec::new();
    run(5, 180, &mut || {
        rows5 = criterion_5_rows();
        criterion_5(&rows5)
    });
    run(6, 60, &mut criterion_6);
    run(8, u64::MAX / 4, &mut criterion_8);
    let mut rows9 = Vec::new();
    run(9, u64::MAX / 4, &mut || {
        rows9 = criterion_9_rows();
        criterion_9(&rows9)
    });
    run(10, u64::MAX / 4, &mut || {
        let csv5 = |rows: &[Result<PlantedRow, String>]| {
            to_csv(
                &rows
                    .iter()
                    .filter_map(|r| r.as_ref().ok())
                    .collect::<Vec<_>>(),
            )
        };
        let csv9 = |rows: &[(NoiseRow, Duration)]| {
            to_csv(&rows.iter().map(|(r, _)| r).collect::<Vec<_>>())
        };
        let same = [
            to_csv(&rows3) == to_csv(&criterion_3_rows()),
            csv5(&rows5) == csv5(&criterion_5_rows()),
            csv9(&rows9) == csv9(&criterion_9_rows()),
        ];
        let sizes = [to_csv(&rows3).len(), csv5(&rows5).len(), csv9(&rows9).len()];
        outcome(
            same.iter().all(|&s| s),
            format!("identical reruns {same:?}, csv bytes {sizes:?}"),
        )
    });
    run(7, u64::MAX / 4, &mut || {
        let found = FOUND.lock().unwrap();
        let bad = found
            .iter()
            .filter(|(t, e)| !(check_dk_embedding(t, e).unwrap() && independent_dk_check(t, e)))
            .count();
        outcome(
            !found.is_empty() && bad == 0,
            format!("{} embeddings checked, {bad} invalid", found.len()),
        )
    });

    results.sort_by_key(|r| r.0);
    let mut failures = 0;
    for (id, o, took, limit) in &results {
        let in_time = took < limit;
        let pass = o.pass && in_time;
        failures += !pass as usize;
        let time = if in_time {
            String::new()
        } else {
            format!(" (over time limit {}s)", limit.as_secs())
        };
        println!(
            "criterion {id:>2}: {} [{:.1}s] {}{time}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    }
    if failures > 0 {
        eprintln!("{failures} criteria failed");
        std::process::exit(1);
    }
}
