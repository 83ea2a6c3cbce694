//! Verification suites. Every instance reports the inequality it checked
//! with both sides, as one JSON line; a summary line closes the output.

use std::fs;
use std::io::Write;

use serde::Serialize;
use tourney_core::density::{to_f64, Density};
use tourney_core::dk::find_dk_violation;
use tourney_core::embed::{verify_trace, EmbeddingTrace, FindDkReport};
use tourney_core::generate::{gen_eps_random, gen_planted_long, Family, GeneratorSpec};
use tourney_core::ordering::{
    analyze_ordering, check_prop21, count_backward_in_window, exact_min_backward,
    local_search_ordering, long_or_boost, Dichotomy, EXACT_MAX_N,
};
use tourney_core::triads::{count_directed_triangles, extract_triangle_rich};
use tourney_core::{rng, DkEmbedding, Error, Tournament};

use crate::args::{Suite, VerifyArgs};
use crate::commands::{density_arg, read_tournament};
use crate::error::{CliError, CliResult, EXIT_NEGATIVE, EXIT_OK};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub instance: String,
    /// `None` when the instance does not meet the suite's hypotheses.
    pub pass: Option<bool>,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub suite: &'static str,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(suite: &'static str, checks: &[Check]) -> Self {
        Summary {
            suite,
            instances: checks.len(),
            passed: checks.iter().filter(|c| c.pass == Some(true)).count(),
            failed: checks.iter().filter(|c| c.pass == Some(false)).count(),
            skipped: checks.iter().filter(|c| c.pass.is_none()).count(),
        }
    }
}

fn check(
    suite: &'static str,
    instance: String,
    pass: Option<bool>,
    relation: &str,
    lhs: impl ToString,
    rhs: impl ToString,
) -> Check {
    Check {
        suite,
        instance,
        pass,
        relation: relation.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        note: None,
    }
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let (name, checks) = match args.suite {
        Suite::Prop21 => ("prop21", prop21_suite(args)?),
        Suite::Lemma22 => ("lemma22", lemma22_suite(args)?),
        Suite::Lemma31 => ("lemma31", lemma31_suite(args)?),
        Suite::Thm21 => ("thm21", thm21_suite(args)?),
        Suite::Embedding => ("embedding", embedding_suite(args)?),
    };
    let summary = Summary::of(name, &checks);
    let mut text = String::new();
    for c in &checks {
        text.push_str(&serde_json::to_string(c).expect("serializable"));
        text.push('\n');
    }
    text.push_str(&serde_json::to_string(&summary).expect("serializable"));
    text.push('\n');
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    Ok(if summary.failed == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn inputs(args: &VerifyArgs) -> CliResult<Vec<(String, Tournament)>> {
    args.input
        .iter()
        .map(|p| Ok((p.display().to_string(), read_tournament(p)?)))
        .collect()
}

/// All labelled tournaments on `n` vertices.
pub fn all_tournaments(n: usize) -> Vec<Tournament> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs)
        .map(|mask| {
            let mut bit = 0;
            Tournament::from_fn(n, |_, _| {
                let b = mask >> bit & 1 == 1;
                bit += 1;
                b
            })
        })
        .collect()
}

/// Degree conditions on an optimal ordering (exact when `n` allows it,
/// local search otherwise).
pub fn prop21_check(name: String, t: &Tournament, seed: u64) -> Check {
    let (order, how) = if t.n() <= EXACT_MAX_N {
        (exact_min_backward(t).expect("within limit").order, "exact")
    } else {
        (local_search_ordering(t, seed), "local-search")
    };
    let r = check_prop21(t, &order);
    let mut c = check(
        "prop21",
        name,
        Some(r.passed()),
        "violations ==",
        r.violation_count,
        0,
    );
    c.note = Some(format!("{how} ordering, {} pairs", r.pairs_checked));
    c
}

fn prop21_suite(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    if !args.input.is_empty() {
        return Ok(inputs(args)?
            .into_iter()
            .map(|(n, t)| prop21_check(n, &t, args.seed))
            .collect());
    }
    if args.max_n > 6 {
        return Err(CliError::Usage(
            "exhaustive sweep supports --max-n up to 6".into(),
        ));
    }
    let mut checks = Vec::new();
    for n in 1..=args.max_n {
        for (i, t) in all_tournaments(n).iter().enumerate() {
            checks.push(prop21_check(format!("n={n}#{i}"), t, args.seed));
        }
    }
    Ok(checks)
}

/// Recounts the dichotomy certificate for `t` at farness `eps`, taking
/// `eps = alpha` of the ordering when `eps` is `None`.
pub fn lemma22_check(name: String, t: &Tournament, eps: Option<Density>, seed: u64) -> Check {
    let order = local_search_ordering(t, seed);
    let a = analyze_ordering(t, &order).expect("permutation");
    let eps = eps.unwrap_or_else(|| a.alpha());
    if *eps.numer() == 0 {
        let mut c = check("lemma22", name, None, "alpha >= eps > 0", a.alpha(), eps);
        c.note = Some("no backward edges; hypothesis alpha >= eps > 0 fails".into());
        return c;
    }
    let r = long_or_boost(t, &a, eps).expect("analysis matches");
    match r.outcome {
        Dichotomy::LongEdges { .. } => {
            let (n, min_len) = (t.n(), t.n().div_ceil(16));
            let (mut b, mut long) = (0, 0);
            for i in 0..n {
                for j in i + 1..n {
                    if t.beats(order[j], order[i]) {
                        b += 1;
                        long += (j - i >= min_len) as usize;
                    }
                }
            }
            let mut c = check(
                "lemma22",
                name,
                Some(4 * long >= b),
                "4|B'| >= |B|",
                4 * long,
                b,
            );
            c.note = Some(format!("long-edges, eps={eps}"));
            c
        }
        Dichotomy::DenseWindow { start, width, .. } => {
            let count = count_backward_in_window(t, &order, start, width);
            let brute = (start..start + width)
                .flat_map(|i| (i + 1..start + width).map(move |j| (i, j)))
                .filter(|&(i, j)| t.beats(order[j], order[i]))
                .count();
            let need = eps * 2 * (width * width) as u64;
            let ok =
                brute == count && width >= t.n() / 8 && Density::from_integer(brute as u64) >= need;
            let mut c = check(
                "lemma22",
                name,
                Some(ok),
                "window backward >= 2 eps w^2",
                brute,
                need,
            );
            c.note = Some(format!(
                "dense-window start={start} width={width}, eps={eps}"
            ));
            c
        }
        Dichotomy::NoCertificate { reason } => {
            // A certificate is promised for n >= 16, alpha >= eps and a
            // locally optimal ordering.
            let promised = t.n() >= 16 && a.alpha() >= eps && check_prop21(t, &order).passed();
            let pass = if promised { Some(false) } else { None };
            let mut c = check("lemma22", name, pass, "certificate", "none", "required");
            c.note = Some(reason);
            c
        }
    }
}

fn family_instance(family: Family, i: usize, seed: u64) -> GeneratorSpec {
    let s = rng::derive_seed(seed, "verify-instance", i as u64);
    let mut g = GeneratorSpec::new(family);
    g.seed = s;
    match family {
        Family::Transitive => g.n = Some(16 + i % 48),
        Family::Dk => g.k = Some(1 + i % 8),
        Family::CyclicBlowup => {
            // Many small copies leave only short backward edges.
            let k = [1, 2, 4, 8, 16][i % 5];
            g.k = Some(k);
            g.n = Some(3 * k * (2 + i % 3));
        }
        Family::EpsRandom => {
            g.n = Some(32 + 16 * (i % 8));
            g.eps = Some([0.05, 0.1, 0.2, 0.3][i % 4]);
        }
        Family::PlantedLong => {
            g.n = Some(64 + 32 * (i % 4));
            g.m = Some(4 + i % 12);
            g.min_length = Some(8);
        }
    }
    g
}

/// `count` instances cycling through every generator family.
pub fn family_sweep(count: usize, seed: u64) -> Vec<(String, Tournament)> {
    (0..count)
        .map(|i| {
            let spec = family_instance(
                Family::ALL[i % Family::ALL.len()],
                i / Family::ALL.len(),
                seed,
            );
            let t = spec.generate().expect("valid sweep spec");
            (format!("{}#{i}", spec.family), t)
        })
        .collect()
}

fn lemma22_suite(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let eps = args.eps.first().map(|s| density_arg(s)).transpose()?;
    let items = if args.input.is_empty() {
        family_sweep(args.count, args.seed)
    } else {
        inputs(args)?
    };
    Ok(items
        .into_iter()
        .map(|(n, t)| lemma22_check(n, &t, eps, args.seed))
        .collect())
}

/// Extraction of triangle-rich edges with every count recomputed from the
/// adjacency matrix.
pub fn lemma31_check(name: String, t: &Tournament, seed: u64) -> Check {
    let n = t.n();
    let order = local_search_ordering(t, seed);
    let a = analyze_ordering(t, &order).expect("permutation");
    match extract_triangle_rich(t, &a) {
        Ok(set) => {
            let recount: Vec<usize> = set
                .directed_edges(&order)
                .iter()
                .map(|&(u, v)| (0..n).filter(|&z| t.beats(v, z) && t.beats(z, u)).count())
                .collect();
            let min = recount.iter().copied().min().unwrap_or(usize::MAX);
            let ok = recount == set.per_edge_count
                && 2 * set.edges.len() >= set.long_count
                && min >= n / 64;
            let mut c = check(
                "lemma31",
                name,
                Some(ok),
                "2|B''| >= |B'| and min triangles >= n/64",
                format!(
                    "{} / {}",
                    2 * set.edges.len(),
                    if min == usize::MAX { 0 } else { min }
                ),
                format!("{} / {}", set.long_count, n / 64),
            );
            c.note = Some(format!("alpha={}, |B''|={}", a.alpha(), set.edges.len()));
            c
        }
        Err(Error::HypothesisViolated(why)) => {
            let mut c = check("lemma31", name, None, "hypotheses", "violated", "required");
            c.note = Some(why);
            c
        }
        Err(e) => {
            let mut c = check("lemma31", name, Some(false), "extraction", "error", "ok");
            c.note = Some(e.to_string());
            c
        }
    }
}

fn lemma31_suite(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    if !args.input.is_empty() {
        return Ok(inputs(args)?
            .into_iter()
            .map(|(n, t)| lemma31_check(n, &t, args.seed))
            .collect());
    }
    let (n, m, len) = (
        args.n.unwrap_or(2048),
        args.m.unwrap_or(60),
        args.min_length.unwrap_or(128),
    );
    let mut checks = Vec::new();
    for i in 0..args.count {
        let s = rng::derive_seed(args.seed, "planted", i as u64);
        let t = gen_planted_long(n, m, len, s)?;
        checks.push(lemma31_check(
            format!("planted-long n={n} m={m} seed={s}"),
            &t,
            args.seed,
        ));
    }
    Ok(checks)
}

/// `triangles >= c alpha^2 n^3` with `alpha` the local-search backward
/// density.
pub fn thm21_check(name: String, t: &Tournament, c: f64, seed: u64) -> Check {
    let n = t.n();
    let order = local_search_ordering(t, seed);
    let a = analyze_ordering(t, &order).expect("permutation");
    let triangles = count_directed_triangles(t);
    if a.backward.is_empty() {
        let mut ch = check("thm21", name, None, "alpha > 0", 0, 0);
        ch.note = Some("transitive".into());
        return ch;
    }
    let alpha = to_f64(a.alpha());
    let rhs = c * alpha * alpha * (n as f64).powi(3);
    let mut ch = check(
        "thm21",
        name,
        Some(triangles as f64 >= rhs),
        "triangles >= c alpha^2 n^3",
        triangles,
        format!("{rhs:.1}"),
    );
    ch.note = Some(format!(
        "alpha={alpha:.6}, c'={:.4}",
        triangles as f64 / (alpha * alpha * (n as f64).powi(3))
    ));
    ch
}

fn thm21_suite(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    if !args.input.is_empty() {
        return Ok(inputs(args)?
            .into_iter()
            .map(|(n, t)| thm21_check(n, &t, args.c, args.seed))
            .collect());
    }
    let n = args.n.unwrap_or(1000);
    let eps: Vec<f64> = if args.eps.is_empty() {
        vec![0.05, 0.1, 0.2]
    } else {
        args.eps
            .iter()
            .map(|s| density_arg(s).map(to_f64))
            .collect::<CliResult<_>>()?
    };
    let mut checks = Vec::new();
    for &e in &eps {
        for i in 0..args.count {
            let s = rng::derive_seed(args.seed, "thm21", i as u64);
            let t = gen_eps_random(n, e, s)?;
            checks.push(thm21_check(
                format!("eps-random n={n} eps={e} seed={s}"),
                &t,
                args.c,
                args.seed,
            ));
        }
    }
    Ok(checks)
}

fn embedding_suite(args: &VerifyArgs) -> CliResult<Vec<Check>> {
    let (Some(trace_path), [input]) = (&args.trace, args.input.as_slice()) else {
        return Err(CliError::Usage(
            "embedding suite needs --trace and exactly one --input".into(),
        ));
    };
    let t = read_tournament(input)?;
    let text = fs::read_to_string(trace_path).map_err(|e| CliError::io(trace_path, e))?;
    let name = trace_path.display().to_string();
    Ok(vec![embedding_check(name, &t, &text)?])
}

/// Accepts a find-dk report, a bare trace or a bare embedding.
pub fn embedding_check(name: String, t: &Tournament, json: &str) -> CliResult<Check> {
    let bad = |e: serde_json::Error| CliError::Usage(format!("unreadable trace: {e}"));
    let (emb, trace): (Option<DkEmbedding>, Option<EmbeddingTrace>) =
        if let Ok(r) = serde_json::from_str::<FindDkReport>(json) {
            (r.embedding, r.trace)
        } else if let Ok(tr) = serde_json::from_str::<EmbeddingTrace>(json) {
            (Some(tr.result.clone()), Some(tr))
        } else {
            (
                Some(serde_json::from_str::<DkEmbedding>(json).map_err(bad)?),
                None,
            )
        };
    let Some(emb) = emb else {
        let mut c = check(
            "embedding",
            name,
            Some(false),
            "embedding present",
            "none",
            "required",
        );
        c.note = Some("report holds no embedding".into());
        return Ok(c);
    };
    if let Some(tr) = &trace {
        if tr.result != emb {
            let mut c = check(
                "embedding",
                name,
                Some(false),
                "trace result == embedding",
                "differs",
                "equal",
            );
            c.note = Some("trace and embedding disagree".into());
            return Ok(c);
        }
        if let Some(v) = verify_trace(t, tr)? {
            let mut c = check(
                "embedding",
                name,
                Some(false),
                "trace invariants",
                v.clause,
                "hold",
            );
            c.note = Some(v.detail);
            return Ok(c);
        }
    }
    Ok(match find_dk_violation(t, &emb)? {
        Some(v) => {
            let mut c = check(
                "embedding",
                name,
                Some(false),
                "D_k clauses",
                v.clause(),
                "hold",
            );
            c.note = Some(v.to_string());
            c
        }
        None => check("embedding", name, Some(true), "D_k clauses", "hold", "hold"),
    })
}
