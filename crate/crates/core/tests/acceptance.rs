//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Lines go straight to stderr so they survive the test harness's capture.

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use listcolour::analytic::{bounds_f0, g, g_sample, phi, w, FModel, H};
use listcolour::colouring::{
    block_colouring, choosable, free_forbidden_colouring, greedy_degenerate_colouring, random_lists, validate,
    BlockOrder, BlockParams, Choosability, Colouring, ListAssignment, Tag,
};
use listcolour::cover::{
    cover_to_preference, h_exact, matching_count, optimize_cover, preference_to_cover, OptimizeParams,
    DEFAULT_MATCHING_BUDGET,
};
use listcolour::hypergraph::{
    check_d, check_i, degeneracy_bound, edge_limit, gen_gnrp, gen_latin, gen_matching_union, simplify_regular,
    threshold_d, CheckMode, CheckParams, Hypergraph, Verdict, VertexSubset,
};
use listcolour::preference::{f_exact, NamedOrder, PreferenceOrder};
use listcolour::rational::{self, ratio, Rational};

/// Collects named checks and reports them as one criterion.
struct Criterion {
    number: u32,
    title: &'static str,
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(number: u32, title: &'static str) -> Self {
        Self { number, title, start: Instant::now(), failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    fn within(&mut self, limit: Duration) {
        let spent = self.start.elapsed();
        self.check(spent < limit, || format!("took {spent:.2?}, limit {limit:?}"));
    }

    fn finish(self) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} criterion {:>2}: {} [{:.2?}]",
            self.number,
            self.title,
            self.start.elapsed()
        );
        if !self.notes.is_empty() {
            line.push_str(&format!(" ({})", self.notes.join("; ")));
        }
        for f in self.failures.iter().take(10) {
            line.push_str(&format!("\n    - {f}"));
        }
        let _ = writeln!(std::io::stderr(), "{line}");
        assert!(self.failures.is_empty(), "criterion {} failed", self.number);
    }
}

fn q(num: i64, den: i64) -> Rational {
    ratio(num, den)
}

fn random_order(r: usize, m: usize, rng: &mut ChaCha8Rng) -> PreferenceOrder {
    let orders = (0..r)
        .map(|_| {
            let mut o: Vec<u32> = (0..m as u32).collect();
            o.shuffle(rng);
            o
        })
        .collect();
    PreferenceOrder::new(orders).unwrap()
}

#[test]
fn criterion_01_closed_forms() {
    let mut c = Criterion::new(1, "phi(3) and w(3, phi(3))");
    let p = phi(3).unwrap();
    let peak = w(3, p).unwrap();
    c.check((p - 0.070906).abs() < 1e-5, || format!("phi(3) = {p}"));
    c.check((peak - 0.026227).abs() < 1e-5, || format!("w(3, phi(3)) = {peak}"));
    c.note(format!("phi(3)={p:.7}, w={peak:.7}"));
    c.within(Duration::from_secs(1));
    c.finish();
}

#[test]
fn criterion_02_g_identities() {
    let mut c = Criterion::new(2, "g identities");
    let f2 = FModel::exact(2).unwrap();
    let f3 = FModel::exact(3).unwrap();
    for i in 0..50 {
        let a2 = i as f64 / 49.0;
        let a3 = 2.0 * i as f64 / 49.0;
        let v2 = g(a2, &f2).unwrap();
        let v3 = g(a3, &f3).unwrap();
        c.check((v2 - 1.0).abs() < 1e-9, || format!("g(2, {a2}) = {v2}"));
        c.check((v3 - 0.5).abs() < 1e-9, || format!("g(3, {a3}) = {v3}"));
    }
    for r in 2..=8usize {
        let model = if r <= 3 { FModel::exact(r).unwrap() } else { FModel::lower_h(r).unwrap() };
        let v = g(r as f64 - 1.0, &model).unwrap();
        c.check((v - 1.0 / (r as f64 - 1.0)).abs() < 1e-9, || format!("g({r}, {}) = {v}", r - 1));
    }
    // the three identities, with alpha = log_n d
    let mut worst: f64 = 0.0;
    for r in 2..=6usize {
        let model = if r <= 3 { FModel::exact(r).unwrap() } else { FModel::lower_h(r).unwrap() };
        for &(n, d) in &[(1000.0f64, 30.0f64), (1e4, 500.0), (1e6, 1e6), (50.0, 2500.0)] {
            let alpha = d.ln() / n.ln();
            if alpha > r as f64 - 1.0 {
                continue;
            }
            let s = g_sample(alpha, &model).unwrap();
            let beta = s.beta.unwrap();
            let f = model.eval(beta).unwrap();
            let log_r_d = d.ln() / (r as f64).ln();
            let residuals = [
                (f.powf(s.g) - 1.0 / r as f64).abs(),
                (f.powf(s.g * log_r_d) - 1.0 / d).abs(),
                (beta.powf(s.g * log_r_d) - 1.0 / n).abs(),
            ];
            for res in residuals {
                worst = worst.max(res);
                c.check(res < 1e-9, || format!("residual {res:e} at r={r}, n={n}, d={d}"));
            }
        }
    }
    c.note(format!("largest residual {worst:.1e}"));
    c.within(Duration::from_secs(1));
    c.finish();
}

#[test]
fn criterion_03_g_at_zero_lower_h() {
    let mut c = Criterion::new(3, "g(r, 0) under the lower-H model");
    let g4 = g(0.0, &FModel::lower_h(4).unwrap()).unwrap();
    c.check((g4 - 0.3807).abs() < 5e-4, || format!("g(4, 0) = {g4}"));
    c.note(format!("g(4,0)={g4:.6}"));
    for r in 4..=8usize {
        let v = g(0.0, &FModel::lower_h(r).unwrap()).unwrap();
        c.check(v > 1.0 / (r as f64 - 1.0), || format!("g({r}, 0) = {v} <= 1/{}", r - 1));
    }
    c.finish();
}

#[test]
fn criterion_04_enumeration_oracles() {
    let mut c = Criterion::new(4, "enumeration oracles and named orders");
    let zero = q(0, 1);
    for (m, want) in [(2, q(1, 2)), (3, q(2, 3)), (4, q(1, 2))] {
        let got = f_exact(2, &zero, m, u128::MAX).unwrap().value;
        c.check(got == want, || format!("f_exact(2, 0, {m}) = {}", rational::display(&got)));
    }
    for (n, want) in [(1, q(2, 9)), (2, q(1, 6))] {
        let got = h_exact(2, &zero, n, DEFAULT_MATCHING_BUDGET).unwrap().value;
        c.check(got == want, || format!("h_exact(2, 0, {n}) = {}", rational::display(&got)));
    }
    for m in [3usize, 6, 9, 12] {
        let mi = m as i64;
        let pa = PreferenceOrder::named(NamedOrder::Pa, 2, m).unwrap();
        let pb = PreferenceOrder::named(NamedOrder::Pb, 3, m).unwrap();
        let pc = PreferenceOrder::named(NamedOrder::Pc, 3, m).unwrap();
        let want_a = if m % 2 == 0 { q(1, 2) } else { q(1, 2) + q(1, 2 * mi) };
        let want_c = q(1, 9) + q(1, 3 * mi);
        for theta in [q(0, 1), q(1, 6), q(1, 3)] {
            let a = pa.f_value(&theta).unwrap().value;
            let b = pb.f_value(&theta).unwrap().value;
            let cc = pc.f_value(&theta).unwrap().value;
            let t = rational::display(&theta);
            c.check(a == want_a, || format!("f_Pa({t}) = {} at m={m}", rational::display(&a)));
            c.check(b == q(2, 9), || format!("f_Pb({t}) = {} at m={m}", rational::display(&b)));
            c.check(cc == want_c, || format!("f_Pc({t}) = {} at m={m}", rational::display(&cc)));
        }
        // the tuple sets themselves
        let p = mi / 3;
        let mut want_b = Vec::new();
        let mut want_pc = Vec::new();
        for i in 1..=p {
            let (x, y, z) = (q(i, mi), q(1, 3) + q(i, mi), q(2, 3) + q(i, mi));
            want_b.extend([vec![x.clone(), y.clone(), z.clone()], vec![y.clone(), z.clone(), x.clone()], vec![z, x, y]]);
            let (x, y, z) = (q(1, 3) + q(1, mi) - q(i, mi), q(1, 3) + q(i, mi), q(2, 3) + q(i, mi));
            want_pc.extend([vec![x.clone(), y.clone(), z.clone()], vec![y.clone(), z.clone(), x.clone()], vec![z, x, y]]);
        }
        let tuples = |o: &PreferenceOrder| {
            let mut t: Vec<Vec<Rational>> = o.tuples().iter().map(|t| t.coords()).collect();
            t.sort();
            t
        };
        want_b.sort();
        want_pc.sort();
        c.check(tuples(&pb) == want_b, || format!("P_b tuples differ at m={m}"));
        c.check(tuples(&pc) == want_pc, || format!("P_c tuples differ at m={m}"));
        let want_pa: Vec<Vec<Rational>> = {
            let mut t: Vec<Vec<Rational>> = (1..=mi).map(|k| vec![q(k, mi), q(1, 1) + q(1, mi) - q(k, mi)]).collect();
            t.sort();
            t
        };
        c.check(tuples(&pa) == want_pa, || format!("P_a tuples differ at m={m}"));
    }
    c.within(Duration::from_secs(10));
    c.finish();
}

/// The large optimizer run, shared with the bracketing criterion.
fn large_cover_h() -> (f64, Duration) {
    static RESULT: OnceLock<(f64, Duration)> = OnceLock::new();
    *RESULT.get_or_init(|| {
        let start = Instant::now();
        let theta = rational::from_f64_rounded(phi(3).unwrap(), 1_000_000).unwrap();
        let params = OptimizeParams { restarts: 8, ..OptimizeParams::default() };
        let out = optimize_cover(3, &theta, 2000, &params).unwrap();
        (rational::to_f64(&out.score.hmax), start.elapsed())
    })
}

#[test]
fn criterion_05_optimizer_against_oracle() {
    let mut c = Criterion::new(5, "optimizer against exhaustive h");
    let mut cases = 0;
    for r in 1..=6usize {
        for n in 1..=8usize {
            match matching_count(r, n) {
                Some(count) if count <= 100_000 => {}
                _ => break,
            }
            let top = r as i64 + 1;
            for theta in [q(0, 1), q(1, 2 * top), q(1, 3 * top + 1)] {
                let exact = h_exact(r, &theta, n, DEFAULT_MATCHING_BUDGET).unwrap().value;
                for seed in 0..20 {
                    let params = OptimizeParams { seed, ..OptimizeParams::default() };
                    let got = optimize_cover(r, &theta, n, &params).unwrap().score.hmax;
                    cases += 1;
                    c.check(got == exact, || {
                        format!(
                            "r={r} n={n} theta={} seed={seed}: {} vs {}",
                            rational::display(&theta),
                            rational::display(&got),
                            rational::display(&exact)
                        )
                    });
                }
            }
        }
    }
    let (h, spent) = large_cover_h();
    let floor = w(3, phi(3).unwrap()).unwrap();
    c.check(h <= 0.02630, || format!("h = {h} at n=2000"));
    c.check(h >= floor - 1e-9, || format!("h = {h} below w(3, phi(3)) = {floor}"));
    c.check(spent < Duration::from_secs(120), || format!("n=2000 run took {spent:.1?}"));
    c.note(format!("{cases} oracle cases; n=2000 gives h={h:.6} in {spent:.1?}"));
    c.finish();
}

#[test]
fn criterion_06_conversion_bounds() {
    let mut c = Criterion::new(6, "conversions between orders and covers");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let thetas = [q(0, 1), q(1, 12), q(1, 6)];
    for i in 0..100 {
        let m = [6usize, 9, 12][i % 3];
        let theta = &thetas[(i / 3) % 3];
        let p = random_order(3, m, &mut rng);
        let out = preference_to_cover(&p, theta).unwrap();
        let slack = q(2 * 4, m as i64);
        c.check(out.cover.h() <= out.f_value.value.clone() + slack, || format!("order {i}: h exceeds f_P + slack"));
        let back = cover_to_preference(&out.cover).unwrap();
        let f = back.order.f_value(out.cover.theta()).unwrap().value;
        let slack_back = q(2 * 4, back.m as i64);
        c.check(f <= out.cover.h() + slack_back, || format!("order {i}: f_P' exceeds h + slack"));
    }
    c.finish();
}

#[test]
fn criterion_07_monotonicity() {
    let mut c = Criterion::new(7, "monotonicity");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..30 {
        let (r, m) = [(2usize, 5usize), (3, 6), (4, 4)][i % 3];
        let p = random_order(r, m, &mut rng);
        let steps = 4 * m as i64;
        let mut last: Option<Rational> = None;
        for k in 0..=steps {
            let theta = q(k, steps * r as i64);
            let v = p.f_value(&theta).unwrap().value;
            if let Some(prev) = &last {
                c.check(v <= *prev, || format!("f_P rises at theta={} (order {i})", rational::display(&theta)));
            }
            last = Some(v);
        }
    }
    for (r, m, theta) in [(2usize, 2usize, q(0, 1)), (2, 3, q(0, 1)), (2, 3, q(1, 4)), (3, 2, q(0, 1)), (3, 3, q(1, 6))] {
        let base = f_exact(r, &theta, m, u128::MAX).unwrap().value;
        let doubled = f_exact(r, &theta, 2 * m, u128::MAX).unwrap().value;
        c.check(doubled <= base, || format!("f_exact({r}, {}, {}) > f_exact at m={m}", rational::display(&theta), 2 * m));
    }
    for (r, n, theta) in [(2usize, 1usize, q(0, 1)), (2, 2, q(1, 10)), (2, 3, q(1, 5)), (3, 1, q(0, 1)), (3, 2, q(1, 8))] {
        let base = h_exact(r, &theta, n, DEFAULT_MATCHING_BUDGET).unwrap().value;
        let doubled = h_exact(r, &theta, 2 * n, DEFAULT_MATCHING_BUDGET).unwrap().value;
        c.check(doubled <= base, || format!("h_exact({r}, {}, {}) > h_exact at n={n}", rational::display(&theta), 2 * n));
    }
    for r in 2..=6usize {
        let peak = phi(r).unwrap();
        let top = 1.0 / (r as f64 + 1.0);
        let grid: Vec<f64> = (0..).map(|i| i as f64 * 1e-3).take_while(|&t| t < top).collect();
        let values: Vec<f64> = grid.iter().map(|&t| w(r, t).unwrap()).collect();
        let argmax = (0..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
        c.check((grid[argmax] - peak).abs() <= 1e-3, || format!("w({r}, .) peaks at {} not {peak}", grid[argmax]));
        let rising = values[..=argmax].windows(2).all(|p| p[0] <= p[1]);
        let falling = values[argmax..].windows(2).all(|p| p[0] >= p[1]);
        c.check(rising && falling, || format!("w({r}, .) is not unimodal"));
        // H is flat up to phi and follows w after it
        let flat = H(r, peak / 2.0).unwrap();
        c.check((flat - H(r, peak).unwrap()).abs() < 1e-12, || format!("H({r}, .) not flat below phi"));
        let beyond = (peak + top) / 2.0;
        if beyond < top && beyond > peak {
            c.check(H(r, beyond).unwrap() == w(r, beyond).unwrap(), || format!("H({r}, .) leaves w after phi"));
        }
    }
    c.finish();
}

#[test]
fn criterion_08_colouring() {
    let mut c = Criterion::new(8, "greedy, block and free/forbidden colourings");

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut greedy_failures = 0;
    for i in 0..500u64 {
        let r = rng.gen_range(2..=4usize);
        let n = rng.gen_range(2..=[0, 0, 12, 7, 4][r]);
        let p = rng.gen_range(0.05..0.9);
        let g = if i % 5 == 0 {
            let d = rng.gen_range(1..=n.min(4));
            gen_matching_union(n, r, d, i).unwrap().graph
        } else {
            gen_gnrp(n, r, p, i).unwrap().graph
        };
        let k = g.degeneracy(None).k;
        let t = rng.gen_range(k + 1..=3 * (k + 1));
        let lists = random_lists(&g, k + 1, t, i).unwrap();
        match greedy_degenerate_colouring(&g, &lists, k).unwrap() {
            Ok(col) if validate(&g, &lists, &col).ok => {}
            _ => greedy_failures += 1,
        }
    }
    c.check(greedy_failures == 0, || format!("greedy failed on {greedy_failures} of 500 instances"));
    let greedy_time = start.elapsed();
    c.check(greedy_time < Duration::from_secs(60), || format!("greedy suite took {greedy_time:.1?}"));

    let start = Instant::now();
    let latin81 = gen_latin(81).unwrap().graph;
    let block_wins = (0..100u64)
        .filter(|&seed| {
            let lists = random_lists(&latin81, 45, 90, seed).unwrap();
            let params = BlockParams { order: BlockOrder::Named(NamedOrder::Pc), seed, ..BlockParams::default() };
            block_colouring(&latin81, &lists, &params).unwrap().success
        })
        .count();
    c.check(block_wins >= 95, || format!("block colouring succeeded on {block_wins} of 100 seeds"));
    let block_time = start.elapsed();
    c.check(block_time < Duration::from_secs(60), || format!("block suite took {block_time:.1?}"));

    let start = Instant::now();
    let latin27 = gen_latin(27).unwrap().graph;
    let free_wins = (0..100u64)
        .filter(|&seed| {
            let lists = random_lists(&latin27, 5, 15, seed).unwrap();
            free_forbidden_colouring(&latin27, &lists, seed, 10).unwrap().success
        })
        .count();
    c.check(free_wins >= 90, || format!("free/forbidden succeeded on {free_wins} of 100 seeds"));
    let free_time = start.elapsed();
    c.check(free_time < Duration::from_secs(60), || format!("free/forbidden suite took {free_time:.1?}"));

    c.note(format!(
        "greedy 500/500 in {greedy_time:.1?}; block {block_wins}/100 (ell=45, t=90) in {block_time:.1?}; \
         free/forbidden {free_wins}/100 (ell=5, t=15) in {free_time:.1?}"
    ));
    c.finish();
}

/// Whether any choice from the lists is a proper colouring, by full enumeration.
fn colourable_by_enumeration(g: &Hypergraph, lists: &ListAssignment) -> bool {
    let vertices = g.vertex_count();
    let mut index = vec![0usize; vertices];
    loop {
        let mut col = Colouring::blank(vertices);
        for v in 0..vertices {
            col.set(v, lists.list(v)[index[v]], Tag::Greedy);
        }
        if validate(g, lists, &col).ok {
            return true;
        }
        let mut v = 0;
        loop {
            if v == vertices {
                return false;
            }
            index[v] += 1;
            if index[v] < lists.ell() {
                break;
            }
            index[v] = 0;
            v += 1;
        }
    }
}

#[test]
fn criterion_09_choosability_oracle() {
    let mut c = Criterion::new(9, "choosability search against enumeration");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let shapes = [(2usize, 3usize, 3usize), (2, 4, 2), (2, 4, 4), (3, 2, 3), (3, 3, 2), (3, 3, 3), (4, 2, 4)];
    let mut negatives = 0;
    for i in 0..200u64 {
        let (r, n, ell) = shapes[i as usize % shapes.len()];
        let product = (ell as f64).powi((r * n) as i32);
        assert!(product <= 1e5);
        let p = rng.gen_range(0.3..1.0);
        let g = gen_gnrp(n, r, p, i).unwrap().graph;
        let t = rng.gen_range(ell..=2 * ell);
        let lists = random_lists(&g, ell, t, i).unwrap();
        let truth = colourable_by_enumeration(&g, &lists);
        negatives += usize::from(!truth);
        match choosable(&g, &lists, u64::MAX).unwrap() {
            Choosability::Choosable { witness } => {
                c.check(truth, || format!("instance {i}: search found a colouring enumeration missed"));
                c.check(validate(&g, &lists, &witness).ok, || format!("instance {i}: witness is not proper"));
            }
            Choosability::NotChoosable { .. } => c.check(!truth, || format!("instance {i}: search missed a colouring")),
            Choosability::Unknown { .. } => c.check(false, || format!("instance {i}: unknown without a budget")),
        }
    }
    let edge = Hypergraph::from_local(3, 1, &[vec![0, 0, 0]]).unwrap();
    let same = ListAssignment::new(1, vec![vec![0]; 3]).unwrap();
    let verdict = choosable(&edge, &same, u64::MAX).unwrap();
    c.check(matches!(verdict, Choosability::NotChoosable { .. }), || format!("single edge: {verdict:?}"));
    c.note(format!("{negatives} of 200 instances not colourable"));
    c.finish();
}

fn min_induced_degree(g: &Hypergraph, members: &[bool]) -> usize {
    let mut degree = vec![0usize; g.vertex_count()];
    for e in g.edges().filter(|e| e.iter().all(|&v| members[v as usize])) {
        for &v in e {
            degree[v as usize] += 1;
        }
    }
    (0..g.vertex_count()).filter(|&v| members[v]).map(|v| degree[v]).min().unwrap_or(0)
}

fn masks(g: &Hypergraph) -> impl Iterator<Item = Vec<bool>> + '_ {
    let total = g.vertex_count();
    (1u32..1 << total).map(move |mask| (0..total).map(|v| mask >> v & 1 == 1).collect())
}

#[test]
fn criterion_10_structure() {
    let mut c = Criterion::new(10, "generators, repair and property checks");

    for seed in 0..30u64 {
        for &(n, r, d) in &[(10usize, 2usize, 3usize), (50, 3, 5), (20, 4, 2), (7, 3, 7)] {
            let g = gen_matching_union(n, r, d, seed).unwrap().graph;
            c.check(g.regular_degree() == Some(d), || format!("matching union n={n} r={r} d={d} seed={seed} not regular"));
        }
    }

    let mut most_changed = 0;
    for seed in 0..20u64 {
        let g = gen_matching_union(2000, 3, 3, seed).unwrap().graph;
        match simplify_regular(&g, seed) {
            Ok(rep) => {
                c.check(rep.graph.butterflies().is_empty(), || format!("seed {seed}: butterflies remain"));
                c.check(rep.graph.degrees() == g.degrees(), || format!("seed {seed}: degrees changed"));
                c.check(rep.removed.len() as u64 <= rep.bound, || format!("seed {seed}: {} edges changed", rep.removed.len()));
                most_changed = most_changed.max(rep.removed.len());
            }
            Err(e) => c.check(false, || format!("seed {seed}: repair failed: {e}")),
        }
    }

    for (n, r) in [(3usize, 2usize), (3, 3), (4, 3), (2, 4)] {
        let g = gen_gnrp(n, r, 1.0, 0).unwrap().graph;
        let full = (n as f64).powi(r as i32 - 1);
        for seed in 0..3 {
            for mode in [CheckMode::Exhaustive, CheckMode::Sampled] {
                let params = CheckParams { mode, seed, ..CheckParams::default() };
                let vi = check_i(&g, full, &params).unwrap().verdict;
                c.check(vi == Verdict::Holds, || format!("complete n={n} r={r}: I gives {vi:?}"));
                if full > std::f64::consts::E {
                    let vd = check_d(&g, full, &params).unwrap().verdict;
                    c.check(vd == Verdict::Holds, || format!("complete n={n} r={r}: D gives {vd:?}"));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let exhaustive = CheckParams { mode: CheckMode::Exhaustive, ..CheckParams::default() };
    let mut violations = (0, 0);
    for i in 0..50u64 {
        let (r, n) = [(2usize, 8usize), (3, 5), (2, 6), (4, 4), (3, 4)][i as usize % 5];
        let mut g = gen_gnrp(n, r, rng.gen_range(0.1..0.9), i).unwrap().graph;
        if i % 2 == 1 {
            // thicken one edge so dense parts can exist
            let e: Vec<u32> = (0..r).map(|c| (c * n) as u32 + rng.gen_range(0..n as u32)).collect();
            for _ in 0..rng.gen_range(4..16) {
                g.push_edge(&e).unwrap();
            }
        }
        let full = (n as f64).powi(r as i32 - 1);
        let d = rng.gen_range(3.0..=full.max(3.0));
        for primed in [false, true] {
            let params = CheckParams { primed, ..exhaustive };
            let rep = check_i(&g, d, &params).unwrap();
            let limit = edge_limit(n, r, d, primed);
            let best = masks(&g)
                .filter(|m| g.induced_edge_count(m) <= limit)
                .map(|m| VertexSubset::from_members(r, n, &m).off_max_product())
                .fold(0.0, f64::max);
            c.check(rep.best_product == best, || format!("graph {i}: I best {} vs {best}", rep.best_product));
            c.check((rep.verdict == Verdict::Violated) == (best >= rep.threshold), || format!("graph {i}: I verdict"));
            violations.0 += usize::from(rep.verdict == Verdict::Violated);
        }
        if d > std::f64::consts::E {
            for primed in [false, true] {
                let rep = check_d(&g, d, &CheckParams { primed, ..exhaustive }).unwrap();
                let t = threshold_d(n, r, d);
                let k = degeneracy_bound(d, primed);
                let violated = t > 1.0
                    && masks(&g).any(|m| {
                        VertexSubset::from_members(r, n, &m).off_max_product() < t && min_induced_degree(&g, &m) as f64 > k
                    });
                c.check((rep.verdict == Verdict::Violated) == violated, || format!("graph {i}: D verdict (primed={primed})"));
                violations.1 += usize::from(violated);
            }
        }
    }
    c.note(format!(
        "repair changed at most {most_changed} edges; brute force saw {} I and {} D violations",
        violations.0, violations.1
    ));
    c.finish();
}

#[test]
fn criterion_11_bracketing() {
    let mut c = Criterion::new(11, "bounds on f(4, 0)");
    let (lower, upper) = bounds_f0(4).unwrap();
    c.check((lower - 0.02100).abs() < 1e-5, || format!("lower bound {lower}"));
    c.check(upper == 0.09375, || format!("upper bound {upper}"));
    c.check(lower <= 0.0262 && 0.0262 <= upper, || "0.0262 outside the bounds".into());
    let (h, _) = large_cover_h();
    c.check(lower <= h && h <= upper, || format!("optimizer estimate {h} outside the bounds"));
    c.note(format!("[{lower:.6}, {upper:.6}] holds {h:.6}"));
    c.finish();
}
