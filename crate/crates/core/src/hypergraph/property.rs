//! Checkers for the independence property `I` and the degeneracy property `D`.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{off_max_product, Hypergraph, VertexSubset};
use crate::error::{domain, resource, Result};
use crate::rng;

/// Largest `rn` enumerated exhaustively by [`check_i`].
pub const EXHAUSTIVE_I_CAP: usize = 24;
/// Largest `rn` enumerated exhaustively by [`check_d`].
pub const EXHAUSTIVE_D_CAP: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    I,
    D,
    #[serde(rename = "I'")]
    IPrime,
    #[serde(rename = "D'")]
    DPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    /// A sampled search found no violation.
    InconclusiveHolds,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub mode: CheckMode,
    /// Sampled trials per round; three rounds of growing effort are run.
    pub budget: usize,
    pub primed: bool,
    pub seed: u64,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self { mode: CheckMode::Sampled, budget: 64, primed: false, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub mode: CheckMode,
    pub verdict: Verdict,
    pub witness: Option<VertexSubset>,
    pub trials: usize,
    /// Largest product of the non-largest class sizes over the sets examined.
    pub best_product: f64,
    pub threshold: f64,
    /// Degeneracy bound (`D` only).
    pub k: Option<f64>,
    /// Number of edges a set may span (`I` only).
    pub edge_limit: Option<usize>,
    /// SHA-256 of the re-validated verdict data.
    pub recheck_hash: String,
    pub note: String,
}

/// Natural log threshold `n^(r-1) ln^2 d / d` of property `I`.
pub fn threshold_i(n: usize, r: usize, d: f64) -> f64 {
    (n as f64).powi(r as i32 - 1) * d.ln().powi(2) / d
}

/// Threshold `n^(r-1) / d` of property `D`.
pub fn threshold_d(n: usize, r: usize, d: f64) -> f64 {
    (n as f64).powi(r as i32 - 1) / d
}

/// Degeneracy bound `4 ln d / ln ln d`, minus one when primed.
pub fn degeneracy_bound(d: f64, primed: bool) -> f64 {
    4.0 * d.ln() / d.ln().ln() - if primed { 1.0 } else { 0.0 }
}

/// Edge allowance `n / (2 d^(1/(r-1)))` of the primed `I`, or 0.
pub fn edge_limit(n: usize, r: usize, d: f64, primed: bool) -> usize {
    if !primed {
        return 0;
    }
    let root = if r > 1 { d.powf(1.0 / (r - 1) as f64) } else { d };
    (n as f64 / (2.0 * root)).floor() as usize
}

fn max_d(g: &Hypergraph) -> f64 {
    (g.n() as f64).powi(g.r() as i32 - 1)
}

/// Checks that every set spanning at most the allowed number of edges has a
/// small product of non-largest class sizes.
pub fn check_i(g: &Hypergraph, d: f64, params: &CheckParams) -> Result<PropertyReport> {
    if !(1.0..=max_d(g)).contains(&d) {
        return Err(domain!("d={d} outside [1, n^(r-1)]"));
    }
    let threshold = threshold_i(g.n(), g.r(), d);
    let limit = edge_limit(g.n(), g.r(), d, params.primed);
    let property = if params.primed { Property::IPrime } else { Property::I };
    let (witness, best, trials, note) = match params.mode {
        CheckMode::Exhaustive => {
            if g.vertex_count() > EXHAUSTIVE_I_CAP {
                return Err(resource!("exhaustive I check needs rn <= {EXHAUSTIVE_I_CAP}"));
            }
            let (x, best) = largest_sparse_set(g, limit);
            let witness = (best >= threshold).then_some(x);
            (witness, best, 1, "exhaustive search over all vertex sets".to_string())
        }
        CheckMode::Sampled => {
            let complete = limit == 0 && g.edge_counts().len() as f64 == (g.n() as f64).powi(g.r() as i32);
            if complete && threshold > 0.0 && g.r() > 1 {
                (None, 0.0, 0, "complete graph: every independent set misses a class".to_string())
            } else {
                sample_i(g, limit, threshold, params)
            }
        }
    };
    finish(g, property, params.mode, witness, best, threshold, None, Some(limit), trials, note)
}

/// Checks that every set with a small product of non-largest class sizes is
/// `k`-degenerate.
pub fn check_d(g: &Hypergraph, d: f64, params: &CheckParams) -> Result<PropertyReport> {
    if !(d > std::f64::consts::E && d <= max_d(g)) {
        return Err(domain!("d={d} outside (e, n^(r-1)]"));
    }
    let threshold = threshold_d(g.n(), g.r(), d);
    let k = degeneracy_bound(d, params.primed);
    let property = if params.primed { Property::DPrime } else { Property::D };
    let (witness, best, trials, note) = if threshold <= 1.0 && g.r() > 1 {
        (None, 0.0, 0, "threshold at most 1: qualifying sets miss a class and span no edge".to_string())
    } else {
        match params.mode {
            CheckMode::Exhaustive => {
                if g.vertex_count() > EXHAUSTIVE_D_CAP {
                    return Err(resource!("exhaustive D check needs rn <= {EXHAUSTIVE_D_CAP}"));
                }
                let (witness, best) = dense_small_set(g, threshold, k);
                (witness, best, 1, "exhaustive search over all vertex sets".to_string())
            }
            CheckMode::Sampled => sample_d(g, threshold, k, params),
        }
    };
    finish(g, property, params.mode, witness, best, threshold, Some(k), None, trials, note)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    g: &Hypergraph,
    property: Property,
    mode: CheckMode,
    witness: Option<VertexSubset>,
    best_product: f64,
    threshold: f64,
    k: Option<f64>,
    edge_limit: Option<usize>,
    trials: usize,
    note: String,
) -> Result<PropertyReport> {
    let verdict = match (&witness, mode) {
        (Some(_), _) => Verdict::Violated,
        (None, CheckMode::Exhaustive) => Verdict::Holds,
        (None, CheckMode::Sampled) if trials == 0 => Verdict::Holds,
        (None, CheckMode::Sampled) => Verdict::InconclusiveHolds,
    };
    let mut report = PropertyReport {
        property,
        mode,
        verdict,
        witness,
        trials,
        best_product,
        threshold,
        k,
        edge_limit,
        recheck_hash: String::new(),
        note,
    };
    report.recheck_hash = recheck(g, &report)?;
    Ok(report)
}

/// Re-validates a report's witness from scratch and returns its hash.
pub fn recheck(g: &Hypergraph, report: &PropertyReport) -> Result<String> {
    let mut hasher = Sha256::new();
    hasher.update(format!("{:?}|{:?}|{}", report.property, report.verdict, report.threshold));
    if let Some(x) = &report.witness {
        if x.classes.len() != g.r() || x.classes.iter().flatten().any(|&j| j as usize >= g.n()) {
            return Err(crate::error::Error::Input("witness does not fit the graph".into()));
        }
        let members = x.members(g.n());
        let product = x.off_max_product();
        let spanned = g.induced_edge_count(&members);
        let ok = match report.property {
            Property::I | Property::IPrime => {
                spanned <= report.edge_limit.unwrap_or(0) && product >= report.threshold
            }
            Property::D | Property::DPrime => {
                let k = report.k.unwrap_or(f64::INFINITY);
                product < report.threshold && !x.is_empty() && min_degree(g, &members) as f64 > k
            }
        };
        if !ok {
            return Err(crate::error::Error::Precondition("witness does not re-check as a violation".into()));
        }
        hasher.update(serde_json::to_string(x).expect("serializable"));
        hasher.update(format!("|{product}|{spanned}"));
    }
    Ok(hex::encode(hasher.finalize()))
}

fn min_degree(g: &Hypergraph, members: &[bool]) -> usize {
    let mut deg = vec![0usize; g.vertex_count()];
    for e in g.edges() {
        if e.iter().all(|&v| members[v as usize]) {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
    }
    (0..g.vertex_count()).filter(|&v| members[v]).map(|v| deg[v]).min().unwrap_or(0)
}

/// Depth-first search for the set spanning at most `limit` edges with the
/// largest product; the first such set in include-first order is returned.
fn largest_sparse_set(g: &Hypergraph, limit: usize) -> (VertexSubset, f64) {
    struct Dfs<'a> {
        g: &'a Hypergraph,
        inc: Vec<Vec<usize>>,
        limit: usize,
        inside: Vec<bool>,
        sizes: Vec<usize>,
        left: Vec<usize>,
        spanned: usize,
        best: f64,
        best_set: Vec<bool>,
    }
    impl Dfs<'_> {
        fn go(&mut self, v: usize) {
            let bound: Vec<usize> = self.sizes.iter().zip(&self.left).map(|(a, b)| a + b).collect();
            if off_max_product(&bound) <= self.best && v > 0 {
                return;
            }
            if v == self.inside.len() {
                self.best = off_max_product(&self.sizes);
                self.best_set = self.inside.clone();
                return;
            }
            let class = self.g.class_of(v as u32);
            self.left[class] -= 1;
            let closed = self.inc[v]
                .iter()
                .filter(|&&e| self.g.edge(e).iter().all(|&w| w as usize == v || (w as usize) < v && self.inside[w as usize]))
                .count();
            if self.spanned + closed <= self.limit {
                self.inside[v] = true;
                self.sizes[class] += 1;
                self.spanned += closed;
                self.go(v + 1);
                self.spanned -= closed;
                self.sizes[class] -= 1;
                self.inside[v] = false;
            }
            self.go(v + 1);
            self.left[class] += 1;
        }
    }
    let mut dfs = Dfs {
        g,
        inc: g.incidence(),
        limit,
        inside: vec![false; g.vertex_count()],
        sizes: vec![0; g.r()],
        left: vec![g.n(); g.r()],
        spanned: 0,
        best: -1.0,
        best_set: vec![false; g.vertex_count()],
    };
    dfs.go(0);
    (VertexSubset::from_members(g.r(), g.n(), &dfs.best_set), dfs.best)
}

/// Smallest bitmask set with product below `threshold` and minimum degree
/// above `k`, together with the largest product below the threshold.
fn dense_small_set(g: &Hypergraph, threshold: f64, k: f64) -> (Option<VertexSubset>, f64) {
    let total = g.vertex_count();
    let edge_masks: Vec<u32> = g.edges().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let mut best = 0.0f64;
    let mut sizes = vec![0usize; g.r()];
    for mask in 1u32..(1u32 << total) {
        sizes.iter_mut().for_each(|s| *s = 0);
        for v in 0..total {
            if mask >> v & 1 == 1 {
                sizes[v / g.n()] += 1;
            }
        }
        let product = off_max_product(&sizes);
        if product >= threshold {
            continue;
        }
        best = best.max(product);
        let mut deg = [0usize; 32];
        for &em in &edge_masks {
            if em & mask == em {
                let mut bits = em;
                while bits != 0 {
                    deg[bits.trailing_zeros() as usize] += 1;
                    bits &= bits - 1;
                }
            }
        }
        let min = (0..total).filter(|&v| mask >> v & 1 == 1).map(|v| deg[v]).min().unwrap_or(0);
        if min as f64 > k {
            let members: Vec<bool> = (0..total).map(|v| mask >> v & 1 == 1).collect();
            return (Some(VertexSubset::from_members(g.r(), g.n(), &members)), best);
        }
    }
    (None, best)
}

/// Incrementally maintained vertex set with per-edge membership counts.
struct Grower<'a> {
    g: &'a Hypergraph,
    inc: &'a [Vec<usize>],
    inside: Vec<bool>,
    sizes: Vec<usize>,
    count: Vec<usize>,
    /// Edges that adding the vertex would complete.
    blocked: Vec<usize>,
    spanned: usize,
}

impl<'a> Grower<'a> {
    fn new(g: &'a Hypergraph, inc: &'a [Vec<usize>]) -> Self {
        Self {
            g,
            inc,
            inside: vec![false; g.vertex_count()],
            sizes: vec![0; g.r()],
            count: vec![0; g.edge_count()],
            // With r = 1 every edge is completed by its only vertex.
            blocked: if g.r() == 1 { g.degrees() } else { vec![0; g.vertex_count()] },
            spanned: 0,
        }
    }

    /// Adjust `blocked` for the other vertices of `e`, whose count of
    /// members besides themselves is about to move past `r - 1`.
    fn touch(&mut self, e: usize, v: usize, up: bool) {
        let r = self.g.r();
        for &w in self.g.edge(e) {
            let w = w as usize;
            if w != v && self.count[e] - usize::from(self.inside[w]) == r - 1 {
                if up {
                    self.blocked[w] += 1;
                } else {
                    self.blocked[w] -= 1;
                }
            }
        }
    }

    fn add(&mut self, v: usize) {
        self.inside[v] = true;
        self.sizes[self.g.class_of(v as u32)] += 1;
        let inc = self.inc;
        for &e in &inc[v] {
            self.count[e] += 1;
            if self.count[e] == self.g.r() {
                self.spanned += 1;
            }
            self.touch(e, v, true);
        }
    }

    fn remove(&mut self, v: usize) {
        let inc = self.inc;
        for &e in &inc[v] {
            self.touch(e, v, false);
            if self.count[e] == self.g.r() {
                self.spanned -= 1;
            }
            self.count[e] -= 1;
        }
        self.inside[v] = false;
        self.sizes[self.g.class_of(v as u32)] -= 1;
    }

    fn product(&self) -> f64 {
        off_max_product(&self.sizes)
    }

    fn subset(&self) -> VertexSubset {
        VertexSubset::from_members(self.g.r(), self.g.n(), &self.inside)
    }
}

/// Greedy balanced growth: add to the smallest class a vertex completing the
/// fewest edges, until nothing fits under the edge allowance.
fn grow_sparse(s: &mut Grower, limit: usize, rng: &mut rng::Rng) {
    let n = s.g.n();
    loop {
        let mut classes: Vec<usize> = (0..s.g.r()).collect();
        classes.shuffle(rng);
        classes.sort_by_key(|&i| s.sizes[i]);
        let mut added = false;
        for i in classes {
            let start = rng.gen_range(0..n);
            let pick = (0..n)
                .map(|t| i * n + (start + t) % n)
                .filter(|&v| !s.inside[v] && s.spanned + s.blocked[v] <= limit)
                .min_by_key(|&v| s.blocked[v]);
            if let Some(v) = pick {
                s.add(v);
                added = true;
                break;
            }
        }
        if !added {
            return;
        }
    }
}

type Sampled = (Option<VertexSubset>, f64, usize, String);

fn rounds(budget: usize) -> [usize; 3] {
    let b = budget.max(1);
    [b, 2 * b, 4 * b]
}

fn merge(found: Vec<(Option<VertexSubset>, f64)>) -> (Option<VertexSubset>, f64) {
    let best = found.iter().map(|f| f.1).fold(0.0, f64::max);
    let witness = found.into_iter().filter_map(|f| f.0).min();
    (witness, best)
}

fn sample_i(g: &Hypergraph, limit: usize, threshold: f64, params: &CheckParams) -> Sampled {
    let inc = g.incidence();
    let kicks_per_trial = [g.vertex_count(), 4 * g.vertex_count(), 16 * g.vertex_count()];
    let mut trials = 0;
    let mut best = 0.0;
    for (round, (&count, &kicks)) in rounds(params.budget).iter().zip(&kicks_per_trial).enumerate() {
        let found: Vec<_> = (0..count)
            .into_par_iter()
            .map(|t| {
                let mut rng = rng::stream(params.seed, ((round as u64) << 32) | t as u64);
                let mut s = Grower::new(g, &inc);
                grow_sparse(&mut s, limit, &mut rng);
                let mut best = (s.product(), s.inside.clone());
                for _ in 0..kicks {
                    if best.0 >= threshold {
                        break;
                    }
                    let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| s.inside[v]).collect();
                    for &v in members.choose_multiple(&mut rng, g.r().min(members.len())) {
                        s.remove(v);
                    }
                    grow_sparse(&mut s, limit, &mut rng);
                    if s.product() > best.0 {
                        best = (s.product(), s.inside.clone());
                    } else if s.product() < best.0 {
                        s = Grower::new(g, &inc);
                        for v in (0..g.vertex_count()).filter(|&v| best.1[v]) {
                            s.add(v);
                        }
                    }
                }
                let witness = (best.0 >= threshold).then(|| VertexSubset::from_members(g.r(), g.n(), &best.1));
                (witness, best.0)
            })
            .collect();
        trials += count;
        let (witness, b) = merge(found);
        best = f64::max(best, b);
        if witness.is_some() {
            return (witness, best, trials, format!("violation found in round {}", round + 1));
        }
    }
    (None, best, trials, "randomized search; no violation found".to_string())
}

/// Peel vertices of degree at most `k`; what remains has minimum degree above `k`.
fn core(s: &mut Grower, k: f64) {
    let mut deg = vec![0usize; s.g.vertex_count()];
    for (e, edge) in s.g.edges().enumerate() {
        if s.count[e] == s.g.r() {
            for &v in edge {
                deg[v as usize] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = (0..deg.len()).filter(|&v| s.inside[v] && deg[v] as f64 <= k).collect();
    while let Some(v) = stack.pop() {
        if !s.inside[v] {
            continue;
        }
        for &e in &s.inc[v] {
            if s.count[e] == s.g.r() {
                for &w in s.g.edge(e) {
                    let w = w as usize;
                    if w != v {
                        deg[w] -= 1;
                        if deg[w] as f64 <= k && s.inside[w] {
                            stack.push(w);
                        }
                    }
                }
            }
        }
        s.remove(v);
    }
}

fn sample_d(g: &Hypergraph, threshold: f64, k: f64, params: &CheckParams) -> Sampled {
    let inc = g.incidence();
    let mut trials = 0;
    let mut best = 0.0;
    for (round, &count) in rounds(params.budget).iter().enumerate() {
        let found: Vec<_> = (0..count)
            .into_par_iter()
            .map(|t| {
                let mut rng = rng::stream(params.seed, ((round as u64) << 32) | t as u64);
                let mut s = Grower::new(g, &inc);
                // Odd trials favour vertices that close many edges, even ones grow at random.
                let dense = t % 2 == 1;
                let mut order: Vec<usize> = (0..g.vertex_count()).collect();
                order.shuffle(&mut rng);
                loop {
                    let mut cands: Vec<usize> = order.iter().copied().filter(|&v| !s.inside[v]).collect();
                    if dense {
                        cands.sort_by_key(|&v| std::cmp::Reverse(s.blocked[v]));
                    }
                    let next = cands.into_iter().find(|&v| {
                        let mut sizes = s.sizes.clone();
                        sizes[g.class_of(v as u32)] += 1;
                        off_max_product(&sizes) < threshold
                    });
                    match next {
                        Some(v) => s.add(v),
                        None => break,
                    }
                }
                let product = s.product();
                core(&mut s, k);
                let witness = (s.sizes.iter().sum::<usize>() > 0).then(|| s.subset());
                (witness, product)
            })
            .collect();
        trials += count;
        let (witness, b) = merge(found);
        best = f64::max(best, b);
        if witness.is_some() {
            return (witness, best, trials, format!("dense core found in round {}", round + 1));
        }
    }
    (None, best, trials, "randomized search; every sampled maximal set peeled to nothing".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{gen_gnrp, gen_latin};

    fn exhaustive() -> CheckParams {
        CheckParams { mode: CheckMode::Exhaustive, ..CheckParams::default() }
    }

    #[test]
    fn complete_graph_has_i() {
        let g = gen_gnrp(3, 3, 1.0, 0).unwrap().graph;
        let rep = check_i(&g, 9.0, &exhaustive()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.best_product, 0.0);
        let rep = check_i(&g, 9.0, &CheckParams::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn empty_graph_violates_i() {
        let g = Hypergraph::empty(3, 4).unwrap();
        for params in [exhaustive(), CheckParams::default()] {
            let rep = check_i(&g, 16.0, &params).unwrap();
            assert_eq!(rep.verdict, Verdict::Violated);
            assert_eq!(rep.witness.unwrap().sizes(), vec![4, 4, 4]);
            assert_eq!(rep.best_product, 16.0);
        }
    }

    #[test]
    fn every_graph_has_d_at_full_degree() {
        let g = gen_gnrp(4, 3, 1.0, 0).unwrap().graph;
        let rep = check_d(&g, 16.0, &exhaustive()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn single_edge_has_d() {
        let g = Hypergraph::from_local(3, 5, &[vec![1, 2, 3]]).unwrap();
        let d = 20.0;
        assert!(threshold_d(5, 3, d) > 1.0 && degeneracy_bound(d, false) >= 1.0);
        assert_eq!(check_d(&g, d, &exhaustive()).unwrap().verdict, Verdict::Holds);
        assert_eq!(check_d(&g, d, &CheckParams::default()).unwrap().verdict, Verdict::InconclusiveHolds);
    }

    fn brute_i(g: &Hypergraph, limit: usize) -> f64 {
        let total = g.vertex_count();
        (0u32..1 << total)
            .map(|mask| (0..total).map(|v| mask >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|m| g.induced_edge_count(m) <= limit)
            .map(|m| VertexSubset::from_members(g.r(), g.n(), &m).off_max_product())
            .fold(0.0, f64::max)
    }

    #[test]
    fn exhaustive_i_matches_brute_force() {
        for seed in 0..4 {
            let g = gen_gnrp(8, 2, 0.5, seed).unwrap().graph;
            for primed in [false, true] {
                let params = CheckParams { primed, ..exhaustive() };
                let rep = check_i(&g, 2.0, &params).unwrap();
                let limit = edge_limit(8, 2, 2.0, primed);
                assert_eq!(rep.best_product, brute_i(&g, limit), "seed={seed} primed={primed}");
                assert_eq!(rep.verdict == Verdict::Violated, rep.best_product >= rep.threshold);
            }
        }
    }

    #[test]
    fn exhaustive_d_matches_brute_force() {
        let latin = gen_latin(3).unwrap().graph;
        let dense = gen_gnrp(3, 3, 0.8, 5).unwrap().graph;
        let bigger = gen_gnrp(6, 3, 0.6, 2).unwrap().graph;
        for g in [latin, dense, bigger, thick_edge()] {
            let n = g.n();
            for d in [3.0, 4.0, 16.0f64.min((n * n) as f64), (n * n) as f64] {
                let rep = check_d(&g, d, &exhaustive()).unwrap();
                let t = threshold_d(n, 3, d);
                let k = degeneracy_bound(d, false);
                let total = g.vertex_count();
                let violated = t > 1.0
                    && (1u32..1 << total).any(|mask| {
                        let m: Vec<bool> = (0..total).map(|v| mask >> v & 1 == 1).collect();
                        let x = VertexSubset::from_members(3, n, &m);
                        x.off_max_product() < t && min_degree(&g, &m) as f64 > k
                    });
                assert_eq!(rep.verdict == Verdict::Violated, violated, "n={n} d={d}");
            }
        }
    }

    /// A dense-enough part needs degree above 4e, so parallel edges supply it.
    fn thick_edge() -> Hypergraph {
        let mut tuples = vec![vec![0, 1, 2]; 12];
        tuples.push(vec![3, 3, 3]);
        Hypergraph::from_local(3, 6, &tuples).unwrap()
    }

    #[test]
    fn violation_witnesses_recheck() {
        let g = thick_edge();
        let rep = check_d(&g, 16.0, &exhaustive()).unwrap();
        assert_eq!(rep.verdict, Verdict::Violated);
        assert_eq!(rep.witness.as_ref().unwrap().classes, vec![vec![0], vec![1], vec![2]]);
        let sampled = check_d(&g, 16.0, &CheckParams::default()).unwrap();
        assert_eq!(sampled.witness, rep.witness);
        let mut forged = rep.clone();
        forged.witness = Some(VertexSubset { classes: vec![vec![0], vec![], vec![]] });
        assert!(recheck(&g, &forged).is_err());
        assert_eq!(recheck(&g, &rep).unwrap(), rep.recheck_hash);
    }

    #[test]
    fn domains_and_caps() {
        let g = Hypergraph::empty(3, 9).unwrap();
        assert!(check_i(&g, 0.5, &CheckParams::default()).is_err());
        assert!(check_i(&g, 82.0, &CheckParams::default()).is_err());
        assert!(check_d(&g, 2.0, &CheckParams::default()).is_err());
        assert!(matches!(check_i(&g, 4.0, &exhaustive()), Err(crate::Error::Resource(_))));
        assert!(matches!(check_d(&g, 4.0, &exhaustive()), Err(crate::Error::Resource(_))));
    }

    #[test]
    fn sampled_is_reproducible() {
        let g = gen_gnrp(30, 3, 0.05, 3).unwrap().graph;
        let params = CheckParams { seed: 11, budget: 8, ..CheckParams::default() };
        let a = check_i(&g, 45.0, &params).unwrap();
        let b = check_i(&g, 45.0, &params).unwrap();
        assert_eq!(a, b);
        let a = check_d(&g, 45.0, &params).unwrap();
        assert_eq!(a, check_d(&g, 45.0, &params).unwrap());
    }
}
