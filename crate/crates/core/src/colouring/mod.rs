//! List colouring of `r`-partite `r`-graphs.
//!
//! Colours are labelled `0..t`. A colouring is proper when no edge has all
//! its vertices in one colour.

mod block;
mod certificate;
mod free;

pub use block::{auto_params, block_colouring, BlockOrder, BlockOutcome, BlockParams, BlockPlan, BlockRun};
pub use certificate::{lb_certificate, LbCertificate};
pub use free::{free_forbidden_colouring, free_forbidden_ell, Attempt, FreeForbiddenRun, forbid_probability};

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{parameter, resource, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::preference::PreferenceOrder;
use crate::rng;

/// One list of colours per vertex, all of the same size, drawn from `[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ListsJson", into = "ListsJson")]
pub struct ListAssignment {
    t: usize,
    ell: usize,
    lists: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ListsJson {
    t: usize,
    ell: usize,
    lists: Vec<Vec<u32>>,
}

impl TryFrom<ListsJson> for ListAssignment {
    type Error = Error;

    fn try_from(raw: ListsJson) -> Result<Self> {
        let a = ListAssignment::new(raw.t, raw.lists)?;
        if a.ell != raw.ell {
            return Err(Error::Input(format!("declared ell={} but lists have size {}", raw.ell, a.ell)));
        }
        Ok(a)
    }
}

impl From<ListAssignment> for ListsJson {
    fn from(a: ListAssignment) -> Self {
        ListsJson { t: a.t, ell: a.ell, lists: a.lists }
    }
}

impl ListAssignment {
    pub fn new(t: usize, mut lists: Vec<Vec<u32>>) -> Result<Self> {
        let ell = lists.first().map_or(0, Vec::len);
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            let distinct = list.windows(2).all(|w| w[0] < w[1]);
            if list.len() != ell || !distinct || list.iter().any(|&c| c as usize >= t) {
                return Err(Error::Input(format!("list of vertex {v} is not {ell} distinct colours from [{t}]")));
            }
        }
        Ok(Self { t, ell, lists })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> &[u32] {
        &self.lists[v]
    }

    pub fn contains(&self, v: usize, c: u32) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    fn check_fits(&self, g: &Hypergraph) -> Result<()> {
        if self.lists.len() != g.vertex_count() {
            return Err(parameter!("{} lists for {} vertices", self.lists.len(), g.vertex_count()));
        }
        Ok(())
    }
}

fn random_list(ell: usize, t: usize, rng: &mut rng::Rng) -> Vec<u32> {
    let mut list: Vec<u32> = index::sample(rng, t, ell).into_iter().map(|c| c as u32).collect();
    list.sort_unstable();
    list
}

/// Independent uniform `ell`-subsets of `[t]`, one per vertex.
pub fn random_lists(g: &Hypergraph, ell: usize, t: usize, seed: u64) -> Result<ListAssignment> {
    if ell == 0 || t < ell {
        return Err(parameter!("need t >= ell >= 1, got ell={ell}, t={t}"));
    }
    let mut rng = rng::stream(seed, 0);
    let lists = (0..g.vertex_count()).map(|_| random_list(ell, t, &mut rng)).collect();
    ListAssignment::new(t, lists)
}

/// Palette size `ceil(2 ell^2 / zeta)` for lists with the covering property.
pub fn lemma_t(ell: usize, zeta: f64) -> usize {
    (2.0 * (ell * ell) as f64 / zeta).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaParams {
    pub zeta: f64,
    /// Random sets `Z` tested per draw, besides all prefixes of `[t]`.
    pub z_samples: usize,
    pub max_draws: usize,
}

impl Default for LemmaParams {
    fn default() -> Self {
        Self { zeta: 0.25, z_samples: 1000, max_draws: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub t: usize,
    pub draws: usize,
    pub sets_tested: usize,
    /// Whether `n zeta^ell >= 16 t`, under which the draw provably can succeed.
    pub size_condition: bool,
}

/// Whether at least `n z^ell / 4` of `lists` lie inside `z_set`, where `z = |Z|/t`.
pub fn covers(lists: &[Vec<u32>], t: usize, z_set: &[bool]) -> bool {
    let ell = lists.first().map_or(0, Vec::len) as i32;
    let z = z_set.iter().filter(|&&b| b).count() as f64 / t as f64;
    let inside = lists.iter().filter(|l| l.iter().all(|&c| z_set[c as usize])).count();
    inside as f64 >= lists.len() as f64 * z.powi(ell) / 4.0
}

/// A sequence of `n` lists with the covering property on every tested `Z`,
/// given to each class in turn (vertex `j` of every class gets list `j`).
pub fn random_lists_lemma(
    g: &Hypergraph,
    ell: usize,
    seed: u64,
    params: &LemmaParams,
) -> Result<(ListAssignment, LemmaReport)> {
    if ell == 0 || !(params.zeta > 0.0 && params.zeta <= 1.0) {
        return Err(parameter!("need ell >= 1 and zeta in (0, 1]"));
    }
    let t = lemma_t(ell, params.zeta);
    let n = g.n();
    let min_size = (params.zeta * t as f64).ceil() as usize;
    let mut rng = rng::stream(seed, 0);
    let mut z_rng = rng::stream(seed, 1);
    let mut family: Vec<Vec<bool>> = (min_size..=t).map(|s| (0..t).map(|c| c < s).collect()).collect();
    for _ in 0..params.z_samples {
        let size = z_rng.gen_range(min_size..=t);
        let mut z = vec![false; t];
        for c in index::sample(&mut z_rng, t, size) {
            z[c] = true;
        }
        family.push(z);
    }
    for draw in 1..=params.max_draws {
        let seq: Vec<Vec<u32>> = (0..n).map(|_| random_list(ell, t, &mut rng)).collect();
        if family.iter().all(|z| covers(&seq, t, z)) {
            let lists = (0..g.r()).flat_map(|_| seq.iter().cloned()).collect();
            let report = LemmaReport {
                t,
                draws: draw,
                sets_tested: family.len(),
                size_condition: n as f64 * params.zeta.powi(ell as i32) >= 16.0 * t as f64,
            };
            return Ok((ListAssignment::new(t, lists)?, report));
        }
    }
    Err(resource!("no draw of lists passed the covering test in {} attempts", params.max_draws))
}

/// How a vertex came by its colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    NonFree,
    Free,
    Block(u32),
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub colours: Vec<Option<u32>>,
    pub tags: Vec<Option<Tag>>,
}

impl Colouring {
    pub fn blank(vertices: usize) -> Self {
        Self { colours: vec![None; vertices], tags: vec![None; vertices] }
    }

    pub fn set(&mut self, v: usize, c: u32, tag: Tag) {
        self.colours[v] = Some(c);
        self.tags[v] = Some(tag);
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub ok: bool,
    pub uncoloured: Vec<u32>,
    /// Vertices whose colour is not in their list.
    pub off_list: Vec<u32>,
    /// Indices of monochromatic edges.
    pub monochromatic: Vec<usize>,
}

/// Every uncoloured vertex, every colour outside its list, every monochromatic edge.
pub fn validate(g: &Hypergraph, lists: &ListAssignment, c: &Colouring) -> Validation {
    let vertices = g.vertex_count().min(c.colours.len());
    let uncoloured: Vec<u32> = (0..g.vertex_count())
        .filter(|&v| c.colours.get(v).copied().flatten().is_none())
        .map(|v| v as u32)
        .collect();
    let off_list: Vec<u32> = (0..vertices)
        .filter(|&v| c.colours[v].is_some_and(|col| v >= lists.lists.len() || !lists.contains(v, col)))
        .map(|v| v as u32)
        .collect();
    let monochromatic: Vec<usize> = g
        .edges()
        .enumerate()
        .filter(|(_, e)| {
            let first = c.colours.get(e[0] as usize).copied().flatten();
            first.is_some() && e.iter().all(|&v| c.colours.get(v as usize).copied().flatten() == first)
        })
        .map(|(i, _)| i)
        .collect();
    Validation {
        ok: uncoloured.is_empty() && off_list.is_empty() && monochromatic.is_empty(),
        uncoloured,
        off_list,
        monochromatic,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("vertex {vertex} is stuck: every colour of {list:?} is blocked")]
pub struct Stuck {
    pub vertex: u32,
    pub list: Vec<u32>,
    pub blocked: Vec<u32>,
}

/// Colour `G[members]` from `allowed(v)` along a reversed degeneracy order.
///
/// A vertex avoids the common colour of each edge whose other vertices are
/// already coloured alike; with lists longer than the degeneracy this never
/// gets stuck.
pub(crate) fn greedy_on(
    g: &Hypergraph,
    members: &[bool],
    allowed: impl Fn(usize) -> Vec<u32>,
    colours: &mut [Option<u32>],
    inc: &[Vec<usize>],
) -> std::result::Result<(), Stuck> {
    let order = g.degeneracy(Some(members)).order;
    for &v in order.iter().rev() {
        let v = v as usize;
        let mut blocked = BTreeSet::new();
        for &e in &inc[v] {
            let mut common = None;
            let mut alike = true;
            for &w in g.edge(e).iter().filter(|&&w| w as usize != v) {
                let w = w as usize;
                match (members[w], colours[w]) {
                    (true, Some(c)) if common.map_or(true, |x| x == c) => common = Some(c),
                    _ => {
                        alike = false;
                        break;
                    }
                }
            }
            if let (true, Some(c)) = (alike, common) {
                blocked.insert(c);
            }
        }
        let list = allowed(v);
        match list.iter().find(|c| !blocked.contains(c)) {
            Some(&c) => colours[v] = Some(c),
            None => {
                return Err(Stuck { vertex: v as u32, list, blocked: blocked.into_iter().collect() });
            }
        }
    }
    Ok(())
}

/// Colour a `k`-degenerate graph from lists of more than `k` colours.
pub fn greedy_degenerate_colouring(
    g: &Hypergraph,
    lists: &ListAssignment,
    k: usize,
) -> Result<std::result::Result<Colouring, Stuck>> {
    lists.check_fits(g)?;
    if lists.ell() <= k {
        return Err(parameter!("lists of size {} do not exceed k={k}", lists.ell()));
    }
    let members = vec![true; g.vertex_count()];
    let mut colours = vec![None; g.vertex_count()];
    let inc = g.incidence();
    Ok(greedy_on(g, &members, |v| lists.list(v).to_vec(), &mut colours, &inc).map(|()| {
        let mut c = Colouring::blank(g.vertex_count());
        for (v, col) in colours.into_iter().enumerate() {
            c.set(v, col.expect("every member coloured"), Tag::Greedy);
        }
        c
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Choosability {
    Choosable { witness: Colouring },
    NotChoosable { nodes: u64 },
    Unknown { nodes: u64 },
}

/// Default node budget of [`choosable`].
pub const DEFAULT_CHOICE_BUDGET: u64 = 10_000_000;

/// Backtracking search for a proper colouring from the lists.
pub fn choosable(g: &Hypergraph, lists: &ListAssignment, budget: u64) -> Result<Choosability> {
    lists.check_fits(g)?;
    let inc = g.incidence();
    // Most constrained first: short lists, then high degree.
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (lists.list(v).len(), std::cmp::Reverse(inc[v].len()), v));
    let mut colours: Vec<Option<u32>> = vec![None; g.vertex_count()];
    let mut nodes = 0u64;

    fn clashes(g: &Hypergraph, inc: &[Vec<usize>], colours: &[Option<u32>], v: usize) -> bool {
        inc[v].iter().any(|&e| {
            let edge = g.edge(e);
            edge.iter().all(|&w| colours[w as usize] == colours[v])
        })
    }

    fn go(
        depth: usize,
        order: &[usize],
        g: &Hypergraph,
        inc: &[Vec<usize>],
        lists: &ListAssignment,
        colours: &mut Vec<Option<u32>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if depth == order.len() {
            return Some(true);
        }
        let v = order[depth];
        for &c in lists.list(v) {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            colours[v] = Some(c);
            if !clashes(g, inc, colours, v) && go(depth + 1, order, g, inc, lists, colours, nodes, budget)? {
                return Some(true);
            }
        }
        colours[v] = None;
        Some(false)
    }

    Ok(match go(0, &order, g, &inc, lists, &mut colours, &mut nodes, budget) {
        Some(true) => {
            let mut witness = Colouring::blank(g.vertex_count());
            for (v, c) in colours.into_iter().enumerate() {
                witness.set(v, c.expect("complete"), Tag::Greedy);
            }
            Choosability::Choosable { witness }
        }
        Some(false) => Choosability::NotChoosable { nodes },
        None => Choosability::Unknown { nodes },
    })
}

/// For each class, colours ordered by how often they are used there, least
/// used at the bottom; ties put the smaller colour lower.
pub fn popularity_order(g: &Hypergraph, c: &Colouring, t: usize) -> Result<PreferenceOrder> {
    if t == 0 {
        return Err(parameter!("empty palette"));
    }
    let mut counts = vec![vec![0usize; t]; g.r()];
    for (v, col) in c.colours.iter().enumerate().take(g.vertex_count()) {
        if let Some(col) = col {
            if *col as usize >= t {
                return Err(Error::Input(format!("colour {col} of vertex {v} outside [{t}]")));
            }
            counts[g.class_of(v as u32)][*col as usize] += 1;
        }
    }
    let orders = counts
        .iter()
        .map(|count| {
            let mut o: Vec<u32> = (0..t as u32).collect();
            o.sort_by_key(|&col| (count[col as usize], col));
            o
        })
        .collect();
    PreferenceOrder::new(orders)
}

/// Shuffled copy of `0..len`.
pub(crate) fn random_permutation(len: usize, rng: &mut rng::Rng) -> Vec<u32> {
    let mut p: Vec<u32> = (0..len as u32).collect();
    p.shuffle(rng);
    p
}
