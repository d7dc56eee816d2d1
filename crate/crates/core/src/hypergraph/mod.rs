//! `r`-partite `r`-graphs on classes `V_1, ..., V_r` of size `n`.
//!
//! Vertex `j` of class `i` (both 0-based) has id `i * n + j`. An edge is
//! stored as its `r` vertex ids in class order, and parallel edges are kept
//! as separate copies.

mod property;
mod repair;

pub use property::{
    check_d, check_i, degeneracy_bound, edge_limit, recheck, threshold_d, threshold_i, CheckMode, CheckParams, Property,
    PropertyReport, Verdict, EXHAUSTIVE_D_CAP, EXHAUSTIVE_I_CAP,
};
pub use repair::{simplify_regular, Conditions, Repair, RepairFailure};

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::error::{parameter, Error, Result};
use crate::preference::i_max;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Hypergraph {
    r: usize,
    n: usize,
    /// Flat edge list, `r` ids per edge copy.
    edges: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphJson {
    r: usize,
    n: usize,
    edges: Vec<Vec<u32>>,
    multiplicity: Vec<u32>,
}

impl TryFrom<GraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        if raw.edges.len() != raw.multiplicity.len() {
            return Err(Error::Input("edges and multiplicity differ in length".into()));
        }
        let mut g = Hypergraph::empty(raw.r, raw.n)?;
        for (e, &k) in raw.edges.iter().zip(&raw.multiplicity) {
            for _ in 0..k {
                g.push_edge(e)?;
            }
        }
        Ok(g)
    }
}

impl From<Hypergraph> for GraphJson {
    fn from(g: Hypergraph) -> Self {
        let counts = g.edge_counts();
        GraphJson {
            r: g.r,
            n: g.n,
            multiplicity: counts.values().copied().collect(),
            edges: counts.into_keys().collect(),
        }
    }
}

/// Two edge copies sharing at least two vertices; `body` is their intersection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Butterfly {
    pub wings: (usize, usize),
    pub body: Vec<u32>,
}

/// Result of repeatedly deleting a vertex of minimum degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degeneracy {
    /// Largest degree seen at a deletion.
    pub k: usize,
    /// Vertices in deletion order.
    pub order: Vec<u32>,
}

impl Hypergraph {
    pub fn empty(r: usize, n: usize) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(parameter!("need r >= 1 and n >= 1, got r={r}, n={n}"));
        }
        if r.saturating_mul(n) > u32::MAX as usize {
            return Err(parameter!("vertex ids do not fit in 32 bits"));
        }
        Ok(Self { r, n, edges: Vec::new() })
    }

    /// Build from edges listed by class-local indices `(j_1, ..., j_r)`.
    pub fn from_local(r: usize, n: usize, tuples: &[Vec<u32>]) -> Result<Self> {
        let mut g = Self::empty(r, n)?;
        for t in tuples {
            let ids: Vec<u32> = t.iter().enumerate().map(|(i, &j)| (i * n) as u32 + j).collect();
            if t.iter().any(|&j| j as usize >= n) {
                return Err(Error::Input(format!("local index out of range in {t:?}")));
            }
            g.push_edge(&ids)?;
        }
        Ok(g)
    }

    /// Add one edge copy given by global ids; it must meet every class once.
    pub fn push_edge(&mut self, ids: &[u32]) -> Result<()> {
        if ids.len() != self.r {
            return Err(Error::Input(format!("edge {ids:?} does not have {} vertices", self.r)));
        }
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        for (i, &v) in sorted.iter().enumerate() {
            if v as usize >= self.r * self.n || self.class_of(v) != i {
                return Err(Error::Input(format!("edge {ids:?} does not meet each class exactly once")));
            }
        }
        self.edges.extend_from_slice(&sorted);
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.r * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.r
    }

    pub fn edge(&self, e: usize) -> &[u32] {
        &self.edges[e * self.r..(e + 1) * self.r]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.edges.chunks(self.r)
    }

    pub fn class_of(&self, v: u32) -> usize {
        v as usize / self.n
    }

    /// Distinct edges with their multiplicities, in lexicographic order.
    pub fn edge_counts(&self) -> BTreeMap<Vec<u32>, u32> {
        let mut counts = BTreeMap::new();
        for e in self.edges() {
            *counts.entry(e.to_vec()).or_insert(0) += 1;
        }
        counts
    }

    /// Degrees counted with multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &v in &self.edges {
            deg[v as usize] += 1;
        }
        deg
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = deg[0];
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn average_degree(&self) -> f64 {
        self.edge_count() as f64 / self.n as f64
    }

    /// Edge copies containing each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count()];
        for (e, edge) in self.edges().enumerate() {
            for &v in edge {
                inc[v as usize].push(e);
            }
        }
        inc
    }

    pub fn is_simple(&self) -> bool {
        self.butterflies().is_empty()
    }

    /// Every unordered pair of edge copies sharing at least two vertices.
    pub fn butterflies(&self) -> Vec<Butterfly> {
        let mut by_pair: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
        for (e, edge) in self.edges().enumerate() {
            for a in 0..self.r {
                for b in a + 1..self.r {
                    by_pair.entry((edge[a], edge[b])).or_default().push(e);
                }
            }
        }
        let mut pairs: Vec<(usize, usize)> = by_pair
            .values()
            .filter(|list| list.len() > 1)
            .flat_map(|list| {
                list.iter()
                    .enumerate()
                    .flat_map(move |(i, &e)| list[i + 1..].iter().map(move |&f| (e.min(f), e.max(f))))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
            .into_iter()
            .map(|(e, f)| {
                let other = self.edge(f);
                let body = self.edge(e).iter().copied().filter(|v| other.contains(v)).collect();
                Butterfly { wings: (e, f), body }
            })
            .collect()
    }

    /// Degeneracy of the subgraph induced by `members` (all vertices if `None`).
    pub fn degeneracy(&self, members: Option<&[bool]>) -> Degeneracy {
        let total = self.vertex_count();
        let inside = |v: u32| members.map_or(true, |m| m[v as usize]);
        let inc = self.incidence();
        let mut alive_edge: Vec<bool> = self.edges().map(|e| e.iter().all(|&v| inside(v))).collect();
        let mut deg = vec![0usize; total];
        for (e, edge) in self.edges().enumerate() {
            if alive_edge[e] {
                for &v in edge {
                    deg[v as usize] += 1;
                }
            }
        }
        let vertices: Vec<u32> = (0..total as u32).filter(|&v| inside(v)).collect();
        let max_deg = vertices.iter().map(|&v| deg[v as usize]).max().unwrap_or(0);
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_deg + 1];
        for &v in &vertices {
            buckets[deg[v as usize]].push(v);
        }
        let mut removed = vec![false; total];
        let mut order = Vec::with_capacity(vertices.len());
        let mut k = 0;
        let mut low = 0;
        while order.len() < vertices.len() {
            // Buckets hold stale entries; skip those whose degree has changed.
            let v = loop {
                while buckets[low].is_empty() {
                    low += 1;
                }
                let v = buckets[low].pop().expect("non-empty bucket");
                if !removed[v as usize] && deg[v as usize] == low {
                    break v;
                }
            };
            k = k.max(low);
            removed[v as usize] = true;
            order.push(v);
            for &e in &inc[v as usize] {
                if !std::mem::replace(&mut alive_edge[e], false) {
                    continue;
                }
                for &u in self.edge(e) {
                    if u != v {
                        deg[u as usize] -= 1;
                        buckets[deg[u as usize]].push(u);
                        low = low.min(deg[u as usize]);
                    }
                }
            }
        }
        Degeneracy { k, order }
    }

    /// Number of edge copies inside `members`.
    pub fn induced_edge_count(&self, members: &[bool]) -> usize {
        self.edges().filter(|e| e.iter().all(|&v| members[v as usize])).count()
    }

    /// SHA-256 of the graph's JSON form, as hex.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(self).expect("serializable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub(crate) fn replace_edges(&mut self, edges: Vec<u32>) {
        debug_assert_eq!(edges.len() % self.r, 0);
        self.edges = edges;
    }
}

/// A vertex set given class by class (class-local indices).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSubset {
    pub classes: Vec<Vec<u32>>,
}

impl VertexSubset {
    pub fn from_members(r: usize, n: usize, members: &[bool]) -> Self {
        let mut classes = vec![Vec::new(); r];
        for (v, _) in members.iter().enumerate().filter(|(_, &m)| m) {
            classes[v / n].push((v % n) as u32);
        }
        Self { classes }
    }

    pub fn members(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; self.classes.len() * n];
        for (i, class) in self.classes.iter().enumerate() {
            for &j in class {
                m[i * n + j as usize] = true;
            }
        }
        m
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Smallest index of a largest class.
    pub fn largest_class(&self) -> usize {
        i_max(&self.sizes())
    }

    /// Product of the class sizes other than the largest one.
    pub fn off_max_product(&self) -> f64 {
        off_max_product(&self.sizes())
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub(crate) fn off_max_product(sizes: &[usize]) -> f64 {
    let skip = i_max(sizes);
    sizes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &s)| s as f64)
        .product()
}

/// Metadata of a generated graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generated {
    pub graph: Hypergraph,
    /// Expected (or exact) vertex degree.
    pub d: f64,
}

/// Binomial model: each of the `n^r` possible edges independently with probability `p`.
pub fn gen_gnrp(n: usize, r: usize, p: f64, seed: u64) -> Result<Generated> {
    if !(0.0..=1.0).contains(&p) {
        return Err(crate::error::domain!("p={p} outside [0, 1]"));
    }
    let mut g = Hypergraph::empty(r, n)?;
    let total = (n as u128).checked_pow(r as u32).filter(|&t| t <= 1 << 40);
    let total = total.ok_or_else(|| parameter!("n^r is too large to sample"))? as u64;
    let d = p * (n as f64).powi(r as i32 - 1);
    if p > 0.0 {
        let mut rng = rng::stream(seed, 0);
        let mut idx = 0u64;
        let skip = (p < 1.0).then(|| Geometric::new(p).expect("p in (0, 1)"));
        loop {
            if let Some(geo) = &skip {
                idx = idx.saturating_add(geo.sample(&mut rng));
            }
            if idx >= total {
                break;
            }
            let mut rest = idx;
            let mut ids = vec![0u32; r];
            for i in (0..r).rev() {
                ids[i] = (i * n) as u32 + (rest % n as u64) as u32;
                rest /= n as u64;
            }
            g.edges.extend_from_slice(&ids);
            idx += 1;
        }
    }
    Ok(Generated { graph: g, d })
}

/// Union of `d` independent uniform perfect matchings; exactly `d`-regular.
pub fn gen_matching_union(n: usize, r: usize, d: usize, seed: u64) -> Result<Generated> {
    if d == 0 {
        return Err(parameter!("d must be at least 1"));
    }
    let mut g = Hypergraph::empty(r, n)?;
    let mut rng = rng::stream(seed, 0);
    g.edges.reserve(n * d * r);
    let mut perms: Vec<Vec<u32>> = vec![(0..n as u32).collect(); r.saturating_sub(1)];
    for _ in 0..d {
        // The edge through v in V_1 takes perms[i-1][v] from class i.
        for p in &mut perms {
            p.shuffle(&mut rng);
        }
        for v in 0..n {
            g.edges.push(v as u32);
            for (i, p) in perms.iter().enumerate() {
                g.edges.push(((i + 1) * n) as u32 + p[v]);
            }
        }
    }
    Ok(Generated { graph: g, d: d as f64 })
}

/// The 3-graph of the cyclic Latin square: edges `{i, j, i + j mod n}`.
pub fn gen_latin(n: usize) -> Result<Generated> {
    let mut g = Hypergraph::empty(3, n)?;
    for i in 0..n {
        for j in 0..n {
            let k = (i + j) % n;
            g.edges.extend_from_slice(&[i as u32, (n + j) as u32, (2 * n + k) as u32]);
        }
    }
    Ok(Generated { graph: g, d: n as f64 })
}
