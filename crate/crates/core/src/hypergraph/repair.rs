//! Turning a `d`-regular multigraph into a simple one by edge swaps.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Butterfly, Hypergraph};
use crate::rng;

/// Structural conditions on the butterflies under which one swap per
/// butterfly is enough.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub butterflies: usize,
    /// (i) every body has exactly two vertices.
    pub bodies_are_pairs: bool,
    /// (ii) no two butterflies have the same body.
    pub distinct_bodies: bool,
    /// (iii) distinct butterflies have disjoint bodies.
    pub disjoint_bodies: bool,
    /// (iv) no two butterflies share a wing.
    pub distinct_wings: bool,
    /// (v) distinct butterflies are vertex disjoint.
    pub disjoint_butterflies: bool,
}

impl Conditions {
    pub fn evaluate(g: &Hypergraph, list: &[Butterfly]) -> Self {
        let mut c = Conditions {
            butterflies: list.len(),
            bodies_are_pairs: list.iter().all(|b| b.body.len() == 2),
            distinct_bodies: true,
            disjoint_bodies: true,
            distinct_wings: true,
            disjoint_butterflies: true,
        };
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if a.body == b.body {
                    c.distinct_bodies = false;
                }
                if a.body.iter().any(|v| b.body.contains(v)) {
                    c.disjoint_bodies = false;
                }
                let (a1, a2) = a.wings;
                let (b1, b2) = b.wings;
                if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
                    c.distinct_wings = false;
                }
                let span = |(e, f): (usize, usize)| {
                    let mut s = g.edge(e).to_vec();
                    s.extend_from_slice(g.edge(f));
                    s
                };
                let sa = span(a.wings);
                if span(b.wings).iter().any(|v| sa.contains(v)) {
                    c.disjoint_butterflies = false;
                }
            }
        }
        c
    }

    pub fn all_hold(&self) -> bool {
        self.first_failure().is_none()
    }

    /// Label of the first condition that fails.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.bodies_are_pairs, "(i) a butterfly body has more than two vertices"),
            (self.distinct_bodies, "(ii) two butterflies share a body"),
            (self.disjoint_bodies, "(iii) two butterfly bodies intersect"),
            (self.distinct_wings, "(iv) two butterflies share a wing"),
            (self.disjoint_butterflies, "(v) two butterflies intersect"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, label)| label)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Repair {
    pub graph: Hypergraph,
    /// Edges removed from the input (with multiplicity).
    pub removed: Vec<Vec<u32>>,
    /// Edges added, none of them present in the input.
    pub added: Vec<Vec<u32>>,
    pub conditions: Conditions,
    /// First failing condition, if any.
    pub diagnostic: Option<String>,
    /// `r^3 d^2`.
    pub bound: u64,
    pub swaps: usize,
}

#[derive(Debug, Clone, PartialEq, Error, Serialize, Deserialize)]
pub enum RepairFailure {
    #[error("input is not regular")]
    NotRegular,
    #[error("no edge far from butterfly {wings:?} (body {body:?}); edges {first:?} and {second:?}")]
    NoFarEdge { wings: (usize, usize), body: Vec<u32>, first: Vec<u32>, second: Vec<u32> },
    #[error("gave up after {0} swaps")]
    SwapCap(usize),
}

/// Remove every butterfly by swapping a body vertex with the same-class
/// vertex of an edge far from all current trouble.
pub fn simplify_regular(g: &Hypergraph, seed: u64) -> Result<Repair, RepairFailure> {
    let d = g.regular_degree().ok_or(RepairFailure::NotRegular)?;
    let r = g.r();
    let initial = g.butterflies();
    let conditions = Conditions::evaluate(g, &initial);
    let bound = (r as u64).pow(3) * (d as u64).pow(2);
    let mut work = g.clone();
    let mut removed_ids: Vec<usize> = Vec::new();
    let mut rng = rng::stream(seed, 0);
    let cap = 4 * initial.len() + 16;
    let mut swaps = 0;
    let mut list = initial;
    while let Some(first) = list.first().cloned() {
        if swaps >= cap {
            return Err(RepairFailure::SwapCap(swaps));
        }
        let far = swap_once(&mut work, &first, &list, &removed_ids, &mut rng)?;
        removed_ids.extend([first.wings.0, far]);
        swaps += 1;
        list = work.butterflies();
    }
    let (removed, added) = difference(g, &work);
    Ok(Repair {
        graph: work,
        removed,
        added,
        diagnostic: conditions.first_failure().map(str::to_string),
        conditions,
        bound,
        swaps,
    })
}

fn swap_once(
    g: &mut Hypergraph,
    target: &Butterfly,
    list: &[Butterfly],
    touched: &[usize],
    rng: &mut rng::Rng,
) -> Result<usize, RepairFailure> {
    let (e, f) = target.wings;
    let u = target.body[0];
    let v = target.body[1];
    let inc = g.incidence();
    let mut in_q = vec![false; g.vertex_count()];
    for b in list {
        for &w in g.edge(b.wings.0).iter().chain(g.edge(b.wings.1)) {
            in_q[w as usize] = true;
        }
    }
    for &t in touched {
        for &w in g.edge(t) {
            in_q[w as usize] = true;
        }
    }
    for &x in &[u, v] {
        for &h in &inc[x as usize] {
            for &w in g.edge(h) {
                in_q[w as usize] = true;
            }
        }
    }
    // A vertex is near Q if some edge through it meets Q.
    let near: Vec<bool> = (0..g.vertex_count())
        .map(|w| inc[w].iter().any(|&h| g.edge(h).iter().any(|&y| in_q[y as usize])))
        .collect();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let far = order
        .into_iter()
        .find(|&h| g.edge(h).iter().all(|&w| !near[w as usize]))
        .ok_or_else(|| RepairFailure::NoFarEdge {
            wings: (e, f),
            body: target.body.clone(),
            first: g.edge(e).to_vec(),
            second: g.edge(f).to_vec(),
        })?;
    let class = g.class_of(u);
    let x = g.edge(far)[class];
    let r = g.r();
    let mut edges = std::mem::take(&mut g.edges);
    edges[e * r + class] = x;
    edges[far * r + class] = u;
    g.replace_edges(edges);
    Ok(far)
}

/// Multiset differences `before - after` and `after - before`.
fn difference(before: &Hypergraph, after: &Hypergraph) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let a = before.edge_counts();
    let b = after.edge_counts();
    let minus = |x: &BTreeMap<Vec<u32>, u32>, y: &BTreeMap<Vec<u32>, u32>| {
        x.iter()
            .flat_map(|(e, &k)| {
                let extra = k.saturating_sub(y.get(e).copied().unwrap_or(0));
                std::iter::repeat(e.clone()).take(extra as usize)
            })
            .collect::<Vec<_>>()
    };
    (minus(&a, &b), minus(&b, &a))
}
