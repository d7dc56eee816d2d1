//! The block algorithm: split the palette into blocks, let every vertex promise
//! its most preferred available block, then colour each block class greedily.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{greedy_on, random_permutation, validate, Colouring, ListAssignment, Stuck, Tag, Validation};
use crate::error::{parameter, Result};
use crate::hypergraph::Hypergraph;
use crate::preference::{NamedOrder, PreferenceOrder};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockOrder {
    /// `P_a` for `r = 2`, `P_c` for `r = 3` when `3 | m`, otherwise the identity.
    Auto,
    Named(NamedOrder),
    Explicit(PreferenceOrder),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockParams {
    /// Degeneracy budget; derived from the degree when `None`.
    pub k: Option<usize>,
    /// Availability slack; derived from the degree when `None`.
    pub delta: Option<f64>,
    /// Block count; `floor(delta ell / k)` when `None`.
    pub m: Option<usize>,
    /// Degree used for the derived values; the average degree when `None`.
    pub d: Option<f64>,
    pub order: BlockOrder,
    pub seed: u64,
}

impl Default for BlockParams {
    fn default() -> Self {
        Self { k: None, delta: None, m: None, d: None, order: BlockOrder::Auto, seed: 0 }
    }
}

/// Real-valued `(k, delta)` for degree `d`: `4 ln d / ln ln d` and
/// `(ln ln d)^(-1/4)`, with `delta` capped at 0.9 and, for `d <= e^e`,
/// `k = max(d, 1)` since the formula stops being meaningful there.
pub fn auto_params(d: f64) -> (f64, f64) {
    let lnln = d.ln().ln();
    if d > std::f64::consts::E.powf(std::f64::consts::E) {
        (4.0 * d.ln() / lnln, lnln.powf(-0.25).min(0.9))
    } else {
        (d.max(1.0), 0.9)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockPlan {
    pub k: usize,
    pub k_real: f64,
    pub delta: f64,
    pub m: usize,
    pub m_real: f64,
    /// Palette size before padding.
    pub t: usize,
    /// Padded palette size; colours `t..padded_t` are dummies in no list.
    pub padded_t: usize,
    pub blocks: Vec<Vec<u32>>,
    pub order: PreferenceOrder,
    /// Block promised by each vertex.
    pub promised: Vec<u32>,
    /// Vertices promising each block.
    pub members: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockOutcome {
    pub block: u32,
    pub class_sizes: Vec<usize>,
    pub edges: usize,
    pub degeneracy: usize,
    pub stuck: Option<Stuck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockRun {
    pub colouring: Colouring,
    pub plan: BlockPlan,
    pub outcomes: Vec<BlockOutcome>,
    pub failed_blocks: Vec<u32>,
    pub validation: Validation,
    pub success: bool,
}

fn resolve_order(order: &BlockOrder, r: usize, m: usize) -> Result<PreferenceOrder> {
    let p = match order {
        BlockOrder::Auto => {
            let kind = match r {
                2 => NamedOrder::Pa,
                3 if m % 3 == 0 => NamedOrder::Pc,
                _ => NamedOrder::Identity,
            };
            PreferenceOrder::named(kind, r, m)?
        }
        BlockOrder::Named(kind) => PreferenceOrder::named(*kind, r, m)?,
        BlockOrder::Explicit(p) => p.clone(),
    };
    if p.r() != r || p.m() != m {
        return Err(parameter!("preference order is ({}, {}), need ({r}, {m})", p.r(), p.m()));
    }
    Ok(p)
}

pub fn block_colouring(g: &Hypergraph, lists: &ListAssignment, params: &BlockParams) -> Result<BlockRun> {
    lists.check_fits(g)?;
    let ell = lists.ell();
    let d = params.d.unwrap_or_else(|| g.average_degree());
    let (k_auto, delta_auto) = auto_params(d);
    let k_real = params.k.map_or(k_auto, |k| k as f64);
    let k = k_real.ceil() as usize;
    let delta = params.delta.unwrap_or(delta_auto);
    if !(delta > 0.0 && delta < 1.0) {
        return Err(parameter!("delta={delta} outside (0, 1)"));
    }
    let m_real = delta * ell as f64 / k_real.max(1.0);
    let m = params.m.unwrap_or((m_real.floor() as usize).max(1));
    if m == 0 || ell <= m * k {
        return Err(parameter!("need ell > m k, got ell={ell}, m={m}, k={k}"));
    }
    let order = resolve_order(&params.order, g.r(), m)?;

    let t = lists.t();
    let padded_t = t.div_ceil(m) * m;
    let size = padded_t / m;
    let mut rng = rng::stream(params.seed, 0);
    let perm = random_permutation(padded_t, &mut rng);
    let blocks: Vec<Vec<u32>> = perm
        .chunks(size)
        .map(|c| {
            let mut b = c.to_vec();
            b.sort_unstable();
            b
        })
        .collect();
    let mut block_of = vec![0u32; padded_t];
    for (q, b) in blocks.iter().enumerate() {
        for &c in b {
            block_of[c as usize] = q as u32;
        }
    }

    // ell > m k guarantees some block holds more than k colours of each list.
    let promised: Vec<u32> = (0..g.vertex_count())
        .map(|v| {
            let mut count = vec![0usize; m];
            for &c in lists.list(v) {
                count[block_of[c as usize] as usize] += 1;
            }
            let class = g.class_of(v as u32);
            (0..m as u32)
                .filter(|&q| count[q as usize] > k)
                .max_by_key(|&q| order.rank(class, q))
                .expect("an available block exists")
        })
        .collect();
    let mut members = vec![Vec::new(); m];
    for (v, &q) in promised.iter().enumerate() {
        members[q as usize].push(v as u32);
    }

    let inc = g.incidence();
    let results: Vec<(BlockOutcome, Vec<(usize, u32)>)> = (0..m)
        .into_par_iter()
        .map(|q| {
            let mut inside = vec![false; g.vertex_count()];
            for &v in &members[q] {
                inside[v as usize] = true;
            }
            let mut colours = vec![None; g.vertex_count()];
            let allowed = |v: usize| -> Vec<u32> {
                lists.list(v).iter().copied().filter(|&c| block_of[c as usize] == q as u32).collect()
            };
            let stuck = greedy_on(g, &inside, allowed, &mut colours, &inc).err();
            let mut class_sizes = vec![0; g.r()];
            for &v in &members[q] {
                class_sizes[g.class_of(v)] += 1;
            }
            let outcome = BlockOutcome {
                block: q as u32,
                class_sizes,
                edges: g.induced_edge_count(&inside),
                degeneracy: g.degeneracy(Some(&inside)).k,
                stuck,
            };
            let chosen = members[q]
                .iter()
                .filter_map(|&v| colours[v as usize].map(|c| (v as usize, c)))
                .collect();
            (outcome, chosen)
        })
        .collect();

    let mut colouring = Colouring::blank(g.vertex_count());
    let mut outcomes = Vec::with_capacity(m);
    for (outcome, chosen) in results {
        for (v, c) in chosen {
            colouring.set(v, c, Tag::Block(outcome.block));
        }
        outcomes.push(outcome);
    }
    let failed_blocks: Vec<u32> = outcomes.iter().filter(|o| o.stuck.is_some()).map(|o| o.block).collect();
    let validation = validate(g, lists, &colouring);
    let success = failed_blocks.is_empty() && validation.ok;
    let plan = BlockPlan { k, k_real, delta, m, m_real, t, padded_t, blocks, order, promised, members };
    Ok(BlockRun { colouring, plan, outcomes, failed_blocks, validation, success })
}
