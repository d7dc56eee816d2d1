//! The popularity argument behind the lower bound, replayed on a colouring.

use serde::{Deserialize, Serialize};

use super::{covers, popularity_order, Colouring, ListAssignment};
use crate::analytic::{beta_of_alpha, FModel};
use crate::error::{parameter, Result};
use crate::hypergraph::{off_max_product, threshold_i, Hypergraph};
use crate::preference::i_max;

/// Outcome of looking for a popular colour whose class would contradict `I`.
///
/// This demonstrates the mechanism on one colouring; it certifies no bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LbCertificate {
    pub alpha: f64,
    pub beta: f64,
    /// Model value of `f(r, beta)`.
    pub f_threshold: f64,
    /// Chosen colour, if one has all positions at least `beta` and product at least `f_threshold`.
    pub colour: Option<u32>,
    pub positions: Vec<f64>,
    pub position_product: f64,
    /// Sizes of the chosen colour class in each vertex class.
    pub class_sizes: Vec<usize>,
    pub class_product: f64,
    /// Lower bound `prod n x_i^ell / (4 t)` the covering lists predict for `class_product`.
    pub predicted_product: f64,
    /// Whether the lists cover every set of colours at or below the chosen one.
    pub covering_holds: bool,
    pub independent: bool,
    pub i_threshold: f64,
    /// The colour class is independent yet its product reaches the `I` threshold.
    pub contradicts_i: bool,
    pub label: String,
}

pub fn lb_certificate(
    g: &Hypergraph,
    lists: &ListAssignment,
    c: &Colouring,
    d: Option<f64>,
    model: &FModel,
) -> Result<LbCertificate> {
    let r = g.r();
    if model.r != r {
        return Err(parameter!("model is for r={}, graph has r={r}", model.r));
    }
    if !c.is_total() || c.colours.len() != g.vertex_count() {
        return Err(parameter!("colouring must give every vertex a colour"));
    }
    let n = g.n();
    let t = lists.t();
    let d = d.unwrap_or_else(|| g.average_degree());
    let alpha = if n > 1 && d > 1.0 { d.ln() / (n as f64).ln() } else { 0.0 };
    let alpha = alpha.min(r as f64 - 1.0);
    let beta = if alpha > 0.0 { beta_of_alpha(alpha, model)? } else { 0.0 };
    let f_threshold = model.eval(beta)?;
    let order = popularity_order(g, c, t)?;

    let mut best: Option<(u32, f64)> = None;
    for col in 0..t as u32 {
        let x: Vec<f64> = (0..r).map(|i| order.rank(i, col) as f64 / t as f64).collect();
        let product = off_max_product_f64(&x);
        if x.iter().all(|&xi| xi >= beta) && product >= f_threshold && best.map_or(true, |b| product > b.1) {
            best = Some((col, product));
        }
    }

    let mut report = LbCertificate {
        alpha,
        beta,
        f_threshold,
        colour: best.map(|b| b.0),
        positions: Vec::new(),
        position_product: best.map_or(0.0, |b| b.1),
        class_sizes: vec![0; r],
        class_product: 0.0,
        predicted_product: 0.0,
        covering_holds: false,
        independent: true,
        i_threshold: threshold_i(n, r, d),
        contradicts_i: false,
        label: "mechanism demonstration".to_string(),
    };
    let Some((green, _)) = best else {
        return Ok(report);
    };
    report.positions = (0..r).map(|i| order.rank(i, green) as f64 / t as f64).collect();
    let members: Vec<bool> = c.colours.iter().map(|&col| col == Some(green)).collect();
    for v in (0..g.vertex_count()).filter(|&v| members[v]) {
        report.class_sizes[g.class_of(v as u32)] += 1;
    }
    report.class_product = off_max_product(&report.class_sizes);
    report.independent = g.induced_edge_count(&members) == 0;
    let ell = lists.ell() as i32;
    let per_class: Vec<f64> =
        report.positions.iter().map(|&x| n as f64 * x.powi(ell) / (4.0 * t as f64)).collect();
    let skip = i_max(&report.positions);
    report.predicted_product = per_class.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v).product();
    report.covering_holds = (0..r).all(|i| {
        let rank = order.rank(i, green) as usize;
        let mut z = vec![false; t];
        for &col in &order.orders()[i][..rank] {
            z[col as usize] = true;
        }
        let class: Vec<Vec<u32>> = (i * n..(i + 1) * n).map(|v| lists.list(v).to_vec()).collect();
        covers(&class, t, &z)
    });
    report.contradicts_i = report.independent && report.class_product >= report.i_threshold;
    Ok(report)
}

fn off_max_product_f64(x: &[f64]) -> f64 {
    let skip = i_max(x);
    x.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v).product()
}
