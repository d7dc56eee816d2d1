//! Closed forms and root finding: the geometric-mean bound `w(r, theta)`, its
//! peak `phi_r`, the plateau bound `H(r, theta)`, models of `f(r, theta)`,
//! `beta(alpha)` and `g(r, alpha)`.
//!
//! Everything here is `f64`. Logarithms are natural.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cover::{optimize_cover, Cover, OptimizeParams};
use crate::error::{domain, parameter, Result};
use crate::rational;

/// Absolute tolerance for bisection.
pub const ROOT_TOLERANCE: f64 = 1e-12;
const MAX_BISECTIONS: usize = 200;
/// Sample points for locating the first sign change.
const SCAN_PANELS: usize = 10_000;

fn top(r: usize) -> f64 {
    1.0 / (r as f64 + 1.0)
}

fn x_ln_x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `ln w(r, theta)` for `theta` in `[0, 1/(r+1)]`, the right end taken as the limit.
fn ln_w(r: usize, theta: f64) -> f64 {
    let rf = r as f64;
    let c = top(r);
    let s = c - theta;
    if s <= 0.0 {
        return rf * c.ln();
    }
    if theta < c / 2.0 {
        let a = 1.0 - c - (rf - 1.0) * theta;
        return -rf + (x_ln_x(a) - x_ln_x(theta)) / s;
    }
    // a = c + (r-1)s and theta = c - s; expand around s = 0 to avoid 0/0.
    let up = ((rf - 1.0) * s / c).ln_1p();
    let down = (-s / c).ln_1p();
    -rf + rf * c.ln() + c * (up - down) / s + (rf - 1.0) * up + down
}

fn check_w_domain(r: usize, theta: f64) -> Result<()> {
    if r == 0 {
        return Err(parameter!("r must be at least 1"));
    }
    if !(0.0..top(r)).contains(&theta) {
        return Err(domain!("theta={theta} outside [0, 1/{})", r + 1));
    }
    Ok(())
}

/// The geometric-mean lower bound on `h(r, theta)`.
pub fn w(r: usize, theta: f64) -> Result<f64> {
    check_w_domain(r, theta)?;
    Ok(ln_w(r, theta).exp())
}

/// `theta (1 - 1/(r+1) - (r-1) theta)^(r-1)`, the product of the edge made of
/// the smallest vertex and the `r-1` largest ones.
pub fn extreme_edge_product(r: usize, theta: f64) -> f64 {
    let rf = r as f64;
    theta * (1.0 - top(r) - (rf - 1.0) * theta).powi(r as i32 - 1)
}

/// Smallest `x` in `(0, hi)` with `sign(x) >= 0`, given `sign < 0` near 0.
fn first_crossing(hi: f64, mut sign: impl FnMut(f64) -> f64) -> Option<f64> {
    // Log-spaced from hi * 1e-15 so tiny roots are resolved as well as large ones.
    let span = 15.0 * std::f64::consts::LN_10;
    let point = |i: usize| hi * (-span * (1.0 - i as f64 / SCAN_PANELS as f64)).exp();
    let mut prev = point(0);
    if sign(prev) >= 0.0 {
        return Some(bisect(0.0, prev, &mut sign));
    }
    for i in 1..SCAN_PANELS {
        let x = point(i);
        if sign(x) >= 0.0 {
            return Some(bisect(prev, x, &mut sign));
        }
        prev = x;
    }
    None
}

/// Bisection for a sign change of `f` on `[lo, hi]` with `f(lo) < 0 <= f(hi)`.
fn bisect(mut lo: f64, mut hi: f64, f: &mut impl FnMut(f64) -> f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ROOT_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `phi_r`: the smallest positive root of `extreme_edge_product(r, theta) = w(r, theta)`.
///
/// The two sides always meet at `theta = 1/(r+1)`; that endpoint is returned
/// when there is no root inside the interval (the case for `r = 1, 2`).
pub fn phi(r: usize) -> Result<f64> {
    if r == 0 {
        return Err(parameter!("r must be at least 1"));
    }
    static CACHE: [OnceLock<f64>; 32] = [const { OnceLock::new() }; 32];
    match CACHE.get(r) {
        Some(slot) => Ok(*slot.get_or_init(|| solve_phi(r))),
        None => Ok(solve_phi(r)),
    }
}

fn solve_phi(r: usize) -> f64 {
    let c = top(r);
    let gap = |t: f64| extreme_edge_product(r, t).ln() - ln_w(r, t);
    first_crossing(c, gap).unwrap_or(c)
}

/// The plateau bound: `w(r, phi_r)` up to `phi_r`, then `w(r, theta)`.
#[allow(non_snake_case)]
pub fn H(r: usize, theta: f64) -> Result<f64> {
    if r == 0 {
        return Err(parameter!("r must be at least 1"));
    }
    if !(0.0..=top(r)).contains(&theta) {
        return Err(domain!("theta={theta} outside [0, 1/{}]", r + 1));
    }
    let peak = phi(r)?;
    Ok(ln_w(r, theta.max(peak)).exp())
}

/// `(((r-1)/(er))^(r-1), (r-1)!/r^(r-1))`, bracketing `f(r, 0)`.
pub fn bounds_f0(r: usize) -> Result<(f64, f64)> {
    if r < 2 {
        return Err(parameter!("bounds on f(r, 0) need r >= 2"));
    }
    let rf = r as f64;
    let lower = ((rf - 1.0) / (std::f64::consts::E * rf)).powi(r as i32 - 1);
    let upper = (1..r).map(|i| i as f64 / rf).product();
    Ok((lower, upper))
}

/// `(theta, value)` knots, sorted by `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knots(Vec<(f64, f64)>);

impl Knots {
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(parameter!("a knot table needs at least one point"));
        }
        if points.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return Err(parameter!("knots must be finite"));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|b, a| {
            let same = a.0 == b.0;
            if same {
                a.1 = a.1.min(b.1);
            }
            same
        });
        Ok(Self(points))
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.0
    }

    /// Replace each value by the running minimum so the table is non-increasing.
    fn monotone(mut self) -> Self {
        let mut low = f64::INFINITY;
        for p in &mut self.0 {
            low = low.min(p.1);
            p.1 = low;
        }
        self
    }

    fn range(&self) -> (f64, f64) {
        (self.0[0].0, self.0[self.0.len() - 1].0)
    }

    /// Piecewise-linear interpolation; `None` outside the knot range.
    fn at(&self, theta: f64) -> Option<f64> {
        let (lo, hi) = self.range();
        if theta < lo || theta > hi {
            return None;
        }
        let i = self.0.partition_point(|p| p.0 <= theta);
        if i == 0 {
            return Some(self.0[0].1);
        }
        let (t0, v0) = self.0[i - 1];
        if i == self.0.len() || t0 == theta {
            return Some(v0);
        }
        let (t1, v1) = self.0[i];
        Some(v0 + (v1 - v0) * (theta - t0) / (t1 - t0))
    }

    /// Parse `theta,value` lines; a header line is skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split(',').map(str::trim);
            let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
                return Err(crate::Error::Input(format!("line {}: expected theta,value", lineno + 1)));
            };
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(t), Ok(v)) => points.push((t, v)),
                _ if lineno == 0 => continue,
                _ => return Err(crate::Error::Input(format!("line {}: not numeric", lineno + 1))),
            }
        }
        Self::new(points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelKind {
    /// The known values `f(2, .) = 1/2` and `f(3, .) = 1/9`.
    ExactSmallR,
    /// `H(r-1, theta)`, a lower bound on `f(r, theta)`.
    LowerH,
    /// Values `h(Q)` of covers found by the optimizer, upper bounds on `f(r, theta)`.
    UpperCover { knots: Knots },
    /// Arbitrary knots, clamped below by the lower-H model and above by `upper` if given.
    Table { knots: Knots, upper: Option<Knots> },
}

/// A model of `f(r, theta)` on `[0, 1/r]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FModel {
    pub r: usize,
    #[serde(flatten)]
    pub kind: ModelKind,
}

impl FModel {
    pub fn exact(r: usize) -> Result<Self> {
        if r != 2 && r != 3 {
            return Err(parameter!("f(r, theta) is known exactly only for r = 2, 3, got r={r}"));
        }
        Ok(Self { r, kind: ModelKind::ExactSmallR })
    }

    pub fn lower_h(r: usize) -> Result<Self> {
        check_r(r)?;
        Ok(Self { r, kind: ModelKind::LowerH })
    }

    /// Upper model from covers of arity `r - 1`; the endpoint `(1/r, (1/r)^(r-1))` is added.
    pub fn upper_cover(r: usize, covers: &[Cover]) -> Result<Self> {
        check_r(r)?;
        let mut points = Vec::with_capacity(covers.len() + 1);
        for q in covers {
            if q.r() + 1 != r {
                return Err(parameter!("cover arity {} does not model f({r}, .)", q.r()));
            }
            points.push((rational::to_f64(q.theta()), rational::to_f64(&q.h())));
        }
        points.push((1.0 / r as f64, endpoint(r)));
        Ok(Self { r, kind: ModelKind::UpperCover { knots: Knots::new(points)?.monotone() } })
    }

    /// Run the optimizer on `steps` evenly spaced `theta` in `[0, 1/r)`,
    /// each rounded to denominator `den`.
    pub fn optimized(r: usize, steps: usize, n: usize, den: u64, params: &OptimizeParams) -> Result<Self> {
        check_r(r)?;
        let mut covers = Vec::with_capacity(steps);
        for i in 0..steps {
            let theta = rational::from_f64_rounded(i as f64 / (steps as f64 * r as f64), den)?;
            covers.push(optimize_cover(r - 1, &theta, n, params)?.cover);
        }
        Self::upper_cover(r, &covers)
    }

    pub fn table(r: usize, knots: Knots, upper: Option<Knots>) -> Result<Self> {
        check_r(r)?;
        Ok(Self { r, kind: ModelKind::Table { knots: knots.monotone(), upper: upper.map(Knots::monotone) } })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::ExactSmallR => "exact-small-r",
            ModelKind::LowerH => "lower-H",
            ModelKind::UpperCover { .. } => "upper-cover",
            ModelKind::Table { .. } => "table",
        }
    }

    /// Modelled `f(r, theta)` for `theta` in `[0, 1/r]`.
    pub fn eval(&self, theta: f64) -> Result<f64> {
        let r = self.r;
        let end = 1.0 / r as f64;
        if !(0.0..=end).contains(&theta) {
            return Err(domain!("theta={theta} outside [0, 1/{r}]"));
        }
        let lower = || H(r - 1, theta);
        match &self.kind {
            ModelKind::ExactSmallR => Ok(endpoint(r)),
            ModelKind::LowerH => lower(),
            ModelKind::UpperCover { knots } => {
                let v = knots
                    .at(theta)
                    .ok_or_else(|| domain!("theta={theta} below the first cover knot"))?;
                Ok(v.max(lower()?))
            }
            ModelKind::Table { knots, upper } => {
                let v = knots
                    .at(theta)
                    .ok_or_else(|| domain!("theta={theta} outside the table range"))?;
                let v = match upper.as_ref().and_then(|u| u.at(theta)) {
                    Some(u) => v.min(u),
                    None => v,
                };
                Ok(v.max(lower()?))
            }
        }
    }
}

fn check_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(parameter!("f(r, theta) needs r >= 2, got r={r}"));
    }
    Ok(())
}

/// `f(r, 1/r) = (1/r)^(r-1)`.
fn endpoint(r: usize) -> f64 {
    (1.0 / r as f64).powi(r as i32 - 1)
}

/// Convenience wrapper matching the other free functions.
pub fn f_model(r: usize, theta: f64, model: &FModel) -> Result<f64> {
    if model.r != r {
        return Err(parameter!("model is for r={}, asked for r={r}", model.r));
    }
    model.eval(theta)
}

/// The unique `beta` in `(0, 1/r]` with `beta^alpha = f(r, beta)`.
pub fn beta_of_alpha(alpha: f64, model: &FModel) -> Result<f64> {
    let r = model.r;
    let max = r as f64 - 1.0;
    if !(alpha > 0.0 && alpha <= max) {
        return Err(domain!("alpha={alpha} outside (0, {max}]"));
    }
    let end = 1.0 / r as f64;
    // increasing in beta: alpha ln beta grows, ln f(beta) shrinks
    let gap = |b: f64| alpha * b.ln() - model.eval(b).map_or(f64::NAN, f64::ln);
    let at_end = gap(end);
    if at_end.is_nan() {
        return Err(domain!("model cannot be evaluated at theta=1/{r}"));
    }
    if at_end <= 0.0 {
        return Ok(end);
    }
    let mut lo = 0.0;
    let mut hi = end;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ROOT_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let v = gap(mid);
        if v.is_nan() {
            return Err(domain!("model cannot be evaluated at theta={mid}"));
        }
        if v >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `g(r, alpha) = -1 / log_r f(r, beta(alpha))`, with `g(r, 0)` read off at `theta = 0`.
pub fn g(alpha: f64, model: &FModel) -> Result<f64> {
    Ok(g_sample(alpha, model)?.g)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GSample {
    pub alpha: f64,
    /// `None` at `alpha = 0`, where `g` is defined by continuity instead.
    pub beta: Option<f64>,
    pub g: f64,
}

pub fn g_sample(alpha: f64, model: &FModel) -> Result<GSample> {
    let r = model.r;
    if !(0.0..=r as f64 - 1.0).contains(&alpha) {
        return Err(domain!("alpha={alpha} outside [0, {}]", r - 1));
    }
    let (beta, f) = if alpha == 0.0 {
        (None, model.eval(0.0)?)
    } else {
        let b = beta_of_alpha(alpha, model)?;
        (Some(b), model.eval(b)?)
    };
    Ok(GSample { alpha, beta, g: -(r as f64).ln() / f.ln() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GCurve {
    pub r: usize,
    pub model: String,
    pub samples: Vec<GSample>,
}

impl GCurve {
    pub const CSV_HEADER: &'static str = "alpha,beta,g";

    pub fn csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for s in &self.samples {
            let beta = s.beta.map_or(String::new(), |b| format!("{b:.12}"));
            out.push_str(&format!("{:.12},{},{:.12}\n", s.alpha, beta, s.g));
        }
        out
    }
}

/// `g` on `steps + 1` evenly spaced `alpha` in `[alpha_min, alpha_max]`.
pub fn g_table(alpha_min: f64, alpha_max: f64, steps: usize, model: &FModel) -> Result<GCurve> {
    if steps == 0 || alpha_min > alpha_max {
        return Err(parameter!("need steps >= 1 and alpha_min <= alpha_max"));
    }
    let samples = (0..=steps)
        .map(|i| {
            let alpha = alpha_min + (alpha_max - alpha_min) * i as f64 / steps as f64;
            g_sample(alpha, model)
        })
        .collect::<Result<_>>()?;
    Ok(GCurve { r: model.r, model: model.name().to_string(), samples })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    pub theta: f64,
    pub lower_h: f64,
    pub upper_cover: Option<f64>,
}

pub const ENVELOPE_CSV_HEADER: &str = "theta,lower_H,upper_cover";

/// The lower-H model beside an upper model on `steps + 1` points of `[0, 1/r]`.
pub fn f_envelope(r: usize, steps: usize, upper: Option<&FModel>) -> Result<Vec<EnvelopeRow>> {
    check_r(r)?;
    if steps == 0 {
        return Err(parameter!("need at least one step"));
    }
    let lower = FModel::lower_h(r)?;
    (0..=steps)
        .map(|i| {
            let theta = i as f64 / (steps as f64 * r as f64);
            Ok(EnvelopeRow {
                theta,
                lower_h: lower.eval(theta)?,
                upper_cover: upper.map(|u| u.eval(theta)).transpose()?,
            })
        })
        .collect()
}

pub fn envelope_csv(rows: &[EnvelopeRow]) -> String {
    let mut out = format!("{ENVELOPE_CSV_HEADER}\n");
    for row in rows {
        let upper = row.upper_cover.map_or(String::new(), |u| format!("{u:.12}"));
        out.push_str(&format!("{:.12},{:.12},{}\n", row.theta, row.lower_h, upper));
    }
    out
}

/// Estimate of the end of the constant stretch of `h(r, .) = f(r+1, .)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarphiEstimate {
    pub r: usize,
    pub value: f64,
    pub model: String,
    /// Always `"model-dependent"`: the true value needs the true `h(r, theta)`.
    pub status: String,
}

/// Smallest root of `extreme_edge_product(r, theta) = f(r+1, theta)` under `model`.
pub fn varphi_estimate(model: &FModel) -> Result<VarphiEstimate> {
    let r = model.r - 1;
    if r == 0 {
        return Err(parameter!("model must be for f(r+1, .) with r >= 1"));
    }
    let c = top(r);
    let mut failure = None;
    let gap = |t: f64| match model.eval(t) {
        Ok(v) => extreme_edge_product(r, t).ln() - v.ln(),
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };
    let value = first_crossing(c, gap).unwrap_or(c);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(VarphiEstimate { r, value, model: model.name().to_string(), status: "model-dependent".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn w_closed_forms() {
        let e = std::f64::consts::E;
        assert!(close(w(3, 0.0).unwrap(), (3.0 / (4.0 * e)).powi(3), 1e-15));
        assert!(close(w(3, 0.0).unwrap(), 0.021005, 2e-6));
        assert!(close(w(1, 0.0).unwrap(), 1.0 / (2.0 * e), 1e-15));
        assert!(w(3, 0.25).is_err());
        assert!(w(3, -0.01).is_err());
    }

    #[test]
    fn w_branches_agree() {
        for r in 1..=8 {
            let c = top(r);
            let t = c / 2.0;
            let rf = r as f64;
            let a = 1.0 - c - (rf - 1.0) * t;
            let direct = -rf + (x_ln_x(a) - x_ln_x(t)) / (c - t);
            assert!(close(direct, ln_w(r, t), 1e-12), "r={r}");
        }
    }

    #[test]
    fn w_limit_at_top() {
        for r in 1..=8 {
            let c = top(r);
            let lim = c.powi(r as i32);
            assert!(close(w(r, c * (1.0 - 1e-9)).unwrap(), lim, 1e-6 * lim + 1e-12), "r={r}");
            assert!(close(H(r, c).unwrap(), lim, 1e-15));
        }
    }

    #[test]
    fn phi_values() {
        let p3 = phi(3).unwrap();
        assert!(close(p3, 0.070906, 1e-5), "{p3}");
        assert!(close(w(3, p3).unwrap(), 0.026227, 1e-5));
        assert!(close(H(3, 0.0).unwrap(), w(3, p3).unwrap(), 0.0));
        assert!(close(H(3, p3).unwrap(), w(3, p3).unwrap(), 0.0));
        for (r, want) in [(4, 0.020326), (5, 0.006633), (6, 0.00231), (7, 0.000831), (8, 0.000304)] {
            let p = phi(r).unwrap();
            assert!(close(p, want, 2e-6), "r={r} phi={p}");
        }
    }

    #[test]
    fn phi_without_interior_root() {
        assert_eq!(phi(1).unwrap(), 0.5);
        assert_eq!(phi(2).unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn phi_below_peak_of_extreme_product() {
        for r in 3..=8 {
            let bound = 1.0 / ((r * r - 1) as f64);
            let p = phi(r).unwrap();
            assert!(p < bound, "r={r}");
            let h = 1e-7;
            assert!(extreme_edge_product(r, p + h) > extreme_edge_product(r, p - h));
        }
        assert!(phi(2).unwrap() <= 1.0 / 3.0);
    }

    #[test]
    fn bounds() {
        let e = std::f64::consts::E;
        let (lo, hi) = bounds_f0(2).unwrap();
        assert!(close(lo, 1.0 / (2.0 * e), 1e-15) && close(hi, 0.5, 1e-15));
        let (lo, hi) = bounds_f0(3).unwrap();
        assert!(close(lo, 0.0601, 1e-4) && close(hi, 2.0 / 9.0, 1e-15));
        let (lo, hi) = bounds_f0(4).unwrap();
        assert!(close(lo, 0.02100, 1e-5) && close(hi, 0.09375, 1e-15));
        for r in 2..=12 {
            let (lo, hi) = bounds_f0(r).unwrap();
            assert!(lo < hi);
        }
        assert!(bounds_f0(1).is_err());
    }

    #[test]
    fn exact_model() {
        let m2 = FModel::exact(2).unwrap();
        assert_eq!(m2.eval(0.2).unwrap(), 0.5);
        assert_eq!(beta_of_alpha(1.0, &m2).unwrap(), 0.5);
        let m3 = FModel::exact(3).unwrap();
        assert!(close(beta_of_alpha(2.0, &m3).unwrap(), 1.0 / 3.0, 1e-15));
        assert!(close(g(0.0, &m2).unwrap(), 1.0, 1e-15));
        assert!(close(g(1.3, &m3).unwrap(), 0.5, 1e-15));
        assert!(FModel::exact(4).is_err());
        assert!(f_model(3, 0.1, &m2).is_err());
    }

    #[test]
    fn lower_h_model() {
        let m = FModel::lower_h(4).unwrap();
        assert!(close(m.eval(0.0).unwrap(), 0.026227, 1e-5));
        for r in 2..=8 {
            let m = FModel::lower_h(r).unwrap();
            let end = 1.0 / r as f64;
            assert!(close(m.eval(end).unwrap(), endpoint(r), 1e-15));
        }
        let g40 = g(0.0, &m).unwrap();
        assert!(close(g40, 0.3807, 5e-4), "{g40}");
    }

    #[test]
    fn g_endpoint_and_monotone() {
        for r in 2..=8 {
            let m = FModel::lower_h(r).unwrap();
            let top = g(r as f64 - 1.0, &m).unwrap();
            assert!(close(top, 1.0 / (r as f64 - 1.0), 1e-9), "r={r}");
            let curve = g_table(0.0, r as f64 - 1.0, 40, &m).unwrap();
            for pair in curve.samples.windows(2) {
                assert!(pair[1].g <= pair[0].g + 1e-12, "r={r}");
                if let (Some(a), Some(b)) = (pair[0].beta, pair[1].beta) {
                    assert!(b > a, "r={r}");
                }
            }
        }
    }

    #[test]
    fn table_model_is_clamped() {
        let knots = Knots::new(vec![(0.0, 1.0), (0.25, 0.0)]).unwrap();
        let m = FModel::table(4, knots, None).unwrap();
        assert_eq!(m.eval(0.0).unwrap(), 1.0);
        // the linear value 0 at 1/4 is raised to the lower bound
        assert!(close(m.eval(0.25).unwrap(), endpoint(4), 1e-15));
        let short = FModel::table(4, Knots::new(vec![(0.1, 0.05)]).unwrap(), None).unwrap();
        assert!(short.eval(0.0).is_err());
        let parsed = Knots::from_csv("theta,value\n0,0.03\n0.25,0.015625\n").unwrap();
        assert_eq!(parsed.points().len(), 2);
        assert!(Knots::from_csv("0,x\n1,2\n0.5,y").is_err());
    }

    #[test]
    fn varphi_under_lower_h_is_phi() {
        let m = FModel::lower_h(4).unwrap();
        let v = varphi_estimate(&m).unwrap();
        assert!(close(v.value, phi(3).unwrap(), 1e-9));
        assert_eq!(v.status, "model-dependent");
    }

    #[test]
    fn csv_shapes() {
        let m = FModel::exact(3).unwrap();
        let curve = g_table(0.0, 2.0, 4, &m).unwrap();
        let csv = curve.csv();
        assert!(csv.starts_with("alpha,beta,g\n"));
        assert_eq!(csv.lines().count(), 6);
        let rows = f_envelope(4, 5, None).unwrap();
        assert!(envelope_csv(&rows).starts_with("theta,lower_H,upper_cover\n"));
    }
}
