//! `r`-covers: perfect matchings on the grid
//! `theta + (1/(r+1) - theta) * j / n`, `j = 1..=rn`.
//!
//! Vertices are referred to by their grid index `j` (1-based). All vertex
//! values share the denominator `b * n * (r+1)` when `theta = a/b`, so exact
//! comparisons of edge products reduce to comparisons of integer numerators.

mod convert;
mod exact;
mod optimize;

pub use convert::{cover_to_preference, preference_to_cover, CoverFromOrder, OrderFromCover};
pub use exact::{h_exact, matching_count, HExact, DEFAULT_MATCHING_BUDGET};
pub use optimize::{optimize_cover, Objective, OptimizeParams, OptimizeResult, TraceRow};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{domain, parameter, Error, Result};
use crate::rational::{self, Rational, RationalJson};

/// The vertex grid of an `(r, theta, n)`-cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub r: usize,
    pub theta: Rational,
    pub n: usize,
}

impl Grid {
    pub fn new(r: usize, theta: Rational, n: usize) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(parameter!("cover arity and edge count must be positive (r={r}, n={n})"));
        }
        check_theta(&theta, r)?;
        Ok(Self { r, theta, n })
    }

    pub fn len(&self) -> usize {
        self.r * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Value of grid vertex `j` (1-based).
    pub fn value(&self, j: u32) -> Rational {
        let top = rational::ratio(1, self.r as i64 + 1);
        &self.theta + (top - &self.theta) * rational::ratio(j as i64, self.n as i64)
    }

    /// Common denominator `D` and numerators `N_j` with `value(j) = N_j / D`.
    pub fn integer_form(&self) -> (BigUint, Vec<BigUint>) {
        let a = self.theta.numer();
        let b = self.theta.denom();
        let r1 = BigInt::from(self.r + 1);
        let n = BigInt::from(self.n);
        let base: BigInt = a * &n * &r1;
        let step: BigInt = b - a * &r1;
        let den: BigInt = b * &n * &r1;
        let nums = (1..=self.len())
            .map(|j| {
                let v: BigInt = &base + &step * BigInt::from(j);
                v.to_biguint().expect("grid values are positive")
            })
            .collect();
        (den.to_biguint().expect("positive denominator"), nums)
    }

    pub fn values_f64(&self) -> Vec<f64> {
        let (den, nums) = self.integer_form();
        let den = den.to_f64().unwrap_or(f64::INFINITY);
        nums.iter().map(|v| v.to_f64().unwrap_or(f64::INFINITY) / den).collect()
    }
}

pub(crate) fn check_theta(theta: &Rational, r: usize) -> Result<()> {
    let top = rational::ratio(1, r as i64 + 1);
    if theta.is_negative() || *theta >= top {
        return Err(domain!("theta={} outside [0, 1/{})", rational::display(theta), r + 1));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoverJson", into = "CoverJson")]
pub struct Cover {
    grid: Grid,
    /// Each edge sorted ascending; edges sorted lexicographically.
    edges: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CoverJson {
    r: usize,
    theta: RationalJson,
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl TryFrom<CoverJson> for Cover {
    type Error = Error;

    fn try_from(raw: CoverJson) -> Result<Self> {
        let grid = Grid::new(raw.r, raw.theta.to_rational()?, raw.n)?;
        Cover::new(grid, raw.edges)
    }
}

impl From<Cover> for CoverJson {
    fn from(c: Cover) -> Self {
        CoverJson {
            r: c.grid.r,
            theta: RationalJson::from_rational(&c.grid.theta).expect("cover theta fits in i128"),
            n: c.grid.n,
            edges: c.edges,
        }
    }
}

/// `h(Q)` together with where it is attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverScore {
    #[serde(with = "rational::serde_str")]
    pub hmax: Rational,
    pub argmax_edge: usize,
    /// Sum over vertices of `-ln v`.
    pub sum_log: f64,
    pub sum_products: f64,
}

impl Cover {
    /// Validate and canonicalise an edge list (1-based grid indices).
    pub fn new(grid: Grid, mut edges: Vec<Vec<u32>>) -> Result<Self> {
        let len = grid.len();
        if edges.len() != grid.n {
            return Err(Error::Input(format!("expected {} edges, found {}", grid.n, edges.len())));
        }
        let mut seen = vec![false; len + 1];
        for e in &mut edges {
            if e.len() != grid.r {
                return Err(Error::Input(format!("edge {e:?} does not have {} vertices", grid.r)));
            }
            for &j in e.iter() {
                let j = j as usize;
                if j == 0 || j > len || std::mem::replace(&mut seen[j], true) {
                    return Err(Error::Input(format!(
                        "edges do not partition the grid [1, {len}] (vertex {j})"
                    )));
                }
            }
            e.sort_unstable();
        }
        edges.sort();
        Ok(Self { grid, edges })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn r(&self) -> usize {
        self.grid.r
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn theta(&self) -> &Rational {
        &self.grid.theta
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    /// Exact `h(Q)`: the largest edge product.
    pub fn score(&self) -> CoverScore {
        let (den, nums) = self.grid.integer_form();
        let mut best: Option<(BigUint, usize)> = None;
        let mut sum_products = 0.0;
        let values = self.grid.values_f64();
        for (idx, e) in self.edges.iter().enumerate() {
            let p = e.iter().fold(BigUint::one(), |acc, &j| acc * &nums[j as usize - 1]);
            sum_products += e.iter().map(|&j| values[j as usize - 1]).product::<f64>();
            if best.as_ref().map_or(true, |(b, _)| p > *b) {
                best = Some((p, idx));
            }
        }
        let (num, argmax_edge) = best.expect("covers have at least one edge");
        let hmax = Rational::new(BigInt::from(num), BigInt::from(den.pow(self.grid.r as u32)));
        let sum_log = values.iter().map(|v| -v.ln()).sum();
        CoverScore { hmax, argmax_edge, sum_log, sum_products }
    }

    pub fn h(&self) -> Rational {
        self.score().hmax
    }

    /// The cover with the same edge structure on the `theta'` grid.
    pub fn similar(&self, theta: Rational) -> Result<Self> {
        let grid = Grid::new(self.grid.r, theta, self.grid.n)?;
        Ok(Self { grid, edges: self.edges.clone() })
    }

    /// The `(r, theta, kn)`-cover containing the shifted copies `e, e - x/k, ...`
    /// of every edge, where `x` is the grid step.
    pub fn replicate(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(parameter!("replication factor must be at least 1"));
        }
        let grid = Grid::new(self.grid.r, self.grid.theta.clone(), self.grid.n * k)?;
        let k = k as u32;
        let edges = self
            .edges
            .iter()
            .flat_map(|e| (0..k).map(move |t| e.iter().map(|&j| j * k - t).collect()))
            .collect();
        Self::new(grid, edges)
    }

    /// Whether `theta^r < h(Q) <= (theta + r(1/(r+1) - theta))^r`.
    pub fn h_in_range(&self) -> bool {
        let h = self.h();
        let r = self.grid.r as i32;
        let theta = &self.grid.theta;
        let top = rational::ratio(1, r as i64 + 1);
        let upper = theta + (top - theta) * Rational::from_integer(BigInt::from(r));
        theta.pow(r) < h && h <= upper.pow(r)
    }
}

/// Convenience: a cover is the unique single-edge matching when `n = 1`.
pub fn single_edge(r: usize, theta: Rational) -> Result<Cover> {
    let grid = Grid::new(r, theta, 1)?;
    Cover::new(grid, vec![(1..=r as u32).collect()])
}
