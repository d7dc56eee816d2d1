//! Conversions between `(r, m)`-preference orders and `(r-1, theta, n)`-covers.
//!
//! Both directions work on the integer scale `1..=rm`, where `i` stands for
//! the value `i / rm`. The scale splits into
//!
//! * `A = 1..=rk`, the `rk` smallest values;
//! * the `(r-1)n` values that become the vertices of the smaller cover;
//! * `C`, the `r(r-2)k` values just below `B`;
//! * `B`, the `m` values above `1 - 1/r`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{Cover, Grid};
use crate::error::{parameter, Error, Result};
use crate::preference::{self, FValue, PreferenceOrder};
use crate::rational::{self, Rational};

/// Output of [`preference_to_cover`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverFromOrder {
    /// The `(r-1, theta, n)`-cover.
    pub cover: Cover,
    /// The `(r-1, k/m, n)`-cover before re-gridding to `theta`.
    pub stripped: Cover,
    pub k: usize,
    pub n: usize,
    pub f_value: FValue,
    /// `f_P(theta) + (r-1) 2^(r-1) / m`, an upper bound on `h(cover)`.
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
}

/// Output of [`cover_to_preference`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderFromCover {
    /// An `(r, rm)`-preference order.
    pub order: PreferenceOrder,
    pub m: usize,
    pub k: usize,
    /// `h(Q) + (r-1) 2^(r-1) / m`, an upper bound on `f_P(theta)`.
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
}

/// Number of values in `A`: `k = ceil(theta m) - 1`, taken as 0 when `theta m` is 0.
fn offset(theta: &Rational, m: usize) -> usize {
    let scaled = theta * Rational::from_integer(BigInt::from(m));
    let ceil: BigInt = scaled.ceil().to_integer();
    if ceil.is_positive() {
        usize::try_from(ceil - 1).expect("k is below m")
    } else {
        0
    }
}

fn slack(r: usize, m: usize) -> Rational {
    rational::ratio(((r - 1) << (r - 1)) as i64, m as i64)
}

struct Layout {
    r: u32,
    rk: u32,
    c_lo: u32,
    b_lo: u32,
}

impl Layout {
    fn new(r: usize, m: usize, k: usize) -> Self {
        let rm = (r * m) as u32;
        let b_lo = rm - m as u32 + 1;
        let c_lo = b_lo - (r * (r - 2) * k) as u32;
        Self { r: r as u32, rk: (r * k) as u32, c_lo, b_lo }
    }

    fn in_a(&self, v: u32) -> bool {
        v <= self.rk
    }

    fn in_b(&self, v: u32) -> bool {
        v >= self.b_lo
    }

    fn in_c(&self, v: u32) -> bool {
        v >= self.c_lo && v < self.b_lo
    }
}

/// Merge the orders of `p` into an `r`-cover, normalise it by edge swaps and
/// strip it down to an `(r-1, theta, n)`-cover with `n = m - rk`.
pub fn preference_to_cover(p: &PreferenceOrder, theta: &Rational) -> Result<CoverFromOrder> {
    let (r, m) = (p.r(), p.m());
    if r < 2 {
        return Err(parameter!("need at least two orders, found {r}"));
    }
    preference::check_theta(theta, r)?;
    let f_value = p.f_value(theta)?;
    let k = offset(theta, m);
    if r * k >= m {
        return Err(parameter!("degenerate cover size: m={m}, k={k}"));
    }
    let n = m - r * k;
    let lay = Layout::new(r, m, k);

    let mut edges: Vec<Vec<u32>> = (0..m as u32)
        .map(|el| {
            (0..r)
                .map(|i| r as u32 * p.rank(i, el) - i as u32)
                .collect()
        })
        .collect();
    for e in &mut edges {
        e.sort_unstable();
    }

    // Every edge takes exactly one vertex of B.
    while let Some(ei) = edges.iter().position(|e| !e.iter().any(|&v| lay.in_b(v))) {
        let fi = edges
            .iter()
            .position(|f| f.iter().filter(|&&v| lay.in_b(v)).count() >= 2)
            .expect("|B| equals the number of edges");
        let u = edges[ei][r - 1];
        let v = edges[fi][r - 2];
        swap_vertices(&mut edges, ei, u, fi, v);
    }

    // Edges meeting A are filled up with vertices of C.
    if k > 0 && r > 2 {
        let meets_a = |e: &[u32]| e.iter().any(|&v| lay.in_a(v));
        while let Some(fi) = edges.iter().position(|f| {
            meets_a(f) && f.iter().filter(|&&v| lay.in_c(v)).count() < r - 2
        }) {
            let f = &edges[fi];
            let w = *f.iter().find(|&&v| lay.in_a(v)).expect("f meets A");
            let u = *f
                .iter()
                .rev()
                .find(|&&v| v != w && !lay.in_b(v) && !lay.in_c(v))
                .expect("f has a vertex outside B and C besides w");
            let ei = edges
                .iter()
                .position(|e| !meets_a(e) && e.iter().any(|&v| lay.in_c(v)))
                .ok_or_else(|| Error::Precondition("no free edge meets C".into()))?;
            let v = *edges[ei].iter().rev().find(|&&v| lay.in_c(v)).expect("e meets C");
            swap_vertices(&mut edges, ei, v, fi, u);
        }
    }

    let stripped_edges: Vec<Vec<u32>> = edges
        .iter()
        .filter(|e| !e.iter().any(|&v| lay.in_a(v)))
        .map(|e| {
            debug_assert_eq!(e.iter().filter(|&&v| lay.in_b(v)).count(), 1);
            debug_assert!(!e.iter().any(|&v| lay.in_c(v)));
            e.iter().filter(|&&v| !lay.in_b(v)).map(|&v| v - lay.rk).collect()
        })
        .collect();
    let grid = Grid::new(r - 1, rational::ratio(k as i64, m as i64), n)?;
    let stripped = Cover::new(grid, stripped_edges)?;
    let cover = stripped.similar(theta.clone())?;
    let bound = &f_value.value + slack(r, m);
    Ok(CoverFromOrder { cover, stripped, k, n, f_value, bound })
}

/// Exchange vertex `a` of edge `ea` with vertex `b` of edge `eb`.
fn swap_vertices(edges: &mut [Vec<u32>], ea: usize, a: u32, eb: usize, b: u32) {
    for (e, from, to) in [(ea, a, b), (eb, b, a)] {
        let slot = edges[e].iter().position(|&v| v == from).expect("vertex in edge");
        edges[e][slot] = to;
        edges[e].sort_unstable();
    }
}

/// Cap on the search for the order size `m`.
const MAX_ORDER_SIZE: usize = 1 << 26;

/// Pad an `(r-1, theta, n)`-cover to an `r`-cover on `1..=rm` and read off
/// the `(r, rm)`-preference order given by the cyclic shifts of its edges.
pub fn cover_to_preference(q: &Cover) -> Result<OrderFromCover> {
    let r = q.r() + 1;
    let n = q.n();
    let theta = q.theta();
    let (m, k) = order_size_for(r, theta, n)
        .ok_or_else(|| parameter!("no order size m below {MAX_ORDER_SIZE} gives n={n}"))?;
    let lay = Layout::new(r, m, k);
    let shifted = q.similar(rational::ratio(k as i64, m as i64))?;

    let mut big: Vec<Vec<u32>> = Vec::with_capacity(m);
    let mut next_b = lay.b_lo;
    for e in shifted.edges() {
        let mut f: Vec<u32> = e.iter().map(|&j| j + lay.rk).collect();
        f.push(next_b);
        next_b += 1;
        big.push(f);
    }
    let mut next_c = lay.c_lo;
    for a in 1..=lay.rk {
        let mut f = vec![a, next_b];
        next_b += 1;
        for _ in 0..lay.r - 2 {
            f.push(next_c);
            next_c += 1;
        }
        big.push(f);
    }
    debug_assert_eq!(next_b as usize, r * m + 1);
    debug_assert_eq!(next_c, lay.b_lo);

    let size = r * m;
    let mut orders = vec![vec![0u32; size]; r];
    for (idx, f) in big.iter_mut().enumerate() {
        f.sort_unstable();
        for s in 0..r {
            let element = (idx * r + s) as u32;
            for (c, order) in orders.iter_mut().enumerate() {
                order[f[(c + s) % r] as usize - 1] = element;
            }
        }
    }
    let order = PreferenceOrder::new(orders)?;
    let bound = q.h() + slack(r, m);
    Ok(OrderFromCover { order, m, k, bound })
}

/// Smallest `m` for which the lemma pairing `(m, n)` holds, with its `k`.
pub fn order_size_for(r: usize, theta: &Rational, n: usize) -> Option<(usize, usize)> {
    (1..MAX_ORDER_SIZE)
        .find(|&m| m >= r * offset(theta, m) && m - r * offset(theta, m) == n)
        .map(|m| (m, offset(theta, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preference::NamedOrder;
    use crate::rational::ratio;
    use crate::rng;
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;

    fn random_order(r: usize, m: usize, seed: u64) -> PreferenceOrder {
        let mut rng = rng::stream(seed, 0);
        let orders = (0..r)
            .map(|_| {
                let mut o: Vec<u32> = (0..m as u32).collect();
                o.shuffle(&mut rng);
                o
            })
            .collect();
        PreferenceOrder::new(orders).unwrap()
    }

    fn random_cover(r: usize, theta: Rational, n: usize, seed: u64) -> Cover {
        let mut rng = rng::stream(seed, 1);
        let mut v: Vec<u32> = (1..=(r * n) as u32).collect();
        v.shuffle(&mut rng);
        Cover::new(Grid::new(r, theta, n).unwrap(), v.chunks(r).map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn offsets() {
        assert_eq!(offset(&Rational::zero(), 6), 0);
        assert_eq!(offset(&ratio(1, 6), 6), 0);
        assert_eq!(offset(&ratio(1, 6), 12), 1);
        assert_eq!(offset(&ratio(1, 12), 12), 0);
        assert_eq!(offset(&ratio(1, 12), 13), 1);
    }

    #[test]
    fn pa_to_one_cover() {
        let p = PreferenceOrder::named(NamedOrder::Pa, 2, 4).unwrap();
        let out = preference_to_cover(&p, &Rational::zero()).unwrap();
        assert_eq!(out.cover.r(), 1);
        assert_eq!(out.n, 4);
        assert_eq!(out.k, 0);
        assert!(out.cover.h() <= ratio(1, 2) + ratio(1, 4));
        assert!(out.cover.h() <= out.bound);
    }

    #[test]
    fn pc_to_two_cover() {
        let p = PreferenceOrder::named(NamedOrder::Pc, 3, 6).unwrap();
        let out = preference_to_cover(&p, &Rational::zero()).unwrap();
        assert_eq!(out.cover.r(), 2);
        assert_eq!(out.n, 6);
        // (1/3)(1/3 + 1/6) from the closed form of P_c at m = 6
        assert_eq!(out.f_value.value, ratio(1, 6));
        assert!(out.cover.h() <= ratio(1, 6) + ratio(2 * 4, 6));
        assert_eq!(out.stripped, out.cover);
    }

    #[test]
    fn nonzero_theta_strips_a_and_c() {
        let p = PreferenceOrder::named(NamedOrder::Pc, 3, 12).unwrap();
        let theta = ratio(1, 6);
        let out = preference_to_cover(&p, &theta).unwrap();
        assert_eq!(out.k, 1);
        assert_eq!(out.n, 9);
        assert_eq!(out.stripped.theta(), &ratio(1, 12));
        assert_eq!(out.cover.theta(), &theta);
        // the stripped cover never exceeds f_P itself
        assert!(out.stripped.h() <= out.f_value.value);
        assert!(out.cover.h() <= out.bound);
    }

    #[test]
    fn single_edge_to_order() {
        let q = super::super::single_edge(2, Rational::zero()).unwrap();
        let out = cover_to_preference(&q).unwrap();
        assert_eq!((out.m, out.k), (1, 0));
        assert_eq!(out.order.r(), 3);
        assert_eq!(out.order.m(), 3);
        // the padded edge is {1, 2, 3} on the scale 1..3 and the three
        // rotations give the identity-like order
        let f = out.order.f_value(&Rational::zero()).unwrap().value;
        assert!(f <= ratio(2, 9) + ratio(8, 1));
        assert_eq!(f, ratio(2, 9));
    }

    #[test]
    fn zero_theta_pads_with_b_only() {
        let q = random_cover(2, Rational::zero(), 5, 3);
        let out = cover_to_preference(&q).unwrap();
        assert_eq!((out.m, out.k), (5, 0));
        // every element's top coordinate sits in B = 11..15
        for t in out.order.tuples() {
            assert!(t.ranks.iter().any(|&x| x > 10));
        }
        let f = out.order.f_value(&Rational::zero()).unwrap().value;
        assert_eq!(f, q.h());
    }

    #[test]
    fn round_trip_pc() {
        let p = PreferenceOrder::named(NamedOrder::Pc, 3, 6).unwrap();
        let there = preference_to_cover(&p, &Rational::zero()).unwrap();
        let back = cover_to_preference(&there.cover).unwrap();
        let f_back = back.order.f_value(&Rational::zero()).unwrap().value;
        assert!(f_back <= back.bound);
        assert!(f_back <= ratio(1, 9) + slack(3, 6) + slack(3, back.m));
    }

    #[test]
    fn order_size_search() {
        assert_eq!(order_size_for(3, &ratio(1, 6), 9), Some((12, 1)));
        for n in 1..40 {
            let (m, k) = order_size_for(3, &ratio(1, 5), n).unwrap();
            assert_eq!(m - 3 * k, n);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn preference_to_cover_bound(seed in any::<u64>(), mi in 0usize..3, ti in 0usize..3) {
            let m = [6, 9, 12][mi];
            let theta = [Rational::zero(), ratio(1, 12), ratio(1, 6)][ti].clone();
            let p = random_order(3, m, seed);
            let out = preference_to_cover(&p, &theta).unwrap();
            prop_assert!(out.stripped.h() <= out.f_value.value.clone());
            prop_assert!(out.cover.h() <= out.bound);
        }

        #[test]
        fn cover_to_preference_bound(seed in any::<u64>(), n in 1usize..10, ti in 0usize..3) {
            let theta = [Rational::zero(), ratio(1, 12), ratio(1, 6)][ti].clone();
            let q = random_cover(2, theta.clone(), n, seed);
            let out = cover_to_preference(&q).unwrap();
            let f = out.order.f_value(&theta).unwrap().value;
            prop_assert!(f <= out.bound);
        }
    }
}
