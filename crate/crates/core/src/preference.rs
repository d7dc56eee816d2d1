//! Preference orders: `r` total orders of a ground set `[m]`.
//!
//! Elements are labelled `0..m`. `orders[i][j]` is the element sitting at
//! relative position `(j + 1) / m` in the `i`th order, so each order is listed
//! from its least preferred element to its most preferred one.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, parameter, resource, Error, Result};
use crate::rational::{self, Rational};

/// Default refusal threshold for [`f_exact`]: `(m!)^(r-1)` candidate orders.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PreferenceOrderJson", into = "PreferenceOrderJson")]
pub struct PreferenceOrder {
    r: usize,
    m: usize,
    orders: Vec<Vec<u32>>,
    /// `ranks[i][k]` is the 1-based position of element `k` in order `i`.
    ranks: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PreferenceOrderJson {
    r: usize,
    m: usize,
    orders: Vec<Vec<u32>>,
}

impl TryFrom<PreferenceOrderJson> for PreferenceOrder {
    type Error = Error;

    fn try_from(raw: PreferenceOrderJson) -> Result<Self> {
        if raw.orders.len() != raw.r {
            return Err(Error::Input(format!(
                "expected {} orders, found {}",
                raw.r,
                raw.orders.len()
            )));
        }
        let p = PreferenceOrder::new(raw.orders)?;
        if p.m != raw.m {
            return Err(Error::Input(format!("declared m={} but orders have length {}", raw.m, p.m)));
        }
        Ok(p)
    }
}

impl From<PreferenceOrder> for PreferenceOrderJson {
    fn from(p: PreferenceOrder) -> Self {
        PreferenceOrderJson { r: p.r, m: p.m, orders: p.orders }
    }
}

/// The tuple of relative positions `(rank_1/m, ..., rank_r/m)` of one element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositionTuple {
    pub m: u32,
    /// 1-based ranks, one per order.
    pub ranks: Vec<u32>,
}

impl PositionTuple {
    pub fn coords(&self) -> Vec<Rational> {
        self.ranks.iter().map(|&k| rational::ratio(k as i64, self.m as i64)).collect()
    }

    /// Product of every coordinate except the one at [`i_max`].
    pub fn off_max_product(&self) -> Rational {
        let skip = i_max(&self.ranks);
        let num = off_max_numerator(&self.ranks, skip);
        Rational::new(num, BigInt::from(self.m).pow(self.ranks.len() as u32 - 1))
    }
}

/// Smallest index attaining the maximum of `x`.
pub fn i_max<T: PartialOrd>(x: &[T]) -> usize {
    assert!(!x.is_empty(), "i_max of an empty vector");
    let mut best = 0;
    for (i, v) in x.iter().enumerate().skip(1) {
        if *v > x[best] {
            best = i;
        }
    }
    best
}

fn off_max_numerator(ranks: &[u32], skip: usize) -> BigInt {
    let mut acc = BigInt::one();
    for (i, &k) in ranks.iter().enumerate() {
        if i != skip {
            acc *= k;
        }
    }
    acc
}

/// Relative position of `k` in a single total order of `[m]`.
pub fn rpos(order: &[u32], k: u32) -> Result<Rational> {
    let m = order.len();
    match order.iter().position(|&e| e == k) {
        Some(j) => Ok(rational::ratio(j as i64 + 1, m as i64)),
        None => Err(domain!("element {k} is not in the ground set of size {m}")),
    }
}

fn ranks_of(order: &[u32]) -> Vec<u32> {
    let mut ranks = vec![0; order.len()];
    for (j, &e) in order.iter().enumerate() {
        ranks[e as usize] = j as u32 + 1;
    }
    ranks
}

fn is_permutation(order: &[u32], m: usize) -> bool {
    let mut seen = vec![false; m];
    order.len() == m
        && order.iter().all(|&e| {
            let e = e as usize;
            e < m && !std::mem::replace(&mut seen[e], true)
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedOrder {
    /// Every order is `0 < 1 < ... < m-1`.
    Identity,
    /// Identity and its reverse, alternating.
    Reverse,
    /// Order `i` is the identity rotated so that it starts at `(m - i*s) mod m`.
    Rotation(usize),
    Pa,
    Pb,
    Pc,
}

impl PreferenceOrder {
    /// Build from explicit orders (each listed bottom to top).
    pub fn new(orders: Vec<Vec<u32>>) -> Result<Self> {
        let r = orders.len();
        if r == 0 {
            return Err(parameter!("a preference order needs at least one order"));
        }
        let m = orders[0].len();
        if m == 0 {
            return Err(parameter!("the ground set must be non-empty"));
        }
        for (i, o) in orders.iter().enumerate() {
            if !is_permutation(o, m) {
                return Err(Error::Input(format!("order {i} is not a permutation of [{m}]")));
            }
        }
        let ranks = orders.iter().map(|o| ranks_of(o)).collect();
        Ok(Self { r, m, orders, ranks })
    }

    pub fn named(kind: NamedOrder, r: usize, m: usize) -> Result<Self> {
        if r == 0 || m == 0 {
            return Err(parameter!("r and m must be positive"));
        }
        let identity: Vec<u32> = (0..m as u32).collect();
        let rotation = |start: usize| -> Vec<u32> { (0..m).map(|j| ((start + j) % m) as u32).collect() };
        let orders = match kind {
            NamedOrder::Identity => vec![identity; r],
            NamedOrder::Reverse => (0..r)
                .map(|i| {
                    let mut o = identity.clone();
                    if i % 2 == 1 {
                        o.reverse();
                    }
                    o
                })
                .collect(),
            NamedOrder::Rotation(s) => {
                if s == 0 || s > m {
                    return Err(parameter!("rotation shift {s} must lie in 1..={m}"));
                }
                (0..r).map(|i| rotation((m * r - i * s) % m)).collect()
            }
            NamedOrder::Pa => {
                if r != 2 {
                    return Err(parameter!("P_a is a (2,m)-order, got r={r}"));
                }
                let mut rev = identity.clone();
                rev.reverse();
                vec![identity, rev]
            }
            NamedOrder::Pb | NamedOrder::Pc => {
                if r != 3 || m % 3 != 0 {
                    return Err(parameter!("{kind:?} needs r=3 and m divisible by 3, got r={r}, m={m}"));
                }
                let p = m / 3;
                let mut orders: Vec<Vec<u32>> = (0..3).map(|i| rotation((3 * m - i * p) % m)).collect();
                if kind == NamedOrder::Pc {
                    for o in &mut orders {
                        o[..p].reverse();
                    }
                }
                orders
            }
        };
        Self::new(orders)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn orders(&self) -> &[Vec<u32>] {
        &self.orders
    }

    /// 1-based rank of element `k` in order `i`.
    pub fn rank(&self, i: usize, k: u32) -> u32 {
        self.ranks[i][k as usize]
    }

    pub fn tuple(&self, k: u32) -> PositionTuple {
        PositionTuple {
            m: self.m as u32,
            ranks: (0..self.r).map(|i| self.ranks[i][k as usize]).collect(),
        }
    }

    /// One tuple per element, indexed by element label.
    pub fn tuples(&self) -> Vec<PositionTuple> {
        (0..self.m as u32).map(|k| self.tuple(k)).collect()
    }

    /// Relabel the ground set: element `k` becomes `perm[k]` in every order.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        if !is_permutation(perm, self.m) {
            return Err(parameter!("relabelling is not a permutation of [{}]", self.m));
        }
        Self::new(
            self.orders
                .iter()
                .map(|o| o.iter().map(|&e| perm[e as usize]).collect())
                .collect(),
        )
    }

    /// Evaluate `f_P(theta)`.
    pub fn f_value(&self, theta: &Rational) -> Result<FValue> {
        check_theta(theta, self.r)?;
        let threshold = RankThreshold::new(theta, self.m);
        let mut best: Option<(BigInt, u32)> = None;
        let mut ranks = vec![0u32; self.r];
        for k in 0..self.m as u32 {
            for (i, slot) in ranks.iter_mut().enumerate() {
                *slot = self.ranks[i][k as usize];
            }
            if !threshold.admits_all(&ranks) {
                continue;
            }
            let value = off_max_numerator(&ranks, i_max(&ranks));
            if best.as_ref().map_or(true, |(b, _)| value > *b) {
                best = Some((value, k));
            }
        }
        // Some element has every rank >= m/r >= theta*m, so `best` is set.
        let (num, k) = best.expect("feasible set of f_P is never empty");
        Ok(FValue {
            value: Rational::new(num, BigInt::from(self.m).pow(self.r as u32 - 1)),
            witness: k,
            tuple: self.tuple(k),
        })
    }

    /// The `(r, km)` order obtained by splitting each element into `k` copies
    /// placed just below its original relative position.
    pub fn replicate(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(parameter!("replication factor must be at least 1"));
        }
        let m = self.m as u32;
        let orders = self
            .orders
            .iter()
            .map(|o| {
                o.iter()
                    .flat_map(|&j| (0..k as u32).rev().map(move |t| j + t * m))
                    .collect()
            })
            .collect();
        Self::new(orders)
    }
}

/// Result of evaluating `f_P(theta)`: the value and the element attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FValue {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub witness: u32,
    pub tuple: PositionTuple,
}

pub(crate) fn check_theta(theta: &Rational, r: usize) -> Result<()> {
    let upper = rational::ratio(1, r as i64);
    if *theta < Rational::from_integer(0.into()) || *theta > upper {
        return Err(domain!("theta={} outside [0, 1/{r}]", rational::display(theta)));
    }
    Ok(())
}

/// `rank/m >= theta` tested in integers as `rank * den >= num * m`.
#[derive(Debug, Clone)]
struct RankThreshold {
    min_rank: u32,
}

impl RankThreshold {
    fn new(theta: &Rational, m: usize) -> Self {
        // smallest rank with rank/m >= theta, i.e. ceil(theta * m)
        let scaled = theta * Rational::from_integer(BigInt::from(m));
        let ceil = scaled.ceil().to_integer();
        let min_rank = u32::try_from(ceil.max(BigInt::from(1))).unwrap_or(u32::MAX);
        Self { min_rank }
    }

    fn admits_all(&self, ranks: &[u32]) -> bool {
        ranks.iter().all(|&k| k >= self.min_rank)
    }
}

/// Exact `f(r, theta, m)` with a minimizing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FExact {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub witness: PreferenceOrder,
    pub candidates: u128,
}

/// Number of candidate orders `f_exact` visits: `(m!)^(r-1)`, or `None` on overflow.
pub fn enumeration_count(r: usize, m: usize) -> Option<u128> {
    let mut fact: u128 = 1;
    for i in 2..=m as u128 {
        fact = fact.checked_mul(i)?;
    }
    let mut total: u128 = 1;
    for _ in 1..r {
        total = total.checked_mul(fact)?;
    }
    Some(total)
}

/// Minimum of `f_P(theta)` over all `(r, m)`-preference orders.
///
/// The first order is fixed to the identity, which loses nothing because
/// `f_P` only depends on the set of position tuples.
pub fn f_exact(r: usize, theta: &Rational, m: usize, budget: u128) -> Result<FExact> {
    if r == 0 || m == 0 {
        return Err(parameter!("r and m must be positive"));
    }
    check_theta(theta, r)?;
    let count = enumeration_count(r, m);
    match count {
        Some(c) if c <= budget => {}
        _ => {
            return Err(resource!(
                "f_exact(r={r}, m={m}) needs (m!)^(r-1) = {} candidate orders, budget is {budget}",
                count.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string())
            ))
        }
    }
    let count = count.unwrap();
    let threshold = RankThreshold::new(theta, m);
    let identity: Vec<u32> = (0..m as u32).collect();

    let best = if r == 1 {
        // single order: the only tuple with rank >= threshold maximizing the empty product
        Some((1u128, vec![identity.clone()]))
    } else {
        let m_fact = enumeration_count(2, m).unwrap() as u64;
        (0..m_fact)
            .into_par_iter()
            .map(|index| {
                let first = nth_permutation(m, index);
                let mut search = Search::new(r, m, &threshold, &identity, first);
                search.run();
                search.best
            })
            .reduce(
                || None,
                |a, b| match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => Some(if (b.0, &b.1) < (a.0, &a.1) { b } else { a }),
                },
            )
    };
    let (num, orders) = best.expect("at least one candidate order");
    let witness = PreferenceOrder::new(orders)?;
    Ok(FExact {
        value: rational::from_u128(num, (m as u128).pow(r as u32 - 1)),
        witness,
        candidates: count,
    })
}

/// Depth-first enumeration of orders `2..r` for a fixed second order.
struct Search<'a> {
    r: usize,
    m: usize,
    threshold: &'a RankThreshold,
    orders: Vec<Vec<u32>>,
    ranks: Vec<Vec<u32>>,
    best: Option<(u128, Vec<Vec<u32>>)>,
}

impl<'a> Search<'a> {
    fn new(r: usize, m: usize, threshold: &'a RankThreshold, identity: &[u32], second: Vec<u32>) -> Self {
        let mut orders = vec![identity.to_vec(), second];
        orders.resize(r, identity.to_vec());
        let ranks = orders.iter().map(|o| ranks_of(o)).collect();
        Self { r, m, threshold, orders, ranks, best: None }
    }

    fn run(&mut self) {
        self.descend(2);
    }

    fn descend(&mut self, level: usize) {
        if level == self.r {
            self.evaluate();
            return;
        }
        let mut perm: Vec<u32> = (0..self.m as u32).collect();
        loop {
            self.ranks[level] = ranks_of(&perm);
            self.orders[level].clone_from(&perm);
            self.descend(level + 1);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }

    fn evaluate(&mut self) {
        let mut tuple = vec![0u32; self.r];
        let mut value: u128 = 0;
        for k in 0..self.m {
            for (i, slot) in tuple.iter_mut().enumerate() {
                *slot = self.ranks[i][k];
            }
            if !self.threshold.admits_all(&tuple) {
                continue;
            }
            let skip = i_max(&tuple);
            let prod = tuple
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(1u128, |acc, (_, &x)| acc * x as u128);
            value = value.max(prod);
        }
        // strict comparison keeps the lexicographically first witness
        if self.best.as_ref().map_or(true, |(b, _)| value < *b) {
            self.best = Some((value, self.orders.clone()));
        }
    }
}

/// The `index`th permutation of `0..m` in lexicographic order.
fn nth_permutation(m: usize, mut index: u64) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..m as u32).collect();
    let mut fact: Vec<u64> = vec![1; m + 1];
    for i in 1..=m {
        fact[i] = fact[i - 1] * i as u64;
    }
    let mut out = Vec::with_capacity(m);
    for pos in (0..m).rev() {
        let q = (index / fact[pos]) as usize;
        index %= fact[pos];
        out.push(pool.remove(q));
    }
    out
}

/// Advance to the next lexicographic permutation; false when wrapped.
pub(crate) fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn zero() -> Rational {
        ratio(0, 1)
    }

    fn tuple_set(p: &PreferenceOrder) -> Vec<Vec<Rational>> {
        let mut t: Vec<Vec<Rational>> = p.tuples().iter().map(|t| t.coords()).collect();
        t.sort();
        t
    }

    fn coords(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| ratio(a, b)).collect()
    }

    #[test]
    fn rpos_examples() {
        let id = [0, 1, 2, 3];
        assert_eq!(rpos(&id, 2).unwrap(), ratio(3, 4));
        let rev = [3, 2, 1, 0];
        assert_eq!(rpos(&rev, 0).unwrap(), ratio(1, 1));
        assert!(rpos(&id, 4).is_err());
        // P_c with p = 1: element 1 (label 0) sits at the bottom of the first order
        let pc = PreferenceOrder::named(NamedOrder::Pc, 3, 3).unwrap();
        assert_eq!(rpos(&pc.orders()[0], 0).unwrap(), ratio(1, 3));
    }

    #[test]
    fn named_orders_match_written_tuple_sets() {
        let pa = PreferenceOrder::named(NamedOrder::Pa, 2, 2).unwrap();
        let mut want = vec![coords(&[(1, 2), (1, 1)]), coords(&[(1, 1), (1, 2)])];
        want.sort();
        assert_eq!(tuple_set(&pa), want);

        let pb = PreferenceOrder::named(NamedOrder::Pb, 3, 3).unwrap();
        let mut want = vec![
            coords(&[(1, 3), (2, 3), (1, 1)]),
            coords(&[(2, 3), (1, 1), (1, 3)]),
            coords(&[(1, 1), (1, 3), (2, 3)]),
        ];
        want.sort();
        assert_eq!(tuple_set(&pb), want);

        let pc = PreferenceOrder::named(NamedOrder::Pc, 3, 6).unwrap();
        assert!(tuple_set(&pc).contains(&coords(&[(1, 3), (1, 2), (5, 6)])));

        let id = PreferenceOrder::named(NamedOrder::Identity, 2, 2).unwrap();
        assert_eq!(tuple_set(&id), vec![coords(&[(1, 2), (1, 2)]), coords(&[(1, 1), (1, 1)])]);
    }

    #[test]
    fn pc_tuples_follow_closed_form_for_several_sizes() {
        for m in [3usize, 6, 9, 12] {
            let p = (m / 3) as i64;
            let m_ = m as i64;
            let mut want = Vec::new();
            for i in 1..=p {
                let a = ratio(1, 3) + ratio(1, m_) - ratio(i, m_);
                let b = ratio(1, 3) + ratio(i, m_);
                let c = ratio(2, 3) + ratio(i, m_);
                want.push(vec![a.clone(), b.clone(), c.clone()]);
                want.push(vec![b.clone(), c.clone(), a.clone()]);
                want.push(vec![c, a, b]);
            }
            want.sort();
            let pc = PreferenceOrder::named(NamedOrder::Pc, 3, m).unwrap();
            assert_eq!(tuple_set(&pc), want, "m={m}");
        }
    }

    #[test]
    fn named_order_parameter_errors() {
        assert!(PreferenceOrder::named(NamedOrder::Pa, 3, 4).is_err());
        assert!(PreferenceOrder::named(NamedOrder::Pb, 3, 4).is_err());
        assert!(PreferenceOrder::named(NamedOrder::Pc, 2, 6).is_err());
        assert!(PreferenceOrder::named(NamedOrder::Rotation(0), 3, 6).is_err());
    }

    #[test]
    fn i_max_breaks_ties_to_smallest_index() {
        assert_eq!(i_max(&[2, 5, 5]), 1);
        assert_eq!(i_max(&[ratio(1, 1), ratio(1, 3), ratio(2, 3)]), 0);
        assert_eq!(i_max(&[ratio(1, 3), ratio(1, 2), ratio(5, 6)]), 2);
    }

    #[test]
    fn f_values_of_named_orders() {
        for m in [2usize, 4, 6, 8] {
            let pa = PreferenceOrder::named(NamedOrder::Pa, 2, m).unwrap();
            assert_eq!(pa.f_value(&zero()).unwrap().value, ratio(1, 2));
        }
        for m in [3usize, 5] {
            let pa = PreferenceOrder::named(NamedOrder::Pa, 2, m).unwrap();
            assert_eq!(pa.f_value(&zero()).unwrap().value, ratio(1, 2) + ratio(1, 2 * m as i64));
        }
        for m in [3usize, 6, 9, 12] {
            let pb = PreferenceOrder::named(NamedOrder::Pb, 3, m).unwrap();
            let pc = PreferenceOrder::named(NamedOrder::Pc, 3, m).unwrap();
            assert_eq!(pb.f_value(&zero()).unwrap().value, ratio(2, 9));
            let want = ratio(1, 9) + ratio(1, 3 * m as i64);
            assert_eq!(pc.f_value(&zero()).unwrap().value, want);
            assert_eq!(pc.f_value(&ratio(1, 3)).unwrap().value, want);
        }
    }

    #[test]
    fn f_value_rejects_theta_out_of_range() {
        let pa = PreferenceOrder::named(NamedOrder::Pa, 2, 4).unwrap();
        assert!(matches!(pa.f_value(&ratio(3, 5)), Err(Error::Domain(_))));
        assert!(matches!(pa.f_value(&ratio(-1, 5)), Err(Error::Domain(_))));
    }

    #[test]
    fn f_exact_small_values() {
        let b = DEFAULT_ENUMERATION_BUDGET;
        assert_eq!(f_exact(2, &zero(), 2, b).unwrap().value, ratio(1, 2));
        assert_eq!(f_exact(2, &zero(), 3, b).unwrap().value, ratio(2, 3));
        assert_eq!(f_exact(2, &zero(), 4, b).unwrap().value, ratio(1, 2));
        let e = f_exact(3, &ratio(1, 3), 6, b).unwrap();
        let pc = PreferenceOrder::named(NamedOrder::Pc, 3, 6).unwrap();
        assert!(e.value >= ratio(1, 9));
        assert!(e.value <= pc.f_value(&ratio(1, 3)).unwrap().value);
        assert_eq!(e.witness.f_value(&ratio(1, 3)).unwrap().value, e.value);
    }

    #[test]
    fn f_exact_refuses_over_budget() {
        match f_exact(3, &zero(), 8, DEFAULT_ENUMERATION_BUDGET) {
            Err(Error::Resource(msg)) => assert!(msg.contains("1625702400"), "{msg}"),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn f_exact_is_deterministic() {
        let a = f_exact(3, &zero(), 4, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let b = f_exact(3, &zero(), 4, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn replicate_examples() {
        let pa = PreferenceOrder::named(NamedOrder::Pa, 2, 2).unwrap();
        let p4 = pa.replicate(2).unwrap();
        assert_eq!(p4.m(), 4);
        assert_eq!(p4.f_value(&zero()).unwrap().value, ratio(1, 2));
        assert_eq!(pa.replicate(1).unwrap(), pa);
        let pc = PreferenceOrder::named(NamedOrder::Pc, 3, 3).unwrap();
        assert!(pc.replicate(2).unwrap().f_value(&zero()).unwrap().value <= ratio(2, 9));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let pc = PreferenceOrder::named(NamedOrder::Pc, 3, 6).unwrap();
        let s = serde_json::to_string(&pc).unwrap();
        assert!(s.starts_with("{\"r\":3,\"m\":6,\"orders\":[["));
        let back: PreferenceOrder = serde_json::from_str(&s).unwrap();
        assert_eq!(back, pc);
        assert!(serde_json::from_str::<PreferenceOrder>(r#"{"r":1,"m":2,"orders":[[0,0]]}"#).is_err());
        assert!(serde_json::from_str::<PreferenceOrder>(r#"{"r":2,"m":2,"orders":[[0,1]]}"#).is_err());
    }

    fn arb_order(r: usize, m: usize) -> impl Strategy<Value = PreferenceOrder> {
        proptest::collection::vec(Just((0..m as u32).collect::<Vec<_>>()).prop_shuffle(), r)
            .prop_map(|o| PreferenceOrder::new(o).unwrap())
    }

    proptest! {
        #[test]
        fn f_value_is_monotone_and_bounded(p in (2usize..5, 2usize..9).prop_flat_map(|(r, m)| arb_order(r, m))) {
            let r = p.r() as i64;
            let floor = ratio(1, r).pow(p.r() as i32 - 1);
            let mut prev: Option<Rational> = None;
            for step in 0..=6 {
                let theta = ratio(step, 6 * r);
                let v = p.f_value(&theta).unwrap().value;
                prop_assert!(v >= floor);
                if let Some(prev) = prev {
                    prop_assert!(v <= prev);
                }
                prev = Some(v);
            }
        }

        #[test]
        fn relabelling_leaves_f_unchanged(
            (p, perm) in (2usize..5, 2usize..9).prop_flat_map(|(r, m)| {
                (arb_order(r, m), Just((0..m as u32).collect::<Vec<_>>()).prop_shuffle())
            })
        ) {
            let q = p.relabel(&perm).unwrap();
            for step in 0..3 {
                let theta = ratio(step, 3 * p.r() as i64);
                prop_assert_eq!(p.f_value(&theta).unwrap().value, q.f_value(&theta).unwrap().value);
            }
        }

        #[test]
        fn replication_never_increases_f(
            (p, k) in ((2usize..4, 2usize..7).prop_flat_map(|(r, m)| arb_order(r, m)), 1usize..4)
        ) {
            let q = p.replicate(k).unwrap();
            for step in 0..3 {
                let theta = ratio(step, 3 * p.r() as i64);
                prop_assert!(q.f_value(&theta).unwrap().value <= p.f_value(&theta).unwrap().value);
            }
        }
    }
}
