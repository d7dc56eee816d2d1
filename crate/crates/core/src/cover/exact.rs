//! Exhaustive `h(r, theta, n)` by branch and bound over perfect matchings.

use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{Cover, Grid};
use crate::error::{resource, Result};
use crate::rational::{self, Rational};

/// Default refusal threshold for [`h_exact`], in perfect matchings.
pub const DEFAULT_MATCHING_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HExact {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub witness: Cover,
    /// Number of perfect matchings of the grid, `(rn)! / (n! (r!)^n)`.
    pub matchings: u128,
}

/// Number of `(r, theta, n)`-covers, or `None` on overflow.
pub fn matching_count(r: usize, n: usize) -> Option<u128> {
    let mut total: u128 = 1;
    for t in 0..n {
        let free = r * (n - t);
        total = total.checked_mul(binomial(free as u128 - 1, r as u128 - 1)?)?;
    }
    Some(total)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Exact minimum of `h(Q)` over all `(r, theta, n)`-covers.
pub fn h_exact(r: usize, theta: &Rational, n: usize, budget: u128) -> Result<HExact> {
    let grid = Grid::new(r, theta.clone(), n)?;
    let matchings = matching_count(r, n)
        .filter(|&c| c <= budget)
        .ok_or_else(|| match matching_count(r, n) {
            Some(c) => resource!("{c} perfect matchings exceed the budget of {budget}"),
            None => resource!("matching count overflows u128 (budget {budget})"),
        })?;
    if r == 1 {
        let witness = Cover::new(grid, (1..=n as u32).map(|j| vec![j]).collect())?;
        return Ok(HExact { value: witness.h(), witness, matchings });
    }
    let (_, nums) = grid.integer_form();
    let max_bits = nums.last().map_or(0, |v| v.bits()) as usize;
    let edges = if max_bits * r < 127 {
        let small: Vec<u128> = nums.iter().map(|v| v.to_u128().expect("fits")).collect();
        Search::new(r, &small).run()
    } else {
        Search::<BigUint>::new(r, &nums).run()
    };
    let witness = Cover::new(grid, edges)?;
    Ok(HExact { value: witness.h(), witness, matchings })
}

/// Depth-first search that always matches the smallest unused vertex next.
struct Search<'a, T> {
    r: usize,
    values: &'a [T],
    used: Vec<bool>,
    stack: Vec<Vec<u32>>,
    best: Option<T>,
    best_edges: Vec<Vec<u32>>,
}

impl<'a, T> Search<'a, T>
where
    T: Clone + Ord + One,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    fn new(r: usize, values: &'a [T]) -> Self {
        Self {
            r,
            values,
            used: vec![false; values.len()],
            stack: Vec::new(),
            best: None,
            best_edges: Vec::new(),
        }
    }

    fn product(&self, e: &[u32]) -> T {
        e.iter().fold(T::one(), |acc, &j| &acc * &self.values[j as usize])
    }

    fn run(mut self) -> Vec<Vec<u32>> {
        // Seed with the greedy cover so pruning bites from the start.
        let greedy = greedy_edges(self.r, self.values.len());
        let worst = greedy.iter().map(|e| self.product(e)).max().expect("non-empty");
        self.best = Some(worst);
        self.best_edges = greedy;
        self.descend(None);
        self.best_edges
            .iter()
            .map(|e| e.iter().map(|&j| j + 1).collect())
            .collect()
    }

    fn beaten(&self, value: &T) -> bool {
        self.best.as_ref().map_or(false, |b| value >= b)
    }

    fn descend(&mut self, current: Option<T>) {
        let Some(first) = self.used.iter().position(|&u| !u) else {
            self.best = current;
            self.best_edges = self.stack.clone();
            return;
        };
        let free: Vec<u32> = (first + 1..self.values.len())
            .filter(|&j| !self.used[j])
            .map(|j| j as u32)
            .collect();
        // The edge that will hold the largest free vertex costs at least this much.
        let largest = &self.values[*free.last().expect("r >= 2 here") as usize];
        let mut low = self.values[first].clone();
        for &j in free.iter().take(self.r - 2) {
            low = &low * &self.values[j as usize];
        }
        if self.beaten(&(largest * &low)) {
            return;
        }
        self.used[first] = true;
        let k = self.r - 1;
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let mut edge = Vec::with_capacity(self.r);
            edge.push(first as u32);
            edge.extend(pick.iter().map(|&i| free[i]));
            let p = self.product(&edge);
            let worst = match &current {
                Some(c) if *c > p => c.clone(),
                _ => p,
            };
            if !self.beaten(&worst) {
                for &j in &edge[1..] {
                    self.used[j as usize] = true;
                }
                self.stack.push(edge);
                self.descend(Some(worst));
                let edge = self.stack.pop().expect("pushed above");
                for &j in &edge[1..] {
                    self.used[j as usize] = false;
                }
            }
            if !next_combination(&mut pick, free.len()) {
                break;
            }
        }
        self.used[first] = false;
    }
}

/// Smallest free vertex with the `r - 1` largest free ones, repeatedly (0-based).
pub(crate) fn greedy_edges(r: usize, len: usize) -> Vec<Vec<u32>> {
    let mut lo = 0u32;
    let mut hi = len as u32;
    let mut edges = Vec::with_capacity(len / r);
    while lo < hi {
        let mut e = vec![lo];
        lo += 1;
        for _ in 1..r {
            hi -= 1;
            e.push(hi);
        }
        e.sort_unstable();
        edges.push(e);
    }
    edges
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
