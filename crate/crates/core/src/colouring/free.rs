//! Free/forbidden colouring of 3-partite 3-graphs.
//!
//! Each colour is forbidden on one class with probability `q` per class and
//! free otherwise. A vertex takes a colour that is forbidden elsewhere when it
//! can, and otherwise its most preferred free colour under `P_c`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{random_permutation, validate, Colouring, ListAssignment, Tag, Validation};
use crate::error::{parameter, Result};
use crate::hypergraph::Hypergraph;
use crate::preference::{NamedOrder, PreferenceOrder};
use crate::rng;

/// `q` with `q^2 = (1 - 2q) / 9`, that is `(sqrt(10) - 1) / 9`.
pub fn forbid_probability() -> f64 {
    (10f64.sqrt() - 1.0) / 9.0
}

/// List size `ceil(0.78 log_3 d) + 2` at which the method is designed to work.
pub fn free_forbidden_ell(d: f64) -> usize {
    (0.78 * d.ln() / 3f64.ln()).ceil() as usize + 2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    /// Vertices whose every colour was forbidden on their class.
    pub list_exhausted: usize,
    pub monochromatic: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeForbiddenRun {
    pub q: f64,
    /// Padded palette size, a multiple of 3.
    pub m: usize,
    pub attempts: Vec<Attempt>,
    pub colouring: Option<Colouring>,
    /// Colour roles of the successful attempt: the class a colour is
    /// forbidden on, or `None` when free.
    pub roles: Option<Vec<Option<usize>>>,
    pub validation: Option<Validation>,
    pub success: bool,
}

/// Colour role: `Some(i)` forbidden on class `i`, `None` free.
type Role = Option<usize>;

pub fn free_forbidden_colouring(
    g: &Hypergraph,
    lists: &ListAssignment,
    seed: u64,
    max_attempts: usize,
) -> Result<FreeForbiddenRun> {
    if g.r() != 3 {
        return Err(parameter!("free/forbidden colouring needs r = 3, got r={}", g.r()));
    }
    lists.check_fits(g)?;
    let m = lists.t().div_ceil(3) * 3;
    let order = PreferenceOrder::named(NamedOrder::Pc, 3, m)?;
    let q = forbid_probability();
    let mut attempts = Vec::new();
    for attempt in 0..max_attempts {
        let mut rng = rng::stream(seed, attempt as u64);
        let image = random_permutation(m, &mut rng);
        let roles: Vec<Role> = (0..m)
            .map(|_| {
                let u: f64 = rng.gen();
                (u < 3.0 * q).then(|| ((u / q) as usize).min(2))
            })
            .collect();
        let mut colouring = Colouring::blank(g.vertex_count());
        let mut exhausted = 0;
        for v in 0..g.vertex_count() {
            let class = g.class_of(v as u32);
            let list = lists.list(v);
            let non_free = list.iter().copied().find(|&c| roles[c as usize].is_some_and(|i| i != class));
            let choice = match non_free {
                Some(c) => Some((c, Tag::NonFree)),
                None => list
                    .iter()
                    .copied()
                    .filter(|&c| roles[c as usize].is_none())
                    .max_by_key(|&c| order.rank(class, image[c as usize]))
                    .map(|c| (c, Tag::Free)),
            };
            match choice {
                Some((c, tag)) => colouring.set(v, c, tag),
                None => exhausted += 1,
            }
        }
        let validation = validate(g, lists, &colouring);
        attempts.push(Attempt { list_exhausted: exhausted, monochromatic: validation.monochromatic.len() });
        if validation.ok {
            return Ok(FreeForbiddenRun {
                q,
                m,
                attempts,
                colouring: Some(colouring),
                roles: Some(roles),
                validation: Some(validation),
                success: true,
            });
        }
    }
    Ok(FreeForbiddenRun { q, m, attempts, colouring: None, roles: None, validation: None, success: false })
}
