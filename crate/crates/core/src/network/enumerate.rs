//! Enumeration of series-parallel shapes up to isomorphism.

use serde::{Deserialize, Serialize};

use super::spnet::{Kind, SpNet, Template};
use super::structure::{has_pure_reactive_series_arm, is_irreducible, violates_cutset_rule};
use crate::error::{Error, Result};

/// Largest element count accepted by the enumerators.
pub const MAX_ELEMENTS: usize = 9;

/// Every non-isomorphic series-parallel tree with `n` leaves drawn from
/// `alphabet`, with each composite's children taken as a multiset.
fn enumerate_trees(n: usize, alphabet: &[Kind]) -> Vec<Template> {
    // series[k] / parallel[k]: trees of size k whose root is that composite.
    let mut series: Vec<Vec<Template>> = vec![Vec::new(); n + 1];
    let mut parallel: Vec<Vec<Template>> = vec![Vec::new(); n + 1];
    let leaves: Vec<Template> = alphabet.iter().map(|&k| SpNet::element(k, ())).collect();
    for size in 2..=n {
        for want_series in [true, false] {
            let mut pool: Vec<(usize, &Template)> = leaves.iter().map(|t| (1, t)).collect();
            let other = if want_series { &parallel } else { &series };
            for (k, trees) in other.iter().enumerate().take(size).skip(2) {
                pool.extend(trees.iter().map(|t| (k, t)));
            }
            let mut out = Vec::new();
            let mut chosen = Vec::new();
            multisets(&pool, 0, size, &mut chosen, &mut |picked| {
                let kids: Vec<Template> = picked.iter().map(|&i| pool[i].1.clone()).collect();
                let t = if want_series { SpNet::series(kids) } else { SpNet::parallel(kids) };
                out.push(t.expect("at least two children"));
            });
            if want_series {
                series[size] = out;
            } else {
                parallel[size] = out;
            }
        }
    }
    if n == 1 {
        return leaves;
    }
    let mut all = std::mem::take(&mut series[n]);
    all.append(&mut parallel[n]);
    all
}

fn multisets(
    pool: &[(usize, &Template)],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        if chosen.len() >= 2 {
            emit(chosen);
        }
        return;
    }
    for i in start..pool.len() {
        let size = pool[i].0;
        if size > remaining {
            continue;
        }
        chosen.push(i);
        multisets(pool, i, remaining - size, chosen, emit);
        chosen.pop();
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(Error::InvalidInput(format!("element count must be in 1..={MAX_ELEMENTS}, got {n}")));
    }
    Ok(())
}

/// Unlabeled two-terminal series-parallel shapes with `n` edges. Every leaf
/// of the returned templates is marked `R`.
pub fn enumerate_topologies(n: usize) -> Result<Vec<Template>> {
    check_size(n)?;
    Ok(enumerate_trees(n, &[Kind::R]))
}

/// Pruning rules for labeled enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSet {
    pub cut_set: bool,
    pub no_pure_reactive_series_arm: bool,
    pub require_resistor: bool,
    pub reactive_count: Option<usize>,
    pub irreducible: bool,
}

impl FilterSet {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn accepts(&self, t: &Template) -> bool {
        (!self.cut_set || !violates_cutset_rule(t))
            && (!self.no_pure_reactive_series_arm || !has_pure_reactive_series_arm(t))
            && (!self.require_resistor || t.count_kind(Kind::R) > 0)
            && self.reactive_count.is_none_or(|k| t.reactive_count() == k)
            && (!self.irreducible || is_irreducible(t))
    }
}

/// Series-parallel networks of `n` R/L/C elements up to isomorphism,
/// keeping only those accepted by `filters`.
pub fn enumerate_labeled(n: usize, filters: &FilterSet) -> Result<Vec<Template>> {
    check_size(n)?;
    Ok(enumerate_trees(n, &Kind::ALL).into_iter().filter(|t| filters.accepts(t)).collect())
}
