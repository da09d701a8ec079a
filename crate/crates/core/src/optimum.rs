//! Offline exact optima for Max-π and Min-π on small graphs, and the
//! clique/independent-set dispatch for hereditary properties.

use crate::error::{Error, Result};
use crate::graph::{for_each_k_subset, mask_iter, Graph};
use crate::property::{mask_to_set, PropertyMode, PropertySpec};

/// Default vertex bound for the exhaustive optimum searches.
pub const BRUTE_FORCE_BOUND: usize = 25;

fn universe(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A maximum-cardinality vertex set whose induced subgraph satisfies `p`.
pub fn opt_max_pi(g: &Graph, p: &PropertySpec) -> Result<Vec<usize>> {
    opt_max_pi_bounded(g, p, BRUTE_FORCE_BOUND)
}

pub fn opt_max_pi_bounded(g: &Graph, p: &PropertySpec, bound: usize) -> Result<Vec<usize>> {
    if !p.is_hereditary() {
        return Err(Error::Input(format!("{} is not hereditary", p.name())));
    }
    if g.n() > bound.min(64) {
        return Err(Error::Resource(format!("opt_max_pi on {} vertices exceeds bound {}", g.n(), bound.min(64))));
    }
    let mask = max_satisfying_mask(g, p, universe(g.n()), None);
    Ok(mask_iter(mask).collect())
}

/// Branch and bound over include/exclude decisions in vertex order. A vertex
/// is only included while the set stays inside the property, so no superset
/// of a violating set is ever visited. With `stop_at`, returns as soon as a
/// satisfying set of that size is seen.
pub(crate) fn max_satisfying_mask(g: &Graph, p: &PropertySpec, allowed: u64, stop_at: Option<usize>) -> u64 {
    let verts: Vec<usize> = mask_iter(allowed).collect();
    let mut best = 0u64;
    let mut best_size = 0usize;
    let mut done = false;
    branch(g, p, &verts, 0, 0, &mut best, &mut best_size, stop_at, &mut done);
    best
}

#[allow(clippy::too_many_arguments)]
fn branch(
    g: &Graph,
    p: &PropertySpec,
    verts: &[usize],
    idx: usize,
    current: u64,
    best: &mut u64,
    best_size: &mut usize,
    stop_at: Option<usize>,
    done: &mut bool,
) {
    let size = current.count_ones() as usize;
    if size > *best_size {
        *best = current;
        *best_size = size;
        if stop_at.is_some_and(|s| size >= s) {
            *done = true;
        }
    }
    if *done || idx == verts.len() || size + (verts.len() - idx) <= *best_size {
        return;
    }
    let v = verts[idx];
    let with = current | 1 << v;
    let ok = match p.mode() {
        PropertyMode::HereditaryForbidden => p.satisfies_extension(g, &mask_to_set(g.n(), with), v),
        _ => p.satisfies_mask(g, with),
    };
    if ok {
        branch(g, p, verts, idx + 1, with, best, best_size, stop_at, done);
    }
    branch(g, p, verts, idx + 1, current, best, best_size, stop_at, done);
}

/// A minimum-cardinality vertex set whose induced subgraph satisfies the
/// cohereditary property `p`, or `None` if `g` itself does not.
pub fn opt_min_pi(g: &Graph, p: &PropertySpec) -> Result<Option<Vec<usize>>> {
    opt_min_pi_bounded(g, p, BRUTE_FORCE_BOUND)
}

pub fn opt_min_pi_bounded(g: &Graph, p: &PropertySpec, bound: usize) -> Result<Option<Vec<usize>>> {
    if p.is_hereditary() {
        return Err(Error::Input(format!("{} is not cohereditary", p.name())));
    }
    if g.n() > bound.min(64) {
        return Err(Error::Resource(format!("opt_min_pi on {} vertices exceeds bound {}", g.n(), bound.min(64))));
    }
    if !p.satisfies(g) {
        return Ok(None);
    }
    let all = universe(g.n());
    for size in 0..=g.n() {
        let mut found = None;
        for_each_k_subset(all, size, |mask| {
            if p.satisfies_mask(g, mask) {
                found = Some(mask);
                false
            } else {
                true
            }
        });
        if let Some(mask) = found {
            return Ok(Some(mask_iter(mask).collect()));
        }
    }
    unreachable!("g satisfies p, so the full vertex set qualifies")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HereditaryFamily {
    Cliques,
    IndependentSets,
    Both,
}

/// Reports which of the families `K_i` / `co-K_i` (for `i <= bound`) satisfy
/// the hereditary property `p`. A non-trivial hereditary property passes at
/// least one of them.
pub fn clique_or_independent(p: &PropertySpec, bound: usize) -> Result<HereditaryFamily> {
    if !p.is_hereditary() {
        return Err(Error::Input(format!("{} is not hereditary", p.name())));
    }
    let cliques = (1..=bound).all(|i| p.satisfies(&Graph::complete(i)));
    let independent = (1..=bound).all(|i| p.satisfies(&Graph::empty(i)));
    match (cliques, independent) {
        (true, true) => Ok(HereditaryFamily::Both),
        (true, false) => Ok(HereditaryFamily::Cliques),
        (false, true) => Ok(HereditaryFamily::IndependentSets),
        (false, false) => Err(Error::Misconfigured(format!(
            "{} fails on both a clique and an independent set of order <= {bound}",
            p.name()
        ))),
    }
}
