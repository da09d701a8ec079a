//! Seeded search for graphs in which every large vertex subset induces a
//! fixed target graph `H`.
//!
//! Samples are `G(n, 1/2)` graphs. A sample is accepted only after an
//! exhaustive check that its largest `H`-free induced subgraph has fewer
//! than `threshold` vertices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{for_each_k_subset, Graph};
use crate::optimum::max_satisfying_mask;
use crate::property::{mask_to_set, PropertySpec};

/// Default vertex bound for Ramsey-type verification.
pub const VERIFY_BOUND: usize = 20;

/// Default constant in the subset threshold: 2 for `K_2`, 3 otherwise.
pub fn default_alpha(target: &Graph) -> f64 {
    if target.n() == 2 && target.edge_count() == 1 {
        2.0
    } else {
        3.0
    }
}

/// `max(ceil(alpha * log2 n), |H|)`. A subset smaller than `H` can never
/// contain it, so the threshold never goes below the target order.
pub fn threshold(n: usize, alpha: f64, target_order: usize) -> usize {
    ceil_log_product(alpha, n).max(target_order)
}

/// `ceil(alpha * log2 n)` with a small tolerance so exact products are not
/// pushed up by rounding noise; `n <= 1` yields 0.
pub fn ceil_log_product(alpha: f64, n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    let x = alpha * (n as f64).log2();
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RamseyCertificate {
    pub graph: Graph,
    pub target: Graph,
    pub alpha: f64,
    pub threshold: usize,
    pub verified: bool,
    pub seed: u64,
    pub attempts: usize,
}

impl RamseyCertificate {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified(format!(
                "no verified graph on {} vertices for threshold {} (attempts {})",
                self.graph.n(),
                self.threshold,
                self.attempts
            )))
        }
    }
}

/// Size of the largest induced subgraph of `g` that avoids `target`, capped:
/// the search stops once `cap` vertices are found.
fn largest_free_subset(g: &Graph, target: &Graph, cap: usize) -> usize {
    let p = PropertySpec::forbidden("target-free", vec![target.clone()]).expect("non-empty target");
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    max_satisfying_mask(g, &p, all, Some(cap)).count_ones() as usize
}

/// Whether every vertex subset of size at least `threshold` contains `target`.
pub fn check_subset_condition(g: &Graph, target: &Graph, threshold: usize) -> bool {
    threshold > g.n() || largest_free_subset(g, target, threshold) < threshold
}

/// Independent re-verification: walks every `threshold`-subset and runs the
/// induced-subgraph search on each.
pub fn reverify(cert: &RamseyCertificate) -> bool {
    let g = &cert.graph;
    if cert.threshold > g.n() {
        return true;
    }
    if g.n() > 64 {
        return false;
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    for_each_k_subset(all, cert.threshold, |mask| {
        crate::iso::find_induced(g, &cert.target, &mask_to_set(g.n(), mask), None).is_some()
    })
}

/// Samples `G(n, 1/2)` graphs until one passes the subset check, or the
/// budget runs out (then the best sample is returned with `verified = false`).
pub fn ramsey_like_graph(n: usize, target: &Graph, alpha: f64, seed: u64, budget: usize) -> Result<RamseyCertificate> {
    ramsey_like_graph_bounded(n, target, alpha, seed, budget, VERIFY_BOUND)
}

pub fn ramsey_like_graph_bounded(
    n: usize,
    target: &Graph,
    alpha: f64,
    seed: u64,
    budget: usize,
    bound: usize,
) -> Result<RamseyCertificate> {
    if target.n() == 0 {
        return Err(Error::Input("target graph must be nonempty".into()));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Input(format!("alpha must be positive, got {alpha}")));
    }
    if n > bound.min(64) {
        return Err(Error::Resource(format!("verification on {n} vertices exceeds bound {}", bound.min(64))));
    }
    let thr = threshold(n, alpha, target.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Graph)> = None;
    for attempt in 1..=budget.max(1) {
        let g = Graph::random(n, 0.5, &mut rng);
        let free = if thr > n { 0 } else { largest_free_subset(&g, target, thr) };
        if free < thr || thr > n {
            return Ok(RamseyCertificate { graph: g, target: target.clone(), alpha, threshold: thr, verified: true, seed, attempts: attempt });
        }
        if best.as_ref().is_none_or(|(b, _)| free < *b) {
            best = Some((free, g));
        }
    }
    let (_, graph) = best.expect("at least one attempt");
    Ok(RamseyCertificate { graph, target: target.clone(), alpha, threshold: thr, verified: false, seed, attempts: budget.max(1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independence number by full enumeration, as the oracle for `H = K_2`.
    fn independence_number(g: &Graph) -> usize {
        (0..1u64 << g.n())
            .filter(|&m| g.induced_by_mask(m).edge_count() == 0)
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn n16_k2_alpha2_verifies() {
        let cert = ramsey_like_graph(16, &Graph::complete(2), 2.0, 1, 50).unwrap();
        assert_eq!(cert.threshold, 8);
        assert!(cert.verified);
        assert!(independence_number(&cert.graph) <= 7);
        assert!(reverify(&cert));
    }

    #[test]
    fn single_vertex_is_vacuous() {
        let cert = ramsey_like_graph(1, &Graph::complete(2), 2.0, 0, 1).unwrap();
        assert_eq!(cert.threshold, 2);
        assert!(cert.verified);
    }

    #[test]
    fn threshold_two_needs_complete_graph() {
        let cert = ramsey_like_graph(16, &Graph::complete(2), 0.5, 5, 100).unwrap();
        assert_eq!(cert.threshold, 2);
        assert!(!cert.verified);
        assert!(cert.require_verified().is_err());
        assert_ne!(cert.graph, Graph::complete(16));
        assert!(!reverify(&cert));
    }

    #[test]
    fn bounds_and_domain() {
        assert!(matches!(ramsey_like_graph(21, &Graph::complete(2), 2.0, 0, 1), Err(Error::Resource(_))));
        assert!(matches!(ramsey_like_graph(8, &Graph::empty(0), 2.0, 0, 1), Err(Error::Input(_))));
        assert_eq!(default_alpha(&Graph::complete(2)), 2.0);
        assert_eq!(default_alpha(&Graph::complete(3)), 3.0);
        assert_eq!(ceil_log_product(1.5, 4), 3);
        assert_eq!(ceil_log_product(2.0, 12), 8);
    }

    #[test]
    fn verified_certificates_reverify() {
        for seed in 0..5 {
            let cert = ramsey_like_graph(12, &Graph::complete(3), 1.2, seed, 200).unwrap();
            if cert.verified {
                assert!(reverify(&cert));
            }
            let cert = ramsey_like_graph(10, &Graph::complete(2), 1.5, seed, 200).unwrap();
            assert_eq!(cert.verified, reverify(&cert));
        }
    }
}
