//! Built-in online algorithms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AdviceTape, Decision, OnlineAlgorithm, OnlineInstance, StepView};
use crate::error::Result;
use crate::graph::BitSet;
use crate::optimum::opt_max_pi;
use crate::property::PropertySpec;

#[derive(Debug, Clone, Copy, Default)]
pub struct RejectAll;

impl OnlineAlgorithm for RejectAll {
    fn decide(&mut self, _: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
        Ok(Decision::reject())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AcceptAll;

impl OnlineAlgorithm for AcceptAll {
    fn decide(&mut self, _: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
        Ok(Decision::accept())
    }
}

/// Accepts a vertex whenever the held set plus the vertex still satisfies the
/// property. In blind instances it sees nothing and rejects.
#[derive(Debug, Clone)]
pub struct Greedy {
    property: PropertySpec,
}

impl Greedy {
    pub fn new(property: PropertySpec) -> Self {
        Greedy { property }
    }
}

fn held_plus(view: &StepView<'_>, n: usize) -> BitSet {
    let mut set = BitSet::from_indices(n, view.held);
    set.insert(view.step);
    set
}

impl OnlineAlgorithm for Greedy {
    fn decide(&mut self, view: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
        let Some(g) = view.revealed else {
            return Ok(Decision::reject());
        };
        let ok = self.property.satisfies_within(g, &held_plus(view, g.n()));
        Ok(if ok { Decision::accept() } else { Decision::reject() })
    }
}

/// Reads one bit per vertex and accepts on 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct BitmapAdvice;

impl OnlineAlgorithm for BitmapAdvice {
    fn decide(&mut self, _: &StepView<'_>, tape: &mut AdviceTape) -> Result<Decision> {
        Ok(if tape.read_bit() { Decision::accept() } else { Decision::reject() })
    }
}

/// Indicator of an optimal Max-π solution in revelation order, the tape for
/// [`BitmapAdvice`].
pub fn opt_bitmap(inst: &OnlineInstance, p: &PropertySpec) -> Result<Vec<bool>> {
    let opt = opt_max_pi(inst.presented(), p)?;
    let mut bits = vec![false; inst.len()];
    for v in opt {
        bits[v] = true;
    }
    Ok(bits)
}

/// A seeded preemptive algorithm that keeps its held set feasible: it tries
/// each new vertex with probability one half and, when the vertex does not
/// fit, discards randomly chosen held vertices until it does.
#[derive(Debug, Clone)]
pub struct SeededPreemptive {
    property: PropertySpec,
    rng: ChaCha8Rng,
}

impl SeededPreemptive {
    pub fn new(property: PropertySpec, seed: u64) -> Self {
        SeededPreemptive { property, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl OnlineAlgorithm for SeededPreemptive {
    fn decide(&mut self, view: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
        let Some(g) = view.revealed else {
            return Ok(Decision::reject());
        };
        if !self.rng.random_bool(0.5) {
            return Ok(Decision::reject());
        }
        let mut set = held_plus(view, g.n());
        if self.property.satisfies_within(g, &set) {
            return Ok(Decision::accept());
        }
        if self.rng.random_bool(0.5) {
            return Ok(Decision::reject());
        }
        let mut order = view.held.to_vec();
        order.shuffle(&mut self.rng);
        let mut dropped = Vec::new();
        for u in order {
            set.remove(u);
            dropped.push(u);
            if self.property.satisfies_within(g, &set) {
                return Ok(Decision::accept().with_preempt(dropped));
            }
        }
        // the vertex alone violates the property
        Ok(Decision::reject())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_game, ObjectiveKind, ObjectiveValue, Preemption};
    use crate::graph::Graph;
    use crate::property::builtin::*;

    #[test]
    fn bitmap_with_opt_tape_is_optimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let inst = OnlineInstance::new(Graph::random(8, 0.5, &mut rng));
            for p in [independent_set(), triangle_free()] {
                let bits = opt_bitmap(&inst, &p).unwrap();
                let opt = bits.iter().filter(|&&b| b).count() as u64;
                let mut tape = AdviceTape::new(bits);
                let t = run_game(&inst, &mut BitmapAdvice, &p, Preemption::Plain, &mut tape, ObjectiveKind::Max).unwrap();
                assert_eq!(t.objective, ObjectiveValue::Finite(opt));
                assert_eq!(t.bits_read, 8);
            }
        }
    }

    #[test]
    fn greedy_and_seeded_stay_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..30 {
            let inst = OnlineInstance::new(Graph::random(10, 0.4, &mut rng));
            for p in [independent_set(), forest()] {
                let t = run_game(&inst, &mut Greedy::new(p.clone()), &p, Preemption::Plain, &mut AdviceTape::empty(), ObjectiveKind::Max).unwrap();
                assert!(t.feasible_throughout);
                let t = run_game(&inst, &mut SeededPreemptive::new(p.clone(), seed), &p, Preemption::Preemptive, &mut AdviceTape::empty(), ObjectiveKind::Max).unwrap();
                assert!(t.feasible_throughout);
                assert!(t.objective.finite().is_some());
            }
        }
    }
}
