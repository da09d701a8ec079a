//! Clique layers for preemptive independent set: each layer is a
//! `sigma`-clique whose designated vertex is non-adjacent to everything
//! revealed later, while every other vertex is adjacent to everything later.

use super::{check_symbols, LayeredInstance};
use crate::engine::tape::index_width;
use crate::engine::{AdviceTape, Decision, ObjectiveKind, OnlineAlgorithm, OnlineInstance, Preemption, Session, StepView, Transcript};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guessing::{GuessView, Guesser};
use crate::property::builtin::independent_set;

/// Builds `|q| + 1` clique layers of size `sigma`; layer `i < |q|` has
/// designated slot `q_i`, the last layer has none.
pub fn build_clique_layers(q: &[u32], sigma: usize) -> Result<LayeredInstance> {
    if sigma < 2 {
        return Err(Error::Input(format!("sigma must be at least 2, got {sigma}")));
    }
    check_symbols(q, sigma)?;
    let layers = q.len() + 1;
    let n = layers * sigma;
    let mut g = Graph::empty(n);
    for l in 0..layers {
        let designated = q.get(l).map(|&s| l * sigma + s as usize - 1);
        for u in l * sigma..(l + 1) * sigma {
            for v in u + 1..(l + 1) * sigma {
                g.set_edge(u, v, true);
            }
            if Some(u) != designated {
                for v in (l + 1) * sigma..n {
                    g.set_edge(u, v, true);
                }
            }
        }
    }
    let special = (0..layers).map(|l| q.get(l).map(|&s| l * sigma + s as usize - 1)).collect();
    Ok(LayeredInstance { instance: OnlineInstance::new(g), layer_size: sigma, special, construction: "clique-layers".into() })
}

/// Back edges of slot `j` of layer `i = history.len()`.
pub fn clique_layer_back_edges(sigma: usize, history: &[u32], j: usize) -> Vec<usize> {
    let i = history.len();
    let earlier = (0..i * sigma).filter(|&u| u % sigma != history[u / sigma] as usize - 1);
    earlier.chain(i * sigma..i * sigma + j).collect()
}

/// Puts a preemptive independent-set algorithm into normal form on clique
/// layers:
/// - at the first vertex of a layer, held vertices adjacent to it (wrong
///   guesses from the previous layer) are preempted;
/// - preemptions of held earlier-layer vertices that are not adjacent to the
///   current vertex (designated vertices) are dropped;
/// - at the last vertex of a layer, if nothing in the layer is held, the
///   vertex is accepted.
///
/// Holding two vertices of one layer is not repaired; the engine then marks
/// the run infeasible.
#[derive(Debug, Clone)]
pub struct IndsetNormalizer<A> {
    pub inner: A,
    pub sigma: usize,
}

impl<A: OnlineAlgorithm> OnlineAlgorithm for IndsetNormalizer<A> {
    fn decide(&mut self, view: &StepView<'_>, tape: &mut AdviceTape) -> Result<Decision> {
        let mut d = self.inner.decide(view, tape)?;
        let Some(g) = view.revealed else {
            return Ok(d);
        };
        let v = view.step;
        let start = v - v % self.sigma;
        d.preempt.retain(|u| view.held.contains(u) && (*u >= start || g.has_edge(*u, v)));
        if v == start {
            d.preempt.extend(view.held.iter().filter(|&&u| u < start && g.has_edge(u, v)));
        }
        let layer_held = view.held.iter().any(|&u| u >= start && !d.preempt.contains(&u));
        if v % self.sigma == self.sigma - 1 && !d.accept && !layer_held {
            d.accept = true;
        }
        Ok(d)
    }
}

/// Picks the layer slot given by `ceil(log2 sigma)` advice bits per layer.
#[derive(Debug, Clone, Copy)]
pub struct LayerChoiceAdvice {
    pub sigma: usize,
    choice: usize,
}

impl LayerChoiceAdvice {
    pub fn new(sigma: usize) -> Self {
        LayerChoiceAdvice { sigma, choice: 0 }
    }
}

impl OnlineAlgorithm for LayerChoiceAdvice {
    fn decide(&mut self, view: &StepView<'_>, tape: &mut AdviceTape) -> Result<Decision> {
        let slot = view.step % self.sigma;
        if slot == 0 {
            self.choice = tape.read_uint(index_width(self.sigma)) as usize;
        }
        Ok(if slot == self.choice { Decision::accept() } else { Decision::reject() })
    }
}

/// Accepts the first vertex of every layer.
#[derive(Debug, Clone, Copy)]
pub struct FirstOfLayer {
    pub sigma: usize,
}

impl OnlineAlgorithm for FirstOfLayer {
    fn decide(&mut self, view: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
        Ok(if view.step % self.sigma == 0 { Decision::accept() } else { Decision::reject() })
    }
}

#[derive(Debug, Clone)]
pub struct CliqueLayerOutcome {
    pub answers: Vec<u32>,
    pub correct: usize,
    pub last_layer_held: bool,
    /// Largest number of same-layer vertices held at the end of any step.
    pub max_held_per_layer: usize,
    pub transcript: Transcript,
}

impl CliqueLayerOutcome {
    /// Profit of the independent-set run; `None` if it went infeasible.
    pub fn profit(&self) -> Option<u64> {
        self.transcript.objective.finite()
    }
}

/// A sigma-ary guesser that presents one clique layer per request to a
/// normalized preemptive independent-set algorithm and answers the slot of
/// the vertex held in that layer.
pub struct CliqueLayerGuesser<A> {
    sigma: usize,
    inner: IndsetNormalizer<A>,
    session: Session,
    answers: Vec<u32>,
    max_held_per_layer: usize,
}

impl<A: OnlineAlgorithm> CliqueLayerGuesser<A> {
    pub fn new(sigma: usize, inner: A) -> Self {
        CliqueLayerGuesser {
            sigma,
            inner: IndsetNormalizer { inner, sigma },
            session: Session::new(independent_set(), Preemption::Preemptive, ObjectiveKind::Max, false),
            answers: Vec::new(),
            max_held_per_layer: 0,
        }
    }

    fn present_layer(&mut self, history: &[u32], tape: &mut AdviceTape) -> Result<()> {
        for j in 0..self.sigma {
            let back = clique_layer_back_edges(self.sigma, history, j);
            self.session.present(&back, &mut self.inner, tape)?;
            let mut per_layer = std::collections::HashMap::new();
            for &u in self.session.held() {
                *per_layer.entry(u / self.sigma).or_insert(0usize) += 1;
            }
            self.max_held_per_layer = self.max_held_per_layer.max(per_layer.values().copied().max().unwrap_or(0));
        }
        Ok(())
    }

    pub fn finish(mut self, q: &[u32], tape: &mut AdviceTape) -> Result<CliqueLayerOutcome> {
        self.present_layer(q, tape)?;
        let start = q.len() * self.sigma;
        let last_layer_held = self.session.held().iter().any(|&u| u >= start);
        let correct = self.answers.iter().zip(q).filter(|(a, s)| a == s).count();
        Ok(CliqueLayerOutcome {
            answers: self.answers,
            correct,
            last_layer_held,
            max_held_per_layer: self.max_held_per_layer,
            transcript: self.session.finish(tape),
        })
    }
}

impl<A: OnlineAlgorithm> Guesser for CliqueLayerGuesser<A> {
    fn guess(&mut self, view: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32> {
        let history = view.history.ok_or_else(|| Error::Protocol("the clique-layer guesser needs the history".into()))?;
        self.present_layer(history, tape)?;
        let start = history.len() * self.sigma;
        let slot = self.session.held().iter().find(|&&u| u >= start).map(|&u| u - start).unwrap_or(0);
        let answer = slot as u32 + 1;
        self.answers.push(answer);
        Ok(answer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::tape::uint_bits;
    use crate::guessing::{play_guessing, GuessingInstance};
    use crate::optimum::opt_max_pi;

    fn all_strings(sigma: u32, len: usize) -> Vec<Vec<u32>> {
        (0..sigma.pow(len as u32))
            .map(|mut code| {
                (0..len)
                    .map(|_| {
                        let s = code % sigma + 1;
                        code /= sigma;
                        s
                    })
                    .collect()
            })
            .collect()
    }

    fn run<A: OnlineAlgorithm>(q: &[u32], alg: A, advice: Vec<bool>) -> CliqueLayerOutcome {
        let mut guesser = CliqueLayerGuesser::new(3, alg);
        let mut tape = AdviceTape::new(advice);
        play_guessing(&GuessingInstance::sgkh(3, q.to_vec()).unwrap(), &mut guesser, &mut tape).unwrap();
        guesser.finish(q, &mut tape).unwrap()
    }

    #[test]
    fn structure_and_opt() {
        for q in all_strings(3, 3) {
            let li = build_clique_layers(&q, 3).unwrap();
            let g = li.instance.graph();
            assert_eq!(opt_max_pi(g, &independent_set()).unwrap().len(), 4);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(li.instance.back_edges(i * 3 + j), clique_layer_back_edges(3, &q[..i], j));
                }
            }
        }
    }

    #[test]
    fn full_advice_is_perfect() {
        for q in all_strings(3, 3) {
            let advice: Vec<bool> = q.iter().flat_map(|&s| uint_bits(s as u64 - 1, 2)).collect();
            let out = run(&q, LayerChoiceAdvice::new(3), advice);
            assert_eq!(out.correct, 3);
            assert_eq!(out.profit(), Some(4));
        }
    }

    #[test]
    fn first_vertex_counts_ones() {
        for q in all_strings(3, 3) {
            let out = run(&q, FirstOfLayer { sigma: 3 }, vec![]);
            assert_eq!(out.correct, q.iter().filter(|&&s| s == 1).count());
            assert_eq!(out.profit(), Some(out.correct as u64 + 1));
            assert!(out.max_held_per_layer <= 1);
        }
    }
}
