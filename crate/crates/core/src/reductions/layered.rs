//! The layered gadget for preemptive Max-π: `n / sigma` layers, each a copy
//! of a small Ramsey-type graph `G_1`, joined by a sparsified complete
//! multipartite graph `G_2` in which every large transversal (one vertex per
//! layer) induces the forbidden graph. A guessing string picks one
//! distinguished vertex per layer; the forward edges of distinguished
//! vertices are deleted so they form an independent set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_symbols, LayeredInstance};
use crate::engine::tape::{index_width, uint_bits};
use crate::engine::{AdviceTape, ObjectiveKind, OnlineAlgorithm, OnlineInstance, Preemption, Session, Transcript};
use crate::error::{Error, Result};
use crate::graph::{BitSet, Graph};
use crate::guessing::{play_guessing, GuessView, Guesser, GuessingInstance};
use crate::iso::find_induced;
use crate::property::PropertySpec;
use crate::ramsey::{ramsey_like_graph, threshold, RamseyCertificate};

/// Largest number of transversals the exhaustive check will walk.
pub const TRANSVERSAL_BUDGET: u128 = 20_000_000;

/// A graph on `nprime` blocks of `layer_size` vertices with no edges inside
/// blocks, in which every transversal of `threshold` blocks induces `target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransversalCertificate {
    pub graph: Graph,
    pub layer_size: usize,
    pub target: Graph,
    pub threshold: usize,
    pub verified: bool,
    pub seed: u64,
    pub attempts: usize,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn transversal_count(nprime: usize, sigma: usize, t: usize) -> u128 {
    binomial(nprime, t).saturating_mul((sigma as u128).saturating_pow(t as u32))
}

/// Whether every transversal over `t` layers, drawn from the allowed
/// vertices of each layer, induces `target` in `g`.
pub fn check_transversals(
    g: &Graph,
    sigma: usize,
    t: usize,
    target: &Graph,
    allowed: &dyn Fn(usize) -> bool,
) -> Result<bool> {
    let nprime = g.n() / sigma;
    if t > nprime || t == 0 {
        return Ok(true);
    }
    if transversal_count(nprime, sigma, t) > TRANSVERSAL_BUDGET {
        return Err(Error::Resource(format!("{} transversals exceed the budget", transversal_count(nprime, sigma, t))));
    }
    let mut layers = Vec::with_capacity(t);
    let mut picked = Vec::with_capacity(t);
    Ok(walk_layers(g, sigma, nprime, t, target, allowed, 0, &mut layers, &mut picked))
}

#[allow(clippy::too_many_arguments)]
fn walk_layers(
    g: &Graph,
    sigma: usize,
    nprime: usize,
    t: usize,
    target: &Graph,
    allowed: &dyn Fn(usize) -> bool,
    from: usize,
    layers: &mut Vec<usize>,
    picked: &mut Vec<usize>,
) -> bool {
    if layers.len() == t {
        return walk_picks(g, sigma, target, allowed, layers, picked);
    }
    for l in from..nprime {
        if nprime - l < t - layers.len() {
            break;
        }
        layers.push(l);
        let ok = walk_layers(g, sigma, nprime, t, target, allowed, l + 1, layers, picked);
        layers.pop();
        if !ok {
            return false;
        }
    }
    true
}

fn walk_picks(
    g: &Graph,
    sigma: usize,
    target: &Graph,
    allowed: &dyn Fn(usize) -> bool,
    layers: &[usize],
    picked: &mut Vec<usize>,
) -> bool {
    if picked.len() == layers.len() {
        let set = BitSet::from_indices(g.n(), picked);
        return find_induced(g, target, &set, None).is_some();
    }
    let l = layers[picked.len()];
    for v in l * sigma..(l + 1) * sigma {
        if !allowed(v) {
            continue;
        }
        picked.push(v);
        let ok = walk_picks(g, sigma, target, allowed, layers, picked);
        picked.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// The layered gadget before a guessing string is embedded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredGadget {
    pub sigma: usize,
    pub nprime: usize,
    pub kappa1: f64,
    pub kappa2: f64,
    pub layer_graph: RamseyCertificate,
    pub cross: TransversalCertificate,
    pub graph: Graph,
}

impl LayeredGadget {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn target(&self) -> &Graph {
        &self.layer_graph.target
    }

    pub fn threshold1(&self) -> usize {
        self.layer_graph.threshold
    }

    pub fn threshold2(&self) -> usize {
        self.cross.threshold
    }

    /// Integer bound on non-distinguished vertices in any solution:
    /// `(threshold1 - 1)(threshold2 - 1)`.
    pub fn k_int(&self) -> usize {
        (self.threshold1() - 1) * (self.threshold2() - 1)
    }

    /// `kappa1 kappa2 log2 sigma log2 n`.
    pub fn k_real(&self) -> f64 {
        self.kappa1 * self.kappa2 * (self.sigma as f64).log2() * (self.n() as f64).log2()
    }

    /// Largest candidate set a feasible run can produce.
    pub fn max_candidates(&self) -> usize {
        self.threshold1().saturating_sub(1).max(1)
    }

    pub fn require_verified(&self) -> Result<()> {
        self.layer_graph.require_verified()?;
        if !self.cross.verified {
            return Err(Error::Unverified(format!(
                "cross-layer graph failed the transversal check at threshold {} (attempts {})",
                self.cross.threshold, self.cross.attempts
            )));
        }
        Ok(())
    }

    fn combine(layer: &Graph, cross: &Graph, sigma: usize) -> Graph {
        let mut g = cross.clone();
        for l in 0..g.n() / sigma {
            for (a, b) in layer.edges() {
                g.set_edge(l * sigma + a, l * sigma + b, true);
            }
        }
        g
    }
}

/// Builds the gadget for `n` vertices in layers of `sigma`. The layer graph
/// comes from the Ramsey search with constant `kappa1`; the cross graph keeps
/// each pair between different layers with probability 1/2 and is accepted
/// only after every transversal of `ceil(kappa2 log2 n)` layers is checked.
/// Unverified parts are returned flagged; downstream users refuse them.
pub fn build_layered_gadget(
    n: usize,
    sigma: usize,
    h: &Graph,
    kappa1: f64,
    kappa2: f64,
    seed: u64,
    budget: usize,
) -> Result<LayeredGadget> {
    if sigma < 2 || n == 0 || n % sigma != 0 {
        return Err(Error::Input(format!("n = {n} must be a positive multiple of sigma = {sigma} >= 2")));
    }
    let nprime = n / sigma;
    let layer_graph = ramsey_like_graph(sigma, h, kappa1, seed, budget)?;
    let t2 = threshold(n, kappa2, h.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    let mut cross = None;
    let attempts = budget.max(1);
    for attempt in 1..=attempts {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u / sigma + 1) * sigma..n {
                if rng.random_bool(0.5) {
                    g.set_edge(u, v, true);
                }
            }
        }
        let ok = check_transversals(&g, sigma, t2, h, &|_| true)?;
        let done = ok || attempt == attempts;
        if done {
            cross = Some(TransversalCertificate { graph: g, layer_size: sigma, target: h.clone(), threshold: t2, verified: ok, seed, attempts: attempt });
            break;
        }
    }
    let cross = cross.expect("loop always sets the certificate");
    let graph = LayeredGadget::combine(&layer_graph.graph, &cross.graph, sigma);
    Ok(LayeredGadget { sigma, nprime, kappa1, kappa2, layer_graph, cross, graph })
}

/// Distinguished vertex of layer `i` for symbol `q_i`.
fn distinguished(sigma: usize, i: usize, symbol: u32) -> usize {
    i * sigma + symbol as usize - 1
}

/// The instance for guessing string `q` of length `n' - 1`: every forward edge
/// of each distinguished vertex is removed. The last layer has no
/// distinguished vertex; any of its vertices extends the distinguished set
/// to an independent set of size `n'`.
pub fn embed_guessing_string(gadget: &LayeredGadget, q: &[u32]) -> Result<LayeredInstance> {
    gadget.require_verified()?;
    let sigma = gadget.sigma;
    if q.len() + 1 != gadget.nprime {
        return Err(Error::Input(format!("string length {} must be n' - 1 = {}", q.len(), gadget.nprime - 1)));
    }
    check_symbols(q, sigma)?;
    let mut g = gadget.graph.clone();
    let mut special = Vec::with_capacity(gadget.nprime);
    for (i, &s) in q.iter().enumerate() {
        let d = distinguished(sigma, i, s);
        for u in (i + 1) * sigma..g.n() {
            g.set_edge(d, u, false);
        }
        special.push(Some(d));
    }
    special.push(None);
    Ok(LayeredInstance { instance: OnlineInstance::new(g), layer_size: sigma, special, construction: "layered-ramsey".into() })
}

/// Back edges of slot `j` of layer `i`, from `q_1 .. q_{i-1}` only.
pub fn layered_back_edges(gadget: &LayeredGadget, history: &[u32], j: usize) -> Vec<usize> {
    let sigma = gadget.sigma;
    let i = history.len();
    let v = i * sigma + j;
    (0..v)
        .filter(|&u| {
            let lu = u / sigma;
            gadget.graph.has_edge(u, v) && (lu == i || distinguished(sigma, lu, history[lu]) != u)
        })
        .collect()
}

/// Result of running the layered reduction to the end.
#[derive(Debug, Clone)]
pub struct LayeredOutcome {
    pub answers: Vec<u32>,
    /// Layer-local candidate sets (0-based slots).
    pub candidates: Vec<Vec<usize>>,
    /// Layers whose candidate set contains the distinguished vertex.
    pub good: usize,
    pub correct: usize,
    pub j: usize,
    pub surviving_distinguished: usize,
    pub transcript: Transcript,
}

/// A guesser for the sigma-ary game that presents one layer per request to
/// a preemptive Max-π algorithm and answers the `j`-th vertex of the layer's
/// candidate set, `j` being read from `ceil(log2 J)` advice bits first.
/// Short candidate sets are padded with the remaining slots in ascending order.
pub struct PreemptiveAsGuesser<A> {
    gadget: LayeredGadget,
    property: PropertySpec,
    inner: A,
    session: Option<Session>,
    j: usize,
    candidates: Vec<Vec<usize>>,
    answers: Vec<u32>,
}

impl<A: OnlineAlgorithm> PreemptiveAsGuesser<A> {
    pub fn new(gadget: LayeredGadget, property: PropertySpec, inner: A) -> Result<Self> {
        gadget.require_verified()?;
        Ok(PreemptiveAsGuesser { gadget, property, inner, session: None, j: 1, candidates: Vec::new(), answers: Vec::new() })
    }

    pub fn j_width(&self) -> usize {
        index_width(self.gadget.max_candidates())
    }

    fn present_layer(&mut self, history: &[u32], tape: &mut AdviceTape) -> Result<()> {
        let session = self.session.as_mut().expect("session started");
        for j in 0..self.gadget.sigma {
            let back = layered_back_edges(&self.gadget, history, j);
            session.present(&back, &mut self.inner, tape)?;
        }
        Ok(())
    }

    /// Presents the last layer and tallies the run against the full string.
    pub fn finish(mut self, q: &[u32], tape: &mut AdviceTape) -> Result<LayeredOutcome> {
        if self.session.is_none() {
            self.session = Some(Session::new(self.property.clone(), Preemption::Preemptive, ObjectiveKind::Max, false));
        }
        self.present_layer(q, tape)?;
        let sigma = self.gadget.sigma;
        let session = self.session.as_ref().expect("session started");
        let good = self.candidates.iter().zip(q).filter(|(c, &s)| c.contains(&(s as usize - 1))).count();
        let correct = self.answers.iter().zip(q).filter(|(a, s)| a == s).count();
        let surviving_distinguished = q
            .iter()
            .enumerate()
            .filter(|&(i, &s)| session.held().contains(&distinguished(sigma, i, s)))
            .count();
        Ok(LayeredOutcome {
            answers: self.answers,
            candidates: self.candidates,
            good,
            correct,
            j: self.j,
            surviving_distinguished,
            transcript: session.finish(tape),
        })
    }
}

impl<A: OnlineAlgorithm> Guesser for PreemptiveAsGuesser<A> {
    fn guess(&mut self, view: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32> {
        let history = view.history.ok_or_else(|| Error::Protocol("the layered guesser needs the history".into()))?;
        if self.session.is_none() {
            self.j = tape.read_uint(self.j_width()) as usize + 1;
            self.session = Some(Session::new(self.property.clone(), Preemption::Preemptive, ObjectiveKind::Max, false));
        }
        self.present_layer(history, tape)?;
        let sigma = self.gadget.sigma;
        let start = history.len() * sigma;
        let held = self.session.as_ref().expect("session started").held();
        let cand: Vec<usize> = held.iter().filter(|&&v| v >= start && v < start + sigma).map(|&v| v - start).collect();
        if cand.len() >= self.gadget.threshold1() {
            return Err(Error::Soundness(format!(
                "layer {} holds {} vertices, at least the layer threshold {}",
                history.len() + 1,
                cand.len(),
                self.gadget.threshold1()
            )));
        }
        let mut padded = cand.clone();
        padded.extend((0..sigma).filter(|s| !cand.contains(s)));
        let answer = padded[(self.j - 1).min(sigma - 1)] as u32 + 1;
        self.candidates.push(cand);
        self.answers.push(answer);
        Ok(answer)
    }
}

/// Runs the reduction once for the given `j` and inner advice.
pub fn run_layered_reduction<A: OnlineAlgorithm>(
    gadget: &LayeredGadget,
    q: &[u32],
    property: &PropertySpec,
    inner: A,
    j: usize,
    inner_advice: &[bool],
) -> Result<(LayeredOutcome, usize)> {
    let mut guesser = PreemptiveAsGuesser::new(gadget.clone(), property.clone(), inner)?;
    let width = guesser.j_width();
    let mut tape = AdviceTape::new([uint_bits((j - 1) as u64, width), inner_advice.to_vec()].concat());
    let inst = GuessingInstance::sgkh(gadget.sigma as u32, q.to_vec())?;
    play_guessing(&inst, &mut guesser, &mut tape)?;
    let outcome = guesser.finish(q, &mut tape)?;
    Ok((outcome, tape.bits_read()))
}

/// The advice oracle's choice of `j`: tries every `j` and keeps the one with
/// the most correct answers (lowest `j` on ties).
pub fn best_j<A: OnlineAlgorithm>(
    gadget: &LayeredGadget,
    q: &[u32],
    property: &PropertySpec,
    make_inner: &dyn Fn() -> A,
    inner_advice: &[bool],
) -> Result<LayeredOutcome> {
    let mut best: Option<LayeredOutcome> = None;
    for j in 1..=gadget.max_candidates() {
        let (outcome, _) = run_layered_reduction(gadget, q, property, make_inner(), j, inner_advice)?;
        if best.as_ref().is_none_or(|b| outcome.correct > b.correct) {
            best = Some(outcome);
        }
    }
    Ok(best.expect("at least one j"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::algorithms::{BitmapAdvice, RejectAll};
    use crate::optimum::opt_max_pi;
    use crate::property::builtin::independent_set;

    fn fixture() -> LayeredGadget {
        build_layered_gadget(16, 4, &Graph::complete(2), 1.5, 1.0, 3, 2000).unwrap()
    }

    fn independence(g: &Graph) -> usize {
        (0..1u64 << g.n()).filter(|&m| g.induced_by_mask(m).edge_count() == 0).map(|m| m.count_ones() as usize).max().unwrap()
    }

    #[test]
    fn gadget_verifies() {
        let gd = fixture();
        gd.require_verified().unwrap();
        assert_eq!((gd.threshold1(), gd.threshold2()), (3, 4));
        for l in 0..4 {
            let layer: Vec<usize> = (l * 4..l * 4 + 4).collect();
            assert!(independence(&gd.graph.induced_subgraph(&layer).unwrap()) < 3);
        }
    }

    #[test]
    fn single_layer_is_layer_graph() {
        let gd = build_layered_gadget(4, 4, &Graph::complete(2), 1.5, 1.0, 3, 100).unwrap();
        assert_eq!(gd.nprime, 1);
        assert_eq!(gd.graph, gd.layer_graph.graph);
    }

    #[test]
    fn embedding_structure() {
        let gd = fixture();
        for q in [vec![1, 1, 1], vec![2, 4, 3], vec![4, 4, 1]] {
            let li = embed_guessing_string(&gd, &q).unwrap();
            let g = li.instance.graph();
            let mut dist = li.special_vertices();
            for last in li.layer(3) {
                dist.push(last);
                assert_eq!(g.induced_subgraph(&dist).unwrap().edge_count(), 0);
                dist.pop();
            }
            let opt = opt_max_pi(g, &independent_set()).unwrap().len();
            assert!(opt >= 4 && opt <= 4 + gd.k_int());
            for i in 0..3 {
                for j in 0..4 {
                    assert_eq!(li.instance.back_edges(i * 4 + j), layered_back_edges(&gd, &q[..i], j));
                }
            }
        }
        assert!(embed_guessing_string(&gd, &[1, 5, 1]).is_err());
    }

    #[test]
    fn planted_and_reject_all() {
        let gd = fixture();
        let q = vec![3, 1, 2];
        let p = independent_set();
        let li = embed_guessing_string(&gd, &q).unwrap();
        let mut planted = vec![false; 16];
        for v in li.special_vertices() {
            planted[v] = true;
        }
        let out = best_j(&gd, &q, &p, &|| BitmapAdvice, &planted).unwrap();
        assert_eq!(out.good, 3);
        assert_eq!(out.correct, 3);
        let (out, _) = run_layered_reduction(&gd, &q, &p, RejectAll, 1, &[]).unwrap();
        assert_eq!((out.good, out.surviving_distinguished), (0, 0));
    }
}
