//! The anti-guessing gadget: one layer per symbol, each layer a copy of the
//! smallest forbidden graph `H` on `k` vertices. For layers `i < i'` that are
//! adjacent in a Ramsey-type graph, every vertex of layer `i` except slot
//! `x_i` is joined to all of layer `i'`. The slots `x_i` form an independent
//! set `X` of size `n`.

use std::collections::BTreeSet;

use super::{check_symbols, LayeredInstance};
use crate::engine::tape::{index_width, uint_bits};
use crate::engine::{
    encode_self_delimited, read_self_delimited, AdviceTape, ObjectiveKind, OnlineAlgorithm, OnlineInstance,
    Preemption, Session, Transcript,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guessing::{play_guessing, GuessView, Guesser, GuessingInstance};
use crate::property::PropertySpec;
use crate::ramsey::RamseyCertificate;

/// Builds the instance for string `x` over `1..=k`. Returns the layered
/// instance and the set `X` of planted slots.
pub fn build_anti_instance(x: &[u32], h: &Graph, gtilde: &RamseyCertificate) -> Result<(LayeredInstance, Vec<usize>)> {
    gtilde.require_verified()?;
    let k = h.n();
    let n = gtilde.n();
    if k == 0 {
        return Err(Error::Input("layer graph must be nonempty".into()));
    }
    if x.len() != n {
        return Err(Error::Input(format!("string length {} differs from the Ramsey graph order {n}", x.len())));
    }
    check_symbols(x, k)?;
    let mut g = Graph::empty(n * k);
    for i in 0..n {
        for (a, b) in h.edges() {
            g.set_edge(i * k + a, i * k + b, true);
        }
        for i2 in i + 1..n {
            if !gtilde.graph.has_edge(i, i2) {
                continue;
            }
            for j in (0..k).filter(|&j| j + 1 != x[i] as usize) {
                for j2 in 0..k {
                    g.set_edge(i * k + j, i2 * k + j2, true);
                }
            }
        }
    }
    let xs: Vec<usize> = x.iter().enumerate().map(|(i, &s)| i * k + s as usize - 1).collect();
    let special = xs.iter().map(|&v| Some(v)).collect();
    let li = LayeredInstance { instance: OnlineInstance::new(g), layer_size: k, special, construction: "anti-layers".into() };
    Ok((li, xs))
}

/// Back edges of slot `j` of layer `i = history.len()`.
pub fn anti_back_edges(h: &Graph, gtilde: &Graph, history: &[u32], j: usize) -> Vec<usize> {
    let k = h.n();
    let i = history.len();
    let mut back: Vec<usize> = (0..i * k)
        .filter(|&u| {
            let (l, s) = (u / k, u % k);
            gtilde.has_edge(l, i) && s + 1 != history[l] as usize
        })
        .collect();
    back.extend((0..j).filter(|&a| h.has_edge(a, j)).map(|a| i * k + a));
    back
}

/// An anti-guesser driven by a preemptive Max-π algorithm on the gadget. The
/// raw answer for layer `i` is the smallest slot not held after the layer.
/// With a header, the advice starts with `enc(n)` and a self-delimited list
/// of positions whose answers are replaced by the lowest other symbol.
pub struct AntiFromMaxPi<A> {
    h: Graph,
    gtilde: RamseyCertificate,
    property: PropertySpec,
    inner: A,
    with_header: bool,
    session: Option<Session>,
    errors: BTreeSet<usize>,
    raw: Vec<u32>,
    answers: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct AntiOutcome {
    pub raw_answers: Vec<u32>,
    pub answers: Vec<u32>,
    pub error_positions: Vec<usize>,
    pub transcript: Transcript,
}

impl<A: OnlineAlgorithm> AntiFromMaxPi<A> {
    pub fn new(h: Graph, gtilde: RamseyCertificate, property: PropertySpec, inner: A, with_header: bool) -> Result<Self> {
        gtilde.require_verified()?;
        Ok(AntiFromMaxPi {
            h,
            gtilde,
            property,
            inner,
            with_header,
            session: None,
            errors: BTreeSet::new(),
            raw: Vec::new(),
            answers: Vec::new(),
        })
    }

    pub fn finish(self, tape: &AdviceTape) -> AntiOutcome {
        let transcript = match &self.session {
            Some(s) => s.finish(tape),
            None => Session::new(self.property.clone(), Preemption::Preemptive, ObjectiveKind::Max, false).finish(tape),
        };
        AntiOutcome { raw_answers: self.raw, answers: self.answers, error_positions: self.errors.into_iter().collect(), transcript }
    }
}

impl<A: OnlineAlgorithm> Guesser for AntiFromMaxPi<A> {
    fn guess(&mut self, view: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32> {
        let history = view.history.ok_or_else(|| Error::Protocol("the anti guesser needs the history".into()))?;
        let n = self.gtilde.n();
        if self.session.is_none() {
            if self.with_header {
                let announced = read_self_delimited(tape)? as usize;
                if announced != n {
                    return Err(Error::Protocol(format!("advice announces n = {announced}, gadget has {n} layers")));
                }
                let count = read_self_delimited(tape)? as usize;
                if count > n {
                    return Err(Error::Decode { position: tape.bits_read(), msg: format!("{count} error positions for {n} layers") });
                }
                let width = index_width(n);
                self.errors = (0..count).map(|_| tape.read_uint(width) as usize).collect();
            }
            self.session = Some(Session::new(self.property.clone(), Preemption::Preemptive, ObjectiveKind::Max, false));
        }
        let k = self.h.n();
        let session = self.session.as_mut().expect("session started");
        for j in 0..k {
            let back = anti_back_edges(&self.h, &self.gtilde.graph, history, j);
            session.present(&back, &mut self.inner, tape)?;
        }
        let start = history.len() * k;
        let held: Vec<usize> = session.held().iter().filter(|&&u| u >= start).map(|&u| u - start).collect();
        let w = (0..k).find(|s| !held.contains(s)).ok_or_else(|| {
            Error::Soundness(format!("layer {} is held completely, which contains the forbidden graph", history.len() + 1))
        })?;
        let raw = w as u32 + 1;
        let answer = if self.errors.contains(&history.len()) { if raw == 1 { 2 } else { 1 } } else { raw };
        self.raw.push(raw);
        self.answers.push(answer);
        Ok(answer)
    }
}

/// Advice oracle: runs the raw guesser, lists the first (at most
/// `k * threshold`) positions where it matches `x`, and assembles
/// `enc(n) ∥ list ∥ inner advice`.
pub struct AntiAdvice {
    pub advice: Vec<bool>,
    pub error_positions: Vec<usize>,
    pub header_bits: usize,
    pub list_bits: usize,
    pub raw: AntiOutcome,
}

pub fn anti_advice<A: OnlineAlgorithm>(
    x: &[u32],
    h: &Graph,
    gtilde: &RamseyCertificate,
    property: &PropertySpec,
    inner: A,
    inner_advice: &[bool],
) -> Result<AntiAdvice> {
    let k = h.n();
    let mut raw = AntiFromMaxPi::new(h.clone(), gtilde.clone(), property.clone(), inner, false)?;
    let mut tape = AdviceTape::new(inner_advice.to_vec());
    play_guessing(&GuessingInstance::anti(k as u32, x.to_vec())?, &mut raw, &mut tape)?;
    let raw = raw.finish(&tape);
    let cap = k * gtilde.threshold;
    let errors: Vec<usize> = raw.raw_answers.iter().zip(x).enumerate().filter(|(_, (a, s))| a == s).map(|(i, _)| i).take(cap).collect();
    let n = gtilde.n();
    let header = encode_self_delimited(n as u64);
    let mut list = encode_self_delimited(errors.len() as u64);
    for &i in &errors {
        list.extend(uint_bits(i as u64, index_width(n)));
    }
    let (header_bits, list_bits) = (header.len(), list.len());
    let advice = [header, list, inner_advice.to_vec()].concat();
    Ok(AntiAdvice { advice, error_positions: errors, header_bits, list_bits, raw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::algorithms::{BitmapAdvice, RejectAll};
    use crate::engine::ObjectiveValue;
    use crate::property::builtin::independent_set;
    use crate::ramsey::ramsey_like_graph;

    fn gtilde() -> RamseyCertificate {
        ramsey_like_graph(12, &Graph::complete(2), 1.5, 7, 500).unwrap()
    }

    #[test]
    fn layers_and_planted_set() {
        let gt = gtilde();
        gt.require_verified().unwrap();
        let h = Graph::complete(2);
        let x: Vec<u32> = (0..12).map(|i| (i % 2 + 1) as u32).collect();
        let (li, xs) = build_anti_instance(&x, &h, &gt).unwrap();
        let g = li.instance.graph();
        assert_eq!(g.induced_subgraph(&xs).unwrap().edge_count(), 0);
        for i in 0..12 {
            assert_eq!(g.induced_subgraph(&li.layer(i).collect::<Vec<_>>()).unwrap(), h);
            for j in 0..2 {
                assert_eq!(li.instance.back_edges(i * 2 + j), anti_back_edges(&h, &gt.graph, &x[..i], j));
            }
        }
    }

    #[test]
    fn reject_all_and_planted() {
        let gt = gtilde();
        let h = Graph::complete(2);
        let p = independent_set();
        let x: Vec<u32> = vec![1, 2, 2, 1, 1, 1, 2, 1, 2, 2, 1, 1];
        let game = GuessingInstance::anti(2, x.clone()).unwrap();
        let mut g = AntiFromMaxPi::new(h.clone(), gt.clone(), p.clone(), RejectAll, false).unwrap();
        let r = play_guessing(&game, &mut g, &mut AdviceTape::empty()).unwrap();
        assert_eq!(r.score, ObjectiveValue::Finite(x.iter().filter(|&&s| s == 1).count() as u64));

        let (_, xs) = build_anti_instance(&x, &h, &gt).unwrap();
        let mut bitmap = vec![false; 24];
        for v in xs {
            bitmap[v] = true;
        }
        let mut g = AntiFromMaxPi::new(h, gt, p, BitmapAdvice, false).unwrap();
        let r = play_guessing(&game, &mut g, &mut AdviceTape::new(bitmap)).unwrap();
        assert_eq!(r.score, ObjectiveValue::Finite(0));
    }
}
