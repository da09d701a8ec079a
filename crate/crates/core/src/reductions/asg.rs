//! Max-π without preemption versus asymmetric binary string guessing.
//!
//! One direction wraps a blind guesser as a Max-π algorithm (answer 0 means
//! accept). The other builds, from a binary string `x` and a Ramsey-type base
//! graph, the graph `G_x` in which the zero positions `I_x` form an
//! independent set (or clique), and turns a Max-π algorithm on `G_x` into a
//! guesser that uses a short correction string on top of its advice.

use std::collections::BTreeSet;

use super::Orientation;
use crate::engine::tape::{index_width, uint_bits};
use crate::engine::{
    encode_self_delimited, read_self_delimited, run_game, AdviceTape, Decision, ObjectiveKind, OnlineAlgorithm,
    OnlineInstance, Preemption, Session, StepView,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guessing::{GuessView, Guesser};
use crate::property::PropertySpec;
use crate::ramsey::RamseyCertificate;

/// Runs a blind binary guesser alongside the game and accepts exactly the
/// vertices it answers 0 for.
#[derive(Debug, Clone)]
pub struct BlindAsgAsMaxPi<G> {
    pub guesser: G,
}

impl<G: Guesser> OnlineAlgorithm for BlindAsgAsMaxPi<G> {
    fn decide(&mut self, view: &StepView<'_>, tape: &mut AdviceTape) -> Result<Decision> {
        let gv = GuessView { step: view.step, sigma: 2, n: None, history: None };
        match self.guesser.guess(&gv, tape)? {
            0 => Ok(Decision::accept()),
            1 => Ok(Decision::reject()),
            y => Err(Error::Protocol(format!("step {}: binary guesser answered {y}", view.step))),
        }
    }
}

/// `G_x`: the base graph with every forward edge of a zero position deleted
/// (independent orientation) or added (clique orientation). Returns the
/// instance and the zero positions `I_x`.
pub fn build_marked_graph(
    x: &[bool],
    base: &RamseyCertificate,
    orientation: Orientation,
) -> Result<(OnlineInstance, Vec<usize>)> {
    base.require_verified()?;
    let n = base.n();
    if x.len() != n {
        return Err(Error::Input(format!("string length {} differs from base graph order {n}", x.len())));
    }
    let mut g = base.graph.clone();
    let present = orientation == Orientation::Clique;
    for i in (0..n).filter(|&i| !x[i]) {
        for j in i + 1..n {
            g.set_edge(i, j, present);
        }
    }
    let zeros = (0..n).filter(|&i| !x[i]).collect();
    Ok((OnlineInstance::new(g), zeros))
}

/// Back edges of vertex `i` of `G_x`, computed from `x_1 .. x_{i-1}` only.
pub fn marked_back_edges(base: &Graph, orientation: Orientation, history: &[bool]) -> Vec<usize> {
    let i = history.len();
    (0..i)
        .filter(|&j| match (history[j], orientation) {
            (true, _) => base.has_edge(j, i),
            (false, Orientation::Independent) => false,
            (false, Orientation::Clique) => true,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionString {
    /// Members of `S` outside `I_x`.
    pub s_out: Vec<usize>,
    /// Extra members of `I_x` added to balance the count.
    pub s_in: Vec<usize>,
    pub encoded: Vec<bool>,
}

fn encode_index_list(items: &[usize], width: usize) -> Vec<bool> {
    let mut out = encode_self_delimited(items.len() as u64);
    for &v in items {
        out.extend(uint_bits(v as u64, width));
    }
    out
}

fn read_index_list(tape: &mut AdviceTape, width: usize, limit: usize) -> Result<Vec<usize>> {
    let count = read_self_delimited(tape)? as usize;
    if count > limit {
        return Err(Error::Decode { position: tape.bits_read(), msg: format!("list of {count} indices exceeds {limit}") });
    }
    Ok((0..count).map(|_| tape.read_uint(width) as usize).collect())
}

/// Builds `S_out = S \ I` and `S_in` = the lowest-index members of `I \ S`
/// needed so that `|(S \ S_out) ∪ S_in| = min(|S|, |I|)`.
pub fn make_correction(s: &[usize], i_set: &[usize], threshold: usize, n: usize) -> Result<CorrectionString> {
    let s: BTreeSet<usize> = s.iter().copied().collect();
    let i: BTreeSet<usize> = i_set.iter().copied().collect();
    let s_out: Vec<usize> = s.difference(&i).copied().collect();
    if s_out.len() > threshold {
        return Err(Error::Soundness(format!(
            "solution has {} vertices outside the planted set, more than the threshold {threshold}",
            s_out.len()
        )));
    }
    let inside = s.len() - s_out.len();
    let need = s.len().min(i.len()) - inside;
    let s_in: Vec<usize> = i.difference(&s).copied().take(need).collect();
    let width = index_width(n);
    let mut encoded = encode_index_list(&s_out, width);
    encoded.extend(encode_index_list(&s_in, width));
    Ok(CorrectionString { s_out, s_in, encoded })
}

/// Declared length bound of a correction string: both lists hold at most
/// `threshold` indices of `ceil(log2 n)` bits plus a self-delimited count.
pub fn correction_bound_bits(threshold: usize, n: usize) -> usize {
    2 * (encode_self_delimited(threshold as u64).len() + threshold * index_width(n))
}

/// A known-history binary guesser built from a non-preemptive Max-π
/// algorithm. Advice: `enc(n)`, the correction string, then the inner
/// algorithm's advice.
#[derive(Clone)]
pub struct MaxPiAsAsg<A> {
    base: RamseyCertificate,
    orientation: Orientation,
    property: PropertySpec,
    inner: A,
    session: Option<Session>,
    s_out: BTreeSet<usize>,
    s_in: BTreeSet<usize>,
}

impl<A: OnlineAlgorithm> MaxPiAsAsg<A> {
    pub fn new(base: RamseyCertificate, orientation: Orientation, property: PropertySpec, inner: A) -> Result<Self> {
        base.require_verified()?;
        Ok(MaxPiAsAsg { base, orientation, property, inner, session: None, s_out: BTreeSet::new(), s_in: BTreeSet::new() })
    }

    /// Vertices the inner algorithm accepted so far.
    pub fn inner_solution(&self) -> Vec<usize> {
        self.session.as_ref().map(|s| s.held().to_vec()).unwrap_or_default()
    }

    pub fn session(&self) -> Option<&Session> {
        self.session.as_ref()
    }
}

impl<A: OnlineAlgorithm> Guesser for MaxPiAsAsg<A> {
    fn guess(&mut self, view: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32> {
        let history = view.history.ok_or_else(|| Error::Protocol("the derived guesser needs the history".into()))?;
        if self.session.is_none() {
            let n = read_self_delimited(tape)? as usize;
            if n != self.base.n() {
                return Err(Error::Protocol(format!("advice announces n = {n}, base graph has {} vertices", self.base.n())));
            }
            let width = index_width(n);
            self.s_out = read_index_list(tape, width, n)?.into_iter().collect();
            self.s_in = read_index_list(tape, width, n)?.into_iter().collect();
            self.session = Some(Session::new(self.property.clone(), Preemption::Plain, ObjectiveKind::Max, false));
        }
        let bits: Vec<bool> = history.iter().map(|&s| s == 1).collect();
        let back = marked_back_edges(&self.base.graph, self.orientation, &bits);
        let session = self.session.as_mut().expect("initialized above");
        let accepted = session.present(&back, &mut self.inner, tape)?.accepted;
        let v = view.step;
        Ok(if self.s_in.contains(&v) {
            0
        } else if self.s_out.contains(&v) {
            1
        } else if accepted {
            0
        } else {
            1
        })
    }
}

/// What the advice oracle computes for the derived guesser.
#[derive(Debug, Clone)]
pub struct AsgAdvice {
    pub advice: Vec<bool>,
    pub correction: CorrectionString,
    pub inner_solution: Vec<usize>,
    pub planted: Vec<usize>,
    pub header_bits: usize,
}

/// Runs the inner algorithm on `G_x` with its advice and assembles
/// `enc(n) ∥ e_x ∥ inner advice`.
pub fn asg_advice_from_maxpi<A: OnlineAlgorithm>(
    x: &[bool],
    base: &RamseyCertificate,
    orientation: Orientation,
    property: &PropertySpec,
    mut inner: A,
    inner_advice: &[bool],
) -> Result<AsgAdvice> {
    let (inst, planted) = build_marked_graph(x, base, orientation)?;
    let mut tape = AdviceTape::new(inner_advice.to_vec());
    let t = run_game(&inst, &mut inner, property, Preemption::Plain, &mut tape, ObjectiveKind::Max)?;
    if t.objective.finite().is_none() {
        return Err(Error::Soundness("inner algorithm returned a set violating the property".into()));
    }
    let s = t.final_set().to_vec();
    let correction = make_correction(&s, &planted, base.threshold, base.n())?;
    let header = encode_self_delimited(base.n() as u64);
    let header_bits = header.len();
    let advice = [header, correction.encoded.clone(), inner_advice.to_vec()].concat();
    Ok(AsgAdvice { advice, correction, inner_solution: s, planted, header_bits })
}
