//! The online game: vertices are revealed one at a time together with their
//! edges to earlier vertices, and an algorithm (optionally reading an advice
//! tape) accepts, rejects and, in preemptive mode, discards held vertices.
//!
//! Vertices are named by revelation position `0..n` throughout.

pub mod algorithms;
pub mod tape;

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_text, BitSet, Graph};
use crate::property::PropertySpec;
pub use tape::{
    compose_advice, decode_self_delimited, encode_self_delimited, read_self_delimited, AdviceTape,
};

/// An ordered vertex sequence with prefix-revealed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnlineInstance {
    graph: Graph,
    order: Vec<usize>,
    presented: Graph,
    blind: bool,
}

impl OnlineInstance {
    /// Reveals `graph` in vertex order.
    pub fn new(graph: Graph) -> Self {
        let order = (0..graph.n()).collect();
        OnlineInstance { presented: graph.clone(), graph, order, blind: false }
    }

    /// Reveals `graph` in the given order: step `i` shows vertex `order[i]`.
    pub fn with_order(graph: Graph, order: Vec<usize>) -> Result<Self> {
        let presented = graph.permuted(&order)?;
        Ok(OnlineInstance { graph, order, presented, blind: false })
    }

    /// In a blind instance the algorithm sees only the step count.
    pub fn blind(mut self, blind: bool) -> Self {
        self.blind = blind;
        self
    }

    pub fn is_blind(&self) -> bool {
        self.blind
    }

    pub fn len(&self) -> usize {
        self.graph.n()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.n() == 0
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The graph relabelled by revelation position.
    pub fn presented(&self) -> &Graph {
        &self.presented
    }

    /// Original vertex shown at step `pos`.
    pub fn vertex_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    pub fn back_edges(&self, pos: usize) -> Vec<usize> {
        self.presented.back_neighbors(pos)
    }

    /// Text format, with a leading `blind` line for blind instances.
    pub fn to_text(&self) -> String {
        let body = self.presented.to_text();
        if self.blind {
            format!("blind\n{body}")
        } else {
            body
        }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (g, blind) = parse_text(text, true)?;
        Ok(OnlineInstance::new(g).blind(blind))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preemption {
    Plain,
    Preemptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveKind {
    Max,
    Min,
}

/// What the algorithm may look at when deciding on the newest vertex.
#[derive(Debug, Clone, Copy)]
pub struct StepView<'a> {
    /// Position of the newest vertex.
    pub step: usize,
    /// The graph induced by the revealed vertices; `None` in blind instances.
    pub revealed: Option<&'a Graph>,
    /// Vertices currently held, ascending.
    pub held: &'a [usize],
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decision {
    pub accept: bool,
    pub preempt: Vec<usize>,
}

impl Decision {
    pub fn accept() -> Self {
        Decision { accept: true, preempt: Vec::new() }
    }

    pub fn reject() -> Self {
        Decision::default()
    }

    pub fn with_preempt(mut self, preempt: Vec<usize>) -> Self {
        self.preempt = preempt;
        self
    }
}

/// A deterministic online algorithm.
pub trait OnlineAlgorithm {
    fn decide(&mut self, view: &StepView<'_>, tape: &mut AdviceTape) -> Result<Decision>;
}

impl<A: OnlineAlgorithm + ?Sized> OnlineAlgorithm for Box<A> {
    fn decide(&mut self, view: &StepView<'_>, tape: &mut AdviceTape) -> Result<Decision> {
        (**self).decide(view, tape)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub accepted: bool,
    pub preempted: Vec<usize>,
    pub survivors: Vec<usize>,
}

/// Profit or cost, with the infinite values used for infeasible outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectiveValue {
    NegInfinity,
    Finite(u64),
    PosInfinity,
}

impl ObjectiveValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            ObjectiveValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ObjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveValue::NegInfinity => f.write_str("-inf"),
            ObjectiveValue::Finite(v) => write!(f, "{v}"),
            ObjectiveValue::PosInfinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ObjectiveValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ObjectiveValue::Finite(v) => s.serialize_u64(*v),
            ObjectiveValue::NegInfinity => s.serialize_str("-inf"),
            ObjectiveValue::PosInfinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ObjectiveValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ObjectiveValue::Finite(v)),
            Raw::Text(t) if t == "-inf" => Ok(ObjectiveValue::NegInfinity),
            Raw::Text(t) if t == "inf" => Ok(ObjectiveValue::PosInfinity),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad objective {t:?}"))),
        }
    }
}

/// The full record of one game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub steps: Vec<StepRecord>,
    pub objective: ObjectiveValue,
    pub bits_read: usize,
    pub feasible_throughout: bool,
}

impl Transcript {
    /// The surviving set after the last step.
    pub fn final_set(&self) -> &[usize] {
        self.steps.last().map(|s| s.survivors.as_slice()).unwrap_or(&[])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

/// A game in progress. Drivers present vertices one at a time, which lets
/// reductions build instances online while simulating an inner algorithm.
#[derive(Debug, Clone)]
pub struct Session {
    property: PropertySpec,
    mode: Preemption,
    objective: ObjectiveKind,
    blind: bool,
    revealed: Graph,
    held: BitSet,
    held_list: Vec<usize>,
    held_ok: bool,
    steps: Vec<StepRecord>,
    feasible_throughout: bool,
}

impl Session {
    pub fn new(property: PropertySpec, mode: Preemption, objective: ObjectiveKind, blind: bool) -> Self {
        let held_ok = property.satisfies(&Graph::empty(0));
        Session {
            property,
            mode,
            objective,
            blind,
            revealed: Graph::empty(0),
            held: BitSet::new(0),
            held_list: Vec::new(),
            held_ok,
            steps: Vec::new(),
            feasible_throughout: true,
        }
    }

    pub fn revealed(&self) -> &Graph {
        &self.revealed
    }

    pub fn held(&self) -> &[usize] {
        &self.held_list
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    /// Whether the currently held set satisfies the property.
    pub fn held_satisfies(&self) -> bool {
        self.held_ok
    }

    pub fn feasible_throughout(&self) -> bool {
        self.feasible_throughout
    }

    /// Reveals a vertex adjacent to `back`, asks `alg`, and applies its decision.
    pub fn present(
        &mut self,
        back: &[usize],
        alg: &mut dyn OnlineAlgorithm,
        tape: &mut AdviceTape,
    ) -> Result<&StepRecord> {
        let v = self.revealed.push_vertex(back)?;
        let view = StepView {
            step: v,
            revealed: if self.blind { None } else { Some(&self.revealed) },
            held: &self.held_list,
        };
        let decision = alg.decide(&view, tape)?;
        self.apply(v, decision)
    }

    fn apply(&mut self, v: usize, decision: Decision) -> Result<&StepRecord> {
        let mut preempt = decision.preempt;
        preempt.sort_unstable();
        preempt.dedup();
        if self.mode == Preemption::Plain && !preempt.is_empty() {
            return Err(Error::Protocol(format!("step {v}: preemption of {preempt:?} in non-preemptive mode")));
        }
        if let Some(&u) = preempt.iter().find(|&&u| !self.held.contains(u)) {
            return Err(Error::Protocol(format!("step {v}: preempting vertex {u}, which is not held")));
        }
        for &u in &preempt {
            self.held.remove(u);
        }
        let hereditary = self.property.is_hereditary();
        let mut ok = if preempt.is_empty() || (hereditary && self.held_ok) {
            self.held_ok
        } else {
            self.property.satisfies_within(&self.revealed, &self.held)
        };
        if decision.accept {
            self.held.insert(v);
            ok = if hereditary && ok {
                self.property.satisfies_extension(&self.revealed, &self.held, v)
            } else if !hereditary && ok {
                true
            } else {
                self.property.satisfies_within(&self.revealed, &self.held)
            };
        }
        self.held_ok = ok;
        self.feasible_throughout &= ok;
        self.held_list = self.held.to_vec();
        self.steps.push(StepRecord { accepted: decision.accept, preempted: preempt, survivors: self.held_list.clone() });
        Ok(self.steps.last().expect("just pushed"))
    }

    /// The objective as the game stands now.
    pub fn objective_value(&self) -> ObjectiveValue {
        let size = self.held_list.len() as u64;
        match self.objective {
            ObjectiveKind::Max => {
                let feasible = match self.mode {
                    Preemption::Preemptive => self.feasible_throughout,
                    Preemption::Plain => self.held_ok,
                };
                if feasible {
                    ObjectiveValue::Finite(size)
                } else {
                    ObjectiveValue::NegInfinity
                }
            }
            ObjectiveKind::Min => {
                if self.held_ok {
                    ObjectiveValue::Finite(size)
                } else {
                    ObjectiveValue::PosInfinity
                }
            }
        }
    }

    pub fn finish(&self, tape: &AdviceTape) -> Transcript {
        Transcript {
            steps: self.steps.clone(),
            objective: self.objective_value(),
            bits_read: tape.bits_read(),
            feasible_throughout: self.feasible_throughout,
        }
    }
}

/// Plays `alg` on the whole instance.
pub fn run_game(
    inst: &OnlineInstance,
    alg: &mut dyn OnlineAlgorithm,
    property: &PropertySpec,
    mode: Preemption,
    tape: &mut AdviceTape,
    objective: ObjectiveKind,
) -> Result<Transcript> {
    let mut session = Session::new(property.clone(), mode, objective, inst.is_blind());
    for pos in 0..inst.len() {
        session.present(&inst.back_edges(pos), alg, tape)?;
    }
    Ok(session.finish(tape))
}

/// `OPT / profit` for maximization, `cost / OPT` for minimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompetitiveRatio {
    Finite(Ratio<u64>),
    Infinite,
}

impl CompetitiveRatio {
    pub fn as_f64(self) -> f64 {
        match self {
            CompetitiveRatio::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            CompetitiveRatio::Infinite => f64::INFINITY,
        }
    }

    /// Whether the ratio is at most `c`.
    pub fn within(self, c: Ratio<u64>) -> bool {
        matches!(self, CompetitiveRatio::Finite(r) if r <= c)
    }
}

impl fmt::Display for CompetitiveRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompetitiveRatio::Finite(r) => write!(f, "{r}"),
            CompetitiveRatio::Infinite => f.write_str("inf"),
        }
    }
}

pub fn competitive_ratio(objective: ObjectiveValue, opt_value: u64, kind: ObjectiveKind) -> Result<CompetitiveRatio> {
    match kind {
        ObjectiveKind::Max => {
            if opt_value == 0 {
                return Err(Error::Input("maximization ratio needs opt_value >= 1".into()));
            }
            Ok(match objective {
                ObjectiveValue::Finite(p) if p > 0 => CompetitiveRatio::Finite(Ratio::new(opt_value, p)),
                _ => CompetitiveRatio::Infinite,
            })
        }
        ObjectiveKind::Min => Ok(match objective {
            ObjectiveValue::Finite(cost) if opt_value > 0 => CompetitiveRatio::Finite(Ratio::new(cost, opt_value)),
            ObjectiveValue::Finite(0) => CompetitiveRatio::Finite(Ratio::from_integer(1)),
            _ => CompetitiveRatio::Infinite,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::algorithms::*;
    use super::*;
    use crate::property::builtin::*;

    fn edge_instance() -> OnlineInstance {
        OnlineInstance::new(Graph::complete(2))
    }

    #[test]
    fn accept_all_is_poisoned() {
        let mut tape = AdviceTape::empty();
        let t = run_game(&edge_instance(), &mut AcceptAll, &independent_set(), Preemption::Preemptive, &mut tape, ObjectiveKind::Max).unwrap();
        assert_eq!(t.objective, ObjectiveValue::NegInfinity);
        assert!(!t.feasible_throughout);
        assert_eq!(t.steps.len(), 2);
    }

    #[test]
    fn reject_all_profit_zero() {
        let mut tape = AdviceTape::empty();
        let t = run_game(&OnlineInstance::new(Graph::cycle(6)), &mut RejectAll, &triangle_free(), Preemption::Plain, &mut tape, ObjectiveKind::Max).unwrap();
        assert_eq!(t.objective, ObjectiveValue::Finite(0));
        assert_eq!(t.bits_read, 0);
    }

    struct Preempter;
    impl OnlineAlgorithm for Preempter {
        fn decide(&mut self, view: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
            Ok(if view.step == 1 { Decision::accept().with_preempt(vec![0]) } else { Decision::accept() })
        }
    }

    struct PreemptStranger;
    impl OnlineAlgorithm for PreemptStranger {
        fn decide(&mut self, view: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
            Ok(if view.step == 1 { Decision::reject().with_preempt(vec![1]) } else { Decision::reject() })
        }
    }

    #[test]
    fn preemption_rules() {
        let inst = edge_instance();
        let mut tape = AdviceTape::empty();
        let err = run_game(&inst, &mut Preempter, &independent_set(), Preemption::Plain, &mut tape, ObjectiveKind::Max);
        assert!(matches!(err, Err(Error::Protocol(_))));
        let t = run_game(&inst, &mut Preempter, &independent_set(), Preemption::Preemptive, &mut tape, ObjectiveKind::Max).unwrap();
        assert_eq!(t.objective, ObjectiveValue::Finite(1));
        assert!(t.feasible_throughout);
        assert_eq!(t.steps[1].preempted, vec![0]);
        let err = run_game(&inst, &mut PreemptStranger, &independent_set(), Preemption::Preemptive, &mut tape, ObjectiveKind::Max);
        assert!(matches!(err, Err(Error::Protocol(_))));
    }

    #[test]
    fn min_objective_infinite_when_infeasible() {
        let mut tape = AdviceTape::empty();
        let t = run_game(&OnlineInstance::new(Graph::complete(3)), &mut RejectAll, &contains_cycle(), Preemption::Plain, &mut tape, ObjectiveKind::Min).unwrap();
        assert_eq!(t.objective, ObjectiveValue::PosInfinity);
        let t = run_game(&OnlineInstance::new(Graph::complete(3)), &mut AcceptAll, &contains_cycle(), Preemption::Plain, &mut tape, ObjectiveKind::Min).unwrap();
        assert_eq!(t.objective, ObjectiveValue::Finite(3));
    }

    #[test]
    fn ratio_examples() {
        let r = |o, opt, k| competitive_ratio(ObjectiveValue::Finite(o), opt, k).unwrap();
        assert_eq!(r(5, 10, ObjectiveKind::Max), CompetitiveRatio::Finite(Ratio::from_integer(2)));
        assert_eq!(r(10, 10, ObjectiveKind::Max), CompetitiveRatio::Finite(Ratio::from_integer(1)));
        assert_eq!(r(6, 3, ObjectiveKind::Min), CompetitiveRatio::Finite(Ratio::from_integer(2)));
        assert_eq!(r(0, 3, ObjectiveKind::Max), CompetitiveRatio::Infinite);
        assert_eq!(competitive_ratio(ObjectiveValue::NegInfinity, 3, ObjectiveKind::Max).unwrap(), CompetitiveRatio::Infinite);
        assert_eq!(competitive_ratio(ObjectiveValue::PosInfinity, 3, ObjectiveKind::Min).unwrap(), CompetitiveRatio::Infinite);
        assert!(competitive_ratio(ObjectiveValue::Finite(1), 0, ObjectiveKind::Max).is_err());
    }

    #[test]
    fn transcript_json_shape() {
        let mut tape = AdviceTape::empty();
        let t = run_game(&edge_instance(), &mut AcceptAll, &independent_set(), Preemption::Preemptive, &mut tape, ObjectiveKind::Max).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["objective"], "-inf");
        assert_eq!(v["steps"][1]["survivors"], serde_json::json!([0, 1]));
        assert_eq!(Transcript::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn blind_view_hides_graph() {
        struct Probe(Vec<bool>);
        impl OnlineAlgorithm for Probe {
            fn decide(&mut self, view: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
                self.0.push(view.revealed.is_some());
                Ok(Decision::reject())
            }
        }
        let mut p = Probe(vec![]);
        let inst = OnlineInstance::new(Graph::cycle(4)).blind(true);
        run_game(&inst, &mut p, &independent_set(), Preemption::Plain, &mut AdviceTape::empty(), ObjectiveKind::Max).unwrap();
        assert_eq!(p.0, vec![false; 4]);
        assert_eq!(OnlineInstance::from_text(&inst.to_text()).unwrap(), inst);
    }

    #[test]
    fn ordered_instance_presents_permuted_graph() {
        let g = Graph::path(3);
        let inst = OnlineInstance::with_order(g, vec![1, 0, 2]).unwrap();
        assert_eq!(inst.back_edges(1), vec![0]);
        assert_eq!(inst.back_edges(2), vec![0]);
        assert_eq!(inst.vertex_at(0), 1);
    }
}
