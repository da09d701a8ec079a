//! Optimal Min-π with logarithmic advice for properties whose minimal
//! witnesses are small: the advice lists the positions of a smallest
//! witness occurrence.

use crate::engine::tape::{index_width, uint_bits};
use crate::engine::{encode_self_delimited, read_self_delimited, AdviceTape, Decision, OnlineAlgorithm, OnlineInstance, StepView};
use crate::error::{Error, Result};
use crate::graph::{BitSet, Graph};
use crate::optimum::opt_min_pi;
use crate::property::PropertySpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Start,
    AcceptAll,
    Seeking { width: usize, next: usize },
    Done,
}

/// Reads `enc(n)` and then sorted vertex positions in `ceil(log2 n)`-bit
/// fields, accepting each listed vertex and stopping as soon as the held set
/// satisfies the property. `enc(0)` means the instance has no solution and
/// every vertex is accepted.
#[derive(Debug, Clone)]
pub struct ObligatorySubgraphAlgorithm {
    property: PropertySpec,
    state: State,
}

impl ObligatorySubgraphAlgorithm {
    pub fn new(property: PropertySpec) -> Result<Self> {
        if property.is_hereditary() {
            return Err(Error::Input(format!("{} is not cohereditary", property.name())));
        }
        Ok(ObligatorySubgraphAlgorithm { property, state: State::Start })
    }
}

impl OnlineAlgorithm for ObligatorySubgraphAlgorithm {
    fn decide(&mut self, view: &StepView<'_>, tape: &mut AdviceTape) -> Result<Decision> {
        let g = view.revealed.ok_or_else(|| Error::Protocol("this algorithm needs the revealed graph".into()))?;
        if self.state == State::Start {
            let n = read_self_delimited(tape)? as usize;
            self.state = if n == 0 {
                State::AcceptAll
            } else if self.property.satisfies(&Graph::empty(0)) {
                State::Done
            } else {
                let width = index_width(n);
                State::Seeking { width, next: tape.read_uint(width) as usize }
            };
        }
        match self.state {
            State::AcceptAll => Ok(Decision::accept()),
            State::Seeking { width, next } if next == view.step => {
                let mut set = BitSet::from_indices(g.n(), view.held);
                set.insert(view.step);
                self.state = if self.property.satisfies_within(g, &set) {
                    State::Done
                } else {
                    State::Seeking { width, next: tape.read_uint(width) as usize }
                };
                Ok(Decision::accept())
            }
            _ => Ok(Decision::reject()),
        }
    }
}

/// `enc(n)` followed by the positions of a minimum solution, or `enc(0)` if
/// the instance does not have the property at all.
pub fn obligatory_advice(inst: &OnlineInstance, p: &PropertySpec) -> Result<Vec<bool>> {
    match opt_min_pi(inst.presented(), p)? {
        None => Ok(encode_self_delimited(0)),
        Some(opt) => {
            let n = inst.len();
            let width = index_width(n);
            let mut bits = encode_self_delimited(n as u64);
            for v in opt {
                bits.extend(uint_bits(v as u64, width));
            }
            Ok(bits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_game, ObjectiveKind, ObjectiveValue, Preemption};
    use crate::property::builtin::*;

    fn run(g: Graph, p: &PropertySpec) -> (ObjectiveValue, usize, usize) {
        let inst = OnlineInstance::new(g);
        let advice = obligatory_advice(&inst, p).unwrap();
        let len = advice.len();
        let mut alg = ObligatorySubgraphAlgorithm::new(p.clone()).unwrap();
        let t = run_game(&inst, &mut alg, p, Preemption::Plain, &mut AdviceTape::new(advice), ObjectiveKind::Min).unwrap();
        (t.objective, t.bits_read, len)
    }

    #[test]
    fn triangle_plus_isolates() {
        let mut g = Graph::empty(5);
        for _ in 0..3 {
            let n = g.n();
            let back: Vec<usize> = (5..n).collect();
            g.push_vertex(&back).unwrap();
        }
        let n = g.n();
        let bound = encode_self_delimited(n as u64).len() + 3 * index_width(n);
        for p in [contains_triangle(), contains_cycle()] {
            let (obj, bits, len) = run(g.clone(), &p);
            assert_eq!(obj, ObjectiveValue::Finite(3));
            assert_eq!(bits, len);
            assert!(bits <= bound);
        }
    }

    #[test]
    fn exact_triangle_and_free_instances() {
        assert_eq!(run(Graph::complete(3), &contains_triangle()).0, ObjectiveValue::Finite(3));
        let (obj, _, _) = run(Graph::path(6), &contains_triangle());
        assert_eq!(obj, ObjectiveValue::PosInfinity);
        assert!(ObligatorySubgraphAlgorithm::new(independent_set()).is_err());
    }
}
