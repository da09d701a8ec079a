//! String guessing games: guessing with known history (cost = wrong
//! guesses), its anti variant (cost = correct guesses), and asymmetric
//! binary guessing with known or blind history (profit = zeros answered,
//! provided every 1 of the string is answered with 1).

pub mod bounds;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::engine::tape::index_width;
use crate::engine::{AdviceTape, ObjectiveValue};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Sgkh,
    AntiSgkh,
    MaxasgKnown,
    MaxasgBlind,
}

impl Variant {
    pub fn is_maxasg(self) -> bool {
        matches!(self, Variant::MaxasgKnown | Variant::MaxasgBlind)
    }

    /// Smallest legal symbol: 1 for the sigma-ary games, 0 for maxasg.
    pub fn min_symbol(self) -> u32 {
        if self.is_maxasg() {
            0
        } else {
            1
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "sgkh" => Ok(Variant::Sgkh),
            "anti-sgkh" | "anti" => Ok(Variant::AntiSgkh),
            "maxasg-known" => Ok(Variant::MaxasgKnown),
            "maxasg-blind" => Ok(Variant::MaxasgBlind),
            other => Err(Error::Input(format!("unknown game {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GuessingInstance {
    sigma: u32,
    x: Vec<u32>,
    variant: Variant,
}

impl GuessingInstance {
    /// Symbols are `1..=sigma` for the sigma-ary games and `0/1` (with
    /// `sigma = 2`) for maxasg.
    pub fn new(variant: Variant, sigma: u32, x: Vec<u32>) -> Result<Self> {
        if sigma < 2 {
            return Err(Error::Input(format!("alphabet size must be at least 2, got {sigma}")));
        }
        if variant.is_maxasg() && sigma != 2 {
            return Err(Error::Input("asymmetric string guessing is binary".into()));
        }
        let lo = variant.min_symbol();
        let hi = lo + sigma - 1;
        if let Some((i, s)) = x.iter().enumerate().find(|(_, &s)| s < lo || s > hi) {
            return Err(Error::Input(format!("position {}: symbol {s} outside {lo}..={hi}", i + 1)));
        }
        Ok(GuessingInstance { sigma, x, variant })
    }

    pub fn sgkh(sigma: u32, x: Vec<u32>) -> Result<Self> {
        Self::new(Variant::Sgkh, sigma, x)
    }

    pub fn anti(sigma: u32, x: Vec<u32>) -> Result<Self> {
        Self::new(Variant::AntiSgkh, sigma, x)
    }

    pub fn maxasg(known: bool, bits: &[bool]) -> Self {
        let variant = if known { Variant::MaxasgKnown } else { Variant::MaxasgBlind };
        GuessingInstance { sigma: 2, x: bits.iter().map(|&b| b as u32).collect(), variant }
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Number of zeros, the optimal maxasg profit.
    pub fn zeros(&self) -> usize {
        self.x.iter().filter(|&&s| s == 0).count()
    }
}

/// What a guesser sees before answering position `step` (0-based).
#[derive(Debug, Clone, Copy)]
pub struct GuessView<'a> {
    pub step: usize,
    pub sigma: u32,
    /// The string length, announced up front in the sigma-ary games.
    pub n: Option<usize>,
    /// `x_1 .. x_step`; `None` in the blind variant.
    pub history: Option<&'a [u32]>,
}

pub trait Guesser {
    fn guess(&mut self, view: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32>;
}

impl<G: Guesser + ?Sized> Guesser for Box<G> {
    fn guess(&mut self, view: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32> {
        (**self).guess(view, tape)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessReport {
    pub answers: Vec<u32>,
    /// Mismatches (sgkh cost), matches (anti cost) or zeros answered (maxasg
    /// profit, `-inf` if infeasible).
    pub score: ObjectiveValue,
    pub matches: usize,
    pub mismatches: usize,
    #[serde(with = "ratio_serde")]
    pub gamma: Ratio<u64>,
    pub bits_read: usize,
}

mod ratio_serde {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Scores a complete answer string against the instance.
pub fn score_answers(inst: &GuessingInstance, answers: &[u32]) -> (ObjectiveValue, usize, usize) {
    let matches = inst.x.iter().zip(answers).filter(|(x, y)| x == y).count();
    let mismatches = inst.len() - matches;
    let score = match inst.variant {
        Variant::Sgkh => ObjectiveValue::Finite(mismatches as u64),
        Variant::AntiSgkh => ObjectiveValue::Finite(matches as u64),
        Variant::MaxasgKnown | Variant::MaxasgBlind => {
            if inst.x.iter().zip(answers).all(|(x, y)| x <= y) {
                ObjectiveValue::Finite(answers.iter().filter(|&&y| y == 0).count() as u64)
            } else {
                ObjectiveValue::NegInfinity
            }
        }
    };
    (score, matches, mismatches)
}

pub fn play_guessing(inst: &GuessingInstance, alg: &mut dyn Guesser, tape: &mut AdviceTape) -> Result<GuessReport> {
    let lo = inst.variant.min_symbol();
    let hi = lo + inst.sigma - 1;
    let n = inst.len();
    let mut answers = Vec::with_capacity(n);
    for step in 0..n {
        let view = GuessView {
            step,
            sigma: inst.sigma,
            n: (!inst.variant.is_maxasg()).then_some(n),
            history: (inst.variant != Variant::MaxasgBlind).then(|| &inst.x[..step]),
        };
        let y = alg.guess(&view, tape)?;
        if y < lo || y > hi {
            return Err(Error::Protocol(format!("position {}: answer {y} outside {lo}..={hi}", step + 1)));
        }
        answers.push(y);
    }
    let (score, matches, mismatches) = score_answers(inst, &answers);
    Ok(GuessReport {
        answers,
        score,
        matches,
        mismatches,
        gamma: Ratio::new(matches as u64, n.max(1) as u64),
        bits_read: tape.bits_read(),
    })
}

/// Always answers the same symbol.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub u32);

impl Guesser for Constant {
    fn guess(&mut self, _: &GuessView<'_>, _: &mut AdviceTape) -> Result<u32> {
        Ok(self.0)
    }
}

/// Repeats the previous symbol of the string; `first` answers position 1.
#[derive(Debug, Clone, Copy)]
pub struct EchoPrevious {
    pub first: u32,
}

impl Guesser for EchoPrevious {
    fn guess(&mut self, view: &GuessView<'_>, _: &mut AdviceTape) -> Result<u32> {
        let history = view.history.ok_or_else(|| Error::Protocol("echo-previous needs the history".into()))?;
        Ok(history.last().copied().unwrap_or(self.first))
    }
}

/// Reads each symbol from the tape in a fixed `ceil(log2 sigma)`-bit field.
/// The field holds `symbol - min_symbol`.
#[derive(Debug, Clone, Copy)]
pub struct PerfectAdvice {
    pub min_symbol: u32,
}

impl PerfectAdvice {
    pub fn for_variant(variant: Variant) -> Self {
        PerfectAdvice { min_symbol: variant.min_symbol() }
    }
}

impl Guesser for PerfectAdvice {
    fn guess(&mut self, view: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32> {
        let v = tape.read_uint(index_width(view.sigma as usize)) as u32;
        Ok(self.min_symbol + v.min(view.sigma - 1))
    }
}

/// The tape [`PerfectAdvice`] needs to reproduce `inst`'s string.
pub fn perfect_advice_tape(inst: &GuessingInstance) -> Vec<bool> {
    let w = index_width(inst.sigma as usize);
    let lo = inst.variant.min_symbol();
    inst.x.iter().flat_map(|&s| crate::engine::tape::uint_bits((s - lo) as u64, w)).collect()
}

/// Answers whatever the tape says, one bit per position (binary games).
#[derive(Debug, Clone, Copy, Default)]
pub struct BitmapAsg;

impl Guesser for BitmapAsg {
    fn guess(&mut self, _: &GuessView<'_>, tape: &mut AdviceTape) -> Result<u32> {
        Ok(tape.read_bit() as u32)
    }
}

/// Answers by looking up `(step, history)` in a table, falling back to a
/// default symbol. Blind views look up with a history of `step` zeros.
#[derive(Debug, Clone, Default)]
pub struct TableGuesser {
    pub table: std::collections::HashMap<Vec<u32>, u32>,
    pub fallback: u32,
}

impl Guesser for TableGuesser {
    fn guess(&mut self, view: &GuessView<'_>, _: &mut AdviceTape) -> Result<u32> {
        let key = match view.history {
            Some(h) => h.to_vec(),
            None => vec![0; view.step],
        };
        Ok(self.table.get(&key).copied().unwrap_or(self.fallback))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_one_on_maxasg() {
        let inst = GuessingInstance::maxasg(true, &[false, true, true, false]);
        let r = play_guessing(&inst, &mut Constant(1), &mut AdviceTape::empty()).unwrap();
        assert_eq!(r.score, ObjectiveValue::Finite(0));
    }

    #[test]
    fn perfect_advice_on_sgkh() {
        let inst = GuessingInstance::sgkh(5, vec![3, 1, 5, 5, 2, 4]).unwrap();
        let mut tape = AdviceTape::new(perfect_advice_tape(&inst));
        let r = play_guessing(&inst, &mut PerfectAdvice::for_variant(Variant::Sgkh), &mut tape).unwrap();
        assert_eq!(r.score, ObjectiveValue::Finite(0));
        assert_eq!(r.bits_read, 6 * 3);
        assert_eq!(r.gamma, Ratio::from_integer(1));
    }

    #[test]
    fn echo_previous_hand_simulated() {
        // x = 1,1,2,2: answers (first),1,1,2
        let inst = GuessingInstance::sgkh(2, vec![1, 1, 2, 2]).unwrap();
        let r = play_guessing(&inst, &mut EchoPrevious { first: 2 }, &mut AdviceTape::empty()).unwrap();
        assert_eq!(r.answers, vec![2, 1, 1, 2]);
        assert_eq!(r.score, ObjectiveValue::Finite(2));
        let r = play_guessing(&inst, &mut EchoPrevious { first: 1 }, &mut AdviceTape::empty()).unwrap();
        assert_eq!(r.score, ObjectiveValue::Finite(1));
        assert_eq!(r.gamma, Ratio::new(3, 4));
    }

    #[test]
    fn infeasible_maxasg_and_bad_answers() {
        let inst = GuessingInstance::maxasg(true, &[true, false]);
        let r = play_guessing(&inst, &mut Constant(0), &mut AdviceTape::empty()).unwrap();
        assert_eq!(r.score, ObjectiveValue::NegInfinity);
        assert!(matches!(play_guessing(&inst, &mut Constant(2), &mut AdviceTape::empty()), Err(Error::Protocol(_))));
        let s = GuessingInstance::sgkh(3, vec![1, 2]).unwrap();
        assert!(play_guessing(&s, &mut Constant(0), &mut AdviceTape::empty()).is_err());
        assert!(GuessingInstance::sgkh(3, vec![4]).is_err());
        assert!(GuessingInstance::new(Variant::MaxasgKnown, 3, vec![0]).is_err());
    }

    #[test]
    fn blind_variant_hides_history() {
        let inst = GuessingInstance::maxasg(false, &[false, true]);
        assert!(play_guessing(&inst, &mut EchoPrevious { first: 1 }, &mut AdviceTape::empty()).is_err());
        let mut tape = AdviceTape::new(vec![false, true]);
        let r = play_guessing(&inst, &mut BitmapAsg, &mut tape).unwrap();
        assert_eq!(r.score, ObjectiveValue::Finite(1));
    }

    #[test]
    fn anti_scores_matches() {
        let inst = GuessingInstance::anti(3, vec![1, 2, 3, 1]).unwrap();
        let r = play_guessing(&inst, &mut Constant(1), &mut AdviceTape::empty()).unwrap();
        assert_eq!(r.score, ObjectiveValue::Finite(2));
        assert_eq!(r.matches + r.mismatches, 4);
    }
}
