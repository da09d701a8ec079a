//! Exact minimum advice for tiny instance families.
//!
//! With `b` bits of advice a deterministic algorithm is one of `2^b`
//! strategies, each a map from observation histories to answers. The minimum
//! advice for ratio `c` is therefore `ceil(log2 m)` where `m` is the least
//! number of groups the family splits into such that each group shares one
//! strategy achieving ratio `c` on all of its members.
//!
//! Every game is scored as a maximization: profit is zeros answered
//! (asymmetric guessing, `-inf` when infeasible), matches (guessing), or
//! mismatches (anti-guessing), or the accepted set size (Max-π), and ratio
//! `c` means `c * profit >= OPT`.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::engine::{run_game, AdviceTape, Decision, ObjectiveKind, OnlineAlgorithm, OnlineInstance, Preemption, StepView};
use crate::error::{Error, Result};
use crate::graph::{mask_of, Graph};
use crate::guessing::{play_guessing, GuessingInstance, TableGuesser, Variant};
use crate::optimum::opt_max_pi;
use crate::property::PropertySpec;

/// Default cap on family size.
pub const FAMILY_BOUND: usize = 256;
/// Default cap on trie nodes per group check.
pub const NODE_BUDGET: usize = 100_000;
/// Default cap on partition-search nodes.
pub const SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone)]
pub enum FamilyGame {
    Guessing(Variant),
    MaxPi(PropertySpec),
}

/// Target competitive ratio; `Infinite` only asks for a feasible output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Ratio(Ratio<u64>),
    Infinite,
}

impl Target {
    pub fn integer(c: u64) -> Self {
        Target::Ratio(Ratio::from_integer(c))
    }

    fn accepts(self, profit: u64, opt: u64) -> bool {
        match self {
            Target::Ratio(c) => c * Ratio::from_integer(profit) >= Ratio::from_integer(opt),
            Target::Infinite => true,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "inf" || t == "infinity" {
            return Ok(Target::Infinite);
        }
        let r: Ratio<u64> = t.parse().map_err(|_| Error::Input(format!("bad ratio {t:?}")))?;
        if r < Ratio::from_integer(1) {
            return Err(Error::Input(format!("ratio must be at least 1, got {r}")));
        }
        Ok(Target::Ratio(r))
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Ratio(r) => write!(f, "{r}"),
            Target::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyInstance {
    Str(Vec<u32>),
    Graph(Graph),
}

/// A finite family of same-length instances of one game.
#[derive(Debug, Clone)]
pub struct InstanceFamily {
    pub game: FamilyGame,
    pub sigma: u32,
    pub instances: Vec<FamilyInstance>,
    len: usize,
    opts: Vec<u64>,
}

impl InstanceFamily {
    pub fn new(game: FamilyGame, sigma: u32, instances: Vec<FamilyInstance>) -> Result<Self> {
        Self::with_bound(game, sigma, instances, FAMILY_BOUND)
    }

    pub fn with_bound(game: FamilyGame, sigma: u32, instances: Vec<FamilyInstance>, bound: usize) -> Result<Self> {
        if instances.len() > bound {
            return Err(Error::Resource(format!("family of {} instances exceeds bound {bound}", instances.len())));
        }
        let len = instances.first().map(instance_len).unwrap_or(0);
        if instances.iter().any(|i| instance_len(i) != len) {
            return Err(Error::Input("family instances must share one length".into()));
        }
        let mut opts = Vec::with_capacity(instances.len());
        for inst in &instances {
            let opt = match (&game, inst) {
                (FamilyGame::Guessing(v), FamilyInstance::Str(x)) => {
                    let gi = GuessingInstance::new(*v, sigma, x.clone())?;
                    if v.is_maxasg() {
                        gi.zeros() as u64
                    } else {
                        len as u64
                    }
                }
                (FamilyGame::MaxPi(p), FamilyInstance::Graph(g)) => {
                    if g.n() > 64 {
                        return Err(Error::Resource("graph instances are limited to 64 vertices".into()));
                    }
                    opt_max_pi(g, p)?.len() as u64
                }
                _ => return Err(Error::Input("instance kind does not match the game".into())),
            };
            opts.push(opt);
        }
        Ok(InstanceFamily { game, sigma, instances, len, opts })
    }

    /// Every string of length `n` over the game's alphabet.
    pub fn all_strings(variant: Variant, sigma: u32, n: usize) -> Result<Self> {
        let lo = variant.min_symbol();
        let total = (sigma as u64).checked_pow(n as u32).filter(|&t| t <= FAMILY_BOUND as u64).ok_or_else(|| {
            Error::Resource(format!("{sigma}^{n} strings exceed the family bound {FAMILY_BOUND}"))
        })?;
        let instances = (0..total)
            .map(|code| {
                let mut rest = code;
                let mut x = vec![0u32; n];
                for slot in x.iter_mut().rev() {
                    *slot = lo + (rest % sigma as u64) as u32;
                    rest /= sigma as u64;
                }
                FamilyInstance::Str(x)
            })
            .collect();
        Self::new(FamilyGame::Guessing(variant), sigma, instances)
    }

    /// Every labelled graph on `n` vertices, revealed in vertex order.
    pub fn all_graphs(property: PropertySpec, n: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        if pairs.len() >= 64 || 1usize << pairs.len() > FAMILY_BOUND {
            return Err(Error::Resource(format!("graphs on {n} vertices exceed the family bound {FAMILY_BOUND}")));
        }
        let instances = (0..1u64 << pairs.len())
            .map(|code| {
                let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(b, _)| code >> b & 1 == 1).map(|(_, &e)| e).collect();
                FamilyInstance::Graph(Graph::from_edges(n, &edges).expect("valid pairs"))
            })
            .collect();
        Self::new(FamilyGame::MaxPi(property), 2, instances)
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn steps(&self) -> usize {
        self.len
    }

    pub fn opt(&self, i: usize) -> u64 {
        self.opts[i]
    }

    fn answers(&self) -> Vec<u32> {
        match &self.game {
            FamilyGame::Guessing(v) if v.is_maxasg() => vec![1, 0],
            FamilyGame::Guessing(_) => (1..=self.sigma).collect(),
            FamilyGame::MaxPi(_) => vec![0, 1],
        }
    }

    /// What the algorithm learns just before answering step `s >= 1`.
    fn token(&self, i: usize, s: usize) -> u64 {
        match (&self.game, &self.instances[i]) {
            (FamilyGame::Guessing(Variant::MaxasgBlind), _) => 0,
            (FamilyGame::Guessing(_), FamilyInstance::Str(x)) => x[s - 1] as u64,
            (FamilyGame::MaxPi(_), FamilyInstance::Graph(g)) => mask_of(&g.back_neighbors(s)),
            _ => unreachable!("kinds checked at construction"),
        }
    }

    /// Profit gained at `step`, or `None` if the answer makes the output
    /// infeasible. `mask` holds the accepted vertices before the step.
    fn gain(&self, i: usize, step: usize, answer: u32, mask: u64) -> Option<u64> {
        match (&self.game, &self.instances[i]) {
            (FamilyGame::Guessing(v), FamilyInstance::Str(x)) => match v {
                Variant::Sgkh => Some((answer == x[step]) as u64),
                Variant::AntiSgkh => Some((answer != x[step]) as u64),
                _ => {
                    if answer < x[step] {
                        None
                    } else {
                        Some((answer == 0) as u64)
                    }
                }
            },
            (FamilyGame::MaxPi(p), FamilyInstance::Graph(g)) => {
                if answer == 0 {
                    Some(0)
                } else if p.satisfies_mask(g, mask | 1 << step) {
                    Some(1)
                } else {
                    None
                }
            }
            _ => unreachable!("kinds checked at construction"),
        }
    }

    fn max_gain(&self, i: usize, step: usize) -> u64 {
        match (&self.game, &self.instances[i]) {
            (FamilyGame::Guessing(v), FamilyInstance::Str(x)) if v.is_maxasg() => (x[step] == 0) as u64,
            _ => 1,
        }
    }
}

fn instance_len(i: &FamilyInstance) -> usize {
    match i {
        FamilyInstance::Str(x) => x.len(),
        FamilyInstance::Graph(g) => g.n(),
    }
}

/// One answer per history node reached by the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    /// Observations before the answered step: symbols seen so far, or the
    /// back-neighbour bitmask of each vertex after the first.
    pub history: Vec<u64>,
    pub answer: u32,
}

pub type Witness = Vec<WitnessEntry>;

struct Trie {
    /// `(depth, parent, token)` per node; node 0 is the root (depth 0).
    depth: Vec<usize>,
    history: Vec<Vec<u64>>,
    /// Instances (group-local) whose path passes through each node.
    members: Vec<Vec<usize>>,
}

fn build_trie(fam: &InstanceFamily, group: &[usize], budget: usize) -> Result<Trie> {
    let mut index: HashMap<(usize, u64), usize> = HashMap::new();
    let mut trie = Trie { depth: vec![0], history: vec![vec![]], members: vec![(0..group.len()).collect()] };
    if fam.len == 0 {
        return Ok(trie);
    }
    for (local, &i) in group.iter().enumerate() {
        let mut node = 0;
        for s in 1..fam.len {
            let tok = fam.token(i, s);
            node = match index.get(&(node, tok)) {
                Some(&next) => next,
                None => {
                    let id = trie.depth.len();
                    if id >= budget {
                        return Err(Error::Resource(format!("history trie exceeds {budget} nodes")));
                    }
                    let mut h = trie.history[node].clone();
                    h.push(tok);
                    trie.depth.push(s);
                    trie.history.push(h);
                    trie.members.push(Vec::new());
                    index.insert((node, tok), id);
                    id
                }
            };
            trie.members[node].push(local);
        }
    }
    Ok(trie)
}

struct GroupSearch<'a> {
    fam: &'a InstanceFamily,
    group: &'a [usize],
    target: Target,
    trie: Trie,
    order: Vec<usize>,
    answers: Vec<u32>,
    choice: Vec<u32>,
    /// Profit after each depth, per group member.
    profit: Vec<Vec<u64>>,
    mask: Vec<Vec<u64>>,
    /// Largest profit still obtainable after each step.
    rest: Vec<Vec<u64>>,
}

impl GroupSearch<'_> {
    fn run(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let node = self.order[k];
        let d = self.trie.depth[node];
        for a in self.answers.clone() {
            let mut ok = true;
            for &m in &self.trie.members[node] {
                let i = self.group[m];
                let (p0, mk0) = if d == 0 { (0, 0) } else { (self.profit[m][d - 1], self.mask[m][d - 1]) };
                match self.fam.gain(i, d, a, mk0) {
                    None => ok = false,
                    Some(g) => {
                        self.profit[m][d] = p0 + g;
                        self.mask[m][d] = if a == 1 && matches!(self.fam.game, FamilyGame::MaxPi(_)) { mk0 | 1 << d } else { mk0 };
                        ok = self.target.accepts(p0 + g + self.rest[m][d], self.fam.opts[i]);
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                self.choice[node] = a;
                if self.run(k + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Searches for one strategy giving every member of `group` ratio `target`.
/// `None` means exhaustive search found none.
pub fn group_feasible(fam: &InstanceFamily, group: &[usize], target: Target) -> Result<Option<Witness>> {
    group_feasible_bounded(fam, group, target, NODE_BUDGET)
}

pub fn group_feasible_bounded(fam: &InstanceFamily, group: &[usize], target: Target, budget: usize) -> Result<Option<Witness>> {
    if group.is_empty() || fam.len == 0 {
        return Ok(Some(Vec::new()).filter(|_| group.iter().all(|&i| target.accepts(0, fam.opts[i]))));
    }
    let trie = build_trie(fam, group, budget)?;
    let n = fam.len;
    let rest: Vec<Vec<u64>> = group
        .iter()
        .map(|&i| {
            let mut r = vec![0u64; n];
            for s in (0..n - 1).rev() {
                r[s] = r[s + 1] + fam.max_gain(i, s + 1);
            }
            r
        })
        .collect();
    // preorder = creation order sorted by history, parents before children
    let mut order: Vec<usize> = (0..trie.depth.len()).collect();
    order.sort_by(|&a, &b| trie.history[a].cmp(&trie.history[b]));
    let nodes = trie.depth.len();
    let mut search = GroupSearch {
        fam,
        group,
        target,
        answers: fam.answers(),
        choice: vec![0; nodes],
        profit: vec![vec![0; n]; group.len()],
        mask: vec![vec![0; n]; group.len()],
        rest,
        order,
        trie,
    };
    if !search.run(0) {
        return Ok(None);
    }
    Ok(Some(
        (0..nodes)
            .map(|v| WitnessEntry { history: search.trie.history[v].clone(), answer: search.choice[v] })
            .collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub m: usize,
    pub bits: usize,
    /// Group index of each instance.
    pub assignment: Vec<usize>,
    pub witnesses: Vec<Witness>,
    /// False when the search budget ran out before optimality was proved.
    pub optimal: bool,
}

/// Which order the partition search explores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    /// Instances in index order; existing groups (largest first) before a new one.
    LargestFirst,
    /// Instances in reverse order; a new group before existing ones.
    NewGroupFirst,
}

struct PartitionSearch<'a> {
    fam: &'a InstanceFamily,
    target: Target,
    order: SearchOrder,
    seq: Vec<usize>,
    memo: HashMap<Vec<usize>, bool>,
    groups: Vec<Vec<usize>>,
    best: Option<Vec<Vec<usize>>>,
    visited: u64,
    budget: u64,
    error: Option<Error>,
}

impl PartitionSearch<'_> {
    fn feasible(&mut self, group: &[usize]) -> bool {
        let mut key = group.to_vec();
        key.sort_unstable();
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match group_feasible(self.fam, &key, self.target) {
            Ok(w) => w.is_some(),
            Err(e) => {
                self.error.get_or_insert(e);
                false
            }
        };
        self.memo.insert(key, v);
        v
    }

    fn search(&mut self, k: usize) {
        self.visited += 1;
        if self.visited > self.budget || self.error.is_some() {
            return;
        }
        let best_m = self.best.as_ref().map(|b| b.len()).unwrap_or(usize::MAX);
        if self.groups.len() >= best_m {
            return;
        }
        if k == self.seq.len() {
            self.best = Some(self.groups.clone());
            return;
        }
        let i = self.seq[k];
        let mut existing: Vec<usize> = (0..self.groups.len()).collect();
        existing.sort_by_key(|&g| std::cmp::Reverse(self.groups[g].len()));
        let try_new = |s: &mut Self| {
            if s.groups.len() + 1 < s.best.as_ref().map(|b| b.len()).unwrap_or(usize::MAX) {
                s.groups.push(vec![i]);
                s.search(k + 1);
                s.groups.pop();
            }
        };
        if self.order == SearchOrder::NewGroupFirst {
            try_new(self);
        }
        for g in existing {
            let mut cand = self.groups[g].clone();
            cand.push(i);
            if self.feasible(&cand) {
                self.groups[g].push(i);
                self.search(k + 1);
                self.groups[g].pop();
            }
        }
        if self.order == SearchOrder::LargestFirst {
            try_new(self);
        }
    }
}

/// Exact minimum number of strategy groups for ratio `target`.
pub fn min_advice_bits(fam: &InstanceFamily, target: Target) -> Result<CoverResult> {
    min_advice_bits_with(fam, target, SearchOrder::LargestFirst, SEARCH_BUDGET)
}

pub fn min_advice_bits_with(fam: &InstanceFamily, target: Target, order: SearchOrder, budget: u64) -> Result<CoverResult> {
    for i in 0..fam.len() {
        if group_feasible(fam, &[i], target)?.is_none() {
            return Err(Error::Input(format!("instance {i} cannot reach ratio {target} even with full advice")));
        }
    }
    let mut seq: Vec<usize> = (0..fam.len()).collect();
    if order == SearchOrder::NewGroupFirst {
        seq.reverse();
    }
    let mut s = PartitionSearch {
        fam,
        target,
        order,
        seq,
        memo: HashMap::new(),
        groups: Vec::new(),
        best: None,
        visited: 0,
        budget,
        error: None,
    };
    s.search(0);
    if let Some(e) = s.error {
        return Err(e);
    }
    let optimal = s.visited <= budget;
    let mut groups = match s.best {
        Some(b) => b,
        // budget ran out before any complete partition: fall back to singletons
        None => (0..fam.len()).map(|i| vec![i]).collect(),
    };
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort();
    let mut assignment = vec![0; fam.len()];
    let mut witnesses = Vec::with_capacity(groups.len());
    for (gi, g) in groups.iter().enumerate() {
        for &i in g {
            assignment[i] = gi;
        }
        witnesses.push(group_feasible(fam, g, target)?.ok_or_else(|| Error::Soundness("accepted group lost its witness".into()))?);
    }
    let m = groups.len();
    Ok(CoverResult { m, bits: crate::engine::tape::index_width(m), assignment, witnesses, optimal })
}

/// Minimum advice for each target on the grid, in grid order.
pub fn bits_vs_ratio_curve(fam: &InstanceFamily, grid: &[Target]) -> Result<Vec<(Target, usize)>> {
    grid.iter().map(|&t| Ok((t, min_advice_bits(fam, t)?.bits))).collect()
}

pub fn default_grid() -> Vec<Target> {
    let r = |a, b| Target::Ratio(Ratio::new(a, b));
    vec![r(1, 1), r(5, 4), r(4, 3), r(3, 2), r(2, 1), r(3, 1), r(4, 1), Target::Infinite]
}

/// Exact advice set beside the closed forms for the same game, with the
/// O-terms dropped. The comparison is informational since the O-constants
/// are unknown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormComparison {
    pub exact_bits: usize,
    pub formula: String,
    /// Closed-form lower bound without its O-term, if the game has one.
    pub lower_bits: Option<f64>,
    /// A constructive upper bound: one bit per position, or `log2 sigma` for guessing.
    pub upper_bits: f64,
    pub o_term: String,
}

impl ClosedFormComparison {
    pub fn below_upper(&self) -> bool {
        self.exact_bits as f64 <= self.upper_bits + 1e-9
    }

    pub fn above_lower(&self) -> bool {
        self.lower_bits.is_none_or(|l| self.exact_bits as f64 >= l - 1e-9)
    }
}

pub fn compare_with_closed_form(fam: &InstanceFamily, target: Target, exact: &CoverResult) -> Result<ClosedFormComparison> {
    use crate::guessing::bounds::{anti_bound, maxasg_bounds, sgkh_bound};
    let n = fam.steps() as f64;
    let c = match target {
        Target::Ratio(r) => *r.numer() as f64 / *r.denom() as f64,
        Target::Infinite => f64::INFINITY,
    };
    let sigma = fam.sigma as f64;
    let (formula, lower) = match &fam.game {
        FamilyGame::Guessing(v) if v.is_maxasg() => ("maxasg", (c.is_finite() && c <= n).then(|| maxasg_bounds(c, n)).transpose()?),
        FamilyGame::Guessing(Variant::Sgkh) => ("sgkh", (c.is_finite() && 1.0 / c >= 1.0 / sigma).then(|| sgkh_bound(sigma, 1.0 / c, n)).transpose()?),
        FamilyGame::Guessing(_) => ("anti-sgkh", (c < sigma / (sigma - 1.0)).then(|| anti_bound(sigma, c, n)).transpose()?),
        FamilyGame::MaxPi(_) => ("bitmap", None),
    };
    let upper = match &fam.game {
        FamilyGame::Guessing(Variant::Sgkh | Variant::AntiSgkh) => (fam.instances.len() as f64).log2().ceil(),
        _ => n,
    };
    Ok(ClosedFormComparison {
        exact_bits: exact.bits,
        formula: formula.into(),
        lower_bits: lower.as_ref().and_then(|r| r.value_bits),
        upper_bits: upper,
        o_term: lower.and_then(|r| r.o_term).unwrap_or_default(),
    })
}

/// Answers Max-π steps from a witness table keyed by back-neighbour masks.
#[derive(Debug, Clone, Default)]
pub struct TableAlgorithm {
    pub table: HashMap<Vec<u64>, u32>,
}

impl OnlineAlgorithm for TableAlgorithm {
    fn decide(&mut self, view: &StepView<'_>, _: &mut AdviceTape) -> Result<Decision> {
        let g = view.revealed.ok_or_else(|| Error::Protocol("the table algorithm needs the revealed graph".into()))?;
        let key: Vec<u64> = (1..=view.step).map(|s| mask_of(&g.back_neighbors(s))).collect();
        Ok(if self.table.get(&key).copied().unwrap_or(0) == 1 { Decision::accept() } else { Decision::reject() })
    }
}

/// Replays every instance with its group's witness through the game
/// simulators and checks the ratio. Returns the first violation as an error.
pub fn replay(fam: &InstanceFamily, result: &CoverResult, target: Target) -> Result<()> {
    for (i, inst) in fam.instances.iter().enumerate() {
        let w = &result.witnesses[result.assignment[i]];
        let profit = match (&fam.game, inst) {
            (FamilyGame::Guessing(v), FamilyInstance::Str(x)) => {
                let table = w.iter().map(|e| (e.history.iter().map(|&t| t as u32).collect(), e.answer)).collect();
                let mut g = TableGuesser { table, fallback: v.min_symbol() };
                let r = play_guessing(&GuessingInstance::new(*v, fam.sigma, x.clone())?, &mut g, &mut AdviceTape::empty())?;
                match v {
                    Variant::Sgkh => Some(r.matches as u64),
                    Variant::AntiSgkh => Some(r.mismatches as u64),
                    _ => r.score.finite(),
                }
            }
            (FamilyGame::MaxPi(p), FamilyInstance::Graph(g)) => {
                let mut alg = TableAlgorithm { table: w.iter().map(|e| (e.history.clone(), e.answer)).collect() };
                let t = run_game(&OnlineInstance::new(g.clone()), &mut alg, p, Preemption::Plain, &mut AdviceTape::empty(), ObjectiveKind::Max)?;
                t.objective.finite()
            }
            _ => unreachable!("kinds checked at construction"),
        };
        let ok = profit.is_some_and(|p| target.accepts(p, fam.opts[i]));
        if !ok {
            return Err(Error::Soundness(format!("instance {i}: witness replay gives profit {profit:?} against optimum {}", fam.opts[i])));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::property::builtin::independent_set;

    #[test]
    fn last_symbol_cannot_be_foreseen() {
        let fam = InstanceFamily::new(
            FamilyGame::Guessing(Variant::Sgkh),
            2,
            vec![FamilyInstance::Str(vec![1, 2, 1]), FamilyInstance::Str(vec![1, 2, 2])],
        )
        .unwrap();
        assert!(group_feasible(&fam, &[0, 1], Target::integer(1)).unwrap().is_none());
        assert!(group_feasible(&fam, &[0], Target::integer(1)).unwrap().is_some());
    }

    #[test]
    fn maxasg_pairs_infeasible_at_ratio_one() {
        let fam = InstanceFamily::all_strings(Variant::MaxasgKnown, 2, 2).unwrap();
        for a in 0..4 {
            assert!(group_feasible(&fam, &[a], Target::integer(1)).unwrap().is_some());
            for b in a + 1..4 {
                assert!(group_feasible(&fam, &[a, b], Target::integer(1)).unwrap().is_none());
            }
        }
    }

    #[test]
    fn small_covers() {
        for n in 1..=3 {
            let fam = InstanceFamily::all_strings(Variant::MaxasgKnown, 2, n).unwrap();
            let r = min_advice_bits(&fam, Target::integer(1)).unwrap();
            assert_eq!((r.m, r.bits), (1 << n, n));
            replay(&fam, &r, Target::integer(1)).unwrap();
        }
        let anti = InstanceFamily::all_strings(Variant::AntiSgkh, 2, 1).unwrap();
        let r = min_advice_bits(&anti, Target::integer(1)).unwrap();
        assert_eq!((r.m, r.bits), (2, 1));
    }

    /// Every deterministic strategy for binary guessing of length 2 is a first
    /// answer plus one answer per first symbol: 8 strategies. The minimum
    /// number of strategies covering all 4 strings with at least one match is
    /// found by trying every subset of strategies.
    #[test]
    fn half_correct_needs_two_strategies() {
        let strings = [[1u32, 1], [1, 2], [2, 1], [2, 2]];
        let strategies: Vec<(u32, [u32; 2])> =
            (0..8u32).map(|c| (1 + (c & 1), [1 + (c >> 1 & 1), 1 + (c >> 2 & 1)])).collect();
        let covers = |s: &(u32, [u32; 2]), x: &[u32; 2]| (s.0 == x[0]) as u32 + (s.1[x[0] as usize - 1] == x[1]) as u32 >= 1;
        let brute = (1u32..256)
            .filter(|set| strings.iter().all(|x| (0..8).any(|k| set >> k & 1 == 1 && covers(&strategies[k], x))))
            .map(|set| set.count_ones() as usize)
            .min()
            .unwrap();
        let fam = InstanceFamily::all_strings(Variant::Sgkh, 2, 2).unwrap();
        let r = min_advice_bits(&fam, Target::integer(2)).unwrap();
        assert_eq!(r.m, brute);
        assert_eq!(r.m, 2);
        replay(&fam, &r, Target::integer(2)).unwrap();
    }

    #[test]
    fn orders_agree_and_curve_monotone() {
        for (v, s, n) in [(Variant::MaxasgKnown, 2, 3), (Variant::MaxasgBlind, 2, 3), (Variant::Sgkh, 3, 2), (Variant::AntiSgkh, 3, 2)] {
            let fam = InstanceFamily::all_strings(v, s, n).unwrap();
            for t in default_grid() {
                if t == Target::Infinite || min_advice_bits(&fam, t).is_err() {
                    continue;
                }
                let a = min_advice_bits_with(&fam, t, SearchOrder::LargestFirst, SEARCH_BUDGET).unwrap();
                let b = min_advice_bits_with(&fam, t, SearchOrder::NewGroupFirst, SEARCH_BUDGET).unwrap();
                assert_eq!(a.m, b.m, "{v:?} {t}");
                replay(&fam, &a, t).unwrap();
            }
        }
        let fam = InstanceFamily::all_strings(Variant::MaxasgKnown, 2, 3).unwrap();
        let curve = bits_vs_ratio_curve(&fam, &default_grid()).unwrap();
        assert!(curve.windows(2).all(|w| w[0].1 >= w[1].1));
        assert_eq!(curve.last().unwrap().1, 0);
        let exact = min_advice_bits(&fam, Target::integer(1)).unwrap();
        let cmp = compare_with_closed_form(&fam, Target::integer(1), &exact).unwrap();
        assert!(cmp.below_upper() && cmp.above_lower());
        assert_eq!(cmp.lower_bits, Some(3.0));
    }

    #[test]
    fn graph_family() {
        let fam = InstanceFamily::all_graphs(independent_set(), 3).unwrap();
        assert_eq!(fam.len(), 8);
        let r = min_advice_bits(&fam, Target::integer(1)).unwrap();
        replay(&fam, &r, Target::integer(1)).unwrap();
        assert!(r.m >= 2);
        assert_eq!(min_advice_bits(&fam, Target::Infinite).unwrap().m, 1);
    }
}
