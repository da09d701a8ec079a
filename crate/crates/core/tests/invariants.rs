use advice_core::engine::algorithms::{Greedy, SeededPreemptive};
use advice_core::engine::{run_game, AdviceTape, ObjectiveKind, ObjectiveValue, OnlineInstance, Preemption};
use advice_core::graph::Graph;
use advice_core::guessing::{score_answers, GuessingInstance};
use advice_core::iso::contains_induced;
use advice_core::optimum::opt_max_pi;
use advice_core::property::builtin;
use advice_core::property::{IncrementalChecker, PropertySpec};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for v in 0..n {
                for u in 0..v {
                    g.set_edge(u, v, it.next().unwrap());
                }
            }
            g
        })
    })
}

fn forbidden_props() -> Vec<PropertySpec> {
    vec![builtin::independent_set(), builtin::triangle_free(), builtin::clique()]
}

fn subsets_of(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let s = sub?;
        sub = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hereditary_closure(g in graph_strategy(8), outer in any::<u64>()) {
        let outer = outer & ((1u64 << g.n()) - 1);
        for p in forbidden_props() {
            if !p.satisfies_mask(&g, outer) {
                continue;
            }
            for s in subsets_of(outer) {
                prop_assert!(p.satisfies_mask(&g, s), "{} not closed", p.name());
            }
        }
    }

    #[test]
    fn cohereditary_closure(g in graph_strategy(8), inner in any::<u64>()) {
        let full = (1u64 << g.n()) - 1;
        let inner = inner & full;
        for p in [builtin::contains_triangle(), builtin::contains_cycle()] {
            if !p.satisfies_mask(&g, inner) {
                continue;
            }
            for rest in subsets_of(full & !inner) {
                prop_assert!(p.satisfies_mask(&g, inner | rest), "{} not closed", p.name());
            }
        }
    }

    #[test]
    fn complement_involution(g in graph_strategy(9)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let ind = builtin::independent_set();
        prop_assert_eq!(ind.satisfies(&g), ind.complement_property().satisfies(&g.complement()));
        prop_assert_eq!(ind.satisfies(&g), builtin::clique().satisfies(&g.complement()));
    }

    #[test]
    fn induced_search_matches_enumeration(g in graph_strategy(8), h in graph_strategy(4)) {
        let k = h.n();
        let brute = (0..1u64 << g.n()).filter(|m| m.count_ones() as usize == k).any(|m| {
            let sub = g.induced_by_mask(m);
            permutations(k).iter().any(|perm| (0..k).all(|a| (0..k).all(|b| a == b || sub.has_edge(perm[a], perm[b]) == h.has_edge(a, b))))
        });
        prop_assert_eq!(contains_induced(&g, &h), brute);
    }

    #[test]
    fn opt_is_maximum(g in graph_strategy(10)) {
        for p in [builtin::independent_set(), builtin::triangle_free(), builtin::forest()] {
            let opt = opt_max_pi(&g, &p).unwrap();
            prop_assert!(p.satisfies(&g.induced_subgraph(&opt).unwrap()));
            let best = (0..1u64 << g.n()).filter(|&m| p.satisfies_mask(&g, m)).map(|m| m.count_ones() as usize).max().unwrap();
            prop_assert_eq!(opt.len(), best);
        }
    }

    #[test]
    fn engine_determinism_and_discard(g in graph_strategy(12), seed in any::<u64>()) {
        let inst = OnlineInstance::new(g);
        for p in [builtin::independent_set(), builtin::triangle_free()] {
            let run = || run_game(&inst, &mut SeededPreemptive::new(p.clone(), seed), &p, Preemption::Preemptive, &mut AdviceTape::empty(), ObjectiveKind::Max).unwrap();
            let (a, b) = (run(), run());
            prop_assert_eq!(a.to_json(), b.to_json());
            let mut prev: Vec<usize> = Vec::new();
            for (i, step) in a.steps.iter().enumerate() {
                prop_assert!(step.survivors.iter().all(|v| prev.contains(v) || *v == i));
                prop_assert!(step.preempted.iter().all(|v| prev.contains(v) && !step.survivors.contains(v)));
                prev = step.survivors.clone();
            }
            if a.feasible_throughout {
                prop_assert_eq!(a.objective, ObjectiveValue::Finite(a.final_set().len() as u64));
            }
            let plain = run_game(&inst, &mut Greedy::new(p.clone()), &p, Preemption::Plain, &mut AdviceTape::empty(), ObjectiveKind::Max).unwrap();
            prop_assert!(plain.steps.iter().all(|s| s.preempted.is_empty()));
        }
    }

    #[test]
    fn guessing_counts(x in proptest::collection::vec(1u32..=3, 1..20), y in proptest::collection::vec(1u32..=3, 20)) {
        let inst = GuessingInstance::sgkh(3, x.clone()).unwrap();
        let (_, matches, mismatches) = score_answers(&inst, &y[..x.len()]);
        prop_assert_eq!(matches + mismatches, x.len());
        let expected = x.iter().zip(&y).filter(|(a, b)| a == b).count();
        prop_assert_eq!(matches, expected);
        prop_assert_eq!(Ratio::new(matches as u64, x.len() as u64), Ratio::new(expected as u64, x.len() as u64));
    }

    #[test]
    fn maxasg_feasibility(x in proptest::collection::vec(0u32..=1, 1..16), y in proptest::collection::vec(0u32..=1, 16)) {
        let bits: Vec<bool> = x.iter().map(|&b| b == 1).collect();
        let inst = GuessingInstance::maxasg(true, &bits);
        let y = &y[..x.len()];
        let (score, _, _) = score_answers(&inst, y);
        let feasible = x.iter().zip(y).all(|(a, b)| a <= b);
        prop_assert_eq!(score != ObjectiveValue::NegInfinity, feasible);
        if let ObjectiveValue::Finite(p) = score {
            prop_assert!(p as usize <= inst.zeros());
            prop_assert_eq!(p as usize == inst.zeros(), y == x.as_slice());
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn witness_and_predicate_encodings_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pairs = [
        (builtin::independent_set(), builtin::independent_set_predicate()),
        (builtin::triangle_free(), builtin::triangle_free_predicate()),
    ];
    for _ in 0..200 {
        let n = rng.random_range(0..=8);
        let g = Graph::random(n, rng.random_range(0.1..0.9), &mut rng);
        for (w, p) in &pairs {
            assert_eq!(w.satisfies(&g), p.satisfies(&g), "{} on {}", w.name(), g.to_text());
        }
    }
}

#[test]
fn incremental_matches_batch() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let p = builtin::triangle_free();
    for _ in 0..100 {
        let g = Graph::random(10, 0.5, &mut rng);
        let mut accepted: Vec<usize> = Vec::new();
        let mut state = IncrementalChecker::new(p.clone());
        for v in 0..10 {
            let back: Vec<usize> = accepted.iter().enumerate().filter(|(_, &u)| g.has_edge(u, v)).map(|(i, _)| i).collect();
            let (ok, next) = state.extend(&back).unwrap();
            let mut with_v = accepted.clone();
            with_v.push(v);
            assert_eq!(ok, p.satisfies(&g.induced_subgraph(&with_v).unwrap()));
            if ok && rng.random_bool(0.7) {
                accepted = with_v;
                state = next;
            }
        }
    }
}
