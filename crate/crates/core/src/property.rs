//! Hereditary and cohereditary graph properties.
//!
//! A property is either a finite list of witness graphs (forbidden for a
//! hereditary property, obligatory for a cohereditary one) or an arbitrary
//! predicate. Infinite families such as "all cycles" use predicate mode.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{BitSet, Graph};
use crate::iso::find_induced;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyMode {
    HereditaryForbidden,
    CohereditaryObligatory,
    HereditaryPredicate,
    CohereditaryPredicate,
}

impl PropertyMode {
    pub fn is_hereditary(self) -> bool {
        matches!(self, PropertyMode::HereditaryForbidden | PropertyMode::HereditaryPredicate)
    }
}

pub type Predicate = Arc<dyn Fn(&Graph) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct PropertySpec {
    name: String,
    mode: PropertyMode,
    witnesses: Vec<Graph>,
    predicate: Option<Predicate>,
    k: usize,
}

impl fmt::Debug for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PropertySpec")
            .field("name", &self.name)
            .field("mode", &self.mode)
            .field("witnesses", &self.witnesses)
            .field("k", &self.k)
            .finish()
    }
}

impl PropertySpec {
    /// Hereditary property "no listed graph occurs induced".
    pub fn forbidden(name: impl Into<String>, witnesses: Vec<Graph>) -> Result<Self> {
        Self::with_witnesses(name.into(), PropertyMode::HereditaryForbidden, witnesses)
    }

    /// Cohereditary property "some listed graph occurs induced".
    pub fn obligatory(name: impl Into<String>, witnesses: Vec<Graph>) -> Result<Self> {
        Self::with_witnesses(name.into(), PropertyMode::CohereditaryObligatory, witnesses)
    }

    fn with_witnesses(name: String, mode: PropertyMode, witnesses: Vec<Graph>) -> Result<Self> {
        let k = witnesses
            .iter()
            .map(Graph::n)
            .min()
            .ok_or_else(|| Error::Misconfigured(format!("{name}: empty witness list")))?;
        if k == 0 {
            return Err(Error::Misconfigured(format!("{name}: witness graph on zero vertices")));
        }
        Ok(PropertySpec { name, mode, witnesses, predicate: None, k })
    }

    /// A property decided by `predicate`; `k` is the order of a smallest
    /// forbidden (resp. obligatory) graph.
    pub fn from_predicate(
        name: impl Into<String>,
        hereditary: bool,
        k: usize,
        predicate: impl Fn(&Graph) -> bool + Send + Sync + 'static,
    ) -> Self {
        let mode = if hereditary { PropertyMode::HereditaryPredicate } else { PropertyMode::CohereditaryPredicate };
        PropertySpec { name: name.into(), mode, witnesses: Vec::new(), predicate: Some(Arc::new(predicate)), k }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> PropertyMode {
        self.mode
    }

    pub fn witnesses(&self) -> &[Graph] {
        &self.witnesses
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_hereditary(&self) -> bool {
        self.mode.is_hereditary()
    }

    /// The property satisfied by `g` iff `complement(g)` satisfies `self`.
    /// Witness lists are complemented; predicates are wrapped.
    pub fn complement_property(&self) -> PropertySpec {
        let name = format!("co-{}", self.name);
        match self.mode {
            PropertyMode::HereditaryForbidden | PropertyMode::CohereditaryObligatory => PropertySpec {
                name,
                mode: self.mode,
                witnesses: self.witnesses.iter().map(Graph::complement).collect(),
                predicate: None,
                k: self.k,
            },
            _ => {
                let inner = self.predicate.clone().expect("predicate mode");
                PropertySpec {
                    name,
                    mode: self.mode,
                    witnesses: Vec::new(),
                    predicate: Some(Arc::new(move |g: &Graph| inner(&g.complement()))),
                    k: self.k,
                }
            }
        }
    }

    /// Membership of the whole graph.
    pub fn satisfies(&self, g: &Graph) -> bool {
        self.satisfies_within(g, &BitSet::full(g.n()))
    }

    /// Membership of `g[within]`.
    pub fn satisfies_within(&self, g: &Graph, within: &BitSet) -> bool {
        match self.mode {
            PropertyMode::HereditaryForbidden => {
                !self.witnesses.iter().any(|h| find_induced(g, h, within, None).is_some())
            }
            PropertyMode::CohereditaryObligatory => {
                self.witnesses.iter().any(|h| find_induced(g, h, within, None).is_some())
            }
            _ => {
                let sub = g.induced_subgraph(&within.to_vec()).expect("subset of vertex set");
                (self.predicate.as_ref().expect("predicate mode"))(&sub)
            }
        }
    }

    /// Membership of `g[within]` given that `g[within - {added}]` is known to
    /// satisfy `self`. Forbidden mode only searches copies through `added`.
    pub fn satisfies_extension(&self, g: &Graph, within: &BitSet, added: usize) -> bool {
        match self.mode {
            PropertyMode::HereditaryForbidden => {
                !self.witnesses.iter().any(|h| find_induced(g, h, within, Some(added)).is_some())
            }
            // an obligatory graph already present stays present
            PropertyMode::CohereditaryObligatory | PropertyMode::CohereditaryPredicate => true,
            PropertyMode::HereditaryPredicate => self.satisfies_within(g, within),
        }
    }

    /// Membership of a vertex mask, for graphs with at most 64 vertices.
    pub fn satisfies_mask(&self, g: &Graph, mask: u64) -> bool {
        self.satisfies_within(g, &mask_to_set(g.n(), mask))
    }
}

pub(crate) fn mask_to_set(n: usize, mask: u64) -> BitSet {
    let mut s = BitSet::new(n);
    for v in crate::graph::mask_iter(mask) {
        s.insert(v);
    }
    s
}

/// Incremental membership over a growing accepted set.
///
/// Each call returns a new state; the old one stays valid.
#[derive(Debug, Clone)]
pub struct IncrementalChecker {
    property: PropertySpec,
    graph: Graph,
    satisfied: bool,
}

impl IncrementalChecker {
    /// Starts from the empty graph, which satisfies every forbidden-mode property
    /// and no obligatory-mode property.
    pub fn new(property: PropertySpec) -> Self {
        let graph = Graph::empty(0);
        let satisfied = property.satisfies(&graph);
        IncrementalChecker { property, graph, satisfied }
    }

    pub fn satisfied(&self) -> bool {
        self.satisfied
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Adds a vertex adjacent to the listed earlier vertices of the accepted graph.
    pub fn extend(&self, back: &[usize]) -> Result<(bool, IncrementalChecker)> {
        let mut graph = self.graph.clone();
        let v = graph.push_vertex(back)?;
        let all = BitSet::full(graph.n());
        let satisfied = match (self.satisfied, self.property.mode) {
            (true, PropertyMode::HereditaryForbidden) => self.property.satisfies_extension(&graph, &all, v),
            (true, PropertyMode::CohereditaryObligatory | PropertyMode::CohereditaryPredicate) => true,
            (false, PropertyMode::HereditaryForbidden | PropertyMode::HereditaryPredicate) => false,
            (false, PropertyMode::CohereditaryObligatory) => {
                self.property.witnesses.iter().any(|h| find_induced(&graph, h, &all, Some(v)).is_some())
            }
            _ => self.property.satisfies(&graph),
        };
        Ok((satisfied, IncrementalChecker { property: self.property.clone(), graph, satisfied }))
    }
}

/// Whether `g` has no cycle.
pub fn is_forest(g: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

pub fn has_triangle(g: &Graph) -> bool {
    g.edges().any(|(u, v)| g.row(u).iter().zip(g.row(v)).any(|(a, b)| a & b != 0))
}

/// Shipped properties.
pub mod builtin {
    use super::*;

    pub fn independent_set() -> PropertySpec {
        PropertySpec::forbidden("independent-set", vec![Graph::complete(2)]).expect("non-empty")
    }

    pub fn triangle_free() -> PropertySpec {
        PropertySpec::forbidden("triangle-free", vec![Graph::complete(3)]).expect("non-empty")
    }

    pub fn clique() -> PropertySpec {
        PropertySpec::forbidden("clique", vec![Graph::empty(2)]).expect("non-empty")
    }

    pub fn forest() -> PropertySpec {
        PropertySpec::from_predicate("forest", true, 3, is_forest)
    }

    pub fn contains_cycle() -> PropertySpec {
        PropertySpec::from_predicate("contains-cycle", false, 3, |g: &Graph| !is_forest(g))
    }

    pub fn contains_triangle() -> PropertySpec {
        PropertySpec::obligatory("contains-triangle", vec![Graph::complete(3)]).expect("non-empty")
    }

    /// Predicate twin of [`independent_set`].
    pub fn independent_set_predicate() -> PropertySpec {
        PropertySpec::from_predicate("independent-set-predicate", true, 2, |g: &Graph| g.edge_count() == 0)
    }

    /// Predicate twin of [`triangle_free`].
    pub fn triangle_free_predicate() -> PropertySpec {
        PropertySpec::from_predicate("triangle-free-predicate", true, 3, |g: &Graph| !has_triangle(g))
    }

    pub const NAMES: &[&str] = &[
        "independent-set",
        "triangle-free",
        "clique",
        "forest",
        "contains-cycle",
        "contains-triangle",
        "independent-set-predicate",
        "triangle-free-predicate",
    ];

    pub fn by_name(name: &str) -> Result<PropertySpec> {
        Ok(match name {
            "independent-set" => independent_set(),
            "triangle-free" => triangle_free(),
            "clique" => clique(),
            "forest" => forest(),
            "contains-cycle" => contains_cycle(),
            "contains-triangle" => contains_triangle(),
            "independent-set-predicate" => independent_set_predicate(),
            "triangle-free-predicate" => triangle_free_predicate(),
            other => return Err(Error::Input(format!("unknown property {other:?}; known: {}", NAMES.join(", ")))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shipped_examples() {
        assert!(independent_set().satisfies(&Graph::empty(5)));
        assert!(contains_cycle().satisfies(&Graph::complete(3)));
        assert!(!contains_cycle().satisfies(&Graph::path(6)));
        assert!(contains_triangle().satisfies(&Graph::complete(4)));
    }

    #[test]
    fn triangle_free_matches_triple_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = Graph::random(8, 0.5, &mut rng);
        let mut any_triangle = false;
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    any_triangle |= g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
                }
            }
        }
        assert_eq!(triangle_free().satisfies(&g), !any_triangle);
    }

    #[test]
    fn empty_graph_conventions() {
        let e = Graph::empty(0);
        for p in [independent_set(), triangle_free(), clique(), forest()] {
            assert!(p.satisfies(&e), "{}", p.name());
        }
        for p in [contains_cycle(), contains_triangle()] {
            assert!(!p.satisfies(&e), "{}", p.name());
        }
    }

    #[test]
    fn incremental_examples() {
        let c = IncrementalChecker::new(independent_set());
        let (ok, c1) = c.extend(&[]).unwrap();
        assert!(ok);
        let (ok2, _) = c1.extend(&[0]).unwrap();
        assert!(!ok2);
        // old state stays usable
        let (ok3, _) = c1.extend(&[]).unwrap();
        assert!(ok3);
    }

    #[test]
    fn incremental_agrees_with_batch_on_random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for p in [triangle_free(), forest(), contains_cycle(), contains_triangle()] {
            for _ in 0..100 {
                let g = Graph::random(10, 0.5, &mut rng);
                let mut checker = IncrementalChecker::new(p.clone());
                let mut accepted: Vec<usize> = Vec::new();
                for v in 0..10 {
                    if !rng.random_bool(0.6) {
                        continue;
                    }
                    let back: Vec<usize> = accepted.iter().enumerate().filter(|(_, &u)| g.has_edge(u, v)).map(|(i, _)| i).collect();
                    let (ok, next) = checker.extend(&back).unwrap();
                    accepted.push(v);
                    let batch = p.satisfies(&g.induced_subgraph(&accepted).unwrap());
                    assert_eq!(ok, batch, "{} on {:?}", p.name(), accepted);
                    checker = next;
                }
            }
        }
    }

    #[test]
    fn complement_property_of_independent_set_is_clique_like() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ind = independent_set();
        let co = ind.complement_property();
        let cl = clique();
        for _ in 0..50 {
            let g = Graph::random(6, 0.5, &mut rng);
            assert_eq!(ind.satisfies(&g), cl.satisfies(&g.complement()));
            assert_eq!(co.satisfies(&g), cl.satisfies(&g));
        }
    }

    #[test]
    fn unknown_name_is_input_error() {
        assert!(matches!(by_name("planar"), Err(Error::Input(_))));
        for name in NAMES {
            assert_eq!(by_name(name).unwrap().name(), *name);
        }
    }
}
