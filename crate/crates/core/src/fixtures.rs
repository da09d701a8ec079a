//! Named, seeded constructions written as an instance file plus a JSON
//! sidecar of checkable claims, and the from-scratch verifier for them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::OnlineInstance;
use crate::error::{Error, Result};
use crate::graph::{for_each_k_subset, mask_of, Graph};
use crate::iso::isomorphic;
use crate::optimum::opt_max_pi;
use crate::property::{builtin, PropertyMode, PropertySpec};
use crate::ramsey::{default_alpha, ramsey_like_graph, reverify, RamseyCertificate};
use crate::reductions::anti::build_anti_instance;
use crate::reductions::asg::build_marked_graph;
use crate::reductions::cliques::build_clique_layers;
use crate::reductions::layered::{build_layered_gadget, check_transversals, embed_guessing_string, LayeredGadget};
use crate::reductions::Orientation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    /// Ramsey-type base graph with a planted solution marked by a bit string.
    Marked,
    /// Layers of a small Ramsey-type graph joined by a verified cross graph.
    Layered,
    /// Cliques with one designated vertex per layer.
    CliqueLayers,
    /// Copies of the forbidden graph arranged along a Ramsey-type graph.
    Anti,
    /// A bare Ramsey-type graph.
    Ramsey,
}

impl FixtureKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "marked" | "thm5" => FixtureKind::Marked,
            "layered" | "thm8" => FixtureKind::Layered,
            "clique-layers" | "appendix" => FixtureKind::CliqueLayers,
            "anti" | "thm10" => FixtureKind::Anti,
            "ramsey" => FixtureKind::Ramsey,
            _ => return Err(Error::Input(format!("unknown construction {s:?}; expected marked, layered, clique-layers, anti or ramsey"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FixtureKind::Marked => "marked",
            FixtureKind::Layered => "layered",
            FixtureKind::CliqueLayers => "clique-layers",
            FixtureKind::Anti => "anti",
            FixtureKind::Ramsey => "ramsey",
        }
    }
}

/// Construction parameters. Missing values are filled with per-kind defaults
/// by [`FixtureParams::resolved`]; the sidecar always stores resolved values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureParams {
    pub kind: FixtureKind,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub sigma: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub kappa1: Option<f64>,
    #[serde(default)]
    pub kappa2: Option<f64>,
    #[serde(default)]
    pub property: Option<String>,
    pub seed: u64,
    #[serde(default)]
    pub budget: Option<usize>,
    /// Source string: bits for `marked`, symbols `1..` otherwise. Drawn from
    /// the seed when absent.
    #[serde(default)]
    pub string: Option<Vec<u32>>,
}

const STRING_STREAM: u64 = 0x5bd1_e995;

impl FixtureParams {
    pub fn new(kind: FixtureKind, seed: u64) -> Self {
        FixtureParams {
            kind,
            n: None,
            sigma: None,
            k: None,
            alpha: None,
            kappa1: None,
            kappa2: None,
            property: None,
            seed,
            budget: None,
            string: None,
        }
    }

    pub fn resolved(&self) -> Result<FixtureParams> {
        let mut p = self.clone();
        let or = |v: &mut Option<usize>, d: usize| *v.get_or_insert(d);
        match p.kind {
            FixtureKind::Marked | FixtureKind::Ramsey => {
                let prop = p.property.get_or_insert_with(|| "independent-set".into()).clone();
                or(&mut p.n, 16);
                or(&mut p.budget, 200);
                let h = smallest_witness(&builtin::by_name(&prop)?)?;
                p.alpha.get_or_insert(default_alpha(&h));
            }
            FixtureKind::Layered => {
                p.property.get_or_insert_with(|| "independent-set".into());
                or(&mut p.n, 16);
                or(&mut p.sigma, 4);
                or(&mut p.budget, 2000);
                p.kappa1.get_or_insert(1.5);
                p.kappa2.get_or_insert(1.0);
            }
            FixtureKind::CliqueLayers => {
                p.property = Some("independent-set".into());
                let sigma = or(&mut p.sigma, 3);
                // n counts vertices; the default is four layers
                or(&mut p.n, 4 * sigma);
            }
            FixtureKind::Anti => {
                let k = match (p.k, &p.property) {
                    (Some(k), _) => k,
                    (None, Some(name)) => builtin::by_name(name)?.k(),
                    (None, None) => 2,
                };
                p.k = Some(k);
                let prop = p.property.get_or_insert_with(|| match k {
                    2 => "independent-set".into(),
                    3 => "triangle-free".into(),
                    _ => String::new(),
                });
                if prop.is_empty() {
                    return Err(Error::Input(format!("no shipped property has a smallest forbidden graph on k = {k} vertices")));
                }
                let spec = builtin::by_name(prop)?;
                if smallest_witness(&spec)?.n() != k {
                    return Err(Error::Input(format!("property {prop} has k = {}, not {k}", spec.k())));
                }
                or(&mut p.n, 12);
                or(&mut p.budget, 500);
                p.alpha.get_or_insert(1.5);
            }
        }
        if p.string.is_none() && p.kind != FixtureKind::Ramsey {
            let (len, lo, hi) = match p.kind {
                FixtureKind::Marked => (p.n.unwrap(), 0, 1),
                FixtureKind::Layered | FixtureKind::CliqueLayers => {
                    let sigma = p.sigma.unwrap();
                    ((p.n.unwrap() / sigma.max(1)).saturating_sub(1), 1, sigma as u32)
                }
                FixtureKind::Anti => (p.n.unwrap(), 1, p.k.unwrap() as u32),
                FixtureKind::Ramsey => unreachable!(),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ STRING_STREAM);
            p.string = Some((0..len).map(|_| rng.random_range(lo..=hi)).collect());
        }
        Ok(p)
    }

    fn property_spec(&self) -> Result<PropertySpec> {
        builtin::by_name(self.property.as_deref().unwrap_or("independent-set"))
    }
}

fn smallest_witness(p: &PropertySpec) -> Result<Graph> {
    if p.mode() != PropertyMode::HereditaryForbidden {
        return Err(Error::Input(format!("construction needs a forbidden-subgraph property, {} is not", p.name())));
    }
    p.witnesses()
        .iter()
        .min_by_key(|g| g.n())
        .cloned()
        .ok_or_else(|| Error::Input(format!("property {} lists no forbidden graph", p.name())))
}

/// One checkable claim about a fixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Certificate {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Certificate { name: name.into(), holds, detail: detail.into(), data: None }
    }

    fn with_data(mut self, data: impl Serialize) -> Self {
        self.data = serde_json::to_value(data).ok();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub construction: String,
    pub params: FixtureParams,
    pub certificates: Vec<Certificate>,
    /// Special vertex of each layer (0-based position), or of each
    /// planted position for `marked`.
    pub special_vertices: Vec<Option<usize>>,
}

impl Sidecar {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn all_hold(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub instance: OnlineInstance,
    pub sidecar: Sidecar,
}

/// Builds a fixture and evaluates every claim about it.
pub fn construct(params: &FixtureParams) -> Result<Fixture> {
    let p = params.resolved()?;
    let string = p.string.clone().unwrap_or_default();
    let property = p.property_spec()?;
    let (instance, special, certs) = match p.kind {
        FixtureKind::Ramsey => {
            let h = smallest_witness(&property)?;
            let cert = ramsey_like_graph(p.n.unwrap(), &h, p.alpha.unwrap(), p.seed, p.budget.unwrap())?;
            let c = ramsey_claim("ramsey", &cert);
            (OnlineInstance::new(cert.graph.clone()), Vec::new(), vec![c])
        }
        FixtureKind::Marked => {
            let h = smallest_witness(&property)?;
            let base = ramsey_like_graph(p.n.unwrap(), &h, p.alpha.unwrap(), p.seed, p.budget.unwrap())?;
            let bits: Vec<bool> = string.iter().map(|&b| b != 0).collect();
            if string.iter().any(|&b| b > 1) {
                return Err(Error::Input("marked construction needs a 0/1 string".into()));
            }
            let mut certs = vec![ramsey_claim("base", &base)];
            base.require_verified()?;
            let orientation = Orientation::for_property(&property)?;
            let (inst, planted) = build_marked_graph(&bits, &base, orientation)?;
            certs.extend(marked_claims(inst.graph(), &property, &planted, base.threshold));
            (inst, planted.iter().map(|&v| Some(v)).collect(), certs)
        }
        FixtureKind::Layered => {
            let h = smallest_witness(&property)?;
            let gadget = build_layered_gadget(
                p.n.unwrap(),
                p.sigma.unwrap(),
                &h,
                p.kappa1.unwrap(),
                p.kappa2.unwrap(),
                p.seed,
                p.budget.unwrap(),
            )?;
            let mut certs = vec![ramsey_claim("layer_graph", &gadget.layer_graph)];
            certs.push(
                Certificate::new(
                    "cross_graph",
                    gadget.cross.verified,
                    format!("every transversal over {} layers induces the forbidden graph", gadget.threshold2()),
                )
                .with_data(&gadget.cross),
            );
            gadget.require_verified()?;
            let li = embed_guessing_string(&gadget, &string)?;
            certs.extend(layered_claims(&gadget, &li.instance, &li.special, &property)?);
            (li.instance, li.special, certs)
        }
        FixtureKind::CliqueLayers => {
            let sigma = p.sigma.unwrap();
            let li = build_clique_layers(&string, sigma)?;
            let certs = clique_layer_claims(li.instance.graph(), sigma, &li.special)?;
            (li.instance, li.special, certs)
        }
        FixtureKind::Anti => {
            let h = smallest_witness(&property)?;
            let gtilde = ramsey_like_graph(p.n.unwrap(), &h, p.alpha.unwrap(), p.seed, p.budget.unwrap())?;
            let mut certs = vec![ramsey_claim("gtilde", &gtilde)];
            gtilde.require_verified()?;
            let (li, xs) = build_anti_instance(&string, &h, &gtilde)?;
            certs.extend(anti_claims(li.instance.graph(), &h, &property, &xs, gtilde.threshold));
            (li.instance, li.special, certs)
        }
    };
    Ok(Fixture {
        instance,
        sidecar: Sidecar { construction: p.kind.name().into(), params: p, certificates: certs, special_vertices: special },
    })
}

fn ramsey_claim(name: &str, cert: &RamseyCertificate) -> Certificate {
    Certificate::new(
        name,
        cert.verified,
        format!(
            "every subset of at least {} of {} vertices induces the target (attempts {})",
            cert.threshold,
            cert.n(),
            cert.attempts
        ),
    )
    .with_data(cert)
}

/// Claims of the marked construction: the planted set satisfies the
/// property, and no satisfying set has `threshold` or more vertices outside
/// it. For a hereditary property the second claim is equivalent to every
/// `threshold`-subset of the unplanted vertices violating the property.
pub fn marked_claims(g: &Graph, p: &PropertySpec, planted: &[usize], threshold: usize) -> Vec<Certificate> {
    let planted_ok = p.satisfies_mask(g, mask_of(planted));
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let outside = all & !mask_of(planted);
    let bounded = threshold == 0
        || (outside.count_ones() as usize) < threshold
        || for_each_k_subset(outside, threshold, |m| !p.satisfies_mask(g, m));
    vec![
        Certificate::new("planted_satisfies", planted_ok, format!("the {} planted vertices satisfy {}", planted.len(), p.name())),
        Certificate::new(
            "outside_bound",
            bounded,
            format!("every {} subset has at most {} vertices outside the planted set", p.name(), threshold.saturating_sub(1)),
        ),
    ]
}

pub fn layered_claims(
    gadget: &LayeredGadget,
    inst: &OnlineInstance,
    special: &[Option<usize>],
    p: &PropertySpec,
) -> Result<Vec<Certificate>> {
    let g = inst.graph();
    let sigma = gadget.sigma;
    let t1 = gadget.threshold1();
    let mut layer_opts = Vec::new();
    for l in 0..gadget.nprime {
        let layer: Vec<usize> = (l * sigma..(l + 1) * sigma).collect();
        layer_opts.push(opt_max_pi(&g.induced_subgraph(&layer)?, p)?.len());
    }
    let dist: Vec<usize> = special.iter().flatten().copied().collect();
    let dist_mask = mask_of(&dist);
    let independent = dist.iter().all(|&a| dist.iter().all(|&b| !g.has_edge(a, b)));
    let h = gadget.target();
    let image_ok = check_transversals(g, sigma, gadget.threshold2(), h, &|v| dist_mask >> v & 1 == 0)?;
    let opt = opt_max_pi(g, p)?.len();
    let (lo, hi) = (gadget.nprime, gadget.nprime + gadget.k_int());
    Ok(vec![
        Certificate::new(
            "layer_opt_below_threshold",
            layer_opts.iter().all(|&o| o < t1),
            format!("per-layer optima {layer_opts:?} stay below {t1}"),
        ),
        Certificate::new(
            "transversals_in_instance",
            image_ok,
            format!("every transversal of non-distinguished vertices over {} layers induces the forbidden graph", gadget.threshold2()),
        ),
        Certificate::new("distinguished_independent", independent, format!("{} distinguished vertices pairwise non-adjacent", dist.len())),
        Certificate::new("opt_window", lo <= opt && opt <= hi, format!("optimum {opt} lies in [{lo}, {hi}]")),
    ])
}

pub fn clique_layer_claims(g: &Graph, sigma: usize, special: &[Option<usize>]) -> Result<Vec<Certificate>> {
    let layers = special.len();
    let cliques = (0..layers).all(|l| (l * sigma..(l + 1) * sigma).all(|a| (a + 1..(l + 1) * sigma).all(|b| g.has_edge(a, b))));
    let mut designated_free = true;
    let mut others_joined = true;
    for (l, d) in special.iter().enumerate() {
        for v in l * sigma..(l + 1) * sigma {
            for u in (l + 1) * sigma..g.n() {
                if Some(v) == *d {
                    designated_free &= !g.has_edge(v, u);
                } else {
                    others_joined &= g.has_edge(v, u);
                }
            }
        }
    }
    let opt = opt_max_pi(g, &builtin::independent_set())?.len();
    Ok(vec![
        Certificate::new("layers_are_cliques", cliques, format!("{layers} layers of {sigma}")),
        Certificate::new("designated_free", designated_free, "designated vertices have no later neighbours"),
        Certificate::new("others_joined", others_joined, "non-designated vertices are joined to every later vertex"),
        Certificate::new("opt_equals_layers", opt == layers, format!("maximum independent set {opt}, layers {layers}")),
    ])
}

/// Claims about the anti gadget: the planted set is independent with one
/// vertex per layer, every layer induces `h`, and every planted-disjoint set
/// that reaches `threshold` layers (in particular every one of size at least
/// `k * threshold`) violates the property.
pub fn anti_claims(g: &Graph, h: &Graph, p: &PropertySpec, xs: &[usize], threshold: usize) -> Vec<Certificate> {
    let k = h.n();
    let n = xs.len();
    let x_indep = xs.iter().all(|&a| xs.iter().all(|&b| !g.has_edge(a, b)));
    let layers_h = (0..n).all(|l| {
        let layer: Vec<usize> = (l * k..(l + 1) * k).collect();
        g.induced_subgraph(&layer).map(|s| isomorphic(&s, h)).unwrap_or(false)
    });
    let size_bound = k * threshold;
    let others: Vec<Vec<usize>> = (0..n).map(|l| (l * k..(l + 1) * k).filter(|v| !xs.contains(v)).collect()).collect();
    let spread_ok = threshold > n || layer_transversals_violate(g, p, &others, threshold);
    let non_x: Vec<usize> = others.concat();
    let size_ok = size_bound > non_x.len() || for_each_k_subset(mask_of(&non_x), size_bound, |m| !p.satisfies_mask(g, m));
    vec![
        Certificate::new("planted_independent", x_indep && n == xs.len(), format!("{n} planted vertices pairwise non-adjacent")),
        Certificate::new("layers_induce_forbidden", layers_h, format!("each of {n} layers induces the {k}-vertex forbidden graph")),
        Certificate::new(
            "spread_sets_violate",
            spread_ok,
            format!("every planted-disjoint set meeting {threshold} layers violates {}", p.name()),
        ),
        Certificate::new(
            "large_sets_violate",
            size_ok,
            format!("every planted-disjoint set of {size_bound} vertices violates {}", p.name()),
        ),
    ]
}

fn layer_transversals_violate(g: &Graph, p: &PropertySpec, others: &[Vec<usize>], t: usize) -> bool {
    fn walk(g: &Graph, p: &PropertySpec, others: &[Vec<usize>], t: usize, from: usize, mask: u64, depth: usize) -> bool {
        if depth == t {
            return !p.satisfies_mask(g, mask);
        }
        (from..others.len()).all(|l| others.len() - l < t - depth || others[l].iter().all(|&v| walk(g, p, others, t, l + 1, mask | 1 << v, depth + 1)))
    }
    walk(g, p, others, t, 0, 0, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Certificate>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&Certificate> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

/// Rebuilds the fixture from its parameters, re-evaluates every claim, and
/// compares the result against the given files. Certificate graphs stored in
/// the sidecar are re-verified on their own as well.
pub fn verify(instance_text: &str, sidecar: &Sidecar) -> Result<VerifyReport> {
    let inst = OnlineInstance::from_text(instance_text)?;
    let mut checks = Vec::new();
    if FixtureKind::parse(&sidecar.construction)? != sidecar.params.kind {
        checks.push(Certificate::new("construction_name", false, "construction name disagrees with params.kind"));
    }
    let fresh = match construct(&sidecar.params) {
        Ok(f) => f,
        Err(e @ (Error::Unverified(_) | Error::Soundness(_))) => {
            checks.push(Certificate::new("rebuild", false, e.to_string()));
            return Ok(VerifyReport { checks });
        }
        Err(e) => return Err(e),
    };
    checks.push(Certificate::new(
        "instance_matches",
        fresh.instance.presented() == inst.presented() && fresh.instance.is_blind() == inst.is_blind(),
        "the instance file equals the rebuilt construction",
    ));
    checks.push(Certificate::new(
        "special_vertices_match",
        fresh.sidecar.special_vertices == sidecar.special_vertices,
        "special vertices equal the rebuilt ones",
    ));
    for claimed in &sidecar.certificates {
        if let Some(cert) = claimed.data.as_ref().and_then(|d| serde_json::from_value::<RamseyCertificate>(d.clone()).ok()) {
            let ok = reverify(&cert) == cert.verified && cert.verified;
            checks.push(Certificate::new(&format!("{}_reverified", claimed.name), ok, "stored certificate graph re-checked exhaustively"));
        }
        match fresh.sidecar.certificates.iter().find(|c| c.name == claimed.name) {
            Some(c) => checks.push(Certificate::new(
                &claimed.name,
                c.holds && claimed.holds == c.holds,
                format!("claimed {}, recomputed {}: {}", claimed.holds, c.holds, c.detail),
            )),
            None => checks.push(Certificate::new(&claimed.name, false, "claim not produced by the construction")),
        }
    }
    for c in &fresh.sidecar.certificates {
        if !sidecar.certificates.iter().any(|s| s.name == c.name) {
            checks.push(Certificate::new(&c.name, false, "recomputed claim missing from the sidecar"));
        }
    }
    Ok(VerifyReport { checks })
}
