//! Closed-form advice bounds. Every formula here has a second, independent
//! evaluation route (exposed as `*_alt`) used to cross-check the first.
//!
//! Conventions: `0 log 0 = 0` and `0^0 = 1`. Lower-order terms are never
//! folded into numbers; they are carried in [`BoundReport::o_term`].

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DOMAIN_EPS: f64 = 1e-12;

/// The competitive ratio, either fixed or tabulated as a function of `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CParam {
    Scalar(f64),
    Table(BTreeMap<u64, f64>),
}

impl CParam {
    pub fn at(&self, n: u64) -> Result<f64> {
        match self {
            CParam::Scalar(c) => Ok(*c),
            CParam::Table(t) => t.get(&n).copied().ok_or_else(|| Error::Input(format!("c table has no entry for n = {n}"))),
        }
    }
}

impl From<f64> for CParam {
    fn from(c: f64) -> Self {
        CParam::Scalar(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub formula: String,
    pub params: BTreeMap<String, f64>,
    /// `None` when the parameters fall outside the formula's validity window.
    pub value_bits: Option<f64>,
    /// Lower-order term, e.g. `"- O(log n)"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub o_term: Option<String>,
    /// Named intermediate quantities.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub pieces: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    fn new(formula: &str, params: &[(&str, f64)], value: f64) -> Self {
        debug_assert!(!value.is_nan(), "{formula} produced NaN");
        BoundReport {
            formula: formula.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value_bits: Some(value),
            o_term: None,
            pieces: BTreeMap::new(),
            note: None,
        }
    }

    fn with_o_term(mut self, term: &str) -> Self {
        self.o_term = Some(term.to_string());
        self
    }

    pub fn value(&self) -> Result<f64> {
        self.value_bits
            .ok_or_else(|| Error::Input(format!("{}: {}", self.formula, self.note.as_deref().unwrap_or("not applicable"))))
    }

    pub fn piece(&self, name: &str) -> f64 {
        self.pieces[name]
    }

    /// `formula_id,params,value_bits` with the params JSON quoted for CSV.
    pub fn csv_row(&self) -> String {
        let params = serde_json::to_string(&self.params).expect("params serialize");
        let value = match self.value_bits {
            Some(v) => format!("{v}"),
            None => "n/a".to_string(),
        };
        format!("{},\"{}\",{}", self.formula, params.replace('"', "\"\""), value)
    }
}

pub const CSV_HEADER: &str = "formula_id,params,value_bits";

fn domain(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Input(msg()))
    }
}

/// `x log_b x` with `0 log 0 = 0`.
fn xlog(x: f64, base: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2() / base.log2()
    }
}

/// Same as [`xlog`] through natural logarithms.
fn xln_over(x: f64, ln_base: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln() / ln_base
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    domain(sigma >= 2.0 && sigma.is_finite(), || format!("alphabet size must be at least 2, got {sigma}"))
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    domain((0.0..=1.0).contains(&x), || format!("{name} must lie in [0, 1], got {x}"))
}

/// `F(sigma, a) = 1 + (1-a) log_s((1-a)/(s-1)) + a log_s a`.
pub fn f_sigma(sigma: f64, a: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_unit("fraction", a)?;
    let b = 1.0 - a;
    let middle = if b == 0.0 { 0.0 } else { b * (b / (sigma - 1.0)).log2() / sigma.log2() };
    Ok(1.0 + middle + xlog(a, sigma))
}

/// `F(sigma, a)` as `1 - h_sigma(1 - a)` with natural logarithms.
pub fn f_sigma_alt(sigma: f64, a: f64) -> Result<f64> {
    Ok(1.0 - entropy_h_alt(sigma, 1.0 - a)?)
}

/// The sigma-ary entropy `x log_s(s-1) - x log_s x - (1-x) log_s(1-x)`.
pub fn entropy_h(sigma: f64, x: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_unit("entropy argument", x)?;
    let lb = sigma.log2();
    Ok(x * (sigma - 1.0).log2() / lb - xlog(x, sigma) - xlog(1.0 - x, sigma))
}

/// [`entropy_h`] summed term by term in natural logarithms.
pub fn entropy_h_alt(sigma: f64, x: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_unit("entropy argument", x)?;
    let ls = sigma.ln();
    let terms = [x * (sigma - 1.0).ln() / ls, -xln_over(x, ls), -xln_over(1.0 - x, ls)];
    Ok(terms.iter().sum())
}

/// Advice needed to guess a `gamma` fraction of a sigma-ary string of
/// length `n` correctly: `F(sigma, gamma) n log2 sigma`.
pub fn sgkh_bound(sigma: f64, gamma: f64, n: f64) -> Result<BoundReport> {
    check_sigma(sigma)?;
    domain(gamma >= 1.0 / sigma - DOMAIN_EPS && gamma <= 1.0, || {
        format!("correct fraction must lie in [1/sigma, 1] = [{}, 1], got {gamma}", 1.0 / sigma)
    })?;
    let gamma = gamma.max(1.0 / sigma);
    let f = f_sigma(sigma, gamma)?.max(0.0);
    let mut r = BoundReport::new("sgkh", &[("sigma", sigma), ("gamma", gamma), ("n", n)], f * n * sigma.log2())
        .with_o_term("- O(log n)");
    r.pieces.insert("F".into(), f);
    Ok(r)
}

/// Advice for a `c`-competitive anti-guesser: `(1 - h_sigma(1/c)) n log2 sigma`,
/// for `1 <= c < sigma/(sigma-1)`.
pub fn anti_bound(sigma: f64, c: impl Into<CParam>, n: f64) -> Result<BoundReport> {
    check_sigma(sigma)?;
    let c = c.into().at(n as u64)?;
    let limit = sigma / (sigma - 1.0);
    domain(c >= 1.0 && c < limit, || format!("c must lie in [1, sigma/(sigma-1)) = [1, {limit}), got {c}"))?;
    let h = entropy_h(sigma, 1.0 / c)?;
    let mut r = BoundReport::new("anti-sgkh", &[("sigma", sigma), ("c", c), ("n", n)], ((1.0 - h) * n * sigma.log2()).max(0.0))
        .with_o_term("- O(log n)");
    r.pieces.insert("h".into(), h);
    Ok(r)
}

/// `B_c = log2(1 + (c-1)^(c-1) / c^c)`, with `B_1 = 1`.
pub fn b_c(c: f64) -> Result<f64> {
    domain(c >= 1.0 && c.is_finite(), || format!("c must be at least 1, got {c}"))?;
    if c == 1.0 {
        return Ok(1.0);
    }
    let ln_ratio = (c - 1.0) * (c - 1.0).ln() - c * c.ln();
    Ok(ln_ratio.exp().ln_1p() / LN_2)
}

/// [`b_c`] via `((c-1)/c)^(c-1) / c`.
pub fn b_c_alt(c: f64) -> Result<f64> {
    domain(c >= 1.0 && c.is_finite(), || format!("c must be at least 1, got {c}"))?;
    let t = ((c - 1.0) / c).powf(c - 1.0) / c;
    Ok((1.0 + t).log2())
}

/// `1 / (c e ln 2)`, the large-`c` approximation of `B_c`.
pub fn b_c_approx(c: f64) -> f64 {
    1.0 / (c * E * LN_2)
}

pub fn bc_rate(c: impl Into<CParam>, n: Option<f64>) -> Result<BoundReport> {
    let c = c.into().at(n.unwrap_or(0.0) as u64)?;
    Ok(BoundReport::new("Bc", &[("c", c)], b_c(c)?))
}

/// Lower and upper advice for `c`-competitive asymmetric string guessing:
/// `B_c n -/+ O(log n)`; the value reported is `B_c n`.
pub fn maxasg_bounds(c: impl Into<CParam>, n: f64) -> Result<BoundReport> {
    let c = c.into().at(n as u64)?;
    domain(c >= 1.0 && c <= n, || format!("c must lie in [1, n] = [1, {n}], got {c}"))?;
    let b = b_c(c)?;
    let mut r = BoundReport::new("maxasg", &[("c", c), ("n", n)], b * n).with_o_term("lower - O(log n), upper + O(log n)");
    r.pieces.insert("Bc".into(), b);
    Ok(r)
}

/// The quantities of the preemptive Max-π lower bound: alphabet size
/// `sigma = 4 c k1 log2(4 c k1)`, `n' = n / sigma`,
/// `K = k1 k2 log2 sigma log2 n`, the correct fraction
/// `alpha = (n' - cK) / (c k1 log2 sigma (n' - 1))` with its window, and
/// `S = F(sigma, alpha)(n' - 1) log2 sigma`.
///
/// Outside the validity window `n' >= 2cK - 1` (or when `alpha` leaves
/// `[1/sigma, 1]`) the report carries the pieces but no value.
pub fn preemptive_maxpi_pieces(c: impl Into<CParam>, n: f64, kappa1: f64, kappa2: f64) -> Result<BoundReport> {
    let c = c.into().at(n as u64)?;
    domain(c >= 2.0, || format!("c must be at least 2, got {c}"))?;
    domain(kappa1 >= 1.0 && kappa2 > 0.0, || format!("need kappa1 >= 1 and kappa2 > 0, got {kappa1}, {kappa2}"))?;
    domain(n >= 2.0, || format!("n must be at least 2, got {n}"))?;
    let x = 4.0 * c * kappa1;
    let sigma = x * x.log2();
    let ls = sigma.log2();
    let nprime = n / sigma;
    let k = kappa1 * kappa2 * ls * n.log2();
    let alpha = (nprime - c * k) / (c * kappa1 * ls * (nprime - 1.0));
    let upper = 1.0 / (c * kappa1 * ls);
    let lower = 1.0 / (2.0 * c * kappa1 * ls);
    let validity = 2.0 * c * k - 1.0;
    let mut r = BoundReport::new(
        "preemptive-maxpi",
        &[("c", c), ("n", n), ("kappa1", kappa1), ("kappa2", kappa2)],
        0.0,
    );
    for (name, v) in [
        ("sigma", sigma),
        ("nprime", nprime),
        ("K", k),
        ("alpha", alpha),
        ("alpha_lower", lower),
        ("alpha_upper", upper),
        ("validity_min_nprime", validity),
        ("log_x_minus_loglog_x", x.log2() - x.log2().log2()),
    ] {
        r.pieces.insert(name.into(), v);
    }
    if nprime < validity {
        r.value_bits = None;
        r.note = Some(format!("not applicable: n' = {nprime} < 2cK - 1 = {validity}"));
        return Ok(r);
    }
    if !(alpha >= 1.0 / sigma && alpha <= 1.0) {
        r.value_bits = None;
        r.note = Some(format!("not applicable: alpha = {alpha} outside [1/sigma, 1]"));
        return Ok(r);
    }
    let f = f_sigma(sigma, alpha)?;
    r.pieces.insert("F".into(), f);
    r.value_bits = Some(f * (nprime - 1.0) * ls);
    Ok(r)
}

/// `0.01 log2(2c) / (2c^2) (n - 2c)` for `8 <= c <= (1 + sqrt(1 + 4n)) / 4`.
pub fn indset_preemption_bound(c: impl Into<CParam>, n: f64) -> Result<BoundReport> {
    let c = c.into().at(n as u64)?;
    let hi = (1.0 + (1.0 + 4.0 * n).sqrt()) / 4.0;
    domain((8.0..=hi).contains(&c), || format!("c must lie in [8, (1+sqrt(1+4n))/4] = [8, {hi}], got {c}"))?;
    let v = 0.01 * (2.0 * c).log2() / (2.0 * c * c) * (n - 2.0 * c);
    Ok(BoundReport::new("preemptive-indset", &[("c", c), ("n", n)], v))
}

/// The guaranteed correct fraction `(n' - c) / (c n' - c)`, exact, for
/// `1 <= c < (n' + 1) / 2`.
pub fn indset_alpha(c: Ratio<i64>, nprime: i64) -> Result<Ratio<i64>> {
    let one = Ratio::from_integer(1);
    domain(c >= one && c * 2 < Ratio::from_integer(nprime + 1), || {
        format!("c must lie in [1, (n'+1)/2) for n' = {nprime}, got {c}")
    })?;
    let np = Ratio::from_integer(nprime);
    Ok((np - c) / (c * np - c))
}

pub fn indset_alpha_f64(c: f64, nprime: f64) -> Result<f64> {
    domain(c >= 1.0 && c < (nprime + 1.0) / 2.0, || format!("c must lie in [1, (n'+1)/2) for n' = {nprime}, got {c}"))?;
    Ok((nprime - c) / (c * nprime - c))
}

/// `(2 + ln2 log2(2c)) / (2 ln2 (c - 1))`, the slack term of the
/// independent-set bound.
pub fn h_of_c(c: f64) -> Result<f64> {
    domain(c > 1.0, || format!("c must exceed 1, got {c}"))?;
    Ok((2.0 + LN_2 * (2.0 * c).log2()) / (2.0 * LN_2 * (c - 1.0)))
}

/// [`h_of_c`] as `log2(4 (2c)^ln2) / (2 ln2 (c - 1))`.
pub fn h_of_c_alt(c: f64) -> Result<f64> {
    domain(c > 1.0, || format!("c must exceed 1, got {c}"))?;
    Ok((4.0 * (2.0 * c).powf(LN_2)).log2() / (2.0 * LN_2 * (c - 1.0)))
}

/// Advice for `c`-competitive preemptive Max-π when the smallest forbidden
/// graph has `k` vertices: `(1 - h_k(1/c)) n log2 k / k - O(log^2 n)`.
pub fn anti_maxpi_bound(k: f64, c: impl Into<CParam>, n: f64) -> Result<BoundReport> {
    domain(k >= 2.0, || format!("k must be at least 2, got {k}"))?;
    let c = c.into().at(n as u64)?;
    let limit = k / (k - 1.0);
    domain(c > 1.0 && c < limit, || format!("c must lie in (1, k/(k-1)) = (1, {limit}), got {c}"))?;
    let h = entropy_h(k, 1.0 / c)?;
    let mut r = BoundReport::new("anti-maxpi", &[("k", k), ("c", c), ("n", n)], ((1.0 - h) * n * k.log2() / k).max(0.0))
        .with_o_term("- O(log^2 n)");
    r.pieces.insert("h".into(), h);
    Ok(r)
}

/// Maps a formula id (or an accepted alias) to its canonical id.
pub fn canonical_formula(id: &str) -> Result<&'static str> {
    Ok(match id {
        "F" => "F",
        "entropy" | "h" => "entropy",
        "sgkh" => "sgkh",
        "anti" | "anti-sgkh" => "anti-sgkh",
        "Bc" | "bc" => "Bc",
        "maxasg" => "maxasg",
        "thm8" | "preemptive-maxpi" => "preemptive-maxpi",
        "thm9" | "indset" | "preemptive-indset" => "preemptive-indset",
        "indset-alpha" | "alpha" => "indset-alpha",
        "h-of-c" | "hc" => "h-of-c",
        "cor2" | "anti-maxpi" => "anti-maxpi",
        other => return Err(Error::Input(format!("unknown formula {other:?}"))),
    })
}

/// Parameters for [`evaluate`]; unset fields take no default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub sigma: Option<f64>,
    pub gamma: Option<f64>,
    pub c: Option<CParam>,
    pub n: Option<f64>,
    pub k: Option<f64>,
    pub kappa1: Option<f64>,
    pub kappa2: Option<f64>,
    pub nprime: Option<f64>,
    pub x: Option<f64>,
}

fn need<T: Clone>(v: &Option<T>, name: &str, formula: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Input(format!("{formula} needs --{name}")))
}

/// Evaluates a formula by id.
pub fn evaluate(id: &str, p: &BoundParams) -> Result<BoundReport> {
    let f = canonical_formula(id)?;
    match f {
        "F" => {
            let (s, g) = (need(&p.sigma, "sigma", f)?, need(&p.gamma, "gamma", f)?);
            Ok(BoundReport::new(f, &[("sigma", s), ("gamma", g)], f_sigma(s, g)?))
        }
        "entropy" => {
            let (s, x) = (need(&p.sigma, "sigma", f)?, need(&p.x, "x", f)?);
            Ok(BoundReport::new(f, &[("sigma", s), ("x", x)], entropy_h(s, x)?))
        }
        "sgkh" => sgkh_bound(need(&p.sigma, "sigma", f)?, need(&p.gamma, "gamma", f)?, need(&p.n, "n", f)?),
        "anti-sgkh" => anti_bound(need(&p.sigma, "sigma", f)?, need(&p.c, "c", f)?, need(&p.n, "n", f)?),
        "Bc" => bc_rate(need(&p.c, "c", f)?, p.n),
        "maxasg" => maxasg_bounds(need(&p.c, "c", f)?, need(&p.n, "n", f)?),
        "preemptive-maxpi" => preemptive_maxpi_pieces(
            need(&p.c, "c", f)?,
            need(&p.n, "n", f)?,
            need(&p.kappa1, "kappa1", f)?,
            p.kappa2.unwrap_or(1.0),
        ),
        "preemptive-indset" => indset_preemption_bound(need(&p.c, "c", f)?, need(&p.n, "n", f)?),
        "indset-alpha" => {
            let np = need(&p.nprime, "nprime", f)?;
            let c = need(&p.c, "c", f)?.at(np as u64)?;
            Ok(BoundReport::new(f, &[("c", c), ("nprime", np)], indset_alpha_f64(c, np)?))
        }
        "h-of-c" => {
            let c = need(&p.c, "c", f)?.at(p.n.unwrap_or(0.0) as u64)?;
            Ok(BoundReport::new(f, &[("c", c)], h_of_c(c)?))
        }
        "anti-maxpi" => anti_maxpi_bound(need(&p.k, "k", f)?, need(&p.c, "c", f)?, need(&p.n, "n", f)?),
        _ => unreachable!("canonical ids are exhaustive"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn anchors() {
        for s in [2.0, 3.0, 7.0, 24.0] {
            assert!(close(f_sigma(s, 1.0).unwrap(), 1.0, 1e-12));
            assert!(close(f_sigma(s, 1.0 / s).unwrap(), 0.0, 1e-12));
            assert!(close(entropy_h(s, (s - 1.0) / s).unwrap(), 1.0, 1e-12));
        }
        assert!(close(entropy_h(2.0, 0.5).unwrap(), 1.0, 1e-12));
        assert_eq!(b_c(1.0).unwrap(), 1.0);
        assert!(close(b_c(2.0).unwrap(), 1.25f64.log2(), 1e-12));
    }

    #[test]
    fn sgkh_example() {
        let v = sgkh_bound(2.0, 0.75, 100.0).unwrap().value().unwrap();
        let h = -0.75 * 0.75f64.log2() - 0.25 * 0.25f64.log2();
        assert!(close(v, 100.0 * (1.0 - h), 1e-9));
        assert!(close(v, 18.8722, 1e-3));
        assert!(sgkh_bound(2.0, 0.4, 10.0).is_err());
        assert_eq!(sgkh_bound(4.0, 0.25, 10.0).unwrap().value().unwrap(), 0.0);
    }

    #[test]
    fn anti_domain_and_example() {
        assert!(anti_bound(2.0, 2.0, 10.0).is_err());
        assert!(anti_bound(2.0, 0.9, 10.0).is_err());
        let r = anti_bound(3.0, 1.2, 99.0).unwrap();
        let x: f64 = 5.0 / 6.0;
        let by_hand = x * 2f64.ln() / 3f64.ln() - x * x.ln() / 3f64.ln() - (1.0 - x) * (1.0 - x).ln() / 3f64.ln();
        assert!(close(r.piece("h"), by_hand, 1e-12));
        assert!(close(r.value().unwrap(), (1.0 - by_hand) * 99.0 * 3f64.log2(), 1e-9));
    }

    #[test]
    fn second_paths_agree() {
        for s in [2.0, 3.0, 5.0, 16.0, 100.0] {
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                assert!(close(entropy_h(s, x).unwrap(), entropy_h_alt(s, x).unwrap(), 1e-12));
                assert!(close(f_sigma(s, x).unwrap(), f_sigma_alt(s, x).unwrap(), 1e-12));
            }
        }
        for i in 0..200 {
            let c = 1.0 + i as f64 * 0.37;
            assert!(close(b_c(c).unwrap(), b_c_alt(c).unwrap(), 1e-12), "c={c}");
            if c > 1.0 {
                assert!(close(h_of_c(c).unwrap(), h_of_c_alt(c).unwrap(), 1e-12));
            }
        }
    }

    #[test]
    fn monotonicity_on_grids() {
        for s in [2.0, 3.0, 10.0] {
            let grid: Vec<f64> = (0..=400).map(|i| 1.0 / s + (1.0 - 1.0 / s) * i as f64 / 400.0).collect();
            let vals: Vec<f64> = grid.iter().map(|&g| f_sigma(s, g).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[0] < w[1]));
            let limit = s / (s - 1.0);
            let anti: Vec<f64> = (0..400).map(|i| anti_bound(s, 1.0 + (limit - 1.0) * i as f64 / 400.0, 10.0).unwrap().value().unwrap()).collect();
            assert!(anti.windows(2).all(|w| w[0] > w[1]));
        }
        let bc: Vec<f64> = (0..500).map(|i| b_c(1.0 + i as f64 * 0.5).unwrap()).collect();
        assert!(bc.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn preemptive_pieces() {
        let r = preemptive_maxpi_pieces(2.0, 24000.0, 1.0, 1.0).unwrap();
        assert!(close(r.piece("sigma"), 24.0, 1e-12));
        assert!(close(r.piece("nprime"), 1000.0, 1e-9));
        let k = 24f64.log2() * 24000f64.log2();
        assert!(close(r.piece("K"), k, 1e-9));
        assert!(r.piece("nprime") >= 2.0 * 2.0 * k - 1.0);
        assert!(close(r.piece("alpha_upper") / r.piece("alpha_lower"), 2.0, 1e-12));
        let a = r.piece("alpha");
        assert!(a >= r.piece("alpha_lower") && a <= r.piece("alpha_upper"));
        assert!(a >= 1.0 / 24.0);
        assert!(r.value().unwrap() > 0.0);
        let small = preemptive_maxpi_pieces(2.0, 1000.0, 1.0, 1.0).unwrap();
        assert!(small.value_bits.is_none());
        assert!(small.value().is_err());
    }

    #[test]
    fn indset_pieces() {
        assert_eq!(indset_alpha(Ratio::from_integer(2), 10).unwrap(), Ratio::new(4, 9));
        let a = indset_alpha(Ratio::from_integer(2), 10).unwrap();
        assert!(a >= Ratio::new(1, 4) && a <= Ratio::new(1, 2));
        assert!(indset_alpha(Ratio::from_integer(6), 10).is_err());
        assert!(h_of_c(8.0).unwrap() <= 0.495);
        assert!(close(h_of_c(8.0).unwrap(), 0.4918, 1e-4));
        assert!(indset_preemption_bound(8.0, 1000.0).is_ok());
        assert!(indset_preemption_bound(7.0, 1000.0).is_err());
        assert!(indset_preemption_bound(8.0, 100.0).is_err());
    }

    #[test]
    fn anti_maxpi_limits() {
        let near_one = anti_maxpi_bound(2.0, 1.0 + 1e-9, 100.0).unwrap().value().unwrap();
        assert!(close(near_one, 50.0, 1e-3));
        let near_top = anti_maxpi_bound(2.0, 2.0 - 1e-9, 100.0).unwrap().value().unwrap();
        assert!(near_top < 1e-3);
        let r = anti_maxpi_bound(3.0, 1.2, 300.0).unwrap();
        let h = entropy_h_alt(3.0, 5.0 / 6.0).unwrap();
        assert!(close(r.value().unwrap(), (1.0 - h) * 300.0 * 3f64.log2() / 3.0, 1e-9));
        assert!(anti_maxpi_bound(2.0, 1.0, 10.0).is_err());
    }

    #[test]
    fn tabulated_c() {
        let table = CParam::Table([(100, 1.5), (200, 1.2)].into_iter().collect());
        let r = anti_bound(2.0, table.clone(), 200.0).unwrap();
        assert_eq!(r.params["c"], 1.2);
        assert!(anti_bound(2.0, table, 300.0).is_err());
    }

    #[test]
    fn csv_rows() {
        let r = bc_rate(1.0, None).unwrap();
        assert_eq!(r.csv_row(), "Bc,\"{\"\"c\"\":1.0}\",1");
        let p = BoundParams { c: Some(2.0.into()), n: Some(24000.0), kappa1: Some(1.0), ..Default::default() };
        assert_eq!(evaluate("thm8", &p).unwrap().formula, "preemptive-maxpi");
    }
}
