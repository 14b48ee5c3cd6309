use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{ExactValue, Metadata, QueryResult, TableCache};
use crate::error::{Error, Result};
use crate::expectation;
use crate::fourier::FourierData;
use crate::group::{Family, GroupSpec};
use crate::haar::{self, McConfig, Observable};
use crate::lr as lrmod;
use crate::matching;
use crate::partition::Partition;
use crate::scalar::Scalar;
use crate::symgroup;
use crate::szego;

const TRACE_CONVENTION: &str = "p_lambda(g) = prod_i tr(g^lambda_i)";
const STABLE_CONVENTION: &str = "exact formulas need n >= |lambda|";
const RAINS_CONVENTION: &str =
    "below the stable range only Sp(2n) with lambda = (1^k) is exact: fixed-point-free involutions of [k] with no decreasing subsequence longer than 2n";
const TWISTED_CONVENTION: &str =
    "chi_gamma is the irreducible character of highest weight gamma; on so-even with l(gamma) = n it is the O(2n) character chi_gamma+ + chi_gamma-";
const RATIO_CONVENTION: &str = "R(gamma) = s_gamma evaluated at p_i = i c_i";

fn label(p: &Partition) -> String {
    if p.is_empty() {
        "0".into()
    } else {
        p.to_string()
    }
}

fn group_json(g: &GroupSpec) -> Value {
    json!({"group": g.family.name(), "rank": g.rank.to_string()})
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(x), Value::Object(y)) = (&mut a, b) {
        x.extend(y);
    }
    a
}

fn is_rains_case(group: &GroupSpec, lambda: &Partition) -> bool {
    group.family == Family::Sp && lambda.parts().iter().all(|&p| p == 1) && !group.in_stable_range(lambda.weight())
}

/// `E_G[p_λ]`.
pub fn expect_trace(group: &GroupSpec, lambda: &Partition) -> Result<QueryResult> {
    let value = expectation::expect_trace_product(group, lambda)?;
    let stable = group.in_stable_range(lambda.weight());
    let mut conventions = vec![TRACE_CONVENTION, STABLE_CONVENTION];
    if is_rains_case(group, lambda) {
        conventions.push(RAINS_CONVENTION);
    }
    let query = merge(group_json(group), json!({"lambda": label(lambda)}));
    Ok(QueryResult::new("expect-trace", query, Metadata::new(stable, &conventions)).with_integer(value))
}

/// `E_G[χ_γ p_λ]`.
pub fn expect_twisted(
    group: &GroupSpec,
    gamma: &Partition,
    lambda: &Partition,
    cache: Option<&TableCache>,
) -> Result<QueryResult> {
    if let Some(cache) = cache {
        if expectation::verification_enabled() {
            cache.get(lambda.weight())?;
        }
    }
    let value = expectation::expect_twisted(group, gamma, lambda)?;
    let query = merge(group_json(group), json!({"gamma": label(gamma), "lambda": label(lambda)}));
    Ok(QueryResult::new(
        "expect-twisted",
        query,
        Metadata::new(true, &[TRACE_CONVENTION, STABLE_CONVENTION, TWISTED_CONVENTION]),
    )
    .with_integer(value))
}

/// `R(γ, (c_i))`, computed in both forms.
pub fn ratio(gamma: &Partition, f: &FourierData<BigRational>) -> Result<QueryResult> {
    let by_specialization = szego::ratio_schur_specialization(gamma, f)?;
    let by_characters = szego::ratio_character_sum(gamma, f)?;
    if by_specialization != by_characters {
        return Err(Error::Consistency(format!(
            "ratio forms disagree: {by_specialization} vs {by_characters}"
        )));
    }
    let query = json!({"gamma": label(gamma), "coeffs": f.to_string()});
    Ok(QueryResult::new("ratio", query, Metadata::new(true, &[RATIO_CONVENTION])).with_exact(&by_specialization))
}

/// Optional finite-rank series for [`asymptotics`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesRequest {
    pub rank: usize,
    pub cutoff: usize,
}

/// Johansson limit, twisted asymptotics, and optionally the truncated
/// exact series at a finite rank.
pub fn asymptotics(
    family: Family,
    f: &FourierData<BigRational>,
    gamma: Option<&Partition>,
    series: Option<SeriesRequest>,
) -> Result<QueryResult> {
    let exponent = szego::johansson_exponent(family, f);
    let limit = szego::johansson_limit(family, f);
    let empty = Partition::empty();
    let gamma = gamma.unwrap_or(&empty);
    let r = szego::ratio_schur_specialization(gamma, f)?;
    let value = Scalar::to_f64(&r) * limit;
    let mut data = json!({
        "johansson_exponent": ExactValue::from_rational(&exponent),
        "johansson_limit": limit,
        "ratio": ExactValue::from_rational(&r),
        "fixed_eigenvalue_factor": szego::fixed_eigenvalue_factor(family, f),
        "condition_a": ExactValue::from_rational(&f.condition_a()),
        "condition_b": ExactValue::from_rational(&f.condition_b()),
        "prefactor_omitted": !f.c0().is_zero(),
    });
    if let Some(req) = series {
        let s = szego::expect_phi_series(&GroupSpec::finite(family, req.rank), gamma, f, req.cutoff)?;
        let mut entry = json!({
            "rank": s.rank,
            "cutoff": s.cutoff,
            "value": s.value(),
            "tail_bound": s.tail_bound,
            "terms": s.terms,
        });
        if let Some(e) = s.exact_value() {
            entry["exact"] = serde_json::to_value(ExactValue::from_rational(&e)).unwrap_or(Value::Null);
        }
        data["series"] = entry;
    }
    let mut conventions: Vec<&str> = szego::JOHANSSON_CONVENTIONS.to_vec();
    conventions.push(RATIO_CONVENTION);
    let query = json!({"group": family.name(), "coeffs": f.to_string(), "gamma": label(gamma)});
    Ok(QueryResult::new("asymptotics", query, Metadata::new(true, &conventions))
        .with_float(value)
        .with_data(data))
}

/// Restriction of `s_λ` from `U(m)` to the family.
pub fn branch(family: Family, lambda: &Partition) -> Result<QueryResult> {
    let target = lrmod::branching_decomposition(lambda, family);
    let coefficients: BTreeMap<String, String> = target
        .coeffs
        .iter()
        .map(|(mu, c)| (label(mu), c.to_string()))
        .collect();
    let order: Vec<String> = target.coeffs.keys().map(label).collect();
    let query = json!({"group": family.name(), "lambda": label(lambda)});
    Ok(QueryResult::new(
        "branch",
        query,
        Metadata::new(true, &["coefficients of chi_mu in the restriction of s_lambda; valid in the stable range"]),
    )
    .with_data(json!({"coefficients": coefficients, "order": order})))
}

/// Character table of `S_k`.
pub fn char_table(k: usize, cache: Option<&TableCache>) -> Result<QueryResult> {
    let table = match cache {
        Some(c) => c.get(k)?.0,
        None => symgroup::table(k)?,
    };
    let data = json!({
        "k": k,
        "labels": table.labels.iter().map(label).collect::<Vec<_>>(),
        "classes": table.classes.iter().map(label).collect::<Vec<_>>(),
        "values": table.values.iter().map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(QueryResult::new(
        "char-table",
        json!({"k": k}),
        Metadata::new(true, &["values[i][j] = chi_{labels[i]}(classes[j])"]),
    )
    .with_data(data))
}

/// `c^λ_{μν}`.
pub fn lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<QueryResult> {
    let c = lrmod::lr_coefficient(lambda, mu, nu);
    let query = json!({"lambda": label(lambda), "mu": label(mu), "nu": label(nu)});
    Ok(QueryResult::new("lr", query, Metadata::new(true, &[])).with_integer(BigInt::from(c)))
}

/// Method for [`g`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GMethod {
    Closed,
    Brute,
    /// Fixed-point-free involutions with longest decreasing subsequence at
    /// most the given bound (`2n`).
    Rains(usize),
}

impl FromStr for GMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "closed" => Ok(GMethod::Closed),
            "brute" => Ok(GMethod::Brute),
            other => match other.strip_prefix("rains:").map(str::parse::<usize>) {
                Some(Ok(bound)) if bound > 0 => Ok(GMethod::Rains(bound)),
                _ => Err(Error::Parse(format!(
                    "unknown method {other:?} (expected closed, brute or rains:<2n>)"
                ))),
            },
        }
    }
}

impl fmt::Display for GMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GMethod::Closed => f.write_str("closed"),
            GMethod::Brute => f.write_str("brute"),
            GMethod::Rains(b) => write!(f, "rains:{b}"),
        }
    }
}

/// `g(λ)`, the number of matchings preserved by a permutation of cycle type `λ`.
pub fn g(lambda: &Partition, method: GMethod) -> Result<QueryResult> {
    let value = match method {
        GMethod::Closed => matching::g_closed(lambda),
        GMethod::Brute => matching::g_bruteforce(lambda)?,
        GMethod::Rains(bound) => {
            if lambda.parts().iter().any(|&p| p != 1) {
                return Err(Error::Domain("rains counts apply to lambda = (1^k) only".into()));
            }
            matching::fpf_involutions_lds(lambda.weight(), bound)?
        }
    };
    let query = json!({"lambda": label(lambda), "method": method.to_string()});
    let conventions: &[&str] = match method {
        GMethod::Rains(_) => &[RAINS_CONVENTION],
        _ => &[],
    };
    Ok(QueryResult::new("g", query, Metadata::new(true, conventions)).with_integer(BigInt::from(value)))
}

/// Monte Carlo estimate, with the exact (or series) reference when one is
/// available and the resulting z-score.
pub fn mc_verify(group: &GroupSpec, observable: &Observable, config: &McConfig, threads: usize) -> Result<QueryResult> {
    let n = group
        .n()
        .ok_or_else(|| Error::Domain("mc-verify needs a finite rank".into()))?;
    let estimate = haar::with_threads(threads, || haar::estimate(group, observable, config))??;
    let mut reference = serde_json::Map::new();
    let mut stable = true;
    let mut reference_value = None;
    let exact_or_none = |r: Result<BigInt>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::OutOfStableRange { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    match observable {
        Observable::TraceProduct(lambda) => {
            stable = group.in_stable_range(lambda.weight());
            if let Some(v) = exact_or_none(expectation::expect_trace_product(group, lambda))? {
                reference_value = Some(Scalar::to_f64(&BigRational::from_integer(v.clone())));
                reference.insert("exact".into(), json!(ExactValue::from_integer(v)));
            }
        }
        Observable::Twisted { gamma, lambda } => {
            stable = group.in_stable_range(lambda.weight());
            let split = group.family == Family::SoEven && gamma.shape.len() == n && !gamma.shape.is_empty();
            if !split {
                if let Some(v) = exact_or_none(expectation::expect_twisted(group, &gamma.shape, lambda))? {
                    reference_value = Some(Scalar::to_f64(&BigRational::from_integer(v.clone())));
                    reference.insert("exact".into(), json!(ExactValue::from_integer(v)));
                }
            }
        }
        Observable::Phi(f) | Observable::TwistedPhi { f, .. } => {
            let gamma = match observable {
                Observable::TwistedPhi { gamma, .. } if !gamma.negative_last => Some(gamma.shape.clone()),
                Observable::TwistedPhi { .. } => None,
                _ => Some(Partition::empty()),
            };
            if let Some(gamma) = gamma.filter(|g| !(group.family == Family::SoEven && g.len() == n && !g.is_empty())) {
                let s = szego::expect_phi_series(group, &gamma, f, n)?;
                reference_value = Some(s.value());
                reference.insert("series".into(), json!(s.value()));
                reference.insert("tail_bound".into(), json!(s.tail_bound));
            }
        }
        Observable::CharacterProduct { left, right } => {
            reference_value = Some(if left == right { 1.0 } else { 0.0 });
            reference.insert("orthonormality".into(), json!(reference_value));
        }
    }
    let mut data = json!({"observable": observable.label(), "reference": Value::Object(reference)});
    if let Some(r) = reference_value {
        data["z_score"] = json!(estimate.z_score(r));
    }
    data["tolerances"] = serde_json::to_value(&config.tolerances).unwrap_or(Value::Null);
    let query = merge(
        group_json(group),
        json!({"observable": observable.label(), "samples": config.samples, "seed": config.seed}),
    );
    let mut conventions = vec![TRACE_CONVENTION, "per-sample random streams: ChaCha8 seeded by seed, stream = sample index"];
    if !stable {
        conventions.push("outside the stable range no general exact reference exists");
    }
    Ok(QueryResult::new("mc-verify", query, Metadata::new(stable, &conventions))
        .with_mc(estimate)
        .with_data(data))
}
