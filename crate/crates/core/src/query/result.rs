use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::haar::MCEstimate;

/// An exact rational as decimal strings, so big integers survive JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub numerator: String,
    pub denominator: String,
}

impl ExactValue {
    pub fn from_rational(r: &BigRational) -> Self {
        ExactValue {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
        }
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        ExactValue {
            numerator: v.into().to_string(),
            denominator: "1".into(),
        }
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")));
        let d = parse(&self.denominator)?;
        if d == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(parse(&self.numerator)?, d))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    /// Whether the exact stable-range formulas apply to the query.
    pub stable_range: bool,
    pub conventions: Vec<String>,
    pub versions: BTreeMap<String, String>,
}

impl Metadata {
    pub fn new(stable_range: bool, conventions: &[&str]) -> Self {
        let versions = BTreeMap::from([
            ("lieavg".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("cache_format".to_string(), super::CACHE_FORMAT.to_string()),
        ]);
        Metadata {
            stable_range,
            conventions: conventions.iter().map(|s| s.to_string()).collect(),
            versions,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryResult {
    pub command: String,
    /// Echo of the parsed inputs.
    pub query: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<MCEstimate>,
    /// Structured results (expansions, tables, diagnostics).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub metadata: Metadata,
}

impl QueryResult {
    pub fn new(command: &str, query: Value, metadata: Metadata) -> Self {
        QueryResult {
            command: command.to_string(),
            query,
            exact: None,
            float: None,
            mc: None,
            data: None,
            metadata,
        }
    }

    pub fn with_exact(mut self, r: &BigRational) -> Self {
        self.exact = Some(ExactValue::from_rational(r));
        self.float = Some(crate::scalar::Scalar::to_f64(r));
        self
    }

    pub fn with_integer(mut self, v: impl Into<BigInt>) -> Self {
        let v: BigInt = v.into();
        self = self.with_exact(&BigRational::from_integer(v));
        self
    }

    pub fn with_float(mut self, v: f64) -> Self {
        self.float = Some(v);
        self
    }

    pub fn with_mc(mut self, e: MCEstimate) -> Self {
        self.mc = Some(e);
        self
    }

    pub fn with_data(mut self, v: Value) -> Self {
        self.data = Some(v);
        self
    }

    /// At least one result field must be present.
    pub fn is_well_formed(&self) -> bool {
        self.exact.is_some() || self.float.is_some() || self.mc.is_some() || self.data.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("query results are always serializable")
    }

    /// Aligned `key: value` lines for terminals.
    pub fn to_pretty(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.command.clone())];
        if let Value::Object(map) = &self.query {
            for (k, v) in map {
                rows.push((format!("  {k}"), plain(v)));
            }
        }
        if let Some(e) = &self.exact {
            let text = if e.denominator == "1" {
                e.numerator.clone()
            } else {
                format!("{}/{}", e.numerator, e.denominator)
            };
            rows.push(("exact".into(), text));
        }
        if let Some(f) = self.float {
            rows.push(("float".into(), format!("{f}")));
        }
        if let Some(mc) = &self.mc {
            rows.push((
                "mc".into(),
                format!("{} ± {} ({} samples, seed {})", mc.mean, mc.stderr, mc.samples, mc.seed),
            ));
        }
        if let Some(Value::Object(map)) = &self.data {
            for (k, v) in map {
                rows.push((k.clone(), plain(v)));
            }
        }
        rows.push(("stable range".into(), self.metadata.stable_range.to_string()));
        for c in &self.metadata.conventions {
            rows.push(("convention".into(), c.clone()));
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_round_trip() {
        let big = BigRational::new(BigInt::from(3).pow(200u32), BigInt::from(7).pow(90u32));
        let r = QueryResult::new("x", Value::Null, Metadata::new(true, &[])).with_exact(&big);
        let back: QueryResult = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.exact.unwrap().to_rational().unwrap(), big);
        assert!(r.is_well_formed());
        assert!(!QueryResult::new("x", Value::Null, Metadata::new(true, &[])).is_well_formed());
    }

    #[test]
    fn pretty_lists_fields() {
        let r = QueryResult::new("lr", serde_json::json!({"lambda": "2,1"}), Metadata::new(true, &["c"]))
            .with_integer(2);
        let text = r.to_pretty();
        assert!(text.contains("exact"));
        assert!(text.contains("2,1"));
    }
}
