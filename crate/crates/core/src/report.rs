//! The JSON report every command emits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::propcheck::{PropertyReport, SearchResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    /// Descriptors of the inputs, fully expanded.
    pub inputs: Vec<String>,
    pub results: Value,
    /// Wall-clock milliseconds; excluded from determinism comparisons.
    pub timings: BTreeMap<String, u64>,
}

const MODULE_KEYS: &[&str] = &[
    "kind",
    "descriptor",
    "order",
    "ring_order",
    "ann_mult",
    "multiplication",
    "comultiplication",
    "baer",
    "vn_regular",
    "prime_module",
    "injective",
    "torsion_free",
    "faithful",
    "simple",
    "submodule_count",
    "torsion",
    "ass",
    "witness",
    "counterexample",
    "partial",
];

const RING_KEYS: &[&str] = &[
    "kind",
    "descriptor",
    "order",
    "flags",
    "special_elements",
    "ideals",
    "baer_kist",
    "field_decomposition",
    "ass",
    "partial",
];

const SUITE_KEYS: &[&str] = &[
    "budget",
    "corpus_size",
    "duplicate_draws",
    "degree_bound",
    "properties",
    "passed",
];
const CHECK_KEYS: &[&str] = &["degree_bound", "properties", "passed"];
const LOC_KEYS: &[&str] = &[
    "multiplicative_set",
    "ring_kernel",
    "ring_image_order",
    "module_kernel",
    "module_image_order",
    "is_trivial",
    "ann_mult_before",
    "ann_mult_after",
];

fn expect_keys(results: &Value, keys: &[&str]) -> Result<(), String> {
    let obj = results
        .as_object()
        .ok_or_else(|| "results must be an object".to_string())?;
    for k in keys {
        if !obj.contains_key(*k) {
            return Err(format!("missing results key {k}"));
        }
    }
    if let Some(extra) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(format!("unexpected results key {extra}"));
    }
    Ok(())
}

fn expect_properties(results: &Value) -> Result<(), String> {
    let props = results["properties"]
        .as_array()
        .ok_or_else(|| "properties must be an array".to_string())?;
    for p in props {
        serde_json::from_value::<PropertyReport>(p.clone()).map_err(|e| format!("property report: {e}"))?;
    }
    if !results["passed"].is_boolean() {
        return Err("passed must be a boolean".into());
    }
    Ok(())
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>, results: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            results,
            timings: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with every `timings` map emptied, nested ones included.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.timings.clear();
        if r.command == "run" {
            if let Some(items) = r.results.as_array_mut() {
                for item in items {
                    if let Ok(inner) = serde_json::from_value::<Report>(item.clone()) {
                        *item = serde_json::to_value(inner.without_timings()).expect("reports serialize");
                    }
                }
            }
        }
        r
    }

    pub fn to_json_without_timings(&self) -> String {
        self.without_timings().to_json()
    }

    pub fn from_json(text: &str) -> Result<Report, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Checks the schema: the version, the per-command result keys, and that the
    /// report survives a JSON round trip unchanged.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "schema version {} is not {SCHEMA_VERSION}",
                self.schema_version
            ));
        }
        match self.command.as_str() {
            "classify" => match self.results["kind"].as_str() {
                Some("module") => expect_keys(&self.results, MODULE_KEYS)?,
                Some("ring") => expect_keys(&self.results, RING_KEYS)?,
                _ => return Err("classify results need kind ring or module".into()),
            },
            "suite" => {
                expect_keys(&self.results, SUITE_KEYS)?;
                expect_properties(&self.results)?;
            }
            "check" => {
                expect_keys(&self.results, CHECK_KEYS)?;
                expect_properties(&self.results)?;
            }
            "loc" => expect_keys(&self.results, LOC_KEYS)?,
            "search" => {
                serde_json::from_value::<SearchResult>(self.results.clone())
                    .map_err(|e| format!("search result: {e}"))?;
            }
            "run" => {
                let items = self
                    .results
                    .as_array()
                    .ok_or_else(|| "run results must be an array of reports".to_string())?;
                for item in items {
                    serde_json::from_value::<Report>(item.clone())
                        .map_err(|e| format!("nested report: {e}"))?
                        .validate()?;
                }
            }
            other => return Err(format!("unknown command {other}")),
        }
        let back = Report::from_json(&self.to_json())?;
        if &back != self {
            return Err("report does not round-trip".into());
        }
        Ok(())
    }
}
