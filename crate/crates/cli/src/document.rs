//! Result documents. Exact numbers are strings; everything except
//! `timings` is a deterministic function of the input.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use vanish_core::selftest::SelfTestReport;
use vanish_core::{MultiplicityMethod, MultiplicityResult, MultiplicityStatus, NonholonomyResult, Rational};

pub const SCHEMA: &str = "vanish.result/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    InputError = 1,
    Undecided = 2,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub schema: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    /// Highest coefficient index examined when no nonzero one was found.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checked_to: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_used: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_prefix: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_trace: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelfTestSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub timings: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfTestSummary {
    pub seed: u64,
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    pub checks: Vec<CheckSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSummary {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

pub fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl ResultDocument {
    pub fn new(command: &str, input: Option<String>) -> Self {
        ResultDocument {
            schema: SCHEMA.into(),
            command: command.into(),
            input,
            ..Default::default()
        }
    }

    pub fn exit(&self) -> Exit {
        match self.status.as_str() {
            "Finite" | "IdenticallyZero" | "certified" | "ok" | "passed" => Exit::Ok,
            "error" => Exit::InputError,
            _ => Exit::Undecided,
        }
    }

    pub fn error(mut self, msg: impl Into<String>) -> Self {
        self.status = "error".into();
        self.error = Some(msg.into());
        self
    }

    pub fn multiplicity(mut self, r: &MultiplicityResult) -> Self {
        match &r.status {
            MultiplicityStatus::Finite(mu) => {
                self.status = "Finite".into();
                self.mu = Some(*mu as u64);
            }
            MultiplicityStatus::IdenticallyZero(b) => {
                self.status = "IdenticallyZero".into();
                self.checked_to = Some(b.to_string());
            }
            MultiplicityStatus::Inconclusive(cap) => {
                self.status = "Inconclusive".into();
                self.checked_to = Some(cap.to_string());
            }
        }
        self.method = Some(
            match r.method {
                MultiplicityMethod::SeriesComposition => "series",
                MultiplicityMethod::LieChain => "lie",
                MultiplicityMethod::CrossChecked => "both",
            }
            .into(),
        );
        self.bound_used = r.bound_used.as_ref().map(BigUint::to_string);
        self.series_prefix = Some(r.prefix.iter().map(rational).collect());
        self
    }

    pub fn nonholonomy(mut self, r: &NonholonomyResult) -> Self {
        self.status = if r.certified { "certified" } else { "uncertified" }.into();
        self.d = Some(r.d as u64);
        self.n = Some(r.degree as u64);
        self.certified = Some(r.certified);
        self.rank_trace = Some(r.rank_trace.iter().map(|&k| k as u64).collect());
        self.bound_used = r.bound_used.as_ref().map(BigUint::to_string);
        self
    }

    pub fn bound(mut self, value: &BigUint) -> Self {
        self.status = "ok".into();
        self.value = Some(value.to_string());
        self
    }

    pub fn selftest(mut self, seed: u64, instances: usize, report: &SelfTestReport) -> Self {
        self.status = if report.ok() { "passed" } else { "failed" }.into();
        self.selftest = Some(SelfTestSummary {
            seed,
            instances: instances as u64,
            passed: report.passed() as u64,
            failed: report.failed() as u64,
            checks: report
                .checks
                .iter()
                .map(|c| CheckSummary {
                    name: c.name.to_string(),
                    passed: c.passed as u64,
                    failed: c.failed as u64,
                    first_failure: c.first_failure.clone(),
                })
                .collect(),
        });
        self
    }
}
