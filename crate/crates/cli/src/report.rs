//! Report records emitted by the verification harness.
//!
//! A run produces a JSON Lines stream: one header object describing the
//! sampling policy and caps, one object per check instantiation, and a
//! trailing summary object with outcome counts.  Field order is fixed by the
//! struct declarations so that two runs over the same corpus produce
//! byte-identical output except for the `elapsed_ms` values.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Identifier of one verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    T1,
    T2,
    T3,
    T4,
    T5,
    C1,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    R1,
    R2,
}

impl CheckId {
    /// Every suite, in canonical execution order.
    pub const ALL: [CheckId; 16] = [
        CheckId::T1,
        CheckId::T2,
        CheckId::T3,
        CheckId::T4,
        CheckId::T5,
        CheckId::C1,
        CheckId::L1,
        CheckId::L2,
        CheckId::L3,
        CheckId::L4,
        CheckId::L5,
        CheckId::L6,
        CheckId::L7,
        CheckId::L8,
        CheckId::R1,
        CheckId::R2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::T1 => "T1",
            CheckId::T2 => "T2",
            CheckId::T3 => "T3",
            CheckId::T4 => "T4",
            CheckId::T5 => "T5",
            CheckId::C1 => "C1",
            CheckId::L1 => "L1",
            CheckId::L2 => "L2",
            CheckId::L3 => "L3",
            CheckId::L4 => "L4",
            CheckId::L5 => "L5",
            CheckId::L6 => "L6",
            CheckId::L7 => "L7",
            CheckId::L8 => "L8",
            CheckId::R1 => "R1",
            CheckId::R2 => "R2",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown check id `{s}`"))
    }
}

/// Outcome classification of a single check instantiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
    #[serde(rename = "skipped-cap")]
    SkippedCap,
}

/// Quantifier bindings for one check instantiation.  Unused fields are
/// omitted from the serialized record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    /// Descriptor of the quantified subgroup (H, P, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    /// Descriptor of the quantified normal subgroup (N, E, K, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<String>,
    /// Sub-case label for checks with several stated cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
}

impl Params {
    pub fn none() -> Params {
        Params::default()
    }

    pub fn prime(p: u64) -> Params {
        Params {
            prime: Some(p),
            ..Params::default()
        }
    }

    /// Single-line rendering for human-readable listings; empty when no
    /// quantifier is bound, otherwise ` [p=2, N=normal#3 order 4]`-style.
    pub fn compact(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(p) = self.prime {
            parts.push(format!("p={p}"));
        }
        if let Some(s) = &self.subgroup {
            parts.push(format!("H={s}"));
        }
        if let Some(n) = &self.normal {
            parts.push(format!("N={n}"));
        }
        if let Some(c) = &self.case {
            parts.push(format!("case={c}"));
        }
        if parts.is_empty() {
            String::new()
        } else {
            format!(" [{}]", parts.join(", "))
        }
    }
}

/// One verification record: a single instantiation of a check's quantifiers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub group: String,
    pub params: Params,
    pub hypothesis_met: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion_holds: Option<bool>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    /// Classifies hypothesis/conclusion into a status and builds the record.
    /// The invariants are structural: COUNTEREXAMPLE exactly when the
    /// hypothesis held and the conclusion failed; vacuous exactly when the
    /// hypothesis did not hold.
    pub fn classified(
        check_id: CheckId,
        group: &str,
        params: Params,
        hypothesis_met: bool,
        conclusion_holds: Option<bool>,
        witness: Option<String>,
    ) -> CheckReport {
        let status = if !hypothesis_met {
            Status::Vacuous
        } else if conclusion_holds == Some(false) {
            Status::Counterexample
        } else {
            Status::Verified
        };
        CheckReport {
            check_id,
            group: group.to_string(),
            params,
            hypothesis_met,
            conclusion_holds: if hypothesis_met { conclusion_holds } else { None },
            status,
            witness,
            elapsed_ms: 0,
        }
    }

    /// Record for an instantiation abandoned because a configured cap was
    /// exceeded.  Never silent: the cap error text is kept as the witness.
    pub fn skipped(check_id: CheckId, group: &str, params: Params, error: &str) -> CheckReport {
        CheckReport {
            check_id,
            group: group.to_string(),
            params,
            hypothesis_met: false,
            conclusion_holds: None,
            status: Status::SkippedCap,
            witness: Some(error.to_string()),
            elapsed_ms: 0,
        }
    }
}

/// First line of a report stream: what was run and how quantifiers were
/// sampled.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportHeader {
    pub report: String,
    pub sampling: String,
    pub caps: CapsLine,
    pub checks: Vec<CheckId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dropped_hypothesis: Option<String>,
}

/// Serialized form of the engine caps in effect for a run.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CapsLine {
    pub element: u64,
    pub lattice: usize,
    pub memo: usize,
    pub filter: u64,
}

impl From<chieftain_core::Caps> for CapsLine {
    fn from(c: chieftain_core::Caps) -> CapsLine {
        CapsLine {
            element: c.element,
            lattice: c.lattice,
            memo: c.memo,
            filter: c.filter,
        }
    }
}

/// Trailing line of a report stream: counts by outcome.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verified: usize,
    pub vacuous: usize,
    pub counterexample: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn tally(reports: &[CheckReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Verified => s.verified += 1,
                Status::Vacuous => s.vacuous += 1,
                Status::Counterexample => s.counterexample += 1,
                Status::SkippedCap => s.skipped += 1,
            }
        }
        s
    }
}

/// Serializes a full run as JSON Lines: header, one line per report, summary.
pub fn render_report(
    header: &ReportHeader,
    reports: &[CheckReport],
    summary: &Summary,
) -> String {
    let mut out = String::new();
    out.push_str(&serde_json::to_string(header).expect("header serializes"));
    out.push('\n');
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("report serializes"));
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(summary).expect("summary serializes"));
    out.push('\n');
    out
}
