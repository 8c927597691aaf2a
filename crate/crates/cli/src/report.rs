//! Report model shared by the text and JSON renderers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use rwkit_core::critical_pairs::{CpAnalysis, Criterion, Overlap};
use rwkit_core::parallel_rewriting::ParallelStep;
use rwkit_core::rewriting::{Joinability, Redex, Trs};

use crate::config::AnalysisConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub file: String,
    pub config: AnalysisConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trs: Option<TrsSummary>,
    pub verdict: Verdict,
    pub details: Details,
    pub elapsed_ms: u64,
}

impl Report {
    /// 0 for a definite verdict, 2 when undecided.
    pub fn exit_code(&self) -> i32 {
        self.verdict.status.exit_code()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrsSummary {
    pub rules: Vec<String>,
    pub signature: BTreeMap<String, usize>,
    pub variables: Vec<String>,
}

impl TrsSummary {
    pub fn of(trs: &Trs) -> Self {
        TrsSummary {
            rules: trs.rules().iter().map(ToString::to_string).collect(),
            signature: trs
                .signature()
                .iter()
                .map(|(s, a)| (s.name().to_string(), a))
                .collect(),
            variables: trs.variables().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Confluent,
    NotConfluent,
    LocallyConfluent,
    NotLocallyConfluent,
    Orthogonal,
    NotOrthogonal,
    NormalForm,
    OutOfFuel,
    Joinable,
    NotJoinable,
    DiamondHolds,
    DiamondFails,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Unknown | Status::OutOfFuel => 2,
            _ => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Confluent => "confluent",
            Status::NotConfluent => "not_confluent",
            Status::LocallyConfluent => "locally_confluent",
            Status::NotLocallyConfluent => "not_locally_confluent",
            Status::Orthogonal => "orthogonal",
            Status::NotOrthogonal => "not_orthogonal",
            Status::NormalForm => "normal_form",
            Status::OutOfFuel => "out_of_fuel",
            Status::Joinable => "joinable",
            Status::NotJoinable => "not_joinable",
            Status::DiamondHolds => "diamond_holds",
            Status::DiamondFails => "diamond_fails",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriterionTag {
    #[serde(rename = "orthogonality")]
    Orthogonality,
    #[serde(rename = "newman+cp")]
    NewmanCp,
    #[serde(rename = "non-joinable-cp")]
    NonJoinableCp,
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "unknown")]
    Unknown,
}

impl From<Criterion> for CriterionTag {
    fn from(c: Criterion) -> Self {
        match c {
            Criterion::Orthogonality => CriterionTag::Orthogonality,
            Criterion::NewmanCriticalPairs => CriterionTag::NewmanCp,
            Criterion::NonJoinableCriticalPair => CriterionTag::NonJoinableCp,
            Criterion::Unknown => CriterionTag::Unknown,
        }
    }
}

impl CriterionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionTag::Orthogonality => "orthogonality",
            CriterionTag::NewmanCp => "newman+cp",
            CriterionTag::NonJoinableCp => "non-joinable-cp",
            CriterionTag::Exhaustive => "exhaustive",
            CriterionTag::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<CriterionTag>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Details {
    Check {
        orthogonal: bool,
        left_linear: bool,
        critical_pairs: Vec<CpEntry>,
    },
    Cps {
        critical_pairs: Vec<CpEntry>,
    },
    Orthogonal {
        left_linear: bool,
        non_left_linear_rules: Vec<usize>,
        overlaps: Vec<OverlapEntry>,
    },
    Normalize {
        input: String,
        result: String,
        steps: Vec<TraceEntry>,
    },
    Joinable {
        left: String,
        right: String,
        joinability: JoinEntry,
    },
    Parallel {
        term: String,
        reducts: Vec<ParallelReduct>,
        diamond: DiamondEntry,
    },
    Ars {
        elements: Vec<String>,
        steps: Vec<(String, String)>,
        noetherian: bool,
        locally_confluent: bool,
        confluent: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapEntry {
    pub outer_rule: usize,
    pub inner_rule: usize,
    pub position: String,
    pub mgu: String,
    pub inner_variant: String,
}

impl From<&Overlap> for OverlapEntry {
    fn from(o: &Overlap) -> Self {
        OverlapEntry {
            outer_rule: o.outer_rule,
            inner_rule: o.inner_rule,
            position: o.position.to_string(),
            mgu: o.mgu.to_string(),
            inner_variant: o.inner_variant.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpEntry {
    pub outer_rule: usize,
    pub inner_rule: usize,
    pub position: String,
    pub mgu: String,
    pub inner_variant: String,
    pub peak: String,
    pub left: String,
    pub right: String,
    pub trivial: bool,
    pub joinability: JoinEntry,
}

impl From<&CpAnalysis> for CpEntry {
    fn from(a: &CpAnalysis) -> Self {
        let o = &a.pair.origin;
        CpEntry {
            outer_rule: o.outer_rule,
            inner_rule: o.inner_rule,
            position: o.position.to_string(),
            mgu: o.mgu.to_string(),
            inner_variant: o.inner_variant.to_string(),
            peak: a.pair.peak.to_string(),
            left: a.pair.left.to_string(),
            right: a.pair.right.to_string(),
            trivial: a.pair.trivial,
            joinability: JoinEntry::from(&a.joinability),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JoinStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinEntry {
    pub status: JoinStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps_left: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps_right: Option<usize>,
}

impl From<&Joinability> for JoinEntry {
    fn from(j: &Joinability) -> Self {
        match j {
            Joinability::Yes {
                witness,
                steps_left,
                steps_right,
            } => JoinEntry {
                status: JoinStatus::Yes,
                witness: Some(witness.to_string()),
                steps_left: Some(*steps_left),
                steps_right: Some(*steps_right),
            },
            Joinability::No => JoinEntry {
                status: JoinStatus::No,
                witness: None,
                steps_left: None,
                steps_right: None,
            },
            Joinability::Unknown => JoinEntry {
                status: JoinStatus::Unknown,
                witness: None,
                steps_left: None,
                steps_right: None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub position: String,
    pub rule_index: usize,
    pub matcher: String,
}

impl From<&Redex> for TraceEntry {
    fn from(r: &Redex) -> Self {
        TraceEntry {
            position: r.position.to_string(),
            rule_index: r.rule_index,
            matcher: r.matcher.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub positions: Vec<String>,
    pub rules: Vec<usize>,
    pub matchers: Vec<String>,
}

impl From<&ParallelStep> for StepEntry {
    fn from(s: &ParallelStep) -> Self {
        StepEntry {
            positions: s
                .positions()
                .as_slice()
                .iter()
                .map(ToString::to_string)
                .collect(),
            rules: s.rule_indices().to_vec(),
            matchers: s.matchers().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelReduct {
    pub result: String,
    pub step: StepEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DiamondEntry {
    Holds,
    Fails { left: String, right: String },
    Unknown { reason: String },
}

/// Human-readable rendering. The `verdict:` line carries the same status and
/// criterion strings as the JSON form.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(trs) = &report.trs {
        writeln!(out, "rules:").unwrap();
        for (i, r) in trs.rules.iter().enumerate() {
            writeln!(out, "  [{i}] {r}").unwrap();
        }
    }
    match &report.details {
        Details::Check {
            orthogonal,
            left_linear,
            critical_pairs,
        } => {
            writeln!(out, "left-linear: {left_linear}").unwrap();
            writeln!(out, "orthogonal: {orthogonal}").unwrap();
            render_cps(&mut out, critical_pairs);
        }
        Details::Cps { critical_pairs } => render_cps(&mut out, critical_pairs),
        Details::Orthogonal {
            left_linear,
            non_left_linear_rules,
            overlaps,
        } => {
            writeln!(out, "left-linear: {left_linear}").unwrap();
            if !non_left_linear_rules.is_empty() {
                writeln!(out, "non-left-linear rules: {non_left_linear_rules:?}").unwrap();
            }
            writeln!(out, "overlaps: {}", overlaps.len()).unwrap();
            for o in overlaps {
                writeln!(
                    out,
                    "  outer {} / inner {} ({}) at {}, mgu {}",
                    o.outer_rule, o.inner_rule, o.inner_variant, o.position, o.mgu
                )
                .unwrap();
            }
        }
        Details::Normalize {
            input,
            result,
            steps,
        } => {
            writeln!(out, "input: {input}").unwrap();
            for (k, s) in steps.iter().enumerate() {
                writeln!(
                    out,
                    "  step {}: rule {} at {} with {}",
                    k + 1,
                    s.rule_index,
                    s.position,
                    s.matcher
                )
                .unwrap();
            }
            writeln!(out, "result: {result}").unwrap();
        }
        Details::Joinable {
            left,
            right,
            joinability,
        } => {
            writeln!(out, "terms: {left}, {right}").unwrap();
            if let Some(w) = &joinability.witness {
                writeln!(
                    out,
                    "common reduct: {w} ({} / {} steps)",
                    joinability.steps_left.unwrap_or(0),
                    joinability.steps_right.unwrap_or(0)
                )
                .unwrap();
            }
        }
        Details::Parallel {
            term,
            reducts,
            diamond,
        } => {
            writeln!(out, "term: {term}").unwrap();
            writeln!(out, "parallel reducts: {}", reducts.len()).unwrap();
            for r in reducts {
                let at = if r.step.positions.is_empty() {
                    "(empty step)".to_string()
                } else {
                    r.step
                        .positions
                        .iter()
                        .zip(&r.step.rules)
                        .map(|(p, i)| format!("{p}:{i}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                writeln!(out, "  {}  via {at}", r.result).unwrap();
            }
            match diamond {
                DiamondEntry::Holds => writeln!(out, "diamond: holds").unwrap(),
                DiamondEntry::Fails { left, right } => {
                    writeln!(out, "diamond: fails at peak {left} <= {term} => {right}").unwrap()
                }
                DiamondEntry::Unknown { reason } => {
                    writeln!(out, "diamond: unknown ({reason})").unwrap()
                }
            }
        }
        Details::Ars {
            elements,
            steps,
            noetherian,
            locally_confluent,
            confluent,
        } => {
            writeln!(out, "elements: {}", elements.join(" ")).unwrap();
            writeln!(out, "steps: {}", steps.len()).unwrap();
            writeln!(out, "noetherian: {noetherian}").unwrap();
            writeln!(out, "locally confluent: {locally_confluent}").unwrap();
            writeln!(out, "confluent: {confluent}").unwrap();
        }
    }
    let v = &report.verdict;
    match v.criterion {
        Some(c) => writeln!(
            out,
            "verdict: {} [{}] {}",
            v.status.as_str(),
            c.as_str(),
            v.reason
        ),
        None => writeln!(out, "verdict: {} {}", v.status.as_str(), v.reason),
    }
    .unwrap();
    out
}

fn render_cps(out: &mut String, cps: &[CpEntry]) {
    writeln!(out, "critical pairs: {}", cps.len()).unwrap();
    for cp in cps {
        let join = match cp.joinability.status {
            JoinStatus::Yes => format!(
                "joinable at {}",
                cp.joinability.witness.as_deref().unwrap_or("?")
            ),
            JoinStatus::No => "not joinable".to_string(),
            JoinStatus::Unknown => "undecided".to_string(),
        };
        writeln!(
            out,
            "  outer {} / inner {} ({}) at {}: {} <- {} -> {}  {}{}",
            cp.outer_rule,
            cp.inner_rule,
            cp.inner_variant,
            cp.position,
            cp.left,
            cp.peak,
            cp.right,
            join,
            if cp.trivial { " (trivial)" } else { "" }
        )
        .unwrap();
    }
}
