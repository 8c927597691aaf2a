use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};

use rwkit_core::ars::FiniteArs;
use rwkit_core::critical_pairs::{
    analyze_confluence, analyze_critical_pairs, classify, overlaps, ConfluenceVerdict, CpAnalysis,
    LocalConfluence,
};
use rwkit_core::parallel_rewriting::{diamond_check_with, parallel_reducts_with, Diamond};
use rwkit_core::parse::{parse_term, parse_trs};
use rwkit_core::rewriting::{joinable_terms, normalize, Joinability, Normalization, Trs};
use rwkit_core::substitution::is_variant;
use rwkit_core::Error as CoreError;

use crate::config::AnalysisConfig;
use crate::report::{
    CpEntry, CriterionTag, Details, DiamondEntry, JoinEntry, OverlapEntry, ParallelReduct, Report,
    Status, StepEntry, TraceEntry, TrsSummary, Verdict,
};

/// One invocation: which analysis to run on which input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Check {
        file: PathBuf,
    },
    Cps {
        file: PathBuf,
    },
    Orthogonal {
        file: PathBuf,
    },
    Normalize {
        file: PathBuf,
        term: String,
    },
    Joinable {
        file: PathBuf,
        left: String,
        right: String,
    },
    Parallel {
        file: PathBuf,
        term: String,
    },
    Ars {
        file: PathBuf,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Check { .. } => "check",
            Task::Cps { .. } => "cps",
            Task::Orthogonal { .. } => "orthogonal",
            Task::Normalize { .. } => "normalize",
            Task::Joinable { .. } => "joinable",
            Task::Parallel { .. } => "parallel",
            Task::Ars { .. } => "ars",
        }
    }

    pub fn file(&self) -> &Path {
        match self {
            Task::Check { file }
            | Task::Cps { file }
            | Task::Orthogonal { file }
            | Task::Normalize { file, .. }
            | Task::Joinable { file, .. }
            | Task::Parallel { file, .. }
            | Task::Ars { file } => file,
        }
    }
}

pub fn run(task: &Task, config: &AnalysisConfig) -> Result<Report> {
    let started = Instant::now();
    let path = task.file();
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let (trs, verdict, details) = if let Task::Ars { .. } = task {
        let (verdict, details) = run_ars(&text).with_context(|| path.display().to_string())?;
        (None, verdict, details)
    } else {
        let trs = parse_trs(&text).with_context(|| path.display().to_string())?;
        let (verdict, details) = run_trs(task, &trs, config)?;
        (Some(TrsSummary::of(&trs)), verdict, details)
    };
    Ok(Report {
        command: task.name().to_string(),
        file: path.display().to_string(),
        config: config.clone(),
        trs,
        verdict,
        details,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

fn run_trs(task: &Task, trs: &Trs, config: &AnalysisConfig) -> Result<(Verdict, Details)> {
    let term = |text: &str| {
        parse_term(text, trs, config.allow_fresh_consts).with_context(|| format!("term `{text}`"))
    };
    Ok(match task {
        Task::Check { .. } => {
            let analysis = analyze_confluence(trs, config.bounds(), config.assume_terminating);
            let status = match &analysis.verdict {
                ConfluenceVerdict::Confluent(_) => Status::Confluent,
                ConfluenceVerdict::NotConfluent(_) => Status::NotConfluent,
                ConfluenceVerdict::Unknown { .. } => Status::Unknown,
            };
            let verdict = Verdict {
                status,
                criterion: Some(analysis.verdict.criterion().into()),
                reason: analysis.verdict.reason(),
            };
            let details = Details::Check {
                orthogonal: analysis.orthogonal,
                left_linear: analysis.left_linear,
                critical_pairs: cp_entries(&analysis.critical_pairs, config),
            };
            (verdict, details)
        }
        Task::Cps { .. } => {
            let analyses = analyze_critical_pairs(trs, config.bounds());
            let verdict = match classify(&analyses) {
                LocalConfluence::LocallyConfluent(all) => Verdict {
                    status: Status::LocallyConfluent,
                    criterion: None,
                    reason: format!("all {} critical pair(s) joinable", all.len()),
                },
                LocalConfluence::NotLocallyConfluent(cp) => Verdict {
                    status: Status::NotLocallyConfluent,
                    criterion: None,
                    reason: format!(
                        "critical pair ({}, {}) is not joinable",
                        cp.pair.left, cp.pair.right
                    ),
                },
                LocalConfluence::Unknown(undecided) => Verdict {
                    status: Status::Unknown,
                    criterion: None,
                    reason: format!("{} critical pair(s) undecided within fuel", undecided.len()),
                },
            };
            let details = Details::Cps {
                critical_pairs: cp_entries(&analyses, config),
            };
            (verdict, details)
        }
        Task::Orthogonal { .. } => {
            let non_left_linear_rules: Vec<usize> = trs
                .rules()
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_left_linear())
                .map(|(i, _)| i)
                .collect();
            let overlaps: Vec<OverlapEntry> = overlaps(trs).iter().map(Into::into).collect();
            let left_linear = non_left_linear_rules.is_empty();
            let verdict = if left_linear && overlaps.is_empty() {
                Verdict {
                    status: Status::Orthogonal,
                    criterion: None,
                    reason: "left-linear with no overlaps".to_string(),
                }
            } else {
                let mut parts = Vec::new();
                if !left_linear {
                    parts.push(format!(
                        "{} non-left-linear rule(s)",
                        non_left_linear_rules.len()
                    ));
                }
                if !overlaps.is_empty() {
                    parts.push(format!("{} overlap(s)", overlaps.len()));
                }
                Verdict {
                    status: Status::NotOrthogonal,
                    criterion: None,
                    reason: parts.join("; "),
                }
            };
            let details = Details::Orthogonal {
                left_linear,
                non_left_linear_rules,
                overlaps,
            };
            (verdict, details)
        }
        Task::Normalize { term: text, .. } => {
            let s = term(text)?;
            let outcome = normalize(trs, &s, config.bounds());
            let verdict = match &outcome {
                Normalization::NormalForm { trace, .. } => Verdict {
                    status: Status::NormalForm,
                    criterion: None,
                    reason: format!("normal form after {} step(s)", trace.len()),
                },
                Normalization::OutOfFuel { trace, .. } => Verdict {
                    status: Status::OutOfFuel,
                    criterion: None,
                    reason: format!("no normal form within {} step(s)", trace.len()),
                },
            };
            let details = Details::Normalize {
                input: s.to_string(),
                result: outcome.term().to_string(),
                steps: outcome.trace().iter().map(TraceEntry::from).collect(),
            };
            (verdict, details)
        }
        Task::Joinable {
            left: l, right: r, ..
        } => {
            let (u, v) = (term(l)?, term(r)?);
            let j = joinable_terms(trs, &u, &v, config.bounds());
            let verdict = match &j {
                Joinability::Yes { witness, .. } => Verdict {
                    status: Status::Joinable,
                    criterion: None,
                    reason: format!("common reduct {witness}"),
                },
                Joinability::No => Verdict {
                    status: Status::NotJoinable,
                    criterion: None,
                    reason: "reachable sets are finite and disjoint".to_string(),
                },
                Joinability::Unknown => Verdict {
                    status: Status::Unknown,
                    criterion: None,
                    reason: "no common reduct found within fuel".to_string(),
                },
            };
            let details = Details::Joinable {
                left: u.to_string(),
                right: v.to_string(),
                joinability: JoinEntry::from(&j),
            };
            (verdict, details)
        }
        Task::Parallel { term: text, .. } => {
            let s = term(text)?;
            let limits = config.parallel_limits();
            let reducts = parallel_reducts_with(trs, &s, &limits)?;
            let diamond = match diamond_check_with(trs, &s, &limits) {
                Ok(Diamond::Holds) => DiamondEntry::Holds,
                Ok(Diamond::Fails { left, right }) => DiamondEntry::Fails {
                    left: left.to_string(),
                    right: right.to_string(),
                },
                Err(e @ CoreError::ResourceLimit(_)) => DiamondEntry::Unknown {
                    reason: e.to_string(),
                },
                Err(e) => return Err(e.into()),
            };
            let verdict = match &diamond {
                DiamondEntry::Holds => Verdict {
                    status: Status::DiamondHolds,
                    criterion: None,
                    reason: format!(
                        "every pair of the {} parallel reduct(s) has a common parallel reduct",
                        reducts.len()
                    ),
                },
                DiamondEntry::Fails { left, right } => Verdict {
                    status: Status::DiamondFails,
                    criterion: None,
                    reason: format!("{left} and {right} have no common parallel reduct"),
                },
                DiamondEntry::Unknown { reason } => Verdict {
                    status: Status::Unknown,
                    criterion: None,
                    reason: reason.clone(),
                },
            };
            let details = Details::Parallel {
                term: s.to_string(),
                reducts: reducts
                    .iter()
                    .map(|(t, step)| ParallelReduct {
                        result: t.to_string(),
                        step: StepEntry::from(step),
                    })
                    .collect(),
                diamond,
            };
            (verdict, details)
        }
        Task::Ars { .. } => unreachable!("handled before parsing a TRS"),
    })
}

fn cp_entries(analyses: &[CpAnalysis], config: &AnalysisConfig) -> Vec<CpEntry> {
    let mut kept: Vec<&CpAnalysis> = Vec::new();
    for a in analyses {
        let mirrored = config.dedupe_symmetric_cps
            && kept.iter().any(|k| {
                is_variant(
                    &[&k.pair.left, &k.pair.right],
                    &[&a.pair.right, &a.pair.left],
                )
            });
        if !mirrored {
            kept.push(a);
        }
    }
    kept.into_iter().map(CpEntry::from).collect()
}

fn run_ars(text: &str) -> Result<(Verdict, Details)> {
    let ars = FiniteArs::parse(text)?;
    let noetherian = ars.noetherian();
    let locally_confluent = ars.locally_confluent();
    let confluent = ars.confluent();
    let verdict = Verdict {
        status: if confluent {
            Status::Confluent
        } else {
            Status::NotConfluent
        },
        criterion: Some(CriterionTag::Exhaustive),
        reason: if confluent {
            "every divergence under the reflexive-transitive closure joins".to_string()
        } else {
            "found a divergence under the reflexive-transitive closure that does not join"
                .to_string()
        },
    };
    let details = Details::Ars {
        elements: ars.elements().map(|e| ars.name(e).to_string()).collect(),
        steps: ars
            .steps()
            .iter()
            .map(|&(a, b)| (ars.name(a).to_string(), ars.name(b).to_string()))
            .collect(),
        noetherian,
        locally_confluent,
        confluent,
    };
    Ok((verdict, details))
}
