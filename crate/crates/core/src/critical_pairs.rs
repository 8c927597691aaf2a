//! Overlaps between rules, critical pairs, and the confluence decision ladder
//! (orthogonality, then Newman's lemma with joinable critical pairs, then
//! refutation by a non-joinable critical pair).

use std::fmt;

use crate::rewriting::{joinable_terms, step_at, Bounds, Joinability, RewriteRule, Trs};
use crate::substitution::{
    canonical_variant, is_variant, rename_apart, unify, NameSupply, Substitution,
};
use crate::term_algebra::{Position, Sym, Term, Var};

/// The lhs of `inner_rule` (renamed apart) unifies with the lhs of
/// `outer_rule` at the non-variable `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub outer_rule: usize,
    pub inner_rule: usize,
    pub position: Position,
    pub mgu: Substitution,
    /// The inner rule after renaming apart from the outer one.
    pub inner_variant: RewriteRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    /// Outer contraction of the peak.
    pub left: Term,
    /// Inner contraction of the peak.
    pub right: Term,
    /// `mgu(lhs(outer))`, which rewrites in one step to both sides.
    pub peak: Term,
    pub origin: Overlap,
    pub trivial: bool,
}

/// All overlaps, ordered by outer rule, inner rule, then position.
pub fn overlaps(trs: &Trs) -> Vec<Overlap> {
    let rules = trs.rules();
    let mut out = Vec::new();
    for (i, outer) in rules.iter().enumerate() {
        let avoid = outer.variables();
        for (j, inner) in rules.iter().enumerate() {
            let mut supply = NameSupply::new();
            let (variant, _) = rename_apart(inner, &avoid, &mut supply);
            let same_rule =
                i == j || is_variant(&[outer.lhs(), outer.rhs()], &[inner.lhs(), inner.rhs()]);
            for p in outer.lhs().non_variable_positions() {
                if p.is_root() && same_rule {
                    continue;
                }
                let sub = outer.lhs().subterm_at(&p).expect("own position");
                if let Some(mgu) = unify(sub, variant.lhs()) {
                    out.push(Overlap {
                        outer_rule: i,
                        inner_rule: j,
                        position: p,
                        mgu,
                        inner_variant: variant.clone(),
                    });
                }
            }
        }
    }
    out
}

pub fn critical_pair_of(trs: &Trs, overlap: Overlap) -> CriticalPair {
    let outer = &trs.rules()[overlap.outer_rule];
    let peak = overlap.mgu.apply(outer.lhs());
    let left = step_at(trs, &peak, &Position::root(), overlap.outer_rule)
        .expect("root position")
        .expect("outer lhs matches its own instance");
    let right = step_at(trs, &peak, &overlap.position, overlap.inner_rule)
        .expect("overlap position exists in peak")
        .expect("inner lhs matches at the overlap");
    CriticalPair {
        trivial: left == right,
        left,
        right,
        peak,
        origin: overlap,
    }
}

pub fn critical_pairs(trs: &Trs) -> Vec<CriticalPair> {
    overlaps(trs)
        .into_iter()
        .map(|o| critical_pair_of(trs, o))
        .collect()
}

/// Drops each pair whose mirror image (up to renaming) was already listed.
pub fn dedupe_symmetric(cps: Vec<CriticalPair>) -> Vec<CriticalPair> {
    let mut kept: Vec<CriticalPair> = Vec::new();
    for cp in cps {
        let mirrored = kept
            .iter()
            .any(|k| is_variant(&[&k.left, &k.right], &[&cp.right, &cp.left]));
        if !mirrored {
            kept.push(cp);
        }
    }
    kept
}

pub fn is_left_linear(trs: &Trs) -> bool {
    trs.rules().iter().all(RewriteRule::is_left_linear)
}

pub fn is_orthogonal(trs: &Trs) -> bool {
    is_left_linear(trs) && overlaps(trs).is_empty()
}

/// A critical pair with the outcome of its joinability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpAnalysis {
    pub pair: CriticalPair,
    /// Witnesses are reported with the original variables restored.
    pub joinability: Joinability,
}

/// Replaces variables by fresh constants and back.
struct Freezer {
    prefix: String,
}

impl Freezer {
    fn for_trs(trs: &Trs) -> Self {
        let mut prefix = "$".to_string();
        while trs
            .signature()
            .iter()
            .any(|(s, _)| s.name().starts_with(&prefix))
        {
            prefix.push('$');
        }
        Freezer { prefix }
    }

    fn freeze(&self, t: &Term) -> Term {
        t.map_vars(&|v| Term::App(Sym::new(&format!("{}{}", self.prefix, v.name())), vec![]))
    }

    fn thaw(&self, t: &Term) -> Term {
        t.map_syms(&|s, args| {
            let name = s.name().strip_prefix(&self.prefix)?;
            args.is_empty().then(|| Term::Var(Var::new(name)))
        })
    }
}

/// Runs the joinability search on every critical pair, variables frozen.
pub fn analyze_critical_pairs(trs: &Trs, bounds: impl Into<Bounds>) -> Vec<CpAnalysis> {
    let bounds = bounds.into();
    let freezer = Freezer::for_trs(trs);
    critical_pairs(trs)
        .into_iter()
        .map(|pair| {
            let joinability = match joinable_terms(
                trs,
                &freezer.freeze(&pair.left),
                &freezer.freeze(&pair.right),
                bounds,
            ) {
                Joinability::Yes {
                    witness,
                    steps_left,
                    steps_right,
                } => Joinability::Yes {
                    witness: freezer.thaw(&witness),
                    steps_left,
                    steps_right,
                },
                other => other,
            };
            CpAnalysis { pair, joinability }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalConfluence {
    LocallyConfluent(Vec<CpAnalysis>),
    NotLocallyConfluent(Box<CpAnalysis>),
    Unknown(Vec<CpAnalysis>),
}

/// Sorts already-analysed pairs into a local-confluence verdict.
pub fn classify(analyses: &[CpAnalysis]) -> LocalConfluence {
    if let Some(bad) = analyses.iter().find(|a| a.joinability == Joinability::No) {
        return LocalConfluence::NotLocallyConfluent(Box::new(bad.clone()));
    }
    let undecided: Vec<CpAnalysis> = analyses
        .iter()
        .filter(|a| a.joinability == Joinability::Unknown)
        .cloned()
        .collect();
    if undecided.is_empty() {
        LocalConfluence::LocallyConfluent(analyses.to_vec())
    } else {
        LocalConfluence::Unknown(undecided)
    }
}

pub fn local_confluence_verdict(trs: &Trs, bounds: impl Into<Bounds>) -> LocalConfluence {
    classify(&analyze_critical_pairs(trs, bounds))
}

/// Which criterion a verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    Orthogonality,
    NewmanCriticalPairs,
    NonJoinableCriticalPair,
    Unknown,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Orthogonality => "orthogonality",
            Criterion::NewmanCriticalPairs => "newman+cp",
            Criterion::NonJoinableCriticalPair => "non-joinable-cp",
            Criterion::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfluenceVerdict {
    Confluent(Criterion),
    NotConfluent(Box<CpAnalysis>),
    Unknown {
        /// Pairs whose joinability search ran out of fuel.
        undecided: Vec<CpAnalysis>,
        termination_asserted: bool,
    },
}

impl ConfluenceVerdict {
    pub fn criterion(&self) -> Criterion {
        match self {
            ConfluenceVerdict::Confluent(c) => *c,
            ConfluenceVerdict::NotConfluent(_) => Criterion::NonJoinableCriticalPair,
            ConfluenceVerdict::Unknown { .. } => Criterion::Unknown,
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, ConfluenceVerdict::Unknown { .. })
    }

    pub fn reason(&self) -> String {
        match self {
            ConfluenceVerdict::Confluent(Criterion::Orthogonality) => {
                "left-linear with no overlaps (orthogonal)".to_string()
            }
            ConfluenceVerdict::Confluent(_) => {
                "all critical pairs joinable and termination asserted (Newman's lemma + critical pair lemma)"
                    .to_string()
            }
            ConfluenceVerdict::NotConfluent(cp) => format!(
                "critical pair ({}, {}) is not joinable",
                cp.pair.left, cp.pair.right
            ),
            ConfluenceVerdict::Unknown {
                undecided,
                termination_asserted,
            } => {
                let mut parts = Vec::new();
                if !undecided.is_empty() {
                    parts.push(format!(
                        "{} critical pair(s) undecided within fuel",
                        undecided.len()
                    ));
                }
                if undecided.is_empty() && !termination_asserted {
                    parts.push("all critical pairs joinable".to_string());
                }
                if !termination_asserted {
                    parts.push("not orthogonal and termination not asserted".to_string());
                }
                if parts.is_empty() {
                    parts.push("no criterion applies".to_string());
                }
                parts.join("; ")
            }
        }
    }
}

/// The full critical-pair analysis together with the verdict it supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceAnalysis {
    pub verdict: ConfluenceVerdict,
    pub orthogonal: bool,
    pub left_linear: bool,
    pub critical_pairs: Vec<CpAnalysis>,
}

pub fn analyze_confluence(
    trs: &Trs,
    bounds: impl Into<Bounds>,
    assume_terminating: bool,
) -> ConfluenceAnalysis {
    let left_linear = is_left_linear(trs);
    let critical_pairs = analyze_critical_pairs(trs, bounds);
    let orthogonal = left_linear && critical_pairs.is_empty();
    let verdict = if orthogonal {
        ConfluenceVerdict::Confluent(Criterion::Orthogonality)
    } else {
        match classify(&critical_pairs) {
            LocalConfluence::LocallyConfluent(_) if assume_terminating => {
                ConfluenceVerdict::Confluent(Criterion::NewmanCriticalPairs)
            }
            LocalConfluence::NotLocallyConfluent(cp) => ConfluenceVerdict::NotConfluent(cp),
            LocalConfluence::LocallyConfluent(_) => ConfluenceVerdict::Unknown {
                undecided: Vec::new(),
                termination_asserted: false,
            },
            LocalConfluence::Unknown(undecided) => ConfluenceVerdict::Unknown {
                undecided,
                termination_asserted: assume_terminating,
            },
        }
    };
    ConfluenceAnalysis {
        verdict,
        orthogonal,
        left_linear,
        critical_pairs,
    }
}

pub fn confluence_verdict(
    trs: &Trs,
    bounds: impl Into<Bounds>,
    assume_terminating: bool,
) -> ConfluenceVerdict {
    analyze_confluence(trs, bounds, assume_terminating).verdict
}

/// Canonical (left, right) of a pair up to variable renaming; used to compare
/// critical-pair multisets produced with different fresh names.
pub fn canonical_pair(cp: &CriticalPair) -> (Term, Term) {
    let mut v = canonical_variant(&[&cp.left, &cp.right]);
    let right = v.pop().expect("two terms");
    let left = v.pop().expect("two terms");
    (left, right)
}
