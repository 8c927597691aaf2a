//! Rewrite rules, the one-step reduction relation of a rule sequence, and
//! fuel-bounded searches over it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::substitution::{match_term, Substitution};
use crate::term_algebra::{Position, Signature, Term, Var};

/// Default fuel for reachable-set searches, counted in node expansions.
pub const DEFAULT_EXPANSIONS: usize = 10_000;
/// Default fuel for normalization, counted in rewrite steps.
pub const DEFAULT_STEPS: usize = 1_000;
pub const DEFAULT_MAX_TERM_SIZE: usize = 1_000_000;

/// A rule `l -> r`: `l` is not a variable and every variable of `r` occurs in `l`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    lhs: Term,
    rhs: Term,
}

impl RewriteRule {
    pub fn new(lhs: Term, rhs: Term) -> Result<Self> {
        if lhs.is_var() {
            return Err(Error::IllFormedRule(format!(
                "left-hand side of `{lhs} -> {rhs}` is a variable"
            )));
        }
        let lvars = lhs.variables();
        if let Some(v) = rhs.variables().into_iter().find(|v| !lvars.contains(v)) {
            return Err(Error::IllFormedRule(format!(
                "variable `{v}` of right-hand side of `{lhs} -> {rhs}` does not occur in the left-hand side"
            )));
        }
        Ok(RewriteRule { lhs, rhs })
    }

    /// Caller guarantees the rule invariants (e.g. a renaming of a valid rule).
    pub(crate) fn new_unchecked(lhs: Term, rhs: Term) -> Self {
        RewriteRule { lhs, rhs }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.lhs.variables()
    }

    pub fn is_left_linear(&self) -> bool {
        self.lhs.is_linear()
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered, duplicate-free rule sequence over a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trs {
    signature: Signature,
    variables: BTreeSet<Var>,
    rules: Vec<RewriteRule>,
}

impl Trs {
    /// Checks every rule against `signature` and `variables`; drops repeated
    /// rules, keeping the first occurrence.
    pub fn new(
        signature: Signature,
        variables: BTreeSet<Var>,
        rules: Vec<RewriteRule>,
    ) -> Result<Self> {
        let mut kept: Vec<RewriteRule> = Vec::with_capacity(rules.len());
        for rule in rules {
            signature.check_term(&rule.lhs)?;
            signature.check_term(&rule.rhs)?;
            if let Some(v) = rule
                .variables()
                .into_iter()
                .find(|v| !variables.contains(v))
            {
                return Err(Error::IllFormedRule(format!(
                    "variable `{v}` of `{rule}` is not declared"
                )));
            }
            if !kept.contains(&rule) {
                kept.push(rule);
            }
        }
        Ok(Trs {
            signature,
            variables,
            rules: kept,
        })
    }

    /// Infers the signature from first use and the variable set from the rules.
    pub fn from_rules(rules: Vec<RewriteRule>) -> Result<Self> {
        let mut signature = Signature::new();
        let mut variables = BTreeSet::new();
        for rule in &rules {
            for t in [&rule.lhs, &rule.rhs] {
                declare_symbols(&mut signature, t)?;
            }
            variables.extend(rule.variables());
        }
        Trs::new(signature, variables, rules)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn variables(&self) -> &BTreeSet<Var> {
        &self.variables
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> Result<&RewriteRule> {
        self.rules.get(index).ok_or(Error::RuleIndex {
            index,
            len: self.rules.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn declare_symbols(sig: &mut Signature, t: &Term) -> Result<()> {
    if let Term::App(f, args) = t {
        sig.declare(f.clone(), args.len())?;
        for a in args {
            declare_symbols(sig, a)?;
        }
    }
    Ok(())
}

/// A rule instance inside a subject term: `s|position = matcher(lhs(rule_index))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub position: Position,
    pub rule_index: usize,
    pub matcher: Substitution,
}

/// Search budget. `fuel` counts node expansions for reachable-set searches and
/// rewrite steps for normalization; terms larger than `max_term_size` are not
/// expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub fuel: usize,
    pub max_term_size: usize,
}

impl Bounds {
    pub fn new(fuel: usize, max_term_size: usize) -> Self {
        Bounds {
            fuel,
            max_term_size,
        }
    }
}

impl From<usize> for Bounds {
    fn from(fuel: usize) -> Self {
        Bounds::new(fuel, DEFAULT_MAX_TERM_SIZE)
    }
}

/// Rewrites `s` at `p` with rule `i` if its lhs matches there.
pub fn step_at(trs: &Trs, s: &Term, p: &Position, i: usize) -> Result<Option<Term>> {
    let rule = trs.rule(i)?;
    let sub = s.subterm_at(p)?;
    match match_term(&rule.lhs, sub) {
        Some(sigma) => s.replace_at(p, sigma.apply(&rule.rhs)).map(Some),
        None => Ok(None),
    }
}

/// Every redex of `s`, ordered by position (length-lex) then rule index.
pub fn redexes(trs: &Trs, s: &Term) -> Vec<Redex> {
    let mut out = Vec::new();
    for p in s.non_variable_positions() {
        let sub = s.subterm_at(&p).expect("own position");
        for (i, rule) in trs.rules.iter().enumerate() {
            if let Some(matcher) = match_term(&rule.lhs, sub) {
                out.push(Redex {
                    position: p.clone(),
                    rule_index: i,
                    matcher,
                });
            }
        }
    }
    out
}

/// Contracts `redex` in `s`. The redex is trusted to come from `s`.
pub fn contract(trs: &Trs, s: &Term, redex: &Redex) -> Result<Term> {
    let rule = trs.rule(redex.rule_index)?;
    s.replace_at(&redex.position, redex.matcher.apply(&rule.rhs))
}

/// All one-step reducts with the redex that produced each.
pub fn one_step_reducts(trs: &Trs, s: &Term) -> Vec<(Term, Redex)> {
    redexes(trs, s)
        .into_iter()
        .map(|r| (contract(trs, s, &r).expect("redex of s"), r))
        .collect()
}

pub fn is_normal_form(trs: &Trs, s: &Term) -> bool {
    let positions = s.non_variable_positions();
    !positions.iter().any(|p| {
        let sub = s.subterm_at(p).expect("own position");
        trs.rules.iter().any(|r| match_term(&r.lhs, sub).is_some())
    })
}

/// Terms reachable from a start term, each with its breadth-first distance,
/// in discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reach {
    Complete(IndexMap<Term, usize>),
    Truncated(IndexMap<Term, usize>),
}

impl Reach {
    pub fn terms(&self) -> &IndexMap<Term, usize> {
        match self {
            Reach::Complete(t) | Reach::Truncated(t) => t,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Reach::Complete(_))
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms().contains_key(t)
    }
}

/// Breadth-first closure of `{s}` under one-step reduction.
pub fn reachable_set(trs: &Trs, s: &Term, bounds: impl Into<Bounds>) -> Reach {
    let bounds = bounds.into();
    let mut seen: IndexMap<Term, usize> = IndexMap::new();
    seen.insert(s.clone(), 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut expansions = 0;
    let mut skipped = false;
    while let Some(&idx) = queue.front() {
        if expansions >= bounds.fuel {
            break;
        }
        queue.pop_front();
        let (t, &depth) = seen.get_index(idx).expect("queued index");
        if t.size() > bounds.max_term_size {
            skipped = true;
            continue;
        }
        expansions += 1;
        let t = t.clone();
        for (u, _) in one_step_reducts(trs, &t) {
            if !seen.contains_key(&u) {
                let (i, _) = seen.insert_full(u, depth + 1);
                queue.push_back(i);
            }
        }
    }
    if queue.is_empty() && !skipped {
        Reach::Complete(seen)
    } else {
        Reach::Truncated(seen)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Joinability {
    /// `witness` is a common reduct, reached in the given number of steps.
    Yes {
        witness: Term,
        steps_left: usize,
        steps_right: usize,
    },
    No,
    Unknown,
}

impl Joinability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Joinability::Yes { .. })
    }
}

/// Decides joinability of `u` and `v` from their full reachable sets.
pub fn joinable_terms(trs: &Trs, u: &Term, v: &Term, bounds: impl Into<Bounds>) -> Joinability {
    let bounds = bounds.into();
    if u == v {
        return Joinability::Yes {
            witness: u.clone(),
            steps_left: 0,
            steps_right: 0,
        };
    }
    let left = reachable_set(trs, u, bounds);
    let right = reachable_set(trs, v, bounds);
    for (t, &dl) in left.terms() {
        if let Some(&dr) = right.terms().get(t) {
            return Joinability::Yes {
                witness: t.clone(),
                steps_left: dl,
                steps_right: dr,
            };
        }
    }
    if left.is_complete() && right.is_complete() {
        Joinability::No
    } else {
        Joinability::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    NormalForm { term: Term, trace: Vec<Redex> },
    OutOfFuel { term: Term, trace: Vec<Redex> },
}

impl Normalization {
    pub fn term(&self) -> &Term {
        match self {
            Normalization::NormalForm { term, .. } | Normalization::OutOfFuel { term, .. } => term,
        }
    }

    pub fn trace(&self) -> &[Redex] {
        match self {
            Normalization::NormalForm { trace, .. } | Normalization::OutOfFuel { trace, .. } => {
                trace
            }
        }
    }
}

/// Repeatedly contracts the first redex in enumeration order. That redex is
/// always an outermost one.
pub fn normalize(trs: &Trs, s: &Term, bounds: impl Into<Bounds>) -> Normalization {
    let bounds = bounds.into();
    let mut term = s.clone();
    let mut trace = Vec::new();
    loop {
        let Some(redex) = first_redex(trs, &term) else {
            return Normalization::NormalForm { term, trace };
        };
        if trace.len() >= bounds.fuel || term.size() > bounds.max_term_size {
            return Normalization::OutOfFuel { term, trace };
        }
        term = contract(trs, &term, &redex).expect("redex of term");
        trace.push(redex);
    }
}

fn first_redex(trs: &Trs, s: &Term) -> Option<Redex> {
    for p in s.non_variable_positions() {
        let sub = s.subterm_at(&p).expect("own position");
        for (i, rule) in trs.rules.iter().enumerate() {
            if let Some(matcher) = match_term(&rule.lhs, sub) {
                return Some(Redex {
                    position: p,
                    rule_index: i,
                    matcher,
                });
            }
        }
    }
    None
}

/// Replay of a uniform reduction: every occurrence of `x` in `side` has its
/// `σ`-instance rewritten at the same inner redex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformReduction {
    /// `σ` with `x ↦ xσ[contractum]_q`.
    pub sigma_prime: Substitution,
    /// Start term followed by the term after each step.
    pub terms: Vec<Term>,
    /// Position of each step, `q_i ∘ q` for an occurrence `q_i` of `x`.
    pub positions: Vec<Position>,
}

impl UniformReduction {
    pub fn steps(&self) -> usize {
        self.positions.len()
    }
}

/// Reduces `σ(side)` to `σ'(side)` one occurrence of `x` at a time, where
/// `inner` is a redex of `xσ` (its position is relative to `xσ`).
///
/// With `skip = Some(p)`, the occurrence of `x` at `p` is taken as already
/// reduced: the sequence starts from `σ(side)[contractum]_{p∘q}`.
pub fn uniform_reduction(
    trs: &Trs,
    side: &Term,
    sigma: &Substitution,
    x: &Var,
    inner: &Redex,
    skip: Option<&Position>,
) -> Result<UniformReduction> {
    let x_inst = sigma.apply(&Term::Var(x.clone()));
    let inner_rule = trs.rule(inner.rule_index)?;
    let at_q = x_inst.subterm_at(&inner.position)?;
    if inner.matcher.apply(&inner_rule.lhs) != *at_q {
        return Err(Error::Precondition(format!(
            "inner redex does not match {x_inst} at {}",
            inner.position
        )));
    }
    let contractum = inner.matcher.apply(&inner_rule.rhs);
    let reduced = x_inst.replace_at(&inner.position, contractum.clone())?;
    let mut sigma_prime = sigma.clone();
    sigma_prime.bind(x.clone(), reduced);

    let occurrences = side.vars_of().remove(x).unwrap_or_default();
    let mut current = sigma.apply(side);
    if let Some(p) = skip {
        if !occurrences.contains(p) {
            return Err(Error::Precondition(format!("`{x}` does not occur at {p}")));
        }
        current = current.replace_at(&p.concat(&inner.position), contractum)?;
    }
    let mut terms = vec![current.clone()];
    let mut positions = Vec::new();
    for qi in occurrences.iter().filter(|q| Some(*q) != skip) {
        let at = qi.concat(&inner.position);
        current = step_at(trs, &current, &at, inner.rule_index)?.ok_or_else(|| {
            Error::Precondition(format!("rule {} does not apply at {at}", inner.rule_index))
        })?;
        terms.push(current.clone());
        positions.push(at);
    }
    if current != sigma_prime.apply(side) {
        return Err(Error::Precondition(
            "uniform reduction did not reach the σ' instance".to_string(),
        ));
    }
    Ok(UniformReduction {
        sigma_prime,
        terms,
        positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(name: &str) -> Term {
        Term::constant(name)
    }
    fn x() -> Term {
        Term::var("x")
    }
    fn app(name: &str, args: Vec<Term>) -> Term {
        Term::app(name, args)
    }
    fn rule(l: Term, r: Term) -> RewriteRule {
        RewriteRule::new(l, r).unwrap()
    }
    fn trs(rules: Vec<RewriteRule>) -> Trs {
        Trs::from_rules(rules).unwrap()
    }
    fn pos(path: &[usize]) -> Position {
        Position::from(path)
    }

    #[test]
    fn rule_well_formedness() {
        assert!(RewriteRule::new(x(), c("a")).is_err());
        assert!(RewriteRule::new(app("f", vec![x()]), Term::var("y")).is_err());
        assert!(RewriteRule::new(app("f", vec![x()]), x()).is_ok());
    }

    #[test]
    fn duplicate_rules_collapse() {
        let r = rule(c("a"), c("b"));
        let t = trs(vec![r.clone(), rule(c("a"), c("c")), r]);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn inconsistent_arity_rejected() {
        let rules = vec![
            rule(app("f", vec![x()]), x()),
            rule(app("f", vec![x(), x()]), x()),
        ];
        assert!(Trs::from_rules(rules).is_err());
    }

    #[test]
    fn step_at_examples() {
        let ab = trs(vec![rule(c("a"), c("b"))]);
        assert_eq!(
            step_at(&ab, &c("a"), &Position::root(), 0).unwrap(),
            Some(c("b"))
        );
        let fx = trs(vec![rule(app("f", vec![x()]), x())]);
        let s = app("g", vec![app("f", vec![c("a")])]);
        assert_eq!(
            step_at(&fx, &s, &pos(&[1]), 0).unwrap(),
            Some(app("g", vec![c("a")]))
        );
        assert_eq!(
            step_at(&fx, &app("g", vec![c("a")]), &pos(&[1]), 0).unwrap(),
            None
        );
        assert!(step_at(&fx, &c("a"), &pos(&[1]), 0).is_err());
        assert_eq!(
            step_at(&fx, &c("a"), &Position::root(), 3),
            Err(Error::RuleIndex { index: 3, len: 1 })
        );
    }

    #[test]
    fn one_step_reducts_examples() {
        let ab = trs(vec![rule(c("a"), c("b"))]);
        assert!(one_step_reducts(&ab, &c("b")).is_empty());
        let s = app("f", vec![c("a"), c("a")]);
        let got: Vec<(Term, Position)> = one_step_reducts(&ab, &s)
            .into_iter()
            .map(|(t, r)| (t, r.position))
            .collect();
        assert_eq!(
            got,
            vec![
                (app("f", vec![c("b"), c("a")]), pos(&[1])),
                (app("f", vec![c("a"), c("b")]), pos(&[2])),
            ]
        );

        let two = trs(vec![rule(app("f", vec![x()]), x()), rule(c("a"), c("b"))]);
        let got: Vec<(Term, usize, Position)> = one_step_reducts(&two, &app("f", vec![c("a")]))
            .into_iter()
            .map(|(t, r)| (t, r.rule_index, r.position))
            .collect();
        assert_eq!(
            got,
            vec![
                (c("a"), 0, Position::root()),
                (app("f", vec![c("b")]), 1, pos(&[1])),
            ]
        );
    }

    #[test]
    fn normal_forms() {
        let ab = trs(vec![rule(c("a"), c("b"))]);
        assert!(is_normal_form(&ab, &c("b")));
        assert!(!is_normal_form(&ab, &app("f", vec![c("a")])));
        let empty = Trs::from_rules(vec![]).unwrap();
        assert!(is_normal_form(&empty, &app("f", vec![x(), c("a")])));
    }

    #[test]
    fn reachable_set_examples() {
        let ab = trs(vec![rule(c("a"), c("b"))]);
        let r = reachable_set(&ab, &c("a"), 10);
        assert!(r.is_complete());
        assert_eq!(
            r.terms().keys().cloned().collect::<Vec<_>>(),
            vec![c("a"), c("b")]
        );

        let loop_ = trs(vec![rule(c("c"), app("g", vec![c("c")]))]);
        let r = reachable_set(&loop_, &c("c"), 5);
        assert!(!r.is_complete());
        assert_eq!(r.terms().len(), 6);

        let empty = Trs::from_rules(vec![]).unwrap();
        let r = reachable_set(&empty, &x(), 1);
        assert_eq!(r, Reach::Complete(IndexMap::from([(x(), 0)])));
    }

    #[test]
    fn reachable_set_respects_size_guard() {
        let grow = trs(vec![rule(c("c"), app("g", vec![c("c")]))]);
        let r = reachable_set(&grow, &c("c"), Bounds::new(1000, 3));
        assert!(!r.is_complete());
        assert!(r.terms().keys().all(|t| t.size() <= 4));
    }

    #[test]
    fn joinable_terms_examples() {
        let empty = Trs::from_rules(vec![]).unwrap();
        assert_eq!(
            joinable_terms(&empty, &x(), &x(), 1),
            Joinability::Yes {
                witness: x(),
                steps_left: 0,
                steps_right: 0
            }
        );
        let abc = trs(vec![rule(c("a"), c("b")), rule(c("a"), c("c"))]);
        assert_eq!(joinable_terms(&abc, &c("b"), &c("c"), 10), Joinability::No);
        let grow = trs(vec![rule(c("c"), app("g", vec![c("c")]))]);
        let gc = app("g", vec![c("c")]);
        assert_eq!(
            joinable_terms(&grow, &c("c"), &gc, 3),
            Joinability::Yes {
                witness: gc.clone(),
                steps_left: 1,
                steps_right: 0
            }
        );
        // two divergent infinite chains never meet within fuel
        let split = trs(vec![
            rule(c("p"), app("g", vec![c("p")])),
            rule(c("q"), app("h", vec![c("q")])),
        ]);
        assert_eq!(
            joinable_terms(&split, &c("p"), &c("q"), 5),
            Joinability::Unknown
        );
    }

    #[test]
    fn normalize_examples() {
        let ff = trs(vec![rule(app("f", vec![app("f", vec![x()])]), x())]);
        let a = c("a");
        assert_eq!(
            normalize(&ff, &a, 0),
            Normalization::NormalForm {
                term: a.clone(),
                trace: vec![]
            }
        );
        let mut s = a.clone();
        for _ in 0..4 {
            s = app("f", vec![s]);
        }
        let n = normalize(&ff, &s, 10);
        assert!(matches!(n, Normalization::NormalForm { .. }));
        assert_eq!(n.term(), &a);
        assert_eq!(n.trace().len(), 2);
        assert!(n.trace().iter().all(|r| r.position.is_root()));

        let grow = trs(vec![rule(c("c"), app("g", vec![c("c")]))]);
        let n = normalize(&grow, &c("c"), 3);
        let ggg = app("g", vec![app("g", vec![app("g", vec![c("c")])])]);
        assert_eq!(
            n,
            Normalization::OutOfFuel {
                term: ggg,
                trace: vec![
                    Redex {
                        position: Position::root(),
                        rule_index: 0,
                        matcher: Substitution::new()
                    },
                    Redex {
                        position: pos(&[1]),
                        rule_index: 0,
                        matcher: Substitution::new()
                    },
                    Redex {
                        position: pos(&[1, 1]),
                        rule_index: 0,
                        matcher: Substitution::new()
                    },
                ]
            }
        );
    }

    #[test]
    fn uniform_reduction_replays_both_sides() {
        // l = h(x, x') -> r = g(x, x, x'), inner rule a -> b applied inside xσ
        let l = app("h", vec![x(), Term::var("y")]);
        let r = app("g", vec![x(), x(), Term::var("y")]);
        let sys = trs(vec![rule(l.clone(), r.clone()), rule(c("a"), c("b"))]);
        let sigma = Substitution::from_pairs([
            (Var::new("x"), app("k", vec![c("a")])),
            (Var::new("y"), c("a")),
        ]);
        let inner = Redex {
            position: pos(&[1]),
            rule_index: 1,
            matcher: Substitution::new(),
        };
        let u = uniform_reduction(&sys, &r, &sigma, &Var::new("x"), &inner, None).unwrap();
        assert_eq!(u.steps(), 2);
        assert_eq!(u.positions, vec![pos(&[1, 1]), pos(&[2, 1])]);
        assert_eq!(u.terms.last().unwrap(), &u.sigma_prime.apply(&r));

        // the lhs side starts already reduced at the overlap occurrence
        let u =
            uniform_reduction(&sys, &l, &sigma, &Var::new("x"), &inner, Some(&pos(&[1]))).unwrap();
        assert_eq!(u.steps(), 0);
        assert_eq!(u.terms[0], u.sigma_prime.apply(&l));

        let bad = Redex {
            position: Position::root(),
            rule_index: 1,
            matcher: Substitution::new(),
        };
        assert!(uniform_reduction(&sys, &r, &sigma, &Var::new("x"), &bad, None).is_err());
    }
}
