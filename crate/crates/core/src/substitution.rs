//! Finite-domain substitutions, syntactic matching and most general unifiers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rewriting::RewriteRule;
use crate::term_algebra::{Term, Var};

/// A finite map from variables to terms. A variable never maps to itself, so
/// the domain is exactly the set of keys.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Self {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    /// Sets `v ↦ t`. Binding a variable to itself removes it from the domain.
    pub fn bind(&mut self, v: Var, t: Term) {
        if t.as_var() == Some(&v) {
            self.bindings.remove(&v);
        } else {
            self.bindings.insert(v, t);
        }
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.bindings.get(v)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.bindings.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.bindings.iter()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Homomorphic extension: replaces every variable of `t` in the domain by
    /// its image, simultaneously.
    pub fn apply(&self, t: &Term) -> Term {
        if self.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    /// `σ` then `τ`: `compose(σ, τ).apply(t) == τ.apply(&σ.apply(t))`.
    pub fn compose(&self, tau: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.bind(v.clone(), tau.apply(t));
        }
        for (v, t) in &tau.bindings {
            if !self.bindings.contains_key(v) {
                out.bind(v.clone(), t.clone());
            }
        }
        out
    }

    /// Keeps only the bindings of variables in `vars`.
    pub fn restrict(&self, vars: &BTreeSet<Var>) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(v, _)| vars.contains(*v))
                .map(|(v, t)| (v.clone(), t.clone()))
                .collect(),
        }
    }

    /// True iff applying twice equals applying once on every term.
    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| t.variables().iter().all(|v| !self.bindings.contains_key(v)))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Source of fresh variable names. A fresh name is `<var>_<n>` for a strictly
/// increasing counter `n`, skipping anything in the caller's avoid set.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    next: usize,
}

impl NameSupply {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self, base: &Var, avoid: &BTreeSet<Var>) -> Var {
        loop {
            let candidate = Var::new(&format!("{}_{}", base.name(), self.next));
            self.next += 1;
            if !avoid.contains(&candidate) {
                return candidate;
            }
        }
    }
}

/// Renames the variables of `rule` away from `avoid`. Returns the variant and
/// the (bijective) renaming used.
pub fn rename_apart(
    rule: &RewriteRule,
    avoid: &BTreeSet<Var>,
    supply: &mut NameSupply,
) -> (RewriteRule, Substitution) {
    let mut blocked: BTreeSet<Var> = avoid.clone();
    blocked.extend(rule.variables());
    let mut renaming = Substitution::new();
    for v in rule.lhs().variables() {
        let fresh = supply.fresh(&v, &blocked);
        blocked.insert(fresh.clone());
        renaming.bind(v, Term::Var(fresh));
    }
    let renamed =
        RewriteRule::new_unchecked(renaming.apply(rule.lhs()), renaming.apply(rule.rhs()));
    (renamed, renaming)
}

/// Renames variables to `_0, _1, ...` in order of first occurrence across `terms`.
pub fn canonical_variant(terms: &[&Term]) -> Vec<Term> {
    let mut order: BTreeMap<Var, Var> = BTreeMap::new();
    fn walk(t: &Term, order: &mut BTreeMap<Var, Var>) {
        match t {
            Term::Var(v) => {
                let n = order.len();
                order
                    .entry(v.clone())
                    .or_insert_with(|| Var::new(&format!("_{n}")));
            }
            Term::App(_, args) => args.iter().for_each(|a| walk(a, order)),
        }
    }
    for t in terms {
        walk(t, &mut order);
    }
    terms
        .iter()
        .map(|t| t.map_vars(&|v| Term::Var(order[v].clone())))
        .collect()
}

/// True iff the two term sequences are equal up to a bijective renaming.
pub fn is_variant(a: &[&Term], b: &[&Term]) -> bool {
    a.len() == b.len() && canonical_variant(a) == canonical_variant(b)
}

/// One-sided matching: the minimal `σ` with `σ(pattern) = subject`. Variables
/// of `subject` are treated as constants.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut bound: BTreeMap<Var, Term> = BTreeMap::new();
    let mut stack = vec![(pattern, subject)];
    while let Some((p, s)) = stack.pop() {
        match p {
            Term::Var(v) => match bound.get(v) {
                Some(prev) if prev != s => return None,
                Some(_) => {}
                None => {
                    bound.insert(v.clone(), s.clone());
                }
            },
            Term::App(f, pargs) => match s {
                Term::App(g, sargs) if f == g && pargs.len() == sargs.len() => {
                    // reversed so the left argument is popped first
                    stack.extend(pargs.iter().zip(sargs).rev());
                }
                _ => return None,
            },
        }
    }
    Some(Substitution::from_pairs(bound))
}

/// Most general unifier, by Robinson-style decomposition with eager
/// substitution and occurs check. The result is idempotent.
pub fn unify(s: &Term, t: &Term) -> Option<Substitution> {
    unify_all(vec![(s.clone(), t.clone())])
}

/// Simultaneous mgu of a list of equations.
pub fn unify_all(equations: Vec<(Term, Term)>) -> Option<Substitution> {
    let mut solved: BTreeMap<Var, Term> = BTreeMap::new();
    let mut pending: Vec<(Term, Term)> = equations;
    pending.reverse();
    while let Some((l, r)) = pending.pop() {
        if l == r {
            continue;
        }
        match (l, r) {
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if t.contains_var(&x) {
                    return None;
                }
                let elim = Substitution::from_pairs([(x.clone(), t.clone())]);
                for image in solved.values_mut() {
                    *image = elim.apply(image);
                }
                for (a, b) in pending.iter_mut() {
                    *a = elim.apply(a);
                    *b = elim.apply(b);
                }
                solved.insert(x, t);
            }
            (Term::App(f, fargs), Term::App(g, gargs)) => {
                if f != g || fargs.len() != gargs.len() {
                    return None;
                }
                pending.extend(fargs.into_iter().zip(gargs).rev());
            }
        }
    }
    Some(Substitution::from_pairs(solved))
}
