//! First-order terms, positions, subterm selection and replacement.
//!
//! Positions are 1-indexed child selectors; the empty position is the root.
//! Terms are immutable values: [`Term::replace_at`] rebuilds only the spine
//! from the root down to the replaced position and shares everything else
//! by cloning.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A variable name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

/// A function symbol name. Arity lives in the [`Signature`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(Arc<str>);

macro_rules! name_impls {
    ($t:ident) => {
        impl $t {
            pub fn new(name: &str) -> Self {
                $t(Arc::from(name))
            }

            pub fn name(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $t {
            fn from(s: &str) -> Self {
                $t::new(s)
            }
        }
    };
}

name_impls!(Var);
name_impls!(Sym);

/// Ranked alphabet: function symbol to arity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: BTreeMap<Sym, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        let mut sig = Signature::new();
        for (name, arity) in pairs {
            sig.declare(Sym::new(name), arity)?;
        }
        Ok(sig)
    }

    /// Adds `sym` with `arity`, or checks it against an earlier declaration.
    pub fn declare(&mut self, sym: Sym, arity: usize) -> Result<()> {
        match self.symbols.get(&sym) {
            Some(&known) if known != arity => Err(Error::IllFormedTerm(format!(
                "symbol `{sym}` used with arity {arity}, declared with arity {known}"
            ))),
            Some(_) => Ok(()),
            None => {
                self.symbols.insert(sym, arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, sym: &Sym) -> Option<usize> {
        self.symbols.get(sym).copied()
    }

    pub fn contains(&self, sym: &Sym) -> bool {
        self.symbols.contains_key(sym)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, usize)> {
        self.symbols.iter().map(|(s, &a)| (s, a))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Checks every application node of `t` against the declared arities.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                match self.arity(f) {
                    None => return Err(Error::IllFormedTerm(format!("undeclared symbol `{f}`"))),
                    Some(a) if a != args.len() => {
                        return Err(Error::IllFormedTerm(format!(
                            "`{f}` has arity {a} but is applied to {} arguments",
                            args.len()
                        )))
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }
}

/// Guards against runaway term constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermLimits {
    pub max_depth: usize,
    pub max_size: usize,
}

impl Default for TermLimits {
    fn default() -> Self {
        TermLimits {
            max_depth: 64,
            max_size: 1_000_000,
        }
    }
}

/// A first-order term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Sym::new(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Sym::new(name), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// Length of the longest position; a variable or constant has depth 0.
    pub fn depth(&self) -> usize {
        self.args().iter().map(|a| a.depth() + 1).max().unwrap_or(0)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn check_limits(&self, limits: &TermLimits) -> Result<()> {
        let size = self.size();
        if size > limits.max_size {
            return Err(Error::ResourceLimit(format!(
                "term size {size} exceeds limit {}",
                limits.max_size
            )));
        }
        let depth = self.depth();
        if depth > limits.max_depth {
            return Err(Error::ResourceLimit(format!(
                "term depth {depth} exceeds limit {}",
                limits.max_depth
            )));
        }
        Ok(())
    }

    /// All positions of the term in length-lexicographic order.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.size());
        let mut path = Vec::new();
        collect_positions(self, &mut path, &mut out);
        out.sort();
        out
    }

    /// Positions whose subterm is not a variable, in length-lexicographic order.
    pub fn non_variable_positions(&self) -> Vec<Position> {
        self.positions()
            .into_iter()
            .filter(|p| self.at(p).is_some_and(|t| !t.is_var()))
            .collect()
    }

    pub fn is_position(&self, p: &Position) -> bool {
        self.at(p).is_some()
    }

    fn at(&self, p: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in p.iter() {
            cur = cur.args().get(i.checked_sub(1)?)?;
        }
        Some(cur)
    }

    pub fn subterm_at(&self, p: &Position) -> Result<&Term> {
        let mut cur = self;
        for (depth, &i) in p.iter().enumerate() {
            match i.checked_sub(1).and_then(|k| cur.args().get(k)) {
                Some(next) => cur = next,
                None => {
                    return Err(Error::InvalidPosition {
                        position: p.clone(),
                        prefix: Position(p.0[..=depth].to_vec()),
                    })
                }
            }
        }
        Ok(cur)
    }

    /// `self[t]_p`.
    pub fn replace_at(&self, p: &Position, t: Term) -> Result<Term> {
        if !self.is_position(p) {
            // reuse subterm_at for the error
            self.subterm_at(p)?;
        }
        Ok(replace_unchecked(self, p.as_slice(), t))
    }

    /// Each variable with the positions where it occurs (length-lex order).
    pub fn vars_of(&self) -> BTreeMap<Var, Vec<Position>> {
        let mut out: BTreeMap<Var, Vec<Position>> = BTreeMap::new();
        for p in self.positions() {
            if let Some(Term::Var(v)) = self.at(&p) {
                out.entry(v.clone()).or_default().push(p);
            }
        }
        out
    }

    /// The variables of the term, without positions.
    pub fn variables(&self) -> std::collections::BTreeSet<Var> {
        let mut out = std::collections::BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Term::Var(v) => f(v),
            Term::App(_, args) => args.iter().for_each(|a| a.visit_vars(f)),
        }
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// True iff no variable occurs twice.
    pub fn is_linear(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        let mut linear = true;
        self.visit_vars(&mut |v| {
            if !seen.insert(v.clone()) {
                linear = false;
            }
        });
        linear
    }

    /// Replaces every variable occurrence `v` by `f(v)`.
    pub fn map_vars(&self, f: &impl Fn(&Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v),
            Term::App(s, args) => {
                Term::App(s.clone(), args.iter().map(|a| a.map_vars(f)).collect())
            }
        }
    }

    /// Rewrites application nodes top-down: where `f` returns a term it is
    /// used as is, otherwise the node is kept and its arguments visited.
    pub fn map_syms(&self, f: &impl Fn(&Sym, &[Term]) -> Option<Term>) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(s, args) => {
                if let Some(t) = f(s, args) {
                    return t;
                }
                Term::App(s.clone(), args.iter().map(|a| a.map_syms(f)).collect())
            }
        }
    }
}

fn collect_positions(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Position>) {
    out.push(Position(path.clone()));
    for (i, a) in t.args().iter().enumerate() {
        path.push(i + 1);
        collect_positions(a, path, out);
        path.pop();
    }
}

fn replace_unchecked(s: &Term, p: &[usize], t: Term) -> Term {
    match (p.split_first(), s) {
        (None, _) => t,
        (Some((&i, rest)), Term::App(f, args)) => {
            let mut new_args = args.clone();
            new_args[i - 1] = replace_unchecked(&args[i - 1], rest, t);
            Term::App(f.clone(), new_args)
        }
        (Some(_), Term::Var(_)) => unreachable!("position validated"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) if args.is_empty() => write!(f, "{s}"),
            Term::App(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A path of 1-based child selectors. Ordered length-lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Position(Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    /// Builds a position; every selector must be at least 1.
    pub fn new(path: Vec<usize>) -> Result<Self> {
        if path.contains(&0) {
            return Err(Error::Precondition(
                "position selectors are 1-based".to_string(),
            ));
        }
        Ok(Position(path))
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn child(&self, i: usize) -> Position {
        let mut path = self.0.clone();
        path.push(i);
        Position(path)
    }

    /// `self ∘ q`
    pub fn concat(&self, q: &Position) -> Position {
        let mut path = self.0.clone();
        path.extend_from_slice(&q.0);
        Position(path)
    }

    /// `self <= q`: self is a prefix of q.
    pub fn prefix_leq(&self, q: &Position) -> bool {
        q.0.starts_with(&self.0)
    }

    /// Strict prefix.
    pub fn above(&self, q: &Position) -> bool {
        self.len() < q.len() && self.prefix_leq(q)
    }

    pub fn parallel(&self, q: &Position) -> bool {
        !self.prefix_leq(q) && !q.prefix_leq(self)
    }

    /// The `r` with `self = p ∘ r`, if `p` prefixes `self`.
    pub fn strip_prefix(&self, p: &Position) -> Option<Position> {
        self.0
            .strip_prefix(p.0.as_slice())
            .map(|r| Position(r.to_vec()))
    }
}

pub fn prefix_leq(p: &Position, q: &Position) -> bool {
    p.prefix_leq(q)
}

pub fn parallel(p: &Position, q: &Position) -> bool {
    p.parallel(q)
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("epsilon");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "epsilon" || s.is_empty() {
            return Ok(Position::root());
        }
        let path = s
            .split('.')
            .map(|part| {
                part.parse::<usize>()
                    .map_err(|_| Error::Precondition(format!("bad position selector `{part}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Position::new(path)
    }
}

impl From<&[usize]> for Position {
    /// Panics on a 0 selector.
    fn from(path: &[usize]) -> Self {
        Position::new(path.to_vec()).expect("1-based position")
    }
}

/// Every ground term over `sig` with at most `max_size` nodes, grouped by
/// increasing size; within one size, by symbol order then argument order.
pub fn enumerate_ground_terms(sig: &Signature, max_size: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for n in 1..=max_size {
        let mut level = Vec::new();
        for (f, arity) in sig.iter() {
            if arity == 0 {
                if n == 1 {
                    level.push(Term::App(f.clone(), Vec::new()));
                }
                continue;
            }
            if n < 1 + arity {
                continue;
            }
            for split in compositions(n - 1, arity) {
                let mut acc: Vec<Vec<Term>> = vec![Vec::new()];
                for &part in &split {
                    let mut next = Vec::new();
                    for prefix in &acc {
                        for t in &by_size[part] {
                            let mut args = prefix.clone();
                            args.push(t.clone());
                            next.push(args);
                        }
                    }
                    acc = next;
                }
                level.extend(acc.into_iter().map(|args| Term::App(f.clone(), args)));
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}

/// Ordered ways to write `total` as `parts` positive summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return if total >= 1 {
            vec![vec![total]]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
