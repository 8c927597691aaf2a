#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::Index;

use rwkit_core::rewriting::{RewriteRule, Trs};
use rwkit_core::{Position, Substitution, Term, Var};

pub const VARS: [&str; 3] = ["x", "y", "z"];

fn leaf(with_vars: bool) -> BoxedStrategy<Term> {
    let consts = prop_oneof![Just(Term::constant("a")), Just(Term::constant("b"))];
    if with_vars {
        prop_oneof![
            2 => consts,
            1 => prop::sample::select(&VARS[..]).prop_map(Term::var),
        ]
        .boxed()
    } else {
        consts.boxed()
    }
}

/// Terms over a/0, b/0, g/1, f/2, h/3 and variables x, y, z.
pub fn term() -> BoxedStrategy<Term> {
    build(true)
}

pub fn ground_term() -> BoxedStrategy<Term> {
    build(false)
}

fn build(with_vars: bool) -> BoxedStrategy<Term> {
    leaf(with_vars)
        .prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| Term::app("g", vec![t])),
                (inner.clone(), inner.clone()).prop_map(|(s, t)| Term::app("f", vec![s, t])),
                (inner.clone(), inner.clone(), inner)
                    .prop_map(|(r, s, t)| Term::app("h", vec![r, s, t])),
            ]
        })
        .boxed()
}

pub fn pick_position(t: &Term, i: &Index) -> Position {
    let ps = t.positions();
    ps[i.index(ps.len())].clone()
}

/// A term together with one of its positions.
pub fn term_at() -> impl Strategy<Value = (Term, Position)> {
    (term(), any::<Index>()).prop_map(|(t, i)| {
        let p = pick_position(&t, &i);
        (t, p)
    })
}

pub fn substitution() -> impl Strategy<Value = Substitution> {
    prop::collection::vec(term(), VARS.len())
        .prop_map(|ts| Substitution::from_pairs(VARS.iter().map(|v| Var::new(v)).zip(ts)))
}

/// A well-formed rule: non-variable lhs, rhs variables drawn from the lhs.
pub fn rule() -> impl Strategy<Value = RewriteRule> {
    (term(), term()).prop_filter_map("lhs is a variable", |(l, r)| {
        if l.is_var() {
            return None;
        }
        let vars = l.variables();
        let fallback = vars.iter().next().cloned();
        let r = r.map_vars(&|v| {
            if vars.contains(v) {
                Term::Var(v.clone())
            } else {
                fallback.clone().map_or(Term::constant("a"), Term::Var)
            }
        });
        RewriteRule::new(l, r).ok()
    })
}

pub fn trs() -> impl Strategy<Value = Trs> {
    prop::collection::vec(rule(), 1..4).prop_map(|rules| Trs::from_rules(rules).unwrap())
}

/// Brute-force enumeration of one-step reducts: every position times every
/// rule, matched independently of the library's redex search.
pub fn brute_force_reducts(trs: &Trs, s: &Term) -> Vec<(Position, usize, Term)> {
    let mut out = Vec::new();
    for p in s.positions() {
        let sub = s.subterm_at(&p).unwrap();
        for (i, r) in trs.rules().iter().enumerate() {
            let mut binding = std::collections::BTreeMap::new();
            if naive_match(r.lhs(), sub, &mut binding) {
                let sigma = Substitution::from_pairs(binding);
                out.push((
                    p.clone(),
                    i,
                    s.replace_at(&p, sigma.apply(r.rhs())).unwrap(),
                ));
            }
        }
    }
    out
}

fn naive_match(
    pattern: &Term,
    subject: &Term,
    binding: &mut std::collections::BTreeMap<Var, Term>,
) -> bool {
    match (pattern, subject) {
        (Term::Var(v), _) => match binding.get(v) {
            Some(bound) => bound == subject,
            None => {
                binding.insert(v.clone(), subject.clone());
                true
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| naive_match(x, y, binding))
        }
        _ => false,
    }
}
