#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rwkit_core::rewriting::RewriteRule;
use rwkit_core::{Position, Term, Var};

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// Seeded generator of terms over a/0, b/0, g/1, f/2, h/3.
pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn term(&mut self, depth: usize, with_vars: bool) -> Term {
        let leaf = depth == 0 || self.rng.gen_bool(0.3);
        if leaf {
            if with_vars && self.rng.gen_bool(0.4) {
                return Term::var(VARS.choose(&mut self.rng).unwrap());
            }
            return Term::constant(if self.rng.gen_bool(0.5) { "a" } else { "b" });
        }
        let (name, arity) = [("g", 1), ("f", 2), ("h", 3)][self.rng.gen_range(0..3)];
        let args = (0..arity)
            .map(|_| self.term(depth - 1, with_vars))
            .collect();
        Term::app(name, args)
    }

    pub fn position(&mut self, t: &Term) -> Position {
        t.positions().choose(&mut self.rng).unwrap().clone()
    }

    /// Up to `n` positions of `s`, pairwise parallel and parallel to `avoid`.
    pub fn parallel_positions(&mut self, s: &Term, n: usize, avoid: &[Position]) -> Vec<Position> {
        let mut all = s.positions();
        all.shuffle(&mut self.rng);
        let mut chosen: Vec<Position> = Vec::new();
        for p in all {
            if chosen.len() == n {
                break;
            }
            if chosen.iter().chain(avoid).all(|q| p.parallel(q)) {
                chosen.push(p);
            }
        }
        chosen
    }

    pub fn substitution(&mut self, depth: usize) -> rwkit_core::Substitution {
        rwkit_core::Substitution::from_pairs(
            VARS.iter()
                .map(|v| (Var::new(v), self.term(depth, true)))
                .collect::<Vec<_>>(),
        )
    }

    /// A well-formed rule: non-variable lhs, rhs over the lhs variables.
    pub fn rule(&mut self, depth: usize) -> RewriteRule {
        loop {
            let l = self.term(depth, true);
            if l.is_var() {
                continue;
            }
            let vars: Vec<Var> = l.variables().into_iter().collect();
            let r = self.term(depth, true).map_vars(&|v| {
                if vars.contains(v) {
                    Term::Var(v.clone())
                } else if let Some(first) = vars.first() {
                    Term::Var(first.clone())
                } else {
                    Term::constant("a")
                }
            });
            if let Ok(rule) = RewriteRule::new(l, r) {
                return rule;
            }
        }
    }
}

/// Renames variables to `v0, v1, ...` in order of first occurrence.
pub fn canonical(terms: &[&Term]) -> Vec<Term> {
    let mut names: BTreeMap<Var, Term> = BTreeMap::new();
    let mut order: Vec<Var> = Vec::new();
    fn visit(t: &Term, order: &mut Vec<Var>) {
        match t {
            Term::Var(v) => {
                if !order.contains(v) {
                    order.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| visit(a, order)),
        }
    }
    for t in terms {
        visit(t, &mut order);
    }
    for (i, v) in order.into_iter().enumerate() {
        names.insert(v, Term::var(&format!("v{i}")));
    }
    terms
        .iter()
        .map(|t| t.map_vars(&|v| names[v].clone()))
        .collect()
}
