//! Term rewriting analyses: the algebra of positions and replacement,
//! substitutions and unification, the one-step and parallel reduction
//! relations, critical pairs, and confluence verdicts.

pub mod ars;
pub mod critical_pairs;
pub mod error;
pub mod parallel_rewriting;
pub mod parse;
pub mod rewriting;
pub mod substitution;
pub mod term_algebra;

pub use error::{Error, Result};
pub use rewriting::{RewriteRule, Trs};
pub use substitution::Substitution;
pub use term_algebra::{Position, Signature, Sym, Term, Var};
