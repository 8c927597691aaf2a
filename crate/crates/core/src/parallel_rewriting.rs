//! Parallel reduction built from coordinated sequences of positions, rules
//! and substitutions: the k-th position is contracted with the k-th rule
//! under the k-th matcher, all simultaneously.

use indexmap::IndexSet;

use crate::critical_pairs::is_orthogonal;
use crate::error::{Error, Result};
use crate::rewriting::{redexes, Redex, Trs, DEFAULT_MAX_TERM_SIZE};
use crate::substitution::Substitution;
use crate::term_algebra::{Position, Term, Var};

/// Default cap on the number of redexes whose subsets are enumerated.
pub const DEFAULT_MAX_REDEXES: usize = 16;

/// A sequence of pairwise parallel positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParallelPositions(Vec<Position>);

impl ParallelPositions {
    pub fn new(positions: Vec<Position>) -> Result<Self> {
        for (i, p) in positions.iter().enumerate() {
            for q in &positions[i + 1..] {
                if !p.parallel(q) {
                    return Err(Error::NotParallel(p.clone(), q.clone()));
                }
            }
        }
        Ok(ParallelPositions(positions))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn validate_for(&self, s: &Term) -> Result<()> {
        self.0.iter().try_for_each(|p| s.subterm_at(p).map(|_| ()))
    }

    pub fn as_slice(&self) -> &[Position] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff every position of `self` is parallel to every one of `other`.
    pub fn parallel_to(&self, other: &ParallelPositions) -> bool {
        self.0.iter().all(|p| other.0.iter().all(|q| p.parallel(q)))
    }

    /// `Π₁ ∘ Π₂` as sequence concatenation; fails unless the two are parallel.
    pub fn concat(&self, other: &ParallelPositions) -> Result<ParallelPositions> {
        let mut all = self.0.clone();
        all.extend(other.0.iter().cloned());
        ParallelPositions::new(all)
    }
}

/// `(Π, Γ, Σ)`: coordinated positions, rule indices and matchers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParallelStep {
    positions: ParallelPositions,
    rule_indices: Vec<usize>,
    matchers: Vec<Substitution>,
}

impl ParallelStep {
    pub fn new(
        positions: ParallelPositions,
        rule_indices: Vec<usize>,
        matchers: Vec<Substitution>,
    ) -> Result<Self> {
        if positions.len() != rule_indices.len() {
            return Err(Error::LengthMismatch {
                what: "positions and rules",
                left: positions.len(),
                right: rule_indices.len(),
            });
        }
        if positions.len() != matchers.len() {
            return Err(Error::LengthMismatch {
                what: "positions and substitutions",
                left: positions.len(),
                right: matchers.len(),
            });
        }
        Ok(ParallelStep {
            positions,
            rule_indices,
            matchers,
        })
    }

    /// The empty step; contracts nothing.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_redexes(redexes: impl IntoIterator<Item = Redex>) -> Result<Self> {
        let (mut ps, mut rs, mut ms) = (Vec::new(), Vec::new(), Vec::new());
        for r in redexes {
            ps.push(r.position);
            rs.push(r.rule_index);
            ms.push(r.matcher);
        }
        ParallelStep::new(ParallelPositions::new(ps)?, rs, ms)
    }

    pub fn positions(&self) -> &ParallelPositions {
        &self.positions
    }

    pub fn rule_indices(&self) -> &[usize] {
        &self.rule_indices
    }

    pub fn matchers(&self) -> &[Substitution] {
        &self.matchers
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn redexes(&self) -> impl Iterator<Item = Redex> + '_ {
        self.positions
            .0
            .iter()
            .zip(&self.rule_indices)
            .zip(&self.matchers)
            .map(|((p, &i), m)| Redex {
                position: p.clone(),
                rule_index: i,
                matcher: m.clone(),
            })
    }

    /// Same step with the triples sorted by position (length-lex).
    pub fn canonical(&self) -> ParallelStep {
        let mut triples: Vec<Redex> = self.redexes().collect();
        triples.sort_by(|a, b| a.position.cmp(&b.position));
        ParallelStep::from_redexes(triples).expect("reordering keeps parallelism")
    }
}

/// `s[T]_Π`: simultaneous replacement at pairwise parallel positions.
pub fn replace_par_pos(s: &Term, positions: &ParallelPositions, terms: &[Term]) -> Result<Term> {
    if positions.len() != terms.len() {
        return Err(Error::LengthMismatch {
            what: "positions and replacement terms",
            left: positions.len(),
            right: terms.len(),
        });
    }
    positions.validate_for(s)?;
    positions
        .0
        .iter()
        .zip(terms)
        .try_fold(s.clone(), |acc, (p, t)| acc.replace_at(p, t.clone()))
}

/// Contracts all redexes of `step` in `s` at once.
pub fn apply_parallel_step(trs: &Trs, s: &Term, step: &ParallelStep) -> Result<Term> {
    step.positions.validate_for(s)?;
    let mut contracta = Vec::with_capacity(step.len());
    for (k, r) in step.redexes().enumerate() {
        let rule = trs.rule(r.rule_index)?;
        if *s.subterm_at(&r.position)? != r.matcher.apply(rule.lhs()) {
            return Err(Error::Coordination {
                index: k,
                position: r.position,
                rule: r.rule_index,
            });
        }
        contracta.push(r.matcher.apply(rule.rhs()));
    }
    replace_par_pos(s, &step.positions, &contracta)
}

/// Resource guards for enumerating parallel reducts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelLimits {
    pub max_redexes: usize,
    pub max_term_size: usize,
}

impl Default for ParallelLimits {
    fn default() -> Self {
        ParallelLimits {
            max_redexes: DEFAULT_MAX_REDEXES,
            max_term_size: DEFAULT_MAX_TERM_SIZE,
        }
    }
}

pub fn parallel_reducts(trs: &Trs, s: &Term) -> Result<Vec<(Term, ParallelStep)>> {
    parallel_reducts_with(trs, s, &ParallelLimits::default())
}

/// Every parallel reduct of `s` with its step, including `s` itself via the
/// empty step. Steps are built over the redexes in enumeration order, so each
/// step is already canonical.
pub fn parallel_reducts_with(
    trs: &Trs,
    s: &Term,
    limits: &ParallelLimits,
) -> Result<Vec<(Term, ParallelStep)>> {
    if s.size() > limits.max_term_size {
        return Err(Error::ResourceLimit(format!(
            "term size {} exceeds limit {}",
            s.size(),
            limits.max_term_size
        )));
    }
    let all = redexes(trs, s);
    if all.len() > limits.max_redexes {
        return Err(Error::ResourceLimit(format!(
            "{} redexes exceed the parallel enumeration cap of {}",
            all.len(),
            limits.max_redexes
        )));
    }
    // grow the family of compatible subsets one redex at a time
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
    for (k, r) in all.iter().enumerate() {
        let extended: Vec<Vec<usize>> = subsets
            .iter()
            .filter(|sub| sub.iter().all(|&j| all[j].position.parallel(&r.position)))
            .map(|sub| {
                let mut next = sub.clone();
                next.push(k);
                next
            })
            .collect();
        subsets.extend(extended);
    }
    subsets
        .into_iter()
        .map(|sub| {
            let step = ParallelStep::from_redexes(sub.into_iter().map(|k| all[k].clone()))?;
            let t = apply_parallel_step(trs, s, &step)?;
            Ok((t, step))
        })
        .collect()
}

/// Packages a sequential step `s -> t` as a singleton parallel step
/// (or the empty step when `s = t`).
pub fn one_step_implies_parallel(trs: &Trs, s: &Term, t: &Term) -> Option<ParallelStep> {
    if s == t {
        return Some(ParallelStep::empty());
    }
    redexes(trs, s).into_iter().find_map(|r| {
        let rule = &trs.rules()[r.rule_index];
        let reduct = s
            .replace_at(&r.position, r.matcher.apply(rule.rhs()))
            .ok()?;
        (reduct == *t).then(|| ParallelStep::from_redexes([r]).expect("singleton"))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diamond {
    Holds,
    /// `left ⇇ s ⇉ right` with no common parallel reduct.
    Fails {
        left: Term,
        right: Term,
    },
}

pub fn diamond_check(trs: &Trs, s: &Term) -> Result<Diamond> {
    diamond_check_with(trs, s, &ParallelLimits::default())
}

/// Checks that every pair of parallel reducts of `s` has a common parallel
/// reduct.
pub fn diamond_check_with(trs: &Trs, s: &Term, limits: &ParallelLimits) -> Result<Diamond> {
    let reducts: IndexSet<Term> = parallel_reducts_with(trs, s, limits)?
        .into_iter()
        .map(|(t, _)| t)
        .collect();
    let mut next: Vec<IndexSet<Term>> = Vec::with_capacity(reducts.len());
    for t in &reducts {
        next.push(
            parallel_reducts_with(trs, t, limits)?
                .into_iter()
                .map(|(u, _)| u)
                .collect(),
        );
    }
    for i in 0..reducts.len() {
        for j in i + 1..reducts.len() {
            if next[i].is_disjoint(&next[j]) {
                return Ok(Diamond::Fails {
                    left: reducts[i].clone(),
                    right: reducts[j].clone(),
                });
            }
        }
    }
    Ok(Diamond::Holds)
}

/// Closes the peak `t ← s ⇉ u`, where `t` contracts `outer` and `u` applies
/// `inner`, with one parallel step on each side.
///
/// Inner redexes below `outer` sit inside the instance of some lhs variable
/// `x` (left-linearity makes that occurrence unique). They are contracted
/// once inside `xσ` to build `σ'`, then replayed at every occurrence of `x`
/// in the rhs on the `t` side; the `u` side contracts `outer` with `σ'`.
/// Returns `(v, step_t, step_u)`.
pub fn parallel_moves_join(
    trs: &Trs,
    s: &Term,
    outer: &Redex,
    inner: &ParallelStep,
) -> Result<Option<(Term, ParallelStep, ParallelStep)>> {
    if !is_orthogonal(trs) {
        return Err(Error::Precondition("system is not orthogonal".to_string()));
    }
    let rule = trs.rule(outer.rule_index)?;
    let p = &outer.position;
    if *s.subterm_at(p)? != outer.matcher.apply(rule.lhs()) {
        return Err(Error::Precondition(format!(
            "outer redex does not match at {p}"
        )));
    }
    for q in inner.positions().as_slice() {
        if !(p.above(q) || p.parallel(q)) {
            return Err(Error::Precondition(format!(
                "inner position {q} is neither strictly below nor parallel to {p}"
            )));
        }
    }
    let t = s.replace_at(p, outer.matcher.apply(rule.rhs()))?;
    let u = apply_parallel_step(trs, s, inner)?;

    let lhs_vars = rule.lhs().vars_of();
    let rhs_vars = rule.rhs().vars_of();
    let mut beside: Vec<Redex> = Vec::new();
    // per lhs variable: the inner redexes inside its instance, relative to it
    let mut below: Vec<(Var, Vec<Redex>)> = Vec::new();
    for r in inner.redexes() {
        if p.parallel(&r.position) {
            beside.push(r);
            continue;
        }
        let rel = r.position.strip_prefix(p).expect("strictly below");
        let Some((x, rest)) = lhs_vars
            .iter()
            .find_map(|(x, occ)| rel.strip_prefix(&occ[0]).map(|rest| (x.clone(), rest)))
        else {
            // inside the lhs pattern itself: an overlap, impossible when orthogonal
            return Ok(None);
        };
        let inside = Redex {
            position: rest,
            ..r
        };
        match below.iter_mut().find(|(y, _)| *y == x) {
            Some((_, group)) => group.push(inside),
            None => below.push((x, vec![inside])),
        }
    }

    let mut sigma_prime = outer.matcher.clone();
    let mut t_redexes = beside;
    for (x, group) in &below {
        let instance = outer.matcher.apply(&Term::Var(x.clone()));
        let step = ParallelStep::from_redexes(group.iter().cloned())?;
        sigma_prime.bind(x.clone(), apply_parallel_step(trs, &instance, &step)?);
        for qi in rhs_vars.get(x).into_iter().flatten() {
            let base = p.concat(qi);
            t_redexes.extend(group.iter().map(|r| Redex {
                position: base.concat(&r.position),
                ..r.clone()
            }));
        }
    }
    let step_t = ParallelStep::from_redexes(t_redexes)?.canonical();
    let step_u = ParallelStep::from_redexes([Redex {
        position: p.clone(),
        rule_index: outer.rule_index,
        matcher: sigma_prime,
    }])?;
    let v = apply_parallel_step(trs, &t, &step_t)?;
    if apply_parallel_step(trs, &u, &step_u)? != v {
        return Ok(None);
    }
    Ok(Some((v, step_t, step_u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::{one_step_reducts, step_at, RewriteRule};

    fn c(name: &str) -> Term {
        Term::constant(name)
    }
    fn v(name: &str) -> Term {
        Term::var(name)
    }
    fn app(name: &str, args: Vec<Term>) -> Term {
        Term::app(name, args)
    }
    fn ap(s: Term, t: Term) -> Term {
        app("ap", vec![s, t])
    }
    fn pos(path: &[usize]) -> Position {
        Position::from(path)
    }
    fn pp(paths: &[&[usize]]) -> ParallelPositions {
        ParallelPositions::new(paths.iter().map(|p| pos(p)).collect()).unwrap()
    }
    fn trs(rules: Vec<(Term, Term)>) -> Trs {
        Trs::from_rules(
            rules
                .into_iter()
                .map(|(l, r)| RewriteRule::new(l, r).unwrap())
                .collect(),
        )
        .unwrap()
    }
    fn cl() -> Trs {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        trs(vec![
            (
                ap(ap(ap(c("S"), x.clone()), y.clone()), z.clone()),
                ap(ap(x.clone(), z.clone()), ap(y.clone(), z)),
            ),
            (ap(ap(c("K"), x.clone()), y), x),
        ])
    }
    fn step(trs: &Trs, s: &Term, at: &[(&[usize], usize)]) -> ParallelStep {
        let redexes = at.iter().map(|(p, i)| {
            let rule = &trs.rules()[*i];
            let matcher =
                crate::substitution::match_term(rule.lhs(), s.subterm_at(&pos(p)).unwrap())
                    .unwrap();
            Redex {
                position: pos(p),
                rule_index: *i,
                matcher,
            }
        });
        ParallelStep::from_redexes(redexes).unwrap()
    }

    #[test]
    fn positions_must_be_parallel() {
        assert!(ParallelPositions::new(vec![pos(&[1]), pos(&[1, 2])]).is_err());
        assert!(ParallelPositions::new(vec![pos(&[1]), pos(&[1])]).is_err());
        assert!(ParallelPositions::new(vec![pos(&[1]), pos(&[2, 1])]).is_ok());
    }

    #[test]
    fn replace_par_pos_examples() {
        let s = app("f", vec![c("a"), c("b")]);
        assert_eq!(replace_par_pos(&s, &pp(&[]), &[]).unwrap(), s);
        assert_eq!(
            replace_par_pos(&s, &pp(&[&[1], &[2]]), &[c("b"), c("a")]).unwrap(),
            app("f", vec![c("b"), c("a")])
        );
        let s = app("f", vec![app("g", vec![c("a")]), c("a")]);
        assert_eq!(
            replace_par_pos(&s, &pp(&[&[1, 1], &[2]]), &[c("b"), c("c")]).unwrap(),
            app("f", vec![app("g", vec![c("b")]), c("c")])
        );
        assert!(matches!(
            replace_par_pos(&s, &pp(&[&[1]]), &[]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            replace_par_pos(&s, &pp(&[&[3]]), &[c("a")]),
            Err(Error::InvalidPosition { .. })
        ));
    }

    #[test]
    fn apply_parallel_step_examples() {
        let ab = trs(vec![(c("a"), c("b"))]);
        let s = app("f", vec![c("a"), c("a")]);
        assert_eq!(
            apply_parallel_step(&ab, &s, &ParallelStep::empty()).unwrap(),
            s
        );
        let st = step(&ab, &s, &[(&[1], 0), (&[2], 0)]);
        assert_eq!(
            apply_parallel_step(&ab, &s, &st).unwrap(),
            app("f", vec![c("b"), c("b")])
        );

        let two = trs(vec![(c("a"), c("b")), (app("f", vec![v("x")]), v("x"))]);
        let s = app("g", vec![app("f", vec![c("a")]), c("a")]);
        let st = step(&two, &s, &[(&[1], 1), (&[2], 0)]);
        assert_eq!(
            apply_parallel_step(&two, &s, &st).unwrap(),
            app("g", vec![c("a"), c("b")])
        );

        // rule 0 (a -> b) at ⟨1⟩ of g(f(a), a) does not match
        let bad = ParallelStep::new(pp(&[&[1]]), vec![0], vec![Substitution::new()]).unwrap();
        assert_eq!(
            apply_parallel_step(&two, &s, &bad),
            Err(Error::Coordination {
                index: 0,
                position: pos(&[1]),
                rule: 0
            })
        );
    }

    #[test]
    fn step_length_mismatch() {
        assert!(matches!(
            ParallelStep::new(pp(&[&[1]]), vec![], vec![]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            ParallelStep::new(pp(&[&[1]]), vec![0], vec![]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn parallel_reducts_examples() {
        let ab = trs(vec![(c("a"), c("b"))]);
        let nf = app("f", vec![c("b")]);
        assert_eq!(
            parallel_reducts(&ab, &nf).unwrap(),
            vec![(nf.clone(), ParallelStep::empty())]
        );

        let s = app("f", vec![c("a"), c("a")]);
        let terms: Vec<Term> = parallel_reducts(&ab, &s)
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        assert_eq!(
            terms,
            vec![
                s.clone(),
                app("f", vec![c("b"), c("a")]),
                app("f", vec![c("a"), c("b")]),
                app("f", vec![c("b"), c("b")]),
            ]
        );

        let r = parallel_reducts(&ab, &c("a")).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], (c("a"), ParallelStep::empty()));
        assert_eq!(r[1].0, c("b"));
        assert_eq!(r[1].1.positions().as_slice(), &[Position::root()]);
    }

    #[test]
    fn parallel_reducts_cap() {
        let ab = trs(vec![(c("a"), c("b"))]);
        let mut s = c("a");
        for _ in 0..17 {
            s = app("f", vec![c("a"), s]);
        }
        assert!(matches!(
            parallel_reducts(&ab, &s),
            Err(Error::ResourceLimit(_))
        ));
        let tight = ParallelLimits {
            max_redexes: 16,
            max_term_size: 2,
        };
        assert!(matches!(
            diamond_check_with(&ab, &app("f", vec![c("a"), c("a")]), &tight),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn one_step_implies_parallel_examples() {
        let ab = trs(vec![(c("a"), c("b"))]);
        let fa = app("f", vec![c("a")]);
        assert_eq!(
            one_step_implies_parallel(&ab, &fa, &fa),
            Some(ParallelStep::empty())
        );
        let st = one_step_implies_parallel(&ab, &fa, &app("f", vec![c("b")])).unwrap();
        assert_eq!(st.positions().as_slice(), &[pos(&[1])]);
        assert_eq!(
            one_step_implies_parallel(&ab, &fa, &app("f", vec![c("c")])),
            None
        );
    }

    #[test]
    fn sequential_steps_are_parallel_steps() {
        let sys = cl();
        let k = |x, y| ap(ap(c("K"), x), y);
        let s = k(k(c("S"), c("K")), k(c("K"), c("S")));
        let par: Vec<Term> = parallel_reducts(&sys, &s)
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        for (t, _) in one_step_reducts(&sys, &s) {
            assert!(par.contains(&t));
        }
    }

    #[test]
    fn diamond_examples() {
        let ab = trs(vec![(c("a"), c("b"))]);
        assert_eq!(
            diamond_check(&ab, &app("f", vec![c("a"), c("a")])).unwrap(),
            Diamond::Holds
        );

        let k = |x, y| ap(ap(c("K"), x), y);
        let s = k(c("a"), k(c("b"), c("c")));
        assert_eq!(diamond_check(&cl(), &s).unwrap(), Diamond::Holds);

        let nonlinear = trs(vec![
            (app("f", vec![v("x"), v("x")]), v("x")),
            (c("a"), c("b")),
        ]);
        assert_eq!(
            diamond_check(&nonlinear, &app("f", vec![c("a"), c("a")])).unwrap(),
            Diamond::Fails {
                left: c("a"),
                right: app("f", vec![c("b"), c("a")])
            }
        );
    }

    #[test]
    fn parallel_moves_examples() {
        let sys = cl();
        let k = |x, y| ap(ap(c("K"), x), y);
        let s = k(c("a"), k(c("b"), c("c")));
        let outer = step(&sys, &s, &[(&[], 1)]).redexes().next().unwrap();

        // degenerate peak
        let (v0, st, su) = parallel_moves_join(&sys, &s, &outer, &ParallelStep::empty())
            .unwrap()
            .unwrap();
        assert_eq!(v0, c("a"));
        assert!(st.is_empty());
        assert_eq!(su.len(), 1);

        let inner = step(&sys, &s, &[(&[2], 1)]);
        let (v1, st, su) = parallel_moves_join(&sys, &s, &outer, &inner)
            .unwrap()
            .unwrap();
        assert_eq!(v1, c("a"));
        assert!(st.is_empty());
        assert_eq!(su.positions().as_slice(), &[Position::root()]);
        let u = apply_parallel_step(&sys, &s, &inner).unwrap();
        assert_eq!(u, k(c("a"), c("b")));
        assert_eq!(apply_parallel_step(&sys, &u, &su).unwrap(), c("a"));

        let dup = trs(vec![
            (app("f", vec![v("x")]), app("g", vec![v("x"), v("x")])),
            (c("a"), c("b")),
        ]);
        let s = app("f", vec![c("a")]);
        let outer = step(&dup, &s, &[(&[], 0)]).redexes().next().unwrap();
        let inner = step(&dup, &s, &[(&[1], 1)]);
        let (v2, st, su) = parallel_moves_join(&dup, &s, &outer, &inner)
            .unwrap()
            .unwrap();
        assert_eq!(v2, app("g", vec![c("b"), c("b")]));
        assert_eq!(st.positions().as_slice(), &[pos(&[1]), pos(&[2])]);
        assert_eq!(st.rule_indices(), &[1, 1]);
        assert_eq!(su.positions().as_slice(), &[Position::root()]);
        let t = step_at(&dup, &s, &Position::root(), 0).unwrap().unwrap();
        assert_eq!(t, app("g", vec![c("a"), c("a")]));
        assert_eq!(apply_parallel_step(&dup, &t, &st).unwrap(), v2);
    }

    #[test]
    fn parallel_moves_preconditions() {
        let nonlinear = trs(vec![
            (app("f", vec![v("x"), v("x")]), v("x")),
            (c("a"), c("b")),
        ]);
        let s = app("f", vec![c("a"), c("a")]);
        let outer = step(&nonlinear, &s, &[(&[], 0)]).redexes().next().unwrap();
        assert!(matches!(
            parallel_moves_join(&nonlinear, &s, &outer, &ParallelStep::empty()),
            Err(Error::Precondition(_))
        ));

        let sys = cl();
        let k = |x, y| ap(ap(c("K"), x), y);
        let s = k(c("a"), c("b"));
        let outer = step(&sys, &s, &[(&[], 1)]).redexes().next().unwrap();
        let same = step(&sys, &s, &[(&[], 1)]);
        assert!(matches!(
            parallel_moves_join(&sys, &s, &outer, &same),
            Err(Error::Precondition(_))
        ));
    }
}
