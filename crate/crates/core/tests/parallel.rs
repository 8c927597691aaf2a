mod common;

use proptest::prelude::*;
use proptest::sample::Index;

use rwkit_core::parallel_rewriting::{
    apply_parallel_step, diamond_check, parallel_moves_join, parallel_reducts, replace_par_pos,
    Diamond, ParallelPositions, ParallelStep,
};
use rwkit_core::parse::parse_trs;
use rwkit_core::rewriting::{one_step_reducts, step_at, Redex, Trs};
use rwkit_core::{Position, Term};

use common::{term, VARS};

/// Greedily picks up to `n` pairwise parallel positions of `s`.
fn parallel_positions(s: &Term, picks: &[Index], n: usize, avoid: &[Position]) -> Vec<Position> {
    let all = s.positions();
    let mut chosen: Vec<Position> = Vec::new();
    for i in picks {
        if chosen.len() == n {
            break;
        }
        let p = &all[i.index(all.len())];
        if chosen.iter().chain(avoid).all(|q| p.parallel(q)) {
            chosen.push(p.clone());
        }
    }
    chosen
}

fn cl() -> Trs {
    parse_trs(
        "(VAR x y z)
         (RULES ap(ap(ap(S,x),y),z) -> ap(ap(x,z),ap(y,z))
                ap(ap(K,x),y) -> x)",
    )
    .unwrap()
}

/// Random CL terms with variables.
fn cl_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::constant("S")),
        Just(Term::constant("K")),
        prop::sample::select(&VARS[..]).prop_map(Term::var),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Term::app("ap", vec![a, b]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parallel_replacement_laws(
        s in term(),
        picks in prop::collection::vec(any::<Index>(), 12),
        n1 in 0usize..=4, n2 in 0usize..=4,
        ts in prop::collection::vec(term(), 8),
        order in prop::collection::vec(any::<Index>(), 4),
    ) {
        let p1 = parallel_positions(&s, &picks[..6], n1, &[]);
        let p2 = parallel_positions(&s, &picks[6..], n2, &p1);
        let t1 = ts[..p1.len()].to_vec();
        let t2 = ts[4..4 + p2.len()].to_vec();
        let pi1 = ParallelPositions::new(p1.clone()).unwrap();
        let pi2 = ParallelPositions::new(p2.clone()).unwrap();

        let once = replace_par_pos(&s, &pi1, &t1).unwrap();
        prop_assert!(pi1.validate_for(&once).is_ok());

        let both = replace_par_pos(&once, &pi2, &t2).unwrap();
        let joined = pi1.concat(&pi2).unwrap();
        let all_terms: Vec<Term> = t1.iter().chain(&t2).cloned().collect();
        prop_assert_eq!(&both, &replace_par_pos(&s, &joined, &all_terms).unwrap());
        let swapped = replace_par_pos(&replace_par_pos(&s, &pi2, &t2).unwrap(), &pi1, &t1).unwrap();
        prop_assert_eq!(&both, &swapped);

        // any permutation of the coordinated pairs gives the same result
        let mut pairs: Vec<(Position, Term)> = p1.into_iter().zip(t1).collect();
        for (k, i) in order.iter().enumerate() {
            let len = pairs.len();
            if len > 1 {
                pairs.swap(k % len, i.index(len));
            }
        }
        let folded = pairs.iter().fold(s.clone(), |acc, (p, t)| acc.replace_at(p, t.clone()).unwrap());
        prop_assert_eq!(folded, once);
    }

    /// `→ ⊆ ⇉ ⊆ →*` on combinatory logic.
    #[test]
    fn sandwich(s in cl_term(), shuffle in any::<u64>()) {
        let sys = cl();
        let reducts = parallel_reducts(&sys, &s).unwrap();
        for (t, _) in one_step_reducts(&sys, &s) {
            prop_assert!(reducts.iter().any(|(u, _)| *u == t));
        }
        for (t, step) in &reducts {
            prop_assert_eq!(&apply_parallel_step(&sys, &s, step).unwrap(), t);
            let mut redexes: Vec<Redex> = step.redexes().collect();
            let len = redexes.len();
            if len > 1 {
                redexes.rotate_left((shuffle as usize) % len);
            }
            let mut current = s.clone();
            for r in &redexes {
                current = step_at(&sys, &current, &r.position, r.rule_index).unwrap().unwrap();
            }
            prop_assert_eq!(&current, t);
        }
    }

    /// Both sides returned by `parallel_moves_join` land on the same term.
    #[test]
    fn parallel_moves_close_peaks(s in cl_term(), io in any::<Index>(), picks in prop::collection::vec(any::<bool>(), 16)) {
        let sys = cl();
        let redexes: Vec<Redex> = rwkit_core::rewriting::redexes(&sys, &s);
        prop_assume!(!redexes.is_empty());
        let outer = redexes[io.index(redexes.len())].clone();
        let mut inner: Vec<Redex> = Vec::new();
        for (r, keep) in redexes.iter().zip(&picks) {
            let ok = outer.position.above(&r.position) || outer.position.parallel(&r.position);
            if *keep && ok && inner.iter().all(|q| q.position.parallel(&r.position)) {
                inner.push(r.clone());
            }
        }
        let inner = ParallelStep::from_redexes(inner).unwrap();
        let t = step_at(&sys, &s, &outer.position, outer.rule_index).unwrap().unwrap();
        let u = apply_parallel_step(&sys, &s, &inner).unwrap();
        let (v, step_t, step_u) = parallel_moves_join(&sys, &s, &outer, &inner).unwrap().unwrap();
        prop_assert_eq!(apply_parallel_step(&sys, &t, &step_t).unwrap(), v.clone());
        prop_assert_eq!(apply_parallel_step(&sys, &u, &step_u).unwrap(), v);
    }
}

#[test]
fn diamond_holds_on_small_cl_terms() {
    let sys = cl();
    let sig = sys.signature().clone();
    for s in rwkit_core::term_algebra::enumerate_ground_terms(&sig, 5) {
        assert_eq!(diamond_check(&sys, &s).unwrap(), Diamond::Holds, "at {s}");
    }
}
