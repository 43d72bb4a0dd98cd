mod common;

use std::collections::BTreeSet;

use common::{letters, random_db, random_finite_language, rng, DbShape};
use proptest::prelude::*;
use rpq_resilience::automata::finite_to_epsnfa;
use rpq_resilience::graphdb::{enumerate_matches, find_walk, satisfies, Fact, GraphDb};
use rpq_resilience::solvers::{min_hitting_set_bruteforce, resilience_exact, Limits};

const SHAPE: DbShape = DbShape {
    nodes: 4,
    max_facts: 8,
    max_mult: 3,
    plants: 3,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn satisfaction_is_monotone(seed in any::<u64>(), drop in any::<prop::sample::Index>()) {
        let mut r = rng(seed);
        let sigma = letters("abc");
        let l = random_finite_language(&mut r, &sigma, 3, 3);
        let words: Vec<_> = l.words().cloned().collect();
        let db = random_db(&mut r, &sigma, &words, &SHAPE);
        let a = finite_to_epsnfa(&l);
        if db.is_empty() {
            return Ok(());
        }
        let f = db.facts().nth(drop.index(db.len())).unwrap().clone();
        let smaller = db.without([&f]);
        prop_assert!(!satisfies(&smaller, &a) || satisfies(&db, &a));
    }

    #[test]
    fn matches_agree_with_satisfaction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = letters("abc");
        let l = random_finite_language(&mut r, &sigma, 3, 3);
        let words: Vec<_> = l.words().cloned().collect();
        let db = random_db(&mut r, &sigma, &words, &SHAPE);
        let a = finite_to_epsnfa(&l);
        let matches = enumerate_matches(&db, &l);
        prop_assert_eq!(satisfies(&db, &a), !matches.is_empty());
        for m in &matches {
            prop_assert!(l.contains(&m.word()));
            prop_assert_eq!(m.walk.iter().cloned().collect::<BTreeSet<Fact>>(), m.facts.clone());
            prop_assert!(m.walk.windows(2).all(|p| p[0].head == p[1].tail));
        }
        if let Some(w) = find_walk(&db, &a) {
            prop_assert!(a.accepts(&rpq_resilience::lang::Word::from_letters(w.iter().map(|f| f.label.clone()).collect())));
        }
    }

    #[test]
    fn hitting_sets_equal_set_resilience(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = letters("abc");
        let l = random_finite_language(&mut r, &sigma, 3, 3);
        let words: Vec<_> = l.words().cloned().collect();
        let db = random_db(&mut r, &sigma, &words, &SHAPE).to_set_semantics();
        let facts: Vec<Fact> = db.facts().cloned().collect();
        let edges: Vec<BTreeSet<Fact>> = enumerate_matches(&db, &l).into_iter().map(|m| m.facts).collect();
        let mhs = min_hitting_set_bruteforce(&facts, &edges, |_| 1);
        let exact = resilience_exact(&db, &finite_to_epsnfa(&l), &Limits::default()).unwrap();
        prop_assert_eq!(exact.value.finite(), Some(mhs));
    }

    #[test]
    fn text_roundtrip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = letters("abc");
        let db = random_db(&mut r, &sigma, &[], &SHAPE);
        prop_assert_eq!(GraphDb::parse(&db.serialize()).unwrap(), db);
    }
}
