mod common;

use common::{letters, random_db, random_finite_language, random_regex, rng, DbShape};
use proptest::prelude::*;
use rpq_resilience::automata::{finite_to_epsnfa, EpsNfa};
use rpq_resilience::classifier::{matches_submod_pattern, LanguageSpec};
use rpq_resilience::graphdb::{satisfies, GraphDb, ResilienceValue};
use rpq_resilience::lang::{lang, mirror_finite, parse_regex, FiniteLanguage, Letter};
use rpq_resilience::solvers::{
    resilience, resilience_bcl, resilience_exact, resilience_local, resilience_submod_pattern, Limits,
    ResilienceAnswer, Semantics, SolverChoice,
};

const SHAPE: DbShape = DbShape {
    nodes: 5,
    max_facts: 12,
    max_mult: 4,
    plants: 4,
};

fn instance(seed: u64, l: &FiniteLanguage) -> GraphDb {
    let mut r = rng(seed);
    let sigma: Vec<Letter> = l.alphabet().into_iter().collect();
    let words: Vec<_> = l.words().cloned().collect();
    random_db(&mut r, &sigma, &words, &SHAPE)
}

fn assert_sound(db: &GraphDb, a: &EpsNfa, got: &ResilienceAnswer) -> Result<(), TestCaseError> {
    let exact = resilience_exact(db, a, &Limits::default()).unwrap();
    prop_assert_eq!(got.value, exact.value);
    if let ResilienceValue::Finite(v) = got.value {
        let c = got.contingency.as_ref().unwrap();
        prop_assert!(!satisfies(&db.without(c), a), "contingency leaves a match");
        prop_assert_eq!(db.cost(c).unwrap(), v);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn local_solver_is_sound(seed in any::<u64>(), which in 0usize..3) {
        let l = ["ab|ad|cd", "abc|abd", "a|bc"][which];
        let l = lang(l);
        let db = instance(seed, &l);
        let a = finite_to_epsnfa(&l);
        assert_sound(&db, &a, &resilience_local(&db, &a, false, &Limits::default()).unwrap())?;
    }

    #[test]
    fn local_solver_on_star_language(seed in any::<u64>()) {
        let mut r = rng(seed);
        let db = random_db(&mut r, &letters("axb"), &[common::words_of("axxb"), common::words_of("ab")], &SHAPE);
        let a = parse_regex("ax*b").map(|r| LanguageSpec::from(r).to_epsnfa()).unwrap();
        assert_sound(&db, &a, &resilience_local(&db, &a, false, &Limits::default()).unwrap())?;
    }

    #[test]
    fn bcl_solver_is_sound(seed in any::<u64>(), which in 0usize..3) {
        let l = lang(["ab|bc", "axyb|bztc|cd|dea", "ab|cb|cd"][which]);
        let db = instance(seed, &l);
        assert_sound(&db, &finite_to_epsnfa(&l), &resilience_bcl(&db, &l).unwrap())?;
    }

    #[test]
    fn submod_solver_is_sound(seed in any::<u64>(), which in 0usize..4) {
        let l = lang(["abc|be", "abcd|ce", "cba|eb", "ab|ac"][which]);
        let pattern = matches_submod_pattern(&l).unwrap();
        let db = instance(seed, &l);
        assert_sound(&db, &finite_to_epsnfa(&l), &resilience_submod_pattern(&db, &pattern, &Limits::default()).unwrap())?;
    }

    #[test]
    fn auto_agrees_with_exact(seed in any::<u64>(), which in 0usize..6) {
        let l = lang(["ab|bc", "abc|be", "ab|ad|cd", "aa", "abc|bcd", "a|ab"][which]);
        let db = instance(seed, &l);
        let got = resilience(&db, &l.clone().into(), Semantics::Bag, SolverChoice::Auto, &Limits::default()).unwrap();
        assert_sound(&db, &finite_to_epsnfa(&l), &got)?;
    }

    #[test]
    fn set_semantics_is_bag_with_unit_multiplicities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = letters("abc");
        let l = random_finite_language(&mut r, &sigma, 3, 3);
        let db = instance(seed, &l);
        let spec: LanguageSpec = l.into();
        let set = resilience(&db, &spec, Semantics::Set, SolverChoice::Exact, &Limits::default()).unwrap();
        let bag = resilience(&db.to_set_semantics(), &spec, Semantics::Bag, SolverChoice::Exact, &Limits::default()).unwrap();
        prop_assert_eq!(set.value, bag.value);
    }

    #[test]
    fn deleting_a_fact_never_increases_resilience(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let mut r = rng(seed);
        let l = random_finite_language(&mut r, &letters("abc"), 3, 3);
        let db = instance(seed, &l);
        if db.is_empty() {
            return Ok(());
        }
        let a = finite_to_epsnfa(&l);
        let f = db.facts().nth(pick.index(db.len())).unwrap().clone();
        let before = resilience_exact(&db, &a, &Limits::default()).unwrap().value.finite().unwrap();
        let after = resilience_exact(&db.without([&f]), &a, &Limits::default()).unwrap().value.finite().unwrap();
        prop_assert!(after <= before);
    }

    #[test]
    fn zero_and_infinity_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let re = random_regex(&mut r, &letters("ab"), 3);
        let a = LanguageSpec::from(re).to_epsnfa();
        let db = random_db(&mut r, &letters("ab"), &[], &SHAPE);
        let v = resilience_exact(&db, &a, &Limits::default()).unwrap().value;
        prop_assert_eq!(v == ResilienceValue::Infinite, a.accepts_epsilon());
        prop_assert_eq!(v == ResilienceValue::Finite(0), !satisfies(&db, &a));
    }

    #[test]
    fn mirror_law(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_finite_language(&mut r, &letters("abc"), 3, 3);
        let db = instance(seed, &l);
        let lim = Limits::default();
        let v = resilience_exact(&db, &finite_to_epsnfa(&l), &lim).unwrap().value;
        let m = resilience_exact(&db.reverse_edges(), &finite_to_epsnfa(&mirror_finite(&l)), &lim).unwrap().value;
        prop_assert_eq!(v, m);
    }
}
