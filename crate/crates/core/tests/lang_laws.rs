use std::collections::BTreeSet;

use proptest::prelude::*;
use rpq_resilience::lang::{
    is_infix, is_strict_infix, maximal_gap_words, mirror_finite, reduce_finite, FiniteLanguage, Letter, Word,
};

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 1..=max_len)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|i| Letter::from((b'a' + i) as char)).collect()))
}

fn language() -> impl Strategy<Value = FiniteLanguage> {
    prop::collection::vec(word(5), 1..5).prop_map(FiniteLanguage::from_words)
}

/// Maximal gap, then maximal length, by direct enumeration of letter pairs.
fn gap_oracle(l: &FiniteLanguage) -> Option<(usize, BTreeSet<Word>)> {
    let gaps: Vec<(usize, &Word)> = l
        .words()
        .flat_map(|w| {
            let ls = w.letters();
            (0..ls.len()).flat_map(move |i| {
                ((i + 1)..ls.len())
                    .filter(move |&j| ls[i] == ls[j])
                    .map(move |j| (j - i - 1, w))
            })
        })
        .collect();
    let g = gaps.iter().map(|(g, _)| *g).max()?;
    let len = gaps.iter().filter(|(x, _)| *x == g).map(|(_, w)| w.len()).max()?;
    Some((
        g,
        gaps.iter()
            .filter(|(x, w)| *x == g && w.len() == len)
            .map(|(_, w)| (*w).clone())
            .collect(),
    ))
}

proptest! {
    #[test]
    fn reduce_is_idempotent(l in language()) {
        let r = reduce_finite(&l);
        prop_assert_eq!(reduce_finite(&r), r.clone());
        prop_assert!(r.is_reduced());
        prop_assert!(r.words().all(|w| l.contains(w)));
    }

    #[test]
    fn mirror_is_an_involution(l in language()) {
        prop_assert_eq!(mirror_finite(&mirror_finite(&l)), l.clone());
        prop_assert_eq!(mirror_finite(&l).is_reduced(), l.is_reduced());
        prop_assert_eq!(reduce_finite(&mirror_finite(&l)), mirror_finite(&reduce_finite(&l)));
    }

    #[test]
    fn strict_infix_is_shorter_infix(a in word(4), b in word(6)) {
        prop_assert_eq!(is_strict_infix(&a, &b), is_infix(&a, &b) && a.len() < b.len());
    }

    #[test]
    fn maximal_gap_matches_enumeration(l in language()) {
        match (maximal_gap_words(&l), gap_oracle(&l)) {
            (Err(_), None) => {}
            (Ok(found), Some((g, words))) => {
                let got: BTreeSet<Word> = found.iter().map(|m| m.word.clone()).collect();
                prop_assert_eq!(got, words);
                for m in &found {
                    let d = &m.decomposition;
                    prop_assert_eq!(d.gap(), g);
                    prop_assert_eq!(&m.word.letters()[d.first], &d.letter);
                    prop_assert_eq!(&m.word.letters()[d.second], &d.letter);
                    let rebuilt = d.beta(&m.word)
                        .concat(&Word::from_letters(vec![d.letter.clone()]))
                        .concat(&d.gamma(&m.word))
                        .concat(&Word::from_letters(vec![d.letter.clone()]))
                        .concat(&d.delta(&m.word));
                    prop_assert_eq!(&rebuilt, &m.word);
                }
            }
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.map(|v| v.len()), b),
        }
    }

    #[test]
    fn word_list_roundtrip(l in language()) {
        prop_assert_eq!(FiniteLanguage::parse_word_list(&l.to_word_list()).unwrap(), l);
    }
}
