use crate::lang::{FiniteLanguage, Regex};

use super::{EpsNfa, StateId};

/// Thompson-style construction: one fragment per node, glued with ε.
pub fn regex_to_epsnfa(r: &Regex) -> EpsNfa {
    let mut a = EpsNfa::new();
    let (i, f) = build(&mut a, r);
    a.set_initial(i);
    a.set_final(f);
    a
}

fn build(a: &mut EpsNfa, r: &Regex) -> (StateId, StateId) {
    match r {
        Regex::Empty => (a.add_state(), a.add_state()),
        Regex::Epsilon => {
            let s = a.add_state();
            (s, s)
        }
        Regex::Letter(l) => {
            let i = a.add_state();
            let f = a.add_state();
            a.add_transition(i, Some(l.clone()), f);
            (i, f)
        }
        Regex::Concat(parts) => {
            if parts.is_empty() {
                let s = a.add_state();
                return (s, s);
            }
            let (first, mut last) = build(a, &parts[0]);
            for p in &parts[1..] {
                let (i, f) = build(a, p);
                a.add_transition(last, None, i);
                last = f;
            }
            (first, last)
        }
        Regex::Union(parts) => {
            let i = a.add_state();
            let f = a.add_state();
            for p in parts {
                let (pi, pf) = build(a, p);
                a.add_transition(i, None, pi);
                a.add_transition(pf, None, f);
            }
            (i, f)
        }
        Regex::Star(inner) => {
            let i = a.add_state();
            let f = a.add_state();
            let (pi, pf) = build(a, inner);
            a.add_transition(i, None, pi);
            a.add_transition(pf, None, f);
            a.add_transition(i, None, f);
            a.add_transition(pf, None, pi);
            (i, f)
        }
    }
}

/// Trie automaton for an explicit word list.
pub fn finite_to_epsnfa(l: &FiniteLanguage) -> EpsNfa {
    let mut a = EpsNfa::new();
    let root = a.add_state();
    a.set_initial(root);
    let mut children: std::collections::BTreeMap<(StateId, crate::lang::Letter), StateId> = Default::default();
    for w in l.words() {
        let mut s = root;
        for letter in w.letters() {
            s = match children.get(&(s, letter.clone())) {
                Some(&t) => t,
                None => {
                    let t = a.add_state();
                    a.add_transition(s, Some(letter.clone()), t);
                    children.insert((s, letter.clone()), t);
                    t
                }
            };
        }
        a.set_final(s);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{lang, parse_regex, w};

    #[test]
    fn thompson_examples() {
        let a = regex_to_epsnfa(&parse_regex("ax*b").unwrap());
        for s in ["ab", "axb", "axxb"] {
            assert!(a.accepts(&w(s)));
        }
        assert!(!a.accepts(&w("a")));
        let e = regex_to_epsnfa(&parse_regex("~").unwrap());
        assert!(e.accepts(&w("")));
        assert!(!e.accepts(&w("a")));
        let aa = regex_to_epsnfa(&parse_regex("aa").unwrap());
        assert_eq!(aa.finite_words(), Some(lang("aa")));
        assert!(regex_to_epsnfa(&parse_regex("0").unwrap()).is_empty());
    }

    #[test]
    fn trie_roundtrip() {
        let l = lang("ab|abc|~|cd");
        assert_eq!(finite_to_epsnfa(&l).finite_words(), Some(l));
    }
}
