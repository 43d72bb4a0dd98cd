use std::collections::{BTreeMap, VecDeque};

use crate::automata::{determinize, AutomataError, CartesianViolation, Dfa, EpsNfa};
use crate::lang::{FiniteLanguage, Word};

use super::ClassifierError;

/// Exhaustive four-legged search on an explicit reduced language.
pub fn is_four_legged_finite(l: &FiniteLanguage) -> Result<Option<CartesianViolation>, ClassifierError> {
    if !l.is_reduced() {
        return Err(ClassifierError::NotReduced(l.to_string()));
    }
    Ok(crate::automata::local::find_violation(l, true))
}

/// Exact four-legged decision on the minimal DFA of `L(a)`, which is
/// assumed reduced.
///
/// Looks for states `p = δ(αx)`, `q = δ(γx)` with `α, γ` nonempty, a
/// nonempty `β` leading `p` to acceptance, and a nonempty `δ` accepted from
/// `q` but rejected from `p`.
pub fn four_legged_regular(a: &EpsNfa, cap: usize) -> Result<Option<CartesianViolation>, AutomataError> {
    let dfa = determinize(a, cap)?.minimize().complete();
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    let step = |s: usize, i: usize| dfa.next_index(s, i).unwrap();

    // nonempty words from the start, one per reached state
    let nonempty_from_start = nonempty_reach(&dfa, dfa.start());
    // nonempty words from each state to acceptance
    let to_final = nonempty_to_final(&dfa);

    // d0[(q, p)]: shortest word leading q into F and p out of F
    let goal = |q: usize, p: usize| dfa.is_final(q) && !dfa.is_final(p);
    let mut d0 = vec![usize::MAX; n * n];
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for q in 0..n {
        for p in 0..n {
            for i in 0..k {
                rev[step(q, i) * n + step(p, i)].push(q * n + p);
            }
        }
    }
    let mut queue = VecDeque::new();
    for q in 0..n {
        for p in 0..n {
            if goal(q, p) {
                d0[q * n + p] = 0;
                queue.push_back(q * n + p);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &rev[x] {
            if d0[y] == usize::MAX {
                d0[y] = d0[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let separating = |q: usize, p: usize| -> Option<Word> {
        let first = (0..k)
            .filter(|&i| d0[step(q, i) * n + step(p, i)] != usize::MAX)
            .min_by_key(|&i| d0[step(q, i) * n + step(p, i)])?;
        let mut word = Word::empty();
        word.push(dfa.alphabet()[first].clone());
        let (mut q, mut p) = (step(q, first), step(p, first));
        while d0[q * n + p] > 0 {
            let i = (0..k)
                .find(|&i| d0[step(q, i) * n + step(p, i)] == d0[q * n + p] - 1)
                .unwrap();
            word.push(dfa.alphabet()[i].clone());
            (q, p) = (step(q, i), step(p, i));
        }
        Some(word)
    };

    for (xi, x) in dfa.alphabet().iter().enumerate() {
        let mut after_x: BTreeMap<usize, &Word> = BTreeMap::new();
        for (r, alpha) in &nonempty_from_start {
            after_x.entry(step(*r, xi)).or_insert(alpha);
        }
        for (&p, alpha) in &after_x {
            let Some(beta) = &to_final[p] else { continue };
            for (&q, gamma) in &after_x {
                if let Some(delta) = separating(q, p) {
                    return Ok(Some(CartesianViolation {
                        x: x.clone(),
                        alpha: (*alpha).clone(),
                        beta: beta.clone(),
                        gamma: (*gamma).clone(),
                        delta,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// For each state reachable from `from` by a nonempty word, a shortest one.
fn nonempty_reach(dfa: &Dfa, from: usize) -> BTreeMap<usize, Word> {
    let mut out: BTreeMap<usize, Word> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for (i, l) in dfa.alphabet().iter().enumerate() {
        let t = dfa.next_index(from, i).unwrap();
        if let std::collections::btree_map::Entry::Vacant(e) = out.entry(t) {
            e.insert(Word::from_letters(vec![l.clone()]));
            queue.push_back(t);
        }
    }
    while let Some(s) = queue.pop_front() {
        let base = out[&s].clone();
        for (i, l) in dfa.alphabet().iter().enumerate() {
            let t = dfa.next_index(s, i).unwrap();
            if let std::collections::btree_map::Entry::Vacant(e) = out.entry(t) {
                let mut w = base.clone();
                w.push(l.clone());
                e.insert(w);
                queue.push_back(t);
            }
        }
    }
    out
}

fn nonempty_to_final(dfa: &Dfa) -> Vec<Option<Word>> {
    let n = dfa.num_states();
    // shortest possibly-empty word to acceptance, then prepend one letter
    let mut dist = vec![usize::MAX; n];
    let mut rev = vec![Vec::new(); n];
    for s in 0..n {
        for i in 0..dfa.alphabet().len() {
            rev[dfa.next_index(s, i).unwrap()].push(s);
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&s| dfa.is_final(s)).collect();
    for &s in &queue {
        dist[s] = 0;
    }
    while let Some(s) = queue.pop_front() {
        for &p in &rev[s] {
            if dist[p] == usize::MAX {
                dist[p] = dist[s] + 1;
                queue.push_back(p);
            }
        }
    }
    let k = dfa.alphabet().len();
    (0..n)
        .map(|s| {
            let first = (0..k)
                .filter(|&i| dist[dfa.next_index(s, i).unwrap()] != usize::MAX)
                .min_by_key(|&i| dist[dfa.next_index(s, i).unwrap()])?;
            let mut w = Word::from_letters(vec![dfa.alphabet()[first].clone()]);
            let mut cur = dfa.next_index(s, first).unwrap();
            while dist[cur] > 0 {
                let i = (0..k)
                    .find(|&i| dist[dfa.next_index(cur, i).unwrap()] == dist[cur] - 1)
                    .unwrap();
                w.push(dfa.alphabet()[i].clone());
                cur = dfa.next_index(cur, i).unwrap();
            }
            Some(w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{regex_to_epsnfa, DEFAULT_STATE_CAP};
    use crate::lang::{lang, parse_regex, w, Letter};

    fn re(s: &str) -> EpsNfa {
        regex_to_epsnfa(&parse_regex(s).unwrap())
    }

    #[test]
    fn finite_examples() {
        let v = is_four_legged_finite(&lang("axb|cxd")).unwrap().unwrap();
        assert_eq!(v.x, Letter::from('x'));
        assert_eq!((v.alpha, v.beta, v.gamma, v.delta), (w("a"), w("b"), w("c"), w("d")));
        assert_eq!(is_four_legged_finite(&lang("aa")).unwrap(), None);
        assert_eq!(is_four_legged_finite(&lang("ab|bc")).unwrap(), None);
        assert!(is_four_legged_finite(&lang("a|ab")).is_err());
    }

    #[test]
    fn regular_examples() {
        let check = |s: &str| {
            let a = re(s);
            four_legged_regular(&a, DEFAULT_STATE_CAP).unwrap().map(|v| {
                let mut good = v.alpha.clone();
                good.push(v.x.clone());
                let mut other = v.gamma.clone();
                other.push(v.x.clone());
                assert!(v.legs_nonempty());
                assert!(a.accepts(&good.concat(&v.beta)));
                assert!(a.accepts(&other.concat(&v.delta)));
                assert!(!a.accepts(&good.concat(&v.delta)));
            })
        };
        assert!(check("ax*b|cxd").is_some());
        assert!(check("be*c|de*f").is_some());
        assert!(check("b(aa)*d").is_some());
        assert!(check("ax*b|xd").is_none());
        assert!(check("ax*b").is_none());
        assert!(check("aa").is_none());
        assert!(check("axb|cxd").is_some());
    }
}
