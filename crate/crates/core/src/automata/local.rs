use std::collections::BTreeSet;

use serde::Serialize;

use crate::lang::{FiniteLanguage, Letter, Word};

use super::{eps_closure_with, is_subset, AutomataError, Dfa, EpsNfa};

/// The letter statistics an RO-εNFA is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoSummary {
    pub sigma: BTreeSet<Letter>,
    /// Letters that can start an accepted word.
    pub sigma_start: BTreeSet<Letter>,
    /// Letters that can end an accepted word.
    pub sigma_end: BTreeSet<Letter>,
    /// Pairs `(a, b)` that occur consecutively in some accepted word.
    pub pi: BTreeSet<(Letter, Letter)>,
    pub has_epsilon: bool,
}

impl RoSummary {
    pub fn of(a: &EpsNfa) -> RoSummary {
        let t = a.trim();
        let adj = t.adjacency();
        let radj = t.reverse_adjacency();
        let start = eps_closure_with(&adj, t.initial());
        let end = eps_closure_with(&radj, t.finals());
        let mut s = RoSummary {
            sigma: BTreeSet::new(),
            sigma_start: BTreeSet::new(),
            sigma_end: BTreeSet::new(),
            pi: BTreeSet::new(),
            has_epsilon: start.iter().any(|q| t.finals().contains(q)),
        };
        for tr in t.transitions() {
            let Some(a) = &tr.label else { continue };
            s.sigma.insert(a.clone());
            if start.contains(&tr.from) {
                s.sigma_start.insert(a.clone());
            }
            if end.contains(&tr.to) {
                s.sigma_end.insert(a.clone());
            }
            let after = eps_closure_with(&adj, &BTreeSet::from([tr.to]));
            for &q in &after {
                for &(l, _) in &adj[q] {
                    if let Some(b) = l {
                        s.pi.insert((a.clone(), b.clone()));
                    }
                }
            }
        }
        s
    }

    /// The RO-εNFA: `s_a^in -a-> s_a^out` per letter, ε-edges for `Π`.
    pub fn to_ro(&self, alphabet: &BTreeSet<Letter>) -> EpsNfa {
        let mut out = EpsNfa::with_alphabet(alphabet.iter().cloned());
        let letters: Vec<&Letter> = self.sigma.iter().collect();
        let base = out.add_states(2 * letters.len());
        let idx = |l: &Letter| base + 2 * letters.binary_search(&l).unwrap();
        for (i, l) in letters.iter().enumerate() {
            let (s_in, s_out) = (base + 2 * i, base + 2 * i + 1);
            out.add_transition(s_in, Some((*l).clone()), s_out);
            if self.sigma_start.contains(*l) {
                out.set_initial(s_in);
            }
            if self.sigma_end.contains(*l) {
                out.set_final(s_out);
            }
        }
        for (a, b) in &self.pi {
            out.add_transition(idx(a) + 1, None, idx(b));
        }
        if self.has_epsilon {
            let s = out.add_state();
            out.set_initial(s);
            out.set_final(s);
        }
        out
    }
}

/// Read-once εNFA `A'` with `L(A) ⊆ L(A')`, equality iff `L(A)` is local.
pub fn eps_nfa_to_ro(a: &EpsNfa) -> EpsNfa {
    RoSummary::of(a).to_ro(a.alphabet())
}

/// Whether all `a`-transitions of a DFA share one target, for every `a`.
pub fn is_local_dfa(a: &EpsNfa) -> Result<bool, AutomataError> {
    Dfa::from_nfa(a)?;
    let mut target = std::collections::BTreeMap::new();
    Ok(a.transitions()
        .iter()
        .all(|t| *target.entry(t.label.clone()).or_insert(t.to) == t.to))
}

/// Locality of `L(A)`, via `L(eps_nfa_to_ro(A)) ⊆ L(A)`.
pub fn is_local_language(a: &EpsNfa, cap: usize) -> Result<bool, AutomataError> {
    is_subset(&eps_nfa_to_ro(a), a, cap)
}

/// A witness that `αxβ, γxδ ∈ L` but `αxδ ∉ L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartesianViolation {
    #[serde(serialize_with = "crate::serde_display")]
    pub x: Letter,
    #[serde(serialize_with = "crate::serde_display")]
    pub alpha: Word,
    #[serde(serialize_with = "crate::serde_display")]
    pub beta: Word,
    #[serde(serialize_with = "crate::serde_display")]
    pub gamma: Word,
    #[serde(serialize_with = "crate::serde_display")]
    pub delta: Word,
}

impl CartesianViolation {
    pub fn legs_nonempty(&self) -> bool {
        !(self.alpha.is_empty() || self.beta.is_empty() || self.gamma.is_empty() || self.delta.is_empty())
    }
}

impl std::fmt::Display for CartesianViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "x={}, α={}, β={}, γ={}, δ={}",
            self.x, self.alpha, self.beta, self.gamma, self.delta
        )
    }
}

/// First violation in a fixed scan order: word pairs in order, the split of
/// the first word from the right, the split of the second from the left.
pub(crate) fn find_violation(l: &FiniteLanguage, legs_nonempty: bool) -> Option<CartesianViolation> {
    for w1 in l.words() {
        for w2 in l.words() {
            for i in (0..w1.len()).rev() {
                for j in 0..w2.len() {
                    let x = &w1.letters()[i];
                    if *x != w2.letters()[j] {
                        continue;
                    }
                    let v = CartesianViolation {
                        x: x.clone(),
                        alpha: w1.slice(0, i),
                        beta: w1.slice(i + 1, w1.len()),
                        gamma: w2.slice(0, j),
                        delta: w2.slice(j + 1, w2.len()),
                    };
                    if legs_nonempty && !v.legs_nonempty() {
                        continue;
                    }
                    let mut mixed = v.alpha.clone();
                    mixed.push(x.clone());
                    if !l.contains(&mixed.concat(&v.delta)) {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

pub fn letter_cartesian_violation(l: &FiniteLanguage) -> Option<CartesianViolation> {
    find_violation(l, false)
}

pub fn is_letter_cartesian_finite(l: &FiniteLanguage) -> bool {
    letter_cartesian_violation(l).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::tests::{a3, re};
    use crate::automata::{finite_to_epsnfa, is_equivalent, minimal_dfa, DEFAULT_STATE_CAP};
    use crate::lang::{lang, w};

    /// A₂: local DFA for ab|ad|cd.
    fn a2() -> EpsNfa {
        let mut a = EpsNfa::new();
        a.add_states(4);
        a.set_initial(0);
        a.set_final(3);
        a.add_transition(0, Some('a'.into()), 1);
        a.add_transition(0, Some('c'.into()), 2);
        a.add_transition(1, Some('b'.into()), 3);
        a.add_transition(1, Some('d'.into()), 3);
        a.add_transition(2, Some('d'.into()), 3);
        a
    }

    /// A₁: local DFA for ax*b.
    fn a1() -> EpsNfa {
        let mut a = EpsNfa::new();
        a.add_states(3);
        a.set_initial(0);
        a.set_final(2);
        a.add_transition(0, Some('a'.into()), 1);
        a.add_transition(1, Some('x'.into()), 1);
        a.add_transition(1, Some('b'.into()), 2);
        a
    }

    #[test]
    fn ro_examples() {
        let ro = eps_nfa_to_ro(&a2());
        assert!(ro.is_read_once());
        assert!(is_equivalent(&ro, &a3(), DEFAULT_STATE_CAP).unwrap());

        let ro = eps_nfa_to_ro(&re("aa"));
        // Σ_start = Σ_end = {a} and Π = {(a, a)}: the result is a⁺
        assert!(ro.accepts(&w("aa")) && ro.accepts(&w("aaa")) && ro.accepts(&w("a")));
        assert!(!ro.accepts(&w("")));

        let ro = eps_nfa_to_ro(&re("~"));
        assert!(ro.accepts(&w("")));
        assert!(ro.finite_words() == Some(lang("~")));
    }

    #[test]
    fn local_dfa_examples() {
        assert!(is_local_dfa(&a1()).unwrap());
        assert!(is_local_dfa(&a2()).unwrap());
        let aa = minimal_dfa(&re("aa"), DEFAULT_STATE_CAP).unwrap().to_eps_nfa();
        assert!(!is_local_dfa(&aa).unwrap());
        assert!(is_local_dfa(&a3()).is_err());
    }

    #[test]
    fn local_language_examples() {
        assert!(is_local_language(&re("ax*b"), DEFAULT_STATE_CAP).unwrap());
        assert!(is_local_language(&re("ab|ad|cd"), DEFAULT_STATE_CAP).unwrap());
        assert!(!is_local_language(&re("aa"), DEFAULT_STATE_CAP).unwrap());
        assert!(!is_local_language(&re("ab|bc"), DEFAULT_STATE_CAP).unwrap());
        assert!(is_local_language(&re("0"), DEFAULT_STATE_CAP).unwrap());
    }

    #[test]
    fn cartesian_examples() {
        assert!(is_letter_cartesian_finite(&lang("ab|ad|cd")));
        let v = letter_cartesian_violation(&lang("aa")).unwrap();
        assert_eq!((v.alpha, v.beta, v.gamma, v.delta), (w("a"), w(""), w(""), w("a")));
        let v = letter_cartesian_violation(&lang("axb|cxd")).unwrap();
        assert_eq!(v.x, Letter::from('x'));
        assert_eq!((v.alpha, v.beta, v.gamma, v.delta), (w("a"), w("b"), w("c"), w("d")));
        assert!(is_local_language(&finite_to_epsnfa(&lang("ab|ad|cd")), DEFAULT_STATE_CAP).unwrap());
    }
}
