use std::collections::BTreeSet;

use crate::lang::Letter;

use super::{determinize_over, is_subset, product, AutomataError, Dfa, EpsNfa};

/// Automaton for `Σ⁺LΣ* ∪ Σ*LΣ⁺` over the letters of `a`.
fn strictly_padded(a: &EpsNfa) -> EpsNfa {
    padded(a, true, false).union(&padded(a, false, true))
}

/// `Σ^? L Σ^?` where each side is `Σ⁺` when `*_plus`, otherwise `Σ*`.
fn padded(a: &EpsNfa, left_plus: bool, right_plus: bool) -> EpsNfa {
    let sigma: Vec<Letter> = a.alphabet().iter().cloned().collect();
    let mut out = a.clone();
    out.initial.clear();
    out.finals.clear();
    let l0 = out.add_state();
    let l1 = out.add_state();
    let r1 = out.add_state();
    out.set_initial(l0);
    out.set_final(r1);
    for x in &sigma {
        out.add_transition(l0, Some(x.clone()), l1);
        out.add_transition(l1, Some(x.clone()), l1);
        out.add_transition(r1, Some(x.clone()), r1);
    }
    if !left_plus {
        out.add_transition(l0, None, l1);
    }
    for &i in a.initial() {
        out.add_transition(l1, None, i);
    }
    for &f in a.finals() {
        if right_plus {
            for x in &sigma {
                out.add_transition(f, Some(x.clone()), r1);
            }
        } else {
            out.add_transition(f, None, r1);
        }
    }
    out
}

/// Minimal DFA for `red(L) = L \ (Σ⁺LΣ* ∪ Σ*LΣ⁺)`.
pub fn reduce_regular(a: &EpsNfa, cap: usize) -> Result<Dfa, AutomataError> {
    let sigma = a.alphabet().clone();
    let not_padded = determinize_over(&strictly_padded(a), &sigma, cap)?.complement();
    let red = product(a, &not_padded.to_eps_nfa());
    Ok(determinize_over(&red, &sigma, cap)?.minimize())
}

/// Whether `L ∩ (Σ⁺LΣ* ∪ Σ*LΣ⁺)` is empty.
pub fn is_reduced_regular(a: &EpsNfa) -> bool {
    product(a, &strictly_padded(a)).is_empty()
}

fn two_phase(a: &EpsNfa) -> (EpsNfa, usize) {
    let n = a.num_states();
    let mut out = EpsNfa::with_alphabet(a.alphabet().iter().cloned());
    out.add_states(2 * n);
    for t in a.transitions() {
        out.add_transition(t.from, t.label.clone(), t.to);
        out.add_transition(t.from + n, t.label.clone(), t.to + n);
    }
    for &i in a.initial() {
        out.set_initial(i);
    }
    for &f in a.finals() {
        out.set_final(f + n);
    }
    (out, n)
}

/// Automaton for `{αeβ | αβ ∈ L}`.
pub fn insert_one(a: &EpsNfa, e: &Letter) -> EpsNfa {
    let (mut out, n) = two_phase(a);
    for s in 0..n {
        out.add_transition(s, Some(e.clone()), s + n);
    }
    out
}

/// Automaton for `{αβ | αeβ ∈ L}`.
pub fn delete_one(a: &EpsNfa, e: &Letter) -> EpsNfa {
    let (mut out, n) = two_phase(a);
    for t in a.transitions() {
        if t.label.as_ref() == Some(e) {
            out.add_transition(t.from, None, t.to + n);
        }
    }
    out
}

/// `e` is neutral iff inserting or deleting one `e` never leaves `L`.
pub fn is_neutral_letter(a: &EpsNfa, e: &Letter, cap: usize) -> Result<bool, AutomataError> {
    Ok(is_subset(&insert_one(a, e), a, cap)? && is_subset(&delete_one(a, e), a, cap)?)
}

pub fn neutral_letters(a: &EpsNfa, cap: usize) -> Result<BTreeSet<Letter>, AutomataError> {
    let mut out = BTreeSet::new();
    for e in a.alphabet() {
        if is_neutral_letter(a, e, cap)? {
            out.insert(e.clone());
        }
    }
    Ok(out)
}
