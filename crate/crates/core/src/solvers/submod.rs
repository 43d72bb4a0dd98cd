use std::collections::{BTreeMap, BTreeSet};

use crate::automata::finite_to_epsnfa;
use crate::classifier::SubmodPattern;
use crate::graphdb::{Fact, GraphDb, GraphDbError};
use crate::lang::{FiniteLanguage, Letter, Word};

use super::{resilience_local, Limits, Method, ResilienceAnswer, SolverError};

/// Resilience of `{a₁…aₙ, aₙ₋₁aₙ₊₁}` by minimizing over `Z ⊆ adom(D)`
///
/// `f(Z) = Σ_{v∈Z} |aₙ₋₁(_,v)| + Σ_{v∉Z} |aₙ₊₁(v,_)| + RES(a₁…aₙ, D minus the aₙ-facts with tail in Z)`.
///
/// Only elements with both an incoming `aₙ₋₁`-fact and an outgoing
/// `aₙ₊₁`-fact are branched on; the others are placed on their free side.
pub fn resilience_submod(
    db: &GraphDb,
    word: &Word,
    extra: &Letter,
    limits: &Limits,
) -> Result<ResilienceAnswer, SolverError> {
    let n = word.len();
    let mut letters: BTreeSet<&Letter> = word.letters().iter().collect();
    if n < 2 || letters.len() != n || !letters.insert(extra) {
        return Err(SolverError::Refused(format!(
            "submod solver needs n ≥ 2 pairwise distinct letters, got {word} and {extra}"
        )));
    }
    let prev = &word.letters()[n - 2];
    let last = &word.letters()[n - 1];
    let alpha = finite_to_epsnfa(&FiniteLanguage::from_words([word.clone()]));

    let mut incoming: BTreeMap<&str, u64> = BTreeMap::new();
    let mut outgoing: BTreeMap<&str, u64> = BTreeMap::new();
    for (f, m) in db.entries() {
        let slot = if f.label == *prev {
            incoming.entry(f.head.as_str()).or_default()
        } else if f.label == *extra {
            outgoing.entry(f.tail.as_str()).or_default()
        } else {
            continue;
        };
        *slot = slot.checked_add(m).ok_or(GraphDbError::Overflow)?;
    }
    let free: Vec<&str> = incoming.keys().filter(|v| outgoing.contains_key(*v)).copied().collect();
    if free.len() > limits.submod_cap {
        return Err(SolverError::CapExceeded {
            what: "branching elements for the submod solver (try the exact solver)",
            size: free.len(),
            cap: limits.submod_cap,
        });
    }
    // forced: elements without incoming aₙ₋₁ go to Z, the rest out of Z
    let base_z: BTreeSet<&str> = db.adom().into_iter().filter(|v| !incoming.contains_key(v)).collect();

    let evaluate = |z: &BTreeSet<&str>| -> Result<(u64, ResilienceAnswer, BTreeSet<Fact>), SolverError> {
        let mut paid = BTreeSet::new();
        for f in db.facts() {
            let pay = (f.label == *prev && z.contains(f.head.as_str()))
                || (f.label == *extra && !z.contains(f.tail.as_str()));
            if pay {
                paid.insert(f.clone());
            }
        }
        let reduced = db.retain(|f| !(f.label == *last && z.contains(f.tail.as_str())));
        let chain = resilience_local(&reduced, &alpha, true, limits)?;
        let total = db
            .cost(&paid)?
            .checked_add(chain.value.finite().unwrap())
            .ok_or(GraphDbError::Overflow)?;
        Ok((total, chain, paid))
    };

    let mut best: Option<(u64, BTreeSet<Fact>)> = None;
    for mask in 0u64..(1u64 << free.len()) {
        let mut z = base_z.clone();
        z.extend(
            free.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v),
        );
        let (total, chain, paid) = evaluate(&z)?;
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            let mut facts = paid;
            facts.extend(chain.contingency.unwrap_or_default());
            best = Some((total, facts));
        }
    }
    let (value, facts) = best.unwrap();
    Ok(ResilienceAnswer::finite(value, facts, Method::Submod))
}

/// Dispatches on a recognized pattern, reversing the database for the
/// mirrored form.
pub fn resilience_submod_pattern(
    db: &GraphDb,
    pattern: &SubmodPattern,
    limits: &Limits,
) -> Result<ResilienceAnswer, SolverError> {
    if !pattern.mirrored {
        return resilience_submod(db, &pattern.word(), pattern.extra(), limits);
    }
    let mut answer = resilience_submod(&db.reverse_edges(), &pattern.word(), pattern.extra(), limits)?;
    answer.contingency = answer
        .contingency
        .map(|c| c.into_iter().map(|f| f.reversed()).collect());
    Ok(answer)
}

/// `g(Y) = RES(α, D minus the aₙ-facts with tail in Y)`, the set function
/// shown submodular for chain words.
pub fn chain_cut_function(db: &GraphDb, word: &Word, y: &BTreeSet<&str>, limits: &Limits) -> Result<u64, SolverError> {
    let last = word.last().expect("nonempty word");
    let reduced = db.retain(|f| !(f.label == *last && y.contains(f.tail.as_str())));
    let alpha = finite_to_epsnfa(&FiniteLanguage::from_words([word.clone()]));
    Ok(resilience_local(&reduced, &alpha, true, limits)?
        .value
        .finite()
        .unwrap())
}
