use std::collections::HashMap;

use serde::Serialize;

use crate::lang::Word;

use super::{determinize, AutomataError, EpsNfa};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Aperiodicity {
    pub aperiodic: bool,
    pub monoid_size: usize,
    /// A word `σ` whose powers cycle with period `> 1` in the monoid.
    #[serde(serialize_with = "crate::serde_display_opt")]
    pub witness: Option<Word>,
    pub period: Option<usize>,
}

/// Transition monoid of the minimal complete DFA, checked for nontrivial
/// cyclic subgroups. Aborts past `cap` elements.
pub fn aperiodicity(a: &EpsNfa, cap: usize) -> Result<Aperiodicity, AutomataError> {
    let dfa = determinize(a, cap)?.minimize().complete();
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    let generators: Vec<Vec<u32>> = (0..k)
        .map(|i| (0..n).map(|s| dfa.next_index(s, i).unwrap() as u32).collect())
        .collect();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![(identity, Word::empty())];
    let mut i = 0;
    while i < elements.len() {
        for (g, gen) in generators.iter().enumerate() {
            let next: Vec<u32> = elements[i].0.iter().map(|&s| gen[s as usize]).collect();
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(AutomataError::MonoidCapExceeded { cap });
                }
                let mut word = elements[i].1.clone();
                word.push(dfa.alphabet()[g].clone());
                index.insert(next.clone(), elements.len());
                elements.push((next, word));
            }
        }
        i += 1;
    }
    let compose = |m: &[u32], p: &[u32]| -> Vec<u32> { m.iter().map(|&s| p[s as usize]).collect() };
    for (m, word) in &elements {
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut power = m.clone();
        let mut exp = 1;
        while !seen.contains_key(&power) {
            seen.insert(power.clone(), exp);
            power = compose(&power, m);
            exp += 1;
        }
        let period = exp - seen[&power];
        if period > 1 {
            return Ok(Aperiodicity {
                aperiodic: false,
                monoid_size: elements.len(),
                witness: Some(word.clone()),
                period: Some(period),
            });
        }
    }
    Ok(Aperiodicity {
        aperiodic: true,
        monoid_size: elements.len(),
        witness: None,
        period: None,
    })
}

pub fn is_aperiodic(a: &EpsNfa, cap: usize) -> Result<bool, AutomataError> {
    Ok(aperiodicity(a, cap)?.aperiodic)
}
