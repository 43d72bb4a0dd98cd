//! Resilience solvers and the dispatcher choosing among them.

mod bcl;
mod exact;
mod local;
mod submod;

pub use bcl::{extract_word_list, resilience_bcl};
pub use exact::{min_hitting_set_bruteforce, resilience_exact};
pub use local::resilience_local;
pub use submod::{chain_cut_function, resilience_submod, resilience_submod_pattern};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{finite_to_epsnfa, reduce_regular, AutomataError, DEFAULT_STATE_CAP};
use crate::classifier::{classify_with, ClassifyOptions, LanguageSpec, Status, Witness};
use crate::flow::FlowError;
use crate::graphdb::{Fact, GraphDb, GraphDbError, ResilienceValue};
use crate::lang::reduce_finite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Local,
    Bcl,
    Submod,
    Exact,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Local => "local",
            Method::Bcl => "bcl",
            Method::Submod => "submod",
            Method::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semantics {
    Set,
    #[default]
    Bag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverChoice {
    #[default]
    Auto,
    Local,
    Bcl,
    Submod,
    Exact,
}

impl FromStr for SolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(SolverChoice::Auto),
            "local" => Ok(SolverChoice::Local),
            "bcl" => Ok(SolverChoice::Bcl),
            "submod" => Ok(SolverChoice::Submod),
            "exact" => Ok(SolverChoice::Exact),
            _ => Err(format!("unknown solver {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of facts for the exact solver (at most 64).
    pub exact_fact_cap: usize,
    /// Maximum number of branching elements for the submod solver.
    pub submod_cap: usize,
    pub state_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact_fact_cap: 22,
            submod_cap: 20,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("solver refused: {0}")]
    Refused(String),
    #[error("too many {what}: {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("not a chain language (letter {letter}): {msg}")]
    Structure { letter: String, msg: String },
    #[error("no polynomial solver applies ({status}) and the exact solver is over its cap: {cause}")]
    Unclassified { status: String, cause: String },
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Db(#[from] GraphDbError),
}

impl SolverError {
    /// Whether the error comes from a size or resource bound.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            SolverError::CapExceeded { .. }
                | SolverError::Unclassified { .. }
                | SolverError::Automata(AutomataError::StateCapExceeded { .. })
                | SolverError::Automata(AutomataError::MonoidCapExceeded { .. })
                | SolverError::Flow(FlowError::Overflow)
                | SolverError::Db(GraphDbError::Overflow)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResilienceAnswer {
    pub value: ResilienceValue,
    /// A minimum contingency set, present when the value is finite.
    pub contingency: Option<BTreeSet<Fact>>,
    pub method: Method,
}

impl ResilienceAnswer {
    pub fn finite(value: u64, contingency: BTreeSet<Fact>, method: Method) -> Self {
        ResilienceAnswer {
            value: ResilienceValue::Finite(value),
            contingency: Some(contingency),
            method,
        }
    }

    pub fn infinite(method: Method) -> Self {
        ResilienceAnswer {
            value: ResilienceValue::Infinite,
            contingency: None,
            method,
        }
    }
}

/// Resilience of `D` for the given language, under the chosen semantics
/// and solver. `Auto` takes the first polynomial method the classifier
/// justifies, falling back to the exact solver.
pub fn resilience(
    db: &GraphDb,
    spec: &LanguageSpec,
    semantics: Semantics,
    choice: SolverChoice,
    limits: &Limits,
) -> Result<ResilienceAnswer, SolverError> {
    let coerced;
    let db = match semantics {
        Semantics::Set => {
            coerced = db.to_set_semantics();
            &coerced
        }
        Semantics::Bag => db,
    };
    let a = spec.to_epsnfa();
    match choice {
        SolverChoice::Exact => resilience_exact(db, &a, limits),
        SolverChoice::Local => resilience_local(db, &a, false, limits),
        SolverChoice::Bcl => {
            let words = match spec {
                LanguageSpec::Finite(l) => l.clone(),
                _ => extract_word_list(&a)?,
            };
            resilience_bcl(db, &words)
        }
        SolverChoice::Submod => {
            let words = spec
                .as_finite()
                .ok_or_else(|| SolverError::Refused("submod solver needs a finite language".into()))?;
            let pattern = crate::classifier::matches_submod_pattern(&reduce_finite(&words))
                .ok_or_else(|| SolverError::Refused(format!("{words} is not of the form a₁…aₙ|aₙ₋₁aₙ₊₁")))?;
            resilience_submod_pattern(db, &pattern, limits)
        }
        SolverChoice::Auto => {
            let verdict = classify_with(
                spec,
                ClassifyOptions {
                    state_cap: limits.state_cap,
                },
            );
            let attempt = match (verdict.status, verdict.method, &verdict.witness) {
                (Status::Ptime, Some(Method::Local), _) => {
                    let red = match &verdict.reduced {
                        Some(l) => finite_to_epsnfa(l),
                        None => reduce_regular(&a, limits.state_cap)?.to_eps_nfa(),
                    };
                    Some(resilience_local(db, &red, true, limits))
                }
                (Status::Ptime, Some(Method::Bcl), _) => {
                    Some(resilience_bcl(db, verdict.reduced.as_ref().expect("finite verdict")))
                }
                (Status::Ptime, Some(Method::Submod), Some(Witness::Submod(p))) => {
                    match resilience_submod_pattern(db, p, limits) {
                        Err(SolverError::CapExceeded { .. }) => None,
                        r => Some(r),
                    }
                }
                _ => None,
            };
            if let Some(answer) = attempt {
                return answer;
            }
            resilience_exact(db, &a, limits).map_err(|e| match e {
                SolverError::CapExceeded { .. } => SolverError::Unclassified {
                    status: verdict.status.to_string(),
                    cause: e.to_string(),
                },
                e => e,
            })
        }
    }
}
