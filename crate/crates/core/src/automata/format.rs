//! Line-oriented automaton format:
//!
//! ```text
//! states 3
//! initial 0
//! final 2
//! alphabet a b x
//! 0    a    1
//! 1    x    1
//! 1    b    2
//! ```
//!
//! `EPS` labels an ε-transition; `alphabet` is optional; `#` starts a comment.

use thiserror::Error;

use crate::lang::Letter;

use super::EpsNfa;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("automaton line {line}: {msg}")]
pub struct AutomatonParseError {
    pub line: usize,
    pub msg: String,
}

pub(super) fn write(a: &EpsNfa) -> String {
    let join = |s: &std::collections::BTreeSet<usize>| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("states {}\n", a.num_states());
    out.push_str(format!("initial {}", join(a.initial())).trim_end());
    out.push('\n');
    out.push_str(format!("final {}", join(a.finals())).trim_end());
    out.push('\n');
    if !a.alphabet().is_empty() {
        let names: Vec<&str> = a.alphabet().iter().map(Letter::name).collect();
        out.push_str(&format!("alphabet {}\n", names.join(" ")));
    }
    for t in a.transitions() {
        let label = t.label.as_ref().map_or("EPS", Letter::name);
        out.push_str(&format!("{}\t{}\t{}\n", t.from, label, t.to));
    }
    out
}

pub(super) fn parse(text: &str) -> Result<EpsNfa, AutomatonParseError> {
    let mut a: Option<EpsNfa> = None;
    let mut pending_initial = Vec::new();
    let mut pending_final = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| AutomatonParseError { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let state = |tok: &str, a: &EpsNfa| -> Result<usize, AutomatonParseError> {
            let s: usize = tok.parse().map_err(|_| err(format!("bad state id {tok:?}")))?;
            if s >= a.num_states() {
                return Err(err(format!("state {s} out of range (states {})", a.num_states())));
            }
            Ok(s)
        };
        match tokens[0] {
            "states" => {
                if a.is_some() {
                    return Err(err("duplicate 'states' header".into()));
                }
                let [_, n] = tokens[..] else {
                    return Err(err("expected 'states N'".into()));
                };
                let n: usize = n.parse().map_err(|_| err(format!("bad state count {n:?}")))?;
                let mut fresh = EpsNfa::new();
                fresh.add_states(n);
                a = Some(fresh);
            }
            kw @ ("initial" | "final" | "alphabet") => {
                let Some(a) = a.as_mut() else {
                    return Err(err(format!("'{kw}' before 'states'")));
                };
                for tok in &tokens[1..] {
                    match kw {
                        "initial" => pending_initial.push(state(tok, a)?),
                        "final" => pending_final.push(state(tok, a)?),
                        _ => a.add_letter(parse_label(tok).map_err(err)?),
                    }
                }
            }
            _ => {
                let Some(a) = a.as_mut() else {
                    return Err(err("transition before 'states'".into()));
                };
                let [src, label, dst] = tokens[..] else {
                    return Err(err(format!("expected 'src label dst', got {content:?}")));
                };
                let from = state(src, a)?;
                let to = state(dst, a)?;
                let label = if label == "EPS" {
                    None
                } else {
                    Some(parse_label(label).map_err(err)?)
                };
                a.add_transition(from, label, to);
            }
        }
    }
    let mut a = a.ok_or(AutomatonParseError {
        line: 0,
        msg: "missing 'states' header".into(),
    })?;
    for s in pending_initial {
        a.set_initial(s);
    }
    for s in pending_final {
        a.set_final(s);
    }
    Ok(a)
}

fn parse_label(tok: &str) -> Result<Letter, String> {
    let name = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(tok);
    if name.is_empty() {
        return Err("empty label".into());
    }
    Ok(Letter::new(name))
}
