//! Resilience of regular path queries: automata, graph databases, min-cut
//! based solvers, a complexity classifier and a hardness-gadget checker.

pub mod automata;
pub mod classifier;
pub mod flow;
pub mod gadgets;
pub mod graphdb;
pub mod lang;
pub mod solvers;

use std::fmt::Display;

use serde::Serializer;

pub(crate) fn serde_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn serde_display_opt<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
