//! Deterministic JSON and DOT documents for silting quivers and endomorphism quivers.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::derived::{Stalk, StalkSum, SummandJson};
use crate::endo::AlgebraQuiver;
use crate::instance::Instance;
use crate::silting::SiltingQuiver;

/// Version of every JSON document the library emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub index: usize,
    pub name: String,
    pub summands: Vec<SummandJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub from: usize,
    pub to: usize,
    /// Index of the exchanged summand in the source's canonical order.
    pub summand: usize,
    pub exchanged: SummandJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiltingQuiverDoc {
    pub schema_version: u32,
    pub quiver: String,
    pub m: usize,
    pub vertices: Vec<VertexDoc>,
    pub arrows: Vec<ArrowDoc>,
    /// Left mutations leaving the domain.
    pub leaving: usize,
}

fn summand(s: Stalk) -> SummandJson {
    SummandJson { id: s.id, shift: s.shift, mult: 1 }
}

pub fn silting_quiver_doc(inst: &Instance, m: usize, sq: &SiltingQuiver) -> SiltingQuiverDoc {
    let vertices = sq
        .vertices
        .iter()
        .enumerate()
        .map(|(index, v)| VertexDoc { index, name: inst.sum_name(v), summands: v.to_json() })
        .collect();
    let mut arrows: Vec<ArrowDoc> = sq
        .arrows
        .iter()
        .map(|&(from, to, k)| ArrowDoc { from, to, summand: k, exchanged: summand(sq.vertices[from].stalks()[k]) })
        .collect();
    arrows.sort_by_key(|a| (a.from, a.summand, a.to));
    SiltingQuiverDoc {
        schema_version: SCHEMA_VERSION,
        quiver: inst.quiver().label(),
        m,
        vertices,
        arrows,
        leaving: sq.leaving,
    }
}

fn pairs(parts: &[SummandJson]) -> String {
    parts.iter().map(|p| format!("({},{})", p.id, p.shift)).collect::<Vec<_>>().join(" ")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn silting_quiver_dot(doc: &SiltingQuiverDoc) -> String {
    let mut out = String::from("digraph silting {\n");
    if !doc.vertices.is_empty() {
        let _ = writeln!(out, "  label=\"{} m={}\";", escape(&doc.quiver), doc.m);
    }
    for v in &doc.vertices {
        let _ = writeln!(out, "  n{} [label=\"{}\", tooltip=\"{}\"];", v.index, pairs(&v.summands), escape(&v.name));
    }
    for a in &doc.arrows {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", a.from, a.to, pairs(&[a.exchanged]));
    }
    out.push_str("}\n");
    out
}

/// The quiver of `End(T)` with arrow multiplicities as edge labels.
pub fn endo_quiver_dot(inst: &Instance, t: &StalkSum, q: &AlgebraQuiver) -> String {
    let mut out = String::from("digraph endo {\n");
    for (i, s) in t.stalks().into_iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", escape(&inst.stalk_name(s)));
    }
    for (a, row) in q.arrows.iter().enumerate() {
        for (b, &k) in row.iter().enumerate() {
            if k > 0 {
                let _ = writeln!(out, "  v{a} -> v{b} [label=\"{k}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::silting::silting_quiver;

    #[test]
    fn a2_documents() {
        let inst = Instance::parse("A2").unwrap();
        let doc = silting_quiver_doc(&inst, 1, &silting_quiver(&inst, 1).unwrap());
        let dot = silting_quiver_dot(&doc);
        assert_eq!(dot.matches("[label=\"(").count(), 5 + doc.arrows.len());
        assert_eq!(doc.vertices.len(), 5);
        let text = serde_json::to_string(&doc).unwrap();
        let back: SiltingQuiverDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(silting_quiver_dot(&doc), dot);
    }

    #[test]
    fn empty_quiver() {
        let doc = silting_quiver_doc(&Instance::parse("A1").unwrap(), 1, &SiltingQuiver::default());
        assert_eq!(silting_quiver_dot(&doc), "digraph silting {\n}\n");
    }
}
