use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Direction, MultiTapeAutomaton};
use crate::error::{Error, Result};
use crate::numeration::Base;

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    base: Base,
    tapes: usize,
    direction: Direction,
    states: usize,
    initial: u32,
    finals: Vec<u32>,
    transitions: Vec<(u32, Vec<u32>, u32)>,
    #[serde(default)]
    padded: bool,
    #[serde(default)]
    name: String,
}

impl MultiTapeAutomaton {
    pub fn to_json(&self) -> String {
        let doc = AutomatonJson {
            base: self.base,
            tapes: self.tapes(),
            direction: self.direction,
            states: self.states(),
            initial: self.initial,
            finals: self.finals(),
            transitions: self.transitions().map(|(s, l, t)| (s, self.alphabet.decode(l), t)).collect(),
            padded: self.padded,
            name: self.name.clone(),
        };
        serde_json::to_string(&doc).expect("automaton serializes")
    }

    /// Parses and validates the JSON interchange format. A `padded: true`
    /// claim is checked against the transition table.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AutomatonJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut a = Self::new(doc.base, doc.tapes, doc.direction, doc.states)?;
        a.set_initial(doc.initial)?;
        for s in doc.finals {
            a.set_final(s, true)?;
        }
        for (s, column, t) in &doc.transitions {
            a.set_transition(*s, column, *t)?;
        }
        if doc.padded {
            a.mark_padded()?;
        }
        Ok(a.with_name(doc.name))
    }

    /// Graphviz rendering; parallel edges are merged into one labelled edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let title = if self.name.is_empty() { "automaton" } else { &self.name };
        writeln!(out, "digraph {:?} {{", title).unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  label={:?};", format!("{title} (base {}, {})", self.base, self.direction)).unwrap();
        writeln!(out, "  start [shape=point];").unwrap();
        for s in 0..self.states() as u32 {
            let shape = if self.is_final(s) { "doublecircle" } else { "circle" };
            writeln!(out, "  {s} [shape={shape}];").unwrap();
        }
        writeln!(out, "  start -> {};", self.initial).unwrap();
        let mut edges: BTreeMap<(u32, u32), Vec<String>> = BTreeMap::new();
        for (s, l, t) in self.transitions() {
            let col = self.alphabet.decode(l);
            let label = if col.len() == 1 {
                col[0].to_string()
            } else {
                let parts: Vec<String> = col.iter().map(u32::to_string).collect();
                format!("({})", parts.join(","))
            };
            edges.entry((s, t)).or_default().push(label);
        }
        for ((s, t), labels) in edges {
            writeln!(out, "  {s} -> {t} [label={:?}];", labels.join(" ")).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_validation() {
        let base = Base::new(3, 2).unwrap();
        let mut a = MultiTapeAutomaton::new(base, 2, Direction::RightToLeft, 2).unwrap();
        a.set_transition(0, &[0, 0], 0).unwrap();
        a.set_transition(0, &[1, 2], 1).unwrap();
        a.set_final(1, true).unwrap();
        let a = a.with_name("t");
        let text = a.to_json();
        let b = MultiTapeAutomaton::from_json(&text).unwrap();
        assert_eq!(b.to_json(), text);
        assert_eq!(b.name(), "t");

        let bad = text.replace("[1,2]", "[1,3]");
        assert!(MultiTapeAutomaton::from_json(&bad).is_err());
        let lying = text.replace("\"padded\":false", "\"padded\":true");
        assert!(MultiTapeAutomaton::from_json(&lying).is_err());
        assert!(MultiTapeAutomaton::from_json("{").is_err());
    }

    #[test]
    fn dot_marks_finals() {
        let base = Base::new(3, 2).unwrap();
        let u = MultiTapeAutomaton::universal(base, 1, Direction::LeftToRight).unwrap();
        let dot = u.to_dot();
        assert!(dot.contains("0 [shape=doublecircle]"));
        assert!(dot.contains("0 -> 0 [label=\"0 1 2\"]"));
    }
}
