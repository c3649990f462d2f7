//! Graphviz rendering of transition systems, automata and learner traces.

use std::fmt::Write as _;

use crate::condition::{AcceptanceCondition, Automaton};
use crate::io::hoa::encode_condition;
use crate::sprout::TraceStep;
use crate::ts::{Transition, TransitionSystem};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render(
    ts: &TransitionSystem,
    edge_label: impl Fn(Transition) -> String,
    highlight: Option<Transition>,
) -> String {
    let names = ts.state_names();
    let mut out = String::from("digraph {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  init [shape=point];\n");
    for q in ts.states() {
        writeln!(out, "  {q} [label=\"{}\"];", escape(&names[q as usize])).unwrap();
    }
    writeln!(out, "  init -> {};", ts.initial()).unwrap();
    for t in ts.transitions() {
        let target = ts.target(t).expect("defined");
        let style = if highlight == Some(t) { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  {} -> {target} [label=\"{}\"{style}];",
            t.state,
            escape(&edge_label(t))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// States are labelled by their minimal access words.
pub fn ts_dot(ts: &TransitionSystem) -> String {
    render(ts, |t| ts.alphabet().name(t.symbol).to_string(), None)
}

/// Edges carry their symbol and the acceptance marks used in HOA output.
pub fn automaton_dot(a: &Automaton) -> String {
    let (_, _, marks) = encode_condition(a);
    let muller = matches!(a.condition, AcceptanceCondition::Muller(_));
    render(
        &a.ts,
        |t| {
            let name = a.ts.alphabet().name(t.symbol);
            match marks.get(&t) {
                Some(m) if !muller => {
                    let ids: Vec<String> = m.iter().map(|i| i.to_string()).collect();
                    format!("{name} {{{}}}", ids.join(","))
                }
                _ => name.to_string(),
            }
        },
        None,
    )
}

/// One learner step; the inserted transition is dashed.
pub fn trace_dot(step: &TraceStep) -> String {
    let ts = &step.ts;
    render(
        ts,
        |t| ts.alphabet().name(t.symbol).to_string(),
        Some(Transition::new(step.source, step.symbol)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::fixtures::fix_a;

    #[test]
    fn figure_automaton() {
        let dot = automaton_dot(&fix_a());
        assert!(dot.starts_with("digraph {"));
        assert!(dot.contains("2 [label=\"bb\"];"));
        assert!(dot.contains("2 -> 0 [label=\"b {0}\"];"));
        assert!(dot.contains("0 -> 0 [label=\"a {1}\"];"));
    }

    #[test]
    fn highlighted_step() {
        let ts = fix_a().ts;
        let step = TraceStep {
            iteration: 1,
            escape_prefix: vec![],
            source: 2,
            symbol: crate::word::Symbol(1),
            target: 0,
            new_state: false,
            ts,
        };
        let dot = trace_dot(&step);
        assert!(dot.contains("2 -> 0 [label=\"b\", style=dashed];"));
        assert_eq!(dot.matches("dashed").count(), 1);
    }
}
