//! File formats: plain-text samples, HOA automata and Graphviz output.

pub mod dot;
pub mod hoa;
pub mod sample;

pub use dot::{automaton_dot, trace_dot, ts_dot};
pub use hoa::{emit_hoa, parse_hoa};
pub use sample::{emit_sample, parse_sample, parse_sample_with_warnings};
