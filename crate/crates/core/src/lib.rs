//! Passive learning of deterministic ω-automata from ultimately periodic
//! samples.

pub mod condition;
pub mod charsample;
pub mod cli;
pub mod consistency;
pub mod error;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod reductions;
pub mod sprout;
pub mod sample;
pub mod ts;
pub mod word;

pub use condition::{AccType, AcceptanceCondition, Automaton, Conflict, PartialCondition, RabinPair};
pub use error::{Error, Result};
pub use sample::Sample;
pub use ts::{Run, StateId, TransSet, Transition, TransitionSystem};
pub use word::{Alphabet, OmegaWord, Symbol};
