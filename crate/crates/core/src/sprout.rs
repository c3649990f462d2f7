//! The Sprout passive learner.
//!
//! Starting from a single state without transitions, the learner repeatedly
//! takes the length-lexicographically least escape prefix `ua` of a positive
//! word and tries to route the missing transition to an existing state, in
//! canonical order, keeping the first choice under which the system stays
//! consistent with the sample. If no existing state works a new one is
//! created. Once escape prefixes grow past a threshold the remaining positive
//! words get private loops and learning stops.

use std::collections::BTreeMap;

use crate::condition::{induced_partial_condition, AccType, AcceptanceCondition, Automaton};
use crate::consistency::{solve, ts_consistent};
use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::ts::{Run, StateId, TransitionSystem};
use crate::word::{OmegaWord, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnerConfig {
    pub acc_type: AccType,
    pub threshold_override: Option<usize>,
    pub trace: bool,
}

impl LearnerConfig {
    pub fn new(acc_type: AccType) -> Self {
        LearnerConfig {
            acc_type,
            threshold_override: None,
            trace: false,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = true;
        self
    }
}

/// One insertion performed by the learner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub iteration: usize,
    pub escape_prefix: Vec<Symbol>,
    pub source: StateId,
    pub symbol: Symbol,
    pub target: StateId,
    pub new_state: bool,
    /// The system after the insertion.
    pub ts: TransitionSystem,
}

#[derive(Debug, Clone)]
pub struct Learned {
    pub automaton: Automaton,
    pub trace: Vec<TraceStep>,
    /// The system right before loops were attached, if the threshold was hit.
    pub pre_extend: Option<TransitionSystem>,
    pub iterations: usize,
    pub threshold: usize,
}

impl Learned {
    pub fn extended(&self) -> bool {
        self.pre_extend.is_some()
    }
}

/// `max|u| + (max|v|)² + 1` over all sample words `u(v)`.
pub fn threshold(sample: &Sample) -> Result<usize> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let words = || sample.positives().iter().chain(sample.negatives());
    let lu = words().map(|w| w.spoke().len()).max().unwrap_or(0);
    let lv = words().map(|w| w.period().len()).max().unwrap_or(0);
    Ok(lu + lv * lv + 1)
}

pub fn sprout(sample: &Sample, cfg: &LearnerConfig) -> Result<Automaton> {
    Ok(sprout_traced(sample, cfg)?.automaton)
}

pub fn sprout_traced(sample: &Sample, cfg: &LearnerConfig) -> Result<Learned> {
    if let Some(0) = cfg.threshold_override {
        return Err(Error::PreconditionViolated("threshold must be at least 1".into()));
    }
    let thres = match cfg.threshold_override {
        Some(t) => t,
        None if sample.is_empty() => 1,
        None => threshold(sample)?,
    };
    let mut ts = TransitionSystem::new(sample.alphabet().clone(), 1);
    let mut trace = Vec::new();
    let mut pre_extend = None;
    let mut iterations = 0;
    loop {
        let escapes = ts.escapes(sample.positives())?;
        let Some((_, ua)) = escapes.first() else { break };
        let (&a, u) = ua.split_last().expect("escape prefixes are non-empty");
        if u.len() > thres {
            log::debug!("threshold {thres} exceeded after {iterations} iterations");
            pre_extend = Some(ts.clone());
            ts = extend(&ts, sample)?;
            break;
        }
        iterations += 1;
        let source = ts.reach(u).expect("escape prefix is defined up to its last symbol");
        let mut chosen = None;
        for q in ts.canonical_order() {
            let mut candidate = ts.clone();
            candidate.add(source, a, q);
            if ts_consistent(&candidate, sample, cfg.acc_type)? {
                ts = candidate;
                chosen = Some(q);
                break;
            }
        }
        let new_state = chosen.is_none();
        let target = match chosen {
            Some(q) => q,
            None => {
                let q = ts.add_state();
                ts.add(source, a, q);
                q
            }
        };
        if cfg.trace {
            trace.push(TraceStep {
                iteration: iterations,
                escape_prefix: ua.clone(),
                source,
                symbol: a,
                target,
                new_state,
                ts: ts.clone(),
            });
        }
    }
    let (ts, _) = ts.canonicalize();
    let automaton = build_aut(&ts, sample, cfg.acc_type)?;
    Ok(Learned {
        automaton,
        trace,
        pre_extend,
        iterations,
        threshold: thres,
    })
}

/// Attaches private loops for the exit strings of escaping positive words.
///
/// Exit strings leaving a state `q` are arranged in a prefix tree rooted at
/// `q`. A word `x^ω` follows the tree until its prefix is no longer shared
/// with any other exit string of `q`, continues to the next multiple of `|x|`
/// and then cycles on `x`. If `q` has a single exit string the cycle gets a
/// fresh head that `q` enters directly. No added transition leads back into
/// the original system.
pub fn extend(ts: &TransitionSystem, sample: &Sample) -> Result<TransitionSystem> {
    let mut exits: BTreeMap<StateId, Vec<OmegaWord>> = BTreeMap::new();
    for w in sample.positives() {
        if let Run::Escaping { state, exit, .. } = ts.run(w)? {
            if !exit.spoke().is_empty() {
                return Err(Error::PreconditionViolated(format!(
                    "exit string {} is not purely periodic",
                    exit.display(sample.alphabet())
                )));
            }
            let list = exits.entry(state).or_default();
            if !list.contains(&exit) {
                list.push(exit);
            }
        }
    }
    let mut out = ts.clone();
    for (q, words) in exits {
        attach_loops(&mut out, q, &words);
    }
    Ok(out)
}

fn attach_loops(ts: &mut TransitionSystem, q: StateId, words: &[OmegaWord]) {
    if let [only] = words {
        let x = only.period();
        let head = ts.add_state();
        let mut cycle = vec![head];
        for _ in 1..x.len() {
            cycle.push(ts.add_state());
        }
        for i in 0..x.len() {
            ts.add(cycle[i], x[i], cycle[(i + 1) % x.len()]);
        }
        ts.add(q, x[0], cycle[1 % x.len()]);
        return;
    }
    for (i, w) in words.iter().enumerate() {
        let x = w.period();
        let unique = words
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, other)| w.common_prefix_len(other).expect("exit strings are distinct") + 1)
            .max()
            .unwrap_or(0);
        let depth = unique.div_ceil(x.len()).max(1) * x.len();
        let mut cur = q;
        for pos in 0..depth {
            let a = w.at(pos);
            cur = match ts.succ(cur, a) {
                Some(next) => next,
                None => {
                    let next = ts.add_state();
                    ts.add(cur, a, next);
                    next
                }
            };
        }
        let head = cur;
        for pos in 0..x.len() {
            let a = x[pos];
            let next = if pos + 1 == x.len() { head } else { ts.add_state() };
            ts.add(cur, a, next);
            cur = next;
        }
    }
}

/// Solves the induced partial condition and wraps the result.
pub fn build_aut(ts: &TransitionSystem, sample: &Sample, acc_type: AccType) -> Result<Automaton> {
    let h = match induced_partial_condition(ts, sample)? {
        Ok(h) => h,
        Err(conflict) => {
            return Err(Error::InternalInconsistency(format!(
                "system conflicts with the sample: {conflict:?}"
            )))
        }
    };
    let condition = solve(&h, &ts.universe(), acc_type)?.ok_or_else(|| {
        Error::InternalInconsistency(format!("no {acc_type} condition for a consistent system"))
    })?;
    let condition = match condition {
        AcceptanceCondition::Parity(k) => AcceptanceCondition::Parity(AcceptanceCondition::compact_parity(&k)),
        other => other,
    };
    Automaton::new(ts.clone(), condition)
}
