//! Exhaustive enumeration of reachable loops.

use crate::error::{Error, Result};
use crate::ts::{set_order, TransSet, Transition, TransitionSystem};

/// Default cap on the number of defined transitions.
pub const DEFAULT_GUARD: usize = 16;

/// Every reachable strongly connected transition set of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopCatalog {
    pub loops: Vec<TransSet>,
    pub guard: usize,
}

impl LoopCatalog {
    pub fn contains(&self, x: &TransSet) -> bool {
        self.loops.binary_search_by(|l| set_order(l, x)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.loops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }
}

/// All reachable strongly connected transition sets, sorted by size and then
/// canonically. Fails if the system defines more than [`DEFAULT_GUARD`]
/// transitions.
pub fn enumerate_loops(ts: &TransitionSystem) -> Result<LoopCatalog> {
    enumerate_loops_with_guard(ts, DEFAULT_GUARD).map(|loops| LoopCatalog {
        loops,
        guard: DEFAULT_GUARD,
    })
}

pub fn enumerate_loops_with_guard(ts: &TransitionSystem, guard: usize) -> Result<Vec<TransSet>> {
    let count = ts.num_transitions();
    if count > guard || count > 30 {
        return Err(Error::UniverseTooLarge(format!(
            "{count} transitions, at most {} supported",
            guard.min(30)
        )));
    }
    let reachable = ts.reachable();
    let mut live = vec![false; ts.num_states()];
    for q in reachable {
        live[q as usize] = true;
    }
    let within: TransSet = ts.transitions().filter(|t| live[t.state as usize]).collect();
    let mut loops = Vec::new();
    // every loop lies inside one maximal SCC
    for scc in ts.scc_transition_sets(&within) {
        let members: Vec<Transition> = scc.into_iter().collect();
        for mask in 1u32..(1 << members.len()) {
            let subset: TransSet = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &t)| t)
                .collect();
            if ts.is_strongly_connected(&subset) {
                loops.push(subset);
            }
        }
    }
    loops.sort_by(set_order);
    Ok(loops)
}
