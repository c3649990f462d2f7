//! Acceptance conditions as positive Boolean combinations of `Inf` and `Fin`
//! atoms, and a search for loops satisfying such a formula.

use std::collections::HashSet;

use crate::condition::AcceptanceCondition;
use crate::ts::{TransSet, Transition, TransitionSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    /// Some transition of the set is visited infinitely often.
    Inf(TransSet),
    /// No transition of the set is visited infinitely often.
    Fin(TransSet),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn eval(&self, x: &TransSet) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Inf(s) => !x.is_disjoint(s),
            Formula::Fin(s) => x.is_disjoint(s),
            Formula::And(fs) => fs.iter().all(|f| f.eval(x)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(x)),
        }
    }

    pub fn negate(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Inf(s) => Formula::Fin(s.clone()),
            Formula::Fin(s) => Formula::Inf(s.clone()),
            Formula::And(fs) => Formula::Or(fs.iter().map(Formula::negate).collect()),
            Formula::Or(fs) => Formula::And(fs.iter().map(Formula::negate).collect()),
        }
    }

    /// Replaces every atom set `S` by `{t : f(t) ∈ S}` over `domain`.
    pub fn pull_back(&self, domain: &[Transition], f: impl Fn(Transition) -> Transition + Copy) -> Formula {
        let map = |s: &TransSet| -> TransSet { domain.iter().copied().filter(|&t| s.contains(&f(t))).collect() };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Inf(s) => Formula::Inf(map(s)),
            Formula::Fin(s) => Formula::Fin(map(s)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.pull_back(domain, f)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.pull_back(domain, f)).collect()),
        }
    }

    fn fin_atoms<'a>(&'a self, out: &mut Vec<&'a TransSet>) {
        match self {
            Formula::Fin(s) => out.push(s),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.fin_atoms(out)),
            _ => {}
        }
    }

    /// The condition as a formula over the transitions in `universe`.
    pub fn of_condition(c: &AcceptanceCondition, universe: &TransSet) -> Formula {
        match c {
            AcceptanceCondition::Buchi(f) => Formula::Inf(f.clone()),
            AcceptanceCondition::GenBuchi(fs) => Formula::And(fs.iter().cloned().map(Formula::Inf).collect()),
            AcceptanceCondition::Parity(k) => {
                let mut used: Vec<u32> = k.values().copied().collect();
                used.sort_unstable();
                used.dedup();
                let level = |pred: &dyn Fn(u32) -> bool| -> TransSet {
                    k.iter().filter(|(_, &p)| pred(p)).map(|(t, _)| *t).collect()
                };
                Formula::Or(
                    used.iter()
                        .filter(|&&p| p % 2 == 0)
                        .map(|&p| {
                            Formula::And(vec![
                                Formula::Inf(level(&|q| q == p)),
                                Formula::Fin(level(&|q| q < p)),
                            ])
                        })
                        .collect(),
                )
            }
            AcceptanceCondition::Rabin(pairs) => Formula::Or(
                pairs
                    .iter()
                    .map(|p| Formula::And(vec![Formula::Fin(p.fin.clone()), Formula::Inf(p.inf.clone())]))
                    .collect(),
            ),
            AcceptanceCondition::Muller(sets) => Formula::Or(
                sets.iter()
                    .map(|m| {
                        let mut parts: Vec<Formula> =
                            m.iter().map(|&t| Formula::Inf([t].into_iter().collect())).collect();
                        parts.push(Formula::Fin(universe.difference(m).copied().collect()));
                        Formula::And(parts)
                    })
                    .collect(),
            ),
        }
    }
}

/// Finds a strongly connected transition set inside `within` on which `phi`
/// holds. SCCs are checked in canonical order; when `phi` fails on an SCC the
/// search descends into the SCCs left after removing one violated `Fin` set.
pub fn find_loop(ts: &TransitionSystem, within: &TransSet, phi: &Formula) -> Option<TransSet> {
    let mut seen = HashSet::new();
    search(ts, within, phi, &mut seen)
}

fn search(ts: &TransitionSystem, within: &TransSet, phi: &Formula, seen: &mut HashSet<TransSet>) -> Option<TransSet> {
    for scc in ts.scc_transition_sets(within) {
        if !seen.insert(scc.clone()) {
            continue;
        }
        if phi.eval(&scc) {
            return Some(scc);
        }
        let mut fins = Vec::new();
        phi.fin_atoms(&mut fins);
        for s in fins {
            if scc.is_disjoint(s) {
                continue;
            }
            let rest: TransSet = scc.difference(s).copied().collect();
            if let Some(found) = search(ts, &rest, phi, seen) {
                return Some(found);
            }
        }
    }
    None
}
