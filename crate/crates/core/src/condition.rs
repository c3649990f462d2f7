//! Acceptance conditions over transitions, automata and partial conditions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::ts::{set_order, Run, StateId, TransSet, Transition, TransitionSystem};
use crate::word::OmegaWord;

/// The acceptance types the learner and the solvers support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AccType {
    Buchi,
    GenBuchi,
    Parity,
    Rabin,
}

impl AccType {
    pub const ALL: [AccType; 4] = [AccType::Buchi, AccType::GenBuchi, AccType::Parity, AccType::Rabin];

    pub fn name(self) -> &'static str {
        match self {
            AccType::Buchi => "buchi",
            AccType::GenBuchi => "genbuchi",
            AccType::Parity => "parity",
            AccType::Rabin => "rabin",
        }
    }
}

impl fmt::Display for AccType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AccType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "buchi" | "büchi" => Ok(AccType::Buchi),
            "genbuchi" | "generalized-buchi" | "gen-buchi" => Ok(AccType::GenBuchi),
            "parity" => Ok(AccType::Parity),
            "rabin" => Ok(AccType::Rabin),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// A Rabin pair: accepted if `fin` is avoided and `inf` is hit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RabinPair {
    pub fin: TransSet,
    pub inf: TransSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcceptanceCondition {
    Buchi(TransSet),
    GenBuchi(Vec<TransSet>),
    /// Min-even parity.
    Parity(BTreeMap<Transition, u32>),
    Rabin(Vec<RabinPair>),
    Muller(BTreeSet<TransSet>),
}

impl AcceptanceCondition {
    pub fn acc_type(&self) -> Option<AccType> {
        match self {
            AcceptanceCondition::Buchi(_) => Some(AccType::Buchi),
            AcceptanceCondition::GenBuchi(_) => Some(AccType::GenBuchi),
            AcceptanceCondition::Parity(_) => Some(AccType::Parity),
            AcceptanceCondition::Rabin(_) => Some(AccType::Rabin),
            AcceptanceCondition::Muller(_) => None,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self.acc_type() {
            Some(t) => t.name(),
            None => "muller",
        }
    }

    /// Whether the infinity set `x` is accepting.
    pub fn satisfies(&self, x: &TransSet) -> Result<bool> {
        if x.is_empty() {
            return Err(Error::EmptyInfinitySet);
        }
        Ok(match self {
            AcceptanceCondition::Buchi(f) => !x.is_disjoint(f),
            AcceptanceCondition::GenBuchi(fs) => fs.iter().all(|f| !x.is_disjoint(f)),
            AcceptanceCondition::Parity(k) => {
                let mut min = u32::MAX;
                for t in x {
                    let p = k.get(t).ok_or_else(|| {
                        Error::InvalidCondition(format!(
                            "no priority for transition ({}, #{})",
                            t.state, t.symbol.0
                        ))
                    })?;
                    min = min.min(*p);
                }
                min % 2 == 0
            }
            AcceptanceCondition::Rabin(pairs) => pairs
                .iter()
                .any(|p| x.is_disjoint(&p.fin) && !x.is_disjoint(&p.inf)),
            AcceptanceCondition::Muller(sets) => sets.contains(x),
        })
    }

    /// Number of distinct priorities, components, pairs or accepting sets.
    pub fn size(&self) -> usize {
        match self {
            AcceptanceCondition::Buchi(_) => 1,
            AcceptanceCondition::GenBuchi(fs) => fs.len(),
            AcceptanceCondition::Parity(k) => k.values().collect::<BTreeSet<_>>().len(),
            AcceptanceCondition::Rabin(pairs) => pairs.len(),
            AcceptanceCondition::Muller(sets) => sets.len(),
        }
    }

    /// All transitions mentioned by the condition.
    pub fn mentioned(&self) -> TransSet {
        match self {
            AcceptanceCondition::Buchi(f) => f.clone(),
            AcceptanceCondition::GenBuchi(fs) => fs.iter().flatten().copied().collect(),
            AcceptanceCondition::Parity(k) => k.keys().copied().collect(),
            AcceptanceCondition::Rabin(pairs) => pairs
                .iter()
                .flat_map(|p| p.fin.iter().chain(&p.inf))
                .copied()
                .collect(),
            AcceptanceCondition::Muller(sets) => sets.iter().flatten().copied().collect(),
        }
    }

    /// Applies a state renaming; transitions of dropped states are removed.
    pub fn rename(&self, map: &[Option<StateId>]) -> AcceptanceCondition {
        let set = |s: &TransSet| -> TransSet {
            s.iter()
                .filter_map(|t| map[t.state as usize].map(|q| Transition::new(q, t.symbol)))
                .collect()
        };
        match self {
            AcceptanceCondition::Buchi(f) => AcceptanceCondition::Buchi(set(f)),
            AcceptanceCondition::GenBuchi(fs) => AcceptanceCondition::GenBuchi(fs.iter().map(set).collect()),
            AcceptanceCondition::Parity(k) => AcceptanceCondition::Parity(
                k.iter()
                    .filter_map(|(t, &p)| map[t.state as usize].map(|q| (Transition::new(q, t.symbol), p)))
                    .collect(),
            ),
            AcceptanceCondition::Rabin(pairs) => AcceptanceCondition::Rabin(
                pairs
                    .iter()
                    .map(|p| RabinPair {
                        fin: set(&p.fin),
                        inf: set(&p.inf),
                    })
                    .collect(),
            ),
            AcceptanceCondition::Muller(sets) => {
                AcceptanceCondition::Muller(sets.iter().map(set).filter(|s| !s.is_empty()).collect())
            }
        }
    }

    /// Shifts priorities down so that the least one is 0 or 1 and gaps
    /// between used priorities collapse, preserving parity of each step.
    pub fn compact_parity(k: &BTreeMap<Transition, u32>) -> BTreeMap<Transition, u32> {
        let used: BTreeSet<u32> = k.values().copied().collect();
        let mut remap = HashMap::new();
        let mut next: Option<u32> = None;
        for p in used {
            let v = match next {
                None => p % 2,
                Some(n) => {
                    if n % 2 == p % 2 {
                        n
                    } else {
                        n + 1
                    }
                }
            };
            remap.insert(p, v);
            next = Some(v);
        }
        k.iter().map(|(t, p)| (*t, remap[p])).collect()
    }
}

/// A transition system with an acceptance condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub ts: TransitionSystem,
    pub condition: AcceptanceCondition,
}

impl Automaton {
    /// Checks that the condition only mentions defined transitions and, for
    /// parity, that every defined transition has a priority.
    pub fn new(ts: TransitionSystem, condition: AcceptanceCondition) -> Result<Self> {
        let universe = ts.universe();
        if !condition.mentioned().is_subset(&universe) {
            return Err(Error::InvalidCondition(
                "condition mentions undefined transitions".into(),
            ));
        }
        if let AcceptanceCondition::Parity(k) = &condition {
            if k.len() != universe.len() {
                return Err(Error::InvalidCondition(
                    "parity condition must assign every transition a priority".into(),
                ));
            }
        }
        Ok(Automaton { ts, condition })
    }

    pub fn accepts(&self, w: &OmegaWord) -> Result<bool> {
        self.accepts_from(self.ts.initial(), w)
    }

    pub fn accepts_from(&self, q: StateId, w: &OmegaWord) -> Result<bool> {
        match self.ts.run_from(q, w)? {
            Run::Escaping { .. } => Ok(false),
            Run::Infinite { inf, .. } => self.condition.satisfies(&inf),
        }
    }

    pub fn reroot(&self, q: StateId) -> Automaton {
        Automaton {
            ts: self.ts.reroot(q),
            condition: self.condition.clone(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.ts.num_states()
    }
}

/// Positive and negative transition sets. Members are deduplicated and
/// sorted by size, then canonically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialCondition {
    pos: Vec<TransSet>,
    neg: Vec<TransSet>,
}

fn normalize_family(sets: impl IntoIterator<Item = TransSet>) -> Vec<TransSet> {
    let mut v: Vec<TransSet> = sets.into_iter().collect();
    v.sort_by(set_order);
    v.dedup();
    v
}

impl PartialCondition {
    pub fn new(
        pos: impl IntoIterator<Item = TransSet>,
        neg: impl IntoIterator<Item = TransSet>,
    ) -> Self {
        PartialCondition {
            pos: normalize_family(pos),
            neg: normalize_family(neg),
        }
    }

    pub fn positives(&self) -> &[TransSet] {
        &self.pos
    }

    pub fn negatives(&self) -> &[TransSet] {
        &self.neg
    }

    /// No set is classified both ways.
    pub fn is_consistent(&self) -> bool {
        self.pos.iter().all(|p| self.neg.binary_search_by(|n| set_order(n, p)).is_err())
    }

    pub(crate) fn check(&self) -> Result<()> {
        if !self.is_consistent() {
            return Err(Error::InconsistentPartialCondition);
        }
        if self.pos.iter().chain(&self.neg).any(|s| s.is_empty()) {
            return Err(Error::EmptyInfinitySet);
        }
        Ok(())
    }

    /// `Some(true)` for positive, `Some(false)` for negative members.
    pub fn classify(&self, x: &TransSet) -> Option<bool> {
        if self.pos.binary_search_by(|p| set_order(p, x)).is_ok() {
            Some(true)
        } else if self.neg.binary_search_by(|n| set_order(n, x)).is_ok() {
            Some(false)
        } else {
            None
        }
    }

    pub fn with_positive(&self, x: TransSet) -> PartialCondition {
        PartialCondition::new(self.pos.iter().cloned().chain([x]), self.neg.iter().cloned())
    }

    pub fn with_negative(&self, x: TransSet) -> PartialCondition {
        PartialCondition::new(self.pos.iter().cloned(), self.neg.iter().cloned().chain([x]))
    }

    /// Positive and negative members exchanged.
    pub fn swapped(&self) -> PartialCondition {
        PartialCondition {
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    /// Whether `c` accepts every positive and rejects every negative member.
    pub fn agrees(&self, c: &AcceptanceCondition) -> Result<bool> {
        for p in &self.pos {
            if !c.satisfies(p)? {
                return Ok(false);
            }
        }
        for n in &self.neg {
            if c.satisfies(n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Why a transition system cannot be consistent with a sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conflict {
    /// A positive and a negative word induce the same infinity set.
    SharedInfinitySet {
        positive: OmegaWord,
        negative: OmegaWord,
        set: TransSet,
    },
    /// A positive and a negative word escape from the same state with the
    /// same exit string.
    Indistinguishable {
        positive: OmegaWord,
        negative: OmegaWord,
    },
}

/// Infinity sets of the non-escaping sample words, or a conflict.
pub fn induced_partial_condition(
    ts: &TransitionSystem,
    sample: &Sample,
) -> Result<std::result::Result<PartialCondition, Conflict>> {
    let mut pos_sets: HashMap<TransSet, &OmegaWord> = HashMap::new();
    let mut pos_escapes: HashMap<(StateId, OmegaWord), &OmegaWord> = HashMap::new();
    for w in sample.positives() {
        match ts.run(w)? {
            Run::Infinite { inf, .. } => {
                pos_sets.entry(inf).or_insert(w);
            }
            Run::Escaping { state, exit, .. } => {
                pos_escapes.entry((state, exit)).or_insert(w);
            }
        }
    }
    let mut neg_sets: Vec<TransSet> = Vec::new();
    for w in sample.negatives() {
        match ts.run(w)? {
            Run::Infinite { inf, .. } => {
                if let Some(p) = pos_sets.get(&inf) {
                    return Ok(Err(Conflict::SharedInfinitySet {
                        positive: (*p).clone(),
                        negative: w.clone(),
                        set: inf,
                    }));
                }
                neg_sets.push(inf);
            }
            Run::Escaping { state, exit, .. } => {
                if let Some(p) = pos_escapes.get(&(state, exit)) {
                    return Ok(Err(Conflict::Indistinguishable {
                        positive: (*p).clone(),
                        negative: w.clone(),
                    }));
                }
            }
        }
    }
    Ok(Ok(PartialCondition::new(pos_sets.into_keys(), neg_sets)))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::ts::fixtures::*;

    fn set(ts: &[Transition]) -> TransSet {
        ts.iter().copied().collect()
    }

    #[test]
    fn satisfies_examples() {
        let a = fix_a();
        let x = set(&[t(0, B), t(1, B), t(2, B), t(0, A)]);
        assert!(a.condition.satisfies(&x).unwrap());
        let x = set(&[t(0, A)]);
        assert!(AcceptanceCondition::Buchi(set(&[t(0, A)])).satisfies(&x).unwrap());
        assert!(!AcceptanceCondition::Buchi(set(&[t(0, B)])).satisfies(&x).unwrap());
        let t1 = t(0, A);
        let t2 = t(0, B);
        let x = set(&[t1, t2]);
        let r = |e: &[Transition], f: &[Transition]| {
            AcceptanceCondition::Rabin(vec![RabinPair { fin: set(e), inf: set(f) }])
        };
        assert!(!r(&[t1], &[t2]).satisfies(&x).unwrap());
        assert!(r(&[], &[t2]).satisfies(&x).unwrap());
        assert_eq!(
            AcceptanceCondition::Buchi(set(&[t1])).satisfies(&TransSet::new()),
            Err(Error::EmptyInfinitySet)
        );
    }

    #[test]
    fn accepts_examples() {
        let a = fix_a();
        assert!(a.accepts(&w("(bbba)")).unwrap());
        assert!(!a.accepts(&w("(ba)")).unwrap());
        assert!(!a.accepts(&w("(bba)")).unwrap());
        let t1 = fix_t1();
        let all = t1.universe();
        let b = Automaton::new(t1, AcceptanceCondition::Buchi(all)).unwrap();
        assert!(!b.accepts(&w("(b)")).unwrap());
    }

    #[test]
    fn sizes() {
        assert_eq!(fix_a().condition.size(), 2);
        let s = TransSet::new();
        assert_eq!(AcceptanceCondition::GenBuchi(vec![s.clone(), s.clone(), s.clone()]).size(), 3);
        let p = RabinPair { fin: s.clone(), inf: s };
        assert_eq!(AcceptanceCondition::Rabin(vec![p.clone(), p]).size(), 2);
    }

    #[test]
    fn induced_examples() {
        let a = fix_a();
        let h = induced_partial_condition(&a.ts, &fix_s3()).unwrap().unwrap();
        assert_eq!(h.positives().len() + h.negatives().len(), 9 - dup_count(&a));
        assert_eq!(h.negatives().len(), 3);

        let t1 = fix_t1();
        let s = Sample::new(ab(), [w("(b)")], [w("a(b)")]).unwrap();
        assert!(matches!(
            induced_partial_condition(&t1, &s).unwrap(),
            Err(Conflict::Indistinguishable { .. })
        ));

        let mut one = TransitionSystem::new(ab(), 1);
        one.add(0, A, 0);
        one.add(0, B, 0);
        let s = Sample::new(ab(), [w("(ab)")], [w("(ba)")]).unwrap();
        assert!(matches!(
            induced_partial_condition(&one, &s).unwrap(),
            Err(Conflict::SharedInfinitySet { .. })
        ));
    }

    /// Number of positive words whose infinity set repeats another one.
    fn dup_count(a: &Automaton) -> usize {
        let sets: Vec<TransSet> = fix_s3()
            .positives()
            .iter()
            .map(|w| a.ts.run(w).unwrap().inf().unwrap().clone())
            .collect();
        sets.len() - sets.iter().collect::<BTreeSet<_>>().len()
    }

    #[test]
    fn compact_parity_preserves_parity_steps() {
        let tr = |i: u32| Transition::new(i, crate::word::Symbol(0));
        let k: BTreeMap<_, _> = [(tr(0), 3), (tr(1), 4), (tr(2), 6), (tr(3), 9)].into_iter().collect();
        let c = AcceptanceCondition::compact_parity(&k);
        assert_eq!(c.values().copied().collect::<Vec<_>>(), vec![1, 2, 2, 3]);
    }
}
