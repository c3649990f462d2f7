//! Seeded random samples and automata for tests and experiments.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charsample::separating_word;
use crate::condition::{AccType, AcceptanceCondition, Automaton, RabinPair};
use crate::error::Result;
use crate::sample::Sample;
use crate::ts::{StateId, TransSet, TransitionSystem};
use crate::word::{Alphabet, OmegaWord, Symbol};

/// Deterministic generator; equal seeds give equal outputs.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn symbols(&mut self, alphabet: &Alphabet, len: usize) -> Vec<Symbol> {
        (0..len).map(|_| Symbol(self.rng.gen_range(0..alphabet.len()) as u16)).collect()
    }

    /// A word `u(v)` with `|u| <= max_spoke` and `1 <= |v| <= max_period`
    /// before normalization.
    pub fn word(&mut self, alphabet: &Alphabet, max_spoke: usize, max_period: usize) -> OmegaWord {
        let lu = self.rng.gen_range(0..=max_spoke);
        let lv = self.rng.gen_range(1..=max_period.max(1));
        let u = self.symbols(alphabet, lu);
        let v = self.symbols(alphabet, lv);
        OmegaWord::new(u, v).expect("nonempty period")
    }

    /// Up to `max_words` distinct words, each labeled at random. Words
    /// equal to an earlier one after normalization are dropped, so the
    /// sample is always disjoint and never empty.
    pub fn sample(&mut self, alphabet: &Alphabet, max_words: usize, max_spoke: usize, max_period: usize) -> Sample {
        let n = self.rng.gen_range(1..=max_words.max(1));
        let mut labels: BTreeMap<OmegaWord, bool> = BTreeMap::new();
        for _ in 0..n {
            let w = self.word(alphabet, max_spoke, max_period);
            let positive = self.rng.gen_bool(0.5);
            labels.entry(w).or_insert(positive);
        }
        let (pos, neg): (Vec<_>, Vec<_>) = labels.into_iter().partition(|(_, p)| *p);
        Sample::new(
            alphabet.clone(),
            pos.into_iter().map(|(w, _)| w),
            neg.into_iter().map(|(w, _)| w),
        )
        .expect("labels are unique per word")
    }

    /// Words labeled by `a`.
    pub fn labeled_words(&mut self, a: &Automaton, count: usize, max_spoke: usize, max_period: usize) -> Result<Sample> {
        let alphabet = a.ts.alphabet().clone();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for _ in 0..count {
            let w = self.word(&alphabet, max_spoke, max_period);
            if a.accepts(&w)? {
                pos.push(w);
            } else {
                neg.push(w);
            }
        }
        Sample::new(alphabet, pos, neg)
    }

    fn subset(&mut self, universe: &[crate::ts::Transition], p: f64) -> TransSet {
        universe.iter().copied().filter(|_| self.rng.gen_bool(p)).collect()
    }

    /// A random condition of the given type over the transitions of `ts`.
    pub fn condition(&mut self, ts: &TransitionSystem, acc_type: AccType) -> AcceptanceCondition {
        let u: Vec<_> = ts.transitions().collect();
        match acc_type {
            AccType::Buchi => AcceptanceCondition::Buchi(self.subset(&u, 0.4)),
            AccType::GenBuchi => {
                let k = self.rng.gen_range(1..=2);
                AcceptanceCondition::GenBuchi((0..k).map(|_| self.subset(&u, 0.5)).collect())
            }
            AccType::Parity => {
                let max = self.rng.gen_range(1..=3);
                AcceptanceCondition::Parity(u.iter().map(|&t| (t, self.rng.gen_range(0..=max))).collect())
            }
            AccType::Rabin => {
                let k = self.rng.gen_range(1..=2);
                AcceptanceCondition::Rabin(
                    (0..k)
                        .map(|_| RabinPair { fin: self.subset(&u, 0.3), inf: self.subset(&u, 0.4) })
                        .collect(),
                )
            }
        }
    }

    /// A complete transition system whose states are all reachable, in
    /// canonical order.
    pub fn complete_ts(&mut self, alphabet: &Alphabet, states: usize) -> TransitionSystem {
        loop {
            let mut ts = TransitionSystem::new(alphabet.clone(), states);
            for q in 0..states as StateId {
                for s in alphabet.symbols() {
                    ts.add(q, s, self.rng.gen_range(0..states) as StateId);
                }
            }
            if ts.reachable().len() == states {
                return ts.canonicalize().0;
            }
        }
    }

    /// A random complete automaton with up to `max_states` states.
    pub fn automaton(&mut self, alphabet: &Alphabet, max_states: usize, acc_type: AccType) -> Automaton {
        let n = self.rng.gen_range(1..=max_states.max(1));
        let ts = self.complete_ts(alphabet, n);
        let cond = self.condition(&ts, acc_type);
        Automaton::new(ts, cond).expect("condition built over the system")
    }

    /// A random automaton whose states are reachable and pairwise
    /// language-distinct, so its transition system is the right congruence
    /// of the language it accepts.
    pub fn irc_automaton(&mut self, alphabet: &Alphabet, max_states: usize, acc_type: AccType) -> Result<Automaton> {
        loop {
            let a = self.automaton(alphabet, max_states, acc_type);
            if is_irc(&a)? {
                return Ok(a);
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// All states reachable and pairwise separated by some word.
pub fn is_irc(a: &Automaton) -> Result<bool> {
    let n = a.num_states();
    if a.ts.reachable().len() != n {
        return Ok(false);
    }
    for p in 0..n as StateId {
        for q in p + 1..n as StateId {
            if separating_word(a, p, q)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::fixtures::fix_a;

    #[test]
    fn seeded_outputs_repeat() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let s1 = Generator::new(7).sample(&ab, 8, 4, 4);
        let s2 = Generator::new(7).sample(&ab, 8, 4, 4);
        assert_eq!(s1, s2);
        assert!(!s1.is_empty());
    }

    #[test]
    fn irc_automata_are_irc() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let mut g = Generator::new(3);
        for acc in AccType::ALL {
            let a = g.irc_automaton(&ab, 4, acc).unwrap();
            assert!(is_irc(&a).unwrap());
            assert_eq!(a.condition.acc_type(), Some(acc));
        }
    }

    #[test]
    fn figure_is_not_irc() {
        assert!(!is_irc(&fix_a()).unwrap());
    }
}
