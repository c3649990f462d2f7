//! Characteristic samples of reference automata: a congruence part fixing
//! the transition structure and a condition part fixing the acceptance
//! condition.

use std::collections::HashSet;

use crate::condition::{AcceptanceCondition, Automaton};
use crate::error::{Error, Result};
use crate::oracle::equiv::{accepted_word_from, equivalence};
use crate::sample::Sample;
use crate::ts::{StateId, TransSet, TransitionSystem};
use crate::word::{length_lex, OmegaWord, Symbol};

/// Largest number of short words tried before falling back to the oracle.
const SHORT_WORD_BUDGET: usize = 2000;

/// Minimal access words of the states and of the transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeTable {
    /// `(state, û)` sorted length-lexicographically by `û`.
    pub reps: Vec<(StateId, Vec<Symbol>)>,
    /// `(state, a, ûa)` for every defined transition, sorted by `ûa`.
    pub trans_reps: Vec<(StateId, Symbol, Vec<Symbol>)>,
}

pub fn minimal_representatives(a: &Automaton) -> Result<RepresentativeTable> {
    let access = a.ts.access_words();
    let mut reps = Vec::with_capacity(access.len());
    for (q, w) in access.into_iter().enumerate() {
        let w = w.ok_or(Error::UnreachableState(q as StateId))?;
        reps.push((q as StateId, w));
    }
    reps.sort_by(|x, y| length_lex(&x.1, &y.1));
    let mut trans_reps: Vec<(StateId, Symbol, Vec<Symbol>)> = reps
        .iter()
        .flat_map(|(q, u)| {
            a.ts.alphabet()
                .symbols()
                .filter(|&s| a.ts.succ(*q, s).is_some())
                .map(move |s| {
                    let mut ua = u.clone();
                    ua.push(s);
                    (*q, s, ua)
                })
        })
        .collect();
    trans_reps.sort_by(|x, y| length_lex(&x.2, &y.2));
    Ok(RepresentativeTable { reps, trans_reps })
}

/// Ultimately periodic words `uv^ω` in normal form with `|u| + |v| ≤ max`,
/// ordered by `|u| + |v|`, then by `u`, then by `v`. Duplicates are dropped.
pub fn short_words(symbols: usize, max: usize) -> Vec<OmegaWord> {
    fn all(symbols: usize, len: usize) -> Vec<Vec<Symbol>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..symbols).map(move |s| {
                        let mut w = w.clone();
                        w.push(Symbol(s as u16));
                        w
                    })
                })
                .collect();
        }
        out
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for total in 1..=max {
        for ulen in 0..total {
            for u in all(symbols, ulen) {
                for v in all(symbols, total - ulen) {
                    let w = OmegaWord::new(u.clone(), v).expect("non-empty period");
                    if seen.insert(w.clone()) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

/// Largest total length whose word list stays within the budget.
fn short_length(symbols: usize) -> usize {
    let mut count = 0usize;
    let mut len = 0;
    while len < 12 {
        let next = (len + 1) * symbols.pow(len as u32 + 1);
        if count + next > SHORT_WORD_BUDGET {
            break;
        }
        count += next;
        len += 1;
    }
    len
}

/// A word accepted from exactly one of `p` and `q`, or `None` if both states
/// have the same residual language. Short words are tried first in a fixed
/// order; otherwise the equivalence oracle supplies the witness.
pub fn separating_word(a: &Automaton, p: StateId, q: StateId) -> Result<Option<OmegaWord>> {
    if p == q {
        return Ok(None);
    }
    for w in short_words(a.ts.alphabet().len(), short_length(a.ts.alphabet().len())) {
        if a.accepts_from(p, &w)? != a.accepts_from(q, &w)? {
            return Ok(Some(w));
        }
    }
    equivalence(&a.reroot(p), &a.reroot(q))
}

/// A word accepted from `q`, preferring short words.
fn accepted_continuation(a: &Automaton, q: StateId) -> Result<Option<OmegaWord>> {
    for w in short_words(a.ts.alphabet().len(), short_length(a.ts.alphabet().len())) {
        if a.accepts_from(q, &w)? {
            return Ok(Some(w));
        }
    }
    accepted_word_from(a, q)
}

fn labeled(a: &Automaton, words: Vec<OmegaWord>) -> Result<Sample> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for w in words {
        if a.accepts(&w)? {
            pos.push(w);
        } else {
            neg.push(w);
        }
    }
    Sample::new(a.ts.alphabet().clone(), pos, neg)
}

/// Sample fixing the transition structure: every transition representative
/// is extended to an accepted word, and every state representative is
/// separated from every transition representative of another state by a
/// shared suffix.
pub fn congruence_sample(a: &Automaton) -> Result<Sample> {
    let table = minimal_representatives(a)?;
    let mut words = Vec::new();
    for (q, s, v) in &table.trans_reps {
        let target = a.ts.succ(*q, *s).expect("defined");
        if let Some(w) = accepted_continuation(a, target)? {
            words.push(w.prepend(v));
        }
    }
    let n = a.ts.num_states();
    let mut sep: Vec<Vec<Option<Option<OmegaWord>>>> = vec![vec![None; n]; n];
    for (p, u) in &table.reps {
        for (q, s, v) in &table.trans_reps {
            let target = a.ts.succ(*q, *s).expect("defined");
            if target == *p {
                continue;
            }
            let (x, y) = ((*p).min(target), (*p).max(target));
            if sep[x as usize][y as usize].is_none() {
                sep[x as usize][y as usize] = Some(separating_word(a, x, y)?);
            }
            let w = sep[x as usize][y as usize]
                .clone()
                .flatten()
                .ok_or(Error::NotIrc(x, y))?;
            words.push(w.prepend(u));
            words.push(w.prepend(v));
        }
    }
    labeled(a, words)
}

fn reachable_universe(ts: &TransitionSystem) -> TransSet {
    let mut live = vec![false; ts.num_states()];
    for q in ts.reachable() {
        live[q as usize] = true;
    }
    ts.transitions().filter(|t| live[t.state as usize]).collect()
}

fn minus(a: &TransSet, b: &TransSet) -> TransSet {
    a.difference(b).copied().collect()
}

/// Sample fixing the acceptance condition on the given transition structure.
pub fn condition_sample(a: &Automaton) -> Result<Sample> {
    let ts = &a.ts;
    let universe = reachable_universe(ts);
    let visit = |c: &TransSet| ts.word_visiting_all(c, &[]);
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    match &a.condition {
        AcceptanceCondition::Buchi(f) => {
            for c in ts.scc_transition_sets(&minus(&universe, f)) {
                neg.push(visit(&c)?);
            }
        }
        AcceptanceCondition::GenBuchi(fs) => {
            for f in fs {
                for c in ts.scc_transition_sets(&minus(&universe, f)) {
                    neg.push(visit(&c)?);
                }
            }
            for c in ts.scc_transition_sets(&universe) {
                if a.condition.satisfies(&c)? {
                    pos.push(visit(&c)?);
                }
            }
        }
        AcceptanceCondition::Parity(k) => {
            let mut layer = universe.clone();
            while !layer.is_empty() {
                let sccs = ts.scc_transition_sets(&layer);
                for c in &sccs {
                    let word = visit(c)?;
                    if a.condition.satisfies(c)? {
                        pos.push(word);
                    } else {
                        neg.push(word);
                    }
                }
                // drop the least priority of every component
                let mut next = TransSet::new();
                for c in &sccs {
                    let min = c.iter().map(|t| k[t]).min().expect("non-empty");
                    next.extend(c.iter().copied().filter(|t| k[t] > min));
                }
                layer = next;
            }
        }
        AcceptanceCondition::Rabin(pairs) => {
            let mut done = HashSet::new();
            for pair in pairs {
                for c in ts.scc_transition_sets(&minus(&universe, &pair.fin)) {
                    rabin_loops(a, &c, &mut done, &mut pos, &mut neg)?;
                }
            }
        }
        AcceptanceCondition::Muller(_) => {
            return Err(Error::UnsupportedType("no condition sample for Muller conditions".into()));
        }
    }
    Sample::new(ts.alphabet().clone(), pos, neg)
}

/// Adds a word for `k`, and for accepting `k` the maximal rejecting subloops,
/// found by removing every `F` of a pair whose `E` avoids `k`. Subloops that
/// are still accepting are decomposed the same way.
fn rabin_loops(
    a: &Automaton,
    k: &TransSet,
    done: &mut HashSet<TransSet>,
    pos: &mut Vec<OmegaWord>,
    neg: &mut Vec<OmegaWord>,
) -> Result<()> {
    if !done.insert(k.clone()) {
        return Ok(());
    }
    let AcceptanceCondition::Rabin(pairs) = &a.condition else { unreachable!() };
    let word = a.ts.word_visiting_all(k, &[])?;
    if !a.condition.satisfies(k)? {
        neg.push(word);
        return Ok(());
    }
    pos.push(word);
    let removed: TransSet = pairs
        .iter()
        .filter(|p| p.fin.is_disjoint(k))
        .flat_map(|p| p.inf.iter().copied())
        .collect();
    for d in a.ts.scc_transition_sets(&minus(k, &removed)) {
        rabin_loops(a, &d, done, pos, neg)?;
    }
    Ok(())
}

/// Union of the congruence and condition samples.
pub fn characteristic_sample(a: &Automaton) -> Result<Sample> {
    congruence_sample(a)?.merge(&condition_sample(a)?)
}

/// Whether `s` satisfies both requirements on a characteristic sample for the
/// transition structure of `a`.
pub fn is_congruence_characteristic(a: &Automaton, s: &Sample) -> Result<bool> {
    let table = minimal_representatives(a)?;
    let starts_with = |w: &OmegaWord, v: &[Symbol]| w.prefix(v.len()) == v;
    for (q, sym, v) in &table.trans_reps {
        let target = a.ts.succ(*q, *sym).expect("defined");
        let extendable = accepted_word_from(a, target)?.is_some();
        if extendable && !s.positives().iter().any(|w| starts_with(w, v)) {
            return Ok(false);
        }
    }
    for (p, u) in &table.reps {
        for (q, sym, v) in &table.trans_reps {
            if a.ts.succ(*q, *sym) == Some(*p) {
                continue;
            }
            let found = s.labeled().any(|(w1, l1)| {
                starts_with(w1, u)
                    && s.label(&w1.suffix(u.len()).prepend(v)) == Some(!l1)
            });
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
