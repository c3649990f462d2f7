//! Language equivalence of deterministic automata with counterexamples.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::condition::{AcceptanceCondition, Automaton};
use crate::error::{Error, Result};
use crate::oracle::formula::{find_loop, Formula};
use crate::oracle::loops::enumerate_loops_with_guard;
use crate::ts::{StateId, TransSet, Transition, TransitionSystem};
use crate::word::{OmegaWord, Symbol};

/// Synchronous product over the transitions both automata define.
struct Product {
    ts: TransitionSystem,
    pairs: Vec<(StateId, StateId)>,
    access: Vec<Vec<Symbol>>,
}

impl Product {
    fn new(a1: &Automaton, a2: &Automaton) -> Result<Product> {
        if a1.ts.alphabet() != a2.ts.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let alphabet = a1.ts.alphabet().clone();
        let start = (a1.ts.initial(), a2.ts.initial());
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::from([(start, 0)]);
        let mut pairs = vec![start];
        let mut access = vec![Vec::new()];
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0 as StateId]);
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id as usize];
            for a in alphabet.symbols() {
                let (Some(p2), Some(q2)) = (a1.ts.succ(p, a), a2.ts.succ(q, a)) else {
                    continue;
                };
                let next = *index.entry((p2, q2)).or_insert_with(|| {
                    pairs.push((p2, q2));
                    let mut w = access[id as usize].clone();
                    w.push(a);
                    access.push(w);
                    queue.push_back((pairs.len() - 1) as StateId);
                    (pairs.len() - 1) as StateId
                });
                edges.push((id, a, next));
            }
        }
        let mut ts = TransitionSystem::new(alphabet, pairs.len());
        for (p, a, q) in edges {
            ts.add(p, a, q);
        }
        Ok(Product { ts, pairs, access })
    }

    fn left(&self, t: Transition) -> Transition {
        Transition::new(self.pairs[t.state as usize].0, t.symbol)
    }

    fn right(&self, t: Transition) -> Transition {
        Transition::new(self.pairs[t.state as usize].1, t.symbol)
    }
}

/// Checks that a witness really separates the automata.
fn confirm(a1: &Automaton, a2: &Automaton, w: OmegaWord) -> Result<OmegaWord> {
    if a1.accepts(&w)? == a2.accepts(&w)? {
        return Err(Error::InternalInconsistency(
            "equivalence witness does not separate the automata".into(),
        ));
    }
    Ok(w)
}

/// Finds a word accepted by `a` starting from `q`.
pub fn accepted_word_from(a: &Automaton, q: StateId) -> Result<Option<OmegaWord>> {
    let reach = reachable_transitions(&a.ts, q);
    let phi = Formula::of_condition(&a.condition, &a.ts.universe());
    match find_loop(&a.ts, &reach, &phi) {
        Some(c) => a.ts.word_visiting_all_from(q, &c, &[]).map(Some),
        None => Ok(None),
    }
}

/// Finds a word rejected by `a` from `q` whose run does not escape.
pub fn rejected_loop_word_from(a: &Automaton, q: StateId) -> Result<Option<OmegaWord>> {
    let reach = reachable_transitions(&a.ts, q);
    let phi = Formula::of_condition(&a.condition, &a.ts.universe()).negate();
    match find_loop(&a.ts, &reach, &phi) {
        Some(c) => a.ts.word_visiting_all_from(q, &c, &[]).map(Some),
        None => Ok(None),
    }
}

fn reachable_transitions(ts: &TransitionSystem, from: StateId) -> TransSet {
    let mut seen = vec![false; ts.num_states()];
    seen[from as usize] = true;
    let mut queue = VecDeque::from([from]);
    let mut out = TransSet::new();
    while let Some(q) = queue.pop_front() {
        for a in ts.alphabet().symbols() {
            if let Some(next) = ts.succ(q, a) {
                out.insert(Transition::new(q, a));
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    out
}

/// A word accepted by exactly one of the automata, or `None` if their
/// languages coincide. Loops of the product are searched first, then words
/// on which exactly one automaton escapes.
pub fn equivalence(a1: &Automaton, a2: &Automaton) -> Result<Option<OmegaWord>> {
    let product = Product::new(a1, a2)?;
    let universe = product.ts.universe();
    let domain: Vec<Transition> = universe.iter().copied().collect();
    let phi1 = Formula::of_condition(&a1.condition, &a1.ts.universe()).pull_back(&domain, |t| product.left(t));
    let phi2 = Formula::of_condition(&a2.condition, &a2.ts.universe()).pull_back(&domain, |t| product.right(t));
    for phi in [
        Formula::And(vec![phi1.clone(), phi2.negate()]),
        Formula::And(vec![phi1.negate(), phi2.clone()]),
    ] {
        if let Some(c) = find_loop(&product.ts, &universe, &phi) {
            let w = product.ts.word_visiting_all(&c, &[])?;
            return confirm(a1, a2, w).map(Some);
        }
    }
    escape_witness(a1, a2, &product)
}

/// Words on which exactly one automaton escapes are rejected by that one, so
/// they separate the automata iff the other accepts the continuation.
fn escape_witness(a1: &Automaton, a2: &Automaton, product: &Product) -> Result<Option<OmegaWord>> {
    for (id, &(p, q)) in product.pairs.iter().enumerate() {
        for a in a1.ts.alphabet().symbols() {
            let found = match (a1.ts.succ(p, a), a2.ts.succ(q, a)) {
                (Some(p2), None) => accepted_word_from(a1, p2)?,
                (None, Some(q2)) => accepted_word_from(a2, q2)?,
                _ => None,
            };
            if let Some(rest) = found {
                let mut prefix = product.access[id].clone();
                prefix.push(a);
                return confirm(a1, a2, rest.prepend(&prefix)).map(Some);
            }
        }
    }
    Ok(None)
}

/// Same contract as [`equivalence`], by enumerating every reachable loop of
/// the product. Guarded by the number of product transitions.
pub fn equivalence_exhaustive(a1: &Automaton, a2: &Automaton, guard: usize) -> Result<Option<OmegaWord>> {
    let product = Product::new(a1, a2)?;
    let loops = enumerate_loops_with_guard(&product.ts, guard)?;
    for c in loops {
        let left: TransSet = c.iter().map(|&t| product.left(t)).collect();
        let right: TransSet = c.iter().map(|&t| product.right(t)).collect();
        if a1.condition.satisfies(&left)? != a2.condition.satisfies(&right)? {
            let w = product.ts.word_visiting_all(&c, &[])?;
            return confirm(a1, a2, w).map(Some);
        }
    }
    escape_witness(a1, a2, &product)
}

/// Equivalence of two parity automata by priority-bounded SCC checks on the
/// product.
pub fn parity_equiv_fast(a1: &Automaton, a2: &Automaton) -> Result<Option<OmegaWord>> {
    let (AcceptanceCondition::Parity(k1), AcceptanceCondition::Parity(k2)) = (&a1.condition, &a2.condition) else {
        return Err(Error::UnsupportedType("fast equivalence needs two parity automata".into()));
    };
    let product = Product::new(a1, a2)?;
    let universe = product.ts.universe();
    let pri = |k: &BTreeMap<Transition, u32>, t: Transition| k[&t];
    let used = |k: &BTreeMap<Transition, u32>| {
        let mut v: Vec<u32> = k.values().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (used1, used2) = (used(k1), used(k2));
    for &c1 in &used1 {
        for &c2 in &used2 {
            if c1 % 2 == c2 % 2 {
                continue;
            }
            let restricted: TransSet = universe
                .iter()
                .copied()
                .filter(|&t| pri(k1, product.left(t)) >= c1 && pri(k2, product.right(t)) >= c2)
                .collect();
            for scc in product.ts.scc_transition_sets(&restricted) {
                let hits1 = scc.iter().any(|&t| pri(k1, product.left(t)) == c1);
                let hits2 = scc.iter().any(|&t| pri(k2, product.right(t)) == c2);
                if hits1 && hits2 {
                    let w = product.ts.word_visiting_all(&scc, &[])?;
                    return confirm(a1, a2, w).map(Some);
                }
            }
        }
    }
    escape_witness(a1, a2, &product)
}
