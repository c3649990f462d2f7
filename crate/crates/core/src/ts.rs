//! Deterministic partial transition systems, runs and strongly connected
//! transition sets.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{length_lex, Alphabet, OmegaWord, Symbol};

pub type StateId = u32;

/// A transition `(state, symbol)`. The target is determined by the
/// transition system. Ordered by state, then symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub state: StateId,
    pub symbol: Symbol,
}

impl Transition {
    pub fn new(state: StateId, symbol: Symbol) -> Self {
        Transition { state, symbol }
    }
}

/// Set of transitions in canonical order.
pub type TransSet = BTreeSet<Transition>;

/// Orders transition sets by size, then lexicographically.
pub fn set_order(a: &TransSet, b: &TransSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

/// Outcome of running a transition system on an ultimately periodic word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Run {
    Infinite {
        /// Transitions taken before the loop is entered.
        prefix: Vec<Transition>,
        inf: TransSet,
    },
    Escaping {
        state: StateId,
        escape_prefix: Vec<Symbol>,
        exit: OmegaWord,
    },
}

impl Run {
    pub fn inf(&self) -> Option<&TransSet> {
        match self {
            Run::Infinite { inf, .. } => Some(inf),
            Run::Escaping { .. } => None,
        }
    }

    pub fn is_escaping(&self) -> bool {
        matches!(self, Run::Escaping { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionSystem {
    alphabet: Alphabet,
    delta: Vec<Vec<Option<StateId>>>,
    initial: StateId,
}

impl TransitionSystem {
    /// A system with `states` states, no transitions and initial state 0.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        TransitionSystem {
            alphabet,
            delta: vec![vec![None; k]; states.max(1)],
            initial: 0,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!((q as usize) < self.delta.len(), "state out of range");
        self.initial = q;
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        0..self.delta.len() as StateId
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(vec![None; self.alphabet.len()]);
        (self.delta.len() - 1) as StateId
    }

    pub fn set(&mut self, q: StateId, a: Symbol, target: Option<StateId>) {
        if let Some(t) = target {
            assert!((t as usize) < self.delta.len(), "target out of range");
        }
        self.delta[q as usize][a.index()] = target;
    }

    pub fn add(&mut self, q: StateId, a: Symbol, target: StateId) {
        self.set(q, a, Some(target));
    }

    pub fn succ(&self, q: StateId, a: Symbol) -> Option<StateId> {
        self.delta[q as usize][a.index()]
    }

    pub fn target(&self, t: Transition) -> Option<StateId> {
        self.succ(t.state, t.symbol)
    }

    /// All defined transitions in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter().enumerate().filter_map(move |(a, t)| {
                t.map(|_| Transition::new(q as StateId, Symbol(a as u16)))
            })
        })
    }

    /// The set of all defined transitions.
    pub fn universe(&self) -> TransSet {
        self.transitions().collect()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions().count()
    }

    /// State reached from `q` on a finite word, `None` if the run is undefined.
    pub fn walk(&self, q: StateId, word: &[Symbol]) -> Option<StateId> {
        word.iter().try_fold(q, |s, &a| self.succ(s, a))
    }

    /// `δ*(q₀, word)`.
    pub fn reach(&self, word: &[Symbol]) -> Option<StateId> {
        self.walk(self.initial, word)
    }

    fn check_symbols(&self, w: &OmegaWord) -> Result<()> {
        let k = self.alphabet.len();
        match w.spoke().iter().chain(w.period()).find(|s| s.index() >= k) {
            Some(s) => Err(Error::SymbolNotInAlphabet(format!("#{}", s.0))),
            None => Ok(()),
        }
    }

    /// Runs the system on `w` from the initial state.
    pub fn run(&self, w: &OmegaWord) -> Result<Run> {
        self.run_from(self.initial, w)
    }

    /// Runs the system on `w` starting in `q`.
    pub fn run_from(&self, q: StateId, w: &OmegaWord) -> Result<Run> {
        self.check_symbols(w)?;
        let mut state = q;
        let mut taken: Vec<Transition> = Vec::new();
        let escape = |pos: usize, state: StateId| Run::Escaping {
            state,
            escape_prefix: w.prefix(pos + 1),
            exit: w.suffix(pos),
        };
        for (i, &a) in w.spoke().iter().enumerate() {
            match self.succ(state, a) {
                Some(t) => {
                    taken.push(Transition::new(state, a));
                    state = t;
                }
                None => return Ok(escape(i, state)),
            }
        }
        let base = w.spoke().len();
        let period = w.period();
        let mut seen: HashMap<(StateId, usize), usize> = HashMap::new();
        let mut pos = base;
        loop {
            let offset = (pos - base) % period.len();
            if let Some(&start) = seen.get(&(state, offset)) {
                let inf = taken[start..].iter().copied().collect();
                taken.truncate(start);
                return Ok(Run::Infinite { prefix: taken, inf });
            }
            seen.insert((state, offset), taken.len());
            let a = period[offset];
            match self.succ(state, a) {
                Some(t) => {
                    taken.push(Transition::new(state, a));
                    state = t;
                }
                None => return Ok(escape(pos, state)),
            }
            pos += 1;
        }
    }

    /// Positive words whose run escapes, paired with their escape prefix,
    /// sorted length-lexicographically by escape prefix.
    pub fn escapes<'a>(
        &self,
        words: impl IntoIterator<Item = &'a OmegaWord>,
    ) -> Result<Vec<(OmegaWord, Vec<Symbol>)>> {
        let mut out = Vec::new();
        for w in words {
            if let Run::Escaping { escape_prefix, .. } = self.run(w)? {
                out.push((w.clone(), escape_prefix));
            }
        }
        out.sort_by(|a, b| length_lex(&a.1, &b.1).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    /// Whether both words escape from the same state with equal exit strings.
    pub fn indistinguishable(&self, w1: &OmegaWord, w2: &OmegaWord) -> Result<bool> {
        match (self.run(w1)?, self.run(w2)?) {
            (
                Run::Escaping {
                    state: s1, exit: e1, ..
                },
                Run::Escaping {
                    state: s2, exit: e2, ..
                },
            ) => Ok(s1 == s2 && e1.omega_equal(&e2)),
            _ => Ok(false),
        }
    }

    /// States reachable from the initial state, in canonical order.
    pub fn reachable(&self) -> Vec<StateId> {
        self.canonical_order()
    }

    /// Length-lexicographically minimal access word of every state, `None`
    /// for unreachable states.
    pub fn access_words(&self) -> Vec<Option<Vec<Symbol>>> {
        let mut words: Vec<Option<Vec<Symbol>>> = vec![None; self.num_states()];
        words[self.initial as usize] = Some(Vec::new());
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                if let Some(t) = self.succ(q, a) {
                    if words[t as usize].is_none() {
                        let mut w = words[q as usize].clone().expect("visited");
                        w.push(a);
                        words[t as usize] = Some(w);
                        queue.push_back(t);
                    }
                }
            }
        }
        words
    }

    /// Reachable states in canonical order (length-lexicographic order of
    /// their minimal access words).
    pub fn canonical_order(&self) -> Vec<StateId> {
        let words = self.access_words();
        let mut states: Vec<(StateId, Vec<Symbol>)> = words
            .into_iter()
            .enumerate()
            .filter_map(|(q, w)| w.map(|w| (q as StateId, w)))
            .collect();
        states.sort_by(|a, b| length_lex(&a.1, &b.1));
        states.into_iter().map(|(q, _)| q).collect()
    }

    /// Renumbers reachable states in canonical order and drops unreachable
    /// ones. Returns the new system and the map from old to new ids.
    pub fn canonicalize(&self) -> (TransitionSystem, Vec<Option<StateId>>) {
        let order = self.canonical_order();
        let mut map = vec![None; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            map[q as usize] = Some(i as StateId);
        }
        let mut ts = TransitionSystem::new(self.alphabet.clone(), order.len());
        for (i, &q) in order.iter().enumerate() {
            for a in self.alphabet.symbols() {
                if let Some(t) = self.succ(q, a) {
                    ts.add(i as StateId, a, map[t as usize].expect("target reachable"));
                }
            }
        }
        (ts, map)
    }

    /// Display name of each state: its minimal access word, or `q<id>` if
    /// unreachable.
    pub fn state_names(&self) -> Vec<String> {
        self.access_words()
            .into_iter()
            .enumerate()
            .map(|(q, w)| match w {
                Some(w) => self.alphabet.format_or_epsilon(&w),
                None => format!("q{q}"),
            })
            .collect()
    }

    /// Same system with a different initial state.
    pub fn reroot(&self, q: StateId) -> TransitionSystem {
        let mut ts = self.clone();
        ts.set_initial(q);
        ts
    }

    /// Keeps only the given transitions.
    pub fn restrict(&self, keep: &TransSet) -> TransitionSystem {
        let mut ts = TransitionSystem::new(self.alphabet.clone(), self.num_states());
        ts.initial = self.initial;
        for t in self.transitions().filter(|t| keep.contains(t)) {
            ts.add(t.state, t.symbol, self.target(t).expect("defined"));
        }
        ts
    }

    /// Transition sets of the non-trivial SCCs of the subsystem containing
    /// only `restrict`, sorted by their minimal transition.
    pub fn scc_transition_sets(&self, restrict: &TransSet) -> Vec<TransSet> {
        let comp = self.scc_ids(restrict);
        let mut sets: HashMap<usize, TransSet> = HashMap::new();
        for &t in restrict {
            let Some(target) = self.target(t) else { continue };
            let c = comp[t.state as usize];
            if c == comp[target as usize] {
                sets.entry(c).or_default().insert(t);
            }
        }
        let mut out: Vec<TransSet> = sets.into_values().collect();
        out.sort_by(|a, b| a.first().cmp(&b.first()));
        out
    }

    /// SCCs of all defined transitions.
    pub fn sccs(&self) -> Vec<TransSet> {
        self.scc_transition_sets(&self.universe())
    }

    /// Whether a non-empty transition set is strongly connected, i.e. forms a
    /// single SCC containing every member.
    pub fn is_strongly_connected(&self, set: &TransSet) -> bool {
        if set.is_empty() {
            return false;
        }
        let sccs = self.scc_transition_sets(set);
        sccs.len() == 1 && sccs[0].len() == set.len()
    }

    /// Tarjan's algorithm, iterative. Returns a component index per state.
    fn scc_ids(&self, restrict: &TransSet) -> Vec<usize> {
        let n = self.num_states();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &t in restrict {
            if let Some(target) = self.target(t) {
                adj[t.state as usize].push(target as usize);
            }
        }
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![UNSEEN; n];
        let mut stack = Vec::new();
        let mut counter = 0;
        let mut ncomp = 0;
        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if *i < adj[v].len() {
                    let w = adj[v][*i];
                    *i += 1;
                    if index[w] == UNSEEN {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().expect("non-empty stack");
                            on_stack[w] = false;
                            comp[w] = ncomp;
                            if w == v {
                                break;
                            }
                        }
                        ncomp += 1;
                    }
                }
            }
        }
        comp
    }

    /// Length-lexicographically least word leading from `from` to a state
    /// satisfying `goal`, using only transitions accepted by `allowed`.
    pub fn shortest_path(
        &self,
        from: StateId,
        goal: impl Fn(StateId) -> bool,
        allowed: impl Fn(Transition) -> bool,
    ) -> Option<Vec<Symbol>> {
        if goal(from) {
            return Some(Vec::new());
        }
        let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[from as usize] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                let t = Transition::new(q, a);
                let Some(next) = self.succ(q, a) else { continue };
                if !allowed(t) || seen[next as usize] {
                    continue;
                }
                seen[next as usize] = true;
                parent[next as usize] = Some((q, a));
                if goal(next) {
                    let mut word = Vec::new();
                    let mut cur = next;
                    while let Some((p, b)) = parent[cur as usize] {
                        word.push(b);
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                queue.push_back(next);
            }
        }
        None
    }

    /// An ultimately periodic word whose run has exactly `component` as its
    /// infinity set. The spoke is `access`, extended by a shortest path into
    /// the component when `access` ends outside of it. The period is a closed
    /// tour visiting the transitions of `component` in canonical order.
    pub fn word_visiting_all(&self, component: &TransSet, access: &[Symbol]) -> Result<OmegaWord> {
        self.word_visiting_all_from(self.initial, component, access)
    }

    /// As [`word_visiting_all`](Self::word_visiting_all), starting in `start`.
    pub fn word_visiting_all_from(
        &self,
        start: StateId,
        component: &TransSet,
        access: &[Symbol],
    ) -> Result<OmegaWord> {
        if component.iter().any(|&t| self.target(t).is_none()) {
            return Err(Error::InvalidCondition(
                "component contains undefined transitions".into(),
            ));
        }
        if !self.is_strongly_connected(component) {
            return Err(Error::NotStronglyConnected);
        }
        let states: BTreeSet<StateId> = component.iter().map(|t| t.state).collect();
        let entry = self.walk(start, access).ok_or(Error::Unreachable)?;
        let mut spoke = access.to_vec();
        let base = self
            .shortest_path(entry, |q| states.contains(&q), |_| true)
            .ok_or(Error::Unreachable)?;
        spoke.extend(base);
        let home = self.walk(start, &spoke).expect("path is defined");

        let inside = |t: Transition| component.contains(&t);
        let mut unvisited = component.clone();
        let mut period = Vec::new();
        let mut cur = home;
        let step = |cur: &mut StateId, a: Symbol, unvisited: &mut TransSet, period: &mut Vec<Symbol>| {
            unvisited.remove(&Transition::new(*cur, a));
            period.push(a);
            *cur = self.succ(*cur, a).expect("component transition");
        };
        while let Some(&next) = unvisited.first() {
            let path = self
                .shortest_path(cur, |q| q == next.state, inside)
                .ok_or(Error::NotStronglyConnected)?;
            for a in path {
                step(&mut cur, a, &mut unvisited, &mut period);
            }
            step(&mut cur, next.symbol, &mut unvisited, &mut period);
        }
        let back = self
            .shortest_path(cur, |q| q == home, inside)
            .ok_or(Error::NotStronglyConnected)?;
        period.extend(back);
        OmegaWord::new(spoke, period)
    }

    /// Human-readable listing, one transition per line.
    pub fn describe(&self) -> String {
        let names = self.state_names();
        let mut out = String::new();
        for t in self.transitions() {
            let target = self.target(t).expect("defined");
            out.push_str(&format!(
                "{} -{}-> {}\n",
                names[t.state as usize],
                self.alphabet.name(t.symbol),
                names[target as usize]
            ));
        }
        out
    }
}

impl fmt::Display for TransitionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Union of a family of transition sets.
pub fn union<'a>(sets: impl IntoIterator<Item = &'a TransSet>) -> TransSet {
    sets.into_iter().flatten().copied().collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn run_examples() {
        let run = fix_a_ts().run(&w("(bbba)")).unwrap();
        let expected: TransSet = [t(0, B), t(1, B), t(2, B), t(0, A)].into_iter().collect();
        assert_eq!(run.inf(), Some(&expected));

        match fix_t1().run(&w("(b)")).unwrap() {
            Run::Escaping {
                state,
                escape_prefix,
                exit,
            } => {
                assert_eq!(state, 1);
                assert_eq!(escape_prefix, vec![B, B]);
                assert_eq!(exit, w("(b)"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let mut one = TransitionSystem::new(ab(), 1);
        one.add(0, A, 0);
        let run = one.run(&w("(a)")).unwrap();
        assert_eq!(run.inf(), Some(&[t(0, A)].into_iter().collect()));
    }

    #[test]
    fn escapes_examples() {
        let t1 = fix_t1();
        let e = t1.escapes([&w("(b)")]).unwrap();
        assert_eq!(e, vec![(w("(b)"), vec![B, B])]);
        assert!(t1.escapes([&w("(a)")]).unwrap().is_empty());

        let empty = TransitionSystem::new(ab(), 1);
        let pos = [
            "(b)",
            "(bbbabbaba)",
            "(abbb)",
            "(babb)",
            "(bbab)",
            "(bbba)",
        ]
        .map(w);
        let e = empty.escapes(pos.iter()).unwrap();
        assert_eq!(e.len(), 6);
        for (word, prefix) in e {
            assert_eq!(prefix, vec![word.at(0)]);
        }
    }

    #[test]
    fn indistinguishable_examples() {
        let t1 = fix_t1();
        assert!(t1.indistinguishable(&w("b(b)"), &w("(b)")).unwrap());
        assert!(t1.indistinguishable(&w("(b)"), &w("a(b)")).unwrap());
        assert!(!t1.indistinguishable(&w("(b)"), &w("(a)")).unwrap());
    }

    #[test]
    fn scc_examples() {
        let ts = fix_a_ts();
        assert_eq!(ts.sccs(), vec![ts.universe()]);
        let mut less = ts.universe();
        less.remove(&t(2, B));
        assert_eq!(ts.scc_transition_sets(&less), vec![less.clone()]);
        let t1 = fix_t1();
        assert_eq!(t1.sccs(), vec![t1.universe()]);
    }

    #[test]
    fn visiting_words() {
        let ts = fix_a_ts();
        let all = ts.universe();
        let word = ts.word_visiting_all(&all, &[]).unwrap();
        assert_eq!(ts.run(&word).unwrap().inf(), Some(&all));

        let part: TransSet = [t(0, B), t(1, A)].into_iter().collect();
        let word = ts.word_visiting_all(&part, &[]).unwrap();
        assert_eq!(word, w("(ba)"));

        let mut one = TransitionSystem::new(ab(), 1);
        one.add(0, A, 0);
        let word = one.word_visiting_all(&one.universe(), &[]).unwrap();
        assert_eq!(word, w("(a)"));

        let broken: TransSet = [t(0, B), t(0, A)].into_iter().collect();
        assert_eq!(
            ts.word_visiting_all(&broken, &[]),
            Err(Error::NotStronglyConnected)
        );
    }

    #[test]
    fn visiting_word_reaches_component() {
        // 0 -a-> 1, 1 -b-> 1
        let mut ts = TransitionSystem::new(ab(), 2);
        ts.add(0, A, 1);
        ts.add(1, B, 1);
        let comp: TransSet = [t(1, B)].into_iter().collect();
        assert_eq!(ts.word_visiting_all(&comp, &[]).unwrap(), w("a(b)"));
        assert_eq!(ts.word_visiting_all(&comp, &[B]), Err(Error::Unreachable));
    }

    #[test]
    fn canonical_order_and_access() {
        let ts = fix_a_ts();
        assert_eq!(ts.state_names(), vec!["ε", "b", "bb"]);
        assert_eq!(ts.canonical_order(), vec![0, 1, 2]);
    }
}
