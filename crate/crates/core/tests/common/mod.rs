#![allow(dead_code)]

use std::collections::BTreeMap;

use sprout_core::{
    AcceptanceCondition, Alphabet, Automaton, OmegaWord, PartialCondition, Sample, Symbol, TransSet, Transition,
    TransitionSystem,
};

pub const A: Symbol = Symbol(0);
pub const B: Symbol = Symbol(1);

pub fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

pub fn w(s: &str) -> OmegaWord {
    ab().parse_word(s).unwrap()
}

pub fn sample(pos: &[&str], neg: &[&str]) -> Sample {
    Sample::new(ab(), pos.iter().map(|s| w(s)), neg.iter().map(|s| w(s))).unwrap()
}

/// The three-state DPA for `(Σ*b³)^ω`: states ε, b, bb; only the b-edge
/// from bb has priority 0.
pub fn fix_a() -> Automaton {
    let mut ts = TransitionSystem::new(ab(), 3);
    ts.add(0, A, 0);
    ts.add(0, B, 1);
    ts.add(1, A, 0);
    ts.add(1, B, 2);
    ts.add(2, A, 0);
    ts.add(2, B, 0);
    let k: BTreeMap<Transition, u32> = ts
        .transitions()
        .map(|t| (t, if t == Transition::new(2, B) { 0 } else { 1 }))
        .collect();
    Automaton::new(ts, AcceptanceCondition::Parity(k)).unwrap()
}

pub fn fix_s3() -> Sample {
    sample(
        &["(b)", "(bbbabbaba)", "(abbb)", "(babb)", "(bbab)", "(bbba)"],
        &["(a)", "(ba)", "(bba)"],
    )
}

/// Seven transitions τ1..τ7 on a single-letter system.
pub fn tau(i: u32) -> Transition {
    Transition::new(i, Symbol(0))
}

pub fn taus(ids: &[u32]) -> TransSet {
    ids.iter().map(|&i| tau(i)).collect()
}

/// Partial condition of the Zielonka-path figure.
pub fn tau_partial_condition() -> (PartialCondition, TransSet) {
    let pos: [&[u32]; 7] = [
        &[1, 2, 3, 4, 5, 6, 7],
        &[1, 2, 3, 4],
        &[4, 5, 6, 7],
        &[1, 2],
        &[2, 3, 4],
        &[4, 5, 7],
        &[4, 6, 7],
    ];
    let neg: [&[u32]; 4] = [&[1], &[2, 3], &[5], &[4, 6]];
    (
        PartialCondition::new(pos.iter().map(|p| taus(p)), neg.iter().map(|n| taus(n))),
        taus(&[1, 2, 3, 4, 5, 6, 7]),
    )
}

/// The sample Sⁱ for `(Σ*bⁱ)^ω`.
pub fn s_i(i: usize) -> Sample {
    let b = |n: usize| "b".repeat(n);
    let mut pos = vec!["(b)".to_string()];
    pos.push(format!("({})", (1..=i).rev().map(|j| format!("{}a", b(j))).collect::<String>()));
    for j in 0..=i {
        pos.push(format!("({}a{})", b(j), b(i - j)));
    }
    let neg: Vec<String> = (0..i).map(|j| format!("({}a)", b(j))).collect();
    let pos: Vec<&str> = pos.iter().map(String::as_str).collect();
    let neg: Vec<&str> = neg.iter().map(String::as_str).collect();
    sample(&pos, &neg)
}

/// Hand-built DPA for `(Σ*bⁱ)^ω`: state j counts trailing b's, the b-edge
/// completing a block has priority 0, every other edge priority 1.
pub fn reference_dpa(i: usize) -> Automaton {
    let mut ts = TransitionSystem::new(ab(), i);
    let mut k = BTreeMap::new();
    for j in 0..i as u32 {
        ts.add(j, A, 0);
        k.insert(Transition::new(j, A), 1);
        let next = if j + 1 == i as u32 { 0 } else { j + 1 };
        ts.add(j, B, next);
        k.insert(Transition::new(j, B), if next == 0 { 0 } else { 1 });
    }
    Automaton::new(ts, AcceptanceCondition::Parity(k)).unwrap()
}

/// Membership in L∨: `aaaa` or `bbbb` occurs infinitely often.
pub fn in_l_or(x: &OmegaWord) -> bool {
    let v = x.period();
    let cyclic: Vec<Symbol> = v.iter().chain(v.iter()).chain(v.iter()).chain(v.iter()).chain(v.iter()).copied().collect();
    cyclic.windows(4).any(|win| win.iter().all(|&s| s == win[0]))
}

/// Hand-built DBA for L∨: state `(σ, c)` records a trailing run of `c ≤ 3`
/// copies of `σ`; extending a run of three is the accepting edge.
pub fn l_or_dba() -> Automaton {
    let id = |sym: Symbol, run: u32| 1 + sym.0 as u32 * 3 + run - 1;
    let mut ts = TransitionSystem::new(ab(), 7);
    let mut f = TransSet::new();
    for s in [A, B] {
        ts.add(0, s, id(s, 1));
        for prev in [A, B] {
            for run in 1..=3 {
                let q = id(prev, run);
                if s != prev {
                    ts.add(q, s, id(s, 1));
                } else if run < 3 {
                    ts.add(q, s, id(s, run + 1));
                } else {
                    ts.add(q, s, q);
                    f.insert(Transition::new(q, s));
                }
            }
        }
    }
    Automaton::new(ts, AcceptanceCondition::Buchi(f)).unwrap()
}
