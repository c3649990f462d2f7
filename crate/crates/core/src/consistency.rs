//! Polynomial-time consistency solvers for partial conditions.
//!
//! Every solver takes the explicit transition universe (the defined
//! transitions of the ambient system) and returns `None` when no condition of
//! its type agrees with the partial condition.

use std::collections::BTreeMap;

use crate::condition::{induced_partial_condition, AccType, AcceptanceCondition, PartialCondition, RabinPair};
use crate::error::Result;
use crate::sample::Sample;
use crate::ts::{union, TransSet, Transition, TransitionSystem};

/// Strictly decreasing chain of transition sets with alternating
/// classification. `false` means accepting (even), `true` rejecting (odd).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZielonkaPath {
    pub entries: Vec<(TransSet, bool)>,
}

impl ZielonkaPath {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Priority of each transition: `σ₀ + max{i : t ∈ Zᵢ}`.
    pub fn priorities(&self) -> BTreeMap<Transition, u32> {
        let sigma0 = self.entries.first().map_or(0, |e| e.1 as u32);
        let mut k = BTreeMap::new();
        for (i, (z, _)) in self.entries.iter().enumerate() {
            for &t in z {
                k.insert(t, sigma0 + i as u32);
            }
        }
        k
    }

    /// Checks the structural invariants: strict chain, alternation and
    /// `Z₀ = universe`.
    pub fn is_well_formed(&self, universe: &TransSet) -> bool {
        let Some((z0, _)) = self.entries.first() else {
            return universe.is_empty();
        };
        z0 == universe
            && self.entries.windows(2).all(|w| {
                w[1].0.is_subset(&w[0].0) && w[1].0.len() < w[0].0.len() && w[1].1 != w[0].1
            })
    }
}

fn maximal(sets: &[&TransSet]) -> Vec<TransSet> {
    sets.iter()
        .filter(|n| !sets.iter().any(|m| m.len() > n.len() && n.is_subset(m)))
        .map(|n| (*n).clone())
        .collect()
}

/// `F = universe ∖ ⋃H₁`, or `None` if some positive set is covered by the
/// negative union.
pub fn buchi_cons(h: &PartialCondition, universe: &TransSet) -> Result<Option<TransSet>> {
    h.check()?;
    let covered = union(h.negatives());
    if h.positives().iter().any(|p| p.is_subset(&covered)) {
        return Ok(None);
    }
    Ok(Some(universe.difference(&covered).copied().collect()))
}

/// One component `universe ∖ N` per ⊆-maximal negative set `N`.
pub fn gen_buchi_cons(h: &PartialCondition, universe: &TransSet) -> Result<Option<Vec<TransSet>>> {
    h.check()?;
    if h.negatives().is_empty() {
        return Ok(Some(vec![universe.clone()]));
    }
    let all: Vec<&TransSet> = h.negatives().iter().collect();
    let max = maximal(&all);
    if h
        .positives()
        .iter()
        .any(|p| max.iter().any(|n| p.is_subset(n)))
    {
        return Ok(None);
    }
    Ok(Some(
        max.iter()
            .map(|n| universe.difference(n).copied().collect())
            .collect(),
    ))
}

/// Builds the Zielonka path for a partial condition classifying `universe`.
fn zielonka(h: &PartialCondition, universe: &TransSet) -> Option<ZielonkaPath> {
    let mut sigma = match h.classify(universe) {
        Some(true) => false,
        Some(false) => true,
        None => return None,
    };
    let mut entries = vec![(universe.clone(), sigma)];
    loop {
        let prev = &entries.last().expect("non-empty").0;
        // sets classified 1 - sigma: positives when sigma is odd
        let family = if sigma { h.positives() } else { h.negatives() };
        let z: TransSet = family
            .iter()
            .filter(|x| x.is_subset(prev))
            .flatten()
            .copied()
            .collect();
        if z.is_empty() {
            return Some(ZielonkaPath { entries });
        }
        if z == *prev {
            return None;
        }
        sigma = !sigma;
        entries.push((z, sigma));
    }
}

/// Minimal parity condition via a Zielonka path. When `universe` is not
/// classified, both extensions are tried and the shorter path wins, the
/// positive one on ties.
pub fn parity_cons(
    h: &PartialCondition,
    universe: &TransSet,
) -> Result<Option<(ZielonkaPath, BTreeMap<Transition, u32>)>> {
    h.check()?;
    if universe.is_empty() {
        return Ok(if h.positives().is_empty() && h.negatives().is_empty() {
            Some((ZielonkaPath { entries: Vec::new() }, BTreeMap::new()))
        } else {
            None
        });
    }
    let path = if h.classify(universe).is_some() {
        zielonka(h, universe)
    } else {
        let p = zielonka(&h.with_positive(universe.clone()), universe);
        let n = zielonka(&h.with_negative(universe.clone()), universe);
        match (p, n) {
            (Some(p), Some(n)) => Some(if n.len() < p.len() { n } else { p }),
            (p, n) => p.or(n),
        }
    };
    Ok(path.map(|p| {
        let k = p.priorities();
        (p, k)
    }))
}

/// One pair per positive set `P`: `E = universe ∖ P` and `F = P` minus every
/// negative subset of `P`.
pub fn rabin_cons(h: &PartialCondition, universe: &TransSet) -> Result<Option<Vec<RabinPair>>> {
    h.check()?;
    let mut pairs = Vec::with_capacity(h.positives().len());
    for p in h.positives() {
        let covered = union(h.negatives().iter().filter(|n| n.is_subset(p)));
        let inf: TransSet = p.difference(&covered).copied().collect();
        if inf.is_empty() {
            return Ok(None);
        }
        pairs.push(RabinPair {
            fin: universe.difference(p).copied().collect(),
            inf,
        });
    }
    Ok(Some(pairs))
}

/// Runs the solver for `acc_type`.
pub fn solve(h: &PartialCondition, universe: &TransSet, acc_type: AccType) -> Result<Option<AcceptanceCondition>> {
    Ok(match acc_type {
        AccType::Buchi => buchi_cons(h, universe)?.map(AcceptanceCondition::Buchi),
        AccType::GenBuchi => gen_buchi_cons(h, universe)?.map(AcceptanceCondition::GenBuchi),
        AccType::Parity => parity_cons(h, universe)?.map(|(_, k)| AcceptanceCondition::Parity(k)),
        AccType::Rabin => rabin_cons(h, universe)?.map(AcceptanceCondition::Rabin),
    })
}

/// Whether some condition of type `acc_type` on `ts` is consistent with the
/// sample: no conflict between positive and negative runs, and the solver
/// finds a condition.
pub fn ts_consistent(ts: &TransitionSystem, sample: &Sample, acc_type: AccType) -> Result<bool> {
    match induced_partial_condition(ts, sample)? {
        Err(_) => Ok(false),
        Ok(h) => Ok(solve(&h, &ts.universe(), acc_type)?.is_some()),
    }
}

/// Dual condition types, solved on the swapped partial condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualFlavor {
    CoBuchi,
    Streett,
}

/// Solves for the dual type by exchanging positive and negative sets. The
/// result describes the complement: a co-Büchi condition is returned as the
/// Büchi set `F` whose visits are forbidden, a Streett condition as the Rabin
/// pairs of the complemented language.
pub fn streett_or_cobuchi_cons(
    h: &PartialCondition,
    universe: &TransSet,
    flavor: DualFlavor,
) -> Result<Option<AcceptanceCondition>> {
    let swapped = h.swapped();
    match flavor {
        DualFlavor::CoBuchi => solve(&swapped, universe, AccType::Buchi),
        DualFlavor::Streett => solve(&swapped, universe, AccType::Rabin),
    }
}
