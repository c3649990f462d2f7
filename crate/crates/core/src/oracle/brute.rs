//! Exhaustive search for acceptance conditions agreeing with a partial
//! condition, optionally bounded in size.
//!
//! Transition sets are handled as bit masks over the sorted universe. Small
//! universes are answered from a precomputed table holding, for every set of
//! accepted loops that a condition of the given type can realize, the first
//! smallest condition realizing it.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::condition::{AccType, AcceptanceCondition, PartialCondition, RabinPair};
use crate::error::{Error, Result};
use crate::ts::{TransSet, Transition};

/// Universes up to this size are answered from a precomputed table.
pub const TABLE_LIMIT: usize = 4;
pub const BUCHI_GUARD: usize = 16;
pub const PARITY_GUARD: usize = 16;
pub const GEN_BUCHI_GUARD: usize = 12;
pub const RABIN_GUARD: usize = 10;
/// Largest number of priority assignments tried at one level.
pub const PARITY_CANDIDATES: u64 = 20_000_000;

/// A condition over universe indices.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Masked {
    Buchi(u64),
    GenBuchi(Vec<u64>),
    Parity(Vec<u32>),
    Rabin(Vec<(u64, u64)>),
}

impl Masked {
    fn size(&self) -> usize {
        match self {
            Masked::Buchi(_) => 1,
            Masked::GenBuchi(c) => c.len(),
            Masked::Parity(k) => distinct(k),
            Masked::Rabin(p) => p.len(),
        }
    }

    fn satisfies(&self, x: u64) -> bool {
        match self {
            Masked::Buchi(f) => x & f != 0,
            Masked::GenBuchi(cs) => cs.iter().all(|c| x & c != 0),
            Masked::Parity(k) => parity_accepts(k, x),
            Masked::Rabin(ps) => ps.iter().any(|&(e, f)| x & e == 0 && x & f != 0),
        }
    }

    fn materialize(&self, universe: &[Transition]) -> AcceptanceCondition {
        let set = |m: u64| -> TransSet {
            universe
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &t)| t)
                .collect()
        };
        match self {
            Masked::Buchi(f) => AcceptanceCondition::Buchi(set(*f)),
            Masked::GenBuchi(cs) => AcceptanceCondition::GenBuchi(cs.iter().map(|&c| set(c)).collect()),
            Masked::Parity(k) => AcceptanceCondition::Parity(universe.iter().copied().zip(k.iter().copied()).collect()),
            Masked::Rabin(ps) => AcceptanceCondition::Rabin(
                ps.iter()
                    .map(|&(e, f)| RabinPair { fin: set(e), inf: set(f) })
                    .collect(),
            ),
        }
    }
}

fn distinct(k: &[u32]) -> usize {
    let mut v = k.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn parity_accepts(k: &[u32], x: u64) -> bool {
    let min = k
        .iter()
        .enumerate()
        .filter(|(i, _)| x >> i & 1 == 1)
        .map(|(_, &p)| p)
        .min();
    min.is_some_and(|p| p % 2 == 0)
}

/// Masks of `n` bits ordered by popcount, then numerically.
fn masks_by_size(n: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..1u64 << n).collect();
    v.sort_by_key(|m| (m.count_ones(), *m));
    v
}

/// For each table entry: the set of accepted non-empty subsets (bit `x - 1`
/// for subset mask `x`) and the first smallest condition realizing it.
#[derive(Debug, Clone)]
pub struct ConditionCatalog {
    n: usize,
    entries: [Vec<(u64, Masked)>; 4],
}

fn type_index(t: AccType) -> usize {
    match t {
        AccType::Buchi => 0,
        AccType::GenBuchi => 1,
        AccType::Parity => 2,
        AccType::Rabin => 3,
    }
}

impl ConditionCatalog {
    /// Tables for a universe of `n ≤ TABLE_LIMIT` transitions.
    pub fn new(n: usize) -> Result<Self> {
        if n > TABLE_LIMIT {
            return Err(Error::UniverseTooLarge(format!(
                "condition tables support at most {TABLE_LIMIT} transitions, got {n}"
            )));
        }
        let signature = |c: &Masked| -> u64 {
            (1..1u64 << n).filter(|&x| c.satisfies(x)).fold(0, |s, x| s | 1 << (x - 1))
        };
        let mut entries: [Vec<(u64, Masked)>; 4] = Default::default();
        let mut push = |idx: usize, seen: &mut HashMap<u64, ()>, c: Masked| {
            let sig = signature(&c);
            if seen.insert(sig, ()).is_none() {
                entries[idx].push((sig, c));
            }
        };

        let mut seen = HashMap::new();
        for f in masks_by_size(n) {
            push(0, &mut seen, Masked::Buchi(f));
        }

        let mut seen = HashMap::new();
        let comps = masks_by_size(n);
        let mut level: Vec<Vec<u64>> = comps.iter().map(|&c| vec![c]).collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for cs in level {
                let c = Masked::GenBuchi(cs.clone());
                let sig = signature(&c);
                if seen.contains_key(&sig) {
                    continue;
                }
                push(1, &mut seen, c);
                for &extra in &comps {
                    if extra > *cs.last().expect("non-empty") {
                        let mut more = cs.clone();
                        more.push(extra);
                        next.push(more);
                    }
                }
            }
            level = next;
        }

        let mut seen = HashMap::new();
        for d in 0..=n as u32 {
            for k in assignments(n, d) {
                if distinct(&k) <= d as usize {
                    push(2, &mut seen, Masked::Parity(k));
                }
            }
        }

        let mut seen = HashMap::new();
        let pairs = rabin_pairs(n);
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        while !level.is_empty() {
            let mut next = Vec::new();
            for ps in level {
                let c = Masked::Rabin(ps.iter().map(|&i| pairs[i]).collect());
                let sig = signature(&c);
                if seen.contains_key(&sig) {
                    continue;
                }
                push(3, &mut seen, c);
                let start = ps.last().map_or(0, |&i| i + 1);
                for i in start..pairs.len() {
                    let mut more = ps.clone();
                    more.push(i);
                    next.push(more);
                }
            }
            level = next;
        }
        Ok(ConditionCatalog { n, entries })
    }

    /// Shared tables for universes up to [`TABLE_LIMIT`].
    pub fn shared(n: usize) -> Result<&'static ConditionCatalog> {
        static TABLES: OnceLock<Vec<ConditionCatalog>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            (0..=TABLE_LIMIT)
                .map(|n| ConditionCatalog::new(n).expect("within limit"))
                .collect()
        });
        tables.get(n).ok_or_else(|| {
            Error::UniverseTooLarge(format!(
                "condition tables support at most {TABLE_LIMIT} transitions, got {n}"
            ))
        })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    /// Number of distinct realizable loop classifications of a type.
    pub fn len(&self, acc_type: AccType) -> usize {
        self.entries[type_index(acc_type)].len()
    }

    fn find(&self, pos: &[u64], neg: &[u64], acc_type: AccType, k: Option<usize>) -> Option<&Masked> {
        let bits = |sets: &[u64]| sets.iter().fold(0u64, |s, &x| s | 1 << (x - 1));
        let (p, q) = (bits(pos), bits(neg));
        self.entries[type_index(acc_type)]
            .iter()
            .filter(|(_, c)| k.is_none_or(|k| c.size() <= k))
            .find(|(sig, _)| sig & p == p && sig & q == 0)
            .map(|(_, c)| c)
    }
}

/// Priority assignments with values `0..=d`, in lexicographic order.
fn assignments(n: usize, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let base = d as u64 + 1;
    let total = base.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut k = vec![0; n];
        for slot in k.iter_mut().rev() {
            *slot = (code % base) as u32;
            code /= base;
        }
        k
    })
}

/// All `(E, F)` with `E ∩ F = ∅`, each transition being in neither, `E` or
/// `F`, enumerated as base-3 numbers.
fn rabin_pairs(n: usize) -> Vec<(u64, u64)> {
    (0..3u64.pow(n as u32))
        .map(|mut code| {
            let (mut e, mut f) = (0, 0);
            for i in 0..n {
                match code % 3 {
                    1 => e |= 1 << i,
                    2 => f |= 1 << i,
                    _ => {}
                }
                code /= 3;
            }
            (e, f)
        })
        .collect()
}

/// First smallest selection of `coverage` entries whose union contains
/// `target`, using at most `limit` entries.
fn min_cover(coverage: &[u64], target: u64, limit: usize) -> Option<Vec<usize>> {
    fn go(coverage: &[u64], target: u64, start: usize, left: usize, have: u64, pick: &mut Vec<usize>) -> bool {
        if have & target == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        for i in start..coverage.len() {
            if coverage[i] & target & !have == 0 {
                continue;
            }
            pick.push(i);
            if go(coverage, target, i + 1, left - 1, have | coverage[i], pick) {
                return true;
            }
            pick.pop();
        }
        false
    }
    (0..=limit.min(coverage.len())).find_map(|k| {
        let mut pick = Vec::new();
        go(coverage, target, 0, k, 0, &mut pick).then_some(pick)
    })
}

/// Keeps the first entry of every coverage value and drops entries whose
/// coverage is strictly contained in another one.
fn undominated<T: Clone>(items: Vec<(u64, T)>) -> Vec<(u64, T)> {
    let mut firsts: Vec<(u64, T)> = Vec::new();
    for (cov, item) in items {
        if !firsts.iter().any(|(c, _)| *c == cov) {
            firsts.push((cov, item));
        }
    }
    let covs: Vec<u64> = firsts.iter().map(|(c, _)| *c).collect();
    firsts
        .into_iter()
        .filter(|(c, _)| !covs.iter().any(|&d| d != *c && d & c == *c))
        .collect()
}

fn guard(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::UniverseTooLarge(format!(
            "{what} search supports at most {limit} transitions, got {n}"
        )));
    }
    Ok(())
}

fn search(universe: usize, pos: &[u64], neg: &[u64], acc_type: AccType, k: Option<usize>) -> Result<Option<Masked>> {
    let n = universe;
    let agrees = |c: &Masked| pos.iter().all(|&x| c.satisfies(x)) && neg.iter().all(|&x| !c.satisfies(x));
    let within = |size: usize| k.is_none_or(|k| size <= k);
    match acc_type {
        AccType::Buchi => {
            guard(n, BUCHI_GUARD, "Büchi")?;
            if !within(1) {
                return Ok(None);
            }
            Ok(masks_by_size(n).into_iter().map(Masked::Buchi).find(|c| agrees(c)))
        }
        AccType::Parity => {
            guard(n, PARITY_GUARD, "parity")?;
            let max = k.unwrap_or(n).min(n) as u32;
            for d in 0..=max {
                if (d as u64 + 1).checked_pow(n as u32).is_none_or(|c| c > PARITY_CANDIDATES) {
                    return Err(Error::UniverseTooLarge(format!(
                        "too many priority assignments with {} priorities over {n} transitions",
                        d + 1
                    )));
                }
                let found = assignments(n, d)
                    .filter(|k| distinct(k) <= d as usize)
                    .map(Masked::Parity)
                    .find(|c| agrees(c));
                if found.is_some() {
                    return Ok(found);
                }
            }
            Ok(None)
        }
        AccType::GenBuchi => {
            guard(n, GEN_BUCHI_GUARD, "generalized Büchi")?;
            let comps: Vec<(u64, u64)> = masks_by_size(n)
                .into_iter()
                .filter(|&c| pos.iter().all(|&x| x & c != 0))
                .map(|c| {
                    let cov = neg
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x & c == 0)
                        .fold(0u64, |s, (i, _)| s | 1 << i);
                    (cov, c)
                })
                .collect();
            let comps = undominated(comps);
            let target = (1u64 << neg.len()) - 1;
            let limit = k.unwrap_or(neg.len().max(1));
            if neg.is_empty() {
                return Ok(comps.first().filter(|_| within(1)).map(|&(_, c)| Masked::GenBuchi(vec![c])));
            }
            let coverage: Vec<u64> = comps.iter().map(|(c, _)| *c).collect();
            Ok(min_cover(&coverage, target, limit)
                .map(|pick| Masked::GenBuchi(pick.into_iter().map(|i| comps[i].1).collect())))
        }
        AccType::Rabin => {
            guard(n, RABIN_GUARD, "Rabin")?;
            let pairs: Vec<(u64, (u64, u64))> = rabin_pairs(n)
                .into_iter()
                .filter(|&(e, f)| neg.iter().all(|&x| !(x & e == 0 && x & f != 0)))
                .map(|(e, f)| {
                    let cov = pos
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x & e == 0 && x & f != 0)
                        .fold(0u64, |s, (i, _)| s | 1 << i);
                    (cov, (e, f))
                })
                .collect();
            let pairs = undominated(pairs);
            let target = (1u64 << pos.len()) - 1;
            let coverage: Vec<u64> = pairs.iter().map(|(c, _)| *c).collect();
            Ok(min_cover(&coverage, target, k.unwrap_or(pos.len()))
                .map(|pick| Masked::Rabin(pick.into_iter().map(|i| pairs[i].1).collect())))
        }
    }
}

/// A condition of type `acc_type` over `universe` that accepts every
/// positive and rejects every negative set of `h`, with at most `k` priorities,
/// components or pairs. Among the admissible conditions one of minimal size is
/// returned; `None` if there is none.
pub fn brute_force_consistency(
    universe: &TransSet,
    h: &PartialCondition,
    acc_type: AccType,
    k: Option<usize>,
) -> Result<Option<AcceptanceCondition>> {
    h.check()?;
    let order: Vec<Transition> = universe.iter().copied().collect();
    let mask = |s: &TransSet| -> Result<u64> {
        s.iter().try_fold(0u64, |m, t| {
            let i = order
                .binary_search(t)
                .map_err(|_| Error::InvalidCondition("partial condition leaves the universe".into()))?;
            Ok(m | 1 << i)
        })
    };
    let pos = h.positives().iter().map(mask).collect::<Result<Vec<_>>>()?;
    let neg = h.negatives().iter().map(mask).collect::<Result<Vec<_>>>()?;
    let found = if order.len() <= TABLE_LIMIT {
        ConditionCatalog::shared(order.len())?
            .find(&pos, &neg, acc_type, k)
            .cloned()
    } else {
        search(order.len(), &pos, &neg, acc_type, k)?
    };
    Ok(found.map(|c| c.materialize(&order)))
}

/// Same as [`brute_force_consistency`], always enumerating directly.
pub fn brute_force_direct(
    universe: &TransSet,
    h: &PartialCondition,
    acc_type: AccType,
    k: Option<usize>,
) -> Result<Option<AcceptanceCondition>> {
    h.check()?;
    let order: Vec<Transition> = universe.iter().copied().collect();
    let mask = |s: &TransSet| -> u64 {
        s.iter()
            .filter_map(|t| order.binary_search(t).ok())
            .fold(0u64, |m, i| m | 1 << i)
    };
    let pos: Vec<u64> = h.positives().iter().map(mask).collect();
    let neg: Vec<u64> = h.negatives().iter().map(mask).collect();
    Ok(search(order.len(), &pos, &neg, acc_type, k)?.map(|c| c.materialize(&order)))
}
