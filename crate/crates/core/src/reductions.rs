//! Instances reducing graph 3-coloring to fixed-size generalized Büchi and
//! Rabin consistency, and decoding of colorings from found conditions.

use std::collections::BTreeSet;
use std::fmt;

use crate::condition::{AcceptanceCondition, RabinPair};
use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::ts::{TransSet, Transition, TransitionSystem};
use crate::word::{Alphabet, OmegaWord, Symbol};

/// Directed graph on vertices `1..=n` without self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) leaves vertices 1..={n}")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {i}")));
            }
            set.insert((i, j));
        }
        Ok(DiGraph { n, edges: set })
    }

    /// Parses `n <count>` followed by one `i j` edge per line. Blank lines
    /// and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing `n <count>` header"))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|_| Error::parse(line, 3, format!("invalid vertex count `{count}`")))?,
            _ => return Err(Error::parse(line, 1, "expected `n <count>`")),
        };
        let mut edges = Vec::new();
        for (line, text) in lines {
            let parts: Vec<&str> = text.split_whitespace().collect();
            let [i, j] = parts[..] else {
                return Err(Error::parse(line, 1, "expected an edge `i j`"));
            };
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line, 1, format!("invalid vertex `{s}`")))
            };
            edges.push((num(i)?, num(j)?));
        }
        DiGraph::new(n, edges)
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Whether `colors[i - 1]` is a proper coloring.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n && self.edges.iter().all(|&(i, j)| colors[i - 1] != colors[j - 1])
    }

    /// Whether a proper coloring with `k` colors exists, by exhaustive search.
    pub fn is_colorable(&self, k: usize) -> bool {
        fn go(g: &DiGraph, k: usize, colors: &mut Vec<usize>) -> bool {
            let v = colors.len() + 1;
            if v > g.n {
                return true;
            }
            for c in 1..=k {
                let clash = g
                    .edges
                    .iter()
                    .any(|&(i, j)| (i == v && j < v && colors[j - 1] == c) || (j == v && i < v && colors[i - 1] == c));
                if !clash {
                    colors.push(c);
                    if go(g, k, colors) {
                        return true;
                    }
                    colors.pop();
                }
            }
            false
        }
        go(self, k, &mut Vec::new())
    }
}

impl fmt::Display for DiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (i, j) in &self.edges {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

/// Symbol for vertex `i` (1-based).
pub fn vertex_symbol(i: usize) -> Symbol {
    Symbol((i - 1) as u16)
}

/// The star: a center `0` with an `i`-edge to state `i` and back, for every
/// `i` in `1..=n`.
pub fn star_ts(n: usize) -> Result<TransitionSystem> {
    if n == 0 {
        return Err(Error::InvalidGraph("star needs at least one ray".into()));
    }
    let alphabet = Alphabet::new((1..=n).map(|i| i.to_string()))?;
    let mut ts = TransitionSystem::new(alphabet, n + 1);
    for i in 1..=n {
        let a = vertex_symbol(i);
        ts.add(0, a, i as u32);
        ts.add(i as u32, a, 0);
    }
    Ok(ts)
}

/// The two transitions of ray `i`.
pub fn ray(i: usize) -> TransSet {
    let a = vertex_symbol(i);
    [Transition::new(0, a), Transition::new(i as u32, a)].into_iter().collect()
}

fn vertex_word(i: usize) -> OmegaWord {
    OmegaWord::periodic(vec![vertex_symbol(i)]).expect("non-empty")
}

fn edge_word(i: usize, j: usize) -> OmegaWord {
    let (a, b) = (vertex_symbol(i), vertex_symbol(j));
    OmegaWord::periodic(vec![a, a, b, b]).expect("non-empty")
}

/// Positives `(iijj)^ω` per edge, negatives `i^ω` per vertex.
pub fn coloring_to_genbuchi_instance(g: &DiGraph) -> Result<(TransitionSystem, Sample)> {
    let ts = star_ts(g.n)?;
    let pos = g.edges().map(|(i, j)| edge_word(i, j));
    let neg = (1..=g.n).map(vertex_word);
    let sample = Sample::new(ts.alphabet().clone(), pos, neg)?;
    Ok((ts, sample))
}

/// Positives `i^ω` per vertex, negatives `(iijj)^ω` per edge.
pub fn coloring_to_rabin_instance(g: &DiGraph) -> Result<(TransitionSystem, Sample)> {
    let ts = star_ts(g.n)?;
    let pos = (1..=g.n).map(vertex_word);
    let neg = g.edges().map(|(i, j)| edge_word(i, j));
    let sample = Sample::new(ts.alphabet().clone(), pos, neg)?;
    Ok((ts, sample))
}

/// Component `k` holds the rays of all vertices not colored `k`.
pub fn genbuchi_condition_from_coloring(colors: &[usize], k: usize) -> AcceptanceCondition {
    AcceptanceCondition::GenBuchi(
        (1..=k)
            .map(|c| {
                (1..=colors.len())
                    .filter(|&i| colors[i - 1] != c)
                    .flat_map(ray)
                    .collect()
            })
            .collect(),
    )
}

/// Pair `k` forbids the rays of vertices not colored `k` and requires one of
/// the rays colored `k`.
pub fn rabin_condition_from_coloring(colors: &[usize], k: usize) -> AcceptanceCondition {
    let rays = |pred: &dyn Fn(usize) -> bool| -> TransSet {
        (1..=colors.len()).filter(|&i| pred(colors[i - 1])).flat_map(ray).collect()
    };
    AcceptanceCondition::Rabin(
        (1..=k)
            .map(|c| RabinPair {
                fin: rays(&|x| x != c),
                inf: rays(&|x| x == c),
            })
            .collect(),
    )
}

/// Reads a coloring off a condition consistent with one of the instances:
/// for generalized Büchi the first component missing the vertex's ray, for
/// Rabin the first pair accepting it. Colors are 1-based.
pub fn decode_coloring(cond: &AcceptanceCondition, g: &DiGraph) -> Result<Vec<usize>> {
    let mut colors = Vec::with_capacity(g.n);
    for i in 1..=g.n {
        let r = ray(i);
        let color = match cond {
            AcceptanceCondition::GenBuchi(fs) => fs.iter().position(|f| f.is_disjoint(&r)),
            AcceptanceCondition::Rabin(pairs) => pairs
                .iter()
                .position(|p| p.fin.is_disjoint(&r) && !p.inf.is_disjoint(&r)),
            _ => {
                return Err(Error::InvalidCondition(format!(
                    "colorings are decoded from generalized Büchi or Rabin conditions, not {}",
                    cond.type_name()
                )))
            }
        };
        let color = color.ok_or_else(|| Error::InvalidCondition(format!("no color for vertex {i}")))?;
        colors.push(color + 1);
    }
    if let Some((i, j)) = g.edges().find(|&(i, j)| colors[i - 1] == colors[j - 1]) {
        return Err(Error::InvalidCondition(format!(
            "vertices {i} and {j} share color {}",
            colors[i - 1]
        )));
    }
    Ok(colors)
}
