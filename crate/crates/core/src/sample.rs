//! Samples: disjoint finite sets of positive and negative words.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::word::{Alphabet, OmegaWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    alphabet: Alphabet,
    positives: Vec<OmegaWord>,
    negatives: Vec<OmegaWord>,
}

impl Sample {
    /// Normalizes and deduplicates both sides, then checks disjointness.
    pub fn new(
        alphabet: Alphabet,
        positives: impl IntoIterator<Item = OmegaWord>,
        negatives: impl IntoIterator<Item = OmegaWord>,
    ) -> Result<Self> {
        let pos: BTreeSet<OmegaWord> = positives.into_iter().map(|w| w.normalize()).collect();
        let neg: BTreeSet<OmegaWord> = negatives.into_iter().map(|w| w.normalize()).collect();
        if let Some(w) = pos.intersection(&neg).next() {
            return Err(Error::DisjointnessViolation(w.display(&alphabet).to_string()));
        }
        let k = alphabet.len();
        for w in pos.iter().chain(&neg) {
            if let Some(s) = w.spoke().iter().chain(w.period()).find(|s| s.index() >= k) {
                return Err(Error::SymbolNotInAlphabet(format!("#{}", s.0)));
            }
        }
        Ok(Sample {
            alphabet,
            positives: pos.into_iter().collect(),
            negatives: neg.into_iter().collect(),
        })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Sample {
            alphabet,
            positives: Vec::new(),
            negatives: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn positives(&self) -> &[OmegaWord] {
        &self.positives
    }

    pub fn negatives(&self) -> &[OmegaWord] {
        &self.negatives
    }

    pub fn len(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All words with their label, positives first.
    pub fn labeled(&self) -> impl Iterator<Item = (&OmegaWord, bool)> {
        self.positives
            .iter()
            .map(|w| (w, true))
            .chain(self.negatives.iter().map(|w| (w, false)))
    }

    /// Union of two samples over the same alphabet.
    pub fn merge(&self, other: &Sample) -> Result<Sample> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Sample::new(
            self.alphabet.clone(),
            self.positives.iter().chain(&other.positives).cloned(),
            self.negatives.iter().chain(&other.negatives).cloned(),
        )
    }

    /// Positives and negatives exchanged.
    pub fn flipped(&self) -> Sample {
        Sample {
            alphabet: self.alphabet.clone(),
            positives: self.negatives.clone(),
            negatives: self.positives.clone(),
        }
    }

    /// Whether `w` (normalized) is in the sample, and with which label.
    pub fn label(&self, w: &OmegaWord) -> Option<bool> {
        let w = w.normalize();
        if self.positives.binary_search(&w).is_ok() {
            Some(true)
        } else if self.negatives.binary_search(&w).is_ok() {
            Some(false)
        } else {
            None
        }
    }
}
