//! Plain-text sample files.
//!
//! ```text
//! # comment
//! alphabet: a b
//! positive:
//! (b)
//! ab(ba)
//! negative:
//! (a)
//! ```
//!
//! The alphabet line is optional; without it the alphabet consists of the
//! characters occurring in the words, in sorted order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::word::{Alphabet, OmegaWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Positive,
    Negative,
}

/// Parses a sample file. Words listed twice on the same side are kept once
/// and reported through the returned warnings.
pub fn parse_sample_with_warnings(text: &str) -> Result<(Sample, Vec<String>)> {
    let mut alphabet: Option<Alphabet> = None;
    let mut section = Section::None;
    let mut raw: Vec<(usize, usize, String, bool)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = line.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = content.len() - content.trim_start().len() + 1;
        if let Some(rest) = trimmed.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(Error::parse(lineno, col, "alphabet declared twice"));
            }
            if !raw.is_empty() {
                return Err(Error::parse(lineno, col, "alphabet must precede the words"));
            }
            alphabet = Some(Alphabet::new(rest.split_whitespace()).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(lineno, col, message),
                other => other,
            })?);
            continue;
        }
        match trimmed {
            "positive:" => section = Section::Positive,
            "negative:" => section = Section::Negative,
            word => {
                let positive = match section {
                    Section::Positive => true,
                    Section::Negative => false,
                    Section::None => {
                        return Err(Error::parse(
                            lineno,
                            col,
                            "word outside of a `positive:` or `negative:` section",
                        ))
                    }
                };
                raw.push((lineno, col, word.to_string(), positive));
            }
        }
    }
    let alphabet = match alphabet {
        Some(a) => a,
        None => infer_alphabet(raw.iter().map(|r| r.2.as_str()))?,
    };
    let mut warnings = Vec::new();
    let mut pos: Vec<OmegaWord> = Vec::new();
    let mut neg: Vec<OmegaWord> = Vec::new();
    let mut seen: [BTreeSet<OmegaWord>; 2] = Default::default();
    for (line, col, text, positive) in raw {
        let w = alphabet.parse_word_at(&text, line, col).map_err(|e| match e {
            Error::SymbolNotInAlphabet(s) => Error::parse(line, col, format!("symbol `{s}` is not part of the alphabet")),
            other => other,
        })?;
        if !seen[positive as usize].insert(w.clone()) {
            let msg = format!("line {line}: duplicate word `{}` ignored", w.display(&alphabet));
            log::warn!("{msg}");
            warnings.push(msg);
            continue;
        }
        if positive {
            pos.push(w);
        } else {
            neg.push(w);
        }
    }
    Ok((Sample::new(alphabet, pos, neg)?, warnings))
}

pub fn parse_sample(text: &str) -> Result<Sample> {
    parse_sample_with_warnings(text).map(|(s, _)| s)
}

fn infer_alphabet<'a>(words: impl Iterator<Item = &'a str>) -> Result<Alphabet> {
    let chars: BTreeSet<char> = words
        .flat_map(str::chars)
        .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
        .collect();
    Alphabet::new(chars.into_iter().map(String::from))
}

/// Renders a sample in the format read by [`parse_sample`].
pub fn emit_sample(s: &Sample) -> String {
    let a = s.alphabet();
    let mut out = String::new();
    writeln!(out, "alphabet: {}", a.names().join(" ")).unwrap();
    out.push_str("positive:\n");
    for w in s.positives() {
        writeln!(out, "{}", w.display(a)).unwrap();
    }
    out.push_str("negative:\n");
    for w in s.negatives() {
        writeln!(out, "{}", w.display(a)).unwrap();
    }
    out
}
