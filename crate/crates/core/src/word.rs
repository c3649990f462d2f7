//! Alphabets and ultimately periodic words.
//!
//! An [`OmegaWord`] `u(v)` denotes the infinite word `u v v v ...`. Words built
//! through [`OmegaWord::new`] are kept in reduced form: the period is primitive
//! and the spoke cannot be shortened by rotating the period. Two reduced words
//! denote the same infinite word iff they are structurally equal.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered finite set of named symbols. The order defines the
/// length-lexicographic order on words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
                return Err(Error::parse(1, 1, format!("invalid symbol name `{s}`")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::UniverseTooLarge("alphabet exceeds 65535 symbols".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// Alphabet whose symbols are the given characters.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(|c| c.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| Symbol(i as u16))
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.symbols[sym.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| Symbol(i as u16))
    }

    /// True when every symbol is a single character, so words can be written
    /// without separators.
    pub fn is_compact(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Renders a finite word.
    pub fn format(&self, word: &[Symbol]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Renders a finite word, using `ε` for the empty word.
    pub fn format_or_epsilon(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            "ε".to_string()
        } else {
            self.format(word)
        }
    }

    /// Parses a finite word. Compact alphabets read one symbol per character,
    /// other alphabets expect whitespace separated symbol names.
    pub fn parse_finite(&self, text: &str) -> Result<Vec<Symbol>> {
        self.tokenize(text)?
            .into_iter()
            .map(|t| match t {
                Token::Sym(s) => Ok(s),
                Token::Open | Token::Close => {
                    Err(Error::parse(1, 1, "parentheses are not allowed in a finite word"))
                }
            })
            .collect()
    }

    /// Parses `u(v)`; the result is normalized.
    pub fn parse_word(&self, text: &str) -> Result<OmegaWord> {
        self.parse_word_at(text, 1, 1)
    }

    pub(crate) fn parse_word_at(&self, text: &str, line: usize, col: usize) -> Result<OmegaWord> {
        let tokens = self.tokenize(text)?;
        let open = tokens.iter().position(|t| *t == Token::Open);
        let close = tokens.iter().position(|t| *t == Token::Close);
        let (open, close) = match (open, close) {
            (Some(o), Some(c)) if o < c && c == tokens.len() - 1 => (o, c),
            _ => {
                return Err(Error::parse(
                    line,
                    col,
                    format!("expected `u(v)` syntax, got `{}`", text.trim()),
                ))
            }
        };
        let syms = |ts: &[Token]| -> Result<Vec<Symbol>> {
            ts.iter()
                .map(|t| match t {
                    Token::Sym(s) => Ok(*s),
                    _ => Err(Error::parse(line, col, "unbalanced parentheses")),
                })
                .collect()
        };
        let spoke = syms(&tokens[..open])?;
        let period = syms(&tokens[open + 1..close])?;
        if period.is_empty() {
            return Err(Error::parse(line, col, "period must be non-empty"));
        }
        OmegaWord::new(spoke, period)
    }

    fn tokenize(&self, text: &str) -> Result<Vec<Token>> {
        let compact = self.is_compact();
        let mut out = Vec::new();
        let mut pending = String::new();
        let flush = |pending: &mut String, out: &mut Vec<Token>| -> Result<()> {
            if pending.is_empty() {
                return Ok(());
            }
            let sym = self
                .lookup(pending)
                .ok_or_else(|| Error::SymbolNotInAlphabet(pending.clone()))?;
            out.push(Token::Sym(sym));
            pending.clear();
            Ok(())
        };
        for c in text.chars() {
            if c == '(' || c == ')' || c.is_whitespace() {
                flush(&mut pending, &mut out)?;
                match c {
                    '(' => out.push(Token::Open),
                    ')' => out.push(Token::Close),
                    _ => {}
                }
            } else if compact {
                let name = c.to_string();
                let sym = self
                    .lookup(&name)
                    .ok_or(Error::SymbolNotInAlphabet(name))?;
                out.push(Token::Sym(sym));
            } else {
                pending.push(c);
            }
        }
        flush(&mut pending, &mut out)?;
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Sym(Symbol),
    Open,
    Close,
}

/// Length-lexicographic comparison of finite words.
pub fn length_lex(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// An ultimately periodic word `spoke · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OmegaWord {
    spoke: Vec<Symbol>,
    period: Vec<Symbol>,
}

impl OmegaWord {
    /// Builds the reduced form of `spoke · period^ω`.
    pub fn new(spoke: Vec<Symbol>, period: Vec<Symbol>) -> Result<Self> {
        Ok(Self::raw(spoke, period)?.normalize())
    }

    /// Builds a word without normalizing it.
    pub fn raw(spoke: Vec<Symbol>, period: Vec<Symbol>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(OmegaWord { spoke, period })
    }

    /// `period^ω`.
    pub fn periodic(period: Vec<Symbol>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn spoke(&self) -> &[Symbol] {
        &self.spoke
    }

    pub fn period(&self) -> &[Symbol] {
        &self.period
    }

    /// Symbol at position `i` of the infinite word.
    pub fn at(&self, i: usize) -> Symbol {
        if i < self.spoke.len() {
            self.spoke[i]
        } else {
            self.period[(i - self.spoke.len()) % self.period.len()]
        }
    }

    /// The first `n` symbols.
    pub fn prefix(&self, n: usize) -> Vec<Symbol> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// The word with its first `n` symbols removed, normalized.
    pub fn suffix(&self, n: usize) -> OmegaWord {
        if n <= self.spoke.len() {
            return OmegaWord::raw(self.spoke[n..].to_vec(), self.period.clone())
                .expect("period is non-empty")
                .normalize();
        }
        let shift = (n - self.spoke.len()) % self.period.len();
        let mut period = self.period[shift..].to_vec();
        period.extend_from_slice(&self.period[..shift]);
        OmegaWord::raw(Vec::new(), period)
            .expect("period is non-empty")
            .normalize()
    }

    /// `prefix · self`, normalized.
    pub fn prepend(&self, prefix: &[Symbol]) -> OmegaWord {
        let mut spoke = prefix.to_vec();
        spoke.extend_from_slice(&self.spoke);
        OmegaWord::raw(spoke, self.period.clone())
            .expect("period is non-empty")
            .normalize()
    }

    /// Reduced form: primitive period, shortest spoke.
    pub fn normalize(&self) -> OmegaWord {
        let mut period = primitive_root(&self.period).to_vec();
        let mut spoke = self.spoke.clone();
        while let (Some(&s), Some(&p)) = (spoke.last(), period.last()) {
            if s != p {
                break;
            }
            spoke.pop();
            period.rotate_right(1);
        }
        OmegaWord { spoke, period }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Whether both words denote the same infinite word. Distinct words differ
    /// within the first `max(|u|,|x|) + |v|·|y|` positions.
    pub fn omega_equal(&self, other: &OmegaWord) -> bool {
        let bound = self.spoke.len().max(other.spoke.len()) + self.period.len() * other.period.len();
        (0..bound).all(|i| self.at(i) == other.at(i))
    }

    /// Length of the longest common prefix, `None` if the words are equal.
    pub fn common_prefix_len(&self, other: &OmegaWord) -> Option<usize> {
        let bound = self.spoke.len().max(other.spoke.len()) + self.period.len() * other.period.len();
        (0..bound).find(|&i| self.at(i) != other.at(i))
    }

    /// Renders the word in `u(v)` syntax.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayWord<'a> {
        DisplayWord {
            word: self,
            alphabet,
        }
    }

    /// Length-lexicographic order on (spoke, period).
    pub fn canonical_cmp(&self, other: &OmegaWord) -> Ordering {
        (self.spoke.len() + self.period.len())
            .cmp(&(other.spoke.len() + other.period.len()))
            .then_with(|| length_lex(&self.period, &other.period))
            .then_with(|| self.spoke.cmp(&other.spoke))
    }
}

impl PartialOrd for OmegaWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OmegaWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

pub struct DisplayWord<'a> {
    word: &'a OmegaWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spoke = self.alphabet.format(&self.word.spoke);
        let period = self.alphabet.format(&self.word.period);
        if !spoke.is_empty() && !self.alphabet.is_compact() {
            write!(f, "{spoke} ({period})")
        } else {
            write!(f, "{spoke}({period})")
        }
    }
}

fn primitive_root(v: &[Symbol]) -> &[Symbol] {
    let n = v.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (p..n).all(|i| v[i] == v[i - p]) {
            return &v[..p];
        }
    }
    v
}
