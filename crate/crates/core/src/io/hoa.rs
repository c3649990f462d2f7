//! Reading and writing automata in the HOA v1 format.
//!
//! Only deterministic automata with transition-based acceptance are
//! supported. Symbols are encoded as valuations of atomic propositions: in
//! binary when the alphabet size is a power of two, one-hot otherwise. The
//! symbol names are kept in a `sprout-alphabet` header.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::condition::{AcceptanceCondition, Automaton, RabinPair};
use crate::error::{Error, Result};
use crate::oracle::loops::enumerate_loops;
use crate::ts::{TransSet, Transition, TransitionSystem};
use crate::word::{Alphabet, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Encoding {
    Binary(u32),
    OneHot(usize),
}

impl Encoding {
    fn for_size(n: usize) -> Encoding {
        if n.is_power_of_two() {
            Encoding::Binary(n.trailing_zeros())
        } else {
            Encoding::OneHot(n)
        }
    }

    fn aps(self) -> usize {
        match self {
            Encoding::Binary(m) => m as usize,
            Encoding::OneHot(n) => n,
        }
    }

    fn valuation(self, s: Symbol) -> u64 {
        match self {
            Encoding::Binary(_) => s.0 as u64,
            Encoding::OneHot(_) => 1u64.checked_shl(s.0 as u32).unwrap_or(0),
        }
    }

    fn label(self, s: Symbol) -> String {
        let v = self.valuation(s);
        let lits: Vec<String> = (0..self.aps())
            .map(|i| if v >> i & 1 == 1 { i.to_string() } else { format!("!{i}") })
            .collect();
        if lits.is_empty() {
            "t".into()
        } else {
            lits.join("&")
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn parity_formula(i: u32, k: u32) -> String {
    let atom = if i.is_multiple_of(2) { format!("Inf({i})") } else { format!("Fin({i})") };
    if i + 1 == k {
        return atom;
    }
    let rest = parity_formula(i + 1, k);
    let rest = if i + 2 == k { rest } else { format!("({rest})") };
    if i.is_multiple_of(2) {
        format!("{atom} | {rest}")
    } else {
        format!("{atom} & {rest}")
    }
}

/// Acceptance header, acc-name and the marks of each transition.
pub(crate) fn encode_condition(a: &Automaton) -> (Option<String>, String, BTreeMap<Transition, BTreeSet<usize>>) {
    let mut marks: BTreeMap<Transition, BTreeSet<usize>> = BTreeMap::new();
    let mut mark = |t: Transition, m: usize| {
        marks.entry(t).or_default().insert(m);
    };
    let join = |parts: Vec<String>, sep: &str, empty: &str| {
        if parts.is_empty() {
            empty.to_string()
        } else {
            parts.join(sep)
        }
    };
    match &a.condition {
        AcceptanceCondition::Buchi(f) => {
            f.iter().for_each(|&t| mark(t, 0));
            (Some("Buchi".into()), "1 Inf(0)".into(), marks)
        }
        AcceptanceCondition::GenBuchi(cs) => {
            for (i, c) in cs.iter().enumerate() {
                c.iter().for_each(|&t| mark(t, i));
            }
            let body = join((0..cs.len()).map(|i| format!("Inf({i})")).collect(), "&", "t");
            (
                Some(format!("generalized-Buchi {}", cs.len())),
                format!("{} {body}", cs.len()),
                marks,
            )
        }
        AcceptanceCondition::Parity(k) => {
            k.iter().for_each(|(&t, &p)| mark(t, p as usize));
            let count = k.values().max().map_or(0, |m| m + 1);
            let body = if count == 0 { "f".into() } else { parity_formula(0, count) };
            (
                Some(format!("parity min even {count}")),
                format!("{count} {body}"),
                marks,
            )
        }
        AcceptanceCondition::Rabin(pairs) => {
            for (i, p) in pairs.iter().enumerate() {
                p.fin.iter().for_each(|&t| mark(t, 2 * i));
                p.inf.iter().for_each(|&t| mark(t, 2 * i + 1));
            }
            let body = join(
                (0..pairs.len())
                    .map(|i| format!("(Fin({})&Inf({}))", 2 * i, 2 * i + 1))
                    .collect(),
                " | ",
                "f",
            );
            (
                Some(format!("Rabin {}", pairs.len())),
                format!("{} {body}", 2 * pairs.len()),
                marks,
            )
        }
        AcceptanceCondition::Muller(family) => {
            let order: Vec<Transition> = a.ts.transitions().collect();
            for (j, &t) in order.iter().enumerate() {
                mark(t, j);
            }
            let clauses = family
                .iter()
                .map(|m| {
                    let lits: Vec<String> = order
                        .iter()
                        .enumerate()
                        .map(|(j, t)| if m.contains(t) { format!("Inf({j})") } else { format!("Fin({j})") })
                        .collect();
                    format!("({})", join(lits, "&", "t"))
                })
                .collect();
            (None, format!("{} {}", order.len(), join(clauses, " | ", "f")), marks)
        }
    }
}

/// Renders an automaton as a HOA v1 document.
pub fn emit_hoa(a: &Automaton) -> String {
    let ts = &a.ts;
    let alphabet = ts.alphabet();
    let enc = Encoding::for_size(alphabet.len());
    let (acc_name, acceptance, marks) = encode_condition(a);
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    writeln!(out, "States: {}", ts.num_states()).unwrap();
    writeln!(out, "Start: {}", ts.initial()).unwrap();
    let aps: Vec<String> = (0..enc.aps()).map(|i| quote(&format!("p{i}"))).collect();
    writeln!(out, "AP: {}{}", enc.aps(), aps.iter().map(|p| format!(" {p}")).collect::<String>()).unwrap();
    let mapping: Vec<String> = alphabet
        .symbols()
        .map(|s| format!("{} = {}", alphabet.name(s), enc.label(s)))
        .collect();
    writeln!(out, "/* symbols: {} */", mapping.join(", ").replace("*/", "* /")).unwrap();
    let names: Vec<String> = alphabet.names().iter().map(|n| quote(n)).collect();
    writeln!(out, "sprout-alphabet: {}", names.join(" ")).unwrap();
    if let Some(name) = acc_name {
        writeln!(out, "acc-name: {name}").unwrap();
    }
    writeln!(out, "Acceptance: {acceptance}").unwrap();
    out.push_str("properties: trans-labels explicit-labels trans-acc deterministic\n");
    out.push_str("--BODY--\n");
    let state_names = ts.state_names();
    for q in ts.states() {
        writeln!(out, "State: {q} {}", quote(&state_names[q as usize])).unwrap();
        for s in alphabet.symbols() {
            let Some(target) = ts.succ(q, s) else { continue };
            write!(out, "[{}] {target}", enc.label(s)).unwrap();
            if let Some(m) = marks.get(&Transition::new(q, s)) {
                let ids: Vec<String> = m.iter().map(|i| i.to_string()).collect();
                write!(out, " {{{}}}", ids.join(" ")).unwrap();
            }
            out.push('\n');
        }
    }
    out.push_str("--END--\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Header(String),
    Ident(String),
    Int(u64),
    Str(String),
    Punct(char),
    Body,
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>> {
        let mut out = Vec::new();
        loop {
            let Some(&c) = self.chars.peek() else { return Ok(out) };
            let (line, col) = (self.line, self.col);
            if c.is_whitespace() {
                self.bump();
            } else if c == '/' {
                self.bump();
                if self.bump() != Some('*') {
                    return Err(Error::parse(line, col, "stray `/`"));
                }
                let mut prev = ' ';
                loop {
                    match self.bump() {
                        None => return Err(Error::parse(line, col, "unterminated comment")),
                        Some('/') if prev == '*' => break,
                        Some(ch) => prev = ch,
                    }
                }
            } else if c == '"' {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(Error::parse(line, col, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => s.extend(self.bump()),
                        Some(ch) => s.push(ch),
                    }
                }
                out.push((Tok::Str(s), line, col));
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    self.bump();
                }
                let n = s.parse().map_err(|_| Error::parse(line, col, "integer out of range"))?;
                out.push((Tok::Int(n), line, col));
            } else if c == '-' {
                let mut s = String::new();
                while let Some(&d) = self.chars.peek().filter(|d| **d == '-' || d.is_ascii_alphabetic()) {
                    s.push(d);
                    self.bump();
                }
                match s.as_str() {
                    "--BODY--" => out.push((Tok::Body, line, col)),
                    "--END--" => out.push((Tok::End, line, col)),
                    "--ABORT--" => return Err(Error::parse(line, col, "document aborted")),
                    _ => return Err(Error::parse(line, col, format!("unexpected `{s}`"))),
                }
            } else if c.is_alphabetic() || c == '_' || c == '@' {
                let mut s = String::new();
                while let Some(&d) = self.chars.peek().filter(|d| d.is_alphanumeric() || **d == '_' || **d == '-' || **d == '@') {
                    s.push(d);
                    self.bump();
                }
                if self.chars.peek() == Some(&':') {
                    self.bump();
                    out.push((Tok::Header(s), line, col));
                } else {
                    out.push((Tok::Ident(s), line, col));
                }
            } else if "[]{}()&|!".contains(c) {
                self.bump();
                out.push((Tok::Punct(c), line, col));
            } else {
                return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
            }
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

/// Boolean expression over atomic propositions.
#[derive(Debug, Clone)]
enum Label {
    Const(bool),
    Ap(u64),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn eval(&self, v: u64) -> bool {
        match self {
            Label::Const(b) => *b,
            Label::Ap(i) => *i < 64 && v >> i & 1 == 1,
            Label::Not(l) => !l.eval(v),
            Label::And(a, b) => a.eval(v) && b.eval(v),
            Label::Or(a, b) => a.eval(v) || b.eval(v),
        }
    }
}

/// Positive Boolean combination of `Inf` and `Fin` over marks.
#[derive(Debug, Clone)]
enum Acc {
    Const(bool),
    Inf(u64),
    Fin(u64),
    And(Box<Acc>, Box<Acc>),
    Or(Box<Acc>, Box<Acc>),
}

impl Acc {
    fn eval(&self, seen: &BTreeSet<u64>) -> bool {
        match self {
            Acc::Const(b) => *b,
            Acc::Inf(m) => seen.contains(m),
            Acc::Fin(m) => !seen.contains(m),
            Acc::And(a, b) => a.eval(seen) && b.eval(seen),
            Acc::Or(a, b) => a.eval(seen) || b.eval(seen),
        }
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or((1, 1), |t| (t.1, t.2))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn label_or(&mut self) -> Result<Label> {
        let mut l = self.label_and()?;
        while self.eat('|') {
            l = Label::Or(Box::new(l), Box::new(self.label_and()?));
        }
        Ok(l)
    }

    fn label_and(&mut self) -> Result<Label> {
        let mut l = self.label_not()?;
        while self.eat('&') {
            l = Label::And(Box::new(l), Box::new(self.label_not()?));
        }
        Ok(l)
    }

    fn label_not(&mut self) -> Result<Label> {
        if self.eat('!') {
            return Ok(Label::Not(Box::new(self.label_not()?)));
        }
        if self.eat('(') {
            let l = self.label_or()?;
            self.expect(')')?;
            return Ok(l);
        }
        match self.next() {
            Some(Tok::Int(n)) => Ok(Label::Ap(n)),
            Some(Tok::Ident(s)) if s == "t" => Ok(Label::Const(true)),
            Some(Tok::Ident(s)) if s == "f" => Ok(Label::Const(false)),
            Some(Tok::Ident(s)) if s.starts_with('@') => Err(Error::UnsupportedFeature("aliases".into())),
            _ => {
                self.pos -= 1;
                self.err("expected a label expression")
            }
        }
    }

    fn acc_or(&mut self) -> Result<Acc> {
        let mut a = self.acc_and()?;
        while self.eat('|') {
            a = Acc::Or(Box::new(a), Box::new(self.acc_and()?));
        }
        Ok(a)
    }

    fn acc_and(&mut self) -> Result<Acc> {
        let mut a = self.acc_atom()?;
        while self.eat('&') {
            a = Acc::And(Box::new(a), Box::new(self.acc_atom()?));
        }
        Ok(a)
    }

    fn acc_atom(&mut self) -> Result<Acc> {
        if self.eat('(') {
            let a = self.acc_or()?;
            self.expect(')')?;
            return Ok(a);
        }
        match self.next() {
            Some(Tok::Ident(s)) if s == "t" => Ok(Acc::Const(true)),
            Some(Tok::Ident(s)) if s == "f" => Ok(Acc::Const(false)),
            Some(Tok::Ident(s)) if s == "Inf" || s == "Fin" => {
                self.expect('(')?;
                if self.eat('!') {
                    return Err(Error::UnsupportedFeature("negated acceptance sets".into()));
                }
                let m = self.int()?;
                self.expect(')')?;
                Ok(if s == "Inf" { Acc::Inf(m) } else { Acc::Fin(m) })
            }
            _ => {
                self.pos -= 1;
                self.err("expected an acceptance condition")
            }
        }
    }

    fn marks(&mut self) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        if self.eat('{') {
            while !self.eat('}') {
                out.insert(self.int()?);
            }
        }
        Ok(out)
    }

    /// Tokens up to the next header or the body marker.
    fn header_args(&mut self) -> Vec<(Tok, usize, usize)> {
        let start = self.pos;
        while !matches!(self.peek(), None | Some(Tok::Header(_)) | Some(Tok::Body)) {
            self.pos += 1;
        }
        self.toks[start..self.pos].to_vec()
    }
}

struct Header {
    states: Option<u64>,
    start: Option<u64>,
    aps: Option<usize>,
    acceptance: Option<(u64, Acc)>,
    acc_name: Option<Vec<String>>,
    alphabet: Option<Vec<String>>,
}

fn parse_header(p: &mut Parser) -> Result<Header> {
    match (p.next(), p.next()) {
        (Some(Tok::Header(h)), Some(Tok::Ident(v))) if h == "HOA" && v == "v1" => {}
        _ => {
            p.pos = 0;
            return p.err("document must start with `HOA: v1`");
        }
    }
    let mut h = Header {
        states: None,
        start: None,
        aps: None,
        acceptance: None,
        acc_name: None,
        alphabet: None,
    };
    loop {
        let name = match p.peek() {
            Some(Tok::Header(name)) => name.clone(),
            Some(Tok::Body) => {
                p.pos += 1;
                return Ok(h);
            }
            _ => return p.err("expected a header item or `--BODY--`"),
        };
        p.pos += 1;
        let item_start = p.pos;
        let args = p.header_args();
        let ints = || args.iter().filter_map(|t| if let Tok::Int(n) = t.0 { Some(n) } else { None });
        let strs = || -> Vec<String> {
            args.iter()
                .filter_map(|t| if let Tok::Str(s) = &t.0 { Some(s.clone()) } else { None })
                .collect()
        };
        match name.as_str() {
            "States" => h.states = ints().next(),
            "Start" => {
                if h.start.is_some() || args.len() != 1 {
                    return Err(Error::UnsupportedFeature("multiple or conjunctive initial states".into()));
                }
                h.start = ints().next();
            }
            "AP" => {
                let n = ints().next().unwrap_or(0) as usize;
                if strs().len() != n {
                    p.pos = item_start;
                    return p.err("AP count does not match the listed propositions");
                }
                h.aps = Some(n);
            }
            "Acceptance" => {
                let mut sub = Parser { toks: args.clone(), pos: 0 };
                let count = sub.int()?;
                let acc = sub.acc_or()?;
                if sub.pos != sub.toks.len() {
                    return sub.err("trailing tokens after acceptance condition");
                }
                h.acceptance = Some((count, acc));
            }
            "acc-name" => {
                h.acc_name = Some(
                    args.iter()
                        .map(|t| match &t.0 {
                            Tok::Ident(s) => s.clone(),
                            Tok::Int(n) => n.to_string(),
                            _ => String::new(),
                        })
                        .collect(),
                )
            }
            "sprout-alphabet" => h.alphabet = Some(strs()),
            "Alias" => return Err(Error::UnsupportedFeature("aliases".into())),
            _ => {}
        }
    }
}

/// Parses a HOA v1 document describing a deterministic automaton with
/// transition-based acceptance.
pub fn parse_hoa(text: &str) -> Result<Automaton> {
    let toks = Lexer { chars: text.chars().peekable(), line: 1, col: 1 }.tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let h = parse_header(&mut p)?;
    let aps = h.aps.unwrap_or(0);
    let (alphabet, enc) = match &h.alphabet {
        Some(names) => {
            let alphabet = Alphabet::new(names.iter().cloned())?;
            let enc = Encoding::for_size(alphabet.len());
            if enc.aps() != aps {
                return Err(Error::UnsupportedFeature(format!(
                    "{aps} atomic propositions do not encode {} symbols",
                    alphabet.len()
                )));
            }
            (alphabet, enc)
        }
        None => {
            if aps > 16 {
                return Err(Error::UniverseTooLarge(format!("{aps} atomic propositions")));
            }
            (Alphabet::new((0..1usize << aps).map(|i| i.to_string()))?, Encoding::Binary(aps as u32))
        }
    };
    let states = h.states.ok_or_else(|| Error::parse(1, 1, "missing `States` header"))? as usize;
    let start = h.start.ok_or_else(|| Error::parse(1, 1, "missing `Start` header"))?;
    if start as usize >= states {
        return Err(Error::parse(1, 1, format!("start state {start} out of range")));
    }
    let mut ts = TransitionSystem::new(alphabet.clone(), states);
    ts.set_initial(start as u32);
    let mut marks: BTreeMap<Transition, BTreeSet<u64>> = BTreeMap::new();
    let mut current: Option<u32> = None;
    loop {
        match p.next() {
            Some(Tok::End) => break,
            Some(Tok::Header(h)) if h == "State" => {
                let q = p.int()?;
                if q as usize >= states {
                    return p.err(format!("state {q} out of range"));
                }
                if let Some(Tok::Str(_)) = p.peek() {
                    p.pos += 1;
                }
                if !p.marks()?.is_empty() {
                    return Err(Error::UnsupportedFeature("state-based acceptance".into()));
                }
                current = Some(q as u32);
            }
            Some(Tok::Punct('[')) => {
                let q = match current {
                    Some(q) => q,
                    None => return p.err("edge before the first state"),
                };
                let label = p.label_or()?;
                p.expect(']')?;
                let target = p.int()?;
                if p.peek() == Some(&Tok::Punct('&')) {
                    return Err(Error::UnsupportedFeature("alternation".into()));
                }
                if target as usize >= states {
                    return p.err(format!("target {target} out of range"));
                }
                let m = p.marks()?;
                for s in alphabet.symbols().filter(|&s| label.eval(enc.valuation(s))) {
                    if ts.succ(q, s).is_some() {
                        return Err(Error::UnsupportedFeature("nondeterminism".into()));
                    }
                    ts.add(q, s, target as u32);
                    if !m.is_empty() {
                        marks.insert(Transition::new(q, s), m.clone());
                    }
                }
            }
            Some(Tok::Int(_)) => {
                p.pos -= 1;
                return Err(Error::UnsupportedFeature("implicit labels".into()));
            }
            None => return p.err("missing `--END--`"),
            _ => {
                p.pos -= 1;
                return p.err("unexpected token in body");
            }
        }
    }
    let (count, acc) = h.acceptance.ok_or_else(|| Error::parse(1, 1, "missing `Acceptance` header"))?;
    if let Some(m) = marks.values().flatten().find(|&&m| m >= count) {
        return Err(Error::InvalidCondition(format!("mark {m} exceeds the {count} declared sets")));
    }
    let with = |m: u64| -> TransSet { marks.iter().filter(|(_, s)| s.contains(&m)).map(|(t, _)| *t).collect() };
    let name: Vec<&str> = h.acc_name.iter().flatten().map(String::as_str).collect();
    let condition = match name[..] {
        ["Buchi"] => AcceptanceCondition::Buchi(with(0)),
        ["generalized-Buchi", k] => {
            let k: u64 = k.parse().map_err(|_| Error::parse(1, 1, "invalid acc-name"))?;
            AcceptanceCondition::GenBuchi((0..k).map(with).collect())
        }
        ["parity", "min", "even", _] => {
            let mut k = BTreeMap::new();
            for t in ts.transitions() {
                match marks.get(&t).map(|m| m.iter().copied().collect::<Vec<_>>()).as_deref() {
                    Some([p]) => {
                        k.insert(t, *p as u32);
                    }
                    _ => {
                        return Err(Error::InvalidCondition(
                            "every parity transition needs exactly one mark".into(),
                        ))
                    }
                }
            }
            AcceptanceCondition::Parity(k)
        }
        ["Rabin", k] => {
            let k: u64 = k.parse().map_err(|_| Error::parse(1, 1, "invalid acc-name"))?;
            AcceptanceCondition::Rabin(
                (0..k)
                    .map(|i| RabinPair { fin: with(2 * i), inf: with(2 * i + 1) })
                    .collect(),
            )
        }
        _ => {
            let loops = enumerate_loops(&ts)?;
            let family = loops
                .loops
                .into_iter()
                .filter(|l| {
                    let seen: BTreeSet<u64> = l.iter().filter_map(|t| marks.get(t)).flatten().copied().collect();
                    acc.eval(&seen)
                })
                .collect();
            AcceptanceCondition::Muller(family)
        }
    };
    Automaton::new(ts, condition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::fixtures::fix_a;
    use crate::oracle::equiv::equivalence;
    use crate::ts::fixtures::*;

    #[test]
    fn figure_document() {
        let doc = emit_hoa(&fix_a());
        assert!(doc.contains("acc-name: parity min even 2\n"));
        assert!(doc.contains("Acceptance: 2 Inf(0) | Fin(1)\n"));
        assert!(doc.contains("State: 2 \"bb\"\n[!0] 0 {1}\n[0] 0 {0}\n"));
        assert_eq!(parse_hoa(&doc).unwrap(), fix_a());
    }

    #[test]
    fn buchi_loop() {
        let mut ts = TransitionSystem::new(Alphabet::from_chars("a").unwrap(), 1);
        ts.add(0, A, 0);
        let a = Automaton::new(ts, AcceptanceCondition::Buchi([t(0, A)].into_iter().collect())).unwrap();
        let doc = emit_hoa(&a);
        assert!(doc.contains("Acceptance: 1 Inf(0)\n"));
        assert!(doc.contains("[t] 0 {0}\n"));
        assert_eq!(parse_hoa(&doc).unwrap(), a);
    }

    #[test]
    fn empty_rabin() {
        let a = Automaton::new(fix_a_ts(), AcceptanceCondition::Rabin(vec![])).unwrap();
        let doc = emit_hoa(&a);
        assert!(doc.contains("Acceptance: 0 f\n"));
        assert_eq!(parse_hoa(&doc).unwrap(), a);
    }

    #[test]
    fn parity_formulas() {
        assert_eq!(parity_formula(0, 1), "Inf(0)");
        assert_eq!(parity_formula(0, 3), "Inf(0) | (Fin(1) & Inf(2))");
        assert_eq!(parity_formula(0, 4), "Inf(0) | (Fin(1) & (Inf(2) | Fin(3)))");
    }

    #[test]
    fn one_hot_alphabet() {
        let abc = Alphabet::from_chars("abc").unwrap();
        let mut ts = TransitionSystem::new(abc, 2);
        ts.add(0, Symbol(0), 1);
        ts.add(1, Symbol(2), 0);
        ts.add(1, Symbol(1), 1);
        let u = ts.universe();
        let a = Automaton::new(
            ts,
            AcceptanceCondition::Rabin(vec![RabinPair { fin: [Transition::new(1, Symbol(1))].into_iter().collect(), inf: u }]),
        )
        .unwrap();
        let doc = emit_hoa(&a);
        assert!(doc.contains("AP: 3 \"p0\" \"p1\" \"p2\"\n"));
        assert_eq!(parse_hoa(&doc).unwrap(), a);
    }

    #[test]
    fn muller_round_trip_is_equivalent() {
        let ts = fix_a_ts();
        let family = [ts.universe(), [t(0, A)].into_iter().collect()].into_iter().collect();
        let a = Automaton::new(ts, AcceptanceCondition::Muller(family)).unwrap();
        let b = parse_hoa(&emit_hoa(&a)).unwrap();
        assert_eq!(equivalence(&a, &b).unwrap(), None);
    }

    #[test]
    fn foreign_documents() {
        let doc = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"x\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[0] 0 {0}\n[!0] 0\n--END--\n";
        let a = parse_hoa(doc).unwrap();
        assert_eq!(a.ts.alphabet().names(), ["0", "1"]);
        assert!(matches!(a.condition, AcceptanceCondition::Muller(_)));
        let x = crate::word::OmegaWord::periodic(vec![Symbol(1)]).unwrap();
        assert!(a.accepts(&x).unwrap());
    }

    #[test]
    fn rejects_unsupported() {
        let state_based = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0 {0}\n[t] 0\n--END--\n";
        assert!(matches!(parse_hoa(state_based), Err(Error::UnsupportedFeature(_))));
        let nondet = "HOA: v1\nStates: 2\nStart: 0\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 0\n[t] 1\nState: 1\n--END--\n";
        assert!(matches!(parse_hoa(nondet), Err(Error::UnsupportedFeature(_))));
        let two_starts = "HOA: v1\nStates: 2\nStart: 0\nStart: 1\nAP: 0\nAcceptance: 0 t\n--BODY--\n--END--\n";
        assert!(matches!(parse_hoa(two_starts), Err(Error::UnsupportedFeature(_))));
        assert!(matches!(parse_hoa("HOA: v2\n"), Err(Error::Parse { .. })));
        let bad = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Inf(0\n--BODY--\n--END--\n";
        assert!(matches!(parse_hoa(bad), Err(Error::Parse { line: 5, .. })));
    }
}
