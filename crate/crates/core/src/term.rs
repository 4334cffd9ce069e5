//! ω-terms: parsing, printing and purely syntactic transformations.
//!
//! The smart constructors only normalize associativity and units. Every
//! algebraic identification (ω-power laws, absorption, rotation) happens in
//! [`crate::regword`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::TermError;

/// Ordered set of single-letter symbols. The order is used for every
/// tie-break that depends on the alphabet (representatives, automaton
/// numbering, enumeration).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self, TermError> {
        let mut out: Vec<char> = Vec::new();
        for c in letters.chars().filter(|c| !c.is_whitespace()) {
            if !c.is_ascii_lowercase() {
                return Err(TermError::BadAlphabet(format!("'{c}' is not a lowercase letter")));
            }
            if out.contains(&c) {
                return Err(TermError::BadAlphabet(format!("duplicate letter '{c}'")));
            }
            out.push(c);
        }
        if out.is_empty() {
            return Err(TermError::BadAlphabet("empty alphabet".into()));
        }
        Ok(Alphabet { letters: out })
    }

    /// Alphabet made of the given letters, sorted.
    pub fn from_set(letters: &BTreeSet<char>) -> Result<Self, TermError> {
        Self::new(&letters.iter().collect::<String>())
    }

    /// Sorted letters occurring in any of `terms`, or `{a}` when there are none.
    pub fn covering<'a>(terms: impl IntoIterator<Item = &'a OmegaTerm>) -> Self {
        let mut letters = BTreeSet::new();
        for t in terms {
            letters.extend(t.content());
        }
        if letters.is_empty() {
            letters.insert('a');
        }
        Self::from_set(&letters).expect("term letters are lowercase")
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    pub fn letter(&self, idx: usize) -> char {
        self.letters[idx]
    }

    /// Encode a word as letter indices.
    pub fn encode(&self, word: &str) -> Result<Vec<u8>, TermError> {
        word.chars()
            .map(|c| {
                self.index_of(c)
                    .map(|i| i as u8)
                    .ok_or(TermError::LetterNotInAlphabet { letter: c, position: 0 })
            })
            .collect()
    }

    pub fn decode(&self, word: &[u8]) -> String {
        word.iter().map(|&i| self.letters[i as usize]).collect()
    }

    /// Every word of length at most `max_len`, shortest first, then in
    /// alphabet order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for &c in &self.letters {
                    let mut v = w.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Abstract syntax of an ω-term.
///
/// Values built through [`OmegaTerm::concat`], [`OmegaTerm::power`] and
/// [`OmegaTerm::omega`] keep `Concat` flat and free of `Empty` children, and
/// every `Power` exponent is at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaTerm {
    Empty,
    Letter(char),
    Concat(Vec<OmegaTerm>),
    Omega(Box<OmegaTerm>),
    Power(Box<OmegaTerm>, u32),
}

impl OmegaTerm {
    pub fn letter(c: char) -> Self {
        OmegaTerm::Letter(c)
    }

    /// The finite word `w` as a term.
    pub fn word(w: &str) -> Self {
        Self::concat(w.chars().map(OmegaTerm::Letter).collect())
    }

    pub fn concat(parts: Vec<OmegaTerm>) -> Self {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                OmegaTerm::Empty => {}
                OmegaTerm::Concat(cs) => flat.extend(cs),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => OmegaTerm::Empty,
            1 => flat.pop().unwrap(),
            _ => OmegaTerm::Concat(flat),
        }
    }

    pub fn power(base: OmegaTerm, exponent: u32) -> Self {
        match (exponent, base) {
            (0, _) | (_, OmegaTerm::Empty) => OmegaTerm::Empty,
            (1, b) => b,
            (n, b) => OmegaTerm::Power(Box::new(b), n),
        }
    }

    /// ω-power. `Omega(Empty)` is kept as a node; it denotes the empty word.
    pub fn omega(base: OmegaTerm) -> Self {
        OmegaTerm::Omega(Box::new(base))
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, TermError> {
        Parser::new(text, Some(alphabet)).parse_term()
    }

    /// Parse without an alphabet check. Any lowercase letter is accepted.
    pub fn parse_any(text: &str) -> Result<Self, TermError> {
        Parser::new(text, None).parse_term()
    }

    /// Replace each letter by its image. Letters missing from `map` are kept.
    pub fn substitute(&self, map: &BTreeMap<char, OmegaTerm>) -> OmegaTerm {
        match self {
            OmegaTerm::Empty => OmegaTerm::Empty,
            OmegaTerm::Letter(c) => map.get(c).cloned().unwrap_or(OmegaTerm::Letter(*c)),
            OmegaTerm::Concat(cs) => OmegaTerm::concat(cs.iter().map(|c| c.substitute(map)).collect()),
            OmegaTerm::Omega(b) => OmegaTerm::omega(b.substitute(map)),
            OmegaTerm::Power(b, n) => OmegaTerm::power(b.substitute(map), *n),
        }
    }

    pub fn content(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_content(&mut out);
        out
    }

    fn collect_content(&self, out: &mut BTreeSet<char>) {
        match self {
            OmegaTerm::Empty => {}
            OmegaTerm::Letter(c) => {
                out.insert(*c);
            }
            OmegaTerm::Concat(cs) => cs.iter().for_each(|c| c.collect_content(out)),
            OmegaTerm::Omega(b) | OmegaTerm::Power(b, _) => b.collect_content(out),
        }
    }

    /// The finite word denoted by the term, if it has no ω-power over a
    /// nonempty base.
    pub fn is_finite_word(&self) -> Option<String> {
        match self {
            OmegaTerm::Empty => Some(String::new()),
            OmegaTerm::Letter(c) => Some(c.to_string()),
            OmegaTerm::Concat(cs) => {
                let mut w = String::new();
                for c in cs {
                    w.push_str(&c.is_finite_word()?);
                }
                Some(w)
            }
            OmegaTerm::Omega(b) => match b.is_finite_word()? {
                w if w.is_empty() => Some(w),
                _ => None,
            },
            OmegaTerm::Power(b, n) => Some(b.is_finite_word()?.repeat(*n as usize)),
        }
    }

    /// Mirror image: concatenations reversed at every level.
    pub fn reversed(&self) -> OmegaTerm {
        match self {
            OmegaTerm::Empty | OmegaTerm::Letter(_) => self.clone(),
            OmegaTerm::Concat(cs) => OmegaTerm::Concat(cs.iter().rev().map(|c| c.reversed()).collect()),
            OmegaTerm::Omega(b) => OmegaTerm::Omega(Box::new(b.reversed())),
            OmegaTerm::Power(b, n) => OmegaTerm::Power(Box::new(b.reversed()), *n),
        }
    }

    pub fn omega_nodes(&self) -> usize {
        match self {
            OmegaTerm::Empty | OmegaTerm::Letter(_) => 0,
            OmegaTerm::Concat(cs) => cs.iter().map(|c| c.omega_nodes()).sum(),
            OmegaTerm::Omega(b) => 1 + b.omega_nodes(),
            OmegaTerm::Power(b, _) => b.omega_nodes(),
        }
    }

    /// Nesting depth of ω-powers.
    pub fn omega_depth(&self) -> usize {
        match self {
            OmegaTerm::Empty | OmegaTerm::Letter(_) => 0,
            OmegaTerm::Concat(cs) => cs.iter().map(|c| c.omega_depth()).max().unwrap_or(0),
            OmegaTerm::Omega(b) => 1 + b.omega_depth(),
            OmegaTerm::Power(b, _) => b.omega_depth(),
        }
    }

    /// Every `Power(b, n)` replaced by `n` copies of `b`.
    pub fn expand_powers(&self) -> OmegaTerm {
        match self {
            OmegaTerm::Empty | OmegaTerm::Letter(_) => self.clone(),
            OmegaTerm::Concat(cs) => OmegaTerm::concat(cs.iter().map(|c| c.expand_powers()).collect()),
            OmegaTerm::Omega(b) => OmegaTerm::omega(b.expand_powers()),
            OmegaTerm::Power(b, n) => {
                let b = b.expand_powers();
                OmegaTerm::concat(std::iter::repeat_n(b, *n as usize).collect())
            }
        }
    }

    /// The factors of a concatenation, or the term itself.
    pub fn factors(&self) -> &[OmegaTerm] {
        match self {
            OmegaTerm::Concat(cs) => cs,
            OmegaTerm::Empty => &[],
            other => std::slice::from_ref(other),
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, OmegaTerm::Letter(_) | OmegaTerm::Empty)
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Empty => write!(f, "1"),
            OmegaTerm::Letter(c) => write!(f, "{c}"),
            OmegaTerm::Concat(cs) => {
                let mut after_power = false;
                for c in cs {
                    if after_power {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                    after_power = matches!(c, OmegaTerm::Omega(_) | OmegaTerm::Power(..));
                }
                Ok(())
            }
            OmegaTerm::Omega(b) => {
                write_base(f, b)?;
                write!(f, "^w")
            }
            OmegaTerm::Power(b, n) => {
                write_base(f, b)?;
                write!(f, "^{n}")
            }
        }
    }
}

fn write_base(f: &mut fmt::Formatter<'_>, b: &OmegaTerm) -> fmt::Result {
    if b.is_atomic() {
        write!(f, "{b}")
    } else {
        write!(f, "({b})")
    }
}

/// Recursive-descent parser for
///
/// ```text
/// term   := "1" | seq
/// seq    := factor { factor }
/// factor := atom [ "^" ( "w" | INTEGER ) ]
/// atom   := LETTER | "1" | "(" seq ")"
/// ```
///
/// Whitespace is ignored. `1` is also accepted as an atom so that printed
/// terms such as `1^w` read back.
struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: Option<&'a Alphabet>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: Option<&'a Alphabet>) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, alphabet }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map(|&(i, c)| i + c.len_utf8()).unwrap_or(0))
    }

    fn error(&self, message: impl Into<String>) -> TermError {
        TermError::Syntax { position: self.offset(), message: message.into() }
    }

    fn parse_term(mut self) -> Result<OmegaTerm, TermError> {
        if self.chars.is_empty() {
            return Err(self.error("empty input"));
        }
        let t = self.parse_seq()?;
        if self.peek().is_some() {
            return Err(self.error(format!("unexpected '{}'", self.peek().unwrap())));
        }
        Ok(t)
    }

    fn parse_seq(&mut self) -> Result<OmegaTerm, TermError> {
        let mut parts = vec![self.parse_factor()?];
        while matches!(self.peek(), Some(c) if c == '(' || c == '1' || c.is_ascii_lowercase()) {
            parts.push(self.parse_factor()?);
        }
        Ok(OmegaTerm::concat(parts))
    }

    fn parse_factor(&mut self) -> Result<OmegaTerm, TermError> {
        let mut atom = self.parse_atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            match self.peek() {
                Some('w') => {
                    self.pos += 1;
                    atom = OmegaTerm::omega(atom);
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let mut digits = String::new();
                    while let Some(d) = self.peek().filter(|d| d.is_ascii_digit()) {
                        digits.push(d);
                        self.pos += 1;
                    }
                    let n: u32 = digits.parse().map_err(|_| {
                        self.pos = start;
                        self.error("exponent out of range")
                    })?;
                    atom = OmegaTerm::power(atom, n);
                }
                _ => return Err(self.error("expected 'w' or an integer after '^'")),
            }
        }
        Ok(atom)
    }

    fn parse_atom(&mut self) -> Result<OmegaTerm, TermError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_seq()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('1') => {
                self.pos += 1;
                Ok(OmegaTerm::Empty)
            }
            Some(c) if c.is_ascii_lowercase() => {
                if let Some(a) = self.alphabet {
                    if !a.contains(c) {
                        return Err(TermError::LetterNotInAlphabet { letter: c, position: self.offset() });
                    }
                }
                self.pos += 1;
                Ok(OmegaTerm::Letter(c))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
