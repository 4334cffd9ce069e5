use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("letter '{letter}' at position {position} is not in the alphabet")]
    LetterNotInAlphabet { letter: char, position: usize },
    #[error("invalid alphabet: {0}")]
    BadAlphabet(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EfError {
    #[error("class table at depth {depth} exceeded its cap of {cap} classes")]
    ClassCap { depth: u32, cap: usize },
    #[error("quotient monoid exceeded its cap of {cap} elements ({found} classes found so far)")]
    QuotientCap { cap: usize, found: usize },
    #[error("word of length {len} exceeds the oracle bound {bound}")]
    OracleBound { len: usize, bound: usize },
    #[error("letter '{0}' is not in the engine alphabet")]
    UnknownLetter(char),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegwordError {
    #[error(transparent)]
    Classes(#[from] EfError),
    #[error("unfolding has length {len}, above the bound {bound}")]
    LengthBound { len: usize, bound: usize },
    #[error("internal inconsistency: canonical forms agree but depth-{depth} projections differ for {left} and {right}")]
    Inconsistent { depth: u32, left: String, right: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("automaton exceeded its cap of {cap} states")]
    StateCap { cap: usize },
    #[error("transition monoid exceeded its cap of {cap} elements")]
    MonoidCap { cap: usize },
    #[error("malformed automaton text at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("letter '{0}' is not in the automaton alphabet")]
    UnknownLetter(char),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Classes(#[from] EfError),
    #[error("substitution erases letter '{0}'")]
    Erasing(char),
    #[error("letter '{0}' is not covered by the substitution")]
    MissingImage(char),
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(char),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("malformed monoid text at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("table entry {0} out of range")]
    OutOfRange(usize),
    #[error("no image assigned to letter '{0}'")]
    Unassigned(char),
}
