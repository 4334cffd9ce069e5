//! `omegat`: command-line front end for the omega-core library.
//!
//! Exit codes: 0 for success (or EQUAL), 1 for DISTINCT, 2 for any error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use omega_core::automata::DEFAULT_STATE_CAP;
use omega_core::efclass::{EngineCaps, KClassEngine};
use omega_core::factors::{self, Which};
use omega_core::monoid::FiniteMonoid;
use omega_core::regword::{self, DEFAULT_K_CHECK, DEFAULT_UNFOLD_BOUND};
use omega_core::{Alphabet, OmegaTerm};

#[derive(Parser, Debug)]
#[command(name = "omegat", version, about = "Word problem, projections and factor languages for omega-terms")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Alphabet, e.g. "ab". Defaults to the letters of the input terms.
    #[arg(short = 'A', long = "alphabet", global = true)]
    alphabet: Option<String>,
    /// Quantifier depth for `project` and `quotient`.
    #[arg(short = 'k', long = "depth", global = true, default_value_t = 1)]
    depth: u32,
    /// Largest depth searched for separating witnesses and cross-checks.
    #[arg(long, global = true, default_value_t = DEFAULT_K_CHECK)]
    kmax: u32,
    /// Skip the projection cross-check of EQUAL verdicts and canonical forms.
    #[arg(long, global = true)]
    no_crosscheck: bool,
    /// Output format for automata.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of classes interned per depth.
    #[arg(long, global = true, default_value_t = EngineCaps::default().classes_per_depth, value_parser = positive)]
    cap_classes: usize,
    /// Maximum number of automaton states during determinization.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP, value_parser = positive)]
    cap_states: usize,
    /// Maximum number of elements of a quotient monoid.
    #[arg(long, global = true, default_value_t = EngineCaps::default().quotient_elements, value_parser = positive)]
    cap_monoid: usize,
    /// Maximum length of an unfolded word.
    #[arg(long, global = true, default_value_t = DEFAULT_UNFOLD_BOUND, value_parser = positive)]
    cap_word: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("cap must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two terms are equal.
    Eq { left: String, right: String },
    /// Print the canonical form.
    Canon { term: String },
    /// Print the depth-k class of a term and its shortest representative.
    Project { term: String },
    /// Print the minimal DFA of the prefix, suffix or factor language.
    Factors {
        term: String,
        #[arg(long, default_value = "factor")]
        which: Which,
    },
    /// List the regular J-classes above a term.
    Regjs { term: String },
    /// Evaluate a term in a finite monoid under a letter assignment such as "a=0,b=1".
    Eval { term: String, monoid: PathBuf, assignment: String },
    /// Print the monoid of depth-k classes of words over the alphabet.
    Quotient,
    /// Replace every ω by the exponent n and print the word.
    Unfold { term: String, n: u32 },
}

struct Session {
    config: Config,
    alphabet: Alphabet,
}

impl Session {
    fn new(config: Config, terms: &[&str]) -> Result<(Session, Vec<OmegaTerm>)> {
        let (alphabet, parsed) = match &config.alphabet {
            Some(a) => {
                let alphabet = Alphabet::new(a)?;
                let parsed = terms
                    .iter()
                    .map(|t| OmegaTerm::parse(t, &alphabet).with_context(|| format!("cannot parse \"{t}\"")))
                    .collect::<Result<Vec<_>>>()?;
                (alphabet, parsed)
            }
            None => {
                let parsed = terms
                    .iter()
                    .map(|t| OmegaTerm::parse_any(t).with_context(|| format!("cannot parse \"{t}\"")))
                    .collect::<Result<Vec<_>>>()?;
                (Alphabet::covering(&parsed), parsed)
            }
        };
        Ok((Session { config, alphabet }, parsed))
    }

    fn engine(&self) -> KClassEngine {
        let caps = EngineCaps {
            classes_per_depth: self.config.cap_classes,
            quotient_elements: self.config.cap_monoid,
            ..EngineCaps::default()
        };
        KClassEngine::with_caps(self.alphabet.clone(), caps)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli, &mut out) {
        Ok(code) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Result<u8> {
    use std::fmt::Write as _;
    let config = cli.config;
    match cli.command {
        Command::Eq { left, right } => {
            let (s, t) = Session::new(config, &[&left, &right])?;
            let (c1, c2) = (regword::canonicalize(&t[0]), regword::canonicalize(&t[1]));
            let mut engine = s.engine();
            if c1 == c2 {
                if !s.config.no_crosscheck {
                    regword::equal_checked(&mut engine, &t[0], &t[1], s.config.kmax)?;
                }
                writeln!(out, "EQUAL\n{c1}\n{c2}")?;
                return Ok(0);
            }
            match regword::separate(&mut engine, &t[0], &t[1], s.config.kmax)? {
                Some(sep) => {
                    writeln!(out, "DISTINCT at k={}", sep.depth)?;
                    writeln!(out, "{c1}  class {} rep \"{}\"", sep.left.id, sep.left_representative)?;
                    writeln!(out, "{c2}  class {} rep \"{}\"", sep.right.id, sep.right_representative)?;
                }
                None => writeln!(out, "DISTINCT (no ≡_k witness ≤ {})\n{c1}\n{c2}", s.config.kmax)?,
            }
            Ok(1)
        }
        Command::Canon { term } => {
            let (s, t) = Session::new(config, &[&term])?;
            let c = regword::canonicalize(&t[0]);
            if !s.config.no_crosscheck {
                let mut engine = s.engine();
                if let Some(sep) = regword::separate(&mut engine, &t[0], &c.to_term(), s.config.kmax)? {
                    bail!("internal inconsistency: canonical form {c} differs from the input at depth {}", sep.depth);
                }
            }
            writeln!(out, "{c}")?;
            Ok(0)
        }
        Command::Project { term } => {
            let (s, t) = Session::new(config, &[&term])?;
            let mut engine = s.engine();
            let c = engine.project(&t[0], s.config.depth)?;
            let rep = engine.representative(c);
            writeln!(out, "depth {} class {} rep \"{}\"", c.depth, c.id, if rep.is_empty() { "1" } else { &rep })?;
            Ok(0)
        }
        Command::Factors { term, which } => {
            let (s, t) = Session::new(config, &[&term])?;
            let langs = factors::languages(&t[0], &s.alphabet, s.config.cap_states)?;
            let dfa = langs.get(which);
            out.push_str(&match s.config.format {
                Format::Text => dfa.to_text(),
                Format::Dot => dfa.to_dot(),
            });
            Ok(0)
        }
        Command::Regjs { term } => {
            let (s, t) = Session::new(config, &[&term])?;
            let mut engine = s.engine();
            for entry in factors::regular_jclasses_with(&t[0], &mut engine)? {
                writeln!(out, "{entry}")?;
            }
            Ok(0)
        }
        Command::Eval { term, monoid, assignment } => {
            let (_, t) = Session::new(config, &[&term])?;
            let text = fs::read_to_string(&monoid).with_context(|| format!("cannot read {}", monoid.display()))?;
            let m = FiniteMonoid::parse(&text)?;
            if !m.associativity_checked() {
                eprintln!("warning: associativity not checked for a monoid of size {}", m.size());
            }
            if !m.is_aperiodic() {
                eprintln!("warning: monoid is not aperiodic");
            }
            let h = parse_assignment(&assignment, &m)?;
            let x = m.evaluate(&t[0], &h)?;
            writeln!(out, "{}", m.name(x))?;
            Ok(0)
        }
        Command::Quotient => {
            let Some(a) = &config.alphabet else { bail!("quotient needs an alphabet (-A)") };
            let alphabet = Alphabet::new(a)?;
            let s = Session { config, alphabet };
            let mut engine = s.engine();
            let q = engine.quotient_monoid(s.config.depth)?;
            for (c, g) in s.alphabet.letters().iter().zip(&q.generators) {
                writeln!(out, "# {c} = {g}")?;
            }
            out.push_str(&q.monoid.to_text());
            Ok(0)
        }
        Command::Unfold { term, n } => {
            let (s, t) = Session::new(config, &[&term])?;
            writeln!(out, "{}", regword::unfold(&t[0], n, s.config.cap_word)?)?;
            Ok(0)
        }
    }
}

/// Parses `a=0,b=x` where each value is an element index or label.
fn parse_assignment(text: &str, m: &FiniteMonoid) -> Result<BTreeMap<char, usize>> {
    let mut h = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (letter, value) = part.split_once('=').ok_or_else(|| anyhow!("assignment \"{part}\" is not of the form letter=element"))?;
        let mut chars = letter.trim().chars();
        let (Some(c), None) = (chars.next(), chars.next()) else { bail!("\"{letter}\" is not a single letter") };
        let value = value.trim();
        let x = match value.parse::<usize>() {
            Ok(x) if x < m.size() => x,
            Ok(x) => bail!("element {x} is out of range for a monoid of size {}", m.size()),
            Err(_) => m.lookup(value).ok_or_else(|| anyhow!("no element named \"{value}\""))?,
        };
        h.insert(c, x);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_by_index_and_label() {
        let m = FiniteMonoid::parse("monoid 2\nidentity 0\nrow 0: 0 1\nrow 1: 1 1\nlabel 1 zero\n").unwrap();
        let h = parse_assignment("a=1, b=zero,c=0", &m).unwrap();
        assert_eq!(h, BTreeMap::from([('a', 1), ('b', 1), ('c', 0)]));
        assert!(parse_assignment("a=2", &m).is_err());
        assert!(parse_assignment("ab=1", &m).is_err());
        assert!(parse_assignment("a", &m).is_err());
        assert!(parse_assignment("a=one", &m).is_err());
    }

    #[test]
    fn caps_must_be_positive() {
        assert!(positive("0").is_err());
        assert_eq!(positive("7"), Ok(7));
        assert!(Cli::try_parse_from(["omegat", "--cap-states", "0", "canon", "a"]).is_err());
    }
}
