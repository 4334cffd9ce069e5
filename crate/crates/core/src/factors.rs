//! Finite prefixes, suffixes and factors of ω-terms, and the regular
//! J-classes above them.
//!
//! P(t), S(t) and F(t) are computed together by structural recursion; every
//! intermediate language is kept as a minimal [`Dfa`]. [`suffix_lang`] goes
//! through the reversed term instead, and [`substitution_factor_lang`]
//! evaluates the languages of `f(v)` from those of `v` and of the images
//! `f(b)`, so each has an independent route to compare against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::automata::{Dfa, Nfa, DEFAULT_STATE_CAP};
use crate::efclass::KClassEngine;
use crate::error::{EfError, FactorError};
use crate::regword::{canonicalize, CanonicalTerm};
use crate::term::{Alphabet, OmegaTerm};

/// Depths at which the regular J-class dedupe compares projections.
pub const JCHECK_DEPTHS: std::ops::RangeInclusive<u32> = 1..=2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    Prefix,
    Suffix,
    Factor,
}

impl FromStr for Which {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prefix" => Ok(Which::Prefix),
            "suffix" => Ok(Which::Suffix),
            "factor" => Ok(Which::Factor),
            _ => Err(format!("expected prefix, suffix or factor, got '{s}'")),
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Prefix => "prefix",
            Which::Suffix => "suffix",
            Which::Factor => "factor",
        })
    }
}

/// The three languages of one term, each minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorLangs {
    pub prefix: Dfa,
    pub suffix: Dfa,
    pub factor: Dfa,
}

impl FactorLangs {
    pub fn get(&self, which: Which) -> &Dfa {
        match which {
            Which::Prefix => &self.prefix,
            Which::Suffix => &self.suffix,
            Which::Factor => &self.factor,
        }
    }
}

struct Builder<'a> {
    alphabet: &'a Alphabet,
    cap: usize,
}

/// Languages of a subterm, plus its word when it denotes a finite one.
#[derive(Clone)]
struct Langs {
    p: Dfa,
    s: Dfa,
    f: Dfa,
    finite: Option<String>,
}

impl Builder<'_> {
    fn min(&self, n: &Nfa) -> Result<Dfa, FactorError> {
        Ok(n.to_min_dfa(self.cap)?)
    }

    fn word(&self, w: &str) -> Result<Langs, FactorError> {
        if w.len() >= self.cap {
            return Err(crate::AutomatonError::StateCap { cap: self.cap }.into());
        }
        Ok(Langs {
            p: self.min(&Nfa::prefixes(self.alphabet, w)?)?,
            s: self.min(&Nfa::suffixes(self.alphabet, w)?)?,
            f: self.min(&Nfa::factors(self.alphabet, w)?)?,
            finite: Some(w.to_owned()),
        })
    }

    fn concat(&self, x: &Langs, y: &Langs) -> Result<Langs, FactorError> {
        if let (Some(u), Some(v)) = (&x.finite, &y.finite) {
            return self.word(&format!("{u}{v}"));
        }
        let mut p = x.p.to_nfa();
        if let Some(u) = &x.finite {
            p = p.union(&Nfa::word(self.alphabet, u)?.concat(&y.p.to_nfa()));
        }
        let mut s = y.s.to_nfa();
        if let Some(v) = &y.finite {
            s = s.union(&x.s.to_nfa().concat(&Nfa::word(self.alphabet, v)?));
        }
        let f = x.f.to_nfa().union(&y.f.to_nfa()).union(&x.s.to_nfa().concat(&y.p.to_nfa()));
        Ok(Langs { p: self.min(&p)?, s: self.min(&s)?, f: self.min(&f)?, finite: None })
    }

    fn power(&self, base: &Langs, n: u32) -> Result<Langs, FactorError> {
        if let Some(w) = &base.finite {
            if w.len().saturating_mul(n as usize) >= self.cap {
                return Err(crate::AutomatonError::StateCap { cap: self.cap }.into());
            }
            return self.word(&w.repeat(n as usize));
        }
        // P, S and F of x^n for n ≥ 2 equal those of x^2 when x is infinite
        if n >= 2 { self.concat(base, base) } else { Ok(base.clone()) }
    }

    fn omega(&self, base: &Langs) -> Result<Langs, FactorError> {
        let (p, s, f) = match base.finite.as_deref() {
            Some("") => return self.word(""),
            Some(w) => {
                let star = Nfa::word(self.alphabet, w)?.star();
                let p = star.concat(&base.p.to_nfa());
                let s = base.s.to_nfa().concat(&star);
                let f = base.f.to_nfa().union(&base.s.to_nfa().concat(&star).concat(&base.p.to_nfa()));
                (p, s, f)
            }
            None => {
                let f = base.f.to_nfa().union(&base.s.to_nfa().concat(&base.p.to_nfa()));
                (base.p.to_nfa(), base.s.to_nfa(), f)
            }
        };
        Ok(Langs { p: self.min(&p)?, s: self.min(&s)?, f: self.min(&f)?, finite: None })
    }

    fn langs(&self, t: &OmegaTerm) -> Result<Langs, FactorError> {
        match t {
            OmegaTerm::Empty => self.word(""),
            OmegaTerm::Letter(c) => self.word(&c.to_string()),
            OmegaTerm::Concat(parts) => {
                let mut acc = self.word("")?;
                for part in parts {
                    acc = self.concat(&acc, &self.langs(part)?)?;
                }
                Ok(acc)
            }
            OmegaTerm::Power(b, n) => self.power(&self.langs(b)?, *n),
            OmegaTerm::Omega(b) => self.omega(&self.langs(b)?),
        }
    }
}

fn check_alphabet(t: &OmegaTerm, alphabet: &Alphabet) -> Result<(), FactorError> {
    match t.content().into_iter().find(|&c| !alphabet.contains(c)) {
        Some(c) => Err(FactorError::UnknownLetter(c)),
        None => Ok(()),
    }
}

/// P(t), S(t) and F(t) by the joint recursion.
pub fn languages(t: &OmegaTerm, alphabet: &Alphabet, cap: usize) -> Result<FactorLangs, FactorError> {
    check_alphabet(t, alphabet)?;
    let l = Builder { alphabet, cap }.langs(t)?;
    Ok(FactorLangs { prefix: l.p, suffix: l.s, factor: l.f })
}

/// Finite words `u` with `t ≤_R u`.
pub fn prefix_lang(t: &OmegaTerm, alphabet: &Alphabet) -> Result<Dfa, FactorError> {
    Ok(languages(t, alphabet, DEFAULT_STATE_CAP)?.prefix)
}

/// Finite words `u` with `t ≤_L u`, as the mirror image of the prefixes of
/// the reversed term.
pub fn suffix_lang(t: &OmegaTerm, alphabet: &Alphabet) -> Result<Dfa, FactorError> {
    let reversed = prefix_lang(&t.reversed(), alphabet)?;
    Ok(reversed.reverse().to_min_dfa(DEFAULT_STATE_CAP)?)
}

/// Finite words `u` with `t ≤_J u`.
pub fn factor_lang(t: &OmegaTerm, alphabet: &Alphabet) -> Result<Dfa, FactorError> {
    Ok(languages(t, alphabet, DEFAULT_STATE_CAP)?.factor)
}

pub fn lang(t: &OmegaTerm, alphabet: &Alphabet, which: Which) -> Result<Dfa, FactorError> {
    match which {
        Which::Prefix => prefix_lang(t, alphabet),
        Which::Suffix => suffix_lang(t, alphabet),
        Which::Factor => factor_lang(t, alphabet),
    }
}

/// The language of `f(v)` selected by `which`, assembled from the languages
/// of `v` (over the domain letters of `map`) and of each image `f(b)`,
/// where `f` replaces each letter `b` by `map[b]`. The images must be
/// nonempty.
pub fn substitution_factor_lang(
    v: &OmegaTerm,
    map: &BTreeMap<char, OmegaTerm>,
    target: &Alphabet,
    which: Which,
) -> Result<Dfa, FactorError> {
    let cap = DEFAULT_STATE_CAP;
    if let Some(c) = v.content().into_iter().find(|c| !map.contains_key(c)) {
        return Err(FactorError::MissingImage(c));
    }
    for (&b, image) in map {
        if image.content().is_empty() {
            return Err(FactorError::Erasing(b));
        }
        check_alphabet(image, target)?;
    }
    if map.is_empty() {
        return Ok(Nfa::epsilon(target).to_min_dfa(cap)?);
    }
    let source = Alphabet::from_set(&map.keys().copied().collect()).map_err(|_| FactorError::UnknownLetter(*map.keys().next().unwrap()))?;
    let of_v = languages(v, &source, cap)?;
    let finite_images: BTreeMap<char, String> = map.iter().filter_map(|(&b, t)| t.is_finite_word().map(|w| (b, w))).collect();
    let c_letters: BTreeSet<char> = finite_images.keys().copied().collect();
    let image_of = |l: &Nfa| l.restrict(&c_letters).image(&finite_images, target);
    let mut of_image = BTreeMap::new();
    for (&b, t) in map {
        of_image.insert(b, languages(t, target, cap)?);
    }
    let eps = Nfa::epsilon(target);
    let letters = source.letters();
    let result = match which {
        Which::Prefix => {
            let pv = of_v.prefix.to_nfa();
            let mut acc = image_of(&pv)?;
            for &b in letters {
                acc = acc.union(&image_of(&pv.right_quotient(b))?.concat(&of_image[&b].prefix.to_nfa()));
            }
            acc
        }
        Which::Suffix => {
            let sv = of_v.suffix.to_nfa();
            let mut acc = image_of(&sv)?;
            for &b in letters {
                acc = acc.union(&of_image[&b].suffix.to_nfa().concat(&image_of(&sv.left_quotient(b))?));
            }
            acc
        }
        Which::Factor => {
            let fv = of_v.factor.to_nfa();
            let mut acc = Nfa::empty_language(target);
            for &b in letters {
                if of_v.factor.contains(&b.to_string()) {
                    acc = acc.union(&of_image[&b].factor.to_nfa());
                }
            }
            let ends: Vec<Option<char>> = std::iter::once(None).chain(letters.iter().copied().map(Some)).collect();
            for &b1 in &ends {
                let (left, s1) = match b1 {
                    Some(b) => (fv.left_quotient(b), of_image[&b].suffix.to_nfa()),
                    None => (fv.clone(), eps.clone()),
                };
                for &b2 in &ends {
                    let (middle, p2) = match b2 {
                        Some(b) => (left.right_quotient(b), of_image[&b].prefix.to_nfa()),
                        None => (left.clone(), eps.clone()),
                    };
                    acc = acc.union(&s1.concat(&image_of(&middle)?).concat(&p2));
                }
            }
            acc
        }
    };
    Ok(result.to_min_dfa(cap)?)
}

/// One regular J-class above a term, named by an idempotent in it.
/// `unverified` marks entries that could not be shown distinct from some
/// other entry of the same list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegEntry {
    pub term: CanonicalTerm,
    pub unverified: bool,
}

impl fmt::Display for RegEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term)?;
        if self.unverified {
            f.write_str(" UNVERIFIED")?;
        }
        Ok(())
    }
}

/// Canonical form of each ω-node, with the primitive root of its base when
/// that base is a nonempty finite word.
fn collect_idempotents(t: &OmegaTerm, out: &mut Vec<(CanonicalTerm, Option<String>)>) {
    match t {
        OmegaTerm::Empty | OmegaTerm::Letter(_) => {}
        OmegaTerm::Concat(parts) => parts.iter().for_each(|p| collect_idempotents(p, out)),
        OmegaTerm::Power(b, _) => collect_idempotents(b, out),
        OmegaTerm::Omega(b) => {
            collect_idempotents(b, out);
            let root = b.is_finite_word().filter(|w| !w.is_empty()).map(|w| primitive_root(&w).to_owned());
            out.push((canonicalize(t), root));
        }
    }
}

fn primitive_root(w: &str) -> &str {
    let n = w.len();
    (1..=n).find(|&p| n.is_multiple_of(p) && w.as_bytes().chunks(p).all(|c| c == &w.as_bytes()[..p])).map_or(w, |p| &w[..p])
}

fn is_rotation(u: &str, v: &str) -> bool {
    u.len() == v.len() && format!("{u}{u}").contains(v)
}

/// Regular J-classes above `t`: the empty word, then one entry per ω-power
/// in post-order, left to right, with duplicates removed.
pub fn regular_jclasses(t: &OmegaTerm) -> Result<Vec<RegEntry>, EfError> {
    let mut engine = KClassEngine::new(Alphabet::covering([t]));
    regular_jclasses_with(t, &mut engine)
}

/// As [`regular_jclasses`], with a caller-supplied engine whose alphabet
/// covers `t`.
pub fn regular_jclasses_with(t: &OmegaTerm, engine: &mut KClassEngine) -> Result<Vec<RegEntry>, EfError> {
    let mut candidates = vec![(canonicalize(&OmegaTerm::Empty), None)];
    collect_idempotents(t, &mut candidates);
    let mut out: Vec<RegEntry> = Vec::new();
    let mut roots: Vec<Option<String>> = Vec::new();
    'next: for (cand, root) in candidates {
        let mut doubtful = Vec::new();
        for (i, kept) in out.iter().enumerate() {
            if kept.term == cand {
                continue 'next;
            }
            if let (Some(r1), Some(r2)) = (&root, &roots[i]) {
                if is_rotation(r1, r2) {
                    continue 'next;
                }
            }
            if !proven_distinct(engine, &cand, &kept.term)? {
                doubtful.push(i);
            }
        }
        for &i in &doubtful {
            out[i].unverified = true;
        }
        out.push(RegEntry { term: cand, unverified: !doubtful.is_empty() });
        roots.push(root);
    }
    Ok(out)
}

/// Whether some projection shows the two idempotents lie in different
/// J-classes.
fn proven_distinct(engine: &mut KClassEngine, x: &CanonicalTerm, y: &CanonicalTerm) -> Result<bool, EfError> {
    let (tx, ty) = (x.to_term(), y.to_term());
    for k in JCHECK_DEPTHS {
        let px = engine.project(&tx, k)?;
        let py = engine.project(&ty, k)?;
        if !(engine.j_below(px, py)? && engine.j_below(py, px)?) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Everything the factor machinery knows about one term.
#[derive(Clone, Debug)]
pub struct FactorReport {
    pub term: OmegaTerm,
    pub langs: FactorLangs,
    pub reg_jclasses: Vec<RegEntry>,
}

pub fn report(t: &OmegaTerm, alphabet: &Alphabet) -> Result<FactorReport, FactorError> {
    let langs = languages(t, alphabet, DEFAULT_STATE_CAP)?;
    let mut engine = KClassEngine::new(alphabet.clone());
    let reg_jclasses = regular_jclasses_with(t, &mut engine)?;
    Ok(FactorReport { term: t.clone(), langs, reg_jclasses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regword::unfold;

    fn p(s: &str) -> OmegaTerm {
        OmegaTerm::parse_any(s).unwrap()
    }

    fn abc() -> Alphabet {
        Alphabet::new("abc").unwrap()
    }

    fn re(words: &[&str]) -> Nfa {
        Nfa::from_words(&abc(), words).unwrap()
    }

    fn star(w: &str) -> Nfa {
        Nfa::word(&abc(), w).unwrap().star()
    }

    fn same(d: &Dfa, n: &Nfa) -> bool {
        d.equivalent(&n.determinize(1000).unwrap())
    }

    /// Factors, prefixes or suffixes of a finite word, up to `max_len`.
    fn pieces(w: &str, which: Which, max_len: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let n = w.len();
        for i in 0..=n {
            for j in i..=n.min(i + max_len) {
                let keep = match which {
                    Which::Prefix => i == 0,
                    Which::Suffix => j == n,
                    Which::Factor => true,
                };
                if keep {
                    out.insert(w[i..j].to_owned());
                }
            }
        }
        out
    }

    fn check_against_unfolding(t: &str) {
        let t = p(t);
        let a = abc();
        for which in [Which::Prefix, Which::Suffix, Which::Factor] {
            let d = lang(&t, &a, which).unwrap();
            let got: BTreeSet<String> = d.enumerate(8).into_iter().collect();
            for n in 9..=10 {
                let w = unfold(&t, n, 1 << 20).unwrap();
                assert_eq!(got, pieces(&w, which, 8), "{which} of {t} at n={n}");
            }
        }
    }

    #[test]
    fn prefix_examples() {
        let a = abc();
        assert!(same(&prefix_lang(&p("(ab)^w"), &a).unwrap(), &star("ab").concat(&re(&["", "a"]))));
        assert!(same(&prefix_lang(&p("abc"), &a).unwrap(), &re(&["", "a", "ab", "abc"])));
        assert!(same(&prefix_lang(&p("a^w b"), &a).unwrap(), &star("a")));
    }

    #[test]
    fn suffix_examples() {
        let a = abc();
        assert!(same(&suffix_lang(&p("(ab)^w"), &a).unwrap(), &re(&["", "b"]).concat(&star("ab"))));
        assert!(same(&suffix_lang(&p("abc"), &a).unwrap(), &re(&["", "c", "bc", "abc"])));
        assert!(same(&suffix_lang(&p("b a^w"), &a).unwrap(), &star("a")));
    }

    #[test]
    fn factor_examples() {
        let a = abc();
        let expected = star("a").union(&star("a").concat(&re(&["b"])).concat(&star("a")));
        assert!(same(&factor_lang(&p("a^w b a^w"), &a).unwrap(), &expected));
        assert!(same(&factor_lang(&p("ab"), &a).unwrap(), &re(&["", "a", "b", "ab"])));
    }

    #[test]
    fn joint_suffixes_match_mirror_route() {
        let a = abc();
        for t in ["(ab)^w", "b a^w", "(a^w b)^w c", "a (b^w c)^w a^3", "((ab)^w c)^2"] {
            let t = p(t);
            assert_eq!(languages(&t, &a, 1000).unwrap().suffix, suffix_lang(&t, &a).unwrap(), "{t}");
        }
    }

    #[test]
    fn unfolding_agreement() {
        for t in ["(ab)^w", "a^w b a^w", "(a^w b)^w", "c(ab)^w c", "(a b^w)^w (ca)^w", "a^3 (b^w a)^2 c"] {
            check_against_unfolding(t);
        }
    }

    #[test]
    fn substitution_examples() {
        let ab = Alphabet::new("ab").unwrap();
        let m: BTreeMap<char, OmegaTerm> = [('b', p("ab"))].into();
        let d = substitution_factor_lang(&p("b^w"), &m, &ab, Which::Prefix).unwrap();
        assert_eq!(d, prefix_lang(&p("(ab)^w"), &ab).unwrap());
        let m: BTreeMap<char, OmegaTerm> = [('b', p("a"))].into();
        let d = substitution_factor_lang(&p("b"), &m, &ab, Which::Factor).unwrap();
        assert_eq!(d.enumerate(5), vec!["", "a"]);
        let m: BTreeMap<char, OmegaTerm> = [('b', p("a^w")), ('c', p("b"))].into();
        let d = substitution_factor_lang(&p("bc"), &m, &ab, Which::Suffix).unwrap();
        // suffixes of a^w b other than the empty word all end in b
        let a_star = Nfa::word(&ab, "a").unwrap().star();
        let expected = Nfa::epsilon(&ab).union(&a_star.concat(&Nfa::word(&ab, "b").unwrap()));
        assert!(d.equivalent(&expected.determinize(100).unwrap()));
        assert_eq!(d, suffix_lang(&p("a^w b"), &ab).unwrap());
    }

    #[test]
    fn substitution_errors() {
        let ab = Alphabet::new("ab").unwrap();
        let m: BTreeMap<char, OmegaTerm> = [('b', OmegaTerm::omega(OmegaTerm::Empty))].into();
        assert_eq!(substitution_factor_lang(&p("b"), &m, &ab, Which::Prefix), Err(FactorError::Erasing('b')));
        let m: BTreeMap<char, OmegaTerm> = [('b', p("a"))].into();
        assert_eq!(substitution_factor_lang(&p("bc"), &m, &ab, Which::Prefix), Err(FactorError::MissingImage('c')));
        let m: BTreeMap<char, OmegaTerm> = [('b', p("z"))].into();
        assert_eq!(substitution_factor_lang(&p("b"), &m, &ab, Which::Prefix), Err(FactorError::UnknownLetter('z')));
    }

    fn reg(t: &str) -> Vec<String> {
        regular_jclasses(&p(t)).unwrap().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn regular_jclass_examples() {
        assert_eq!(reg("ab"), vec!["1"]);
        assert_eq!(reg("a^w b a^w"), vec!["1", "a^w"]);
        assert_eq!(reg("(ab)^w (ba)^w c^w"), vec!["1", "(ab)^w", "c^w"]);
        assert_eq!(reg("(a^w b)^w"), vec!["1", "a^w", "a^w (ba^w)^w b"]);
        assert_eq!(reg("1^w a"), vec!["1"]);
    }

    #[test]
    fn power_of_large_exponent_is_capped() {
        let a = abc();
        assert!(matches!(languages(&p("a^100000000"), &a, 1000), Err(FactorError::Automaton(_))));
        let d = languages(&p("(a^w b)^4000000000"), &a, 1000).unwrap();
        assert_eq!(d.factor, languages(&p("(a^w b)^2"), &a, 1000).unwrap().factor);
    }

    #[test]
    fn report_bundles_everything() {
        let r = report(&p("(ab)^w c"), &abc()).unwrap();
        assert!(r.langs.prefix.is_prefix_closed());
        assert!(r.langs.suffix.is_subset_of(&r.langs.factor));
        assert_eq!(r.reg_jclasses.len(), 2);
    }
}
