//! Acceptance criteria 1–9. Each test writes one PASS/FAIL line to stderr
//! (bypassing the output capture) and then asserts.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use omega_core::automata::{Dfa, Nfa, DEFAULT_STATE_CAP};
use omega_core::efclass::{agreement_sweep, ef_game_oracle, omega_exponent, oracle_partition, KClassEngine};
use omega_core::factors::{self, languages, regular_jclasses, substitution_factor_lang, Which};
use omega_core::gen::{aperiodic_monoids, perturb, random_term, TermShape};
use omega_core::regword::{self, canonicalize, equal, separate, unfold, DEFAULT_UNFOLD_BOUND};
use omega_core::{Alphabet, Execution, OmegaTerm, RegwordError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> OmegaTerm {
    OmegaTerm::parse_any(s).unwrap()
}

fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

/// Prints the verdict line, then fails the test when any check failed or
/// the runtime target was missed.
fn verdict(n: u32, title: &str, started: Instant, limit: Duration, failures: &[String]) {
    let elapsed = started.elapsed();
    let ok = failures.is_empty() && elapsed <= limit;
    let mut line = format!("criterion {n} [{title}]: {} in {:.2?} (limit {:?})", if ok { "PASS" } else { "FAIL" }, elapsed, limit);
    if !failures.is_empty() {
        line.push_str(&format!(", {} failure(s), first: {}", failures.len(), failures[0]));
    }
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(ok, "{line}\n{}", failures.join("\n"));
}

#[test]
fn criterion_1_ef_agreement() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 0..=3 {
        let r = agreement_sweep(&ab(), 6, k, Execution::Parallel).unwrap();
        assert_eq!(r.words, 127);
        for (u, v, same) in r.mismatches {
            failures.push(format!("k={k}: {u:?} vs {v:?}, engine says equal = {same}"));
        }
    }
    verdict(1, "EF agreement, |w| ≤ 6, |A| = 2, k ≤ 3", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_2_one_letter_collapse() {
    let start = Instant::now();
    let mut e = KClassEngine::new(Alphabet::new("a").unwrap());
    let mut failures = Vec::new();
    for k in 1..=4u32 {
        let threshold = (1usize << k) - 1;
        let first = e.classify(&"a".repeat(threshold), k).unwrap();
        for m in threshold..=40 {
            if e.classify(&"a".repeat(m), k).unwrap() != first {
                failures.push(format!("k={k}: a^{m} not in the class of a^{threshold}"));
            }
        }
        if e.classify(&"a".repeat(threshold - 1), k).unwrap() == first {
            failures.push(format!("k={k}: a^{} and a^{threshold} collapse", threshold - 1));
        }
    }
    // the oracle agrees on the boundary for k ≤ 3
    for k in 1..=3u32 {
        let t = (1usize << k) - 1;
        if !ef_game_oracle(&"a".repeat(t), &"a".repeat(t + 5), k, 64).unwrap() || ef_game_oracle(&"a".repeat(t - 1), &"a".repeat(t), k, 64).unwrap() {
            failures.push(format!("k={k}: oracle disagrees at the threshold"));
        }
    }
    verdict(2, "one-letter collapse at 2^k − 1", start, Duration::from_secs(10), &failures);
}

#[test]
fn criterion_3_finite_basis_fact() {
    let start = Instant::now();
    let mut e = KClassEngine::new(ab());
    let mut failures = Vec::new();
    for k in 1..=3u32 {
        let n = 1usize << k;
        let (u, v) = (format!("a{}", "b".repeat(n)), format!("a{}", "b".repeat(n - 1)));
        if e.classify(&u, k).unwrap() != e.classify(&v, k).unwrap() {
            failures.push(format!("k={k}: engine separates {u} and {v}"));
        }
        if !ef_game_oracle(&u, &v, k, 64).unwrap() {
            failures.push(format!("k={k}: oracle separates {u} and {v}"));
        }
    }
    verdict(3, "ab^(2^k) ≡_k ab^(2^k − 1)", start, Duration::from_secs(10), &failures);
}

#[test]
fn criterion_4_quotient_aperiodicity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (letters, kmax) in [("a", 3u32), ("ab", 2)] {
        let alphabet = Alphabet::new(letters).unwrap();
        let mut e = KClassEngine::new(alphabet.clone());
        for k in 0..=kmax {
            let q = e.quotient_monoid(k).unwrap();
            let m = &q.monoid;
            let n = omega_exponent(k);
            for x in 0..m.size() {
                if m.pow(x, n) != m.pow(x, n + 1) {
                    failures.push(format!("A={letters} k={k}: element {} fails w^{n} = w^{}", m.name(x), n + 1));
                }
            }
            if !m.is_aperiodic() {
                failures.push(format!("A={letters} k={k}: quotient not aperiodic"));
            }
            // elements with a representative of length ≤ len against the
            // oracle partition of the words of length ≤ len
            if k <= 2 {
                let len = if letters == "a" { 8 } else { 5 };
                let words = alphabet.words_up_to(len);
                let blocks: BTreeSet<usize> = oracle_partition(&words, k, 64, Execution::Parallel).unwrap().into_iter().collect();
                let reached = q.elements.iter().filter(|&&c| e.representative(c).len() <= len).count();
                if blocks.len() != reached {
                    failures.push(format!("A={letters} k={k}: {reached} elements within length {len}, oracle finds {} classes", blocks.len()));
                }
            }
        }
        if letters == "a" {
            let sizes: Vec<usize> = (0..=2).map(|k| e.quotient_monoid(k).unwrap().monoid.size()).collect();
            if sizes != [1, 2, 4] {
                failures.push(format!("one-letter quotient sizes {sizes:?}, expected [1, 2, 4]"));
            }
        }
    }
    verdict(4, "quotient aperiodicity and sizes", start, Duration::from_secs(120), &failures);
}

fn identity_instances() -> Vec<(OmegaTerm, OmegaTerm)> {
    let bases: Vec<OmegaTerm> = ["a", "b", "ab", "aba", "(ab)^w", "a^w b"].iter().map(|s| p(s)).collect();
    let w = |x: &OmegaTerm| OmegaTerm::omega(x.clone());
    let cat = |v: Vec<OmegaTerm>| OmegaTerm::concat(v);
    let mut out = Vec::new();
    for x in &bases {
        out.push((w(&w(x)), w(x)));
        out.push((cat(vec![w(x), w(x)]), w(x)));
        out.push((cat(vec![x.clone(), w(x)]), w(x)));
        out.push((cat(vec![w(x), x.clone()]), w(x)));
        for n in 1..=4 {
            out.push((w(&OmegaTerm::power(x.clone(), n)), w(x)));
        }
        for y in &bases {
            out.push((cat(vec![w(&cat(vec![x.clone(), y.clone()])), x.clone()]), cat(vec![x.clone(), w(&cat(vec![y.clone(), x.clone()]))])));
        }
    }
    out
}

#[test]
fn criterion_5_word_problem_corpus() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut e = KClassEngine::new(ab());
    let instances = identity_instances();
    for (l, r) in &instances {
        match regword::equal_checked(&mut e, l, r, 4) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("identity judged DISTINCT: {l} = {r} ({} vs {})", canonicalize(l), canonicalize(r))),
            Err(err) => failures.push(format!("{l} = {r}: {err}")),
        }
    }
    let distinct = [
        ("a^w b a^w", "a^w b a^w b a^w"),
        ("(ab)^w", "(ba)^w"),
        ("a^w", "a^w b^w"),
        ("a", "aa"),
        ("a^w", "a^w b"),
        ("a^w b", "b a^w"),
        ("a^w b^w", "b^w a^w"),
        ("(a^w b)^w", "(b a^w)^w"),
        ("(ab)^w", "(ab)^w b"),
        ("(a^w b)^w", "(a^w b b)^w"),
        ("(ab)^w (ba)^w", "(ab)^w b (ab)^w"),
        ("a^w b a^w", "a^w b^w a^w"),
    ];
    for (l, r) in distinct {
        let (l, r) = (p(l), p(r));
        if equal(&l, &r) {
            failures.push(format!("distinct pair judged EQUAL: {l} vs {r}"));
        } else if separate(&mut e, &l, &r, 4).unwrap().is_none() {
            failures.push(format!("no separating k ≤ 4 for {l} vs {r}"));
        }
    }
    verdict(5, "identity corpus EQUAL, distinct list separated at k ≤ 4", start, Duration::from_secs(120), &failures);
}

#[test]
fn criterion_6_cross_validation() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let abc = Alphabet::new("abc").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c);
    let bank = aperiodic_monoids(&mut rng, &abc, 24, 50);
    if bank.len() < 20 {
        failures.push(format!("only {} aperiodic monoids in the bank", bank.len()));
    }
    let mut pairs = Vec::new();
    for i in 0..1200 {
        let letters = if i % 3 == 0 { "ab" } else { "abc" };
        let a = Alphabet::new(letters).unwrap();
        let shape = TermShape { max_depth: 3, max_leaves: 8 };
        let t = random_term(&mut rng, &a, shape);
        let u = match i % 4 {
            // independent terms, mostly distinct
            0 => random_term(&mut rng, &a, shape),
            _ => {
                let steps = rng.gen_range(1..=6);
                perturb(&mut rng, &t, steps)
            }
        };
        pairs.push((t, u));
    }
    let verdicts = regword::decide_batch(&abc, &pairs, 4, Execution::Parallel);
    let (mut equal_pairs, mut unseparated) = (0, 0);
    for ((t, u), v) in pairs.iter().zip(verdicts) {
        match v {
            Err(e @ RegwordError::Inconsistent { .. }) => failures.push(e.to_string()),
            Err(e) => failures.push(format!("{t} vs {u}: {e}")),
            Ok(v) if v.equal => {
                equal_pairs += 1;
                for (m, gens) in &bank {
                    let h: BTreeMap<char, usize> = abc.letters().iter().copied().zip(gens.iter().copied()).collect();
                    if m.evaluate(t, &h).unwrap() != m.evaluate(u, &h).unwrap() {
                        failures.push(format!("{t} and {u} judged equal but differ in a monoid of size {}", m.size()));
                    }
                }
            }
            Ok(v) => unseparated += usize::from(v.separated_at.is_none()),
        }
    }
    if equal_pairs < 500 {
        failures.push(format!("only {equal_pairs} equal pairs exercised"));
    }
    let _ = writeln!(
        std::io::stderr(),
        "criterion 6 detail: {} pairs, {equal_pairs} equal, {unseparated} distinct without a witness at k ≤ 4, {} monoids",
        pairs.len(),
        bank.len()
    );
    verdict(6, "soundness over projections and aperiodic monoids", start, Duration::from_secs(600), &failures);
}

fn factor_corpus() -> Vec<OmegaTerm> {
    let mut corpus: Vec<OmegaTerm> = [
        "1", "a", "ab", "aba", "a^w", "a^w b", "b a^w", "(ab)^w", "(ba)^w a", "a^w b a^w", "a^w b^w", "(a^w b)^w", "(a b^w)^w a",
        "(ab)^w (ba)^w c^w", "(a^w b^w)^w", "c(ab)^w c", "(aab)^w b", "((ab)^w c)^w", "a^3 b^2", "(a^w b)^2",
    ]
    .iter()
    .map(|s| p(s))
    .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a);
    while corpus.len() < 50 {
        let letters = if corpus.len().is_multiple_of(2) { "ab" } else { "abc" };
        corpus.push(random_term(&mut rng, &Alphabet::new(letters).unwrap(), TermShape { max_depth: 2, max_leaves: 6 }));
    }
    corpus
}

fn is_factor_closed(d: &Dfa) -> bool {
    d.is_prefix_closed() && d.is_suffix_closed()
}

/// Prefixes, suffixes and factors of length ≤ `len` of a finite word.
fn word_sets(w: &str, len: usize) -> [BTreeSet<String>; 3] {
    let c: Vec<char> = w.chars().collect();
    let n = c.len();
    let s = |i: usize, j: usize| c[i..j].iter().collect::<String>();
    let pre = (0..=len.min(n)).map(|l| s(0, l)).collect();
    let suf = (0..=len.min(n)).map(|l| s(n - l, n)).collect();
    let fac = (0..n).flat_map(|i| (i..=(i + len).min(n)).map(move |j| (i, j))).map(|(i, j)| s(i, j)).chain([String::new()]).collect();
    [pre, suf, fac]
}

#[test]
fn criterion_7_factor_languages() {
    let start = Instant::now();
    let mut failures = Vec::new();
    const L: usize = 10;
    for t in factor_corpus() {
        let alphabet = Alphabet::covering([&t]);
        let langs = languages(&t, &alphabet, DEFAULT_STATE_CAP).unwrap();
        if !langs.prefix.is_prefix_closed() || !langs.suffix.is_suffix_closed() || !is_factor_closed(&langs.factor) {
            failures.push(format!("{t}: closure property fails"));
        }
        if !langs.prefix.is_subset_of(&langs.factor) || !langs.suffix.is_subset_of(&langs.factor) {
            failures.push(format!("{t}: P or S not contained in F"));
        }
        if t.omega_depth() > 2 {
            continue;
        }
        let oracle: Vec<[BTreeSet<String>; 3]> =
            (L + 1..=L + 3).map(|n| word_sets(&unfold(&t, n as u32, DEFAULT_UNFOLD_BOUND).unwrap(), L)).collect();
        if oracle.windows(2).any(|w| w[0] != w[1]) {
            failures.push(format!("{t}: unfolding sets did not stabilize"));
            continue;
        }
        for (i, which) in [Which::Prefix, Which::Suffix, Which::Factor].into_iter().enumerate() {
            let got: BTreeSet<String> = langs.get(which).enumerate(L).into_iter().collect();
            if got != oracle[0][i] {
                failures.push(format!("{t}: {which} language differs from the unfolding oracle"));
            }
        }
    }
    let a = ab();
    let abab = Nfa::word(&a, "ab").unwrap().star();
    let expected = abab.concat(&Nfa::epsilon(&a).union(&Nfa::word(&a, "a").unwrap())).to_min_dfa(DEFAULT_STATE_CAP).unwrap();
    if !factors::prefix_lang(&p("(ab)^w"), &a).unwrap().equivalent(&expected) {
        failures.push("P((ab)^w) is not (ab)*(1 + a)".into());
    }
    verdict(7, "factor-language closure, unfolding oracle, P((ab)^w)", start, Duration::from_secs(300), &failures);
}

#[test]
fn criterion_8_regular_jclasses() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (t, expected) in [("ab", vec!["1"]), ("a^w b a^w", vec!["1", "a^w"]), ("(ab)^w (ba)^w c^w", vec!["1", "(ab)^w", "c^w"])] {
        let got = regular_jclasses(&p(t)).unwrap();
        let names: Vec<String> = got.iter().map(|e| e.term.to_string()).collect();
        if names != expected {
            failures.push(format!("Reg({t}) = {names:?}, expected {expected:?}"));
        }
        if got.iter().any(|e| e.unverified) {
            failures.push(format!("Reg({t}) has UNVERIFIED entries"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x8b);
    let mut terms = factor_corpus();
    for _ in 0..150 {
        terms.push(random_term(&mut rng, &Alphabet::new("abc").unwrap(), TermShape::default()));
    }
    for t in &terms {
        let n = regular_jclasses(t).unwrap().len();
        if n > 1 + t.omega_nodes() {
            failures.push(format!("|Reg({t})| = {n} exceeds 1 + {}", t.omega_nodes()));
        }
    }
    verdict(8, "regular J-class enumeration", start, Duration::from_secs(60), &failures);
}

#[test]
fn criterion_9_substitution_agreement() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9c);
    let source = ab();
    let mut tested = 0;
    while tested < 120 {
        let target = Alphabet::new(if tested % 2 == 0 { "ab" } else { "abc" }).unwrap();
        let v = random_term(&mut rng, &source, TermShape { max_depth: 2, max_leaves: 5 });
        let map: BTreeMap<char, OmegaTerm> = source
            .letters()
            .iter()
            .map(|&b| {
                // finite images half of the time, so both parts of the formula run
                let image = if rng.gen_bool(0.5) {
                    let len = rng.gen_range(1..=3);
                    OmegaTerm::word(&(0..len).map(|_| target.letter(rng.gen_range(0..target.len()))).collect::<String>())
                } else {
                    random_term(&mut rng, &target, TermShape { max_depth: 1, max_leaves: 3 })
                };
                (b, image)
            })
            .collect();
        if map.values().any(|t| t.content().is_empty()) {
            continue;
        }
        tested += 1;
        let direct = languages(&v.substitute(&map), &target, DEFAULT_STATE_CAP).unwrap();
        for which in [Which::Prefix, Which::Suffix, Which::Factor] {
            let formula = substitution_factor_lang(&v, &map, &target, which).unwrap();
            if !formula.equivalent(direct.get(which)) {
                failures.push(format!("{which} of {v} under {map:?} differs from the direct recursion"));
            }
        }
    }
    verdict(9, "substitution formulas agree with the direct recursion", start, Duration::from_secs(300), &failures);
}
