//! Random ω-terms, identity-preserving rewrites and random aperiodic
//! monoids, for cross-validation and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::Dfa;
use crate::monoid::FiniteMonoid;
use crate::term::{Alphabet, OmegaTerm};

#[derive(Clone, Copy, Debug)]
pub struct TermShape {
    /// maximum ω-nesting
    pub max_depth: usize,
    /// rough bound on the number of leaves
    pub max_leaves: usize,
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape { max_depth: 3, max_leaves: 8 }
    }
}

pub fn random_term<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, shape: TermShape) -> OmegaTerm {
    let leaves = rng.gen_range(1..=shape.max_leaves.max(1));
    build(rng, alphabet, shape.max_depth, leaves)
}

fn build<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, depth: usize, leaves: usize) -> OmegaTerm {
    if leaves <= 1 {
        let c = *alphabet.letters().choose(rng).unwrap();
        return if depth > 0 && rng.gen_bool(0.3) { OmegaTerm::omega(OmegaTerm::Letter(c)) } else { OmegaTerm::Letter(c) };
    }
    match rng.gen_range(0..10) {
        0..=2 if depth > 0 => OmegaTerm::omega(build(rng, alphabet, depth - 1, leaves)),
        3 => OmegaTerm::power(build(rng, alphabet, depth, leaves), rng.gen_range(2..=3)),
        _ => {
            let left = rng.gen_range(1..leaves);
            OmegaTerm::concat(vec![build(rng, alphabet, depth, left), build(rng, alphabet, depth, leaves - left)])
        }
    }
}

/// A term equal to `t` in every aperiodic monoid, obtained by applying
/// random instances of the ω-identities at random positions.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, t: &OmegaTerm, steps: usize) -> OmegaTerm {
    let mut t = t.clone();
    for _ in 0..steps {
        let n = count_nodes(&t);
        let target = rng.gen_range(0..n);
        t = rewrite_at(rng, &t, &mut { target });
    }
    t
}

fn count_nodes(t: &OmegaTerm) -> usize {
    1 + match t {
        OmegaTerm::Empty | OmegaTerm::Letter(_) => 0,
        OmegaTerm::Concat(cs) => cs.iter().map(count_nodes).sum(),
        OmegaTerm::Power(b, _) | OmegaTerm::Omega(b) => count_nodes(b),
    }
}

fn rewrite_at<R: Rng + ?Sized>(rng: &mut R, t: &OmegaTerm, target: &mut usize) -> OmegaTerm {
    if *target == 0 {
        *target = usize::MAX;
        return rewrite_here(rng, t);
    }
    *target -= 1;
    match t {
        OmegaTerm::Empty | OmegaTerm::Letter(_) => t.clone(),
        OmegaTerm::Concat(cs) => OmegaTerm::concat(cs.iter().map(|c| rewrite_at(rng, c, target)).collect()),
        OmegaTerm::Power(b, e) => OmegaTerm::power(rewrite_at(rng, b, target), *e),
        OmegaTerm::Omega(b) => OmegaTerm::omega(rewrite_at(rng, b, target)),
    }
}

fn rewrite_here<R: Rng + ?Sized>(rng: &mut R, t: &OmegaTerm) -> OmegaTerm {
    use OmegaTerm::*;
    match t {
        Omega(x) => match rng.gen_range(0..6) {
            0 => omega(omega((**x).clone())),
            1 => OmegaTerm::concat(vec![t.clone(), t.clone()]),
            2 => OmegaTerm::concat(vec![(**x).clone(), t.clone()]),
            3 => OmegaTerm::concat(vec![t.clone(), (**x).clone()]),
            4 => omega(OmegaTerm::power((**x).clone(), rng.gen_range(2..=4))),
            _ => {
                // (uv)^w = u (vu)^w v
                let parts = x.factors();
                if parts.len() < 2 {
                    return t.clone();
                }
                let (u, v) = parts.split_at(rng.gen_range(1..parts.len()));
                let u = OmegaTerm::concat(u.to_vec());
                let v = OmegaTerm::concat(v.to_vec());
                OmegaTerm::concat(vec![u.clone(), omega(OmegaTerm::concat(vec![v.clone(), u])), v])
            }
        },
        Power(b, e) => OmegaTerm::concat(vec![(**b).clone(); *e as usize]),
        Concat(cs) if cs.len() >= 2 => {
            // regroup a run as a power when it repeats
            let i = rng.gen_range(0..cs.len() - 1);
            if cs[i] == cs[i + 1] {
                let mut out = cs[..i].to_vec();
                out.push(OmegaTerm::power(cs[i].clone(), 2));
                out.extend_from_slice(&cs[i + 2..]);
                OmegaTerm::concat(out)
            } else {
                t.clone()
            }
        }
        _ => t.clone(),
    }
}

fn omega(t: OmegaTerm) -> OmegaTerm {
    OmegaTerm::omega(t)
}

/// Minimal DFA with random transitions and accepting states.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, states: usize) -> Dfa {
    let mut text = format!("dfa {states} {alphabet}\n");
    for q in 0..states {
        text.push_str(&format!("state {q}"));
        if q == 0 {
            text.push_str(" initial");
        }
        if rng.gen_bool(0.5) {
            text.push_str(" accepting");
        }
        text.push('\n');
        for &c in alphabet.letters() {
            text.push_str(&format!("edge {q} {c} {}\n", rng.gen_range(0..states)));
        }
    }
    Dfa::parse_text(&text).expect("generated text is well formed").minimize()
}

/// Transition monoids of random minimal DFAs that are aperiodic, nontrivial
/// and have at most `max_size` elements. Each comes with the element of
/// every letter.
pub fn aperiodic_monoids<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, count: usize, max_size: usize) -> Vec<(FiniteMonoid, Vec<usize>)> {
    let mut out: Vec<(FiniteMonoid, Vec<usize>)> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 10_000 * count.max(1) {
        attempts += 1;
        let states = rng.gen_range(2..=5);
        let d = random_dfa(rng, alphabet, states);
        let Ok((m, gens)) = d.transition_monoid(max_size) else { continue };
        if m.size() > 1 && m.is_aperiodic() && !out.iter().any(|(o, g)| *o == m && *g == gens) {
            out.push((m, gens));
        }
    }
    out
}
