//! Canonical forms of ω-terms and the word problem.
//!
//! A normal form is a flat sequence of items, each either a letter or the
//! ω-power of a normal sequence. Normalization uses only identities valid in
//! every finite aperiodic monoid:
//!
//! * `(x^ω)^ω = x^ω` and `x^ω x^ω = x^ω`;
//! * `x x^ω = x^ω = x^ω x`;
//! * `(x^n)^ω = x^ω`;
//! * `(xy)^ω x = x (yx)^ω`, and its consequence `(uv)^ω = u (vu)^ω v`.
//!
//! Every ω-power is stored with a primitive base in its least rotation,
//! and `(uv)^ω = u (vu)^ω v` moves the rest of the rotation into the
//! surrounding context, so an ω-item does not depend on where it occurs.
//! A sequence is then reduced by merging equal neighbouring ω-items,
//! absorbing whole base copies on either side, and dropping an ω-item next
//! to a power whose base begins (or ends) with it.

use std::cmp::Ordering;
use std::fmt;

use crate::efclass::{KClassEngine, KClassId};
use crate::error::{EfError, RegwordError};
use crate::par::{self, Execution};
use crate::term::{Alphabet, OmegaTerm};

/// Unfoldings longer than this are refused by default.
pub const DEFAULT_UNFOLD_BOUND: usize = 1 << 20;

/// Depth up to which equalities are cross-checked against projections.
pub const DEFAULT_K_CHECK: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Item {
    Letter(char),
    Omega { rank: u32, base: Vec<Item> },
}

impl Item {
    fn omega(base: Vec<Item>) -> Item {
        let rank = 1 + base.iter().map(Item::rank).max().unwrap_or(0);
        Item::Omega { rank, base }
    }

    fn rank(&self) -> u32 {
        match self {
            Item::Letter(_) => 0,
            Item::Omega { rank, .. } => *rank,
        }
    }

    fn size(&self) -> usize {
        match self {
            Item::Letter(_) => 1,
            Item::Omega { base, .. } => 1 + seq_size(base),
        }
    }

    fn base(&self) -> Option<&[Item]> {
        match self {
            Item::Omega { base, .. } => Some(base),
            Item::Letter(_) => None,
        }
    }
}

/// Rank first, then letters before ω-powers, then contents.
impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Item::Letter(a), Item::Letter(b)) => a.cmp(b),
            (Item::Letter(_), Item::Omega { .. }) => Ordering::Less,
            (Item::Omega { .. }, Item::Letter(_)) => Ordering::Greater,
            (Item::Omega { rank: r1, base: b1 }, Item::Omega { rank: r2, base: b2 }) => r1.cmp(r2).then_with(|| b1.cmp(b2)),
        }
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn seq_size(s: &[Item]) -> usize {
    s.iter().map(Item::size).sum()
}

fn rotate(s: &[Item], o: usize) -> Vec<Item> {
    let mut r = s[o..].to_vec();
    r.extend_from_slice(&s[..o]);
    r
}

/// Smallest p dividing |s| with s = (s[..p])^(|s|/p).
fn primitive_period(s: &[Item]) -> usize {
    let n = s.len();
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    let p = n - fail[n];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

fn normalize_term(t: &OmegaTerm) -> Vec<Item> {
    match t {
        OmegaTerm::Empty => Vec::new(),
        OmegaTerm::Letter(c) => vec![Item::Letter(*c)],
        OmegaTerm::Concat(cs) => normalize_seq(cs.iter().flat_map(normalize_term).collect()),
        OmegaTerm::Power(b, n) => {
            let nb = normalize_term(b);
            let mut v = Vec::with_capacity(nb.len() * *n as usize);
            for _ in 0..*n {
                v.extend_from_slice(&nb);
            }
            normalize_seq(v)
        }
        OmegaTerm::Omega(b) => omega_of(normalize_term(b)),
    }
}

/// ω-power of a normal sequence, as a normal sequence.
fn omega_of(base: Vec<Item>) -> Vec<Item> {
    if base.is_empty() {
        return base;
    }
    if base.len() == 1 && base[0].rank() > 0 {
        return base;
    }
    let size = seq_size(&base);
    for i in 1..base.len() {
        let reduced = normalize_seq(rotate(&base, i));
        if seq_size(&reduced) < size {
            // (uv)^ω = u (vu)^ω v with u = base[..i], v = base[i..]
            return around(&base[..i], omega_of(reduced), &base[i..]);
        }
    }
    let mut root = base;
    root.truncate(primitive_period(&root));
    let least = (0..root.len()).min_by(|&x, &y| rotate(&root, x).cmp(&rotate(&root, y))).unwrap();
    if least == 0 {
        return vec![Item::omega(root)];
    }
    around(&root[..least], vec![Item::omega(rotate(&root, least))], &root[least..])
}

fn around(left: &[Item], middle: Vec<Item>, right: &[Item]) -> Vec<Item> {
    let mut out = left.to_vec();
    out.extend(middle);
    out.extend_from_slice(right);
    normalize_seq(out)
}

/// Length of the longest prefix `s` of `rest` absorbed by the ω-item `x`
/// (`x s = x`) through one of: `x` itself, a whole copy of its base, or,
/// recursively, its last base item. Zero when none applies.
fn absorbed_right(x: &Item, rest: &[Item]) -> usize {
    let Some(base) = x.base() else { return 0 };
    if rest.first() == Some(x) {
        return 1;
    }
    if rest.starts_with(base) {
        return base.len();
    }
    absorbed_right(&base[base.len() - 1], rest)
}

/// Mirror of [`absorbed_right`]: a suffix `s` of `before` with `s x = x`.
fn absorbed_left(x: &Item, before: &[Item]) -> usize {
    let Some(base) = x.base() else { return 0 };
    if before.last() == Some(x) {
        return 1;
    }
    if before.ends_with(base) {
        return base.len();
    }
    absorbed_left(&base[0], before)
}

/// Whether `e t = e`, consuming `t` from the left.
fn absorbs_all_right(e: &Item, mut t: &[Item]) -> bool {
    while !t.is_empty() {
        let n = absorbed_right(e, t);
        if n == 0 {
            return false;
        }
        t = &t[n..];
    }
    true
}

/// Whether `t e = e`, consuming `t` from the right.
fn absorbs_all_left(e: &Item, mut t: &[Item]) -> bool {
    while !t.is_empty() {
        let n = absorbed_left(e, t);
        if n == 0 {
            return false;
        }
        t = &t[..t.len() - n];
    }
    true
}

/// A partial base copy `s` between the ω-item at `i` and an idempotent
/// neighbour that absorbs the rest of the base: `e s (t s)^ω = e (t s)^ω`
/// when `e t = e`. Returns the length of `s` to drop on the left.
fn partial_left(v: &[Item], i: usize, base: &[Item]) -> usize {
    let n = base.len();
    (1..n.min(i))
        .find(|&l| v[..i].ends_with(&base[n - l..]) && v[i - l - 1].rank() > 0 && absorbs_all_right(&v[i - l - 1], &base[..n - l]))
        .unwrap_or(0)
}

/// Mirror of [`partial_left`]: `(s t)^ω s e = (s t)^ω e` when `t e = e`.
fn partial_right(v: &[Item], i: usize, base: &[Item]) -> usize {
    let n = base.len();
    let rest = &v[i + 1..];
    (1..n.min(rest.len()))
        .find(|&l| rest.starts_with(&base[..l]) && rest[l].rank() > 0 && absorbs_all_left(&rest[l], &base[l..]))
        .unwrap_or(0)
}

/// A proper base prefix `t` ending in an idempotent `e` with `e t = e`
/// satisfies `t B^ω = B^ω`. Returns the length of such a `t` before `i`.
fn idempotent_prefix(v: &[Item], i: usize, base: &[Item]) -> usize {
    (1..base.len().min(i + 1))
        .find(|&l| v[..i].ends_with(&base[..l]) && base[l - 1].rank() > 0 && absorbs_all_right(&base[l - 1], &base[..l]))
        .unwrap_or(0)
}

/// Mirror of [`idempotent_prefix`]: `B^ω s = B^ω` for a proper base suffix
/// `s` starting with an idempotent `e` with `s e = e`.
fn idempotent_suffix(v: &[Item], i: usize, base: &[Item]) -> usize {
    let n = base.len();
    (1..n.min(v.len() - i))
        .find(|&l| v[i + 1..].starts_with(&base[n - l..]) && base[n - l].rank() > 0 && absorbs_all_left(&base[n - l], &base[n - l..]))
        .unwrap_or(0)
}

fn normalize_seq(mut v: Vec<Item>) -> Vec<Item> {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < v.len() {
            if v[i].rank() == 0 {
                i += 1;
                continue;
            }
            let n = absorbed_left(&v[i], &v[..i]);
            if n > 0 {
                v.drain(i - n..i);
                i -= n;
                changed = true;
                continue;
            }
            let n = absorbed_right(&v[i], &v[i + 1..]);
            if n > 0 {
                v.drain(i + 1..=i + n);
                changed = true;
                continue;
            }
            let base = v[i].base().unwrap().to_vec();
            let n = partial_left(&v, i, &base);
            if n > 0 {
                v.drain(i - n..i);
                i -= n;
                changed = true;
                continue;
            }
            let n = partial_right(&v, i, &base);
            if n > 0 {
                v.drain(i + 1..=i + n);
                changed = true;
                continue;
            }
            let n = idempotent_prefix(&v, i, &base);
            if n > 0 {
                v.drain(i - n..i);
                i -= n;
                changed = true;
                continue;
            }
            let n = idempotent_suffix(&v, i, &base);
            if n > 0 {
                v.drain(i + 1..=i + n);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return v;
        }
    }
}

fn items_to_term(v: &[Item]) -> OmegaTerm {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut run = 1;
        while i + run < v.len() && v[i + run] == v[i] {
            run += 1;
        }
        let t = match &v[i] {
            Item::Letter(c) => OmegaTerm::Letter(*c),
            Item::Omega { base, .. } => OmegaTerm::omega(items_to_term(base)),
        };
        parts.push(OmegaTerm::power(t, run as u32));
        i += run;
    }
    OmegaTerm::concat(parts)
}

/// Normal form of an ω-term. Two terms denote the same element of the free
/// pro-aperiodic monoid when their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalTerm {
    items: Vec<Item>,
}

impl CanonicalTerm {
    /// The normal form as a term. Canonicalizing it gives `self` back.
    pub fn to_term(&self) -> OmegaTerm {
        items_to_term(&self.items)
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Maximum ω-nesting depth.
    pub fn rank(&self) -> u32 {
        self.items.iter().map(Item::rank).max().unwrap_or(0)
    }

    /// The finite word, when the normal form has no ω-power.
    pub fn finite_word(&self) -> Option<String> {
        self.items
            .iter()
            .map(|it| match it {
                Item::Letter(c) => Some(*c),
                Item::Omega { .. } => None,
            })
            .collect()
    }

    /// For a single ω-power of a finite word, that word.
    pub fn omega_of_finite_word(&self) -> Option<String> {
        match self.items.as_slice() {
            [Item::Omega { rank: 1, base }] => Some(base.iter().map(|it| if let Item::Letter(c) = it { *c } else { unreachable!() }).collect()),
            _ => None,
        }
    }
}

impl fmt::Display for CanonicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

pub fn canonicalize(t: &OmegaTerm) -> CanonicalTerm {
    CanonicalTerm { items: normalize_term(t) }
}

/// Word problem by comparison of canonical forms.
pub fn equal(t1: &OmegaTerm, t2: &OmegaTerm) -> bool {
    canonicalize(t1) == canonicalize(t2)
}

/// [`equal`], and when the answer is `true`, a check that π_k agrees for
/// every k ≤ `k_check`. A disagreement means the canonicalizer identified
/// two distinct elements and is reported as an error.
pub fn equal_checked(engine: &mut KClassEngine, t1: &OmegaTerm, t2: &OmegaTerm, k_check: u32) -> Result<bool, RegwordError> {
    if !equal(t1, t2) {
        return Ok(false);
    }
    if let Some(sep) = separate(engine, t1, t2, k_check)? {
        return Err(RegwordError::Inconsistent { depth: sep.depth, left: t1.to_string(), right: t2.to_string() });
    }
    Ok(true)
}

/// Least depth at which the projections of two terms differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub depth: u32,
    pub left: KClassId,
    pub right: KClassId,
    pub left_representative: String,
    pub right_representative: String,
}

pub fn separate(engine: &mut KClassEngine, t1: &OmegaTerm, t2: &OmegaTerm, kmax: u32) -> Result<Option<Separation>, EfError> {
    for k in 0..=kmax {
        let l = engine.project(t1, k)?;
        let r = engine.project(t2, k)?;
        if l != r {
            return Ok(Some(Separation {
                depth: k,
                left: l,
                right: r,
                left_representative: engine.representative(l),
                right_representative: engine.representative(r),
            }));
        }
    }
    Ok(None)
}

/// The finite word obtained by replacing every ω by the exponent `n`.
pub fn unfold(t: &OmegaTerm, n: u32, bound: usize) -> Result<String, RegwordError> {
    let len = unfolded_len(t, n as u128);
    if len > bound as u128 {
        return Err(RegwordError::LengthBound { len: len.min(usize::MAX as u128) as usize, bound });
    }
    let mut out = String::with_capacity(len as usize);
    write_unfolded(t, n, &mut out);
    Ok(out)
}

fn unfolded_len(t: &OmegaTerm, n: u128) -> u128 {
    match t {
        OmegaTerm::Empty => 0,
        OmegaTerm::Letter(_) => 1,
        OmegaTerm::Concat(cs) => cs.iter().map(|c| unfolded_len(c, n)).fold(0u128, u128::saturating_add),
        OmegaTerm::Power(b, e) => unfolded_len(b, n).saturating_mul(*e as u128),
        OmegaTerm::Omega(b) => unfolded_len(b, n).saturating_mul(n),
    }
}

fn write_unfolded(t: &OmegaTerm, n: u32, out: &mut String) {
    match t {
        OmegaTerm::Empty => {}
        OmegaTerm::Letter(c) => out.push(*c),
        OmegaTerm::Concat(cs) => cs.iter().for_each(|c| write_unfolded(c, n, out)),
        OmegaTerm::Power(b, e) => (0..*e).for_each(|_| write_unfolded(b, n, out)),
        OmegaTerm::Omega(b) => (0..n).for_each(|_| write_unfolded(b, n, out)),
    }
}

/// Verdict on one pair in a batch run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub equal: bool,
    /// separating depth when the terms are distinct and a witness exists
    pub separated_at: Option<u32>,
}

/// Decides every pair, cross-checking equal verdicts up to `k_check` and
/// searching a separating depth ≤ `k_check` for distinct ones. Each worker
/// owns its own class engine.
pub fn decide_batch(alphabet: &Alphabet, pairs: &[(OmegaTerm, OmegaTerm)], k_check: u32, exec: Execution) -> Vec<Result<PairVerdict, RegwordError>> {
    par::map_init(
        pairs,
        exec,
        || KClassEngine::new(alphabet.clone()),
        |engine, (t1, t2)| {
            if equal_checked(engine, t1, t2, k_check)? {
                Ok(PairVerdict { equal: true, separated_at: None })
            } else {
                let sep = separate(engine, t1, t2, k_check)?;
                Ok(PairVerdict { equal: false, separated_at: sep.map(|s| s.depth) })
            }
        },
    )
}
