//! Finite automata over an [`Alphabet`].
//!
//! [`Nfa`] carries the closure constructions (with ε-moves); [`Dfa`] is
//! always complete. [`Dfa::minimize`] returns the minimal automaton with a
//! canonical numbering: live states in breadth-first order from the initial
//! state (letters in alphabet order), then the sink if there is one. Equal
//! languages therefore give structurally equal minimal automata.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::AutomatonError;
use crate::monoid::FiniteMonoid;
use crate::term::Alphabet;

pub const DEFAULT_STATE_CAP: usize = 100_000;
pub const DEFAULT_MONOID_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    /// outgoing edges; `None` labels an ε-move
    edges: Vec<Vec<(Option<u8>, u32)>>,
    initial: Vec<u32>,
    accepting: Vec<bool>,
}

impl Nfa {
    fn with_states(alphabet: &Alphabet, n: usize) -> Self {
        Nfa { alphabet: alphabet.clone(), edges: vec![Vec::new(); n], initial: Vec::new(), accepting: vec![false; n] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn empty_language(alphabet: &Alphabet) -> Self {
        let mut n = Self::with_states(alphabet, 1);
        n.initial.push(0);
        n
    }

    /// {ε}
    pub fn epsilon(alphabet: &Alphabet) -> Self {
        Self::from_words(alphabet, &[""]).unwrap()
    }

    fn encode(&self, w: &str) -> Result<Vec<u8>, AutomatonError> {
        w.chars().map(|c| self.alphabet.index_of(c).map(|i| i as u8).ok_or(AutomatonError::UnknownLetter(c))).collect()
    }

    /// Finite language, as a trie.
    pub fn from_words<S: AsRef<str>>(alphabet: &Alphabet, words: &[S]) -> Result<Self, AutomatonError> {
        let mut n = Self::with_states(alphabet, 1);
        n.initial.push(0);
        let mut children: HashMap<(u32, u8), u32> = HashMap::new();
        for w in words {
            let mut q = 0u32;
            for a in n.encode(w.as_ref())? {
                q = match children.get(&(q, a)) {
                    Some(&next) => next,
                    None => {
                        let next = n.add_state();
                        n.edges[q as usize].push((Some(a), next));
                        children.insert((q, a), next);
                        next
                    }
                };
            }
            n.accepting[q as usize] = true;
        }
        Ok(n)
    }

    /// Path automaton spelling `w`; states 0..=|w|.
    fn path(alphabet: &Alphabet, w: &str) -> Result<Self, AutomatonError> {
        let mut n = Self::with_states(alphabet, 1);
        let letters = n.encode(w)?;
        for (i, &a) in letters.iter().enumerate() {
            n.add_state();
            n.edges[i].push((Some(a), i as u32 + 1));
        }
        Ok(n)
    }

    pub fn word(alphabet: &Alphabet, w: &str) -> Result<Self, AutomatonError> {
        let mut n = Self::path(alphabet, w)?;
        n.initial.push(0);
        let last = n.state_count() - 1;
        n.accepting[last] = true;
        Ok(n)
    }

    /// All prefixes of `w`.
    pub fn prefixes(alphabet: &Alphabet, w: &str) -> Result<Self, AutomatonError> {
        let mut n = Self::path(alphabet, w)?;
        n.initial.push(0);
        n.accepting.iter_mut().for_each(|a| *a = true);
        Ok(n)
    }

    /// All suffixes of `w`.
    pub fn suffixes(alphabet: &Alphabet, w: &str) -> Result<Self, AutomatonError> {
        let mut n = Self::path(alphabet, w)?;
        n.initial = (0..n.state_count() as u32).collect();
        let last = n.state_count() - 1;
        n.accepting[last] = true;
        Ok(n)
    }

    /// All factors of `w`.
    pub fn factors(alphabet: &Alphabet, w: &str) -> Result<Self, AutomatonError> {
        let mut n = Self::path(alphabet, w)?;
        n.initial = (0..n.state_count() as u32).collect();
        n.accepting.iter_mut().for_each(|a| *a = true);
        Ok(n)
    }

    fn add_state(&mut self) -> u32 {
        self.edges.push(Vec::new());
        self.accepting.push(false);
        self.edges.len() as u32 - 1
    }

    /// Appends `other`'s states, returning the offset applied to them.
    fn absorb(&mut self, other: &Nfa) -> u32 {
        assert_eq!(self.alphabet, other.alphabet, "automata over different alphabets");
        let off = self.state_count() as u32;
        for e in &other.edges {
            self.edges.push(e.iter().map(|&(a, q)| (a, q + off)).collect());
        }
        self.accepting.extend_from_slice(&other.accepting);
        off
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let off = n.absorb(other);
        n.initial.extend(other.initial.iter().map(|q| q + off));
        n
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let off = n.absorb(other);
        for q in 0..self.state_count() {
            if self.accepting[q] {
                n.accepting[q] = false;
                for &i in &other.initial {
                    n.edges[q].push((None, i + off));
                }
            }
        }
        n
    }

    pub fn star(&self) -> Nfa {
        let mut n = self.clone();
        let hub = n.add_state();
        n.accepting[hub as usize] = true;
        for &i in &self.initial {
            n.edges[hub as usize].push((None, i));
        }
        for q in 0..self.state_count() {
            if self.accepting[q] {
                n.edges[q].push((None, hub));
            }
        }
        n.initial = vec![hub];
        n
    }

    pub fn reverse(&self) -> Nfa {
        let mut n = Self::with_states(&self.alphabet, self.state_count());
        for (p, es) in self.edges.iter().enumerate() {
            for &(a, q) in es {
                n.edges[q as usize].push((a, p as u32));
            }
        }
        n.initial = (0..self.state_count() as u32).filter(|&q| self.accepting[q as usize]).collect();
        for &i in &self.initial {
            n.accepting[i as usize] = true;
        }
        n
    }

    fn closure(&self, states: impl IntoIterator<Item = u32>) -> BTreeSet<u32> {
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut stack: Vec<u32> = states.into_iter().collect();
        while let Some(q) = stack.pop() {
            if seen.insert(q) {
                for &(a, r) in &self.edges[q as usize] {
                    if a.is_none() && !seen.contains(&r) {
                        stack.push(r);
                    }
                }
            }
        }
        seen
    }

    fn step(&self, states: &BTreeSet<u32>, a: u8) -> BTreeSet<u32> {
        let next = states.iter().flat_map(|&q| self.edges[q as usize].iter().filter(move |e| e.0 == Some(a)).map(|e| e.1));
        self.closure(next.collect::<Vec<_>>())
    }

    /// a⁻¹L = { u : au ∈ L }
    pub fn left_quotient(&self, letter: char) -> Nfa {
        let mut n = self.clone();
        n.initial = match self.alphabet.index_of(letter) {
            Some(a) => self.step(&self.closure(self.initial.iter().copied()), a as u8).into_iter().collect(),
            None => Vec::new(),
        };
        n
    }

    /// La⁻¹ = { u : ua ∈ L }
    pub fn right_quotient(&self, letter: char) -> Nfa {
        let mut n = self.clone();
        let Some(a) = self.alphabet.index_of(letter) else {
            n.accepting.iter_mut().for_each(|x| *x = false);
            return n;
        };
        for q in 0..self.state_count() {
            let after = self.step(&self.closure([q as u32]), a as u8);
            n.accepting[q] = after.iter().any(|&r| self.accepting[r as usize]);
        }
        n
    }

    /// L ∩ C* for the given set of letters C.
    pub fn restrict(&self, letters: &BTreeSet<char>) -> Nfa {
        let keep: Vec<bool> = self.alphabet.letters().iter().map(|c| letters.contains(c)).collect();
        let mut n = self.clone();
        for es in &mut n.edges {
            es.retain(|&(a, _)| a.is_none_or(|a| keep[a as usize]));
        }
        n
    }

    /// Image under the letter-to-word homomorphism `map`, as an automaton
    /// over `target`. Edges on letters missing from `map` are dropped.
    pub fn image(&self, map: &BTreeMap<char, String>, target: &Alphabet) -> Result<Nfa, AutomatonError> {
        let mut n = Self::with_states(target, self.state_count());
        n.initial = self.initial.clone();
        n.accepting = self.accepting.clone();
        for (p, es) in self.edges.iter().enumerate() {
            for &(a, q) in es {
                let Some(a) = a else {
                    n.edges[p].push((None, q));
                    continue;
                };
                let Some(w) = map.get(&self.alphabet.letter(a as usize)) else { continue };
                let letters = n.encode(w)?;
                if letters.is_empty() {
                    n.edges[p].push((None, q));
                    continue;
                }
                let mut cur = p as u32;
                for (i, &b) in letters.iter().enumerate() {
                    let next = if i + 1 == letters.len() { q } else { n.add_state() };
                    n.edges[cur as usize].push((Some(b), next));
                    cur = next;
                }
            }
        }
        Ok(n)
    }

    pub fn accepts(&self, w: &str) -> bool {
        let Ok(letters) = self.encode(w) else { return false };
        let mut cur = self.closure(self.initial.iter().copied());
        for a in letters {
            cur = self.step(&cur, a);
        }
        cur.iter().any(|&q| self.accepting[q as usize])
    }

    /// Subset construction.
    pub fn determinize(&self, cap: usize) -> Result<Dfa, AutomatonError> {
        let k = self.alphabet.len();
        let start: Vec<u32> = self.closure(self.initial.iter().copied()).into_iter().collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let set: BTreeSet<u32> = sets[i].iter().copied().collect();
            for a in 0..k {
                let next: Vec<u32> = self.step(&set, a as u8).into_iter().collect();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if sets.len() >= cap {
                            return Err(AutomatonError::StateCap { cap });
                        }
                        let id = sets.len() as u32;
                        index.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.iter().any(|&q| self.accepting[q as usize])).collect();
        Ok(Dfa { alphabet: self.alphabet.clone(), delta, initial: 0, accepting })
    }

    /// Determinize and minimize.
    pub fn to_min_dfa(&self, cap: usize) -> Result<Dfa, AutomatonError> {
        Ok(self.determinize(cap)?.minimize())
    }
}

/// Complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    /// row-major: `delta[q * |A| + a]`
    delta: Vec<u32>,
    initial: u32,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial as usize
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    #[inline]
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a] as usize
    }

    pub fn run(&self, w: &str) -> Option<usize> {
        let mut q = self.initial();
        for c in w.chars() {
            q = self.next(q, self.alphabet.index_of(c)?);
        }
        Some(q)
    }

    pub fn contains(&self, w: &str) -> bool {
        self.run(w).is_some_and(|q| self.accepting[q])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.initial()];
        seen[self.initial()] = true;
        while let Some(q) = stack.pop() {
            for a in 0..self.alphabet.len() {
                let r = self.next(q, a);
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// States from which an accepting state can be reached.
    fn live(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..self.alphabet.len() {
                back[self.next(q, a)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &back[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Minimal automaton with canonical numbering.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.state_count()).filter(|&q| reach[q]).collect();
        // Moore refinement over reachable states
        let mut class = vec![0u32; self.state_count()];
        for &q in &states {
            class[q] = self.accepting[q] as u32;
        }
        let mut count = 0;
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next_class = class.clone();
            for &q in &states {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|a| class[self.next(q, a)]));
                let fresh = ids.len() as u32;
                next_class[q] = *ids.entry(sig).or_insert(fresh);
            }
            class = next_class;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        let mut delta = vec![0u32; count * k];
        let mut accepting = vec![false; count];
        for &q in &states {
            let c = class[q] as usize;
            accepting[c] = self.accepting[q];
            for a in 0..k {
                delta[c * k + a] = class[self.next(q, a)];
            }
        }
        Dfa { alphabet: self.alphabet.clone(), delta, initial: class[self.initial()], accepting }.renumbered()
    }

    /// Breadth-first renumbering: live states first, then the rest.
    fn renumbered(&self) -> Dfa {
        let k = self.alphabet.len();
        let n = self.state_count();
        let live = self.live();
        let mut order = vec![u32::MAX; n];
        let mut seq = Vec::with_capacity(n);
        for pass_live in [true, false] {
            let mut queue = VecDeque::from([self.initial()]);
            let mut seen = vec![false; n];
            seen[self.initial()] = true;
            while let Some(q) = queue.pop_front() {
                if order[q] == u32::MAX && (live[q] == pass_live || q == self.initial()) {
                    order[q] = seq.len() as u32;
                    seq.push(q);
                }
                for a in 0..k {
                    let r = self.next(q, a);
                    if !seen[r] && (!pass_live || live[r]) {
                        seen[r] = true;
                        queue.push_back(r);
                    }
                }
            }
        }
        let mut delta = vec![0u32; seq.len() * k];
        for (new, &old) in seq.iter().enumerate() {
            for a in 0..k {
                delta[new * k + a] = order[self.next(old, a)];
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            accepting: seq.iter().map(|&q| self.accepting[q]).collect(),
        }
    }

    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.minimize() == other.minimize()
    }

    /// L(self) ⊆ L(other), by exploring the product automaton.
    pub fn is_subset_of(&self, other: &Dfa) -> bool {
        assert_eq!(self.alphabet, other.alphabet, "automata over different alphabets");
        let mut seen = BTreeSet::from([(self.initial(), other.initial())]);
        let mut stack = vec![(self.initial(), other.initial())];
        while let Some((p, q)) = stack.pop() {
            if self.accepting[p] && !other.accepting[q] {
                return false;
            }
            for a in 0..self.alphabet.len() {
                let pair = (self.next(p, a), other.next(q, a));
                if seen.insert(pair) {
                    stack.push(pair);
                }
            }
        }
        true
    }

    /// Accepted words of length at most `max_len`, shortest first, then in
    /// alphabet order.
    pub fn enumerate(&self, max_len: usize) -> Vec<String> {
        let live = self.live();
        let mut out = Vec::new();
        let mut layer: Vec<(usize, String)> = vec![(self.initial(), String::new())];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (q, w) in &layer {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
                if len < max_len {
                    for (a, &c) in self.alphabet.letters().iter().enumerate() {
                        let r = self.next(*q, a);
                        if live[r] {
                            let mut v = w.clone();
                            v.push(c);
                            next.push((r, v));
                        }
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Number of states that lie on some accepting path.
    pub fn live_state_count(&self) -> usize {
        let reach = self.reachable();
        self.live().iter().zip(reach).filter(|&(&l, r)| l && r).count()
    }

    /// Whether the language is finite: no cycle through reachable live states.
    pub fn is_finite_language(&self) -> bool {
        let reach = self.reachable();
        let live = self.live();
        let useful: Vec<bool> = (0..self.state_count()).map(|q| reach[q] && live[q]).collect();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut mark = vec![0u8; self.state_count()];
        for s in 0..self.state_count() {
            if !useful[s] || mark[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            mark[s] = 1;
            while let Some(&mut (q, ref mut a)) = stack.last_mut() {
                if *a == self.alphabet.len() {
                    mark[q] = 2;
                    stack.pop();
                    continue;
                }
                let r = self.next(q, *a);
                *a += 1;
                if !useful[r] {
                    continue;
                }
                match mark[r] {
                    0 => {
                        mark[r] = 1;
                        stack.push((r, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Every reachable live state is accepting.
    pub fn is_prefix_closed(&self) -> bool {
        let reach = self.reachable();
        let live = self.live();
        (0..self.state_count()).all(|q| !(reach[q] && live[q]) || self.accepting[q])
    }

    pub fn reverse(&self) -> Nfa {
        self.to_nfa().reverse()
    }

    pub fn is_suffix_closed(&self) -> bool {
        self.reverse().determinize(usize::MAX).map(|d| d.is_prefix_closed()).unwrap_or(false)
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let mut n = Nfa::with_states(&self.alphabet, self.state_count());
        n.initial = vec![self.initial];
        n.accepting = self.accepting.clone();
        for q in 0..self.state_count() {
            for a in 0..k {
                n.edges[q].push((Some(a as u8), self.delta[q * k + a]));
            }
        }
        n
    }

    /// Monoid of state transformations induced by words, elements in
    /// shortlex order of their least generating word, each labelled by it.
    /// Returns the monoid and the element of each letter.
    pub fn transition_monoid(&self, cap: usize) -> Result<(FiniteMonoid, Vec<usize>), AutomatonError> {
        let k = self.alphabet.len();
        let n = self.state_count();
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity.clone(), 0)]);
        let mut elements = vec![identity];
        let mut labels = vec![String::new()];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let f: Vec<u32> = elements[i].iter().map(|&q| self.delta[q as usize * k + a]).collect();
                let idx = match index.get(&f) {
                    Some(&idx) => idx,
                    None => {
                        if elements.len() >= cap {
                            return Err(AutomatonError::MonoidCap { cap });
                        }
                        let idx = elements.len();
                        index.insert(f.clone(), idx);
                        elements.push(f);
                        labels.push(format!("{}{}", labels[i], self.alphabet.letter(a)));
                        parent.push(Some((i, a)));
                        idx
                    }
                };
                row.push(idx);
            }
            right.push(row);
            i += 1;
        }
        let m = elements.len();
        let mut table = vec![0u32; m * m];
        for x in 0..m {
            table[x * m] = x as u32;
            for y in 1..m {
                let (p, a) = parent[y].unwrap();
                table[x * m + y] = right[table[x * m + p] as usize][a] as u32;
            }
        }
        let generators = (0..k).map(|a| right[0][a]).collect();
        let labels = labels.into_iter().map(|l| Some(if l.is_empty() { "1".to_owned() } else { l })).collect();
        let monoid = FiniteMonoid::new_trusted(m, table, 0).expect("transformation monoid").with_labels(labels);
        Ok((monoid, generators))
    }

    /// `dfa <n> <alphabet>`, then `state` and `edge` lines for the live
    /// states of the minimal automaton.
    pub fn to_text(&self) -> String {
        let min = self.minimize();
        min.write_text()
    }

    fn write_text(&self) -> String {
        let (keep, target, count) = self.printed_states();
        let mut s = String::new();
        writeln!(s, "dfa {count} {}", self.alphabet).unwrap();
        for q in (0..self.state_count()).filter(|&q| keep[q]) {
            write!(s, "state {q}").unwrap();
            if q == self.initial() {
                s.push_str(" initial");
            }
            if self.accepting[q] {
                s.push_str(" accepting");
            }
            s.push('\n');
        }
        for q in (0..self.state_count()).filter(|&q| keep[q]) {
            for (a, &c) in self.alphabet.letters().iter().enumerate() {
                let r = self.next(q, a);
                if target[r] {
                    writeln!(s, "edge {q} {c} {r}").unwrap();
                }
            }
        }
        s
    }

    /// States shown in the text and dot forms, and which of them may be
    /// an edge target: the initial state is always shown, but a dead one
    /// has no edges.
    fn printed_states(&self) -> (Vec<bool>, Vec<bool>, usize) {
        let reach = self.reachable();
        let live = self.live();
        let target: Vec<bool> = (0..self.state_count()).map(|q| reach[q] && live[q]).collect();
        let mut keep = target.clone();
        keep[self.initial()] = true;
        let count = keep.iter().filter(|&&x| x).count();
        (keep, target, count)
    }

    /// Graphviz rendering of the same states and edges as [`Dfa::to_text`].
    pub fn to_dot(&self) -> String {
        self.minimize().write_dot()
    }

    fn write_dot(&self) -> String {
        let (keep, target, _) = self.printed_states();
        let mut s = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
        writeln!(s, "  start -> {};", self.initial()).unwrap();
        for q in (0..self.state_count()).filter(|&q| keep[q]) {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            writeln!(s, "  {q} [shape={shape}];").unwrap();
        }
        for q in (0..self.state_count()).filter(|&q| keep[q]) {
            let mut by_target: BTreeMap<usize, Vec<char>> = BTreeMap::new();
            for (a, &c) in self.alphabet.letters().iter().enumerate() {
                let r = self.next(q, a);
                if target[r] {
                    by_target.entry(r).or_default().push(c);
                }
            }
            for (r, cs) in by_target {
                let label: Vec<String> = cs.iter().map(char::to_string).collect();
                writeln!(s, "  {q} -> {r} [label=\"{}\"];", label.join(",")).unwrap();
            }
        }
        s.push_str("}\n");
        s
    }

    /// Reads the text format. Missing edges go to an added sink.
    pub fn parse_text(text: &str) -> Result<Dfa, AutomatonError> {
        let err = |line: usize, message: &str| AutomatonError::Format { line, message: message.to_owned() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "dfa" {
            return Err(err(1, "expected 'dfa <n> <alphabet>'"));
        }
        let n: usize = parts[1].parse().map_err(|_| err(1, "bad state count"))?;
        let alphabet = Alphabet::new(parts[2]).map_err(|e| err(1, &e.to_string()))?;
        let k = alphabet.len();
        let sink = n as u32;
        let mut delta = vec![sink; (n + 1) * k];
        let mut accepting = vec![false; n + 1];
        let mut initial = None;
        for (ln, line) in lines {
            let line_no = ln + 1;
            let f: Vec<&str> = line.split_whitespace().collect();
            let state = |s: &str| s.parse::<usize>().ok().filter(|&q| q < n).ok_or_else(|| err(line_no, "bad state"));
            match f.first().copied() {
                Some("state") if f.len() >= 2 => {
                    let q = state(f[1])?;
                    for flag in &f[2..] {
                        match *flag {
                            "initial" => initial = Some(q as u32),
                            "accepting" => accepting[q] = true,
                            _ => return Err(err(line_no, "unknown state flag")),
                        }
                    }
                }
                Some("edge") if f.len() == 4 => {
                    let p = state(f[1])?;
                    let c = f[2].chars().next().filter(|_| f[2].chars().count() == 1).ok_or_else(|| err(line_no, "bad letter"))?;
                    let a = alphabet.index_of(c).ok_or_else(|| err(line_no, "letter not in alphabet"))?;
                    delta[p * k + a] = state(f[3])? as u32;
                }
                _ => return Err(err(line_no, "expected a 'state' or 'edge' line")),
            }
        }
        let initial = initial.ok_or_else(|| err(0, "no initial state"))?;
        Ok(Dfa { alphabet, delta, initial, accepting })
    }
}
