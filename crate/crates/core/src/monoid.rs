//! Finite monoids given by their multiplication table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::MonoidError;
use crate::term::OmegaTerm;

/// Tables up to this size are checked for associativity when constructed.
pub const ASSOCIATIVITY_CHECK_BOUND: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<u32>,
    size: usize,
    identity: usize,
    labels: Vec<Option<String>>,
    associativity_checked: bool,
}

impl FiniteMonoid {
    /// Builds a monoid from a row-major table. Associativity is verified for
    /// tables of at most [`ASSOCIATIVITY_CHECK_BOUND`] elements; larger ones
    /// are trusted and report `associativity_checked() == false`.
    pub fn new(size: usize, table: Vec<u32>, identity: usize) -> Result<Self, MonoidError> {
        let check = size <= ASSOCIATIVITY_CHECK_BOUND;
        Self::build(size, table, identity, check)
    }

    /// Same as [`FiniteMonoid::new`] but never runs the associativity check.
    /// For monoids that are correct by construction.
    pub fn new_trusted(size: usize, table: Vec<u32>, identity: usize) -> Result<Self, MonoidError> {
        Self::build(size, table, identity, false)
    }

    fn build(size: usize, table: Vec<u32>, identity: usize, check: bool) -> Result<Self, MonoidError> {
        if table.len() != size * size {
            return Err(MonoidError::Format { line: 0, message: format!("table has {} entries, expected {}", table.len(), size * size) });
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= size) {
            return Err(MonoidError::OutOfRange(bad as usize));
        }
        if identity >= size {
            return Err(MonoidError::OutOfRange(identity));
        }
        let m = FiniteMonoid { table, size, identity, labels: vec![None; size], associativity_checked: check };
        for x in 0..size {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(MonoidError::BadIdentity(identity));
            }
        }
        if check {
            for x in 0..size {
                for y in 0..size {
                    let xy = m.mul(x, y);
                    for z in 0..size {
                        if m.mul(xy, z) != m.mul(x, m.mul(y, z)) {
                            return Err(MonoidError::NotAssociative(x, y, z));
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = labels;
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn associativity_checked(&self) -> bool {
        self.associativity_checked
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels[x].as_deref()
    }

    /// The label of `x` when present, its index otherwise.
    pub fn name(&self, x: usize) -> String {
        self.label(x).map(str::to_owned).unwrap_or_else(|| x.to_string())
    }

    /// Finds an element by label or by decimal index.
    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.as_deref() == Some(name))
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < self.size))
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    pub fn pow(&self, x: usize, mut n: u64) -> usize {
        let mut acc = self.identity;
        let mut base = x;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// x^n = x^(n+1) for every x, with n the size of the monoid.
    pub fn is_aperiodic(&self) -> bool {
        (0..self.size).all(|x| {
            let p = self.pow(x, self.size as u64);
            self.mul(p, x) == p
        })
    }

    /// The unique idempotent among the positive powers of `x`.
    pub fn omega_power(&self, x: usize) -> usize {
        let mut p = x;
        for _ in 0..=self.size {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, x);
        }
        unreachable!("every element of a finite monoid has an idempotent power")
    }

    /// Interpretation of `t` under the letter assignment `h`.
    pub fn evaluate(&self, t: &OmegaTerm, h: &BTreeMap<char, usize>) -> Result<usize, MonoidError> {
        Ok(match t {
            OmegaTerm::Empty => self.identity,
            OmegaTerm::Letter(c) => {
                let x = *h.get(c).ok_or(MonoidError::Unassigned(*c))?;
                if x >= self.size {
                    return Err(MonoidError::OutOfRange(x));
                }
                x
            }
            OmegaTerm::Concat(cs) => {
                let mut acc = self.identity;
                for c in cs {
                    acc = self.mul(acc, self.evaluate(c, h)?);
                }
                acc
            }
            OmegaTerm::Power(b, n) => self.pow(self.evaluate(b, h)?, *n as u64),
            OmegaTerm::Omega(b) => self.omega_power(self.evaluate(b, h)?),
        })
    }

    pub fn green(&self) -> Green {
        Green::compute(self)
    }

    /// Line-oriented text form: `monoid n`, `identity i`, one `row i: ...`
    /// per element and a `label i name` line for each labelled element.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "monoid {}", self.size).unwrap();
        writeln!(s, "identity {}", self.identity).unwrap();
        for x in 0..self.size {
            write!(s, "row {x}:").unwrap();
            for y in 0..self.size {
                write!(s, " {}", self.mul(x, y)).unwrap();
            }
            s.push('\n');
        }
        for (x, l) in self.labels.iter().enumerate() {
            if let Some(l) = l {
                writeln!(s, "label {x} {l}").unwrap();
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, MonoidError> {
        let err = |line: usize, message: &str| MonoidError::Format { line, message: message.to_owned() };
        let mut size = None;
        let mut identity = None;
        let mut rows: Vec<Option<Vec<u32>>> = Vec::new();
        let mut labels: Vec<(usize, String)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match head {
                "monoid" => {
                    let n: usize = rest.trim().parse().map_err(|_| err(line_no, "bad size"))?;
                    size = Some(n);
                    rows = vec![None; n];
                }
                "identity" => identity = Some(rest.trim().parse::<usize>().map_err(|_| err(line_no, "bad identity"))?),
                "row" => {
                    let n = size.ok_or_else(|| err(line_no, "row before header"))?;
                    let (idx, entries) = rest.split_once(':').ok_or_else(|| err(line_no, "missing ':'"))?;
                    let i: usize = idx.trim().parse().map_err(|_| err(line_no, "bad row index"))?;
                    if i >= n {
                        return Err(err(line_no, "row index out of range"));
                    }
                    let r = entries
                        .split_whitespace()
                        .map(|e| e.parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| err(line_no, "bad entry"))?;
                    if r.len() != n {
                        return Err(err(line_no, "row has wrong length"));
                    }
                    if rows[i].replace(r).is_some() {
                        return Err(err(line_no, "duplicate row"));
                    }
                }
                "label" => {
                    let (idx, name) = rest.trim().split_once(char::is_whitespace).ok_or_else(|| err(line_no, "label needs a name"))?;
                    let i: usize = idx.parse().map_err(|_| err(line_no, "bad label index"))?;
                    labels.push((i, name.trim().to_owned()));
                }
                _ => return Err(err(line_no, "unknown directive")),
            }
        }
        let n = size.ok_or_else(|| err(0, "missing 'monoid' header"))?;
        let identity = identity.ok_or_else(|| err(0, "missing 'identity' line"))?;
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.into_iter().enumerate() {
            table.extend(r.ok_or_else(|| err(0, &format!("missing row {i}")))?);
        }
        let mut m = FiniteMonoid::new(n, table, identity)?;
        for (i, name) in labels {
            if i >= n {
                return Err(MonoidError::OutOfRange(i));
            }
            m.labels[i] = Some(name);
        }
        Ok(m)
    }
}

/// Green's quasi-orders and equivalence classes of a finite monoid.
///
/// `r_ideal[x]` is xM, `l_ideal[x]` is Mx and `j_ideal[x]` is MxM, stored as
/// membership vectors.
#[derive(Clone, Debug)]
pub struct Green {
    r_ideal: Vec<Vec<bool>>,
    l_ideal: Vec<Vec<bool>>,
    j_ideal: Vec<Vec<bool>>,
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub j_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub idempotents: Vec<usize>,
}

impl Green {
    fn compute(m: &FiniteMonoid) -> Self {
        let n = m.size();
        let mut r_ideal = vec![vec![false; n]; n];
        let mut l_ideal = vec![vec![false; n]; n];
        let mut j_ideal = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                r_ideal[x][m.mul(x, y)] = true;
                l_ideal[x][m.mul(y, x)] = true;
            }
            for y in 0..n {
                if l_ideal[x][y] {
                    for z in 0..n {
                        j_ideal[x][m.mul(y, z)] = true;
                    }
                }
            }
        }
        let classes = |ideal: &Vec<Vec<bool>>| -> Vec<usize> {
            let mut class = vec![usize::MAX; n];
            let mut next = 0;
            for x in 0..n {
                if class[x] != usize::MAX {
                    continue;
                }
                for y in x..n {
                    if ideal[x][y] && ideal[y][x] {
                        class[y] = next;
                    }
                }
                next += 1;
            }
            class
        };
        let r_class = classes(&r_ideal);
        let l_class = classes(&l_ideal);
        let j_class = classes(&j_ideal);
        let mut h_class = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            if h_class[x] != usize::MAX {
                continue;
            }
            for y in x..n {
                if r_class[x] == r_class[y] && l_class[x] == l_class[y] {
                    h_class[y] = next;
                }
            }
            next += 1;
        }
        let idempotents = (0..n).filter(|&x| m.is_idempotent(x)).collect();
        Green { r_ideal, l_ideal, j_ideal, r_class, l_class, j_class, h_class, idempotents }
    }

    /// u ≤_R v: u ∈ vM.
    pub fn le_r(&self, u: usize, v: usize) -> bool {
        self.r_ideal[v][u]
    }

    /// u ≤_L v: u ∈ Mv.
    pub fn le_l(&self, u: usize, v: usize) -> bool {
        self.l_ideal[v][u]
    }

    /// u ≤_J v: u ∈ MvM.
    pub fn le_j(&self, u: usize, v: usize) -> bool {
        self.j_ideal[v][u]
    }

    pub fn j_class_count(&self) -> usize {
        self.j_class.iter().max().map_or(0, |m| m + 1)
    }

    pub fn h_classes_trivial(&self) -> bool {
        let mut seen = vec![false; self.h_class.len()];
        self.h_class.iter().all(|&h| !std::mem::replace(&mut seen[h], true))
    }
}

/// Small monoids used across the tests and examples.
pub mod samples {
    use super::FiniteMonoid;

    /// {1, 0} with 0 absorbing. Element 0 is the identity.
    pub fn u1() -> FiniteMonoid {
        FiniteMonoid::new(2, vec![0, 1, 1, 1], 0)
            .unwrap()
            .with_labels(vec![Some("one".into()), Some("zero".into())])
    }

    /// Cyclic group of order 2. Element 0 is the identity.
    pub fn z2() -> FiniteMonoid {
        FiniteMonoid::new(2, vec![0, 1, 1, 0], 0).unwrap()
    }

    /// Two right-zero elements plus an identity.
    pub fn right_zero_with_one() -> FiniteMonoid {
        FiniteMonoid::new(3, vec![0, 1, 2, 1, 1, 2, 2, 1, 2], 0).unwrap()
    }
}
